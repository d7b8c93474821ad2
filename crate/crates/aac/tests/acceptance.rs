//! Acceptance gate. Each criterion is one test, so the suite output shows
//! one pass/fail line per criterion. Criterion 9 re-runs the other eight
//! end to end and checks the total wall time.

mod common;

use std::collections::BTreeSet;
use std::io::Read;
use std::time::{Duration, Instant};

use serde_json::Value;
use sha2::{Digest, Sha256};

use aac::benefits::aggregate_project;
use aac::model::{parse_canvas, serialize_canvas};
use aac::policy::generate_policy_card;
use aac::reader::extract_canvas;
use aac::rocrate::package_crate;
use aac::validator::validate_with;
use aac::versioning::{bump, diff, suggest_bump, BumpLevel, ChangeEntry, ChangeKind, ChangeSet};

use common::{close, fixture, gen_canvas, oracle_totals, rng, GenLimits};

/// Pinned digest of the rich fixture exported with the default timestamp.
const GOLDEN_EXPORT_SHA256: &str =
    "f8aff663d4ff0780e839310b5e92a01e2b173b4799fc0dcc454ecedaad406daf";

fn export_fixture(name: &str) -> Vec<u8> {
    let canvas = parse_canvas(&fixture(name)).unwrap();
    let summary = aggregate_project(&canvas).unwrap();
    package_crate(&canvas, &summary, None).unwrap()
}

fn criterion_1_round_trip() {
    let start = Instant::now();
    let mut r = rng(0xAAC1);
    for i in 0..200 {
        let canvas = gen_canvas(&mut r, &GenLimits::default(), false);
        let summary = aggregate_project(&canvas).unwrap();
        let zip = package_crate(&canvas, &summary, None)
            .unwrap_or_else(|e| panic!("canvas {i} failed to package: {e}"));
        let back = extract_canvas(&zip).unwrap();
        assert_eq!(back, canvas, "round-trip mismatch on generated canvas {i}");
    }
    assert!(
        start.elapsed() < Duration::from_secs(10),
        "round-trip suite took {:?}",
        start.elapsed()
    );
}

fn criterion_2_export_determinism() {
    let a = export_fixture("opentargets.json");
    let b = export_fixture("opentargets.json");
    assert_eq!(
        Sha256::digest(&a),
        Sha256::digest(&b),
        "repeat exports differ"
    );
    let hex = format!("{:x}", Sha256::digest(&a));
    assert_eq!(hex, GOLDEN_EXPORT_SHA256, "export digest drifted from golden");
}

/// Walks the raw metadata JSON inside the ZIP; shares nothing with the
/// library's graph builder or profile verifier.
fn walk_crate(zip_bytes: &[u8], canvas_doc: &Value) {
    let mut archive = zip::ZipArchive::new(std::io::Cursor::new(zip_bytes)).unwrap();
    let mut text = String::new();
    archive
        .by_name("ro-crate-metadata.json")
        .unwrap()
        .read_to_string(&mut text)
        .unwrap();
    let doc: Value = serde_json::from_str(&text).unwrap();
    let graph = doc["@graph"].as_array().unwrap();

    let mut ids = BTreeSet::new();
    for entity in graph {
        let id = entity["@id"].as_str().unwrap();
        assert!(ids.insert(id.to_string()), "duplicate entity id {id}");
    }

    // every internal {"@id"} reference must resolve inside the graph
    fn collect_refs(v: &Value, top_level: bool, out: &mut Vec<String>) {
        match v {
            Value::Object(map) => {
                if !top_level && map.len() == 1 {
                    if let Some(Value::String(id)) = map.get("@id") {
                        if !id.contains("://") {
                            out.push(id.clone());
                        }
                        return;
                    }
                }
                for val in map.values() {
                    collect_refs(val, false, out);
                }
            }
            Value::Array(items) => {
                for item in items {
                    collect_refs(item, false, out);
                }
            }
            _ => {}
        }
    }
    let mut refs = Vec::new();
    for entity in graph {
        collect_refs(entity, true, &mut refs);
    }
    for r in &refs {
        assert!(ids.contains(r), "dangling internal reference {r}");
    }

    let descriptors = graph
        .iter()
        .filter(|e| e["@id"] == "ro-crate-metadata.json")
        .count();
    let roots = graph.iter().filter(|e| e["@id"] == "./").count();
    assert_eq!(descriptors, 1, "expected exactly one metadata descriptor");
    assert_eq!(roots, 1, "expected exactly one root dataset");

    let count_type = |t: &str| {
        graph
            .iter()
            .filter(|e| match &e["@type"] {
                Value::String(s) => s == t,
                Value::Array(items) => items.iter().any(|i| i == t),
                _ => false,
            })
            .count()
    };
    let section_len = |path: &[&str]| {
        let mut v = canvas_doc;
        for p in path {
            v = match v.get(p) {
                Some(v) => v,
                None => return 0,
            };
        }
        v.as_array().map(Vec::len).unwrap_or(0)
    };
    assert_eq!(count_type("Person"), section_len(&["persons"]));
    assert_eq!(count_type("p-plan:Step"), section_len(&["requirements"]));
    assert_eq!(
        count_type("prov:Activity"),
        section_len(&["governance", "stages"])
    );
    assert_eq!(
        count_type("dcat:Dataset"),
        section_len(&["dataAccess", "datasets"])
    );
}

fn criterion_3_jsonld_integrity() {
    for name in ["minimal.json", "opentargets.json"] {
        let doc: Value = serde_json::from_str(&fixture(name)).unwrap();
        walk_crate(&export_fixture(name), &doc);
    }
    // plus a batch of generated canvases for structural coverage
    let mut r = rng(0xAAC3);
    for _ in 0..25 {
        let canvas = gen_canvas(&mut r, &GenLimits::default(), false);
        let summary = aggregate_project(&canvas).unwrap();
        let zip = package_crate(&canvas, &summary, None).unwrap();
        let doc: Value = serde_json::from_str(&serialize_canvas(&canvas)).unwrap();
        walk_crate(&zip, &doc);
    }
}

fn criterion_4_benefit_oracle() {
    // worked example: 60 baseline, 20 expected, 5 min/unit oversight,
    // 100 units/month => (60-20-5)*100 = 3500 net minutes per month
    let canvas = parse_canvas(&fixture("opentargets.json")).unwrap();
    let row = aggregate_project(&canvas)
        .unwrap()
        .rows
        .into_iter()
        .find(|r| r.requirement_id == "r-evidence-summary" && r.metric_id == "time-per-unit")
        .unwrap();
    assert_eq!(row.monthly_net.unwrap().amount, 3500.0);

    let big = GenLimits {
        max_persons: 4,
        max_requirements: 50,
        max_benefits: 5,
        max_stages: 2,
        max_datasets: 2,
    };
    let mut r = rng(0xAAC4);
    for i in 0..500 {
        let integers_only = i % 2 == 0;
        let canvas = gen_canvas(&mut r, &big, integers_only);
        let summary = aggregate_project(&canvas).unwrap();
        let doc: Value = serde_json::from_str(&serialize_canvas(&canvas)).unwrap();
        let oracle = oracle_totals(&doc);

        if integers_only {
            assert_eq!(
                summary.total_net_minutes_per_month, oracle.monthly_minutes,
                "canvas {i}: integer monthly total differs"
            );
            assert_eq!(
                summary.total_one_off_minutes, oracle.one_off_minutes,
                "canvas {i}: integer one-off total differs"
            );
        } else {
            assert!(
                close(summary.total_net_minutes_per_month, oracle.monthly_minutes),
                "canvas {i}: monthly {} vs oracle {}",
                summary.total_net_minutes_per_month,
                oracle.monthly_minutes
            );
            assert!(
                close(summary.total_one_off_minutes, oracle.one_off_minutes),
                "canvas {i}: one-off {} vs oracle {}",
                summary.total_one_off_minutes,
                oracle.one_off_minutes
            );
        }
        assert_eq!(
            summary.totals_by_type_and_unit.keys().collect::<Vec<_>>(),
            oracle.by_type_unit.keys().collect::<Vec<_>>(),
            "canvas {i}: type/unit keys differ"
        );
        for (key, total) in &summary.totals_by_type_and_unit {
            assert!(
                close(*total, oracle.by_type_unit[key]),
                "canvas {i}: {key} {} vs oracle {}",
                total,
                oracle.by_type_unit[key]
            );
        }
        let computed = summary.rows.iter().filter(|r| !r.qualitative).count();
        let qualitative = summary.rows.iter().filter(|r| r.qualitative).count();
        assert_eq!(computed, oracle.computed_rows, "canvas {i}: row count");
        assert_eq!(qualitative, oracle.qualitative_rows, "canvas {i}: qualitative count");
    }
}

fn criterion_5_validator_catalog() {
    let dir = format!("{}/tests/fixtures/invalid", env!("CARGO_MANIFEST_DIR"));
    let mut entries: Vec<_> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    entries.sort();
    assert!(entries.len() >= 15, "only {} invalid fixtures", entries.len());

    for path in entries {
        let stem = path.file_stem().unwrap().to_str().unwrap();
        // fixture names start with the code they must trigger: aac-e001-...
        let code = stem[..8].to_uppercase();
        let canvas = parse_canvas(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let report = validate_with(
            &canvas,
            aac::validator::ValidateOptions {
                orcid_checksum: true,
            },
        );
        assert_eq!(
            report.issues.len(),
            1,
            "{stem}: expected exactly one issue, got {:?}",
            report.issues
        );
        assert_eq!(report.issues[0].code, code, "{stem}");
    }

    for name in ["minimal.json", "opentargets.json"] {
        let canvas = parse_canvas(&fixture(name)).unwrap();
        let report = validate_with(
            &canvas,
            aac::validator::ValidateOptions {
                orcid_checksum: true,
            },
        );
        assert!(
            report.issues.is_empty(),
            "{name} should be issue-free: {:?}",
            report.issues
        );
    }
}

fn criterion_6_policy_mapping_coverage() {
    let canvas = parse_canvas(&fixture("opentargets.json")).unwrap();
    let card = generate_policy_card(&canvas).unwrap();
    let card_json: Value = serde_json::from_str(&card.to_json()).unwrap();

    // bullet -> predicate over the card generated from the named fixture
    let checks: Vec<(&str, bool)> = vec![
        (
            "compliance standards -> applicable_policies and assurance_mapping",
            !card.applicable_policies.is_empty()
                && card
                    .assurance_mapping
                    .contains(&"NIST AI RMF:GOVERN-1.1".to_string()),
        ),
        (
            "risks -> controls.action_rules",
            card
                .controls
                .action_rules
                .iter()
                .any(|r| r.source.kind == aac::policy::SourceKind::Risk),
        ),
        (
            "governance agents -> scope.stakeholders with kind preserved",
            ["person", "organization", "software"].iter().all(|k| {
                card_json["scope"]["stakeholders"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .any(|s| s["kind"] == *k)
            }),
        ),
        (
            "dataset access rights -> deny and escalation data rules",
            card.controls.action_rules.iter().any(|r| {
                r.source.kind == aac::policy::SourceKind::Dataset
                    && format!("{:?}", r.effect).contains("Deny")
            }) && card.controls.action_rules.iter().any(|r| {
                r.source.kind == aac::policy::SourceKind::Dataset
                    && format!("{:?}", r.effect).contains("Escalation")
            }),
        ),
        (
            "benefits -> kpis_thresholds",
            !card.kpis_thresholds.is_empty(),
        ),
        (
            "stage policyCardUri -> references",
            card_json["references"]["policyCardUris"]
                .as_array()
                .map(|a| !a.is_empty())
                .unwrap_or(false),
        ),
    ];
    for (bullet, ok) in &checks {
        assert!(ok, "mapping not exercised by opentargets.json: {bullet}");
    }
    assert_eq!(checks.len(), 6);

    // rule-count identity on fixtures and generated canvases
    let mut r = rng(0xAAC6);
    let mut canvases = vec![
        parse_canvas(&fixture("minimal.json")).unwrap(),
        parse_canvas(&fixture("opentargets.json")).unwrap(),
    ];
    for _ in 0..50 {
        canvases.push(gen_canvas(&mut r, &GenLimits::default(), false));
    }
    for (i, canvas) in canvases.iter().enumerate() {
        let card = generate_policy_card(canvas).unwrap();
        let risks: usize = canvas
            .requirements
            .iter()
            .filter_map(|req| req.feasibility.as_ref())
            .map(|f| f.risks.len())
            .sum();
        let qualifying = canvas
            .data_access
            .datasets
            .iter()
            .filter(|d| {
                matches!(
                    d.access_rights,
                    aac::model::AccessRights::Confidential
                        | aac::model::AccessRights::HighlyRestricted
                )
            })
            .count();
        assert_eq!(
            card.controls.action_rules.len(),
            risks + qualifying,
            "rule-count identity broken on canvas {i}"
        );
    }
}

fn criterion_7_versioning() {
    let mut r = rng(0xAAC7);

    // reflexivity and id-keyed reorder invariance
    for _ in 0..50 {
        let canvas = gen_canvas(&mut r, &GenLimits::default(), false);
        assert!(diff(&canvas, &canvas).is_empty(), "diff not reflexive");
        let mut shuffled = canvas.clone();
        shuffled.persons.reverse();
        shuffled.requirements.reverse();
        shuffled.data_access.datasets.reverse();
        assert!(
            diff(&canvas, &shuffled).is_empty(),
            "id-keyed reorder produced changes"
        );
    }

    // monotonicity: a changeset never suggests a smaller bump than any subset
    use rand::Rng;
    let paths = [
        "/project/title",
        "/requirements/id=r1/title",
        "/requirements/id=r1",
        "/requirements/id=r1/benefits/0/direction",
        "/requirements/id=r1/benefits/0/expected/amount",
        "/governance/stages/0/name",
        "/dataAccess/datasets/id=d1",
        "/persons/id=p1/name",
    ];
    for _ in 0..200 {
        let n = r.gen_range(1..=6);
        let entries: Vec<ChangeEntry> = (0..n)
            .map(|_| ChangeEntry {
                path: paths[r.gen_range(0..paths.len())].to_string(),
                kind: *[ChangeKind::Added, ChangeKind::Removed, ChangeKind::Modified]
                    .get(r.gen_range(0..3))
                    .unwrap(),
                before: None,
                after: None,
            })
            .collect();
        let subset: Vec<ChangeEntry> = entries
            .iter()
            .filter(|_| r.gen_bool(0.5))
            .cloned()
            .collect();
        let full = suggest_bump(&ChangeSet { entries });
        let sub = suggest_bump(&ChangeSet { entries: subset });
        assert!(sub <= full, "subset suggested a bigger bump");
    }

    assert_eq!(bump("0.13.1", BumpLevel::Minor).unwrap(), "0.14.0");
}

fn criterion_8_offline_guarantee() {
    // the library is pure file I/O; the dependency graph must contain no
    // networking stack for that to stay true
    let lock = std::fs::read_to_string(format!(
        "{}/../../Cargo.lock",
        env!("CARGO_MANIFEST_DIR")
    ))
    .unwrap();
    let names: BTreeSet<&str> = lock
        .lines()
        .filter_map(|l| l.strip_prefix("name = \""))
        .map(|l| l.trim_end_matches('"'))
        .collect();
    for banned in [
        "reqwest", "hyper", "curl", "ureq", "isahc", "attohttpc", "surf", "tokio", "mio",
        "native-tls", "rustls", "openssl",
    ] {
        assert!(
            !names.contains(banned),
            "networking crate {banned} in the dependency graph"
        );
    }
    // and every operation works on a canvas that never leaves the process
    let canvas = parse_canvas(&fixture("opentargets.json")).unwrap();
    let summary = aggregate_project(&canvas).unwrap();
    let zip = package_crate(&canvas, &summary, None).unwrap();
    assert_eq!(extract_canvas(&zip).unwrap(), canvas);
}

#[test]
fn acceptance_1_round_trip_identity() {
    criterion_1_round_trip();
}

#[test]
fn acceptance_2_export_determinism() {
    criterion_2_export_determinism();
}

#[test]
fn acceptance_3_jsonld_integrity() {
    criterion_3_jsonld_integrity();
}

#[test]
fn acceptance_4_benefit_oracle_equivalence() {
    criterion_4_benefit_oracle();
}

#[test]
fn acceptance_5_validator_catalog() {
    criterion_5_validator_catalog();
}

#[test]
fn acceptance_6_policy_mapping_coverage() {
    criterion_6_policy_mapping_coverage();
}

#[test]
fn acceptance_7_versioning() {
    criterion_7_versioning();
}

#[test]
fn acceptance_8_offline_guarantee() {
    criterion_8_offline_guarantee();
}

#[test]
fn acceptance_9_total_runtime_under_60s() {
    let start = Instant::now();
    criterion_1_round_trip();
    criterion_2_export_determinism();
    criterion_3_jsonld_integrity();
    criterion_4_benefit_oracle();
    criterion_5_validator_catalog();
    criterion_6_policy_mapping_coverage();
    criterion_7_versioning();
    criterion_8_offline_guarantee();
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(60),
        "full criteria sweep took {elapsed:?}"
    );
}
