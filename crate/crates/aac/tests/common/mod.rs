//! Shared test support: a seeded random canvas generator that only produces
//! documents passing validation, and an independently written benefit oracle
//! working over the raw JSON serialization instead of the typed model.

// each test binary uses a different subset of these helpers
#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use aac::model::*;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub struct GenLimits {
    pub max_persons: usize,
    pub max_requirements: usize,
    pub max_benefits: usize,
    pub max_stages: usize,
    pub max_datasets: usize,
}

impl Default for GenLimits {
    fn default() -> Self {
        GenLimits {
            max_persons: 4,
            max_requirements: 6,
            max_benefits: 3,
            max_stages: 3,
            max_datasets: 4,
        }
    }
}

const ROLES: &[&str] = &[
    "principal-investigator",
    "developer",
    "domain-expert",
    "data-steward",
    "governance-lead",
];
const METRICS: &[&str] = &[
    "time-per-unit",
    "time-to-insight",
    "error-rate",
    "completeness",
    "accessibility",
    "cost-per-unit",
];
const DUO_TERMS: &[&str] = &["DUO:0000006", "DUO:0000007"];
const UNITS: &[&str] = &["minutes", "percent", "EUR"];

fn amount(rng: &mut ChaCha8Rng, integers_only: bool) -> f64 {
    let whole = rng.gen_range(1..=200) as f64;
    if integers_only || rng.gen_bool(0.7) {
        whole
    } else {
        whole + 0.25 * rng.gen_range(1..4) as f64
    }
}

fn gen_benefit(rng: &mut ChaCha8Rng, integers_only: bool) -> BenefitMetric {
    let benefit_type = *[
        BenefitType::Time,
        BenefitType::Time,
        BenefitType::Quality,
        BenefitType::Cost,
        BenefitType::Enablement,
    ]
    .choose(rng)
    .unwrap();
    let direction = *[BenefitDirection::Lower, BenefitDirection::Higher]
        .choose(rng)
        .unwrap();
    let unit = if benefit_type == BenefitType::Time {
        "minutes".to_string()
    } else {
        UNITS.choose(rng).unwrap().to_string()
    };
    let qualitative = rng.gen_bool(0.15);
    let values_are_delta = !qualitative && rng.gen_bool(0.3);
    let (baseline, expected) = if qualitative {
        (
            Some(MetricValue::Categorical {
                level: CategoricalLevel::Low,
            }),
            MetricValue::Categorical {
                level: CategoricalLevel::High,
            },
        )
    } else if values_are_delta {
        (
            None,
            MetricValue::Numeric {
                amount: amount(rng, integers_only),
                unit: unit.clone(),
            },
        )
    } else {
        (
            Some(MetricValue::Numeric {
                amount: amount(rng, integers_only),
                unit: unit.clone(),
            }),
            MetricValue::Numeric {
                amount: amount(rng, integers_only),
                unit: unit.clone(),
            },
        )
    };
    let aggregation_basis = *[
        AggregationBasis::PerUnit,
        AggregationBasis::PerMonth,
        AggregationBasis::OneOff,
    ]
    .choose(rng)
    .unwrap();
    // oversight only on time benefits, so generated canvases stay warning-free
    let oversight = benefit_type == BenefitType::Time && !qualitative;
    let is_custom = rng.gen_bool(0.2);
    BenefitMetric {
        benefit_type,
        metric_id: if is_custom {
            format!("custom-{}", rng.gen_range(0..100))
        } else {
            METRICS.choose(rng).unwrap().to_string()
        },
        is_custom,
        label: "generated benefit".into(),
        direction,
        values_are_delta,
        baseline,
        expected,
        aggregation_basis,
        oversight_minutes_per_unit: if oversight && rng.gen_bool(0.6) {
            Some(amount(rng, integers_only))
        } else {
            None
        },
        oversight_minutes_per_month: if oversight && rng.gen_bool(0.4) {
            Some(amount(rng, integers_only))
        } else {
            None
        },
        user_confidence: *[
            ConfidenceLevel::Low,
            ConfidenceLevel::Medium,
            ConfidenceLevel::High,
        ]
        .choose(rng)
        .unwrap(),
        developer_confidence: *[
            ConfidenceLevel::Low,
            ConfidenceLevel::Medium,
            ConfidenceLevel::High,
        ]
        .choose(rng)
        .unwrap(),
        assumptions: None,
        extra: BTreeMap::new(),
    }
}

/// Generate a canvas that passes validation with zero errors. Dependencies
/// only point at earlier requirements, so the graph is always acyclic.
pub fn gen_canvas(rng: &mut ChaCha8Rng, limits: &GenLimits, integers_only: bool) -> Canvas {
    let person_count = rng.gen_range(0..=limits.max_persons);
    let persons: Vec<Person> = (0..person_count)
        .map(|i| Person {
            id: format!("p{i}"),
            name: format!("Person {i}"),
            affiliation: if rng.gen_bool(0.5) {
                Some("Example Institute".into())
            } else {
                None
            },
            orcid: if rng.gen_bool(0.3) {
                Some("0000-0002-1825-0097".into())
            } else {
                None
            },
            roles: vec![ROLES.choose(rng).unwrap().to_string()],
            extra: BTreeMap::new(),
        })
        .collect();

    let req_count = rng.gen_range(0..=limits.max_requirements);
    let mut requirements = Vec::with_capacity(req_count);
    for i in 0..req_count {
        let benefit_count = rng.gen_range(0..=limits.max_benefits);
        let depends_on = if i > 0 && rng.gen_bool(0.4) {
            vec![format!("r{}", rng.gen_range(0..i))]
        } else {
            Vec::new()
        };
        let stakeholders = if !persons.is_empty() && rng.gen_bool(0.5) {
            vec![persons.choose(rng).unwrap().id.clone()]
        } else {
            Vec::new()
        };
        requirements.push(Requirement {
            id: format!("r{i}"),
            title: format!("Requirement {i}"),
            description: "generated".into(),
            user_story: None,
            priority: Some(PriorityLevel::ShouldHave),
            status: Some(
                *[
                    RequirementStatus::Proposed,
                    RequirementStatus::Accepted,
                    RequirementStatus::Rejected,
                ]
                .choose(rng)
                .unwrap(),
            ),
            unit_of_work: Some("unit".into()),
            monthly_volume: Some(rng.gen_range(0..=500) as f64),
            target_population: None,
            benefits: (0..benefit_count)
                .map(|_| gen_benefit(rng, integers_only))
                .collect(),
            depends_on,
            stakeholders,
            feasibility: if rng.gen_bool(0.3) {
                Some(TaskFeasibility {
                    trl: Some(rng.gen_range(1..=9)),
                    technical_risk: Some(RiskLevel::Medium),
                    architecture: Architecture::Rag {
                        retrieval_method: Some("hybrid".into()),
                        embedding_model: None,
                        chunking_strategy: None,
                    },
                    risks: if rng.gen_bool(0.5) {
                        vec![RiskRecord {
                            category: RiskCategory::Technical,
                            title: "generated risk".into(),
                            description: None,
                            likelihood: RiskLevel::Medium,
                            impact: RiskLevel::High,
                            mitigation: Some("generated mitigation".into()),
                            status: RiskStatus::Mitigated,
                        }]
                    } else {
                        Vec::new()
                    },
                    ..Default::default()
                })
            } else {
                None
            },
            extra: BTreeMap::new(),
        });
    }

    let stage_count = rng.gen_range(0..=limits.max_stages);
    let stages: Vec<GovernanceStage> = (0..stage_count)
        .map(|i| {
            let mut agents = vec![AgentRef {
                kind: AgentKind::Organization,
                reference: format!("Org {i}"),
            }];
            if !persons.is_empty() && rng.gen_bool(0.5) {
                agents.push(AgentRef {
                    kind: AgentKind::Person,
                    reference: persons.choose(rng).unwrap().id.clone(),
                });
            }
            GovernanceStage {
                name: format!("stage-{i}"),
                start_date: Some(format!("2025-0{}-01", i + 1)),
                end_date: Some(format!("2025-0{}-28", i + 1)),
                agents,
                milestones: vec![Milestone {
                    title: format!("milestone-{i}"),
                    kpis: vec!["generated kpi".into()],
                }],
                compliance_standards: if rng.gen_bool(0.5) {
                    vec![ComplianceStandard::Structured {
                        framework: "NIST AI RMF".into(),
                        clauses: vec!["GOVERN-1.1".into()],
                        uri: Some("https://example.org/rmf".into()),
                    }]
                } else {
                    vec![ComplianceStandard::Plain("internal policy".into())]
                },
                policy_card_uri: if rng.gen_bool(0.3) {
                    Some(format!("https://example.org/cards/{i}"))
                } else {
                    None
                },
                extra: BTreeMap::new(),
            }
        })
        .collect();

    let dataset_count = rng.gen_range(0..=limits.max_datasets);
    let datasets: Vec<DatasetEntry> = (0..dataset_count)
        .map(|i| DatasetEntry {
            id: format!("d{i}"),
            title: format!("Dataset {i}"),
            format: Some("parquet".into()),
            license: None,
            access_rights: *[
                AccessRights::Open,
                AccessRights::Restricted,
                AccessRights::Confidential,
                AccessRights::HighlyRestricted,
            ]
            .choose(rng)
            .unwrap(),
            sensitivity_level: None,
            personal_data: rng.gen_bool(0.2),
            duo_terms: if rng.gen_bool(0.5) {
                vec![DUO_TERMS.choose(rng).unwrap().to_string()]
            } else {
                Vec::new()
            },
            persistent_id: None,
            data_card_id: None,
            contact_point: None,
            extra: BTreeMap::new(),
        })
        .collect();

    let mut extra = BTreeMap::new();
    if rng.gen_bool(0.3) {
        extra.insert(
            "xExtension".to_string(),
            serde_json::json!({ "note": "kept through round-trips" }),
        );
    }

    Canvas {
        schema_version: Some("0.13.1".into()),
        canvas_version: format!(
            "{}.{}.{}",
            rng.gen_range(0..3),
            rng.gen_range(0..20),
            rng.gen_range(0..10)
        ),
        project: ProjectDefinition {
            title: "Generated project".into(),
            description: "Generated description".into(),
            objectives: vec!["objective".into()],
            stage: Some(ProjectStage::Prototype),
            domain: Some("testing".into()),
            keywords: Vec::new(),
            funding: if rng.gen_bool(0.3) {
                Some(Funding {
                    grant_name: Some("Grant".into()),
                    funder_name: Some("Funder".into()),
                    grant_id: Some("G-1".into()),
                })
            } else {
                None
            },
            lead_organization: None,
            value_summary: None,
            extra: BTreeMap::new(),
        },
        persons,
        requirements,
        feasibility_defaults: FeasibilityDefaults {
            trl: Some(5),
            overall_technical_risk: Some(RiskLevel::Medium),
            effort_estimate: None,
        },
        governance: Governance { stages },
        data_access: DataAccess { datasets },
        outcomes: Outcomes::default(),
        extra,
    }
}

/// Brute-force benefit oracle over the raw JSON document. Shares no code
/// with the library computation: different traversal, different accumulation
/// shape, reads field names straight out of serde_json values.
#[derive(Debug, Default, PartialEq)]
pub struct OracleTotals {
    pub monthly_minutes: f64,
    pub one_off_minutes: f64,
    pub by_type_unit: BTreeMap<String, f64>,
    pub computed_rows: usize,
    pub qualitative_rows: usize,
}

pub fn oracle_totals(doc: &Value) -> OracleTotals {
    let mut totals = OracleTotals::default();
    let reqs = match doc.get("requirements").and_then(Value::as_array) {
        Some(r) => r,
        None => return totals,
    };
    for req in reqs {
        if req.get("status").and_then(Value::as_str) == Some("rejected") {
            continue;
        }
        let volume = req
            .get("monthlyVolume")
            .and_then(Value::as_f64)
            .unwrap_or(0.0);
        let benefits = match req.get("benefits").and_then(Value::as_array) {
            Some(b) => b,
            None => continue,
        };
        for b in benefits {
            let direction = b.get("direction").and_then(Value::as_str).unwrap();
            let expected = b.get("expected").unwrap();
            let numeric = expected.get("kind").and_then(Value::as_str) == Some("numeric");
            if !numeric || !(direction == "lower" || direction == "higher") {
                totals.qualitative_rows += 1;
                continue;
            }
            totals.computed_rows += 1;
            let e = expected.get("amount").and_then(Value::as_f64).unwrap();
            let unit = expected.get("unit").and_then(Value::as_str).unwrap();
            let delta = b
                .get("valuesAreDelta")
                .and_then(Value::as_bool)
                .unwrap_or(false);
            let gross = if delta {
                e
            } else {
                let base = b
                    .get("baseline")
                    .and_then(|v| v.get("amount"))
                    .and_then(Value::as_f64)
                    .unwrap();
                if direction == "lower" {
                    base - e
                } else {
                    e - base
                }
            };
            let basis = b.get("aggregationBasis").and_then(Value::as_str).unwrap();
            let kind = b.get("type").and_then(Value::as_str).unwrap();
            if kind == "time" {
                let ov_u = b
                    .get("oversightMinutesPerUnit")
                    .and_then(Value::as_f64)
                    .unwrap_or(0.0);
                let ov_m = b
                    .get("oversightMinutesPerMonth")
                    .and_then(Value::as_f64)
                    .unwrap_or(0.0);
                match basis {
                    "per-unit" => totals.monthly_minutes += (gross - ov_u) * volume - ov_m,
                    "per-month" => totals.monthly_minutes += gross - ov_m - ov_u * volume,
                    "one-off" => totals.one_off_minutes += gross - ov_u,
                    other => panic!("unknown basis {other}"),
                }
            } else {
                let key = format!("{kind}/{unit}");
                match basis {
                    "per-unit" => *totals.by_type_unit.entry(key).or_insert(0.0) += gross * volume,
                    "per-month" => *totals.by_type_unit.entry(key).or_insert(0.0) += gross,
                    "one-off" => {}
                    other => panic!("unknown basis {other}"),
                }
            }
        }
    }
    totals
}

pub fn close(a: f64, b: f64) -> bool {
    if a == b {
        return true;
    }
    let scale = a.abs().max(b.abs()).max(1.0);
    (a - b).abs() <= 1e-9 * scale
}

pub fn fixture(name: &str) -> String {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}
