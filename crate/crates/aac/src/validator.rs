//! Structural, vocabulary, and cross-reference checks over a parsed canvas.
//!
//! Problems are issues in a report, never failures; `validate` is total.
//! Issue codes are stable so downstream tooling can filter on them.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::model::*;
use crate::vocab;

/// Schema version this build of the tool targets; a different
/// `schemaVersion` in a document is a warning, not an error.
pub const SUPPORTED_SCHEMA_VERSION: &str = "0.13.1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Issue {
    pub severity: Severity,
    pub code: &'static str,
    /// JSON pointer into the canonical document.
    pub path: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    pub fn from_issues(mut issues: Vec<Issue>) -> Self {
        issues.sort_by(|a, b| a.path.cmp(&b.path).then(a.code.cmp(b.code)));
        let valid = !issues.iter().any(|i| i.severity == Severity::Error);
        ValidationReport { valid, issues }
    }

    pub fn error_count(&self) -> usize {
        self.issues
            .iter()
            .filter(|i| i.severity == Severity::Error)
            .count()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for issue in &self.issues {
            let sev = match issue.severity {
                Severity::Error => "error",
                Severity::Warning => "warning",
            };
            out.push_str(&format!(
                "{sev} {} {} — {}\n",
                issue.code, issue.path, issue.message
            ));
        }
        out.push_str(if self.valid { "valid\n" } else { "invalid\n" });
        out
    }
}

// Error codes
pub const E_MISSING_TITLE: &str = "AAC-E001";
pub const E_MISSING_DESCRIPTION: &str = "AAC-E002";
pub const E_MISSING_STAGE: &str = "AAC-E003";
pub const E_TRL_RANGE: &str = "AAC-E005";
pub const E_ORCID_PATTERN: &str = "AAC-E006";
pub const E_DATE_ORDER: &str = "AAC-E007";
pub const E_BAD_VERSION: &str = "AAC-E008";
pub const E_BAD_DATE: &str = "AAC-E009";
pub const E_DUP_PERSON_ID: &str = "AAC-E010";
pub const E_DUP_REQUIREMENT_ID: &str = "AAC-E011";
pub const E_UNKNOWN_DUO: &str = "AAC-E012";
pub const E_UNKNOWN_ROLE: &str = "AAC-E013";
pub const E_UNKNOWN_METRIC: &str = "AAC-E014";
pub const E_VALUE_KIND_MISMATCH: &str = "AAC-E015";
pub const E_UNIT_MISMATCH: &str = "AAC-E016";
pub const E_DELTA_WITH_BASELINE: &str = "AAC-E017";
pub const E_NEGATIVE_NUMBER: &str = "AAC-E018";
pub const E_SELF_DEPENDENCY: &str = "AAC-E019";
pub const E_DANGLING_STAKEHOLDER: &str = "AAC-E020";
pub const E_DANGLING_AGENT: &str = "AAC-E021";
pub const E_DANGLING_DEPENDENCY: &str = "AAC-E022";
pub const E_DANGLING_BENEFIT_REF: &str = "AAC-E023";
pub const E_DUP_DATASET_ID: &str = "AAC-E024";
pub const E_DEPENDENCY_CYCLE: &str = "AAC-E030";
// Warning codes
pub const W_SCHEMA_VERSION: &str = "AAC-W001";
pub const W_OVERSIGHT_NON_TIME: &str = "AAC-W010";
pub const W_ORCID_CHECKSUM: &str = "AAC-W011";

/// All issue codes with a short description; the shipped error-code table is
/// checked against this registry.
pub const ISSUE_CODES: &[(&str, &str)] = &[
    (E_MISSING_TITLE, "project title is required"),
    (E_MISSING_DESCRIPTION, "project description is required"),
    (E_MISSING_STAGE, "project stage is required"),
    (E_TRL_RANGE, "TRL must be an integer between 1 and 9"),
    (E_ORCID_PATTERN, "ORCID does not match dddd-dddd-dddd-ddd[0-9X]"),
    (E_DATE_ORDER, "stage start date is after its end date"),
    (E_BAD_VERSION, "canvasVersion is not a semantic version"),
    (E_BAD_DATE, "date is not an ISO-8601 calendar date (YYYY-MM-DD)"),
    (E_DUP_PERSON_ID, "duplicate person id"),
    (E_DUP_REQUIREMENT_ID, "duplicate requirement id"),
    (E_UNKNOWN_DUO, "DUO term not in the duo vocabulary"),
    (E_UNKNOWN_ROLE, "role not in the functional-roles vocabulary"),
    (E_UNKNOWN_METRIC, "non-custom metricId not in the benefit-metrics vocabulary"),
    (E_VALUE_KIND_MISMATCH, "baseline and expected have different value kinds"),
    (E_UNIT_MISMATCH, "baseline and expected have different numeric units"),
    (E_DELTA_WITH_BASELINE, "valuesAreDelta is true but a baseline is present"),
    (E_NEGATIVE_NUMBER, "value must be nonnegative"),
    (E_SELF_DEPENDENCY, "requirement depends on itself"),
    (E_DANGLING_STAKEHOLDER, "stakeholder does not resolve to the persons registry"),
    (E_DANGLING_AGENT, "person-kind agent does not resolve to the persons registry"),
    (E_DANGLING_DEPENDENCY, "dependsOn does not resolve to a requirement"),
    (E_DANGLING_BENEFIT_REF, "benefitRef does not resolve to a requirement/metric pair"),
    (E_DUP_DATASET_ID, "duplicate dataset id"),
    (E_DEPENDENCY_CYCLE, "requirement dependencies form a cycle"),
    (W_SCHEMA_VERSION, "schemaVersion differs from the supported schema version"),
    (W_OVERSIGHT_NON_TIME, "oversight minutes on a non-time benefit have no effect"),
    (W_ORCID_CHECKSUM, "ORCID checksum digit does not verify (ISO 7064 11,2)"),
];

#[derive(Debug, Clone, Copy, Default)]
pub struct ValidateOptions {
    /// Also run the ISO-7064 checksum over well-formed ORCIDs (warning-level).
    pub orcid_checksum: bool,
}

fn issue(severity: Severity, code: &'static str, path: String, message: impl Into<String>) -> Issue {
    Issue {
        severity,
        code,
        path,
        message: message.into(),
    }
}

fn error(code: &'static str, path: String, message: impl Into<String>) -> Issue {
    issue(Severity::Error, code, path, message)
}

fn warning(code: &'static str, path: String, message: impl Into<String>) -> Issue {
    issue(Severity::Warning, code, path, message)
}

pub fn validate(canvas: &Canvas) -> ValidationReport {
    validate_with(canvas, ValidateOptions::default())
}

pub fn validate_with(canvas: &Canvas, opts: ValidateOptions) -> ValidationReport {
    let mut issues = Vec::new();

    // required project fields
    if canvas.project.title.trim().is_empty() {
        issues.push(error(E_MISSING_TITLE, "/project/title".into(), "project title is required"));
    }
    if canvas.project.description.trim().is_empty() {
        issues.push(error(
            E_MISSING_DESCRIPTION,
            "/project/description".into(),
            "project description is required",
        ));
    }
    if canvas.project.stage.is_none() {
        issues.push(error(E_MISSING_STAGE, "/project/stage".into(), "project stage is required"));
    }

    if parse_semver(&canvas.canvas_version).is_none() {
        issues.push(error(
            E_BAD_VERSION,
            "/canvasVersion".into(),
            format!("not a semantic version: {:?}", canvas.canvas_version),
        ));
    }
    if let Some(sv) = &canvas.schema_version {
        if sv != SUPPORTED_SCHEMA_VERSION {
            issues.push(warning(
                W_SCHEMA_VERSION,
                "/schemaVersion".into(),
                format!("document declares {sv}, this tool supports {SUPPORTED_SCHEMA_VERSION}"),
            ));
        }
    }

    check_trl(canvas.feasibility_defaults.trl, "/feasibilityDefaults/trl", &mut issues);

    // persons registry
    let mut seen_persons = BTreeSet::new();
    for (i, person) in canvas.persons.iter().enumerate() {
        if !seen_persons.insert(person.id.as_str()) {
            issues.push(error(
                E_DUP_PERSON_ID,
                format!("/persons/{i}/id"),
                format!("duplicate person id {:?}", person.id),
            ));
        }
        if let Some(orcid) = &person.orcid {
            if !orcid_pattern_ok(orcid) {
                issues.push(error(
                    E_ORCID_PATTERN,
                    format!("/persons/{i}/orcid"),
                    format!("{orcid:?} does not match dddd-dddd-dddd-ddd[0-9X]"),
                ));
            } else if opts.orcid_checksum && !orcid_checksum_ok(orcid) {
                issues.push(warning(
                    W_ORCID_CHECKSUM,
                    format!("/persons/{i}/orcid"),
                    format!("{orcid:?} fails the ISO 7064 (11,2) check digit"),
                ));
            }
        }
        for (j, role) in person.roles.iter().enumerate() {
            if vocab::vocab_lookup("functional-roles", role).unwrap().is_none() {
                issues.push(error(
                    E_UNKNOWN_ROLE,
                    format!("/persons/{i}/roles/{j}"),
                    format!("{role:?} is not in the functional-roles vocabulary"),
                ));
            }
        }
    }

    // requirements
    let mut seen_reqs = BTreeSet::new();
    for (i, req) in canvas.requirements.iter().enumerate() {
        if !seen_reqs.insert(req.id.as_str()) {
            issues.push(error(
                E_DUP_REQUIREMENT_ID,
                format!("/requirements/{i}/id"),
                format!("duplicate requirement id {:?}", req.id),
            ));
        }
        if let Some(v) = req.monthly_volume {
            if v < 0.0 {
                issues.push(error(
                    E_NEGATIVE_NUMBER,
                    format!("/requirements/{i}/monthlyVolume"),
                    format!("monthly volume must be nonnegative, got {v}"),
                ));
            }
        }
        for (j, benefit) in req.benefits.iter().enumerate() {
            let base = format!("/requirements/{i}/benefits/{j}");
            check_benefit(benefit, &base, &mut issues);
        }
        if let Some(feas) = &req.feasibility {
            check_trl(feas.trl, &format!("/requirements/{i}/feasibility/trl"), &mut issues);
        }
    }

    // governance stage dates
    for (i, stage) in canvas.governance.stages.iter().enumerate() {
        let start_ok = check_date(&stage.start_date, format!("/governance/stages/{i}/startDate"), &mut issues);
        let end_ok = check_date(&stage.end_date, format!("/governance/stages/{i}/endDate"), &mut issues);
        if start_ok && end_ok {
            if let (Some(start), Some(end)) = (&stage.start_date, &stage.end_date) {
                // lexicographic comparison is chronological for YYYY-MM-DD
                if start > end {
                    issues.push(error(
                        E_DATE_ORDER,
                        format!("/governance/stages/{i}/startDate"),
                        format!("start {start} is after end {end}"),
                    ));
                }
            }
        }
    }

    // datasets
    let mut seen_datasets = BTreeSet::new();
    for (i, ds) in canvas.data_access.datasets.iter().enumerate() {
        if !seen_datasets.insert(ds.id.as_str()) {
            issues.push(error(
                E_DUP_DATASET_ID,
                format!("/dataAccess/datasets/{i}/id"),
                format!("duplicate dataset id {:?}", ds.id),
            ));
        }
        for (j, term) in ds.duo_terms.iter().enumerate() {
            if vocab::vocab_lookup("duo", term).unwrap().is_none() {
                issues.push(error(
                    E_UNKNOWN_DUO,
                    format!("/dataAccess/datasets/{i}/duoTerms/{j}"),
                    format!("{term:?} is not in the DUO vocabulary"),
                ));
            }
        }
    }

    issues.extend(check_references(canvas));

    if let Err(cycle) = check_dependency_graph(canvas) {
        issues.push(cycle);
    }

    ValidationReport::from_issues(issues)
}

fn check_benefit(benefit: &BenefitMetric, base: &str, issues: &mut Vec<Issue>) {
    if !benefit.is_custom
        && vocab::vocab_lookup("benefit-metrics", &benefit.metric_id)
            .unwrap()
            .is_none()
    {
        issues.push(error(
            E_UNKNOWN_METRIC,
            format!("{base}/metricId"),
            format!(
                "{:?} is not in the benefit-metrics vocabulary; set isCustom for custom metrics",
                benefit.metric_id
            ),
        ));
    }
    for (field, value) in [
        ("oversightMinutesPerUnit", benefit.oversight_minutes_per_unit),
        ("oversightMinutesPerMonth", benefit.oversight_minutes_per_month),
    ] {
        if let Some(v) = value {
            if v < 0.0 {
                issues.push(error(
                    E_NEGATIVE_NUMBER,
                    format!("{base}/{field}"),
                    format!("oversight minutes must be nonnegative, got {v}"),
                ));
            } else if benefit.benefit_type != BenefitType::Time {
                issues.push(warning(
                    W_OVERSIGHT_NON_TIME,
                    format!("{base}/{field}"),
                    format!(
                        "oversight applies only to time benefits; this benefit has type {}",
                        benefit.benefit_type.as_str()
                    ),
                ));
            }
        }
    }
    if let Some(baseline) = &benefit.baseline {
        if benefit.values_are_delta {
            issues.push(error(
                E_DELTA_WITH_BASELINE,
                format!("{base}/baseline"),
                "valuesAreDelta is true, so baseline must be absent",
            ));
        }
        if baseline.kind_name() != benefit.expected.kind_name() {
            issues.push(error(
                E_VALUE_KIND_MISMATCH,
                format!("{base}/baseline"),
                format!(
                    "baseline is {} but expected is {}",
                    baseline.kind_name(),
                    benefit.expected.kind_name()
                ),
            ));
        } else if let (
            MetricValue::Numeric { unit: bu, .. },
            MetricValue::Numeric { unit: eu, .. },
        ) = (baseline, &benefit.expected)
        {
            if bu != eu {
                issues.push(error(
                    E_UNIT_MISMATCH,
                    format!("{base}/baseline/unit"),
                    format!("baseline unit {bu:?} differs from expected unit {eu:?}"),
                ));
            }
        }
    }
}

fn check_trl(trl: Option<i64>, path: &str, issues: &mut Vec<Issue>) {
    if let Some(t) = trl {
        if !(1..=9).contains(&t) {
            issues.push(error(
                E_TRL_RANGE,
                path.to_string(),
                format!("TRL must be between 1 and 9, got {t}"),
            ));
        }
    }
}

fn check_date(date: &Option<String>, path: String, issues: &mut Vec<Issue>) -> bool {
    match date {
        None => true,
        Some(d) if iso_date_ok(d) => true,
        Some(d) => {
            issues.push(error(
                E_BAD_DATE,
                path,
                format!("{d:?} is not an ISO-8601 calendar date (YYYY-MM-DD)"),
            ));
            false
        }
    }
}

/// Cross-reference integrity: stakeholders and person-kind agents against the
/// persons registry, dependsOn against requirements, benefitRef against
/// (requirement, metric) pairs.
pub fn check_references(canvas: &Canvas) -> Vec<Issue> {
    let mut issues = Vec::new();
    let persons: BTreeSet<&str> = canvas.persons.iter().map(|p| p.id.as_str()).collect();
    let reqs: BTreeSet<&str> = canvas.requirements.iter().map(|r| r.id.as_str()).collect();

    for (i, req) in canvas.requirements.iter().enumerate() {
        for (j, sid) in req.stakeholders.iter().enumerate() {
            if !persons.contains(sid.as_str()) {
                issues.push(error(
                    E_DANGLING_STAKEHOLDER,
                    format!("/requirements/{i}/stakeholders/{j}"),
                    format!("person {sid:?} is not in the persons registry"),
                ));
            }
        }
        for (j, dep) in req.depends_on.iter().enumerate() {
            if dep == &req.id {
                issues.push(error(
                    E_SELF_DEPENDENCY,
                    format!("/requirements/{i}/dependsOn/{j}"),
                    format!("requirement {:?} depends on itself", req.id),
                ));
            } else if !reqs.contains(dep.as_str()) {
                issues.push(error(
                    E_DANGLING_DEPENDENCY,
                    format!("/requirements/{i}/dependsOn/{j}"),
                    format!("requirement {dep:?} does not exist"),
                ));
            }
        }
    }

    for (i, stage) in canvas.governance.stages.iter().enumerate() {
        for (j, agent) in stage.agents.iter().enumerate() {
            if agent.kind == AgentKind::Person && !persons.contains(agent.reference.as_str()) {
                issues.push(error(
                    E_DANGLING_AGENT,
                    format!("/governance/stages/{i}/agents/{j}/ref"),
                    format!("person {:?} is not in the persons registry", agent.reference),
                ));
            }
        }
    }

    for (i, eval) in canvas.outcomes.evaluations.iter().enumerate() {
        if let Some(br) = &eval.benefit_ref {
            let resolved = canvas.requirements.iter().any(|r| {
                r.id == br.requirement_id && r.benefits.iter().any(|b| b.metric_id == br.metric_id)
            });
            if !resolved {
                issues.push(error(
                    E_DANGLING_BENEFIT_REF,
                    format!("/outcomes/evaluations/{i}/benefitRef"),
                    format!(
                        "no benefit {:?} on requirement {:?}",
                        br.metric_id, br.requirement_id
                    ),
                ));
            }
        }
    }

    issues
}

/// Topological order of requirement ids, every requirement after all of its
/// dependencies, ties broken by id ascending. Unresolvable (dangling) edges
/// are ignored here; `check_references` reports them.
pub fn check_dependency_graph(canvas: &Canvas) -> Result<Vec<String>, Issue> {
    let ids: BTreeSet<&str> = canvas.requirements.iter().map(|r| r.id.as_str()).collect();
    // edges: dependency -> dependents; indegree counts unmet dependencies
    let mut dependents: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    let mut indegree: BTreeMap<&str, usize> = ids.iter().map(|id| (*id, 0)).collect();
    for req in &canvas.requirements {
        for dep in &req.depends_on {
            if dep != &req.id && ids.contains(dep.as_str()) {
                dependents.entry(dep.as_str()).or_default().push(req.id.as_str());
                *indegree.get_mut(req.id.as_str()).unwrap() += 1;
            }
        }
    }

    let mut ready: BTreeSet<&str> = indegree
        .iter()
        .filter(|(_, d)| **d == 0)
        .map(|(id, _)| *id)
        .collect();
    let mut order = Vec::new();
    while let Some(id) = ready.iter().next().copied() {
        ready.remove(id);
        order.push(id.to_string());
        for dependent in dependents.get(id).map(|v| v.as_slice()).unwrap_or(&[]) {
            let d = indegree.get_mut(dependent).unwrap();
            *d -= 1;
            if *d == 0 {
                ready.insert(dependent);
            }
        }
    }

    if order.len() == ids.len() {
        return Ok(order);
    }

    // a cycle remains among nodes with indegree > 0; walk dependsOn edges
    // until a node repeats, then canonically rotate from the smallest id
    let remaining: BTreeSet<&str> = indegree
        .iter()
        .filter(|(_, d)| **d > 0)
        .map(|(id, _)| *id)
        .collect();
    let depends_of = |id: &str| -> Vec<&str> {
        canvas
            .requirements
            .iter()
            .find(|r| r.id == id)
            .map(|r| {
                r.depends_on
                    .iter()
                    .map(|d| d.as_str())
                    .filter(|d| remaining.contains(d) && *d != id)
                    .collect()
            })
            .unwrap_or_default()
    };
    let start = *remaining.iter().next().expect("cycle nodes exist");
    let mut trail: Vec<&str> = vec![start];
    let mut cursor = start;
    let cycle: Vec<String> = loop {
        let next = depends_of(cursor)[0];
        if let Some(pos) = trail.iter().position(|n| *n == next) {
            break trail[pos..].iter().map(|s| s.to_string()).collect();
        }
        trail.push(next);
        cursor = next;
    };
    let min_pos = cycle
        .iter()
        .enumerate()
        .min_by_key(|(_, id)| id.as_str())
        .map(|(i, _)| i)
        .unwrap();
    let rotated: Vec<String> = cycle[min_pos..]
        .iter()
        .chain(cycle[..min_pos].iter())
        .cloned()
        .collect();
    Err(error(
        E_DEPENDENCY_CYCLE,
        "/requirements".into(),
        format!("dependency cycle: {}", rotated.join(" -> ")),
    ))
}

pub fn parse_semver(version: &str) -> Option<(u64, u64, u64)> {
    let mut parts = version.split('.');
    let major = parts.next()?.parse().ok()?;
    let minor = parts.next()?.parse().ok()?;
    let patch = parts.next()?.parse().ok()?;
    if parts.next().is_some() {
        return None;
    }
    Some((major, minor, patch))
}

fn iso_date_ok(date: &str) -> bool {
    let bytes = date.as_bytes();
    if bytes.len() != 10 || bytes[4] != b'-' || bytes[7] != b'-' {
        return false;
    }
    if !bytes
        .iter()
        .enumerate()
        .all(|(i, b)| matches!(i, 4 | 7) || b.is_ascii_digit())
    {
        return false;
    }
    let month: u32 = date[5..7].parse().unwrap();
    let day: u32 = date[8..10].parse().unwrap();
    (1..=12).contains(&month) && (1..=31).contains(&day)
}

fn orcid_pattern_ok(orcid: &str) -> bool {
    let bytes = orcid.as_bytes();
    if bytes.len() != 19 {
        return false;
    }
    for (i, b) in bytes.iter().enumerate() {
        match i {
            4 | 9 | 14 => {
                if *b != b'-' {
                    return false;
                }
            }
            18 => {
                if !b.is_ascii_digit() && *b != b'X' {
                    return false;
                }
            }
            _ => {
                if !b.is_ascii_digit() {
                    return false;
                }
            }
        }
    }
    true
}

fn orcid_checksum_ok(orcid: &str) -> bool {
    let mut total: u32 = 0;
    let digits: Vec<char> = orcid.chars().filter(|c| *c != '-').collect();
    for c in &digits[..15] {
        total = (total + c.to_digit(10).unwrap()) * 2;
    }
    let remainder = total % 11;
    let check = (12 - remainder) % 11;
    let last = digits[15];
    if check == 10 {
        last == 'X'
    } else {
        last.to_digit(10) == Some(check)
    }
}
