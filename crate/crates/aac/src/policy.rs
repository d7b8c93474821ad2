//! Compiles a canvas into a baseline Policy Card: ABAC-style action rules
//! from risks and dataset access rights, KPI thresholds from benefit metrics,
//! stakeholders from governance agents, and assurance mappings from
//! compliance standards.

use serde::Serialize;

use crate::model::*;
use crate::validator::validate;

/// Shape marker: only the baseline subset of the Policy Card format is
/// produced here.
pub const POLICY_PROFILE: &str = "aac-baseline";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleEffect {
    Allow,
    Deny,
    RequireEscalation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceKind {
    Risk,
    Dataset,
}

/// Provenance of a rule or threshold: where in the canvas it came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuleSource {
    pub kind: SourceKind,
    /// JSON pointer into the source canvas.
    pub path: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ActionRule {
    pub effect: RuleEffect,
    pub action: String,
    pub condition: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evidence: Option<String>,
    pub source: RuleSource,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KpiThreshold {
    pub metric: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub baseline: Option<MetricValue>,
    pub target: MetricValue,
    pub direction: BenefitDirection,
    pub critical_auto_fail: bool,
    pub source: KpiSource,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KpiSource {
    pub requirement_id: String,
    pub metric_id: String,
    pub path: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stakeholder {
    pub kind: AgentKind,
    pub name: String,
    #[serde(rename = "ref")]
    pub reference: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApplicablePolicy {
    pub framework: String,
    pub clauses: Vec<String>,
    pub uri: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolicyCard {
    pub id: String,
    pub profile: &'static str,
    pub version: String,
    pub source_canvas: SourceCanvas,
    pub scope: Scope,
    pub applicable_policies: Vec<ApplicablePolicy>,
    /// "framework:clause" tokens.
    pub assurance_mapping: Vec<String>,
    pub controls: Controls,
    pub kpis_thresholds: Vec<KpiThreshold>,
    pub references: References,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SourceCanvas {
    pub title: String,
    pub canvas_version: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Scope {
    pub stakeholders: Vec<Stakeholder>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Controls {
    pub action_rules: Vec<ActionRule>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct References {
    pub policy_card_uris: Vec<String>,
}

#[derive(Debug, thiserror::Error)]
#[error("canvas has {0} validation error(s); refusing to generate a policy card")]
pub struct InvalidCanvas(pub usize);

/// Action rules from per-task risks, then datasets, in canvas order.
///
/// Risk split: critical impact on an unmitigated (identified/accepted) risk
/// is a deny; high or critical likelihood below that is an escalation;
/// mitigated/resolved risks become allow rules carrying the mitigation as
/// evidence. Highly-restricted datasets deny processing without explicit
/// authorisation; confidential datasets escalate external transmission.
pub fn derive_action_rules(canvas: &Canvas) -> Vec<ActionRule> {
    let mut rules = Vec::new();

    for (i, req) in canvas.requirements.iter().enumerate() {
        let Some(feas) = &req.feasibility else { continue };
        for (j, risk) in feas.risks.iter().enumerate() {
            let path = format!("/requirements/{i}/feasibility/risks/{j}");
            let source = RuleSource {
                kind: SourceKind::Risk,
                path,
            };
            let action = format!("operate requirement {} ({})", req.id, risk.title);
            match risk.status {
                RiskStatus::Mitigated | RiskStatus::Resolved => rules.push(ActionRule {
                    effect: RuleEffect::Allow,
                    action,
                    condition: format!("risk {:?} is {}", risk.title, match risk.status {
                        RiskStatus::Mitigated => "mitigated",
                        _ => "resolved",
                    }),
                    evidence: risk.mitigation.clone(),
                    source,
                }),
                RiskStatus::Identified | RiskStatus::Accepted => {
                    if risk.impact == RiskLevel::Critical {
                        rules.push(ActionRule {
                            effect: RuleEffect::Deny,
                            action,
                            condition: format!(
                                "unmitigated {} risk with critical impact",
                                risk.category.as_str()
                            ),
                            evidence: None,
                            source,
                        });
                    } else if matches!(risk.likelihood, RiskLevel::High | RiskLevel::Critical) {
                        rules.push(ActionRule {
                            effect: RuleEffect::RequireEscalation,
                            action,
                            condition: format!(
                                "unmitigated {} risk with {} likelihood",
                                risk.category.as_str(),
                                risk.likelihood.as_str()
                            ),
                            evidence: None,
                            source,
                        });
                    } else {
                        rules.push(ActionRule {
                            effect: RuleEffect::Allow,
                            action,
                            condition: format!(
                                "{} risk below escalation thresholds (likelihood {}, impact {})",
                                risk.category.as_str(),
                                risk.likelihood.as_str(),
                                risk.impact.as_str()
                            ),
                            evidence: None,
                            source,
                        });
                    }
                }
            }
        }
    }

    for (i, ds) in canvas.data_access.datasets.iter().enumerate() {
        let path = format!("/dataAccess/datasets/{i}");
        match ds.access_rights {
            AccessRights::HighlyRestricted => rules.push(ActionRule {
                effect: RuleEffect::Deny,
                action: format!("process dataset {} without explicit authorisation", ds.id),
                condition: "dataset access rights are highly-restricted".into(),
                evidence: None,
                source: RuleSource {
                    kind: SourceKind::Dataset,
                    path,
                },
            }),
            AccessRights::Confidential => rules.push(ActionRule {
                effect: RuleEffect::RequireEscalation,
                action: format!("transmit dataset {} to an external service", ds.id),
                condition: "dataset access rights are confidential".into(),
                evidence: None,
                source: RuleSource {
                    kind: SourceKind::Dataset,
                    path,
                },
            }),
            AccessRights::Open | AccessRights::Restricted => {}
        }
    }

    rules
}

/// One threshold per benefit metric; target from the expected value,
/// `critical_auto_fail` iff the owning requirement is must-have.
pub fn derive_kpi_thresholds(canvas: &Canvas) -> Vec<KpiThreshold> {
    let mut thresholds = Vec::new();
    for (i, req) in canvas.requirements.iter().enumerate() {
        for (j, benefit) in req.benefits.iter().enumerate() {
            thresholds.push(KpiThreshold {
                metric: benefit.label.clone(),
                baseline: benefit.baseline.clone(),
                target: benefit.expected.clone(),
                direction: benefit.direction,
                critical_auto_fail: req.priority == Some(PriorityLevel::MustHave),
                source: KpiSource {
                    requirement_id: req.id.clone(),
                    metric_id: benefit.metric_id.clone(),
                    path: format!("/requirements/{i}/benefits/{j}"),
                },
            });
        }
    }
    thresholds
}

/// Assemble the whole card; refuses canvases with validation errors.
pub fn generate_policy_card(canvas: &Canvas) -> Result<PolicyCard, InvalidCanvas> {
    let report = validate(canvas);
    if !report.valid {
        return Err(InvalidCanvas(report.error_count()));
    }

    let mut stakeholders: Vec<Stakeholder> = Vec::new();
    let mut applicable_policies = Vec::new();
    let mut assurance_mapping = Vec::new();
    let mut policy_card_uris = Vec::new();

    for stage in &canvas.governance.stages {
        for agent in &stage.agents {
            let name = match agent.kind {
                AgentKind::Person => canvas
                    .persons
                    .iter()
                    .find(|p| p.id == agent.reference)
                    .map(|p| p.name.clone())
                    .unwrap_or_else(|| agent.reference.clone()),
                _ => agent.reference.clone(),
            };
            let s = Stakeholder {
                kind: agent.kind,
                name,
                reference: agent.reference.clone(),
            };
            if !stakeholders.contains(&s) {
                stakeholders.push(s);
            }
        }
        for std in &stage.compliance_standards {
            let policy = match std {
                ComplianceStandard::Plain(name) => ApplicablePolicy {
                    framework: name.clone(),
                    clauses: Vec::new(),
                    uri: String::new(),
                },
                ComplianceStandard::Structured { framework, clauses, uri } => {
                    for clause in clauses {
                        assurance_mapping.push(format!("{framework}:{clause}"));
                    }
                    ApplicablePolicy {
                        framework: framework.clone(),
                        clauses: clauses.clone(),
                        uri: uri.clone().unwrap_or_default(),
                    }
                }
            };
            if !applicable_policies.contains(&policy) {
                applicable_policies.push(policy);
            }
        }
        if let Some(uri) = &stage.policy_card_uri {
            if !policy_card_uris.contains(uri) {
                policy_card_uris.push(uri.clone());
            }
        }
    }

    Ok(PolicyCard {
        id: format!("policy-card-{}", slug_id(&canvas.project.title)),
        profile: POLICY_PROFILE,
        version: canvas.canvas_version.clone(),
        source_canvas: SourceCanvas {
            title: canvas.project.title.clone(),
            canvas_version: canvas.canvas_version.clone(),
        },
        scope: Scope { stakeholders },
        applicable_policies,
        assurance_mapping,
        controls: Controls {
            action_rules: derive_action_rules(canvas),
        },
        kpis_thresholds: derive_kpi_thresholds(canvas),
        references: References { policy_card_uris },
    })
}

impl PolicyCard {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("card serializes");
        s.push('\n');
        s
    }
}

fn slug_id(text: &str) -> String {
    let mut out = String::new();
    for c in text.chars() {
        if c.is_ascii_alphanumeric() {
            out.push(c.to_ascii_lowercase());
        } else if !out.is_empty() && !out.ends_with('-') {
            out.push('-');
        }
    }
    let trimmed = out.trim_end_matches('-');
    if trimmed.is_empty() {
        "untitled".into()
    } else {
        trimmed.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse_canvas;

    fn canvas(text: &str) -> Canvas {
        parse_canvas(text).unwrap()
    }

    #[test]
    fn high_likelihood_identified_risk_escalates() {
        let c = canvas(
            r#"{"project":{"title":"T","description":"D","stage":"planning"},"canvasVersion":"0.1.0",
                "requirements":[{"id":"r1","title":"t","description":"d","feasibility":{"risks":[
                  {"category":"technical","title":"flaky model","likelihood":"high","impact":"medium",
                   "status":"identified"}]}}]}"#,
        );
        let rules = derive_action_rules(&c);
        assert_eq!(rules.len(), 1);
        assert_eq!(rules[0].effect, RuleEffect::RequireEscalation);
        assert_eq!(rules[0].source.path, "/requirements/0/feasibility/risks/0");
    }

    #[test]
    fn critical_impact_denies() {
        let c = canvas(
            r#"{"project":{"title":"T","description":"D","stage":"planning"},"canvasVersion":"0.1.0",
                "requirements":[{"id":"r1","title":"t","description":"d","feasibility":{"risks":[
                  {"category":"compliance","title":"breach","likelihood":"low","impact":"critical",
                   "status":"accepted"}]}}]}"#,
        );
        assert_eq!(derive_action_rules(&c)[0].effect, RuleEffect::Deny);
    }

    #[test]
    fn mitigated_risk_allows_with_evidence() {
        let c = canvas(
            r#"{"project":{"title":"T","description":"D","stage":"planning"},"canvasVersion":"0.1.0",
                "requirements":[{"id":"r1","title":"t","description":"d","feasibility":{"risks":[
                  {"category":"ethical","title":"bias","likelihood":"high","impact":"high",
                   "mitigation":"human review of outputs","status":"mitigated"}]}}]}"#,
        );
        let rules = derive_action_rules(&c);
        assert_eq!(rules[0].effect, RuleEffect::Allow);
        assert_eq!(rules[0].evidence.as_deref(), Some("human review of outputs"));
    }

    #[test]
    fn highly_restricted_dataset_denies_processing() {
        let c = canvas(
            r#"{"project":{"title":"T","description":"D","stage":"planning"},"canvasVersion":"0.1.0",
                "dataAccess":{"datasets":[{"id":"d1","title":"x","accessRights":"highly-restricted"}]}}"#,
        );
        let rules = derive_action_rules(&c);
        assert_eq!(rules[0].effect, RuleEffect::Deny);
        assert_eq!(rules[0].source.path, "/dataAccess/datasets/0");
        assert!(rules[0].action.contains("d1"));
    }

    #[test]
    fn must_have_benefit_threshold_auto_fails() {
        let c = canvas(
            r#"{"project":{"title":"T","description":"D","stage":"planning"},"canvasVersion":"0.1.0",
                "requirements":[
                  {"id":"r1","title":"t","description":"d","priority":"must-have","benefits":[
                    {"type":"time","metricId":"time-per-unit","label":"minutes","direction":"lower",
                     "baseline":{"kind":"numeric","amount":60,"unit":"min"},
                     "expected":{"kind":"numeric","amount":20,"unit":"min"},
                     "aggregationBasis":"per-unit","userConfidence":"high","developerConfidence":"high"}]},
                  {"id":"r2","title":"t","description":"d","priority":"could-have","benefits":[
                    {"type":"quality","metricId":"error-rate","label":"errors","direction":"lower",
                     "expected":{"kind":"numeric","amount":1,"unit":"%"},"valuesAreDelta":true,
                     "aggregationBasis":"per-month","userConfidence":"low","developerConfidence":"low"}]}]}"#,
        );
        let kpis = derive_kpi_thresholds(&c);
        assert_eq!(kpis.len(), 2);
        assert!(kpis[0].critical_auto_fail);
        assert_eq!(
            kpis[0].target,
            MetricValue::Numeric { amount: 20.0, unit: "min".into() }
        );
        assert!(!kpis[1].critical_auto_fail);
    }

    #[test]
    fn card_collects_policies_assurance_stakeholders_and_uris() {
        let c = canvas(
            r#"{"project":{"title":"My Canvas","description":"D","stage":"planning"},"canvasVersion":"1.2.0",
                "persons":[{"id":"p1","name":"Ada"}],
                "governance":{"stages":[{"name":"pilot",
                  "agents":[{"kind":"person","ref":"p1"},{"kind":"software","ref":"ot-mcp"}],
                  "complianceStandards":["internal SOP",
                    {"framework":"NIST AI RMF","clauses":["GOVERN-1.1"],"uri":"https://example.org/rmf"}],
                  "policyCardUri":"https://example.org/card.json"}]}}"#,
        );
        let card = generate_policy_card(&c).unwrap();
        assert_eq!(card.version, "1.2.0");
        assert_eq!(card.assurance_mapping, ["NIST AI RMF:GOVERN-1.1"]);
        assert_eq!(card.applicable_policies.len(), 2);
        assert_eq!(card.scope.stakeholders.len(), 2);
        assert_eq!(card.scope.stakeholders[0].name, "Ada");
        assert_eq!(card.scope.stakeholders[1].kind, AgentKind::Software);
        assert_eq!(card.references.policy_card_uris, ["https://example.org/card.json"]);
    }

    #[test]
    fn empty_governance_card_still_derives_data_rules() {
        let c = canvas(
            r#"{"project":{"title":"T","description":"D","stage":"planning"},"canvasVersion":"0.1.0",
                "dataAccess":{"datasets":[{"id":"d1","title":"x","accessRights":"confidential"}]}}"#,
        );
        let card = generate_policy_card(&c).unwrap();
        assert!(card.scope.stakeholders.is_empty());
        assert!(card.applicable_policies.is_empty());
        assert_eq!(card.controls.action_rules.len(), 1);
    }

    #[test]
    fn invalid_canvas_is_refused() {
        let c = canvas(r#"{"project":{"description":"D"},"canvasVersion":"0.1.0"}"#);
        assert!(generate_policy_card(&c).is_err());
    }
}
