//! Canonical canvas document model and lossless JSON parsing/serialization.
//!
//! Field declaration order in these structs defines the canonical key order
//! of serialized documents. Unknown fields are captured per-object in an
//! `extra` map so a round-trip never drops data.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

fn is_false(v: &bool) -> bool {
    !*v
}

/// Root canvas document with the six sections plus persons registry.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Canvas {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<String>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub canvas_version: String,
    #[serde(default)]
    pub project: ProjectDefinition,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub persons: Vec<Person>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub requirements: Vec<Requirement>,
    #[serde(default, skip_serializing_if = "FeasibilityDefaults::is_empty")]
    pub feasibility_defaults: FeasibilityDefaults,
    #[serde(default, skip_serializing_if = "Governance::is_empty")]
    pub governance: Governance,
    #[serde(default, skip_serializing_if = "DataAccess::is_empty")]
    pub data_access: DataAccess,
    #[serde(default, skip_serializing_if = "Outcomes::is_empty")]
    pub outcomes: Outcomes,
    #[serde(flatten)]
    pub extra: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ProjectDefinition {
    #[serde(default)]
    pub title: String,
    #[serde(default)]
    pub description: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub objectives: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stage: Option<ProjectStage>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub keywords: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub funding: Option<Funding>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lead_organization: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value_summary: Option<ValueSummary>,
    #[serde(flatten)]
    pub extra: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProjectStage {
    Planning,
    Prototype,
    Deployment,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Funding {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grant_name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub funder_name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grant_id: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ValueSummary {
    #[serde(default)]
    pub headline_value_statement: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primary_value_driver: Option<BenefitType>,
}

/// Entry in the centralized persons registry.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Person {
    #[serde(default)]
    pub id: String,
    #[serde(default)]
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub affiliation: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orcid: Option<String>,
    /// Functional roles, checked against the `functional-roles` vocabulary.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub roles: Vec<String>,
    #[serde(flatten)]
    pub extra: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Requirement {
    #[serde(default)]
    pub id: String,
    #[serde(default)]
    pub title: String,
    #[serde(default)]
    pub description: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub user_story: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub priority: Option<PriorityLevel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub status: Option<RequirementStatus>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit_of_work: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monthly_volume: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_population: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub benefits: Vec<BenefitMetric>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub depends_on: Vec<String>,
    /// Person ids from the registry.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub stakeholders: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub feasibility: Option<TaskFeasibility>,
    #[serde(flatten)]
    pub extra: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PriorityLevel {
    MustHave,
    ShouldHave,
    CouldHave,
    WontHave,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RequirementStatus {
    Proposed,
    Accepted,
    InProgress,
    Delivered,
    Rejected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BenefitType {
    Time,
    Quality,
    Risk,
    Enablement,
    Cost,
}

impl BenefitType {
    pub fn as_str(&self) -> &'static str {
        match self {
            BenefitType::Time => "time",
            BenefitType::Quality => "quality",
            BenefitType::Risk => "risk",
            BenefitType::Enablement => "enablement",
            BenefitType::Cost => "cost",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BenefitDirection {
    Higher,
    Lower,
    Target,
    Boolean,
}

impl BenefitDirection {
    pub fn as_str(&self) -> &'static str {
        match self {
            BenefitDirection::Higher => "higher",
            BenefitDirection::Lower => "lower",
            BenefitDirection::Target => "target",
            BenefitDirection::Boolean => "boolean",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConfidenceLevel {
    Low,
    Medium,
    High,
}

impl ConfidenceLevel {
    pub fn as_str(&self) -> &'static str {
        match self {
            ConfidenceLevel::Low => "low",
            ConfidenceLevel::Medium => "medium",
            ConfidenceLevel::High => "high",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CategoricalLevel {
    Low,
    Medium,
    High,
}

/// Baseline/expected measurement: numeric with a unit, categorical, or binary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MetricValue {
    Numeric { amount: f64, unit: String },
    Categorical { level: CategoricalLevel },
    Binary { value: bool },
}

impl MetricValue {
    pub fn kind_name(&self) -> &'static str {
        match self {
            MetricValue::Numeric { .. } => "numeric",
            MetricValue::Categorical { .. } => "categorical",
            MetricValue::Binary { .. } => "binary",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AggregationBasis {
    PerUnit,
    PerMonth,
    OneOff,
}

impl AggregationBasis {
    pub fn as_str(&self) -> &'static str {
        match self {
            AggregationBasis::PerUnit => "per-unit",
            AggregationBasis::PerMonth => "per-month",
            AggregationBasis::OneOff => "one-off",
        }
    }
}

/// One quantified expectation attached to a requirement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BenefitMetric {
    #[serde(rename = "type")]
    pub benefit_type: BenefitType,
    #[serde(default)]
    pub metric_id: String,
    #[serde(default, skip_serializing_if = "is_false")]
    pub is_custom: bool,
    #[serde(default)]
    pub label: String,
    pub direction: BenefitDirection,
    #[serde(default, skip_serializing_if = "is_false")]
    pub values_are_delta: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub baseline: Option<MetricValue>,
    pub expected: MetricValue,
    pub aggregation_basis: AggregationBasis,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oversight_minutes_per_unit: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oversight_minutes_per_month: Option<f64>,
    pub user_confidence: ConfidenceLevel,
    pub developer_confidence: ConfidenceLevel,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assumptions: Option<String>,
    #[serde(flatten)]
    pub extra: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RiskLevel {
    Low,
    Medium,
    High,
    Critical,
}

impl RiskLevel {
    pub fn as_str(&self) -> &'static str {
        match self {
            RiskLevel::Low => "low",
            RiskLevel::Medium => "medium",
            RiskLevel::High => "high",
            RiskLevel::Critical => "critical",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RiskCategory {
    Technical,
    Data,
    Compliance,
    Operational,
    Ethical,
    Adoption,
}

impl RiskCategory {
    pub fn as_str(&self) -> &'static str {
        match self {
            RiskCategory::Technical => "technical",
            RiskCategory::Data => "data",
            RiskCategory::Compliance => "compliance",
            RiskCategory::Operational => "operational",
            RiskCategory::Ethical => "ethical",
            RiskCategory::Adoption => "adoption",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RiskStatus {
    Identified,
    Mitigated,
    Accepted,
    Resolved,
}

/// One categorized risk in a per-task assessment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RiskRecord {
    pub category: RiskCategory,
    #[serde(default)]
    pub title: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub likelihood: RiskLevel,
    pub impact: RiskLevel,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mitigation: Option<String>,
    pub status: RiskStatus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelSelection {
    OpenSource,
    FrontierModel,
    FineTuned,
    Custom,
    None,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Architecture {
    Prompting,
    Rag {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        retrieval_method: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        embedding_model: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        chunking_strategy: Option<String>,
    },
    FineTuning {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        base_model: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        approach: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dataset: Option<String>,
    },
    Agentic {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        framework: Option<String>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        tools: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        orchestration: Option<String>,
    },
    #[default]
    None,
}

impl Architecture {
    pub fn is_none(&self) -> bool {
        matches!(self, Architecture::None)
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Architecture::Prompting => "prompting",
            Architecture::Rag { .. } => "rag",
            Architecture::FineTuning { .. } => "fine-tuning",
            Architecture::Agentic { .. } => "agentic",
            Architecture::None => "none",
        }
    }
}

/// Per-task developer feasibility override.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TaskFeasibility {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trl: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub technical_risk: Option<RiskLevel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub effort_estimate: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algorithm_spec: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tools: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model_selection: Option<ModelSelection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model_card_id: Option<String>,
    #[serde(default, skip_serializing_if = "Architecture::is_none")]
    pub architecture: Architecture,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub risks: Vec<RiskRecord>,
    #[serde(flatten)]
    pub extra: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FeasibilityDefaults {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trl: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub overall_technical_risk: Option<RiskLevel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub effort_estimate: Option<String>,
}

impl FeasibilityDefaults {
    pub fn is_empty(&self) -> bool {
        self.trl.is_none() && self.overall_technical_risk.is_none() && self.effort_estimate.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Governance {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub stages: Vec<GovernanceStage>,
}

impl Governance {
    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GovernanceStage {
    #[serde(default)]
    pub name: String,
    /// ISO-8601 calendar date (YYYY-MM-DD).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start_date: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub end_date: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub agents: Vec<AgentRef>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub milestones: Vec<Milestone>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub compliance_standards: Vec<ComplianceStandard>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub policy_card_uri: Option<String>,
    #[serde(flatten)]
    pub extra: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AgentKind {
    Person,
    Organization,
    Software,
}

impl AgentKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            AgentKind::Person => "person",
            AgentKind::Organization => "organization",
            AgentKind::Software => "software",
        }
    }
}

/// Agent responsible for decisions in a governance stage. For `kind: person`,
/// `reference` is a person id from the registry; otherwise a name/identifier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgentRef {
    pub kind: AgentKind,
    #[serde(rename = "ref")]
    pub reference: String,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Milestone {
    #[serde(default)]
    pub title: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub kpis: Vec<String>,
}

/// Plain-string or structured framework reference.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplianceStandard {
    Structured {
        framework: String,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        clauses: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        uri: Option<String>,
    },
    Plain(String),
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DataAccess {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub datasets: Vec<DatasetEntry>,
}

impl DataAccess {
    pub fn is_empty(&self) -> bool {
        self.datasets.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AccessRights {
    Open,
    Restricted,
    Confidential,
    HighlyRestricted,
}

impl AccessRights {
    pub fn as_str(&self) -> &'static str {
        match self {
            AccessRights::Open => "open",
            AccessRights::Restricted => "restricted",
            AccessRights::Confidential => "confidential",
            AccessRights::HighlyRestricted => "highly-restricted",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DatasetEntry {
    #[serde(default)]
    pub id: String,
    #[serde(default)]
    pub title: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub license: Option<String>,
    pub access_rights: AccessRights,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sensitivity_level: Option<String>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub personal_data: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub duo_terms: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub persistent_id: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data_card_id: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contact_point: Option<String>,
    #[serde(flatten)]
    pub extra: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Outcomes {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub deliverables: Vec<Deliverable>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub publications: Vec<Publication>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub evaluations: Vec<Evaluation>,
}

impl Outcomes {
    pub fn is_empty(&self) -> bool {
        self.deliverables.is_empty() && self.publications.is_empty() && self.evaluations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Deliverable {
    #[serde(default)]
    pub title: String,
    #[serde(rename = "type", default, skip_serializing_if = "Option::is_none")]
    pub deliverable_type: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub status: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub persistent_id: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Publication {
    #[serde(default)]
    pub title: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub doi: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub authors: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Evaluation {
    #[serde(default)]
    pub metric: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub findings: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<NumericValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub benefit_ref: Option<BenefitRef>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct NumericValue {
    pub amount: f64,
    #[serde(default)]
    pub unit: String,
}

/// Link from an evaluation back to the benefit metric it measures.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BenefitRef {
    pub requirement_id: String,
    pub metric_id: String,
}

/// Parse failure for a canvas document.
#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("JSON syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error at {pointer}: {message}")]
    Schema { pointer: String, message: String },
}

/// Parse a UTF-8 JSON document into a typed canvas.
///
/// Unrecognized fields are retained in per-object extension maps; their
/// nested objects are key-sorted so serialization of the result is canonical.
pub fn parse_canvas(text: &str) -> Result<Canvas, ParseError> {
    let mut de = serde_json::Deserializer::from_str(text);
    match serde_path_to_error::deserialize::<_, Canvas>(&mut de) {
        Ok(mut canvas) => {
            canonicalize_extras(&mut canvas);
            Ok(canvas)
        }
        Err(err) => {
            let pointer = path_to_pointer(err.path());
            let inner = err.into_inner();
            if inner.is_syntax() || inner.is_eof() {
                Err(ParseError::Syntax {
                    line: inner.line(),
                    column: inner.column(),
                    message: strip_location(&inner.to_string()),
                })
            } else {
                Err(ParseError::Schema {
                    pointer,
                    message: strip_location(&inner.to_string()),
                })
            }
        }
    }
}

/// Serialize a canvas to its canonical JSON form: declaration-order keys,
/// 2-space indentation, trailing newline.
pub fn serialize_canvas(canvas: &Canvas) -> String {
    let mut out = serde_json::to_string_pretty(canvas).expect("canvas serialization is total");
    out.push('\n');
    out
}

fn strip_location(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(idx) => msg[..idx].to_string(),
        None => msg.to_string(),
    }
}

fn path_to_pointer(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        match seg {
            Segment::Map { key } => {
                out.push('/');
                out.push_str(&key.replace('~', "~0").replace('/', "~1"));
            }
            Segment::Seq { index } => {
                out.push('/');
                out.push_str(&index.to_string());
            }
            Segment::Enum { variant } => {
                out.push('/');
                out.push_str(variant);
            }
            Segment::Unknown => {}
        }
    }
    if out.is_empty() {
        out.push('/');
    }
    out
}

/// Recursively sort object keys of a raw JSON value.
pub fn sort_value(value: &Value) -> Value {
    match value {
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            let mut out = serde_json::Map::new();
            for k in keys {
                out.insert(k.clone(), sort_value(&map[k]));
            }
            Value::Object(out)
        }
        Value::Array(items) => Value::Array(items.iter().map(sort_value).collect()),
        other => other.clone(),
    }
}

fn sort_extras(extra: &mut BTreeMap<String, Value>) {
    for v in extra.values_mut() {
        *v = sort_value(v);
    }
}

fn canonicalize_extras(canvas: &mut Canvas) {
    sort_extras(&mut canvas.extra);
    sort_extras(&mut canvas.project.extra);
    for p in &mut canvas.persons {
        sort_extras(&mut p.extra);
    }
    for r in &mut canvas.requirements {
        sort_extras(&mut r.extra);
        for b in &mut r.benefits {
            sort_extras(&mut b.extra);
        }
        if let Some(f) = &mut r.feasibility {
            sort_extras(&mut f.extra);
        }
    }
    for s in &mut canvas.governance.stages {
        sort_extras(&mut s.extra);
    }
    for d in &mut canvas.data_access.datasets {
        sort_extras(&mut d.extra);
    }
}
