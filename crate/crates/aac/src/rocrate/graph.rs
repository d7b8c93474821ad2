//! Flattened JSON-LD entity graph with six-ontology mappings.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::model::*;
use crate::vocab;

pub const RO_CRATE_CONTEXT: &str = "https://w3id.org/ro/crate/1.2/context";
pub const RO_CRATE_PROFILE: &str = "https://w3id.org/ro/crate/1.2";
pub const AAC_NAMESPACE: &str = "https://w3id.org/aac#";

/// One node in the flattened graph.
#[derive(Debug, Clone, PartialEq)]
pub struct Entity {
    pub id: String,
    pub types: Vec<String>,
    /// term -> literal | {"@id"} reference | list thereof; sorted for output.
    pub properties: BTreeMap<String, Value>,
}

impl Entity {
    fn new(id: impl Into<String>, types: &[&str]) -> Self {
        Entity {
            id: id.into(),
            types: types.iter().map(|t| t.to_string()).collect(),
            properties: BTreeMap::new(),
        }
    }

    fn set(&mut self, term: &str, value: Value) -> &mut Self {
        self.properties.insert(term.to_string(), value);
        self
    }

    fn set_str(&mut self, term: &str, value: impl Into<String>) -> &mut Self {
        self.set(term, Value::String(value.into()))
    }

    fn set_opt(&mut self, term: &str, value: &Option<String>) -> &mut Self {
        if let Some(v) = value {
            self.set_str(term, v);
        }
        self
    }

    fn set_list(&mut self, term: &str, values: &[String]) -> &mut Self {
        if !values.is_empty() {
            self.set(term, json!(values));
        }
        self
    }
}

fn reference(id: &str) -> Value {
    json!({ "@id": id })
}

fn ref_list(ids: impl IntoIterator<Item = String>) -> Value {
    Value::Array(ids.into_iter().map(|id| reference(&id)).collect())
}

/// Ordered flattened graph plus its @context.
#[derive(Debug, Clone, PartialEq)]
pub struct EntityGraph {
    pub context: Value,
    pub entities: Vec<Entity>,
}

impl EntityGraph {
    pub fn get(&self, id: &str) -> Option<&Entity> {
        self.entities.iter().find(|e| e.id == id)
    }

    /// Canonical JSON-LD text: @context then @graph; within each entity @id
    /// and @type first, remaining terms sorted.
    pub fn to_jsonld(&self) -> String {
        let mut graph = Vec::with_capacity(self.entities.len());
        for entity in &self.entities {
            let mut obj = serde_json::Map::new();
            obj.insert("@id".into(), Value::String(entity.id.clone()));
            let types = if entity.types.len() == 1 {
                Value::String(entity.types[0].clone())
            } else {
                json!(entity.types)
            };
            obj.insert("@type".into(), types);
            for (term, value) in &entity.properties {
                obj.insert(term.clone(), value.clone());
            }
            graph.push(Value::Object(obj));
        }
        let doc = json!({
            "@context": self.context,
            "@graph": graph,
        });
        let mut out = serde_json::to_string_pretty(&doc).expect("graph serializes");
        out.push('\n');
        out
    }
}

/// OBO IRI for a DUO code like `DUO:0000006`.
pub fn duo_iri(code: &str) -> String {
    format!(
        "http://purl.obolibrary.org/obo/{}",
        code.replacen(':', "_", 1)
    )
}

fn slug(text: &str) -> String {
    let mut out = String::new();
    for c in text.chars() {
        if c.is_ascii_alphanumeric() {
            out.push(c.to_ascii_lowercase());
        } else if !out.ends_with('-') && !out.is_empty() {
            out.push('-');
        }
    }
    out.trim_end_matches('-').to_string()
}

fn metric_value_props(entity: &mut Entity, prefix: &str, value: &MetricValue) {
    match value {
        MetricValue::Numeric { amount, unit } => {
            entity.set(&format!("aac:{prefix}Amount"), json!(amount));
            entity.set_str(&format!("aac:{prefix}Unit"), unit);
        }
        MetricValue::Categorical { level } => {
            let name = match level {
                CategoricalLevel::Low => "low",
                CategoricalLevel::Medium => "medium",
                CategoricalLevel::High => "high",
            };
            entity.set_str(&format!("aac:{prefix}Level"), name);
        }
        MetricValue::Binary { value } => {
            entity.set(&format!("aac:{prefix}Flag"), json!(value));
        }
    }
}

/// Build the RO-Crate entity graph for a valid canvas.
///
/// Entity order is fixed: descriptor, root, files, project, persons,
/// plan and steps, activities, datasets, funding, then contextual entities
/// (benefits, risks, milestones, agents, policies, distributions, DUO terms).
pub fn build_entity_graph(canvas: &Canvas) -> EntityGraph {
    let context = json!([
        RO_CRATE_CONTEXT,
        {
            "dcat": "http://www.w3.org/ns/dcat#",
            "prov": "http://www.w3.org/ns/prov#",
            "p-plan": "http://purl.org/net/p-plan#",
            "frapo": "http://purl.org/cerif/frapo/",
            "obo": "http://purl.obolibrary.org/obo/",
            "aac": AAC_NAMESPACE,
        }
    ]);

    let mut head: Vec<Entity> = Vec::new();
    let mut contextual: Vec<Entity> = Vec::new();

    let mut descriptor = Entity::new("ro-crate-metadata.json", &["CreativeWork"]);
    descriptor.set("conformsTo", reference(RO_CRATE_PROFILE));
    descriptor.set("about", reference("./"));
    head.push(descriptor);

    let payload_files = ["ro-crate-metadata.json", "ro-crate-preview.html", "canvas.json", "AGENTS.md"];
    let mut root = Entity::new("./", &["Dataset"]);
    root.set_str("name", &canvas.project.title);
    root.set_str("description", &canvas.project.description);
    if !canvas.canvas_version.is_empty() {
        root.set_str("version", &canvas.canvas_version);
    }
    root.set_list("keywords", &canvas.project.keywords);
    root.set(
        "hasPart",
        ref_list(payload_files.iter().map(|f| f.to_string())),
    );
    root.set("mainEntity", reference("#project"));
    head.push(root);

    for (name, format) in [
        ("ro-crate-preview.html", "text/html"),
        ("canvas.json", "application/json"),
        ("AGENTS.md", "text/markdown"),
    ] {
        let mut file = Entity::new(name, &["File"]);
        file.set_str("encodingFormat", format);
        head.push(file);
    }

    let mut project = Entity::new("#project", &["ResearchProject"]);
    project.set_str("name", &canvas.project.title);
    project.set_str("description", &canvas.project.description);
    if let Some(stage) = canvas.project.stage {
        let name = match stage {
            ProjectStage::Planning => "planning",
            ProjectStage::Prototype => "prototype",
            ProjectStage::Deployment => "deployment",
        };
        project.set_str("aac:stage", name);
    }
    project.set_list("aac:objective", &canvas.project.objectives);
    project.set_opt("aac:domain", &canvas.project.domain);
    project.set_list("keywords", &canvas.project.keywords);
    project.set_opt("aac:leadOrganization", &canvas.project.lead_organization);
    if let Some(vs) = &canvas.project.value_summary {
        project.set_str("aac:headlineValueStatement", &vs.headline_value_statement);
        if let Some(driver) = vs.primary_value_driver {
            project.set_str("aac:primaryValueDriver", driver.as_str());
        }
    }
    if !canvas.persons.is_empty() {
        project.set(
            "member",
            ref_list(canvas.persons.iter().map(|p| format!("#person-{}", p.id))),
        );
    }
    if canvas.project.funding.is_some() {
        project.set("funding", reference("#grant"));
    }
    head.push(project);

    for person in &canvas.persons {
        let mut e = Entity::new(format!("#person-{}", person.id), &["Person"]);
        e.set_str("name", &person.name);
        e.set_opt("affiliation", &person.affiliation);
        if let Some(orcid) = &person.orcid {
            e.set_str("identifier", format!("https://orcid.org/{orcid}"));
        }
        e.set_list("aac:role", &person.roles);
        head.push(e);
    }

    if !canvas.requirements.is_empty() {
        let mut plan = Entity::new("#plan", &["p-plan:Plan"]);
        plan.set_str("name", "Requirements");
        plan.set(
            "p-plan:hasStep",
            ref_list(canvas.requirements.iter().map(|r| format!("#req-{}", r.id))),
        );
        head.push(plan);
    }

    for req in &canvas.requirements {
        let step_id = format!("#req-{}", req.id);
        let mut step = Entity::new(&step_id, &["p-plan:Step"]);
        step.set_str("name", &req.title);
        step.set_str("description", &req.description);
        step.set("p-plan:isStepOfPlan", reference("#plan"));
        if !req.depends_on.is_empty() {
            step.set(
                "p-plan:isPrecededBy",
                ref_list(req.depends_on.iter().map(|d| format!("#req-{d}"))),
            );
        }
        step.set_opt("aac:userStory", &req.user_story);
        if let Some(p) = req.priority {
            let name = match p {
                PriorityLevel::MustHave => "must-have",
                PriorityLevel::ShouldHave => "should-have",
                PriorityLevel::CouldHave => "could-have",
                PriorityLevel::WontHave => "wont-have",
            };
            step.set_str("aac:priority", name);
        }
        if let Some(s) = req.status {
            let name = match s {
                RequirementStatus::Proposed => "proposed",
                RequirementStatus::Accepted => "accepted",
                RequirementStatus::InProgress => "in-progress",
                RequirementStatus::Delivered => "delivered",
                RequirementStatus::Rejected => "rejected",
            };
            step.set_str("aac:status", name);
        }
        step.set_opt("aac:unitOfWork", &req.unit_of_work);
        if let Some(v) = req.monthly_volume {
            step.set("aac:monthlyVolume", json!(v));
        }
        step.set_opt("aac:targetPopulation", &req.target_population);
        if !req.stakeholders.is_empty() {
            step.set(
                "aac:stakeholder",
                ref_list(req.stakeholders.iter().map(|s| format!("#person-{s}"))),
            );
        }
        if !req.benefits.is_empty() {
            step.set(
                "aac:benefitMetric",
                ref_list(
                    (0..req.benefits.len()).map(|j| format!("#req-{}-benefit-{j}", req.id)),
                ),
            );
        }
        if let Some(feas) = &req.feasibility {
            if let Some(trl) = feas.trl {
                step.set("aac:trl", json!(trl));
            }
            if let Some(r) = feas.technical_risk {
                step.set_str("aac:technicalRisk", r.as_str());
            }
            step.set_opt("aac:effortEstimate", &feas.effort_estimate);
            step.set_opt("aac:algorithmSpec", &feas.algorithm_spec);
            step.set_list("aac:tool", &feas.tools);
            if let Some(m) = feas.model_selection {
                let name = match m {
                    ModelSelection::OpenSource => "open-source",
                    ModelSelection::FrontierModel => "frontier-model",
                    ModelSelection::FineTuned => "fine-tuned",
                    ModelSelection::Custom => "custom",
                    ModelSelection::None => "none",
                };
                step.set_str("aac:modelSelection", name);
            }
            step.set_opt("aac:modelCardId", &feas.model_card_id);
            if !feas.architecture.is_none() {
                step.set_str("aac:architecture", feas.architecture.kind_name());
                match &feas.architecture {
                    Architecture::Rag {
                        retrieval_method,
                        embedding_model,
                        chunking_strategy,
                    } => {
                        step.set_opt("aac:retrievalMethod", retrieval_method);
                        step.set_opt("aac:embeddingModel", embedding_model);
                        step.set_opt("aac:chunkingStrategy", chunking_strategy);
                    }
                    Architecture::FineTuning {
                        base_model,
                        approach,
                        dataset,
                    } => {
                        step.set_opt("aac:baseModel", base_model);
                        step.set_opt("aac:approach", approach);
                        step.set_opt("aac:dataset", dataset);
                    }
                    Architecture::Agentic {
                        framework,
                        tools,
                        orchestration,
                    } => {
                        step.set_opt("aac:framework", framework);
                        step.set_list("aac:agentTool", tools);
                        step.set_opt("aac:orchestration", orchestration);
                    }
                    _ => {}
                }
            }
            if !feas.risks.is_empty() {
                step.set(
                    "aac:risk",
                    ref_list((0..feas.risks.len()).map(|j| format!("#req-{}-risk-{j}", req.id))),
                );
            }
            for (j, risk) in feas.risks.iter().enumerate() {
                let mut e = Entity::new(format!("#req-{}-risk-{j}", req.id), &["aac:RiskRecord"]);
                e.set_str("name", &risk.title);
                e.set_opt("description", &risk.description);
                e.set_str("aac:category", risk.category.as_str());
                e.set_str("aac:likelihood", risk.likelihood.as_str());
                e.set_str("aac:impact", risk.impact.as_str());
                e.set_opt("aac:mitigation", &risk.mitigation);
                let status = match risk.status {
                    RiskStatus::Identified => "identified",
                    RiskStatus::Mitigated => "mitigated",
                    RiskStatus::Accepted => "accepted",
                    RiskStatus::Resolved => "resolved",
                };
                e.set_str("aac:status", status);
                contextual.push(e);
            }
        }
        head.push(step);

        for (j, benefit) in req.benefits.iter().enumerate() {
            let mut e = Entity::new(
                format!("#req-{}-benefit-{j}", req.id),
                &["aac:BenefitMetric"],
            );
            e.set_str("name", &benefit.label);
            e.set_str("aac:benefitType", benefit.benefit_type.as_str());
            e.set_str("aac:metricId", &benefit.metric_id);
            if benefit.is_custom {
                e.set("aac:isCustom", json!(true));
            }
            e.set_str("aac:direction", benefit.direction.as_str());
            if benefit.values_are_delta {
                e.set("aac:valuesAreDelta", json!(true));
            }
            if let Some(baseline) = &benefit.baseline {
                metric_value_props(&mut e, "baseline", baseline);
            }
            metric_value_props(&mut e, "expected", &benefit.expected);
            e.set_str("aac:aggregationBasis", benefit.aggregation_basis.as_str());
            if let Some(v) = benefit.oversight_minutes_per_unit {
                e.set("aac:oversightMinutesPerUnit", json!(v));
            }
            if let Some(v) = benefit.oversight_minutes_per_month {
                e.set("aac:oversightMinutesPerMonth", json!(v));
            }
            e.set_str("aac:userConfidence", benefit.user_confidence.as_str());
            e.set_str("aac:developerConfidence", benefit.developer_confidence.as_str());
            e.set_opt("aac:assumptions", &benefit.assumptions);
            contextual.push(e);
        }
    }

    // governance stages as provenance activities
    for (i, stage) in canvas.governance.stages.iter().enumerate() {
        let stage_id = format!("#stage-{i}");
        let mut e = Entity::new(&stage_id, &["prov:Activity"]);
        e.set_str("name", &stage.name);
        e.set_opt("prov:startedAtTime", &stage.start_date);
        e.set_opt("prov:endedAtTime", &stage.end_date);
        let mut agent_refs = Vec::new();
        for agent in &stage.agents {
            match agent.kind {
                AgentKind::Person => agent_refs.push(format!("#person-{}", agent.reference)),
                AgentKind::Organization | AgentKind::Software => {
                    let id = format!(
                        "#agent-{}-{}",
                        agent.kind.as_str(),
                        slug(&agent.reference)
                    );
                    if !contextual.iter().any(|c| c.id == id) {
                        let ty = match agent.kind {
                            AgentKind::Organization => "Organization",
                            _ => "SoftwareApplication",
                        };
                        let mut a = Entity::new(&id, &[ty]);
                        a.set_str("name", &agent.reference);
                        contextual.push(a);
                    }
                    agent_refs.push(id);
                }
            }
        }
        if !agent_refs.is_empty() {
            e.set("prov:wasAssociatedWith", ref_list(agent_refs));
        }
        if !stage.milestones.is_empty() {
            e.set(
                "prov:generated",
                ref_list((0..stage.milestones.len()).map(|j| format!("#milestone-{i}-{j}"))),
            );
        }
        for (j, milestone) in stage.milestones.iter().enumerate() {
            let mut m = Entity::new(format!("#milestone-{i}-{j}"), &["CreativeWork"]);
            m.set_str("name", &milestone.title);
            m.set_list("aac:kpi", &milestone.kpis);
            contextual.push(m);
        }
        let mut standards = Vec::new();
        for (j, std) in stage.compliance_standards.iter().enumerate() {
            match std {
                ComplianceStandard::Plain(name) => standards.push(Value::String(name.clone())),
                ComplianceStandard::Structured { framework, clauses, uri } => {
                    let id = format!("#policy-{i}-{j}");
                    let mut p = Entity::new(&id, &["aac:CompliancePolicy"]);
                    p.set_str("name", framework);
                    p.set_list("aac:clause", clauses);
                    p.set_opt("url", uri);
                    contextual.push(p);
                    standards.push(reference(&id));
                }
            }
        }
        if !standards.is_empty() {
            e.set("aac:complianceStandard", Value::Array(standards));
        }
        e.set_opt("aac:policyCardUri", &stage.policy_card_uri);
        head.push(e);
    }

    for ds in &canvas.data_access.datasets {
        let mut e = Entity::new(format!("#dataset-{}", ds.id), &["dcat:Dataset"]);
        e.set_str("name", &ds.title);
        e.set_str("dcat:accessRights", ds.access_rights.as_str());
        if let Some(contact) = &ds.contact_point {
            if canvas.persons.iter().any(|p| &p.id == contact) {
                e.set("dcat:contactPoint", reference(&format!("#person-{contact}")));
            } else {
                e.set_str("dcat:contactPoint", contact);
            }
        }
        if ds.format.is_some() || ds.license.is_some() {
            let dist_id = format!("#distribution-{}", ds.id);
            e.set("dcat:distribution", reference(&dist_id));
            let mut dist = Entity::new(&dist_id, &["dcat:Distribution"]);
            dist.set_opt("encodingFormat", &ds.format);
            dist.set_opt("license", &ds.license);
            contextual.push(dist);
        }
        e.set_opt("aac:sensitivityLevel", &ds.sensitivity_level);
        if ds.personal_data {
            e.set("aac:personalData", json!(true));
        }
        if !ds.duo_terms.is_empty() {
            e.set(
                "aac:dataUsePermission",
                ref_list(ds.duo_terms.iter().map(|t| duo_iri(t))),
            );
        }
        e.set_opt("identifier", &ds.persistent_id);
        e.set_opt("aac:dataCardId", &ds.data_card_id);
        head.push(e);

        for term in &ds.duo_terms {
            let iri = duo_iri(term);
            if !contextual.iter().any(|c| c.id == iri) {
                let mut t = Entity::new(&iri, &["DefinedTerm"]);
                let label = vocab::vocab_lookup("duo", term)
                    .ok()
                    .flatten()
                    .map(|t| t.label.clone())
                    .unwrap_or_else(|| term.clone());
                t.set_str("name", label);
                t.set_str("termCode", term);
                contextual.push(t);
            }
        }
    }

    if let Some(funding) = &canvas.project.funding {
        let mut grant = Entity::new("#grant", &["frapo:Grant"]);
        grant.set_opt("name", &funding.grant_name);
        grant.set_opt("identifier", &funding.grant_id);
        grant.set("frapo:isAwardedBy", reference("#funder"));
        head.push(grant);
        let mut funder = Entity::new("#funder", &["frapo:FundingAgency"]);
        funder.set_opt("name", &funding.funder_name);
        head.push(funder);
    }

    // outcomes attach to the project entity via contextual entities
    for (i, d) in canvas.outcomes.deliverables.iter().enumerate() {
        let mut e = Entity::new(format!("#deliverable-{i}"), &["CreativeWork"]);
        e.set_str("name", &d.title);
        e.set_opt("aac:deliverableType", &d.deliverable_type);
        e.set_opt("aac:status", &d.status);
        e.set_opt("identifier", &d.persistent_id);
        contextual.push(e);
    }
    for (i, p) in canvas.outcomes.publications.iter().enumerate() {
        let mut e = Entity::new(format!("#publication-{i}"), &["ScholarlyArticle"]);
        e.set_str("name", &p.title);
        e.set_opt("identifier", &p.doi);
        e.set_list("author", &p.authors);
        contextual.push(e);
    }
    for (i, ev) in canvas.outcomes.evaluations.iter().enumerate() {
        let mut e = Entity::new(format!("#evaluation-{i}"), &["aac:Evaluation"]);
        e.set_str("name", &ev.metric);
        e.set_opt("aac:method", &ev.method);
        e.set_opt("aac:findings", &ev.findings);
        if let Some(v) = &ev.value {
            e.set("aac:valueAmount", json!(v.amount));
            e.set_str("aac:valueUnit", &v.unit);
        }
        if let Some(br) = &ev.benefit_ref {
            if let Some((ri, bj)) = canvas
                .requirements
                .iter()
                .find(|r| r.id == br.requirement_id)
                .and_then(|r| {
                    r.benefits
                        .iter()
                        .position(|b| b.metric_id == br.metric_id)
                        .map(|j| (r.id.clone(), j))
                })
            {
                e.set("aac:measures", reference(&format!("#req-{ri}-benefit-{bj}")));
            }
        }
        contextual.push(e);
    }

    let mut entities = head;
    entities.extend(contextual);
    EntityGraph { context, entities }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse_canvas;

    fn fixture() -> Canvas {
        parse_canvas(
            r#"{
              "canvasVersion": "1.0.0",
              "project": {"title":"T","description":"D","stage":"planning",
                "funding": {"grantName":"G","funderName":"F","grantId":"G-1"}},
              "persons": [{"id":"p1","name":"Ada","orcid":"0000-0003-3399-6695","roles":["developer"]}],
              "requirements": [
                {"id":"A","title":"a","description":"a","dependsOn":["B"],"stakeholders":["p1"]},
                {"id":"B","title":"b","description":"b"}],
              "governance": {"stages":[{"name":"pilot","startDate":"2026-01-01","endDate":"2026-06-30",
                "agents":[{"kind":"person","ref":"p1"},{"kind":"software","ref":"ot-mcp"}],
                "milestones":[{"title":"m1","kpis":["k1"]}]}]},
              "dataAccess": {"datasets":[{"id":"d1","title":"DS","format":"json","license":"CC-BY",
                "accessRights":"restricted","duoTerms":["DUO:0000006"]}]}
            }"#,
        )
        .unwrap()
    }

    #[test]
    fn orcid_becomes_identifier_iri() {
        let g = build_entity_graph(&fixture());
        let p = g.get("#person-p1").unwrap();
        assert_eq!(
            p.properties["identifier"],
            serde_json::json!("https://orcid.org/0000-0003-3399-6695")
        );
    }

    #[test]
    fn duo_term_yields_obo_contextual_entity() {
        let g = build_entity_graph(&fixture());
        let e = g.get("http://purl.obolibrary.org/obo/DUO_0000006").unwrap();
        assert_eq!(
            e.properties["name"],
            serde_json::json!("health or medical or biomedical research")
        );
    }

    #[test]
    fn depends_on_maps_to_is_preceded_by() {
        let g = build_entity_graph(&fixture());
        let step = g.get("#req-A").unwrap();
        assert_eq!(
            step.properties["p-plan:isPrecededBy"],
            serde_json::json!([{"@id": "#req-B"}])
        );
        assert!(!g.get("#req-B").unwrap().properties.contains_key("p-plan:isPrecededBy"));
    }

    #[test]
    fn exactly_one_descriptor_and_one_root() {
        let g = build_entity_graph(&fixture());
        assert_eq!(g.entities.iter().filter(|e| e.id == "./").count(), 1);
        assert_eq!(
            g.entities
                .iter()
                .filter(|e| e.id == "ro-crate-metadata.json")
                .count(),
            1
        );
        assert_eq!(g.entities[0].id, "ro-crate-metadata.json");
        assert_eq!(g.entities[1].id, "./");
    }

    #[test]
    fn entity_ids_are_distinct() {
        let g = build_entity_graph(&fixture());
        let mut ids: Vec<&str> = g.entities.iter().map(|e| e.id.as_str()).collect();
        let n = ids.len();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), n);
    }

    #[test]
    fn section_counts_match_entity_counts() {
        let c = fixture();
        let g = build_entity_graph(&c);
        let count = |ty: &str| g.entities.iter().filter(|e| e.types.iter().any(|t| t == ty)).count();
        assert_eq!(count("Person"), c.persons.len());
        assert_eq!(count("p-plan:Step"), c.requirements.len());
        assert_eq!(count("prov:Activity"), c.governance.stages.len());
        assert_eq!(count("dcat:Dataset"), c.data_access.datasets.len());
    }

    #[test]
    fn jsonld_puts_id_and_type_first() {
        let g = build_entity_graph(&fixture());
        let text = g.to_jsonld();
        let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
        let first = &doc["@graph"][0];
        let keys: Vec<&String> = first.as_object().unwrap().keys().collect();
        assert_eq!(keys[0], "@id");
        assert_eq!(keys[1], "@type");
    }
}
