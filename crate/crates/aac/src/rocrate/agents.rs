//! AGENTS.md generation: the design contract as instructions for coding
//! copilots and development agents. Output is deterministic.

use std::fmt::Write;

use crate::model::*;

pub fn render_agents_md(canvas: &Canvas) -> String {
    let mut md = String::new();
    let _ = writeln!(md, "# AGENTS.md — {}", canvas.project.title);
    md.push('\n');

    md.push_str("## Project summary\n\n");
    let _ = writeln!(md, "{}", canvas.project.description);
    if let Some(stage) = canvas.project.stage {
        let name = match stage {
            ProjectStage::Planning => "planning",
            ProjectStage::Prototype => "prototype",
            ProjectStage::Deployment => "deployment",
        };
        let _ = writeln!(md, "\nDevelopment stage: {name}.");
    }
    if let Some(vs) = &canvas.project.value_summary {
        if !vs.headline_value_statement.is_empty() {
            let _ = writeln!(md, "\nHeadline value: {}", vs.headline_value_statement);
        }
    }

    if !canvas.project.objectives.is_empty() {
        md.push_str("\n## Objectives\n\n");
        for o in &canvas.project.objectives {
            let _ = writeln!(md, "- {o}");
        }
    }

    // requirements grouped by priority, must-have first
    let priorities = [
        (Some(PriorityLevel::MustHave), "must-have"),
        (Some(PriorityLevel::ShouldHave), "should-have"),
        (Some(PriorityLevel::CouldHave), "could-have"),
        (Some(PriorityLevel::WontHave), "wont-have"),
        (None, "unprioritized"),
    ];
    for (priority, label) in priorities {
        let group: Vec<&Requirement> = canvas
            .requirements
            .iter()
            .filter(|r| r.priority == priority)
            .collect();
        if group.is_empty() {
            continue;
        }
        let _ = writeln!(md, "\n## Requirements ({label})");
        for req in group {
            let _ = writeln!(md, "\n### {} — {}", req.id, req.title);
            md.push('\n');
            if let Some(story) = &req.user_story {
                let _ = writeln!(md, "{story}");
            } else {
                let _ = writeln!(md, "{}", req.description);
            }
            if let Some(unit) = &req.unit_of_work {
                let volume = req
                    .monthly_volume
                    .map(|v| format!(" at {v} units/month"))
                    .unwrap_or_default();
                let _ = writeln!(md, "\nUnit of work: {unit}{volume}.");
            }
            for b in &req.benefits {
                let target = match &b.expected {
                    MetricValue::Numeric { amount, unit } => format!("{amount} {unit}"),
                    MetricValue::Categorical { level } => format!("{level:?}").to_lowercase(),
                    MetricValue::Binary { value } => value.to_string(),
                };
                let _ = writeln!(
                    md,
                    "- Benefit target [{}] {}: {} ({} preferred, basis {})",
                    b.benefit_type.as_str(),
                    b.label,
                    target,
                    b.direction.as_str(),
                    b.aggregation_basis.as_str(),
                );
            }
        }
    }

    md.push_str("\n## Feasibility constraints\n\n");
    let mut wrote_constraint = false;
    if let Some(trl) = canvas.feasibility_defaults.trl {
        let _ = writeln!(md, "- Project default technology readiness level: {trl}.");
        wrote_constraint = true;
    }
    if let Some(risk) = canvas.feasibility_defaults.overall_technical_risk {
        let _ = writeln!(md, "- Overall technical risk: {}.", risk.as_str());
        wrote_constraint = true;
    }
    for req in &canvas.requirements {
        if let Some(feas) = &req.feasibility {
            let mut parts = Vec::new();
            if let Some(trl) = feas.trl {
                parts.push(format!("TRL {trl}"));
            }
            if let Some(m) = feas.model_selection {
                parts.push(format!("model selection {m:?}").to_lowercase().replace('_', "-"));
            }
            if !feas.architecture.is_none() {
                parts.push(format!("architecture {}", feas.architecture.kind_name()));
            }
            if !parts.is_empty() {
                let _ = writeln!(md, "- {}: {}.", req.id, parts.join(", "));
                wrote_constraint = true;
            }
        }
    }
    if !wrote_constraint {
        md.push_str("- No feasibility constraints recorded.\n");
    }

    md.push_str("\n## Governance and compliance\n\n");
    if canvas.governance.stages.is_empty() {
        md.push_str("- No governance stages recorded.\n");
    } else {
        for stage in &canvas.governance.stages {
            let _ = writeln!(md, "- Stage gate: {}.", stage.name);
            for std in &stage.compliance_standards {
                match std {
                    ComplianceStandard::Plain(name) => {
                        let _ = writeln!(md, "  - Comply with {name}.");
                    }
                    ComplianceStandard::Structured { framework, clauses, .. } => {
                        if clauses.is_empty() {
                            let _ = writeln!(md, "  - Comply with {framework}.");
                        } else {
                            let _ = writeln!(
                                md,
                                "  - Comply with {framework}, clauses {}.",
                                clauses.join(", ")
                            );
                        }
                    }
                }
            }
        }
    }

    md.push_str("\n## Data-handling rules\n\n");
    if canvas.data_access.datasets.is_empty() {
        md.push_str("- No datasets recorded.\n");
    } else {
        for ds in &canvas.data_access.datasets {
            match ds.access_rights {
                AccessRights::HighlyRestricted => {
                    let _ = writeln!(
                        md,
                        "- Never transmit or process dataset `{}` ({}) via external services without explicit authorisation.",
                        ds.id, ds.title
                    );
                }
                AccessRights::Confidential => {
                    let _ = writeln!(
                        md,
                        "- Dataset `{}` ({}) is confidential; escalate before any external transmission.",
                        ds.id, ds.title
                    );
                }
                AccessRights::Restricted => {
                    let _ = writeln!(
                        md,
                        "- Dataset `{}` ({}) is restricted; observe its access conditions.",
                        ds.id, ds.title
                    );
                }
                AccessRights::Open => {
                    let _ = writeln!(md, "- Dataset `{}` ({}) is open.", ds.id, ds.title);
                }
            }
            if ds.personal_data {
                let _ = writeln!(
                    md,
                    "  - Contains personal data; apply data-protection rules."
                );
            }
            for term in &ds.duo_terms {
                let label = crate::vocab::vocab_lookup("duo", term)
                    .ok()
                    .flatten()
                    .map(|t| t.label.clone())
                    .unwrap_or_default();
                let _ = writeln!(md, "  - Use restriction {term}: {label}.");
            }
        }
    }

    md
}
