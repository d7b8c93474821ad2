//! Self-contained HTML preview: no scripts, no external fetches.

use std::fmt::Write;

use crate::benefits::BenefitSummary;
use crate::model::*;
use crate::rocrate::graph::EntityGraph;

fn esc(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Render the crate preview. Sections mirror the six canvas dimensions plus
/// a benefit summary table; every graph entity id appears as an anchor in
/// the entity index.
pub fn render_preview(canvas: &Canvas, graph: &EntityGraph, summary: &BenefitSummary) -> String {
    let mut h = String::new();
    h.push_str("<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n");
    let _ = writeln!(h, "<title>{}</title>", esc(&canvas.project.title));
    h.push_str(
        "<style>body{font-family:sans-serif;max-width:60em;margin:2em auto;padding:0 1em}\
         table{border-collapse:collapse}td,th{border:1px solid #999;padding:0.3em 0.6em}\
         h2{border-bottom:1px solid #ccc}</style>\n</head>\n<body>\n",
    );
    let _ = writeln!(h, "<h1>{}</h1>", esc(&canvas.project.title));
    if !canvas.canvas_version.is_empty() {
        let _ = writeln!(h, "<p>Canvas version {}</p>", esc(&canvas.canvas_version));
    }

    h.push_str("<h2>Project</h2>\n");
    let _ = writeln!(h, "<p>{}</p>", esc(&canvas.project.description));
    if let Some(stage) = canvas.project.stage {
        let name = match stage {
            ProjectStage::Planning => "planning",
            ProjectStage::Prototype => "prototype",
            ProjectStage::Deployment => "deployment",
        };
        let _ = writeln!(h, "<p>Stage: {name}</p>");
    }
    if !canvas.project.objectives.is_empty() {
        h.push_str("<ul>\n");
        for o in &canvas.project.objectives {
            let _ = writeln!(h, "<li>{}</li>", esc(o));
        }
        h.push_str("</ul>\n");
    }

    h.push_str("<h2>User expectations</h2>\n");
    if canvas.requirements.is_empty() {
        h.push_str("<p>No requirements recorded.</p>\n");
    } else {
        for req in &canvas.requirements {
            let _ = writeln!(h, "<h3>{} — {}</h3>", esc(&req.id), esc(&req.title));
            let _ = writeln!(h, "<p>{}</p>", esc(&req.description));
            if let Some(story) = &req.user_story {
                let _ = writeln!(h, "<p><em>{}</em></p>", esc(story));
            }
        }
        h.push_str("<h3>Benefit summary</h3>\n<table>\n<tr><th>Requirement</th><th>Metric</th><th>Type</th><th>Monthly net</th><th>One-off net</th></tr>\n");
        for row in &summary.rows {
            let cell = |n: &Option<crate::benefits::Numeric>| match n {
                Some(n) => esc(&format!("{} {}", n.amount, n.unit)),
                None if row.qualitative => "qualitative".to_string(),
                None => "-".to_string(),
            };
            let _ = writeln!(
                h,
                "<tr><td>{}</td><td>{}</td><td>{}</td><td>{}</td><td>{}</td></tr>",
                esc(&row.requirement_id),
                esc(&row.metric_id),
                row.benefit_type.as_str(),
                cell(&row.monthly_net),
                cell(&row.one_off_net),
            );
        }
        h.push_str("</table>\n");
        let _ = writeln!(
            h,
            "<p>Total net minutes per month: {}</p>",
            summary.total_net_minutes_per_month
        );
    }

    h.push_str("<h2>Developer feasibility</h2>\n");
    let mut wrote_feasibility = false;
    if let Some(trl) = canvas.feasibility_defaults.trl {
        let _ = writeln!(h, "<p>Default TRL: {trl}</p>");
        wrote_feasibility = true;
    }
    for req in &canvas.requirements {
        if let Some(feas) = &req.feasibility {
            let _ = writeln!(
                h,
                "<p>{}: architecture {}, {} risk(s)</p>",
                esc(&req.id),
                feas.architecture.kind_name(),
                feas.risks.len()
            );
            wrote_feasibility = true;
        }
    }
    if !wrote_feasibility {
        h.push_str("<p>No feasibility assessment recorded.</p>\n");
    }

    h.push_str("<h2>Governance</h2>\n");
    if canvas.governance.stages.is_empty() {
        h.push_str("<p>No governance stages recorded.</p>\n");
    } else {
        h.push_str("<ul>\n");
        for stage in &canvas.governance.stages {
            let dates = match (&stage.start_date, &stage.end_date) {
                (Some(s), Some(e)) => format!(" ({} to {})", esc(s), esc(e)),
                (Some(s), None) => format!(" (from {})", esc(s)),
                (None, Some(e)) => format!(" (until {})", esc(e)),
                (None, None) => String::new(),
            };
            let _ = writeln!(h, "<li>{}{}</li>", esc(&stage.name), dates);
        }
        h.push_str("</ul>\n");
    }

    h.push_str("<h2>Data access</h2>\n");
    if canvas.data_access.datasets.is_empty() {
        h.push_str("<p>No datasets recorded.</p>\n");
    } else {
        h.push_str("<ul>\n");
        for ds in &canvas.data_access.datasets {
            let _ = writeln!(
                h,
                "<li>{} — {} ({})</li>",
                esc(&ds.id),
                esc(&ds.title),
                ds.access_rights.as_str()
            );
        }
        h.push_str("</ul>\n");
    }

    h.push_str("<h2>Outcomes</h2>\n");
    if canvas.outcomes.is_empty() {
        h.push_str("<p>No outcomes recorded.</p>\n");
    } else {
        h.push_str("<ul>\n");
        for d in &canvas.outcomes.deliverables {
            let _ = writeln!(h, "<li>Deliverable: {}</li>", esc(&d.title));
        }
        for p in &canvas.outcomes.publications {
            let _ = writeln!(h, "<li>Publication: {}</li>", esc(&p.title));
        }
        for e in &canvas.outcomes.evaluations {
            let _ = writeln!(h, "<li>Evaluation: {}</li>", esc(&e.metric));
        }
        h.push_str("</ul>\n");
    }

    h.push_str("<h2>Entity index</h2>\n<ul>\n");
    for entity in &graph.entities {
        let _ = writeln!(
            h,
            "<li id=\"{}\"><code>{}</code></li>",
            esc(&entity.id),
            esc(&entity.id)
        );
    }
    h.push_str("</ul>\n</body>\n</html>\n");
    h
}
