//! Benefit quantification: per-benefit net values with oversight subtraction,
//! volume weighting, and project-level aggregation.
//!
//! Non-time numeric benefits aggregate per (type, unit) without oversight
//! subtraction; oversight minutes only ever reduce time savings. Negative
//! nets are preserved, not clamped. Confidence rolls up as the minimum over
//! all included rows.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::model::*;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Numeric {
    pub amount: f64,
    pub unit: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BenefitComputation {
    pub requirement_id: String,
    pub metric_id: String,
    pub benefit_type: BenefitType,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gross_per_basis: Option<Numeric>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub net_per_basis: Option<Numeric>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monthly_net: Option<Numeric>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub one_off_net: Option<Numeric>,
    pub qualitative: bool,
    pub confidence: ConfidenceLevel,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BenefitSummary {
    pub rows: Vec<BenefitComputation>,
    pub total_net_minutes_per_month: f64,
    pub total_one_off_minutes: f64,
    /// (benefit type, unit) -> monthly total, non-time numeric benefits.
    pub totals_by_type_and_unit: BTreeMap<String, f64>,
    pub qualitative_benefits: Vec<QualitativeBenefit>,
    pub rollup_confidence: ConfidenceLevel,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct QualitativeBenefit {
    pub requirement_id: String,
    pub metric_id: String,
    pub label: String,
}

/// Gross per-basis value, or the qualitative marker.
#[derive(Debug, Clone, PartialEq)]
pub enum GrossSaving {
    Numeric(Numeric),
    Qualitative,
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum BenefitError {
    #[error("requirement {requirement_id:?} benefit {metric_id:?}: absolute-value benefit needs a baseline to compute a gross saving")]
    MissingBaseline {
        requirement_id: String,
        metric_id: String,
    },
}

/// Gross saving per aggregation basis. Delta values pass through; absolute
/// values subtract along the preferred direction. Target/boolean directions
/// and categorical/binary values are qualitative.
pub fn gross_saving(benefit: &BenefitMetric) -> Result<GrossSaving, BenefitError> {
    let (expected, unit) = match &benefit.expected {
        MetricValue::Numeric { amount, unit } => (*amount, unit.clone()),
        _ => return Ok(GrossSaving::Qualitative),
    };
    match benefit.direction {
        BenefitDirection::Target | BenefitDirection::Boolean => return Ok(GrossSaving::Qualitative),
        BenefitDirection::Higher | BenefitDirection::Lower => {}
    }
    if benefit.values_are_delta {
        return Ok(GrossSaving::Numeric(Numeric { amount: expected, unit }));
    }
    let baseline = match &benefit.baseline {
        Some(MetricValue::Numeric { amount, .. }) => *amount,
        _ => {
            return Err(BenefitError::MissingBaseline {
                requirement_id: String::new(),
                metric_id: benefit.metric_id.clone(),
            })
        }
    };
    let amount = match benefit.direction {
        BenefitDirection::Lower => baseline - expected,
        BenefitDirection::Higher => expected - baseline,
        _ => unreachable!(),
    };
    Ok(GrossSaving::Numeric(Numeric { amount, unit }))
}

#[derive(Debug, Clone, PartialEq)]
pub struct NetTimeBenefit {
    pub net_per_basis: f64,
    pub monthly_net: Option<f64>,
    pub one_off_net: Option<f64>,
}

/// Net time benefit in minutes after oversight subtraction.
///
/// Per-unit: net/unit = gross − oversight/unit; monthly = net/unit × volume
/// − oversight/month. Per-month: monthly = gross − oversight/month −
/// oversight/unit × volume. One-off: gross − oversight/unit, volume unused.
pub fn net_time_benefit(benefit: &BenefitMetric, gross: f64, monthly_volume: f64) -> NetTimeBenefit {
    let per_unit = benefit.oversight_minutes_per_unit.unwrap_or(0.0);
    let per_month = benefit.oversight_minutes_per_month.unwrap_or(0.0);
    match benefit.aggregation_basis {
        AggregationBasis::PerUnit => {
            let net = gross - per_unit;
            NetTimeBenefit {
                net_per_basis: net,
                monthly_net: Some(net * monthly_volume - per_month),
                one_off_net: None,
            }
        }
        AggregationBasis::PerMonth => {
            let net = gross - per_month - per_unit * monthly_volume;
            NetTimeBenefit {
                net_per_basis: net,
                monthly_net: Some(net),
                one_off_net: None,
            }
        }
        AggregationBasis::OneOff => {
            let net = gross - per_unit;
            NetTimeBenefit {
                net_per_basis: net,
                monthly_net: None,
                one_off_net: Some(net),
            }
        }
    }
}

fn confidence(benefit: &BenefitMetric) -> ConfidenceLevel {
    benefit.user_confidence.min(benefit.developer_confidence)
}

/// Project-level aggregation over every benefit of every non-rejected
/// requirement. Reduction order is requirement order then benefit order, so
/// floating-point totals are reproducible.
pub fn aggregate_project(canvas: &Canvas) -> Result<BenefitSummary, BenefitError> {
    let mut rows = Vec::new();
    let mut total_monthly = 0.0;
    let mut total_one_off = 0.0;
    let mut by_type_unit: BTreeMap<String, f64> = BTreeMap::new();
    let mut qualitative = Vec::new();
    let mut rollup = ConfidenceLevel::High;

    for req in &canvas.requirements {
        if req.status == Some(RequirementStatus::Rejected) {
            continue;
        }
        let volume = req.monthly_volume.unwrap_or(0.0);
        for benefit in &req.benefits {
            let conf = confidence(benefit);
            rollup = rollup.min(conf);
            let gross = gross_saving(benefit).map_err(|e| match e {
                BenefitError::MissingBaseline { metric_id, .. } => BenefitError::MissingBaseline {
                    requirement_id: req.id.clone(),
                    metric_id,
                },
            })?;
            match gross {
                GrossSaving::Qualitative => {
                    qualitative.push(QualitativeBenefit {
                        requirement_id: req.id.clone(),
                        metric_id: benefit.metric_id.clone(),
                        label: benefit.label.clone(),
                    });
                    rows.push(BenefitComputation {
                        requirement_id: req.id.clone(),
                        metric_id: benefit.metric_id.clone(),
                        benefit_type: benefit.benefit_type,
                        gross_per_basis: None,
                        net_per_basis: None,
                        monthly_net: None,
                        one_off_net: None,
                        qualitative: true,
                        confidence: conf,
                    });
                }
                GrossSaving::Numeric(g) => {
                    let row = if benefit.benefit_type == BenefitType::Time {
                        let net = net_time_benefit(benefit, g.amount, volume);
                        if let Some(m) = net.monthly_net {
                            total_monthly += m;
                        }
                        if let Some(o) = net.one_off_net {
                            total_one_off += o;
                        }
                        BenefitComputation {
                            requirement_id: req.id.clone(),
                            metric_id: benefit.metric_id.clone(),
                            benefit_type: benefit.benefit_type,
                            net_per_basis: Some(Numeric {
                                amount: net.net_per_basis,
                                unit: g.unit.clone(),
                            }),
                            monthly_net: net.monthly_net.map(|amount| Numeric {
                                amount,
                                unit: g.unit.clone(),
                            }),
                            one_off_net: net.one_off_net.map(|amount| Numeric {
                                amount,
                                unit: g.unit.clone(),
                            }),
                            gross_per_basis: Some(g),
                            qualitative: false,
                            confidence: conf,
                        }
                    } else {
                        // no oversight subtraction outside time benefits
                        let (monthly, one_off) = match benefit.aggregation_basis {
                            AggregationBasis::PerUnit => (Some(g.amount * volume), None),
                            AggregationBasis::PerMonth => (Some(g.amount), None),
                            AggregationBasis::OneOff => (None, Some(g.amount)),
                        };
                        if let Some(m) = monthly {
                            *by_type_unit
                                .entry(format!("{}/{}", benefit.benefit_type.as_str(), g.unit))
                                .or_insert(0.0) += m;
                        }
                        BenefitComputation {
                            requirement_id: req.id.clone(),
                            metric_id: benefit.metric_id.clone(),
                            benefit_type: benefit.benefit_type,
                            net_per_basis: Some(g.clone()),
                            monthly_net: monthly.map(|amount| Numeric {
                                amount,
                                unit: g.unit.clone(),
                            }),
                            one_off_net: one_off.map(|amount| Numeric {
                                amount,
                                unit: g.unit.clone(),
                            }),
                            gross_per_basis: Some(g),
                            qualitative: false,
                            confidence: conf,
                        }
                    };
                    rows.push(row);
                }
            }
        }
    }

    Ok(BenefitSummary {
        rows,
        total_net_minutes_per_month: total_monthly,
        total_one_off_minutes: total_one_off,
        totals_by_type_and_unit: by_type_unit,
        qualitative_benefits: qualitative,
        rollup_confidence: rollup,
    })
}

impl BenefitSummary {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("summary serializes");
        s.push('\n');
        s
    }

    /// Aligned text table for the CLI.
    pub fn to_table(&self) -> String {
        let mut lines: Vec<[String; 5]> = vec![[
            "requirement".into(),
            "metric".into(),
            "type".into(),
            "monthly net".into(),
            "one-off net".into(),
        ]];
        for row in &self.rows {
            let fmt = |n: &Option<Numeric>| match n {
                Some(n) => format!("{} {}", n.amount, n.unit),
                None if row.qualitative => "qualitative".to_string(),
                None => "-".to_string(),
            };
            lines.push([
                row.requirement_id.clone(),
                row.metric_id.clone(),
                row.benefit_type.as_str().to_string(),
                fmt(&row.monthly_net),
                fmt(&row.one_off_net),
            ]);
        }
        let mut widths = [0usize; 5];
        for line in &lines {
            for (w, cell) in widths.iter_mut().zip(line) {
                *w = (*w).max(cell.len());
            }
        }
        let mut out = String::new();
        for line in &lines {
            let rendered: Vec<String> = line
                .iter()
                .zip(widths)
                .map(|(cell, w)| format!("{cell:w$}"))
                .collect();
            out.push_str(rendered.join("  ").trim_end());
            out.push('\n');
        }
        out.push_str(&format!(
            "\ntotal net minutes/month: {}\ntotal one-off minutes: {}\nrollup confidence: {}\n",
            self.total_net_minutes_per_month,
            self.total_one_off_minutes,
            self.rollup_confidence.as_str()
        ));
        for (key, total) in &self.totals_by_type_and_unit {
            out.push_str(&format!("monthly {key}: {total}\n"));
        }
        out
    }
}
