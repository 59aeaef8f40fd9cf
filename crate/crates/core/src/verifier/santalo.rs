//! Santaló-type product check: |K cap T| * |K° cap T| <= |B cap T|^2 with B
//! the Euclidean unit ball, all three volumes Monte Carlo with exact binomial
//! intervals.

use crate::error::{GeomError, Result};
use crate::geometry::body::ConvexBody;
use crate::geometry::ops;
use crate::verifier::report::{
    log_down_slack, log_up_slack, verdict_from_margin, ErrorBudget, InequalityReport,
    ReportedValue, DEFAULT_BUDGET_CAP,
};
use crate::verifier::vbody::{CheckBody, VolumeCfg};
use crate::volume::estimate::VolumeEstimate;
use crate::volume::mc::{bounding_halfwidths, mc_volume_with};

fn intersection_volume(
    a: &ConvexBody<f64>,
    t: &CheckBody,
    t_hw: &[f64],
    cfg: &VolumeCfg,
    seed_offset: u64,
) -> Result<VolumeEstimate> {
    let a_hw = bounding_halfwidths(a)?;
    let hw: Vec<f64> = a_hw
        .iter()
        .zip(t_hw)
        .map(|(x, y)| x.min(*y))
        .collect();
    mc_volume_with(
        &hw,
        cfg.samples,
        cfg.seed.wrapping_add(seed_offset),
        cfg.confidence,
        |x| {
            ops::gauge(a, x).map(|g| g <= 1.0).unwrap_or(false)
                && t.gauge(x).map(|g| g <= 1.0).unwrap_or(false)
        },
    )
}

/// Santaló-type product check. K needs a representation with a computable
/// polar (any plain body); T only needs an exact gauge.
pub fn check_santalo(
    check_id: &str,
    k: &ConvexBody<f64>,
    t: &CheckBody,
    cfg: &VolumeCfg,
) -> Result<InequalityReport> {
    if k.dim() != t.dim() {
        return Err(GeomError::DimensionMismatch {
            expected: k.dim(),
            got: t.dim(),
        });
    }
    let inputs = serde_json::json!({
        "k": k.kind_name(),
        "t": t.kind_name(),
        "samples": cfg.samples,
        "seed": cfg.seed,
        "confidence": cfg.confidence,
    });
    let polar = ops::polar(k)?;
    let ball = ConvexBody::euclidean_ball(k.dim())?;
    let t_hw = t.box_halfwidths()?;
    let kt = intersection_volume(k, t, &t_hw, cfg, 21)?;
    let pt = intersection_volume(&polar, t, &t_hw, cfg, 22)?;
    let bt = intersection_volume(&ball, t, &t_hw, cfg, 23)?;
    // favorable direction: rhs - lhs in log space
    let margin = 2.0 * bt.value.ln() - kt.value.ln() - pt.value.ln();
    let mut budget = ErrorBudget::default();
    budget.push("rhs-ci", 2.0 * log_down_slack(&bt).max(log_up_slack(&bt)));
    budget.push("lhs-kt-ci", log_up_slack(&kt).max(log_down_slack(&kt)));
    budget.push("lhs-polar-ci", log_up_slack(&pt).max(log_down_slack(&pt)));
    let over = 2.0 * log_down_slack(&bt) + log_up_slack(&kt) + log_up_slack(&pt);
    let under = 2.0 * log_up_slack(&bt) + log_down_slack(&kt) + log_down_slack(&pt);
    let budget = budget.with_total(over, under);
    let verdict = verdict_from_margin(margin, &budget, DEFAULT_BUDGET_CAP);
    Ok(InequalityReport {
        check_id: check_id.to_string(),
        kind: "santalo".to_string(),
        verdict,
        lambda: None,
        lhs: Some(ReportedValue {
            value: kt.value * pt.value,
            lower: kt.lower() * pt.lower(),
            upper: kt.upper() * pt.upper(),
        }),
        rhs: Some(ReportedValue {
            value: bt.value * bt.value,
            lower: bt.lower() * bt.lower(),
            upper: bt.upper() * bt.upper(),
        }),
        margin,
        margin_outer: None,
        error_budget: budget,
        notes: vec![format!(
            "|K cap T| = {:.6} +- {:.6}, |K° cap T| = {:.6} +- {:.6}, |B cap T| = {:.6} +- {:.6}",
            kt.value, kt.half_width, pt.value, pt.half_width, bt.value, bt.half_width
        )],
        inputs,
    })
}
