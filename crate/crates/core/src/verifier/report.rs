//! Inequality check reports: verdicts backed by explicit, per-source error
//! budgets in log-volume space.

use serde::{Deserialize, Serialize};

use crate::volume::estimate::VolumeEstimate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// The inequality holds with margin exceeding the full error budget.
    Holds,
    /// Consistent with the inequality, but the margin is within the budget.
    HoldsWithinCi,
    /// The inequality fails by more than the full error budget.
    Violated,
    /// The computation could not produce a meaningful verdict.
    Inconclusive,
}

/// One named contribution to the error budget (log-space).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct BudgetSource {
    pub name: String,
    pub amount: f64,
}

/// Combined error budget. `total` bounds how far the reported margin can sit
/// from the true margin in either direction; the sources record where the
/// slack comes from (confidence intervals, discretization shrink,
/// symmetry-test tolerance, ...).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Default)]
pub struct ErrorBudget {
    pub total: f64,
    pub sources: Vec<BudgetSource>,
}

impl ErrorBudget {
    pub fn push(&mut self, name: impl Into<String>, amount: f64) {
        if amount != 0.0 {
            self.sources.push(BudgetSource {
                name: name.into(),
                amount,
            });
        }
    }

    /// Budget with total = max(overstatement, understatement) of the margin.
    pub fn with_total(mut self, over: f64, under: f64) -> Self {
        self.total = over.max(under).max(0.0);
        self
    }
}

/// A reported scalar with certified bracket; exact values have
/// lower = value = upper.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ReportedValue {
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
}

impl ReportedValue {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            lower: value,
            upper: value,
        }
    }
}

impl From<&VolumeEstimate> for ReportedValue {
    fn from(e: &VolumeEstimate) -> Self {
        Self {
            value: e.value,
            lower: e.lower(),
            upper: e.upper(),
        }
    }
}

/// Result of one inequality check at one parameter point.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct InequalityReport {
    pub check_id: String,
    /// Check family: log-bm, log-bm-2d, santalo, inclusion, log-concavity,
    /// unconditional.
    pub kind: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<ReportedValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<ReportedValue>,
    /// Log-gap in the favorable direction: positive means the inequality is
    /// satisfied by the central estimates.
    pub margin: f64,
    /// Secondary margin where a check reports two (e.g. outer-body margin
    /// alongside the conservative inner-body margin).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margin_outer: Option<f64>,
    pub error_budget: ErrorBudget,
    pub notes: Vec<String>,
    /// Input echo: body kinds, lambdas, seeds, sample counts.
    pub inputs: serde_json::Value,
}

/// Verdict from a margin and its budget. `cap` bounds how large a budget can
/// be before an indeterminate result is called inconclusive rather than
/// "holds within CI" (log-space; a cap of ln 4 means a factor-4 bracket).
pub fn verdict_from_margin(margin: f64, budget: &ErrorBudget, cap: f64) -> Verdict {
    if !margin.is_finite() || !budget.total.is_finite() {
        return Verdict::Inconclusive;
    }
    // exact equality cases land at margin = +-total up to rounding; a strict
    // comparison there would flap on the last bit
    let tol = 1e-9 * (1.0 + margin.abs());
    if margin > budget.total + tol {
        Verdict::Holds
    } else if margin < -(budget.total + tol) {
        Verdict::Violated
    } else if budget.total <= cap {
        Verdict::HoldsWithinCi
    } else {
        Verdict::Inconclusive
    }
}

pub const DEFAULT_BUDGET_CAP: f64 = 1.4; // ln 4

/// Log of value/lower for a certified bracket (0 for exact values).
pub fn log_down_slack(e: &VolumeEstimate) -> f64 {
    if e.lower() > 0.0 {
        (e.value / e.lower()).ln()
    } else {
        f64::INFINITY
    }
}

/// Log of upper/value for a certified bracket (0 for exact values).
pub fn log_up_slack(e: &VolumeEstimate) -> f64 {
    if e.value > 0.0 {
        (e.upper() / e.value).ln()
    } else {
        f64::INFINITY
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::volume::estimate::VolumeMethod;

    #[test]
    fn verdict_thresholds() {
        let b = ErrorBudget {
            total: 0.1,
            sources: vec![],
        };
        assert_eq!(verdict_from_margin(0.2, &b, 1.0), Verdict::Holds);
        assert_eq!(verdict_from_margin(-0.2, &b, 1.0), Verdict::Violated);
        assert_eq!(verdict_from_margin(0.05, &b, 1.0), Verdict::HoldsWithinCi);
        assert_eq!(verdict_from_margin(-0.05, &b, 1.0), Verdict::HoldsWithinCi);
        let wide = ErrorBudget {
            total: 2.0,
            sources: vec![],
        };
        assert_eq!(verdict_from_margin(0.5, &wide, 1.0), Verdict::Inconclusive);
        assert_eq!(verdict_from_margin(f64::NAN, &b, 1.0), Verdict::Inconclusive);
    }

    #[test]
    fn slacks_vanish_for_exact_estimates() {
        let e = VolumeEstimate::exact(4.0, VolumeMethod::Analytic);
        assert_eq!(log_down_slack(&e), 0.0);
        assert_eq!(log_up_slack(&e), 0.0);
    }

    #[test]
    fn report_serializes_round_trip() {
        let r = InequalityReport {
            check_id: "demo".into(),
            kind: "log-bm".into(),
            verdict: Verdict::Holds,
            lambda: Some(0.5),
            lhs: Some(ReportedValue::exact(2.0)),
            rhs: Some(ReportedValue::exact(1.0)),
            margin: 2.0f64.ln(),
            margin_outer: None,
            error_budget: ErrorBudget::default(),
            notes: vec!["note".into()],
            inputs: serde_json::json!({"seed": 1}),
        };
        let s = serde_json::to_string(&r).unwrap();
        let back: InequalityReport = serde_json::from_str(&s).unwrap();
        assert_eq!(r, back);
        assert!(s.contains("\"verdict\":\"holds\""));
    }
}
