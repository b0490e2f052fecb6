//! Binning reports: everything a run produced, serializable as JSON
//! (schema `fairbin/1`) or a flat CSV row. Field order is fixed by the
//! struct layout, and exact rationals carry their decimal rendering next
//! to num/den.

use crate::binning::{Binning, SolveOutcome};
use crate::column::SortedColumn;
use crate::metrics::{binning_bias_with, price_of_fairness, BiasMeasure};
use crate::ratio::{Epsilon, Ratio};
use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "fairbin/1";

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq)]
pub struct RatioField {
    pub num: u64,
    pub den: u64,
    pub decimal: f64,
}

impl From<Ratio> for RatioField {
    fn from(r: Ratio) -> RatioField {
        RatioField {
            num: r.num(),
            den: r.den(),
            decimal: r.to_f64(),
        }
    }
}

impl RatioField {
    pub fn as_ratio(&self) -> Ratio {
        Ratio::new(self.num, self.den)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportParams {
    pub n: usize,
    pub ell: usize,
    pub k: usize,
    /// `"NUM/DEN"`, absent for solvers that take no threshold.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub eps: Option<String>,
    pub strict_splits: bool,
    pub source: String,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq)]
pub struct BiasArgmax {
    pub bucket: usize,
    pub group: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BinningReport {
    pub schema: String,
    pub solver: String,
    pub params: ReportParams,
    pub feasible: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub splits: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub boundary_values: Option<Vec<f64>>,
    /// False when an index-mode boundary falls inside a run of equal values.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub boundaries_separating: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bucket_sizes: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub group_counts: Option<Vec<Vec<u64>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub objective: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bias: Option<RatioField>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bias_argmax: Option<BiasArgmax>,
    /// The division-based bias variant, reported alongside the default.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bias_div: Option<RatioField>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pof: Option<RatioField>,
    pub budget_exhausted: bool,
    pub sort_seconds: f64,
    pub solve_seconds: f64,
}

/// Assembles a report; with `timings == false` the clock fields are zeroed
/// so identical runs serialize byte-identically.
#[allow(clippy::too_many_arguments)]
pub fn build_report(
    col: &SortedColumn,
    solver: &str,
    params: ReportParams,
    outcome: &SolveOutcome,
    budget_exhausted: bool,
    sort_seconds: f64,
    solve_seconds: f64,
    timings: bool,
) -> BinningReport {
    let (sort_seconds, solve_seconds) = if timings {
        (sort_seconds, solve_seconds)
    } else {
        (0.0, 0.0)
    };
    let mut report = BinningReport {
        schema: SCHEMA.to_string(),
        solver: solver.to_string(),
        params,
        feasible: false,
        splits: None,
        boundary_values: None,
        boundaries_separating: None,
        bucket_sizes: None,
        group_counts: None,
        objective: None,
        bias: None,
        bias_argmax: None,
        bias_div: None,
        pof: None,
        budget_exhausted,
        sort_seconds,
        solve_seconds,
    };
    if let SolveOutcome::Feasible(sol) = outcome {
        let b: &Binning = &sol.binning;
        let bias = binning_bias_with(col, b, BiasMeasure::Subtractive);
        let bias_div = binning_bias_with(col, b, BiasMeasure::Divisive);
        report.feasible = true;
        report.splits = Some(b.splits().to_vec());
        report.boundary_values = Some(b.boundary_values().to_vec());
        report.boundaries_separating = Some(b.separating(col));
        report.bucket_sizes = Some(b.bucket_sizes());
        report.group_counts = Some(b.group_counts(col));
        report.objective = Some(sol.objective as u64);
        report.bias = Some(bias.max_bias.into());
        report.bias_argmax = Some(BiasArgmax {
            bucket: bias.argmax.0,
            group: bias.argmax.1,
        });
        report.bias_div = Some(bias_div.max_bias.into());
        report.pof = Some(price_of_fairness(b).into());
    }
    report
}

impl BinningReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<BinningReport, serde_json::Error> {
        serde_json::from_str(s)
    }

    /// One header line plus one data line; list cells are
    /// semicolon-joined, and cells containing commas or quotes are quoted.
    pub fn to_csv(&self) -> String {
        fn escape(s: &str) -> String {
            if s.contains([',', '"', '\n']) {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.to_string()
            }
        }
        let join_usize = |v: &Option<Vec<usize>>| {
            v.as_ref()
                .map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";"))
                .unwrap_or_default()
        };
        let ratio_cell = |r: &Option<RatioField>| {
            r.as_ref()
                .map(|r| format!("{}/{}", r.num, r.den))
                .unwrap_or_default()
        };
        let header = "schema,solver,n,ell,k,eps,strict_splits,source,feasible,splits,\
                      boundary_values,bucket_sizes,objective,bias,bias_div,pof,\
                      budget_exhausted,sort_seconds,solve_seconds";
        let values = self
            .boundary_values
            .as_ref()
            .map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";"))
            .unwrap_or_default();
        let row = format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.schema,
            escape(&self.solver),
            self.params.n,
            self.params.ell,
            self.params.k,
            self.params.eps.clone().unwrap_or_default(),
            self.params.strict_splits,
            escape(&self.params.source),
            self.feasible,
            join_usize(&self.splits),
            values,
            join_usize(&self.bucket_sizes),
            self.objective.map(|o| o.to_string()).unwrap_or_default(),
            ratio_cell(&self.bias),
            ratio_cell(&self.bias_div),
            ratio_cell(&self.pof),
            self.budget_exhausted,
            self.sort_seconds,
            self.solve_seconds,
        );
        format!("{header}\n{row}\n")
    }
}

/// Epsilon rendered for report params.
pub fn eps_param(eps: Epsilon) -> String {
    format!("{}/{}", eps.num(), eps.den())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binning::SplitRule;
    use crate::column::testutil::toy_column;
    use crate::unbiased::solve_unbiased;

    fn toy_params(k: usize) -> ReportParams {
        ReportParams {
            n: 16,
            ell: 2,
            k,
            eps: None,
            strict_splits: true,
            source: "test".into(),
        }
    }

    #[test]
    fn toy_unbiased_report() {
        let col = toy_column();
        let out = solve_unbiased(&col, 3, SplitRule::Strict).unwrap();
        let report = build_report(&col, "unbiased", toy_params(3), &out, false, 0.0, 0.0, false);
        assert!(report.feasible);
        assert_eq!(report.splits.as_deref(), Some(&[6, 12][..]));
        assert_eq!(report.objective, Some(2));
        let bias = report.bias.unwrap();
        assert_eq!((bias.num, bias.den), (0, 1));
        let pof = report.pof.unwrap();
        assert_eq!((pof.num, pof.den), (1, 6));
        assert_eq!(report.boundary_values.as_deref(), Some(&[6.0, 12.0][..]));
    }

    #[test]
    fn infeasible_report_is_minimal() {
        let col = toy_column();
        let out = solve_unbiased(&col, 6, SplitRule::Strict).unwrap();
        let report = build_report(&col, "unbiased", toy_params(6), &out, false, 0.0, 0.0, false);
        assert!(!report.feasible);
        let json = report.to_json();
        assert!(json.contains("\"feasible\": false"));
        assert!(!json.contains("\"splits\""));
        let parsed = BinningReport::from_json(&json).unwrap();
        assert!(!parsed.feasible);
        assert_eq!(parsed.solver, "unbiased");
    }

    #[test]
    fn json_round_trip_preserves_metrics() {
        let col = toy_column();
        let out = solve_unbiased(&col, 3, SplitRule::Strict).unwrap();
        let report = build_report(&col, "unbiased", toy_params(3), &out, false, 0.5, 0.25, true);
        let parsed = BinningReport::from_json(&report.to_json()).unwrap();
        assert_eq!(parsed.splits, report.splits);
        assert_eq!(parsed.pof, report.pof);
        assert_eq!(parsed.solve_seconds, 0.25);
    }

    #[test]
    fn csv_has_matching_header_and_row_arity() {
        let col = toy_column();
        let out = solve_unbiased(&col, 3, SplitRule::Strict).unwrap();
        let report = build_report(&col, "unbiased", toy_params(3), &out, false, 0.0, 0.0, false);
        let csv = report.to_csv();
        let mut lines = csv.lines();
        let header = lines.next().unwrap().split(',').count();
        let row = lines.next().unwrap().split(',').count();
        assert_eq!(header, row);
    }
}
