//! Group-parity-aware equal-frequency binning.
//!
//! Discretizes a numeric attribute into k buckets while keeping every
//! bucket's demographic group ratios equal to the dataset's (group
//! parity), or within an exact rational threshold of it, deviating as
//! little as possible from equal-size binning. Ships four solvers:
//!
//! - [`unbiased::solve_unbiased`] — exact parity via boundary candidates
//!   and a width-range DP;
//! - [`eps_dp::solve_eps_biased`] — exact thresholded binning, quadratic in
//!   n (capped; see [`eps_dp::DEFAULT_N_CAP`]);
//! - [`dnc::dnc_solve`] — near-linear divide-and-conquer feasibility
//!   search, sound for infeasibility claims;
//! - [`local_search::ls_solve`] — the scalable solver: D&C seed plus a
//!   pruned window search around the equal-size boundaries.
//!
//! Brute-force reference solvers live in [`oracle`]; [`metrics`] computes
//! bias and price-of-fairness as exact rationals; [`synth`], [`csv_io`],
//! [`report`], and [`grid`] cover data in/out and the benchmark harness.
//!
//! Built with the default `parallel` feature, the local search, the
//! quadratic DP, and the bench harness fan out over rayon; disabling the
//! feature (or passing [`exec::Threading::Sequential`]) runs identical
//! sequential code paths with byte-identical results.

pub mod binning;
pub mod candidates;
pub mod column;
pub mod csv_io;
pub mod dnc;
pub mod dp;
pub mod eps_dp;
pub mod error;
pub mod exec;
pub mod grid;
pub mod local_search;
pub mod metrics;
pub mod oracle;
pub mod ratio;
pub mod report;
pub mod synth;
pub mod unbiased;

pub use binning::{equal_size_binning, Binning, Solution, SolveOutcome, SplitRule};
pub use candidates::{boundary_candidates, CandidateSet};
pub use column::{GroupId, SortedColumn, MAX_GROUPS};
pub use dnc::{dnc_solve, DncOutcome};
pub use eps_dp::{is_bucket_eps_biased, solve_eps_biased, EpsDpOptions};
pub use error::{Error, Result};
pub use exec::Threading;
pub use local_search::{ls_solve, LsConfig, LsResult, WindowMode};
pub use metrics::{binning_bias, bucket_bias, bucket_bias_div, price_of_fairness, BiasMeasure};
pub use oracle::{brute_force_eps_biased, brute_force_unbiased};
pub use ratio::{Epsilon, Ratio};
pub use report::{build_report, BinningReport};
pub use synth::{generate_synthetic, GroupParams, SynthSpec};
pub use unbiased::solve_unbiased;
