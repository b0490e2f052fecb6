//! The benchmark harness: sweeps synthetic settings, runs each solver over
//! seeded repetitions, and aggregates one CSV row per (setting, solver).
//!
//! Repetitions of one setting share datasets across solvers (rep r of
//! setting s always uses the same derived seed), so solver columns are
//! directly comparable. Repetitions may run in a worker pool; results are
//! collected and folded in repetition order, so the grid bytes do not
//! depend on the worker count.

use crate::binning::{equal_size_binning, SolveOutcome, SplitRule};
use crate::column::SortedColumn;
use crate::dnc::{dnc_solve_with, DncOutcome};
use crate::eps_dp::{solve_eps_biased, EpsDpOptions, DEFAULT_N_CAP};
use crate::error::Result;
use crate::exec::Threading;
use crate::local_search::{ls_solve, LsConfig, WindowMode};
use crate::metrics::{binning_bias, price_of_fairness, BiasMeasure};
use crate::ratio::Epsilon;
use crate::synth::{generate_synthetic, SynthSpec};
use crate::unbiased::solve_unbiased_with;
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolverKind {
    EqualSize,
    Unbiased,
    EpsDp,
    EpsLs,
    EpsDnc,
}

impl SolverKind {
    pub fn name(&self) -> &'static str {
        match self {
            SolverKind::EqualSize => "equal-size",
            SolverKind::Unbiased => "unbiased",
            SolverKind::EpsDp => "eps-dp",
            SolverKind::EpsLs => "eps-ls",
            SolverKind::EpsDnc => "eps-dnc",
        }
    }

    pub fn all() -> [SolverKind; 5] {
        [
            SolverKind::EqualSize,
            SolverKind::Unbiased,
            SolverKind::EpsDp,
            SolverKind::EpsLs,
            SolverKind::EpsDnc,
        ]
    }
}

/// Sweep description. Settings are enumerated in nested order
/// (n, k, eps, mean_gap, ratios, ell), outermost first.
#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub ns: Vec<usize>,
    pub ks: Vec<usize>,
    pub epss: Vec<Epsilon>,
    pub mean_gaps: Vec<f64>,
    /// Each entry: explicit group probabilities, or `None` for equal.
    pub ratio_specs: Vec<Option<Vec<f64>>>,
    pub ells: Vec<usize>,
    pub sigma: f64,
    pub reps: u32,
    pub seed_base: u64,
    pub solvers: Vec<SolverKind>,
    pub split_rule: SplitRule,
    pub window_mode: WindowMode,
    pub timings: bool,
    pub eps_dp_cap: usize,
    pub threading: Threading,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            ns: vec![1000],
            ks: vec![3],
            epss: vec![Epsilon::new(3, 100).expect("valid")],
            mean_gaps: vec![100.0],
            ratio_specs: vec![None],
            ells: vec![2],
            sigma: 300.0,
            reps: 30,
            seed_base: 1,
            solvers: SolverKind::all().to_vec(),
            split_rule: SplitRule::Strict,
            window_mode: WindowMode::Exhaustive,
            timings: true,
            eps_dp_cap: DEFAULT_N_CAP,
            threading: Threading::default(),
        }
    }
}

/// One aggregated grid row; means over bias/PoF/objective cover feasible
/// repetitions only and are absent when none were feasible.
#[derive(Clone, Debug)]
pub struct GridRow {
    pub setting_index: usize,
    pub n: usize,
    pub k: usize,
    pub eps: String,
    pub mean_gap: f64,
    pub ratios: String,
    pub ell: usize,
    pub solver: &'static str,
    pub reps: u32,
    pub feasible_count: u32,
    pub infeasible_ratio: f64,
    pub mean_sort_seconds: f64,
    pub mean_solve_seconds: f64,
    pub mean_bias: Option<f64>,
    pub mean_pof: Option<f64>,
    pub mean_objective: Option<f64>,
}

pub const GRID_CSV_HEADER: &str = "setting_index,n,k,eps,mean_gap,ratios,ell,solver,reps,\
     feasible_count,infeasible_ratio,mean_sort_seconds,mean_solve_seconds,mean_bias,mean_pof,mean_objective";

impl GridRow {
    pub fn to_csv(&self) -> String {
        let opt = |v: &Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.setting_index,
            self.n,
            self.k,
            self.eps,
            self.mean_gap,
            self.ratios,
            self.ell,
            self.solver,
            self.reps,
            self.feasible_count,
            self.infeasible_ratio,
            self.mean_sort_seconds,
            self.mean_solve_seconds,
            opt(&self.mean_bias),
            opt(&self.mean_pof),
            opt(&self.mean_objective),
        )
    }
}

struct RepOutcome {
    sort_seconds: f64,
    // per solver: (feasible, bias, pof, objective, solve_seconds)
    per_solver: Vec<Option<(bool, f64, f64, f64, f64)>>,
}

/// Dataset seed for (setting, rep); solvers share it.
fn rep_seed(seed_base: u64, setting_index: usize, rep: u32) -> u64 {
    seed_base
        .wrapping_add((setting_index as u64).wrapping_mul(1_000_003))
        .wrapping_add((rep as u64).wrapping_mul(7_919))
}

/// Runs the sweep, emitting rows in deterministic order. The callback fires
/// as soon as a row is complete, so partial output survives interruption.
pub fn run_grid(spec: &SweepSpec, mut emit: impl FnMut(&GridRow)) -> Result<()> {
    let mut setting_index = 0usize;
    for &n in &spec.ns {
        for &k in &spec.ks {
            for eps in &spec.epss {
                for &mean_gap in &spec.mean_gaps {
                    for ratios in &spec.ratio_specs {
                        for &ell in &spec.ells {
                            run_setting(
                                spec,
                                setting_index,
                                n,
                                k,
                                *eps,
                                mean_gap,
                                ratios.as_deref(),
                                ell,
                                &mut emit,
                            )?;
                            setting_index += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn run_setting(
    spec: &SweepSpec,
    setting_index: usize,
    n: usize,
    k: usize,
    eps: Epsilon,
    mean_gap: f64,
    ratios: Option<&[f64]>,
    ell: usize,
    emit: &mut impl FnMut(&GridRow),
) -> Result<()> {
    // solvers that cannot run at this setting are skipped up front
    let active: Vec<SolverKind> = spec
        .solvers
        .iter()
        .copied()
        .filter(|s| !(matches!(s, SolverKind::EpsDp) && n > spec.eps_dp_cap))
        .collect();
    let synth = SynthSpec::with_mean_gap(n, ell, mean_gap, spec.sigma, ratios, 0)?;

    let run_rep = |rep: u32| -> Result<RepOutcome> {
        let mut rep_spec = synth.clone();
        rep_spec.seed = rep_seed(spec.seed_base, setting_index, rep);
        let rows = generate_synthetic(&rep_spec)?;
        let t0 = Instant::now();
        let col = SortedColumn::build(&rows)?;
        let sort_seconds = t0.elapsed().as_secs_f64();
        let mut per_solver = Vec::with_capacity(active.len());
        for solver in &active {
            per_solver.push(run_solver(spec, &col, *solver, k, eps)?);
        }
        Ok(RepOutcome {
            sort_seconds,
            per_solver,
        })
    };

    let outcomes: Vec<Result<RepOutcome>> = if spec.threading.is_parallel() {
        #[cfg(feature = "parallel")]
        {
            (0..spec.reps).into_par_iter().map(run_rep).collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            (0..spec.reps).map(run_rep).collect()
        }
    } else {
        (0..spec.reps).map(run_rep).collect()
    };
    let outcomes: Vec<RepOutcome> = outcomes.into_iter().collect::<Result<_>>()?;

    let ratios_label = match ratios {
        None => "equal".to_string(),
        Some(ps) => ps
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(":"),
    };
    for (si, solver) in active.iter().enumerate() {
        let mut feasible = 0u32;
        let mut sum_bias = 0.0;
        let mut sum_pof = 0.0;
        let mut sum_obj = 0.0;
        let mut sum_solve = 0.0;
        let mut sum_sort = 0.0;
        let mut ran = 0u32;
        for rep in &outcomes {
            if let Some((ok, bias, pof, obj, solve_s)) = rep.per_solver[si] {
                ran += 1;
                sum_sort += rep.sort_seconds;
                sum_solve += solve_s;
                if ok {
                    feasible += 1;
                    sum_bias += bias;
                    sum_pof += pof;
                    sum_obj += obj;
                }
            }
        }
        if ran == 0 {
            continue;
        }
        let mean_over = |sum: f64, c: u32| if c > 0 { Some(sum / c as f64) } else { None };
        let row = GridRow {
            setting_index,
            n,
            k,
            eps: format!("{}/{}", eps.num(), eps.den()),
            mean_gap,
            ratios: ratios_label.clone(),
            ell,
            solver: solver.name(),
            reps: ran,
            feasible_count: feasible,
            infeasible_ratio: (ran - feasible) as f64 / ran as f64,
            mean_sort_seconds: if spec.timings { sum_sort / ran as f64 } else { 0.0 },
            mean_solve_seconds: if spec.timings { sum_solve / ran as f64 } else { 0.0 },
            mean_bias: mean_over(sum_bias, feasible),
            mean_pof: mean_over(sum_pof, feasible),
            mean_objective: mean_over(sum_obj, feasible),
        };
        emit(&row);
    }
    Ok(())
}

fn run_solver(
    spec: &SweepSpec,
    col: &SortedColumn,
    solver: SolverKind,
    k: usize,
    eps: Epsilon,
) -> Result<Option<(bool, f64, f64, f64, f64)>> {
    // solver threading stays sequential inside the rep pool
    let t0 = Instant::now();
    let outcome = match solver {
        SolverKind::EqualSize => equal_size_binning(col, k, spec.split_rule)?,
        SolverKind::Unbiased => solve_unbiased_with(col, k, spec.split_rule, Threading::Sequential)?,
        SolverKind::EpsDp => solve_eps_biased(
            col,
            k,
            eps,
            &EpsDpOptions {
                split_rule: spec.split_rule,
                threading: Threading::Sequential,
                measure: BiasMeasure::Subtractive,
                n_cap: spec.eps_dp_cap,
            },
        )?,
        SolverKind::EpsLs => {
            ls_solve(
                col,
                k,
                eps,
                &LsConfig {
                    window_mode: spec.window_mode,
                    split_rule: spec.split_rule,
                    threading: Threading::Sequential,
                    ..LsConfig::default()
                },
            )?
            .outcome
        }
        SolverKind::EpsDnc => {
            match dnc_solve_with(
                col,
                0,
                col.n(),
                k,
                eps,
                spec.split_rule,
                BiasMeasure::Subtractive,
            )? {
                DncOutcome::Feasible(splits) => {
                    let binning =
                        crate::binning::Binning::new(col, splits, spec.split_rule)?;
                    SolveOutcome::Feasible(crate::binning::Solution::new(binning))
                }
                DncOutcome::Infeasible => SolveOutcome::Infeasible,
            }
        }
    };
    let solve_seconds = t0.elapsed().as_secs_f64();
    let row = match outcome {
        SolveOutcome::Feasible(sol) => {
            let bias = binning_bias(col, &sol.binning).max_bias.to_f64();
            let pof = price_of_fairness(&sol.binning).to_f64();
            (true, bias, pof, sol.objective as f64, solve_seconds)
        }
        SolveOutcome::Infeasible => (false, 0.0, 0.0, 0.0, solve_seconds),
    };
    Ok(Some(row))
}
