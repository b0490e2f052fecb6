use crate::args::{BinArgs, Format, Mode, WindowModeArg};
use crate::ExitStatus;
use anyhow::{anyhow, bail, Context, Result};
use fairbin_core::binning::{equal_size_binning, Binning, Solution, SolveOutcome, SplitRule};
use fairbin_core::column::SortedColumn;
use fairbin_core::csv_io::read_csv;
use fairbin_core::dnc::{dnc_solve, DncOutcome};
use fairbin_core::eps_dp::{solve_eps_biased, EpsDpOptions};
use fairbin_core::local_search::{ls_solve, LsConfig, WindowMode};
use fairbin_core::ratio::Epsilon;
use fairbin_core::report::{build_report, eps_param, BinningReport, ReportParams};
use fairbin_core::synth::{generate_synthetic, GroupParams, SynthSpec};
use std::io::Write;
use std::time::Instant;

pub fn run(args: &BinArgs) -> Result<ExitStatus> {
    let rule = if args.strict_splits {
        SplitRule::Strict
    } else {
        SplitRule::Index
    };
    let eps = match &args.eps {
        Some(s) => Some(s.parse::<Epsilon>()?),
        None => None,
    };
    if args.mode.needs_eps() && eps.is_none() {
        bail!("--eps NUM/DEN is required for mode {}", args.mode.name());
    }

    let (rows, source) = load_rows(args)?;
    let t0 = Instant::now();
    let col = SortedColumn::build(&rows)?;
    let sort_seconds = t0.elapsed().as_secs_f64();

    let window_mode = match args.ls_window {
        WindowModeArg::Paper => WindowMode::Paper,
        WindowModeArg::Exhaustive => WindowMode::Exhaustive,
    };
    let mut budget_exhausted = false;
    let t0 = Instant::now();
    let outcome = match args.mode {
        Mode::Unbiased => fairbin_core::unbiased::solve_unbiased(&col, args.k, rule)?,
        Mode::EqualSize => equal_size_binning(&col, args.k, rule)?,
        Mode::EpsDp => solve_eps_biased(
            &col,
            args.k,
            eps.unwrap(),
            &EpsDpOptions {
                split_rule: rule,
                ..EpsDpOptions::default()
            },
        )?,
        Mode::EpsLs => {
            let res = ls_solve(
                &col,
                args.k,
                eps.unwrap(),
                &LsConfig {
                    window_mode,
                    split_rule: rule,
                    max_combinations: args.ls_budget,
                    ..LsConfig::default()
                },
            )?;
            budget_exhausted = res.budget_exhausted;
            res.outcome
        }
        Mode::EpsDnc => match dnc_solve(&col, 0, col.n(), args.k, eps.unwrap(), rule)? {
            DncOutcome::Feasible(splits) => {
                SolveOutcome::Feasible(Solution::new(Binning::new(&col, splits, rule)?))
            }
            DncOutcome::Infeasible => SolveOutcome::Infeasible,
        },
    };
    let solve_seconds = t0.elapsed().as_secs_f64();

    let params = ReportParams {
        n: col.n(),
        ell: col.ell(),
        k: args.k,
        eps: eps.map(eps_param),
        strict_splits: args.strict_splits,
        source,
    };
    let report = build_report(
        &col,
        args.mode.name(),
        params,
        &outcome,
        budget_exhausted,
        sort_seconds,
        solve_seconds,
        !args.no_timings,
    );
    write_report(args, &report)?;
    Ok(if report.feasible {
        ExitStatus::Feasible
    } else {
        ExitStatus::Infeasible
    })
}

fn load_rows(args: &BinArgs) -> Result<(Vec<(f64, u8)>, String)> {
    match (&args.input, &args.synth) {
        (Some(path), None) => {
            let value_col = args
                .value_col
                .as_deref()
                .ok_or_else(|| anyhow!("--value-col is required with a CSV input"))?;
            let group_col = args
                .group_col
                .as_deref()
                .ok_or_else(|| anyhow!("--group-col is required with a CSV input"))?;
            let parsed = read_csv(path, value_col, group_col)
                .with_context(|| format!("reading {}", path.display()))?;
            Ok((parsed.rows, format!("csv:{}", path.display())))
        }
        (None, Some(spec_str)) => {
            let spec = parse_synth_spec(spec_str)?;
            let rows = generate_synthetic(&spec)?;
            Ok((rows, format!("synth:{}", spec_str.trim())))
        }
        (None, None) => bail!("either an input CSV or --synth is required"),
        (Some(_), Some(_)) => unreachable!("clap forbids input together with --synth"),
    }
}

/// "defaults" or comma-separated n=, ell=, gap=, sigma=, ratios=, seed=.
pub fn parse_synth_spec(s: &str) -> Result<SynthSpec> {
    let s = s.trim();
    if s == "defaults" {
        return Ok(SynthSpec::defaults(0));
    }
    let (mut n, mut ell, mut gap, mut sigma, mut seed) = (1000usize, 2usize, 100.0f64, 300.0f64, 0u64);
    let mut ratios: Option<Vec<f64>> = None;
    for part in s.split(',') {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| anyhow!("bad synth field `{part}`, expected key=value"))?;
        let value = value.trim();
        match key.trim() {
            "n" => n = value.parse()?,
            "ell" => ell = value.parse()?,
            "gap" => gap = value.parse()?,
            "sigma" => sigma = value.parse()?,
            "seed" => seed = value.parse()?,
            "ratios" => {
                ratios = if value == "equal" {
                    None
                } else {
                    Some(
                        value
                            .split(':')
                            .map(|p| p.parse::<f64>())
                            .collect::<std::result::Result<Vec<_>, _>>()?,
                    )
                };
            }
            other => bail!("unknown synth field `{other}`"),
        }
    }
    Ok(SynthSpec::with_mean_gap(
        n,
        ell,
        gap,
        sigma,
        ratios.as_deref(),
        seed,
    )?)
}

/// Explicit group parameters for callers that need full control.
#[allow(dead_code)]
pub fn synth_spec_from_groups(n: usize, groups: Vec<GroupParams>, seed: u64) -> SynthSpec {
    SynthSpec { n, groups, seed }
}

fn write_report(args: &BinArgs, report: &BinningReport) -> Result<()> {
    let rendered = match args.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    match &args.out {
        Some(path) => {
            let mut f = std::fs::File::create(path)
                .with_context(|| format!("creating {}", path.display()))?;
            f.write_all(rendered.as_bytes())?;
        }
        None => {
            print!("{rendered}");
        }
    }
    Ok(())
}
