use crate::args::{BenchArgs, Mode, WindowModeArg};
use anyhow::{anyhow, Context, Result};
use fairbin_core::binning::SplitRule;
use fairbin_core::grid::{run_grid, SolverKind, SweepSpec, GRID_CSV_HEADER};
use fairbin_core::local_search::WindowMode;
use fairbin_core::ratio::Epsilon;
use std::io::Write;

pub fn run(args: &BenchArgs) -> Result<()> {
    let epss = args
        .eps_list
        .iter()
        .map(|s| s.parse::<Epsilon>().map_err(|e| anyhow!("{e}")))
        .collect::<Result<Vec<_>>>()?;
    let ratio_specs = args
        .ratios
        .iter()
        .map(|r| parse_ratio_spec(r))
        .collect::<Result<Vec<_>>>()?;
    let solvers: Vec<SolverKind> = args
        .solvers
        .iter()
        .map(|m| match m {
            Mode::EqualSize => SolverKind::EqualSize,
            Mode::Unbiased => SolverKind::Unbiased,
            Mode::EpsDp => SolverKind::EpsDp,
            Mode::EpsLs => SolverKind::EpsLs,
            Mode::EpsDnc => SolverKind::EpsDnc,
        })
        .collect();

    let spec = SweepSpec {
        ns: args.ns.clone(),
        ks: args.ks.clone(),
        epss,
        mean_gaps: args.mean_gaps.clone(),
        ratio_specs,
        ells: args.ells.clone(),
        sigma: args.sigma,
        reps: args.reps,
        seed_base: args.seed_base,
        solvers,
        split_rule: if args.strict_splits {
            SplitRule::Strict
        } else {
            SplitRule::Index
        },
        window_mode: match args.ls_window {
            WindowModeArg::Paper => WindowMode::Paper,
            WindowModeArg::Exhaustive => WindowMode::Exhaustive,
        },
        timings: !args.no_timings,
        ..SweepSpec::default()
    };

    // rows stream out as they complete so an interrupted run keeps its prefix
    let mut sink: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(
            std::fs::File::create(path)
                .with_context(|| format!("creating {}", path.display()))?,
        ),
        None => Box::new(std::io::stdout()),
    };
    writeln!(sink, "{GRID_CSV_HEADER}")?;
    sink.flush()?;
    let mut write_error = None;
    run_grid(&spec, |row| {
        if write_error.is_none() {
            let res = writeln!(sink, "{}", row.to_csv()).and_then(|_| sink.flush());
            if let Err(e) = res {
                write_error = Some(e);
            }
        }
    })?;
    match write_error {
        Some(e) => Err(e.into()),
        None => Ok(()),
    }
}

fn parse_ratio_spec(s: &str) -> Result<Option<Vec<f64>>> {
    let s = s.trim();
    if s == "equal" {
        return Ok(None);
    }
    let ps = s
        .split(':')
        .map(|p| p.parse::<f64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .with_context(|| format!("bad ratios `{s}`"))?;
    Ok(Some(ps))
}
