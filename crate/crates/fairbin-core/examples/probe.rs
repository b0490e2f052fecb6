use fairbin_core::exec::Threading;
use fairbin_core::grid::{run_grid, SolverKind, SweepSpec};
use fairbin_core::ratio::Epsilon;

fn main() {
    let spec = SweepSpec {
        ns: vec![200, 300, 1000],
        ks: vec![3],
        epss: vec![Epsilon::new(3, 100).unwrap()],
        mean_gaps: vec![0.0, 100.0, 200.0, 300.0],
        ratio_specs: vec![None],
        ells: vec![2, 3],
        reps: 30,
        seed_base: 0xacce_0007,
        solvers: vec![SolverKind::EqualSize, SolverKind::Unbiased, SolverKind::EpsLs],
        timings: false,
        threading: Threading::Parallel,
        ..SweepSpec::default()
    };
    run_grid(&spec, |r| {
        println!(
            "n={} gap={} ell={} {:>10}: feas {}/{} inf_ratio {:.3} bias {:?} pof {:?}",
            r.n, r.mean_gap, r.ell, r.solver, r.feasible_count, r.reps, r.infeasible_ratio,
            r.mean_bias.map(|x| (x * 1000.0).round() / 1000.0),
            r.mean_pof.map(|x| (x * 1000.0).round() / 1000.0)
        );
    })
    .unwrap();
}
