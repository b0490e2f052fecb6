//! End-to-end checks of the binary: exit codes, report contents, and the
//! bench grid surface.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fairbin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fairbin"))
}

fn write_toy_csv(dir: &Path) -> PathBuf {
    // R R B R B B R B R R B B B R R B, values 1..=16
    let blue = [3usize, 5, 6, 8, 11, 12, 13, 16];
    let mut data = String::from("score,color\n");
    for i in 1..=16 {
        let label = if blue.contains(&i) { "B" } else { "R" };
        data.push_str(&format!("{i},{label}\n"));
    }
    let path = dir.join("toy.csv");
    std::fs::write(&path, data).unwrap();
    path
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Minimal RFC-4180 cell splitter for checking report rows.
fn split_csv(line: &str) -> Vec<String> {
    let mut cells = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    let mut chars = line.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '"' if quoted && chars.peek() == Some(&'"') => {
                cur.push('"');
                chars.next();
            }
            '"' => quoted = !quoted,
            ',' if !quoted => cells.push(std::mem::take(&mut cur)),
            _ => cur.push(c),
        }
    }
    cells.push(cur);
    cells
}

#[test]
fn toy_unbiased_k3_boundaries() {
    let dir = tempfile::tempdir().unwrap();
    let toy = write_toy_csv(dir.path());
    let out = fairbin()
        .args(["bin"])
        .arg(&toy)
        .args(["--value-col", "score", "--group-col", "color", "--k", "3", "--mode", "unbiased"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(report["schema"], "fairbin/1");
    assert_eq!(report["splits"], serde_json::json!([6, 12]));
    assert_eq!(report["boundary_values"], serde_json::json!([6.0, 12.0]));
    assert_eq!(report["objective"], 2);
    assert_eq!(report["bias"]["num"], 0);
    assert_eq!(report["pof"]["num"], 1);
    assert_eq!(report["pof"]["den"], 6);
}

#[test]
fn toy_k6_is_infeasible_with_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let toy = write_toy_csv(dir.path());
    let out = fairbin()
        .args(["bin"])
        .arg(&toy)
        .args(["--value-col", "score", "--group-col", "color", "--k", "6", "--mode", "unbiased"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let report: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(report["feasible"], serde_json::json!(false));
}

#[test]
fn usage_and_data_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let toy = write_toy_csv(dir.path());
    // missing column
    let out = fairbin()
        .args(["bin"])
        .arg(&toy)
        .args(["--value-col", "nope", "--group-col", "color", "--k", "3", "--mode", "unbiased"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nope"));
    // eps mode without --eps
    let out = fairbin()
        .args(["bin", "--synth", "defaults", "--k", "3", "--mode", "eps-dp"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    // unknown flag (clap usage error)
    let out = fairbin().args(["bin", "--frobnicate"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    // no input at all
    let out = fairbin()
        .args(["bin", "--k", "3", "--mode", "unbiased"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn equal_size_baseline_on_synth_defaults() {
    let out = fairbin()
        .args(["bin", "--synth", "defaults", "--k", "4", "--mode", "equal-size"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    // k | n so the baseline is exactly equal-size: PoF 0, bias typically not
    assert_eq!(report["pof"]["num"], 0);
    let bias = report["bias"]["decimal"].as_f64().unwrap();
    assert!(bias > 0.0, "defaults with a 100 mean gap should show bias, got {bias}");
}

#[test]
fn csv_format_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("report.csv");
    let out = fairbin()
        .args(["bin", "--synth", "n=120,seed=5,gap=0", "--k", "3", "--mode", "eps-ls", "--eps", "1/10", "--format", "csv", "--out"])
        .arg(&out_path)
        .output()
        .unwrap();
    assert!(out.status.code() == Some(0) || out.status.code() == Some(2));
    let text = std::fs::read_to_string(&out_path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    let row = lines.next().unwrap();
    assert_eq!(header.split(',').count(), split_csv(row).len());
    assert!(header.starts_with("schema,solver,"));
    // the synth spec survives quoting intact
    assert!(split_csv(row).iter().any(|c| c == "synth:n=120,seed=5,gap=0"));
}

#[test]
fn bench_grid_shape_and_solver_set() {
    let dir = tempfile::tempdir().unwrap();
    let grid = dir.path().join("grid.csv");
    let out = fairbin()
        .args([
            "bench", "--ns", "80,120", "--ks", "2", "--eps-list", "1/10", "--mean-gaps", "0",
            "--ells", "2", "--reps", "4", "--seed-base", "9", "--no-timings", "--out",
        ])
        .arg(&grid)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&grid).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("setting_index,n,k,eps,"));
    // 2 settings x 5 solvers
    assert_eq!(lines.len(), 1 + 2 * 5);
    for row in &lines[1..] {
        assert_eq!(row.split(',').count(), lines[0].split(',').count());
    }
    // the three eps solvers agree on feasibility per setting
    let col = |row: &str, idx: usize| row.split(',').nth(idx).unwrap().to_string();
    let solver_rows: Vec<(String, String)> = lines[1..]
        .iter()
        .map(|r| (col(r, 7), col(r, 9)))
        .collect();
    let feas = |name: &str, setting: usize| {
        solver_rows
            .iter()
            .enumerate()
            .filter(|(i, (s, _))| s == name && i / 5 == setting)
            .map(|(_, (_, f))| f.parse::<u32>().unwrap())
            .next()
            .unwrap()
    };
    for setting in 0..2 {
        assert_eq!(feas("eps-dp", setting), feas("eps-ls", setting));
        assert_eq!(feas("eps-dp", setting), feas("eps-dnc", setting));
    }
}
