//! Black-box tests of the command line binary.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heisenmf"))
        .args(args)
        .output()
        .expect("binary must start")
}

fn run_with_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heisenmf"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary must start")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn scratch(tag: &str) -> PathBuf {
    std::env::temp_dir().join(format!("heisenmf-cli-{}-{}.csv", std::process::id(), tag))
}

#[test]
fn curve_prints_header_and_sorted_rows() {
    let out = run(&["curve", "--n", "12", "--n", "7", "--tau-min", "0.5", "--tau-max", "2.5", "--steps", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "n,t,tau,log_Z,m2,m2_over_n,m2_over_n2");
    let rows: Vec<Vec<String>> = lines
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    assert_eq!(rows.len(), 6);
    // Sorted by tau first, then by size.
    let key: Vec<(f64, u32)> = rows
        .iter()
        .map(|r| (r[2].parse().unwrap(), r[0].parse().unwrap()))
        .collect();
    let mut sorted = key.clone();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    assert_eq!(key, sorted);
}

#[test]
fn exact_and_float_curves_agree() {
    let float = run(&["curve", "--n", "9", "--tau-min", "0", "--tau-max", "3", "--steps", "4"]);
    let exact = run(&["curve", "--n", "9", "--tau-min", "0", "--tau-max", "3", "--steps", "4", "--exact"]);
    assert!(float.status.success() && exact.status.success());
    for (lf, le) in stdout(&float).lines().skip(1).zip(stdout(&exact).lines().skip(1)) {
        let f: Vec<f64> = lf.split(',').skip(3).map(|v| v.parse().unwrap()).collect();
        let e: Vec<f64> = le.split(',').skip(3).map(|v| v.parse().unwrap()).collect();
        for (a, b) in f.iter().zip(e.iter()) {
            assert!((a - b).abs() <= 1e-9 * b.abs().max(1.0), "{} vs {}", lf, le);
        }
    }
}

#[test]
fn exact_mode_rejects_large_sizes() {
    let out = run(&["curve", "--n", "13", "--exact"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_thread_count_invariant() {
    let base = ["curve", "--n", "64", "--tau-min", "0.2", "--tau-max", "3.8", "--steps", "7"];
    let one = run(&[&base[..], &["--threads", "1"]].concat());
    let four = run(&[&base[..], &["--threads", "4"]].concat());
    assert!(one.status.success() && four.status.success());
    assert_eq!(one.stdout, four.stdout, "identical bytes regardless of threads");
    let via_env = run_with_env(&base, "MF_THREADS", "3");
    assert!(via_env.status.success());
    assert_eq!(one.stdout, via_env.stdout);
}

#[test]
fn verify_fast_passes() {
    let out = run(&["verify", "--level", "fast", "--max-n", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("all checks passed"));
    assert!(text.contains("polynomial anchors"));
    assert!(text.contains("character transforms"));
    assert!(text.contains("staircase decomposition"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_rejects_oversized_bound() {
    assert_eq!(run(&["verify", "--max-n", "9"]).status.code(), Some(2));
}

#[test]
fn verify_injected_failure_sets_exit_code() {
    // The test profile keeps debug assertions, so the flag exists here.
    let out = run(&["verify", "--max-n", "3", "--inject-failure"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("FAIL"));
    assert!(text.contains("first counterexample"));
}

#[test]
fn malformed_requests_exit_with_two() {
    assert_eq!(run(&["curve"]).status.code(), Some(2));
    assert_eq!(run(&["curve", "--n", "1"]).status.code(), Some(2));
    assert_eq!(run(&["curve", "--n", "10", "--tau-min", "3", "--tau-max", "1"]).status.code(), Some(2));
    assert_eq!(run(&["transition", "--n-list", "50"]).status.code(), Some(2));
    assert_eq!(run(&["svg"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["simulate", "--n", "100", "--tau", "1"]).status.code(), Some(2));
}

#[test]
fn svg_renders_one_polyline_per_size() {
    let csv = scratch("svg-two-sizes");
    let gen = run(&[
        "curve", "--n", "8", "--n", "16", "--tau-min", "0", "--tau-max", "4",
        "--steps", "9", "--out", csv.to_str().unwrap(),
    ]);
    assert!(gen.status.success());
    let out = run(&["svg", "--in", csv.to_str().unwrap()]);
    let _ = fs::remove_file(&csv);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("<svg xmlns=\"http://www.w3.org/2000/svg\""));
    assert!(text.trim_end().ends_with("</svg>"));
    assert_eq!(text.matches("<polyline").count(), 2, "one curve per size");
    assert!(text.contains("tau = 2"), "transition reference line is labelled");
}

#[test]
fn svg_marks_a_single_point_with_a_circle() {
    let csv = scratch("svg-single-row");
    fs::write(
        &csv,
        "n,t,tau,log_Z,m2,m2_over_n,m2_over_n2\n3,0.5,1.5,1.55,2.9,0.97,0.32\n",
    )
    .unwrap();
    let out = run(&["svg", "--in", csv.to_str().unwrap()]);
    let _ = fs::remove_file(&csv);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("<circle"));
    assert!(!text.contains("<polyline"));
    assert!(text.trim_end().ends_with("</svg>"));
}

#[test]
fn svg_rejects_malformed_input() {
    let missing = scratch("svg-missing");
    let _ = fs::remove_file(&missing);
    assert_eq!(run(&["svg", "--in", missing.to_str().unwrap()]).status.code(), Some(2));

    let header_only = scratch("svg-header-only");
    fs::write(&header_only, "n,t,tau,log_Z,m2,m2_over_n,m2_over_n2\n").unwrap();
    assert_eq!(run(&["svg", "--in", header_only.to_str().unwrap()]).status.code(), Some(2));
    let _ = fs::remove_file(&header_only);

    let bad_header = scratch("svg-bad-header");
    fs::write(&bad_header, "n,tau,m2\n3,1.5,2.9\n").unwrap();
    assert_eq!(run(&["svg", "--in", bad_header.to_str().unwrap()]).status.code(), Some(2));
    let _ = fs::remove_file(&bad_header);

    let bad_row = scratch("svg-bad-row");
    fs::write(
        &bad_row,
        "n,t,tau,log_Z,m2,m2_over_n,m2_over_n2\n3,0.5,oops,1.55,2.9,0.97,0.32\n",
    )
    .unwrap();
    assert_eq!(run(&["svg", "--in", bad_row.to_str().unwrap()]).status.code(), Some(2));
    let _ = fs::remove_file(&bad_row);
}

#[test]
fn simulate_is_reproducible() {
    let args = ["simulate", "--n", "6", "--tau", "0.8", "--samples", "10000", "--seed", "11"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.contains("sigma"));
    assert!(text.contains("weighted 5-cycle count"));
    assert!(text.contains("fixed points"));
}

#[test]
fn simulate_enforces_the_sample_floor() {
    let out = run(&["simulate", "--n", "6", "--tau", "0.8", "--samples", "10"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn simulate_honours_k_max() {
    let out = run(&["simulate", "--n", "5", "--tau", "1", "--samples", "10000", "--k-max", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("weighted 2-cycle count"));
    assert!(!text.contains("weighted 3-cycle count"));
    assert_eq!(run(&["simulate", "--n", "5", "--tau", "1", "--k-max", "9"]).status.code(), Some(2));
}

#[test]
fn transition_reports_regimes_and_crossing() {
    let out = run(&["transition", "--n-list", "40,80", "--tau-min", "1.5", "--tau-max", "2.7", "--steps", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let header = text.lines().next().unwrap();
    assert!(header.starts_with("tau,"));
    assert!(header.ends_with(",regime"));
    assert!(text.contains(",decreasing") || text.contains(",stable") || text.contains(",mixed"));
    assert!(text.contains("# size dependence"));
}
