use std::process::{Command, Output};

use derivbound::analysis::{parse_table_csv, round_half_away, TABLE1_REFERENCE};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_derivbound"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn bound_reports_value_and_sharpness() {
    let out = stdout(&["bound", "--family", "sinc", "--k", "4"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("0.2"));
    assert_eq!(lines.next(), Some("sharp: t=0, k even"));
    let out = stdout(&["bound", "--family", "sinc", "--k", "3"]);
    assert!(out.contains("not attained"), "{out}");
}

#[test]
fn specfun_catalan() {
    let out = stdout(&["specfun", "--fn", "ti2", "--x", "1"]);
    assert!(out.starts_with("0.91596559"), "{out}");
    let v: f64 = out.trim().parse().unwrap();
    assert!((v - 0.915_965_594_177_219).abs() < 1e-14);
}

#[test]
fn table1_csv_round_trips_and_matches_reference() {
    let out = stdout(&["table1", "--format", "csv"]);
    let rows = parse_table_csv(&out).unwrap();
    assert_eq!(rows.len(), 30);
    let grid = derivbound::table1::<f64>().unwrap();
    for (i, (row, r)) in rows.iter().zip(&grid).enumerate() {
        assert_eq!(row.x, r.x);
        assert_eq!(row.n, r.n);
        assert_eq!(row.s_n, r.s_n);
        assert_eq!(row.reference, r.reference);
        assert_eq!(row.e_n, r.e_n);
        assert_eq!(row.b_n, r.b_n);
        assert_eq!(row.r_n, r.r_n);
        let expected = TABLE1_REFERENCE[i / 3][i % 3];
        assert!((round_half_away(row.r_n.unwrap(), 2) - expected).abs() <= 0.01 + 1e-9);
    }
}

#[test]
fn table1_text_layout() {
    let out = stdout(&["table1"]);
    assert_eq!(out.lines().count(), 11);
    assert!(out.lines().nth(7).unwrap().contains("11.58"), "{out}");
}

#[test]
fn zero_brackets_the_spike() {
    let out = stdout(&["zero", "--n", "10", "--lo", "34.858", "--hi", "34.859"]);
    assert!(out.contains("E(lo) = 1.6504e-4"), "{out}");
    assert!(out.contains("E(hi) = -9.5463e-5"), "{out}");
    let refined = out.lines().find(|l| l.starts_with("refined")).unwrap();
    let inner = &refined[refined.find('[').unwrap() + 1..refined.find(']').unwrap()];
    let ends: Vec<f64> = inner.split(", ").map(|s| s.parse().unwrap()).collect();
    assert!(ends[1] - ends[0] <= 1e-6);
}

#[test]
fn zero_without_sign_change_is_a_computation_error() {
    let out = run(&["zero", "--n", "10", "--lo", "1", "--hi", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
}

#[test]
fn deriv_checks_agree() {
    let out = stdout(&[
        "deriv", "--family", "cin2", "--k", "4", "--t", "-3.5", "--check", "closed",
    ]);
    let vals: Vec<f64> = out
        .lines()
        .map(|l| l.split_whitespace().find_map(|w| w.parse().ok()).unwrap())
        .collect();
    assert!((vals[0] - vals[1]).abs() < 1e-12, "{out}");
    let out = stdout(&[
        "deriv", "--family", "ein", "--k", "3", "--t", "2", "--check", "fd",
    ]);
    assert!(out.contains("fd: "), "{out}");
}

#[test]
fn deriv_without_closed_form_fails_cleanly() {
    let out = run(&[
        "deriv", "--family", "ein", "--k", "3", "--t", "2", "--check", "closed",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn scan_csv_marks_undefined_points() {
    let out = stdout(&[
        "scan", "--n", "10", "--xmin", "0", "--xmax", "1", "--step", "0.5", "--format", "csv",
    ]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "x,R_n");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].ends_with(",undef"));
    let r: f64 = lines[3].split(',').nth(1).unwrap().parse().unwrap();
    assert!((round_half_away(r, 2) - 2.55).abs() < 1e-9);
}

#[test]
fn frullani_reports_holds() {
    let out = stdout(&["frullani", "--alpha", "1", "--beta", "2", "--T", "1000"]);
    assert!(out.contains("holds yes"), "{out}");
}

#[test]
fn lambda_csv_and_summary() {
    let out = run(&[
        "lambda",
        "--kappa",
        "2",
        "--vmax",
        "40",
        "--step-exp",
        "8",
        "--laplace-t",
        "2",
    ]);
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "v,lambda");
    assert_eq!(lines.len(), 1 + 40 * 256 + 1);
    let last: Vec<f64> = lines[256 + 1]
        .split(',')
        .map(|s| s.parse().unwrap())
        .collect();
    let c = (2.0 * 0.577_215_664_901_532_9f64).exp();
    assert_eq!(last[0], 1.0);
    assert!((last[1] - c).abs() < 1e-12);
    let summary = String::from_utf8(out.stderr).unwrap();
    assert!(summary.contains("laplace t=2"), "{summary}");
}

#[test]
fn qint_is_certified() {
    let out = stdout(&[
        "qint", "--kappa", "2", "--u", "1", "--a", "1", "--b", "3", "--n", "16",
    ]);
    assert!(out.contains("certified yes"), "{out}");
}

#[test]
fn usage_errors_exit_2_without_output() {
    for args in [
        &["bound", "--family", "sinc", "--k", "4", "--bogus"][..],
        &[
            "scan", "--n", "11", "--xmin", "0", "--xmax", "1", "--step", "0.1",
        ],
        &["specfun", "--fn", "zeta", "--x", "1"],
        &["specfun", "--fn", "si", "--x", "nan"],
        &["frobnicate"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn domain_errors_exit_1() {
    let out = run(&["specfun", "--fn", "ci", "--x", "-1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    let out = run(&["bound", "--family", "tan", "--k", "1", "--t", "1.6"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "scan", "--n", "10", "--xmin", "0.1", "--xmax", "20", "--step", "0.1", "--format", "csv",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["table1", "--format", "csv"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn output_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("derivbound-cli-{}.csv", std::process::id()));
    let p = path.to_str().unwrap();
    let out = run(&["table1", "--format", "csv", "--output", p]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(written, stdout(&["table1", "--format", "csv"]));
}
