use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_discord-lab"))
        .args(args)
        .env_remove("DISCORD_LAB_TOL")
        .output()
        .expect("binary runs")
}

fn json_ok(args: &[&str]) -> Value {
    let out = cli(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn csv_rows(text: &str) -> (String, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header = lines.next().expect("header").to_owned();
    let rows = lines.map(|l| l.split(',').map(str::to_owned).collect()).collect();
    (header, rows)
}

fn f(s: &str) -> f64 {
    s.parse().expect("numeric field")
}

#[test]
fn discord_of_the_singlet_is_one() {
    let v = json_ok(&["discord", "--family", "werner", "--f", "1.0", "--metric", "bures"]);
    assert!((v["value"].as_f64().unwrap() - 1.0).abs() <= 1e-8);
    assert_eq!(v["metric"], "bures");
    assert_eq!(v["method"], "optimize");
    assert!((v["purity"].as_f64().unwrap() - 1.0).abs() <= 1e-12);
}

#[test]
fn analytic_bell_diagonal_value() {
    let v = json_ok(&["discord", "--family", "bell_diagonal", "--gamma", "0.5,0.3,0.1,0.1", "--method", "analytic"]);
    assert!((v["value"].as_f64().unwrap() - 0.0254033).abs() <= 1e-6);
    assert_eq!(v["method"], "analytic");
}

#[test]
fn analytic_and_optimized_agree_on_bell_diagonal_input() {
    let args = ["discord", "--family", "bell_diagonal", "--gamma", "0.4,0.3,0.2,0.1"];
    let a = json_ok(&[&args[..], &["--method", "analytic"]].concat());
    let o = json_ok(&[&args[..], &["--method", "optimize"]].concat());
    assert!((a["value"].as_f64().unwrap() - o["value"].as_f64().unwrap()).abs() <= 1e-7);
}

#[test]
fn maximally_mixed_werner_state_has_no_discord() {
    let v = json_ok(&["discord", "--family", "werner", "--f", "0.25"]);
    assert!(v["value"].as_f64().unwrap().abs() <= 1e-10);
}

#[test]
fn state_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("state.json");
    std::fs::write(&path, r#"{"family": "werner", "f": 1.0}"#).unwrap();
    let from_file = json_ok(&["discord", "--state", path.to_str().unwrap()]);
    let from_flags = json_ok(&["discord", "--family", "werner", "--f", "1.0"]);
    assert_eq!(from_file["value"], from_flags["value"]);

    // A dense Bell-diagonal matrix still qualifies for the analytic method.
    let half = r#"{"dense": [[0.5,0,0,0.5],[0,0,0,0],[0,0,0,0],[0.5,0,0,0.5]], "dims": [2, 2]}"#;
    std::fs::write(&path, half).unwrap();
    let v = json_ok(&["discord", "--state", path.to_str().unwrap(), "--method", "analytic"]);
    assert!((v["value"].as_f64().unwrap() - 1.0).abs() <= 1e-10);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| cli(args).status.code();
    // Invalid input.
    assert_eq!(code(&["discord", "--family", "werner", "--f", "2.0"]), Some(2));
    assert_eq!(code(&["discord", "--family", "mq_b", "--purity", "0.9"]), Some(2));
    assert_eq!(code(&["discord", "--state", "/nonexistent/state.json"]), Some(2));
    // Analytic method on a state without a closed form.
    assert_eq!(code(&["discord", "--family", "mq_b", "--purity", "0.35", "--method", "analytic"]), Some(3));
    assert_eq!(
        code(&["discord", "--family", "werner", "--f", "0.9", "--method", "analytic", "--metric", "trace"]),
        Some(3)
    );
    // Unwritable output.
    assert_eq!(
        code(&["discord", "--family", "werner", "--f", "0.9", "--out", "/nonexistent/dir/out.json"]),
        Some(4)
    );
}

#[test]
fn invalid_tolerance_override_is_rejected() {
    let out = Command::new(env!("CARGO_BIN_EXE_discord-lab"))
        .args(["discord", "--family", "werner", "--f", "0.9"])
        .env("DISCORD_LAB_TOL", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

fn run_scan(dir: &Path, name: &str, threads: &str) -> (String, Value) {
    let out = dir.join(name);
    let o = cli(&["scan", "--samples", "100", "--seed", "7", "--threads", threads, "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(&out).unwrap();
    let meta: Value = serde_json::from_slice(&std::fs::read(dir.join(format!("{name}.meta.json"))).unwrap()).unwrap();
    (csv, meta)
}

#[test]
fn scan_is_reproducible_and_under_the_boundary() {
    let dir = tempfile::tempdir().unwrap();
    let (first, meta) = run_scan(dir.path(), "a.csv", "1");
    let (second, _) = run_scan(dir.path(), "b.csv", "2");
    assert_eq!(first, second);
    assert_eq!(meta["seed"], 7);
    assert_eq!(meta["samples"], 100);
    assert!(meta["wall_time_seconds"].as_f64().unwrap() >= 0.0);

    let (header, rows) = csv_rows(&first);
    assert_eq!(header, "purity,discord,provenance,seed_index");
    assert_eq!(rows.len(), 100);
    for (i, row) in rows.iter().enumerate() {
        let (p, d) = (f(&row[0]), f(&row[1]));
        assert_eq!(row[3], i.to_string());
        assert!(!discord_lab::explorer::exceeds_boundary(p, d, 1e-6).unwrap(), "row {i}: ({p}, {d})");
    }
}

#[test]
fn figure1_small_grid() {
    let out = cli(&["figure1", "--resolution", "5", "--threads", "1"]);
    assert!(out.status.success());
    let (header, rows) = csv_rows(std::str::from_utf8(&out.stdout).unwrap());
    assert_eq!(header, "gamma1,gamma3,d_response,d_geometric,difference");
    assert_eq!(rows.len(), 25);
    for row in &rows {
        assert!(f(&row[4]) >= -1e-6, "{row:?}");
    }
    // gamma = (0, 0, 1, 0) is a Bell state; gamma = (1/4, ...) is maximally mixed.
    let corner = &rows[4];
    assert!((f(&corner[2]) - 1.0).abs() <= 1e-10 && (f(&corner[3]) - 1.0).abs() <= 1e-6);
    let centre = &rows[12];
    assert!(f(&centre[2]).abs() <= 1e-10 && f(&centre[3]).abs() <= 1e-6);
}

#[test]
fn boundary_csv() {
    let out = cli(&["boundary", "--resolution", "301"]);
    assert!(out.status.success());
    let (header, rows) = csv_rows(std::str::from_utf8(&out.stdout).unwrap());
    assert_eq!(header, "purity,discord,region,curve");
    assert_eq!(rows.len(), 301);
    assert_eq!(f(&rows[0][0]), 0.25);
    assert_eq!(f(&rows[300][0]), 1.0);
    assert!((f(&rows[300][1]) - 1.0).abs() <= 1e-12);
    let mut prev = 0.0;
    for row in &rows {
        let (p, d) = (f(&row[0]), f(&row[1]));
        assert!(d >= prev - 1e-12);
        prev = d;
        if (1.0 / 3.0 + 1e-9..=0.39).contains(&p) {
            assert!((d - 1.0 / 3.0).abs() <= 1e-10, "{row:?}");
            assert_eq!(row[2], "b");
        }
    }
}

#[test]
fn reading_the_singlet() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("reading.json");
    let out = cli(&["reading", "--family", "werner", "--f", "1.0", "--resolution", "4", "--out", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert!(v["worst_case_error"].as_f64().unwrap().abs() <= 1e-8);
    assert!((v["trace_discord"].as_f64().unwrap() - 1.0).abs() <= 1e-8);
    assert!((v["interferometric_power"].as_f64().unwrap() - 1.0).abs() <= 1e-8);
    let sweep = v["sweep"].as_array().unwrap();
    assert_eq!(sweep.len(), 4);
    for row in sweep {
        let ratio = row["ratio_to_harmonic"].as_f64().unwrap();
        assert!((ratio - row["sin_omega"].as_f64().unwrap()).abs() <= 1e-5);
    }
}
