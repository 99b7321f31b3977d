use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn rtxy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rtxy")).args(args).env_remove("RTXY_THREADS").output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(&rtxy(args))).unwrap()
}

fn num(v: &Value) -> f64 {
    v.as_f64().unwrap_or_else(|| panic!("not a number: {v}"))
}

#[test]
fn spectrum_json_matches_oracle() {
    let v = json(&["spectrum", "--n", "6", "--lambda", "0.5", "--gamma", "0.3", "--format", "json"]);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["levels"].as_array().unwrap().len(), 64);
    assert_eq!(v["oracle"]["levels"].as_array().unwrap().len(), 64);
    assert!(num(&v["max_match_distance"]) < 1e-10);
    let level = &v["levels"][0];
    for key in ["re", "im", "sector", "occupation"] {
        assert!(level.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn spectrum_sector_filter_and_negative_values() {
    let v = json(&["spectrum", "--n", "4", "--lambda", "-1.2", "--gamma", "-0.4", "--sector", "-", "--format", "json"]);
    let levels = v["levels"].as_array().unwrap();
    assert_eq!(levels.len(), 8);
    assert!(levels.iter().all(|l| l["sector"] == "-"));
    assert_eq!(num(&v["params"]["lambda"]), -1.2);
}

#[test]
fn spectrum_above_dense_cap_has_no_oracle() {
    let v = json(&["spectrum", "--n", "14", "--lambda", "2", "--gamma", "0.5", "--format", "json"]);
    assert!(v["oracle"].is_null() && v["max_match_distance"].is_null());
    assert_eq!(v["levels"].as_array().unwrap().len(), 1 << 14);
}

#[test]
fn numbers_have_seventeen_significant_digits() {
    let text = stdout(&rtxy(&["spectrum", "--n", "4", "--lambda", "0.5", "--gamma", "0.3"]));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# rtxy spectrum schema_version=1"));
    assert_eq!(lines.next(), Some("source,sector,occupation,re,im"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let mantissa = row[3].trim_start_matches('-').split('e').next().unwrap();
    assert_eq!(mantissa.len(), 18, "{}", row[3]);
    assert!(!text.contains('\r'));
}

#[test]
fn output_is_byte_identical_across_runs_and_thread_counts() {
    let args = ["phase", "--n", "8", "--res", "21", "--format", "json"];
    let a = rtxy(&args).stdout;
    let b = rtxy(&args).stdout;
    let c = Command::new(env!("CARGO_BIN_EXE_rtxy")).args(args).env("RTXY_THREADS", "1").output().unwrap().stdout;
    assert!(!a.is_empty());
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn phase_csv_keeps_hermitian_line_unbroken() {
    let text = stdout(&rtxy(&["phase", "--n", "4", "8", "--res", "11"]));
    let rows: Vec<Vec<&str>> = text.lines().skip(2).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 2 * 11 * 11);
    for r in &rows {
        if r[2].parse::<f64>().unwrap() == 0.0 {
            assert_eq!(r[3], "unbroken", "{r:?}");
        }
    }
    assert!(rows.iter().any(|r| r[3] == "broken"));
}

#[test]
fn svg_outputs_are_written_atomically_to_files() {
    let dir = tempfile::tempdir().unwrap();
    for (cmd, extra) in [("phase", vec!["--res", "9"]), ("kappa", vec!["--res", "6"]), ("compare", vec![])] {
        let path = dir.path().join(format!("{cmd}.svg"));
        let mut args = vec![cmd, "--format", "svg", "--out", path.to_str().unwrap()];
        args.extend(extra);
        let out = rtxy(&args);
        assert!(out.status.success(), "{cmd}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(out.stdout.is_empty());
        let svg = std::fs::read_to_string(&path).unwrap();
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"), "{cmd}");
    }
    let leftovers: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(leftovers.len(), 3, "{leftovers:?}");
}

#[test]
fn kappa_skips_broken_points_and_approaches_approximants() {
    let v = json(&["kappa", "--gamma", "2", "--lmin", "1", "--lmax", "40", "--res", "40", "--format", "json"]);
    assert!(!v["skipped"].as_array().unwrap().is_empty());
    let rows = v["rows"].as_array().unwrap();
    let last = rows.last().unwrap();
    assert_eq!(num(&last["lambda"]), 40.0);
    let (exact, approx) = (num(&last["exact"][0]), num(&last["approx"][0]));
    assert!((exact - approx).abs() / exact < 1e-4, "{exact} vs {approx}");
    assert!(num(&v["max_sector_difference"]) >= 0.0);
}

#[test]
fn compare_reports_counterpart_identity() {
    let v = json(&["compare", "--format", "json"]);
    let points = v["points"].as_array().unwrap();
    assert_eq!(points.len(), 3);
    for p in points {
        let d = &p["distances"];
        assert!(num(&d["counterpart_vs_h"]) < 1e-8);
        assert!(num(&d["counterpart_spin_vs_counterpart"]) < 1e-8);
        assert!(num(&d["reduced_vs_h"]) <= num(&d["truncation_bound"]) * (1.0 + 1e-9));
    }
}

#[test]
fn validate_subset_passes_and_failure_exits_one() {
    let out = rtxy(&["validate", "--criteria", "5,8"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 2);
    let log = String::from_utf8_lossy(&out.stderr);
    assert!(log.lines().filter(|l| l.starts_with("PASS")).count() == 2, "{log}");

    let out = rtxy(&["validate", "--criteria", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["criteria"][0]["passed"], false);
}

#[test]
fn bad_configurations_exit_two() {
    let cases: &[&[&str]] = &[
        &["spectrum", "--n", "5", "--lambda", "1", "--gamma", "1"],
        &["spectrum", "--n", "4", "--lambda", "1", "--gamma", "1", "--format", "svg"],
        &["spectrum", "--n", "24", "--lambda", "1", "--gamma", "1"],
        &["phase", "--res", "0"],
        &["phase", "--lmin", "2", "--lmax", "1"],
        &["kappa", "--lmin", "-1", "--lmax", "1", "--res", "3"],
        &["compare", "--n", "14"],
        &["compare", "--lambda", "0.5", "--gamma", "1"],
        &["validate", "--criteria", "11"],
        &["spectrum", "--n", "4"],
        &["bogus"],
    ];
    for args in cases {
        assert_eq!(rtxy(args).status.code(), Some(2), "{args:?}");
    }
    let out = Command::new(env!("CARGO_BIN_EXE_rtxy"))
        .args(["phase", "--res", "3"])
        .env("RTXY_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unwritable_output_is_a_runtime_failure() {
    let out = rtxy(&["phase", "--res", "3", "--out", "/nonexistent-dir/x.csv"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!Path::new("/nonexistent-dir/x.csv").exists());
}
