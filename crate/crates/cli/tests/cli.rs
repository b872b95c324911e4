use std::process::Command as Process;

use clap::Parser;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::Value;

use syk_rank1::qcomb::appendix_s;
use syk_rank1_cli::{execute, Cli};

const BIN: &str = env!("CARGO_BIN_EXE_syk-rank1");

fn run(args: &str) -> String {
    let cli = Cli::try_parse_from(std::iter::once("syk-rank1").chain(args.split_whitespace()))
        .unwrap_or_else(|e| panic!("{args}: {e}"));
    execute(&cli).unwrap_or_else(|e| panic!("{args}: {e}"))
}

/// Data rows of a CSV output, split into cells.
fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    (header, rows)
}

fn json_rows(text: &str) -> Vec<Value> {
    let doc: Value = serde_json::from_str(text).unwrap();
    assert_eq!(doc["schema_version"], 1);
    doc["rows"].as_array().unwrap().clone()
}

fn num(cell: &str) -> f64 {
    cell.parse().unwrap()
}

#[test]
fn moments_table_at_q_zero() {
    let (header, rows) = csv_rows(&run("moments --q 0 --lambda1 3 --pmax 5"));
    assert_eq!(header[..3], ["p", "exact", "asymptotic"]);
    assert_eq!(rows.len(), 5);
    assert_eq!((num(&rows[0][0]), num(&rows[0][1])), (1.0, 3.0));
    assert_eq!((num(&rows[2][0]), num(&rows[2][1])), (3.0, 36.0));
    assert_eq!((num(&rows[4][0]), num(&rows[4][1])), (5.0, 408.0));
}

#[test]
fn moments_at_q_zero_match_catalan_sum() {
    // Σ_j λ₁^{p−2j} · p/(p−2j) · S(p, j), evaluated exactly at λ₁ = 3.
    let (_, rows) = csv_rows(&run("moments --q 0 --lambda1 3 --pmax 16"));
    for (i, row) in rows.iter().enumerate() {
        let p = i + 1;
        let mut expected = BigRational::from_integer(0.into());
        for j in 0..=(p - 1) / 2 {
            let free = p - 2 * j;
            let weight = BigRational::new(BigInt::from(p), BigInt::from(free));
            let power = BigRational::from_integer(BigInt::from(3).pow(free as u32));
            expected += appendix_s(p, j).unwrap() * weight * power;
        }
        assert_eq!(num(&row[1]), expected.to_f64().unwrap(), "p = {p}");
    }
}

#[test]
fn moments_order_is_validated() {
    let cli = Cli::try_parse_from(["syk-rank1", "moments", "--q", "0", "--lambda1", "3", "--pmax", "8", "--order", "6"]).unwrap();
    assert!(execute(&cli).is_err());
    let cli = Cli::try_parse_from(["syk-rank1", "moments", "--q", "0", "--lambda1", "3", "--pmax", "31"]).unwrap();
    assert!(execute(&cli).is_err());
}

#[test]
fn regime_reports() {
    let regime = |args: &str| json_rows(&run(&format!("regime {args} --format json")))[0].clone();
    assert_eq!(regime("--q 0 --lambda1 0.5")["regime"], "subcritical");
    assert_eq!(regime("--q 0 --lambda1 1")["regime"], "critical");
    let sup = regime("--N 24 --lambda1 3");
    assert_eq!(sup["regime"], "supercritical");
    assert!((sup["e_split"].as_f64().unwrap() - 3.338_244_60).abs() < 1e-8);
    assert_eq!(sup["alpha_exponent"], -1.0);
}

#[test]
fn split_value() {
    let (_, rows) = csv_rows(&run("split --q 0 --lambda1 2"));
    assert!((num(&rows[0][3]) - 2.5).abs() < 1e-10);
}

#[test]
fn density_semicircle_grid_and_mass() {
    let (_, rows) = csv_rows(&run("density --q 0 --points 200"));
    assert_eq!(rows.len(), 200);
    for row in &rows {
        let (e, rho) = (num(&row[1]), num(&row[2]));
        let semicircle = (4.0 - e * e).max(0.0).sqrt() / (2.0 * std::f64::consts::PI);
        assert!((rho - semicircle).abs() <= 1e-8);
    }
    for q in ["0", "0.5"] {
        let (_, rows) = csv_rows(&run(&format!("density --q {q} --points 4001")));
        let trapezoid: f64 = rows
            .windows(2)
            .map(|w| 0.5 * (num(&w[0][2]) + num(&w[1][2])) * (num(&w[1][1]) - num(&w[0][1])))
            .sum();
        assert!((trapezoid - 1.0).abs() < 1e-4, "q = {q}: {trapezoid}");
    }
}

#[test]
fn density_marks_split_eigenvalue() {
    let (_, rows) = csv_rows(&run("density --N 24 --lambda1 3 --points 11"));
    let delta: Vec<_> = rows.iter().filter(|r| r[0] == "delta").collect();
    assert_eq!(delta.len(), 1);
    assert!((num(&delta[0][1]) - 3.338_244_60).abs() < 1e-8);
    assert_eq!(num(&delta[0][3]), 1.0 / 4096.0);
    let (_, sub) = csv_rows(&run("density --q 0 --lambda1 0.5 --points 11"));
    assert!(sub.iter().all(|r| r[0] == "bulk"));
}

#[test]
fn density_histogram_overlay() {
    let (_, rows) = csv_rows(&run("density --N 10 --lambda1 1 --points 11 --histogram --samples 4 --bins 12"));
    assert_eq!(rows.iter().filter(|r| r[0] == "histogram").count(), 12);
}

#[test]
fn csv_and_json_carry_identical_numbers() {
    for args in [
        "moments --q 0.3 --lambda1 2.5 --pmax 8",
        "regime --N 20 --lambda1 3",
        "density --q 0.7 --lambda1 4 --points 31",
        "reproduce-table --N 10,12 --samples 3 --seed 5",
    ] {
        let (header, csv) = csv_rows(&run(args));
        let json = json_rows(&run(&format!("{args} --format json")));
        assert_eq!(csv.len(), json.len(), "{args}");
        for (c, j) in csv.iter().zip(&json) {
            for (col, cell) in header.iter().zip(c) {
                let value = &j[col.as_str()];
                match value {
                    Value::Null => assert!(cell.is_empty(), "{args} {col}"),
                    Value::Number(n) => assert_eq!(num(cell), n.as_f64().unwrap(), "{args} {col}"),
                    Value::String(s) => assert_eq!(cell, s),
                    other => panic!("unexpected {other}"),
                }
            }
        }
    }
}

#[test]
fn config_is_embedded() {
    let text = run("split --q 0.25 --lambda1 2");
    let config_line = text.lines().find(|l| l.starts_with("# config=")).unwrap();
    let config: Value = serde_json::from_str(&config_line["# config=".len()..]).unwrap();
    assert_eq!(config["q"], 0.25);
    assert_eq!(config["lambda1"], 2.0);
    let doc: Value = serde_json::from_str(&run("ensemble --N 8 --lambda1 1 --samples 2 --seed 77 --format json")).unwrap();
    assert_eq!(doc["config"]["seed"], 77);
    assert_eq!(doc["result"]["spec"]["master_seed"], 77);
}

#[test]
fn subcritical_table_rows() {
    let (header, rows) = csv_rows(&run("reproduce-table --N 10,12 --lambda1 0.5 --samples 3"));
    let status = header.iter().position(|c| c == "status").unwrap();
    assert!(rows.iter().all(|r| r[status] == "no split eigenvalue"));
}

#[test]
fn ensemble_csv_dump() {
    let text = run("ensemble --N 8 --lambda1 2 --samples 2");
    let (header, rows) = csv_rows(&text);
    assert_eq!(header, ["sample_index", "eigen_index", "value"]);
    assert_eq!(rows.len(), 32);
}

#[test]
fn binary_writes_file_and_is_thread_independent() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for threads in ["1", "4"] {
        let path = dir.path().join(format!("out{threads}.json"));
        let status = Process::new(BIN)
            .args(["ensemble", "--N", "12", "--lambda1", "3", "--samples", "5", "--seed", "9"])
            .args(["--format", "json", "--threads", threads, "--out"])
            .arg(&path)
            .status()
            .unwrap();
        assert!(status.success());
        outputs.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn binary_error_records() {
    let check = |args: &[&str], kind: &str| {
        let out = Process::new(BIN).args(args).output().unwrap();
        assert!(!out.status.success(), "{args:?}");
        let record: Value = serde_json::from_slice(&out.stderr).unwrap();
        assert_eq!(record["error"]["kind"], kind, "{args:?}");
        assert!(out.stdout.is_empty());
    };
    check(&["split", "--q", "0", "--lambda1", "2", "--bogus"], "usage");
    check(&["split", "--q", "0", "--lambda1", "0.99"], "gap_absent");
    check(&["split", "--lambda1", "2"], "config");
    check(&["regime", "--q", "1.5", "--lambda1", "2"], "domain");
    check(&["ensemble", "--N", "28", "--lambda1", "3", "--samples", "1"], "config");
    check(&["ensemble", "--N", "9", "--lambda1", "3", "--samples", "1"], "domain");
    check(&["ensemble", "--N", "8", "--lambda1", "3", "--bins", "5"], "config");

    let ok = Process::new(BIN).args(["split", "--q", "0", "--lambda1", "2"]).output().unwrap();
    assert!(ok.status.success());
    assert!(ok.stderr.is_empty());
}
