use std::process::{Command, Output};

use qudit_bases::render::{MatrixRecord, ReportRecord, TableRecord};
use qudit_bases::{weyl, Dimension, WeylIndex};

fn qb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qudit-bases")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = qb(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn export_weyl_latex() {
    let got = stdout(&["export", "--dim", "3", "--operator", "weyl", "--n", "1", "--m", "2", "--format", "latex"]);
    assert_eq!(got, "U_{12}=\\begin{pmatrix}\n0&0&1\\\\\nw&0&0\\\\\n0&w^2&0\n\\end{pmatrix}\n");
}

#[test]
fn export_json_round_trips() {
    let got = stdout(&["export", "--dim", "5", "--operator", "weyl", "--n", "2", "--m", "3", "--format", "json"]);
    let record: MatrixRecord = serde_json::from_str(&got).unwrap();
    let d = Dimension::new(5).unwrap();
    assert_eq!(record.to_matrix().unwrap(), weyl(d, WeylIndex::new(d, 2, 3)));

    let c: MatrixRecord =
        serde_json::from_str(&stdout(&["export", "--dim", "3", "--operator", "chrestenson", "--format", "json"])).unwrap();
    assert_eq!((c.rows, c.cols, c.sqrt_d_exp), (3, 3, 1));
    assert!(c.float_entries.is_some());
}

#[test]
fn export_kpm_csv_is_long_format() {
    let got = stdout(&["export", "--dim", "3", "--operator", "kpm", "--n", "1", "--m", "1", "--format", "csv"]);
    let data: Vec<&str> = got.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(data[0], "row,col,re,im");
    assert_eq!(data.len(), 1 + 9);
    // Pi(1,1) has its fixed point at row 1.
    assert!(data.contains(&"1,1,1,0"), "{got}");
}

#[test]
fn table_d5_row() {
    let got = stdout(&["table", "--dim", "5"]);
    let row = got.lines().find(|l| l.split_whitespace().take(2).eq(["3", "2"])).expect("row (3,2)");
    let cols: Vec<&str> = row.split_whitespace().collect();
    assert_eq!(cols[2], "2", "{row}");
    assert_eq!(cols.last(), Some(&"yes"));
}

#[test]
fn table_d7_json_is_fully_verified() {
    let rows: Vec<TableRecord> = serde_json::from_str(&stdout(&["table", "--dim", "7", "--format", "json"])).unwrap();
    assert_eq!(rows.len(), 49);
    assert!(rows.iter().all(|r| r.verified && r.paper_ell.is_none()));
}

#[test]
fn table_latex_d3_uses_tau() {
    let got = stdout(&["table", "--dim", "3", "--format", "latex"]);
    assert!(got.contains("C_3U_{11}C_3=w\\tau_5"), "{got}");
}

#[test]
fn verify_kpm_d13() {
    let got = stdout(&["verify", "--dim", "13", "--suite", "kpm", "--format", "json", "--no-timing"]);
    let report: ReportRecord = serde_json::from_str(&got).unwrap();
    assert!(report.all_passed);
    assert_eq!(report.results.len(), 5);
    assert!(report.results.iter().all(|r| r.elapsed_ms == 0));
}

#[test]
fn verify_csv_lists_every_check() {
    let got = stdout(&["verify", "--dim", "5", "--format", "csv", "--no-timing"]);
    assert_eq!(got.lines().count(), 1 + 10);
}

#[test]
fn writes_to_out_file() {
    let path = std::env::temp_dir().join(format!("qudit-bases-{}.json", std::process::id()));
    let out = qb(&["table", "--dim", "3", "--format", "json", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(written, stdout(&["table", "--dim", "3", "--format", "json"]));
}

#[test]
fn exit_codes() {
    assert_eq!(qb(&["table", "--dim", "9"]).status.code(), Some(2));
    assert_eq!(qb(&["verify", "--dim", "3", "--format", "latex"]).status.code(), Some(2));
    assert_eq!(qb(&["table", "--dim", "3", "--out", "/nonexistent-dir/x.json"]).status.code(), Some(1));
    assert_eq!(qb(&["primes", "--max", "13"]).status.code(), Some(0));
}
