use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn geninv(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geninv"))
        .args(args)
        .current_dir(dir)
        .env_remove("GENINV_SEED")
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

/// Writes a real matrix given as decimal strings.
fn write(dir: &Path, name: &str, rows: &[&[&str]]) -> PathBuf {
    let entries: Vec<Vec<[&str; 2]>> = rows.iter().map(|r| r.iter().map(|v| [*v, "0"]).collect()).collect();
    let doc = serde_json::json!({ "rows": rows.len(), "cols": rows[0].len(), "entries": entries });
    let path = dir.join(name);
    fs::write(&path, doc.to_string()).unwrap();
    path
}

fn read_rows(path: &Path) -> Vec<Vec<String>> {
    let v: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r.as_array().unwrap().iter().map(|e| e[0].as_str().unwrap().to_string()).collect())
        .collect()
}

struct Example {
    dir: TempDir,
}

impl Example {
    /// The 3x3 matrix with `M = N = diag(1, 2, 1)`, plus the 2x2 definition examples.
    fn new() -> Self {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path();
        write(p, "A.json", &[&["1", "0", "1"], &["0", "1", "0"], &["0", "0", "0"]]);
        write(p, "W.json", &[&["1", "0", "0"], &["0", "2", "0"], &["0", "0", "1"]]);
        write(p, "printed.json", &[&["0.5", "0", "1"], &["0", "1", "0"], &["0.5", "0", "0"]]);
        write(p, "A2.json", &[&["1", "1"], &["0", "0"]]);
        write(p, "M2.json", &[&["1", "1"], &["0", "1"]]);
        write(p, "X2.json", &[&["1", "0"], &["0", "0"]]);
        write(p, "N2.json", &[&["0.5", "0.5"], &["0.3", "0.7"]]);
        write(p, "Y2.json", &[&["0.5", "0.5"], &["0.5", "0.5"]]);
        write(p, "J.json", &[&["0", "1"], &["0", "0"]]);
        write(p, "I.json", &[&["1", "0"], &["0", "1"]]);
        Example { dir }
    }

    fn run(&self, args: &[&str]) -> Output {
        geninv(args, self.dir.path())
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }
}

#[test]
fn compute_writes_the_m_core_of_the_three_by_three_example() {
    let ex = Example::new();
    let out = ex.run(&["compute", "--kind", "core-M", "--matrix", "A.json", "--weight-m", "W.json", "--out", "X.json"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(read_rows(&ex.path("X.json")), vec![vec!["1", "0", "0"], vec!["0", "1", "0"], vec!["0", "0", "0"]]);
}

#[test]
fn compute_reports_a_missing_group_inverse_with_exit_2() {
    let ex = Example::new();
    let out = ex.run(&["compute", "--kind", "group", "--matrix", "J.json", "--out", "r.json"]);
    assert_eq!(code(&out), 2);
    let record: Value = serde_json::from_str(&fs::read_to_string(ex.path("r.json")).unwrap()).unwrap();
    assert_eq!(record["reason"], "IndexTooHigh");
    assert_eq!(record["exists"], false);
}

#[test]
fn compute_mp_of_identity_prints_identity() {
    let ex = Example::new();
    let out = ex.run(&["compute", "--kind", "mp", "--matrix", "I.json"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["entries"][0][0][0], "1");
    assert_eq!(v["entries"][0][1][0], "0");
    assert_eq!(v["entries"][1][1][0], "1");
}

#[test]
fn non_hermitian_weights_need_an_explicit_flag() {
    let ex = Example::new();
    let base = ["compute", "--kind", "core-M", "--matrix", "A2.json", "--weight-m", "M2.json", "--out", "X.json"];
    assert_eq!(code(&ex.run(&base)), 3);
    let mut args = base.to_vec();
    args.push("--allow-non-hermitian");
    assert_eq!(code(&ex.run(&args)), 0);
    assert_eq!(read_rows(&ex.path("X.json")), vec![vec!["1", "0"], vec!["0", "0"]]);
}

#[test]
fn input_errors_exit_with_3() {
    let ex = Example::new();
    fs::write(ex.path("bad.json"), "{\"rows\": 2}").unwrap();
    assert_eq!(code(&ex.run(&["compute", "--kind", "mp", "--matrix", "bad.json"])), 3);
    assert_eq!(code(&ex.run(&["compute", "--kind", "nonsense", "--matrix", "I.json"])), 3);
    assert_eq!(code(&ex.run(&["compute", "--kind", "core-M", "--matrix", "I.json"])), 3);
    assert_eq!(code(&ex.run(&["compute", "--kind", "core-M", "--matrix", "I.json", "--weight-m", "W.json"])), 3);
    assert_eq!(code(&ex.run(&["verify", "--matrix", "I.json", "--candidate", "I.json", "--tags", "1,12"])), 3);
    assert_eq!(code(&ex.run(&["frobnicate"])), 3);
}

#[test]
fn verify_accepts_the_definition_examples() {
    let ex = Example::new();
    let m = ex.run(&["verify", "--matrix", "A2.json", "--candidate", "X2.json", "--tags", "3M,6,7", "--weight-m", "M2.json"]);
    assert_eq!(code(&m), 0, "{}", String::from_utf8_lossy(&m.stdout));
    let n = ex.run(&["verify", "--matrix", "A2.json", "--candidate", "Y2.json", "--tags", "4N,8,9", "--weight-n", "N2.json"]);
    assert_eq!(code(&n), 0, "{}", String::from_utf8_lossy(&n.stdout));
    let id = ex.run(&["verify", "--matrix", "I.json", "--candidate", "I.json", "--tags", "1,2,3,4,5,6,7,8,9"]);
    assert_eq!(code(&id), 0);
}

#[test]
fn verify_rejects_the_printed_weighted_mp() {
    let ex = Example::new();
    let out = ex.run(&[
        "verify", "--matrix", "A.json", "--candidate", "printed.json", "--tags", "1,2,3M,4N", "--weight-m", "W.json",
        "--weight-n", "W.json",
    ]);
    assert_eq!(code(&out), 1);
    let text = String::from_utf8_lossy(&out.stdout);
    let line = |tag: &str| text.lines().find(|l| l.split_whitespace().next() == Some(tag)).unwrap().to_string();
    assert!(line("1").contains("holds"));
    assert!(line("2").contains("FAILS"));
}

#[test]
fn theorem_checks_a_trivial_reverse_order_instance() {
    let ex = Example::new();
    let out = ex.run(&["theorem", "--id", "ROL4_1", "--a", "A.json", "--b", "A.json", "--m", "W.json"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8_lossy(&out.stdout).contains("ROL4_1: Pass"));
    let json = ex.run(&["theorem", "--id", "T3_14", "--a", "A.json", "--m", "W.json", "--json"]);
    let v: Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v["verdict"], "Pass");
    assert_eq!(code(&ex.run(&["theorem", "--id", "T3_7", "--a", "A.json"])), 3);
    assert_eq!(code(&ex.run(&["theorem", "--id", "T9_9", "--a", "A.json"])), 3);
}

#[test]
fn theorem_float_mode_requires_float_for_a_tolerance() {
    let ex = Example::new();
    let exact = ex.run(&["theorem", "--id", "T3_7", "--a", "A.json", "--m", "W.json", "--tolerance", "1e-9"]);
    assert_eq!(code(&exact), 3);
    let float = ex.run(&["theorem", "--id", "T3_7", "--a", "A.json", "--m", "W.json", "--mode", "float", "--tolerance", "1e-9"]);
    assert_eq!(code(&float), 0, "{}", String::from_utf8_lossy(&float.stdout));
}

#[test]
fn suite_validates_its_configuration() {
    let ex = Example::new();
    assert_eq!(code(&ex.run(&["suite", "--theorems", ""])), 3);
    assert_eq!(code(&ex.run(&["suite"])), 3);
    assert_eq!(code(&ex.run(&["suite", "--theorems", "T3_7", "--samples", "0"])), 3);
    assert_eq!(code(&ex.run(&["suite", "--theorems", "T3_7", "--tolerance", "1e-6"])), 3);
    assert_eq!(code(&ex.run(&["suite", "--theorems", "T3_7", "--sizes", "4..2"])), 3);
}

#[test]
fn constructive_sampler_hits_every_hypothesis() {
    let ex = Example::new();
    let out = ex.run(&["suite", "--theorems", "ROL4_4", "--sizes", "2..3", "--samples", "10", "--seed", "7", "--report", "r.json"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_str(&fs::read_to_string(ex.path("r.json")).unwrap()).unwrap();
    assert_eq!(v["schemaVersion"], 1);
    let s = &v["theorems"][0];
    assert_eq!(s["theorem"], "ROL4_4");
    assert_eq!(s["instances"], 20);
    assert_eq!(s["hypothesisHit"], 20);
    assert_eq!(s["fails"], 0);
}

#[test]
fn config_file_and_seed_variable_drive_the_suite() {
    let ex = Example::new();
    let config = serde_json::json!({
        "theorems": ["L2_6", "P3_2"],
        "sizes": { "min": 2, "max": 3 },
        "samplesPerSize": 3,
        "seed": 1,
        "reportPath": "from-config.json"
    });
    fs::write(ex.path("suite.json"), config.to_string()).unwrap();
    assert_eq!(code(&ex.run(&["suite", "--config", "suite.json"])), 0);

    let with_env = Command::new(env!("CARGO_BIN_EXE_geninv"))
        .args(["suite", "--config", "suite.json", "--report", "from-env.json"])
        .current_dir(ex.dir.path())
        .env("GENINV_SEED", "99")
        .output()
        .unwrap();
    assert_eq!(code(&with_env), 0);
    assert_eq!(code(&ex.run(&["suite", "--config", "suite.json", "--seed", "99", "--report", "from-flag.json"])), 0);

    let seed = |name: &str| {
        let v: Value = serde_json::from_str(&fs::read_to_string(ex.path(name)).unwrap()).unwrap();
        v["parameters"]["seed"].as_u64().unwrap()
    };
    assert_eq!(seed("from-config.json"), 1);
    assert_eq!(seed("from-env.json"), 99);
    assert_eq!(fs::read(ex.path("from-env.json")).unwrap(), fs::read(ex.path("from-flag.json")).unwrap());

    fs::write(ex.path("typo.json"), r#"{"theorems": ["L2_6"], "sizes": {"min": 2, "max": 2}, "samplesPerSize": 1, "seed": 0, "sead": 3}"#)
        .unwrap();
    assert_eq!(code(&ex.run(&["suite", "--config", "typo.json"])), 3);
}

#[test]
fn float_suite_runs_and_records_its_mode() {
    let ex = Example::new();
    let out = ex.run(&["suite", "--theorems", "T3_7,L3_8", "--sizes", "2", "--samples", "4", "--mode", "float", "--report", "f.json"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_str(&fs::read_to_string(ex.path("f.json")).unwrap()).unwrap();
    assert_eq!(v["parameters"]["mode"], "float");
}
