use std::process::{Command, Output};

use serde_json::Value;

fn syzygy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_syzygy"))
        .args(args)
        .env_remove("SYZYGY_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn entry(table: &Value, p: u64, q: u64) -> u64 {
    table["entries"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e[0] == p && e[1] == q)
        .map(|e| e[2].as_u64().unwrap())
        .expect("entry present")
}

#[test]
fn rnc_linear_strand() {
    let t: Value = serde_json::from_str(&stdout(&syzygy(&["betti", "--constructor", "rnc", "--n", "3"]))).unwrap();
    assert_eq!((0..4).map(|p| entry(&t, p, 1)).collect::<Vec<_>>(), vec![0, 3, 2, 0]);
    assert_eq!(
        t.as_object().unwrap().keys().collect::<Vec<_>>(),
        vec!["entries", "prime", "seed", "variety"]
    );
}

#[test]
fn conic_has_one_syzygy() {
    let csv = stdout(&syzygy(&[
        "betti",
        "--constructor",
        "rnc",
        "--n",
        "2",
        "--format",
        "csv",
    ]));
    let nonzero: Vec<&str> = csv.lines().skip(1).filter(|l| !l.ends_with(",0")).collect();
    assert_eq!(csv.lines().next(), Some("p,q,dim"));
    assert_eq!(nonzero, vec!["0,0,1", "1,1,1"]);
}

#[test]
fn genus_four_k3() {
    let t: Value =
        serde_json::from_str(&stdout(&syzygy(&["betti", "--constructor", "ci23_P4", "--seed", "42"]))).unwrap();
    assert_eq!(entry(&t, 2, 1), 0);
    assert_eq!(entry(&t, 1, 1), 1);
    assert_eq!(t["seed"], 42);
}

#[test]
fn seed_from_environment_wins() {
    let out = Command::new(env!("CARGO_BIN_EXE_syzygy"))
        .args(["betti", "--constructor", "canonical", "--g", "4", "--seed", "1"])
        .env("SYZYGY_SEED", "17")
        .output()
        .unwrap();
    let t: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(t["seed"], 17);
}

#[test]
fn output_is_reproducible() {
    let args = [
        "betti",
        "--constructor",
        "canonical",
        "--g",
        "5",
        "--seed",
        "3",
        "--format",
        "pretty",
    ];
    assert_eq!(stdout(&syzygy(&args)), stdout(&syzygy(&args)));
}

#[test]
fn spec_file_round_trip() {
    let dir = std::env::temp_dir().join(format!("syzygy-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("spec.json");
    std::fs::write(
        &path,
        r#"{"constructor":"ci222_P5_section","params":{"var":2},"seed":5,"prime":32003}"#,
    )
    .unwrap();
    let t: Value = serde_json::from_str(&stdout(&syzygy(&["betti", "--spec", path.to_str().unwrap()]))).unwrap();
    assert_eq!(t["seed"], 5);
    assert_eq!((entry(&t, 1, 1), entry(&t, 2, 1)), (3, 0));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn budget_exit_code() {
    let out = syzygy(&[
        "betti",
        "--constructor",
        "canonical",
        "--g",
        "5",
        "--entry-budget",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn unknown_constructor_fails() {
    let out = syzygy(&["betti", "--constructor", "torus"]);
    assert!(!out.status.success());
}

#[test]
fn green_checks_pass() {
    for g in ["4", "5", "6"] {
        let out = syzygy(&[
            "green-check",
            "--constructor",
            "canonical",
            "--g",
            g,
            "--format",
            "json",
        ]);
        let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert!(report["rows"].as_array().unwrap().iter().all(|r| r["matches"] == true));
    }
    let out = syzygy(&["green-check", "--constructor", "rnc", "--n", "3"]);
    assert!(!out.status.success());
}

#[test]
fn bwb_sweep_csv() {
    let csv = stdout(&syzygy(&["bwb", "--k", "2", "--sweep"]));
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("k,q,q',degree,dimension"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 36);
    assert!(rows.iter().any(|r| r[1..] == ["3", "2", "2", "1"]));
    assert!(rows.iter().all(|r| r[3].is_empty() || r[3] == "2" || r[3] == "4"));
}

#[test]
fn bwb_single_weights() {
    let v: Value = serde_json::from_str(&stdout(&syzygy(&["bwb", "--r", "2", "--n", "4", "--mu", "1,1"]))).unwrap();
    assert_eq!((v["degree"].as_u64(), v["dimension"].as_str()), (Some(0), Some("6")));
    let v: Value = serde_json::from_str(&stdout(&syzygy(&["bwb", "--k", "3", "--q", "4", "--q-prime", "3"]))).unwrap();
    assert_eq!((v["degree"].as_u64(), v["dimension"].as_str()), (Some(3), Some("1")));
    assert!(!syzygy(&["bwb", "--r", "2", "--n", "4", "--mu", "0,1"]).status.success());
}

#[test]
fn numerology_reports() {
    let v: Value = serde_json::from_str(&stdout(&syzygy(&["numerology", "--lm-chi", "2"]))).unwrap();
    assert_eq!(v["chi"], 4);
    let v: Value = serde_json::from_str(&stdout(&syzygy(&["numerology", "--gonality", "7"]))).unwrap();
    assert_eq!(v["gonality"], 5);
    let v: Value = serde_json::from_str(&stdout(&syzygy(&["numerology", "--brill-noether", "5", "1", "3"]))).unwrap();
    assert_eq!(v["rho"], -1);
    let v: Value = serde_json::from_str(&stdout(&syzygy(&["numerology", "--cor2", "50"]))).unwrap();
    assert_eq!(v["passed"], true);
    let v: Value = serde_json::from_str(&stdout(&syzygy(&["numerology", "--green", "4", "1"]))).unwrap();
    assert_eq!(v["predictions"][1]["expected"], "nonzero");
    assert!(!syzygy(&["numerology"]).status.success());
}

#[test]
fn selftest_passes() {
    let out = stdout(&syzygy(&["selftest"]));
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 13);
}
