//! End-to-end tests of the binary: exit codes, report fields, format
//! projection, seed handling, and byte-level determinism.

use std::path::Path;
use std::process::{Command, Output};

fn ttm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ttm"))
        .args(args)
        .env_remove("TTM_SEED")
        .output()
        .expect("binary runs")
}

fn json(output: &Output) -> serde_json::Value {
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

fn fixture() -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../ttm-core/fixtures/s1001_walk.trace")
        .to_string_lossy()
        .into_owned()
}

#[test]
fn replay_recovers_the_fixture_secret() {
    let out = ttm(&["simon", "--replay", &fixture()]);
    let v = json(&out);
    assert_eq!(v["secret"], "1001");
    assert_eq!(v["data_elements"], 7);
    assert_eq!(
        v["final_rows"],
        serde_json::json!(["0110", "1111", "0010", "1011"])
    );
    assert_eq!(v["final_rhs"], "0000");
    assert_eq!(v["verification"], "trace");
}

#[test]
fn bv_example_matches_spec() {
    let out = ttm(&["bv", "--n", "3", "--secret", "110", "--seed", "7"]);
    let v = json(&out);
    assert_eq!(v["secret"], "110");
    assert_eq!(v["recovered"], "110");
    assert_eq!(v["queries"], 1);
    assert_eq!(v["matched"], true);
}

#[test]
fn montecarlo_reports_the_bound() {
    let out = ttm(&["montecarlo", "--n", "2", "--trials", "1", "--seed", "1"]);
    let v = json(&out);
    assert_eq!(v["bound"], 0.375);
    assert_eq!(v["trials"], 1);
    assert_eq!(v["seed"], 1);
}

#[test]
fn simon_random_run_converges() {
    let out = ttm(&["simon", "--n", "5", "--random", "--seed", "11"]);
    let v = json(&out);
    assert_eq!(v["converged"], true);
    assert_eq!(v["n"], 5);
    assert!(v["secret"].as_str().unwrap().len() == 5);
    assert_eq!(v["seed"], 11);
}

#[test]
fn identical_configs_emit_identical_bytes() {
    let a = ttm(&["simon", "--secret", "10011", "--seed", "3", "--trace"]);
    let b = ttm(&["simon", "--secret", "10011", "--seed", "3", "--trace"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = ttm(&["montecarlo", "--n", "4", "--trials", "5", "--seed", "9"]);
    let d = ttm(&["montecarlo", "--n", "4", "--trials", "5", "--seed", "9"]);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn missing_seed_is_a_usage_error() {
    let out = ttm(&["simon", "--n", "4", "--random"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("--seed"), "stderr: {err}");
}

#[test]
fn seed_env_fallback_works() {
    let out = Command::new(env!("CARGO_BIN_EXE_ttm"))
        .args(["simon", "--n", "4", "--random"])
        .env("TTM_SEED", "21")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(out.status.success());
    assert_eq!(v["seed"], 21);
}

#[test]
fn usage_errors_name_the_flag() {
    let out = ttm(&["simon", "--secret", "0000", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--secret"));

    let out = ttm(&["deutsch", "--table", "0111"]);
    assert_eq!(out.status.code(), Some(2));

    let out = ttm(&["bv"]);
    assert_eq!(out.status.code(), Some(2));

    let out = ttm(&["simon", "--nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budget_exhaustion_exits_one_with_partial_report() {
    // A one-epoch budget cannot converge for a 6-wide instance.
    let out = ttm(&[
        "simon",
        "--n",
        "6",
        "--random",
        "--seed",
        "2",
        "--max-data-mult",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["converged"], false);
    assert_eq!(v["secret"], serde_json::Value::Null);
}

#[test]
fn deutsch_cells_and_tables() {
    for (kind, want) in [
        ("identity", "balanced"),
        ("negation", "balanced"),
        ("const0", "constant"),
        ("const1", "constant"),
    ] {
        let v = json(&ttm(&["deutsch", "--kind", kind]));
        assert_eq!(v["classification"], want, "{kind}");
        assert_eq!(v["queries"], 1);
    }
    let v = json(&ttm(&["deutsch", "--table", "1001"]));
    assert_eq!(v["classification"], "balanced");
    let v = json(&ttm(&["deutsch", "--table", "1111"]));
    assert_eq!(v["classification"], "constant");
}

#[test]
fn delay_matches_quoted_figures() {
    let v = json(&ttm(&[
        "delay",
        "--qubits",
        "1000",
        "--frequency-ghz",
        "10",
        "--iterations",
        "3000",
    ]));
    let per = v["per_ripple_seconds"].as_f64().unwrap();
    let total = v["total_seconds"].as_f64().unwrap();
    assert!((per - 1e-7).abs() < 1e-10);
    assert!((total - 3e-4).abs() < 1e-7);
}

#[test]
fn csv_is_a_flat_projection() {
    let out = ttm(&["bv", "--secret", "101", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(header.len(), row.len());
    let secret_idx = header.iter().position(|&h| h == "secret").unwrap();
    assert_eq!(row[secret_idx], "101");
}
