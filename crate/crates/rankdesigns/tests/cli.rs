//! End-to-end tests of the `rankdesigns` binary: exit-code discipline, JSON
//! outputs, fixture generation and byte stability across thread counts.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rankdesigns"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn gen_fixtures(dir: &Path) {
    let out = run(&["gen-examples", "--dir", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn macwilliams_of_the_zero_code_is_the_full_space_census() {
    let out = run(&["macwilliams", "--n", "2", "--m", "2", "--k", "0", "--q", "2", "--weights", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["counts"], serde_json::json!(["1", "9", "6"]));
}

#[test]
fn fixtures_roundtrip_and_check_out() {
    let dir = tempfile::tempdir().unwrap();
    gen_fixtures(dir.path());
    for name in [
        "spread_s1.json",
        "spread_s2.json",
        "gabidulin_2_4_4_2.json",
        "gabidulin_2_4_4_1.json",
        "gabidulin_3_3_3_1.json",
        "counterexample.json",
    ] {
        assert!(dir.path().join(name).exists(), "{name} missing");
    }

    let spread = dir.path().join("spread_s2.json");
    let spread = spread.to_str().unwrap();

    // weight-dist parses the vector code and reports the expansion census
    let out = run(&["weight-dist", "--code", spread]);
    assert_eq!(out.status.code(), Some(0));

    // am-run extracts the verified 1-(4, 2, 1) spread
    let out = run(&["am-run", "--code", spread, "--t", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["hypothesis_holds"], serde_json::json!(true));
    assert_eq!(v["dual_designs"][0]["blocks"].as_array().unwrap().len(), 5);
    assert_eq!(v["dual_designs"][0]["lambda"], serde_json::json!("1"));
    assert_eq!(v["dual_distribution"]["counts"], serde_json::json!(["1", "0", "75", "0", "180"]));

    // mrd-check: Gabidulin passes, counterexample exits 1
    let gab = dir.path().join("gabidulin_2_4_4_2.json");
    let out = run(&["mrd-check", "--code", gab.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let counter = dir.path().join("counterexample.json");
    let out = run(&["mrd-check", "--code", counter.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["is_mrd"], serde_json::json!(false));
    assert_eq!(v["is_dually_qmrd"], serde_json::json!(false));
}

#[test]
fn design_verify_failure_gives_counterexample_and_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    gen_fixtures(dir.path());
    let spread = dir.path().join("spread_s2.json");
    let out = run(&["am-run", "--code", spread.to_str().unwrap(), "--t", "1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let mut design = v["dual_designs"][0].clone();

    // intact design verifies with lambda = 1
    let good = dir.path().join("good_design.json");
    std::fs::write(&good, serde_json::to_string(&design).unwrap()).unwrap();
    let out = run(&["design-verify", "--design", good.to_str().unwrap(), "--t", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["lambda"], serde_json::json!("1"));

    // drop a block: exit 1 with a witness pair
    let blocks = design["blocks"].as_array_mut().unwrap();
    blocks.pop();
    design["t"] = serde_json::Value::Null;
    design["lambda"] = serde_json::Value::Null;
    let broken = dir.path().join("missing_block.json");
    std::fs::write(&broken, serde_json::to_string(&design).unwrap()).unwrap();
    let out = run(&["design-verify", "--design", broken.to_str().unwrap(), "--t", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["error"], serde_json::json!("not a design"));
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 2);

    // design-dual on the intact spread: self-dual parameters
    let out = run(&["design-dual", "--design", good.to_str().unwrap(), "--t", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["r"], serde_json::json!(2));
    assert_eq!(v["lambda"], serde_json::json!("1"));
}

#[test]
fn am_check_rejects_oversized_strength_as_usage_negative() {
    let dir = tempfile::tempdir().unwrap();
    gen_fixtures(dir.path());
    let spread = dir.path().join("spread_s2.json");
    // d = 2 for the spread code, so t = 2 violates t < d: a domain error
    let out = run(&["am-check", "--code", spread.to_str().unwrap(), "--t", "2"]);
    assert_eq!(out.status.code(), Some(1));
    // and t = 1 passes
    let out = run(&["am-check", "--code", spread.to_str().unwrap(), "--t", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["dual_weights_in_window"], serde_json::json!([2]));
}

#[test]
fn parse_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let out = run(&["weight-dist", "--code", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["weight-dist", "--code", "/nonexistent/nope.json"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_byte_stable_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    gen_fixtures(dir.path());
    let gab = dir.path().join("gabidulin_2_4_4_2.json");
    let gab = gab.to_str().unwrap();
    let mut outputs = Vec::new();
    for threads in ["1", "4"] {
        let out = bin()
            .args(["report", "--code", gab, "--t", "1", "--threads", threads])
            .env("RANKDESIGNS_THREADS", "2")
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        outputs.push(out.stdout);
    }
    assert_eq!(outputs[0], outputs[1]);

    // repeat runs are byte-identical too
    let again = run(&["report", "--code", gab, "--t", "1"]);
    assert_eq!(outputs[0], again.stdout);
}

#[test]
fn gabidulin_command_emits_a_parsable_mrd_code() {
    let out = run(&["gabidulin", "--q", "2", "--m", "4", "--n", "4", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    std::fs::write(&path, stdout(&out)).unwrap();
    let check = run(&["mrd-check", "--code", path.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&check)).unwrap();
    assert_eq!(v["d"], serde_json::json!(3));
}
