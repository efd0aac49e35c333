use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn serre(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_serre")).args(args).output().expect("the binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = serre(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn lattice_dims_and_max_law() {
    let v = json(&["lattice", "--config", &data("generic_b11.json"), "--format", "json"]);
    let dims = v["result"]["dims"].as_array().unwrap();
    let row = dims.iter().find(|r| r["a"] == serde_json::json!([1, 0])).unwrap();
    assert_eq!(row["dim"], 1);
    assert!(v["result"]["max_law"].as_array().unwrap().iter().all(|r| r["holds"] == true));
    assert_eq!(v["verified"], true);
}

#[test]
fn counterexample_p5_b2() {
    let v = json(&["counterexample", "--p", "5", "--b", "2", "--format", "json"]);
    let r = &v["result"];
    assert_eq!(r["mu_lcris"], serde_json::json!([1]));
    assert_eq!(r["mu_prime_lcris"], serde_json::json!([2]));
    assert_eq!(r["types"].as_array().unwrap().len(), 1);
    assert_eq!(r["types"][0], r["expected_type"]);
}

#[test]
fn counterexample_respects_limit() {
    let out = serre(&["counterexample", "--p", "7", "--b", "2", "--limit", "max_q=25"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("size limit"));
}

#[test]
fn non_generic_partition_is_a_domain_error() {
    let out = serre(&["partition", "--config", &data("non_generic.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not generic"));
}

#[test]
fn malformed_config_names_the_field() {
    let out = serre(&["models", "--config", &data("malformed.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("\"/tau/nu_prime/1\""));
}

#[test]
fn missing_config_and_bad_usage() {
    assert_eq!(serre(&["weights"]).status.code(), Some(1));
    assert_eq!(serre(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(serre(&["--help"]).status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    for cmd in ["weights", "partition", "types", "lattice"] {
        let args = [cmd, "--config", &data("generic_b11.json"), "--format", "json"];
        assert_eq!(serre(&args).stdout, serre(&args).stdout, "{cmd}");
    }
    let args = ["verify", "--criterion", "6", "--seed", "7", "--format", "json"];
    assert_eq!(serre(&args).stdout, serre(&args).stdout);
}

#[test]
fn partition_cardinalities() {
    let v = json(&["partition", "--config", &data("generic_b11.json"), "--format", "json"]);
    let cells = v["result"]["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 4);
    // b = (1, 1) sits strictly inside the band, so every δ_a = f
    assert!(cells.iter().all(|c| c["W_a"].as_array().unwrap().len() == 1));
}

#[test]
fn ext_and_hom_agree_with_the_oracle() {
    let e = json(&["ext", "--config", &data("modules.json"), "--format", "json"]);
    assert_eq!(e["result"]["dim"], e["result"]["oracle"]["coker"]);
    let h = json(&["hom", "--config", &data("modules.json"), "--format", "json"]);
    assert_eq!(h["result"]["exists"], true);
    assert_eq!(h["result"]["oracle_dim"], 1);
}

#[test]
fn models_mark_extremes() {
    let out = serre(&["models", "--config", &data("modules.json")]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("min") && text.contains("max"));
}

#[test]
fn tres_ramifiee_shape() {
    let v = json(&["weights", "--config", &data("shape.json"), "--format", "json"]);
    assert_eq!(v["result"]["shape"], serde_json::json!([{ "m": [0, 0], "n": [6, 6] }]));
    assert_eq!(v["result"]["mu_of_jd"]["lcris_dim"], 1);
}

#[test]
fn csv_and_out_file() {
    let dir = std::env::temp_dir().join(format!("serre-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("types.csv");
    let out = serre(&["types", "--config", &data("generic_b11.json"), "--format", "csv", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# types\na,lambda,lambda',scalar,constituents,provenance\n"));
    assert_eq!(text.lines().count(), 2 + 4);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_reports_per_criterion() {
    let v = json(&["verify", "--criterion", "7", "--criterion", "8", "--format", "json"]);
    let crit = v["result"]["criteria"].as_array().unwrap();
    assert_eq!(crit.len(), 2);
    assert!(crit.iter().all(|c| c["passed"] == true));
}
