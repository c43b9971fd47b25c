use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn ewl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ewl"))
        .args(args)
        .current_dir(root())
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--format", "structured"];
    full.extend_from_slice(args);
    let out = ewl(&full);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    });
    (v, out.status.code().unwrap())
}

fn write_temp(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ewl-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn simulate_classical_profile_is_a_point_mass() {
    let (v, code) = json(&["simulate", "games/dilemma3.json", "-s", "F", "-s", "N", "-s", "F"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], 1);
    let probs: Vec<f64> = serde_json::from_value(v["closed_form"].clone()).unwrap();
    assert!((probs[0b101] - 1.0).abs() < 1e-12);
    let payoffs: Vec<f64> = serde_json::from_value(v["payoffs"].clone()).unwrap();
    for (a, b) in payoffs.iter().zip([3.0, 0.0, 3.0]) {
        assert!((a - b).abs() < 1e-12);
    }
    assert_eq!(v["passed"], true);
}

#[test]
fn simulate_accepts_coefficients_and_random() {
    let h = std::f64::consts::FRAC_1_SQRT_2.to_string();
    let c = format!("{h},0,{h},0");
    let (v, code) = json(&["simulate", "games/zero_sum2.json", "-s", &c, "-s", "N"]);
    assert_eq!(code, 0);
    assert_eq!(v["outcomes"], serde_json::json!(["NN", "NF", "FN", "FF"]));
    let (_, code) = json(&["--seed", "3", "simulate", "games/dilemma3.json", "--random"]);
    assert_eq!(code, 0);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| ewl(args).status.code().unwrap();
    assert_eq!(code(&["simulate", "games/dilemma3.json", "-s", "F", "-s", "N"]), 3);
    assert_eq!(code(&["simulate", "games/dilemma3.json", "-s", "F", "-s", "N", "-s", "1,1,0,0"]), 3);
    assert_eq!(code(&["simulate", "games/dilemma3.json", "-s", "F", "-s", "N", "-s", "Q"]), 2);
    assert_eq!(code(&["simulate", "missing.json", "-s", "F"]), 2);
    assert_eq!(code(&["payoff", "games/dilemma3.json", "--flip-probs", "0.5,1.5,0"]), 3);
    assert_eq!(code(&["payoff", "games/dilemma3.json", "-p", "flip=2", "-p", "N", "-p", "N"]), 3);
    assert_eq!(code(&["payoff", "games/dilemma3.json", "--classical", "NNX"]), 2);
    assert_eq!(code(&["equilibrium", "games/zero_sum2.json", "--mode", "maximin", "--maximizer", "3"]), 3);
    assert_eq!(code(&["verify", "--vanishing"]), 1);
}

#[test]
fn malformed_specs_are_parse_errors() {
    let cases = [
        ("bad_json.json", "{ not json"),
        ("unknown_field.json", r#"{"players": 2, "payoffs": {}, "extra": 1}"#),
        (
            "missing.json",
            r#"{"players": 2, "payoffs": {"NN": [1, 1], "NF": [1, 1], "FN": [1, 1]}}"#,
        ),
        (
            "duplicate.json",
            r#"{"players": 2, "payoffs": {"NN": [1, 1], "NN": [2, 2], "FN": [1, 1], "FF": [0, 0]}}"#,
        ),
        (
            "arity.json",
            r#"{"players": 2, "payoffs": {"NN": [1], "NF": [1, 1], "FN": [1, 1], "FF": [0, 0]}}"#,
        ),
        ("players.json", r#"{"players": 4, "payoffs": {}}"#),
    ];
    for (name, text) in cases {
        let path = write_temp(name, text);
        let out = ewl(&["payoff", path.to_str().unwrap(), "--classical", "NN"]);
        assert_eq!(out.status.code(), Some(2), "{name}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn payoff_modes() {
    let (v, code) = json(&["payoff", "games/dilemma3.json", "--classical", "FNF"]);
    assert_eq!(code, 0);
    assert_eq!(v["payoffs"], serde_json::json!([3.0, 0.0, 3.0]));

    let (v, _) = json(&["payoff", "games/dilemma3.json", "--flip-probs", "0.5,0.5,0.5"]);
    let p: Vec<f64> = serde_json::from_value(v["payoffs"].clone()).unwrap();
    assert!(p.iter().all(|x| (x - 2.5).abs() < 1e-12));

    let (v, _) = json(&["payoff", "games/dilemma3.json", "-p", "flip=0.5", "-p", "N", "-p", "N"]);
    let p: Vec<f64> = serde_json::from_value(v["payoffs"].clone()).unwrap();
    assert_eq!(v["samples"], 0);
    for (a, b) in p.iter().zip([4.5, 3.0, 3.0]) {
        assert!((a - b).abs() < 1e-12);
    }

    let (v, _) = json(&["--samples", "20000", "payoff", "games/dilemma3.json"]);
    let p: Vec<f64> = serde_json::from_value(v["payoffs"].clone()).unwrap();
    let se: Vec<f64> = serde_json::from_value(v["std_errs"].clone()).unwrap();
    for (a, s) in p.iter().zip(&se) {
        assert!(*s > 0.0 && (a - 2.5).abs() <= 4.0 * s);
    }
}

#[test]
fn equilibrium_verify_and_maximin() {
    let (v, code) = json(&["--samples", "20000", "equilibrium", "games/dilemma3.json"]);
    assert_eq!(code, 0);
    assert_eq!(v["confirmed"], true);
    assert_eq!(v["players"].as_array().unwrap().len(), 3);

    // FFF is the strict classical equilibrium; a quantum deviation beats it.
    let (v, code) = json(&["equilibrium", "games/dilemma3.json", "-p", "F", "-p", "F", "-p", "F"]);
    assert_eq!(code, 1);
    assert_eq!(v["confirmed"], false);
    assert!(v["players"][0]["gain"].as_f64().unwrap() > 1.0);

    let (v, code) = json(&["equilibrium", "games/constant3.json", "-p", "N", "-p", "F", "-p", "haar"]);
    assert_eq!(code, 0);
    assert!(v["players"][1]["gain"].as_f64().unwrap() < 1e-9);

    let (v, code) = json(&["--samples", "20000", "equilibrium", "games/zero_sum2.json", "--mode", "maximin", "--restarts", "2"]);
    assert_eq!(code, 0);
    assert!(v["value"].as_f64().unwrap().abs() < 0.06);
    assert!(v["candidates"].as_array().unwrap().len() >= 3);
}

#[test]
fn verify_default_suites_pass() {
    let (v, code) = json(&["--samples", "2000", "verify"]);
    assert_eq!(code, 0, "{v}");
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["theorem1", "orthogonality", "properness", "completeness", "fano"]);
}

#[test]
fn verify_selected_suite_on_given_game() {
    let (v, code) = json(&["verify", "--completeness", "--game", "games/zero_sum2.json"]);
    assert_eq!(code, 0);
    assert_eq!(v["checks"].as_array().unwrap().len(), 1);
    assert_eq!(v["checks"][0]["measurements"].as_array().unwrap().len(), 1);
}

#[test]
fn table_output_is_readable() {
    let out = ewl(&["--samples", "500", "verify", "--fano"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[PASS] fano"));
    assert!(text.contains("all checks passed"));
}
