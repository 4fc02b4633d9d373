use std::process::{Command, Output};

use serde_json::Value;

fn biwkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_biwkit")).args(args).env_remove("BIWKIT_PRECISION").output().unwrap()
}

fn doc(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn verify_algebra_at_zero_passes() {
    let out = biwkit(&["verify-algebra", "--params", "0,0,0,0", "--degree", "20"]);
    assert_eq!(out.status.code(), Some(0));
    let v = doc(&out);
    assert_eq!(v["schema"], "biwkit/1");
    assert_eq!(v["command"], "verify-algebra");
    assert_eq!(v["pass"], true);
}

#[test]
fn poly_prints_exact_coefficients() {
    let out = biwkit(&["poly", "--params", "0,0,0,0", "--n-max", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = doc(&out);
    let b2 = v["result"]["polynomials"][2].as_array().unwrap();
    let re: Vec<&str> = b2.iter().map(|c| c["re"].as_str().unwrap()).collect();
    assert_eq!(re, ["1", "0", "1"]);
    assert!(b2.iter().all(|c| c["im"] == "0"));
}

#[test]
fn decimal_input_is_exact() {
    let a = biwkit(&["poly", "--params", "0.5,0.25,-1.5,2", "--n-max", "3"]);
    let b = biwkit(&["poly", "--params", "1/2,1/4,-3/2,2", "--n-max", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn degenerate_parameters_exit_3() {
    let out = biwkit(&["verify-algebra", "--params", "0,0,-2,0", "--degree", "20"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(doc(&out)["error"]["kind"], "DegenerateParameters");
}

#[test]
fn invalid_input_exit_3() {
    assert_eq!(biwkit(&["poly", "--params", "1,2,3"]).status.code(), Some(3));
    assert_eq!(biwkit(&["poly"]).status.code(), Some(3));
    assert_eq!(biwkit(&["frobnicate"]).status.code(), Some(3));
    let both = biwkit(&["poly", "--params", "0,0,0,0", "--daha-params", "0,0,0,0"]);
    assert_eq!(both.status.code(), Some(3));
    let ortho = biwkit(&["ortho", "--params", "0,0,0,0"]);
    assert_eq!(ortho.status.code(), Some(3));
    assert_eq!(doc(&ortho)["error"]["kind"], "InvalidParameters");
}

#[test]
fn tampered_constant_exits_2() {
    let out = biwkit(&["verify-algebra", "--params", "0,0,0,0", "--degree", "8", "--debug-tamper"]);
    assert_eq!(out.status.code(), Some(2));
    let v = doc(&out);
    assert_eq!(v["pass"], false);
    assert_eq!(v["result"]["summary"][0]["stage"], "bi-algebra");
    assert_eq!(v["result"]["summary"][0]["pass"], false);
    assert_eq!(v["result"]["summary"][1]["pass"], true);
}

#[test]
fn output_is_deterministic() {
    let args = ["rep", "--real-params", "1/2,1/3,2,1/5", "--n-max", "20", "--precision", "30"];
    let a = biwkit(&args);
    let b = biwkit(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn precision_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_biwkit"))
        .args(["rep", "--real-params", "1/2,1/2,1/2,1/2", "--n-max", "12"])
        .env("BIWKIT_PRECISION", "20")
        .output()
        .unwrap();
    let v = doc(&out);
    assert_eq!(v["result"]["stages"][1]["result"]["precision_digits"], 20);
    let out = biwkit(&["rep", "--real-params", "1/2,1/2,1/2,1/2", "--n-max", "12"]);
    assert_eq!(doc(&out)["result"]["stages"][1]["result"]["precision_digits"], 50);
}

#[test]
fn output_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("biwkit-cli-{}.json", std::process::id()));
    let out = biwkit(&["wilson", "--daha-params", "1/4,1/4,0,0", "--n-max", "3", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(v["command"], "wilson");
    assert_eq!(v["result"]["polynomials"].as_array().unwrap().len(), 4);
}

#[test]
fn approximate_leaves_are_tagged() {
    let out = biwkit(&["rep", "--real-params", "1/2,1/2,1/2,1/2", "--n-max", "10", "--precision", "30"]);
    let v = doc(&out);
    let rel2 = &v["result"]["stages"][1]["result"]["residuals"]["rel2"];
    assert!(rel2["approx"].is_string());
    assert_eq!(rel2["precision_digits"], 30);
}

#[test]
fn every_verification_command_passes_on_generic_parameters() {
    for cmd in ["verify-eigen", "verify-daha", "verify-iso", "verify-prop1"] {
        let out = biwkit(&[cmd, "--params", "1/2,1/3,1/5+i,2", "--degree", "10", "--n-max", "10"]);
        assert_eq!(out.status.code(), Some(0), "{cmd}");
        assert_eq!(doc(&out)["pass"], true, "{cmd}");
    }
}

#[test]
fn all_stages_pass_with_defaults() {
    let out = biwkit(&["all", "--real-params", "1/2,1/2,1/2,1/2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = doc(&out);
    let summary = v["result"]["summary"].as_array().unwrap();
    assert!(summary.len() >= 15);
    assert!(summary.iter().all(|s| s["pass"] == true));
    let ortho = summary.iter().position(|s| s["stage"] == "orthogonality").unwrap();
    assert_eq!(v["result"]["stages"][ortho]["result"]["precision_digits"], 50);
}

#[test]
fn quadrature_non_convergence_exits_4() {
    let out = biwkit(&[
        "ortho",
        "--real-params",
        "1/2,1/2,1/2,1/2",
        "--n-max",
        "1",
        "--precision",
        "15",
        "--tol",
        "1e-40",
        "--max-doublings",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(doc(&out)["error"]["kind"], "QuadratureNotConverged");
}
