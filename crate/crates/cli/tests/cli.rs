//! End-to-end checks of the command-line surface: file schemas, reports,
//! exit codes and determinism.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pqc"))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn classify_line_plane_ball_single() {
    let dir = tempfile::tempdir().unwrap();
    let line = write(dir.path(), "line.json", r#"{"states":[[0.5,0,0],[0,0.5,0]]}"#);
    let v = json(&bin().args(["classify", "--states", &line]).output().unwrap());
    assert_eq!(v["dim"], 1);
    assert!((v["delta"].as_f64().unwrap() - 0.125f64.sqrt()).abs() < 1e-12);

    let tetra = write(
        dir.path(),
        "tetra.json",
        r#"{"states":[[0,0,0],[0.8,0,0],[0,0.8,0],[0,0,0.8]]}"#,
    );
    let v = json(&bin().args(["classify", "--states", &tetra]).output().unwrap());
    assert_eq!(v["dim"], 3);
    assert_eq!(v["delta"], 0.0);

    let single = write(dir.path(), "one.json", r#"{"states":[[0,0,1]]}"#);
    let v = json(&bin().args(["classify", "--states", &single]).output().unwrap());
    assert_eq!(v["dim"], 0);
    assert!((v["delta"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn optimal_emits_loadable_channel() {
    let dir = tempfile::tempdir().unwrap();
    let ball = write(
        dir.path(),
        "ball.json",
        r#"{"states":[[0,0,0],[0.9,0,0],[0,0.9,0],[0,0,0.9]]}"#,
    );
    let out = dir.path().join("ch.json");
    let v = json(
        &bin()
            .args(["optimal", "--states", &ball, "--theta", "0", "--out"])
            .arg(&out)
            .output()
            .unwrap(),
    );
    assert!((v["entropy"].as_f64().unwrap() - 2.0).abs() < 1e-9);
    assert_eq!(v["channel"]["lambdas"], serde_json::json!([0.0, 0.0, 0.0]));

    // The emitted file verifies against its own plaintext set.
    let v = json(
        &bin()
            .args(["verify", "--channel", out.to_str().unwrap(), "--states", &ball])
            .output()
            .unwrap(),
    );
    assert_eq!(v["ok"], true);
    assert!(v["max_deviation"].as_f64().unwrap() < 1e-9);
}

#[test]
fn optimal_plane_and_line_reach_one_bit() {
    let dir = tempfile::tempdir().unwrap();
    let plane = write(
        dir.path(),
        "plane.json",
        r#"{"states":[[0.3,0,0.5],[0,0.3,0.5],[-0.3,0,0.5]]}"#,
    );
    let v = json(&bin().args(["optimal", "--states", &plane, "--theta", "0.5"]).output().unwrap());
    assert!((v["entropy"].as_f64().unwrap() - 1.0).abs() < 1e-9);

    let line = write(dir.path(), "line.json", r#"{"states":[[0.5,0,0.2],[0,0.5,0.2]]}"#);
    let v = json(&bin().args(["optimal", "--states", &line, "--theta", "0.1"]).output().unwrap());
    assert!((v["entropy"].as_f64().unwrap() - 1.0).abs() < 1e-9);
}

#[test]
fn verify_reports_epsilon_for_approximate_channels() {
    let dir = tempfile::tempdir().unwrap();
    let eigenstates = write(
        dir.path(),
        "six.json",
        r#"{"states":[[1,0,0],[-1,0,0],[0,1,0],[0,-1,0],[0,0,1],[0,0,-1]]}"#,
    );
    let not3 = write(
        dir.path(),
        "not3.json",
        r#"{"lambdas":[-0.3333333333333333,-0.3333333333333333,-0.3333333333333333]}"#,
    );
    let v = json(
        &bin()
            .args(["verify", "--channel", &not3, "--states", &eigenstates, "--epsilon", "0.667"])
            .output()
            .unwrap(),
    );
    assert_eq!(v["ok"], true);
    assert!((v["epsilon"].as_f64().unwrap() - 2.0 / 3.0).abs() < 1e-9);

    // The identity hides nothing.
    let id = write(dir.path(), "id.json", r#"{"lambdas":[1,1,1]}"#);
    let v = json(&bin().args(["verify", "--channel", &id, "--states", &eigenstates]).output().unwrap());
    assert_eq!(v["ok"], false);
    assert!((v["max_deviation"].as_f64().unwrap() - 2.0).abs() < 1e-12);
}

#[test]
fn channel_terms_form_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    // Phase channel {I, sigma_z} written as explicit terms.
    let terms = write(
        dir.path(),
        "phase.json",
        r#"{"terms":[
            {"p":0.5,"u":[[1,0],[0,0],[0,0],[1,0]]},
            {"p":0.5,"u":[[1,0],[0,0],[0,0],[-1,0]]}
        ]}"#,
    );
    let axis = write(dir.path(), "z.json", r#"{"states":[[0,0,0.7],[0,0,-0.2]]}"#);
    let v = json(&bin().args(["verify", "--channel", &terms, "--states", &axis]).output().unwrap());
    // sigma_z preserves the z axis, so both states pass through unchanged.
    assert_eq!(v["ok"], false);
    assert!((v["max_deviation"].as_f64().unwrap() - 0.9).abs() < 1e-12);

    let equator = write(dir.path(), "x.json", r#"{"states":[[0.8,0,0],[-0.8,0,0],[0,0.8,0]]}"#);
    let v = json(&bin().args(["verify", "--channel", &terms, "--states", &equator]).output().unwrap());
    assert_eq!(v["ok"], true);
}

#[test]
fn frontier_csv_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("frontier.csv");
    let status = bin()
        .args(["frontier", "--step", "0.02", "--bin", "0.1", "--brute", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "epsilon,H_analytic,H_brute,lx,ly,lz");
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[0], "0");
    assert_eq!(first[1], "2");
    // 21 data rows: bins at 0, 0.1, ..., 2.0.
    assert_eq!(text.lines().count(), 22);
}

#[test]
fn simulate_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let states = write(dir.path(), "s.json", r#"{"states":[[0,0,1],[1,0,0]]}"#);
    let depol = write(dir.path(), "d.json", r#"{"lambdas":[0,0,0]}"#);
    let args = ["simulate", "--channel", &depol, "--states", &states, "--n", "500", "--seed", "9"];
    let a = bin().args(args).output().unwrap();
    let b = bin().args(args).output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["n_slots"], 500);
    assert!(v["max_roundtrip_error"].as_f64().unwrap() < 1e-12);
    assert!(v["max_eavesdropper_deviation"].as_f64().unwrap() < 1e-9);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let line = write(dir.path(), "line.json", r#"{"states":[[0.5,0,0],[0,0.5,0]]}"#);
    let junk = write(dir.path(), "junk.json", r#"{"nope":1}"#);
    let far = write(dir.path(), "far.json", r#"{"states":[[2,0,0]]}"#);
    let noncp = write(dir.path(), "noncp.json", r#"{"lambdas":[1,1,-1]}"#);

    let code = |out: Output| out.status.code().unwrap();
    assert_eq!(code(bin().args(["classify", "--states", &junk]).output().unwrap()), 2);
    assert_eq!(code(bin().args(["classify", "--states", &far]).output().unwrap()), 3);
    assert_eq!(
        code(bin().args(["optimal", "--states", &line, "--theta", "0.9"]).output().unwrap()),
        4
    );
    assert_eq!(
        code(bin().args(["verify", "--channel", &noncp, "--states", &line]).output().unwrap()),
        5
    );
}
