use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

const POLE_HALF: &str = r#"{"numerator":[[1,0]],"poles":[{"re":0.5,"im":0,"mult":1}]}"#;
const POLE_I: &str = r#"{"numerator":[[1,0]],"poles":[{"re":0,"im":1,"mult":1}]}"#;
const POLE_NEG1: &str = r#"{"numerator":[[1,0]],"poles":[{"re":-1,"im":0,"mult":1}]}"#;
const PSTAR2: &str = r#"{"numerator":[[-1,0],[2,0],[4,0]],"poles":[]}"#;

fn ratquad(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ratquad"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn num(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

fn scratch(name: &str, body: &[u8]) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn circle_nodes_for_a_single_pole() {
    let v = json(&ratquad(&[
        "nodes", "--domain", "circle", "--r", "1", "--m", "1", "--phi", "0", "--spec", POLE_HALF,
    ]));
    assert_eq!(v["type"], "notch_set");
    let nodes = v["nodes"].as_array().unwrap();
    assert_eq!(nodes.len(), 2);
    let mut xs: Vec<f64> = nodes.iter().map(|n| num(&n["theta"]).cos()).collect();
    xs.sort_by(f64::total_cmp);
    assert!((xs[0] + 1.0).abs() < 1e-14 && (xs[1] - 1.0).abs() < 1e-14);
}

#[test]
fn axis_node_at_infinity() {
    let path = scratch("pole-i.json", POLE_I.as_bytes());
    let v = json(&ratquad(&[
        "nodes",
        "--domain",
        "axis",
        "--m",
        "1",
        "--phi",
        "0",
        "--spec",
        path.to_str().unwrap(),
    ]));
    assert_eq!(v["nodes"], serde_json::json!([{"inf": true}]));
}

#[test]
fn pole_on_contour_is_an_input_error() {
    let out = ratquad(&[
        "nodes",
        "--domain",
        "circle",
        "--spec",
        r#"{"numerator":[[1,0]],"poles":[{"re":0,"im":1}]}"#,
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "PoleOnContour");
}

#[test]
fn malformed_flags_give_error_json() {
    let out = ratquad(&["nodes", "--domain", "moon"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "InvalidInput");
    let out = ratquad(&["norm", "--domain", "axis"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn axis_norm_with_oracle() {
    let v = json(&ratquad(&[
        "norm", "--domain", "axis", "--m", "1", "--phi", "1.0", "--spec", POLE_I, "--verify",
    ]));
    assert!((num(&v["value"][0]) - PI).abs() < 1e-12);
    assert!((num(&v["oracle"]["value"][0]) - PI).abs() < 1e-10);
    assert!(num(&v["oracle"]["discrepancy"]) <= 1e-10);
}

#[test]
fn semiaxis_integral() {
    let v = json(&ratquad(&[
        "integrate",
        "--domain",
        "semiaxis",
        "--weight",
        "inv_sqrt",
        "--spec",
        POLE_NEG1,
        "--verify",
    ]));
    assert!((num(&v["value"][0]) - PI).abs() < 1e-12);
    assert!(num(&v["value"][1]).abs() < 1e-12);
}

#[test]
fn segment_norm_matches_oracle() {
    let path = scratch("pstar2.json", PSTAR2.as_bytes());
    let v = json(&ratquad(&[
        "norm",
        "--domain",
        "segment",
        "--m",
        "2",
        "--phi",
        "0.7",
        "--spec",
        path.to_str().unwrap(),
        "--verify",
    ]));
    assert!(num(&v["oracle"]["discrepancy"]) <= 1e-8);
}

#[test]
fn circle_constant_beats_baranov() {
    let v = json(&ratquad(&[
        "constant",
        "--domain",
        "circle",
        "--p",
        "2",
        "--q",
        "inf",
        "--n",
        "2",
        "--delta",
        "0.5",
        "--geometric",
        "--compare-baranov",
    ]));
    assert_eq!(v["q"], "inf");
    let ours = (7.0 / (2.0 * PI)).sqrt();
    let baranov = (3.0 * 3.0 / (2.0 * PI)).sqrt();
    assert!((num(&v["value"]) - ours).abs() < 1e-14);
    assert!((num(&v["baranov"]) - baranov).abs() < 1e-14);
    assert!(num(&v["ratio"]) < 1.0);
}

#[test]
fn rho_p_witness() {
    let v = json(&ratquad(&["extremal", "--kind", "rho_p", "--p", "2"]));
    let pole = &v["spf"]["poles"][0];
    assert!(num(&pole[0]).abs() < 1e-15);
    assert!((num(&pole[1]) - PI).abs() < 1e-12);
    assert!((num(&v["sharpness"]["lhs"]) - 2.0).abs() < 1e-8);
    assert_eq!(v["equality"], true);
}

#[test]
fn violated_bound_exits_one() {
    // The delta = 0.1 annulus constant does not cover a pole at 0.9.
    let args = [
        "bound",
        "--which",
        "nikolskii",
        "--domain",
        "circle",
        "--p",
        "2",
        "--q",
        "inf",
        "--geometric",
        "--n",
        "1",
        "--delta",
        "0.1",
        "--spec",
    ];
    let out = ratquad(
        &[
            &args[..],
            &[r#"{"numerator":[[1,0]],"poles":[{"re":0.9,"im":0}]}"#],
        ]
        .concat(),
    );
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["holds"], false);
    let out = ratquad(
        &[
            &args[..],
            &[r#"{"numerator":[[1,0]],"poles":[{"re":0.05,"im":0}]}"#],
        ]
        .concat(),
    );
    assert_eq!(json(&out)["holds"], true);
}

#[test]
fn two_sided_spf_is_rejected() {
    let out = ratquad(&[
        "bound",
        "--which",
        "spf",
        "--spec",
        r#"{"poles":[[0,1],[0,-1]]}"#,
        "--p",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "PolesOnBothSides");
}

#[test]
fn suite_passes() {
    let out = ratquad(&["suite", "--seed", "3"]);
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 11);
    let lines = String::from_utf8(out.stderr).unwrap();
    assert_eq!(lines.lines().filter(|l| l.starts_with("PASS")).count(), 11);
}

#[test]
fn every_output_round_trips() {
    let runs: Vec<Vec<&str>> = vec![
        vec![
            "nodes", "--domain", "circle", "--m", "2", "--phi", "1.3", "--spec", POLE_HALF,
        ],
        vec![
            "nodes", "--domain", "axis", "--spec", POLE_I, "--sweep", "4",
        ],
        vec![
            "norm", "--domain", "axis", "--phi", "1.0", "--spec", POLE_I, "--verify",
        ],
        vec![
            "constant",
            "--domain",
            "circle",
            "--p",
            "2",
            "--q",
            "inf",
            "--n",
            "2",
            "--delta",
            "0.5",
            "--geometric",
        ],
        vec![
            "bound",
            "--which",
            "spf",
            "--spec",
            r#"{"poles":[[0,1],[1,2]]}"#,
            "--p",
            "3",
        ],
        vec!["extremal", "--kind", "rho_p", "--p", "4"],
        vec!["sigma", "--p", "3", "--n", "4"],
    ];
    for (i, args) in runs.iter().enumerate() {
        let first = ratquad(args);
        assert!(first.status.success(), "{args:?}");
        let path = scratch(&format!("round-trip-{i}.json"), &first.stdout);
        let again = ratquad(&["--from-json", path.to_str().unwrap()]);
        assert!(
            again.status.success(),
            "{args:?}: {}",
            String::from_utf8_lossy(&again.stderr)
        );
        assert_eq!(again.stdout, first.stdout, "{args:?}");
    }
}

#[test]
fn request_documents_run_like_flags() {
    let flags = ratquad(&[
        "norm", "--domain", "axis", "--m", "2", "--phi", "0.4", "--spec", POLE_I,
    ]);
    let request =
        format!(r#"{{"command":"norm","domain":"axis","m":2,"phi":0.4,"function":{POLE_I}}}"#);
    let path = scratch("request.json", request.as_bytes());
    let from_json = ratquad(&["--from-json", path.to_str().unwrap()]);
    assert_eq!(from_json.stdout, flags.stdout);
}

#[test]
fn output_is_deterministic() {
    let args = ["suite", "--seed", "11"];
    assert_eq!(ratquad(&args).stdout, ratquad(&args).stdout);
    let args = [
        "nodes", "--domain", "segment", "--spec", PSTAR2, "--sweep", "5", "--csv",
    ];
    let a = ratquad(&args);
    assert_eq!(a.stdout, ratquad(&args).stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert_eq!(text.lines().count(), 1 + 5 * 5);
}
