use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: Option<&str>) -> (Value, i32) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_superspecial"))
        .args(args)
        .stdin(if stdin.is_some() { Stdio::piped() } else { Stdio::null() })
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    if let Some(s) = stdin {
        child.stdin.take().unwrap().write_all(s.as_bytes()).unwrap();
    }
    let out = child.wait_with_output().unwrap();
    (serde_json::from_slice(&out.stdout).unwrap(), out.status.code().unwrap())
}

#[test]
fn spec_examples() {
    let (v, code) = run(&["eo", "--family", "B", "--m", "2", "--K", "default", "list-cox"], None);
    assert_eq!(code, 0);
    let labels: Vec<&Value> = v.as_array().unwrap().iter().map(|e| &e["label"]).collect();
    assert_eq!(labels, [&serde_json::json!([0, 1]), &serde_json::json!([2])]);

    let (v, _) = run(&["mass", "--n", "3", "--p", "3", "--vol", "1"], None);
    assert_eq!(v, serde_json::json!({ "value": "-1/12", "abs_value": "1/12" }));

    let (v, _) = run(&["dl", "--t", "2", "--kind", "nonsplit", "--p", "3", "--k", "2", "count"], None);
    assert_eq!(v, serde_json::json!({ "points": 2, "orbits": [2] }));
}

#[test]
fn exit_codes() {
    let (v, code) = run(&["invariants", "hilbert", "--a", "1", "--b", "1", "--place", "2"], None);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "domain");
    let (_, code) = run(&["dl", "--t", "2", "--kind", "split", "--p", "11", "--k", "3", "count"], None);
    assert_eq!(code, 3);
    let out = Command::new(env!("CARGO_BIN_EXE_superspecial")).args(["mass", "--bogus"]).output().unwrap();
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn documents_round_trip() {
    // a profile printed by one command is accepted as input by the next
    let (profile, _) = run(&["global", "profile", "--form", "1,1,1,-1,-1"], None);
    let text = profile.to_string();
    let (check, code) = run(&["global", "check", "--in", "-"], Some(&text));
    assert_eq!(code, 0);
    assert_eq!(check["reciprocal"], true);
    let (nearby, _) = run(&["global", "nearby", "--p", "3"], Some(&text));
    let (real, code) = run(&["global", "realize"], Some(&nearby.to_string()));
    assert_eq!(code, 0);
    let form = real["form"].as_array().unwrap();
    assert_eq!(form.len(), 5);

    let (lat, _) = run(&["lattice", "construct", "--p", "5", "--n", "4", "--det", "2", "--eps", "1", "--kind", "self_dual"], None);
    let (rep, _) = run(&["lattice", "vertex"], Some(&lat.to_string()));
    assert_eq!(rep["t"], 0);

    let (m, _) = run(&["mass"], Some(r#"{"n":5,"p":3,"vol":"2"}"#));
    assert_eq!(m["abs_value"], "1/144");
}

#[test]
fn describe_every_subcommand() {
    for sub in ["invariants", "lattice", "global", "eo", "dl", "mass"] {
        let (v, code) = run(&[sub, "--describe"], None);
        assert_eq!(code, 0);
        assert_eq!(v["subcommand"], sub);
    }
}
