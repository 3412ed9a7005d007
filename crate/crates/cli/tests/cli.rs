use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn weylfan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weylfan"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = weylfan(&full);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    });
    (out.status.code().unwrap(), v)
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn hexagon(dir: &Path) -> String {
    write(dir, "hex.json", r#"{"type":"A","rank":2,"build":[{"orbit":[1,1]}]}"#)
        .to_string_lossy()
        .into_owned()
}

fn strip_seconds(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.remove("seconds");
            m.values_mut().for_each(strip_seconds);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_seconds),
        _ => {}
    }
}

#[test]
fn info_a2() {
    let (code, v) = json(&["info", "--type", "A", "--rank", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["system"], "A2");
    assert_eq!(v["result"]["roots"], 6);
    assert_eq!(v["result"]["weyl_order"], 6);
    assert_eq!(v["result"]["positive_roots"].as_array().unwrap().len(), 3);
    let text = String::from_utf8(weylfan(&["info", "--type", "A", "--rank", "2"]).stdout).unwrap();
    assert!(text.contains("roots: 6 (3 positive)") && text.contains("|W| = 6"), "{text}");
}

#[test]
fn exit_codes() {
    assert_eq!(weylfan(&[]).status.code(), Some(2));
    assert_eq!(weylfan(&["--help"]).status.code(), Some(0));
    assert_eq!(weylfan(&["info", "--type", "Q", "--rank", "2"]).status.code(), Some(2));
    assert_eq!(weylfan(&["lambda", "--polytope", "/no/such/file"]).status.code(), Some(2));
    let split = ["check", "diagonal-split", "--type", "A", "--rank", "3", "--q", "2"];
    assert_eq!(weylfan(&split).status.code(), Some(0));
    let mut asserted = split.to_vec();
    asserted.push("--assert");
    assert_eq!(weylfan(&asserted).status.code(), Some(1));
    asserted[7] = "3";
    assert_eq!(weylfan(&asserted).status.code(), Some(0));
}

#[test]
fn lambda_counts_and_round_trip() {
    let dir = TempDir::new().unwrap();
    let hex = hexagon(dir.path());
    let (code, v) = json(&["lambda", "--polytope", &hex, "--count-only"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["count"], 7);

    let emitted = dir.path().join("hex2.json");
    let emitted_s = emitted.to_string_lossy().into_owned();
    let (code, first) = json(&["lambda", "--polytope", &hex, "--dilate", "2", "--emit-spec", &emitted_s]);
    assert_eq!(code, 0);
    let (code, again) = json(&["lambda", "--polytope", &emitted_s]);
    assert_eq!(code, 0);
    assert_eq!(first["result"]["points"], again["result"]["points"]);
    assert!(again["result"]["points"].as_array().unwrap().len() > 7);
}

#[test]
fn decompose_members_and_non_members() {
    let dir = TempDir::new().unwrap();
    let hex = hexagon(dir.path());
    let (code, v) = json(&["decompose", "--polytopes", &hex, &hex, "--z", "1,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["valid"], true);
    let parts = v["result"]["parts"].as_array().unwrap();
    let sum: Vec<i64> = (0..2)
        .map(|k| parts.iter().map(|p| p[k].as_i64().unwrap()).sum())
        .collect();
    assert_eq!(sum, vec![1, 1]);

    let (code, v) = json(&["decompose", "--polytopes", &hex, &hex, "--z", "9,9"]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "fail");
}

#[test]
fn games_are_seeded() {
    let args = ["game", "--type", "A", "--rank", "3", "--config=-1,0,-1", "--strategy", "random", "--seed", "11"];
    let (code, a) = json(&args);
    assert_eq!(code, 0);
    let (_, b) = json(&args);
    assert_eq!(a, b);
    let out = weylfan(&["--format", "json", "game", "--type", "A", "--rank", "3", "--config=-1,0,-1", "--strategy", "random"]);
    assert_eq!(out.status.code(), Some(2));
    let (code, _) = json(&["game", "--type", "A", "--rank", "2", "--config=-1,-1", "--mode", "plain"]);
    assert_eq!(code, 0);
}

#[test]
fn property_checks_on_small_files() {
    let dir = TempDir::new().unwrap();
    let hex = hexagon(dir.path());
    let (code, v) = json(&["check", "normality", "--polytopes", &hex, "--dilate", "2"]);
    assert_eq!(code, 0, "{v}");
    let (code, v) = json(&["check", "quadratic", "--polytopes", &hex, &hex, &hex, "--adjacent-only"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["result"]["disconnected"].as_array().unwrap().len(), 0);
    let (code, v) = json(&["check", "quadratic", "--polytopes", &hex, &hex, "--sum", "0,0"]);
    assert_eq!(code, 0, "{v}");
    let (code, _) = json(&["relations", "--polytope", &hex]);
    assert_eq!(code, 0);
}

#[test]
fn verify_all_is_stable_under_a_seed() {
    let args = ["verify-all", "--seed", "5", "--per-system", "1"];
    let (code, mut a) = json(&args);
    assert_eq!(code, 0, "{a}");
    let (_, mut b) = json(&args);
    strip_seconds(&mut a);
    strip_seconds(&mut b);
    assert_eq!(a, b);
    assert_eq!(a["result"]["criteria"].as_array().unwrap().len(), 8);
}
