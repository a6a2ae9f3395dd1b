use std::process::{Command, Output};

use qloop::modules::RepModule;
use qloop::{Char, QChar, RelationReport};
use serde_json::Value;

fn qloop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qloop")).args(args).env("QLOOP_THREADS", "1").output().expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = qloop(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

/// Parses, re-serializes through the library type and compares with the emitted JSON.
fn round_trips<T: serde::de::DeserializeOwned + serde::Serialize>(v: &Value) {
    let t: T = serde_json::from_value(v.clone()).unwrap();
    assert_eq!(&serde_json::to_value(&t).unwrap(), v);
}

#[test]
fn kr_qchar_has_four_terms() {
    let v = ok_json(&["qchar", "--source", "kr", "--type", "A1", "--i", "1", "--k", "3", "--shift", "-5", "--normalized"]);
    assert_eq!(v["terms"].as_array().unwrap().len(), 4);
    round_trips::<QChar>(&v);
}

#[test]
fn compare_pm_passes() {
    let v = ok_json(&["compare-pm", "--type", "A1", "--i", "1", "--depth", "8"]);
    assert_eq!(v["equal"], Value::Bool(true));
    let v = ok_json(&["compare-pm", "--type", "A2", "--i", "2", "--depth", "5"]);
    assert_eq!(v["equal"], Value::Bool(true));
}

#[test]
fn verify_kr_reports_no_violations() {
    let v = ok_json(&["verify", "--target", "sl2-kr", "--k", "3", "--R", "3", "--M", "3"]);
    assert_eq!(v["relations"]["violations"].as_array().unwrap().len(), 0);
    round_trips::<RelationReport>(&v["relations"]);
    let v = ok_json(&["verify", "--target", "sl3-vinf", "--depth", "5", "--kappa-zero"]);
    assert_eq!(v["pass"], Value::Bool(true));
}

#[test]
fn kappa_zero_fails_on_kr() {
    let out = qloop(&["verify", "--target", "sl2-kr", "--k", "2", "--kappa-zero"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn char_formula_agrees_and_round_trips() {
    let v = ok_json(&["char-formula", "--type", "A2", "--i", "1", "--depth", "6", "--json"]);
    round_trips::<Char>(&v);
    let v = ok_json(&["char-formula", "--type", "A1", "--depth", "8", "--compare"]);
    assert_eq!(v["agrees_with_module"], Value::Bool(true));
    // general types evaluate without a module
    ok_json(&["char-formula", "--type", "D4", "--i", "2", "--depth", "3"]);
}

#[test]
fn limit_dual_and_tensor() {
    let v = ok_json(&["limit", "--type", "A1", "--k-min", "5", "--k-max", "9", "--depth", "4"]);
    assert_eq!(v["agrees_with_vinf"], Value::Bool(true));
    let v = ok_json(&["dual", "--source", "kr", "--k", "2"]);
    round_trips::<RepModule>(&v["module"]);
    let v = ok_json(&["dual", "--source", "vinf", "--type", "A2", "--depth", "3"]);
    round_trips::<Char>(&v["char"]);
    let v = ok_json(&["tensor", "--k1", "1", "--shift1", "-1", "--k2", "1", "--shift2", "-3"]);
    assert!(!v["phi_plus_1_on_top"].is_null());
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["qchar", "--source", "kr", "--type", "B7"],
        vec!["qchar", "--source", "vinf", "--type", "A2", "--i", "3"],
        vec!["char-formula", "--type", "Q2"],
        vec!["verify", "--target", "nonsense"],
        vec!["limit", "--k-min", "9", "--k-max", "5"],
    ] {
        let out = qloop(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn output_is_deterministic_and_canonical() {
    let args = ["dual", "--source", "lplus", "--type", "A2", "--depth", "3"];
    let (a, b) = (qloop(&args), qloop(&args));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(!text.contains('.'), "no floats in canonical output");
    // keys come out sorted
    let v: Value = serde_json::from_str(&text).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}
