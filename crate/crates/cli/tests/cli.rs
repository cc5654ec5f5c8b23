use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn specs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../specs")
}

fn vfcr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vfcr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn spec(name: &str) -> String {
    specs().join(name).to_string_lossy().into_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const GOLDEN_INIT: &str = r#"{"a":[1,1,1,0],"m":[0,0,0,1]}"#;

#[test]
fn simulate_bits_reproduces_the_golden_rows() {
    let out = vfcr(&["simulate", "--spec", &spec("golden.json"), "--init", GOLDEN_INIT, "--steps", "46"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with('#'));
    assert_eq!(lines.next().unwrap(), "a0_0 1000111010010011000010000011010111000101101100");
    assert_eq!(lines.next().unwrap(), "a0_1 1110111110010100011101001001100001000001101011");
    assert_eq!(lines.next().unwrap(), "a1_0 1111011111001010001110100100110000100000110101");
    assert_eq!(lines.next().unwrap(), "a1_1 0100101101100111101111100101000111010010011000");
    assert!(lines.next().is_none());
}

#[test]
fn simulate_csv_and_bytes() {
    let out = vfcr(&["simulate", "--spec", &spec("golden.json"), "--init", GOLDEN_INIT, "--steps", "4", "--format", "csv"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "1,0,0,0\n1,1,1,0\n1,1,1,1\n0,1,0,0\n");

    let out = vfcr(&["simulate", "--spec", &spec("golden.json"), "--init", GOLDEN_INIT, "--steps", "4", "--format", "bytes"]);
    // Cell 0 = (a0_0, a0_1) packed little-endian.
    assert_eq!(out.stdout, vec![0b11, 0b10, 0b10, 0b00]);
}

#[test]
fn simulate_structured_has_carries() {
    let out = vfcr(&["simulate", "--spec", &spec("golden.json"), "--init", GOLDEN_INIT, "--steps", "3", "--format", "structured"]);
    let doc = json(&out);
    assert_eq!(doc["memory"][1], serde_json::json!([0, 1, 2]));
    assert_eq!(doc["init"]["m"], serde_json::json!(["0", "0", "0", "1"]));
}

#[test]
fn analyze_golden() {
    let out = vfcr(&["analyze", "--spec", &spec("golden.json"), "--init", GOLDEN_INIT, "--reconstruct"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["determinant"], "-61");
    assert_eq!(doc["connection_norm"], "61");
    assert_eq!(doc["order"], "60");
    assert_eq!(doc["memory_weights"], serde_json::json!([3, 5, 1, 2]));
    assert_eq!(doc["cycle"]["period"], 60);
    for cell in doc["cells"].as_array().unwrap() {
        let q: u64 = cell["reduced"]["q"].as_str().unwrap().parse().unwrap();
        assert_eq!(61 % q, 0);
    }
}

#[test]
fn analyze_fibonacci_cross_checks_the_norm() {
    let out = vfcr(&["analyze", "--spec", &spec("fibonacci-11.json")]);
    let doc = json(&out);
    assert_eq!(doc["connection_norm"], "11");
    assert_eq!(doc["norms_agree"], true);
    assert_eq!(doc["connection_integer"], serde_json::json!(["3", "2"]));
    assert!(doc["cells"].is_null());
}

#[test]
fn reconstruct_without_init_is_a_usage_error() {
    let out = vfcr(&["analyze", "--spec", &spec("golden.json"), "--reconstruct"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn enumerate_vfcr_q() {
    let out = vfcr(&["enumerate", "--family", "vfcr-q", "--r", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["model_count"], 256);
    assert_eq!(doc["l_sequence_periods"], serde_json::json!([4, 10, 18, 28, 60]));

    let out = vfcr(&["enumerate", "--family", "binary-fcr", "--r", "2", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("family,r,n,q_tilde,max_period,witness_spec\n"));
    assert!(text.contains("binary-fcr,2,1,5,4,T="));
}

#[test]
fn unknown_family_is_a_usage_error() {
    assert_eq!(vfcr(&["enumerate", "--family", "nope", "--r", "2"]).status.code(), Some(2));
}

#[test]
fn search_finds_and_reports_exhaustion() {
    let out = vfcr(&["search", "--r", "2", "--count", "2", "--seed", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let hits = json(&out);
    assert_eq!(hits.as_array().unwrap().len(), 2);
    let again = json(&vfcr(&["search", "--r", "2", "--count", "2", "--seed", "5"]));
    assert_eq!(hits, again);

    let out = vfcr(&["search", "--r", "1", "--poly", "11"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn check_triplet_exit_codes() {
    let out = vfcr(&["check-triplet", "11", "3", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!((doc["form_ok"].clone(), doc["prime"].clone(), doc["primitive_root"].clone()), (true.into(), true.into(), true.into()));

    let out = vfcr(&["check-triplet", "10", "3", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["form_ok"], false);

    // q - 1 = 2 * 10000019 * 10000537 cannot be factored without rho.
    let out = vfcr(&["check-triplet", "200011120020407", "1", "1", "--budget", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["primitive_root"], "skipped: factorization budget");
}

#[test]
fn bad_inputs_are_usage_errors() {
    assert_eq!(vfcr(&["simulate", "--spec", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(
        vfcr(&["simulate", "--spec", &spec("golden.json"), "--init", r#"{"a":[1],"m":[0]}"#]).status.code(),
        Some(2)
    );
    assert_eq!(vfcr(&["simulate"]).status.code(), Some(2));
}
