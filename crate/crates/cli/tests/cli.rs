use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn dmod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dmod")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    let o = dmod(&a);
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}: {}", stdout(&o)))
}

#[test]
fn certify_writes_a_certified_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let p = path.to_str().unwrap();
    let o = dmod(&["certify", "--q", "2", "--r", "2", "--n", "t", "--samples", "32", "--seed", "7", "--out", p]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["verdict"], "certified");
    assert_eq!(report["group_order"], 6);
    assert!(report["samples"].as_array().unwrap().len() <= 32);
    // the report parses back into the library type
    let back: dmod_core::CertificationReport = serde_json::from_value(report).unwrap();
    assert!(back.certified());
}

#[test]
fn certify_output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let read = |name: &str| {
        let path = dir.path().join(name);
        let o = dmod(&["certify", "--q", "3", "--r", "2", "--n", "t", "--seed", "5", "--out", path.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
        std::fs::read(Path::new(&path)).unwrap()
    };
    assert_eq!(read("a.json"), read("b.json"));
}

#[test]
fn tiny_budget_is_inconclusive() {
    let o = dmod(&["certify", "--q", "2", "--r", "2", "--n", "t", "--samples", "1", "--seed", "7"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("inconclusive"));
}

#[test]
fn group_order_examples() {
    let o = dmod(&["group", "--q", "2", "--r", "2", "--n", "t", "--op", "order"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "6");
    // |GL_2(F_3)| = 48, |GL_2(F_2[t]/t^2)| = 6 * 16
    assert_eq!(stdout(&dmod(&["group", "--q", "3", "--r", "2", "--n", "t"])).trim(), "48");
    assert_eq!(stdout(&dmod(&["group", "--q", "2", "--r", "2", "--n", "t^2"])).trim(), "96");
    // kernels of GL_2(A/t n A) -> GL_2(A/tA): 2^4 for n = t, 2^8 for n = t^2
    assert_eq!(json(&["group", "--q", "2", "--r", "2", "--n", "t", "--op", "kernelG"])["value"], 16);
    assert_eq!(json(&["group", "--q", "2", "--r", "2", "--n", "t^2", "--op", "kernelG"])["value"], 256);
    assert_eq!(json(&["group", "--q", "3", "--r", "2", "--n", "t", "--op", "kernelS"])["value"], 27);
    assert_eq!(code(&dmod(&["group", "--q", "2", "--r", "2", "--n", "t^2", "--op", "factorcheck"])), 0);
}

#[test]
fn verify_single_case_and_grid() {
    let o = dmod(&["verify", "--suite", "prop1", "--q", "2", "--r", "1", "--n", "t", "--seed", "1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("PASS"));
    let rep = json(&["verify", "--suite", "groups", "--samples", "1"]);
    let cases = rep["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 16);
    assert!(cases.iter().all(|c| c["pass"] == true));
}

#[test]
fn psi_and_torsion_reports() {
    let p = json(&["psi", "--q", "2", "--theta", "1", "--coeffs", "1", "--r", "2", "--n", "t"]);
    assert_eq!(p["j_invariants"], serde_json::json!(["[1]"]));
    assert_eq!(p["psi_n"]["coeffs"], serde_json::json!(["[1]", "[1]", "[1]"]));
    let t = json(&["torsion", "--q", "2", "--theta", "1", "--coeffs", "1", "--r", "2", "--n", "t"]);
    // X^4 + X^2 + X splits over F_8
    assert_eq!(t["ext_degree"], 3);
    assert_eq!(t["count"], 4);
    assert_eq!(t["basis"].as_array().unwrap().len(), 2);
}

#[test]
fn moore_modes() {
    let m = json(&["moore", "--q", "2", "--theta", "1", "--coeffs", "1", "--r", "2"]);
    assert_eq!(m["reproduces_psi_t"], true);
    let dep = json(&["moore", "--q", "2", "--m", "2", "--coeffs", "[0,1],[0,1]"]);
    assert_eq!(dep["det"], "[0,0]");
    assert_eq!(dep["interpolation"], Value::Null);
}

#[test]
fn frobenius_order_matches_splitting_degree() {
    let f = json(&["frobenius", "--q", "2", "--theta", "1", "--coeffs", "1", "--r", "2", "--n", "t"]);
    assert_eq!(f["order"], 3);
    assert_eq!(f["splitting_degree"], 3);
}

#[test]
fn invalid_input_exits_with_two() {
    for args in [
        &["field", "--q", "6"][..],
        &["verify", "--suite", "nope"],
        &["group", "--q", "2", "--r", "2", "--n", "t^"],
        &["group", "--q", "2", "--r", "2", "--n", "t", "--op", "nope"],
        &["torsion", "--q", "2", "--theta", "1", "--coeffs", "1", "--r", "2", "--n", "t+1"],
        &["psi", "--q", "2"],
    ] {
        let o = dmod(args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error["), "{args:?}");
    }
}

#[test]
fn field_report() {
    let f = json(&["field", "--q", "4", "--m", "2"]);
    assert_eq!(f["p"], 2);
    assert_eq!(f["e"], 4);
    assert_eq!(f["modulus"], serde_json::json!([1, 1, 0, 0, 1]));
    assert_eq!(f["size"], "16");
}
