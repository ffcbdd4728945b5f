mod common;

use std::process::{Command, Output};

use common::corpus_path;
use serde_json::Value;

fn superosp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superosp"))
        .args(args)
        .env_remove("SUPEROSP_MAX_DIM")
        .output()
        .unwrap()
}

fn path(name: &str) -> String {
    corpus_path(name).to_string_lossy().into_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn verify_so5_exits_zero() {
    let out = superosp(&["verify", &path("so5")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["einfty"]["dims"]["L"], 10);
    assert_eq!(v["iso_to_eosp_qinf"]["surjective"], true);
}

#[test]
fn non_supersymmetric_gram_exits_one_and_names_the_axiom() {
    let out = superosp(&["verify", &path("so5_broken_supersymmetry")]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["pass"], false);
    assert!(v["error"].as_str().unwrap().contains("supersymmetry"));
}

#[test]
fn malformed_json_exits_two() {
    for cmd in ["verify", "derive", "jordan", "dims"] {
        let out = superosp(&[cmd, &path("malformed")]);
        assert_eq!(out.status.code(), Some(2));
        assert!(String::from_utf8_lossy(&out.stderr).contains("line"));
    }
    let out = superosp(&["verify", "/nonexistent/spec.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn derive_so5_has_no_outer_derivations() {
    let v = json(&superosp(&["derive", &path("so5")]));
    assert_eq!(v["dims"]["outer"], 0);
    for k in ["main1", "main2", "main3", "main4_split"] {
        assert_eq!(v["checks"][k], true, "{k}");
    }
}

#[test]
fn derive_dual_numbers_plus_r1_splits() {
    let out = superosp(&["derive", &path("dualnum_so3_plus_R1")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["splitting"]["inner_ideal"], true);
    assert_eq!(v["splitting"]["complement_subalgebra"], true);
    // End_A R has dimension dim A = 2 and Der A has dimension 1
    assert_eq!(v["dims"]["outer"], 3);
}

#[test]
fn derive_g1_mixed_parity_passes() {
    let out = superosp(&["derive", &path("g1_osp_2_1")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["checks"]["s_decomp"], true);
}

#[test]
fn jordan_reports_are_keyed_and_pass() {
    let v = json(&superosp(&["jordan", &path("so5")]));
    assert_eq!(v["pass"], true);
    assert_eq!(v["jordan"]["der_star"]["der_j"]["source_dim"], 3);
    let z = superosp(&["jordan", &path("zero_form_osp")]);
    assert_eq!(z.status.code(), Some(0));
    let broken = superosp(&["jordan", &path("so5_broken_supersymmetry")]);
    assert_eq!(broken.status.code(), Some(1));
    assert!(json(&broken)["error"].as_str().unwrap().contains("(0, 1)"));
}

#[test]
fn guardrail_respects_flag_env_and_force() {
    let p = path("dualnum_so3_plus_R1");
    assert_eq!(
        superosp(&["dims", &p, "--max-dim", "20"]).status.code(),
        Some(2)
    );
    assert_eq!(
        superosp(&["dims", &p, "--max-dim", "20", "--force"])
            .status
            .code(),
        Some(0)
    );
    let env = Command::new(env!("CARGO_BIN_EXE_superosp"))
        .args(["dims", &p])
        .env("SUPEROSP_MAX_DIM", "25")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&env.stderr).contains("exceeds"));
}

#[test]
fn text_report_starts_with_the_verdict() {
    let out = superosp(&["dims", &path("so5"), "--report", "text"]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.starts_with("dims so5: PASS\n"), "{s}");
    assert!(s.contains("outer: 0"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    for cmd in ["verify", "jordan", "dims"] {
        let a = superosp(&[cmd, &path("g1_odd_pair")]);
        let b = superosp(&[cmd, &path("g1_odd_pair"), "--sequential"]);
        assert_eq!(a.stdout, b.stdout, "{cmd}");
    }
}
