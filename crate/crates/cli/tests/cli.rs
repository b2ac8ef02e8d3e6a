use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_s3cover")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn run_json(args: &[&str]) -> (Value, i32) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = run(&all);
    (serde_json::from_str(&stdout(&o)).expect("JSON on stdout"), o.status.code().unwrap())
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("s3cover-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn u_alpha_family() {
    let o = run(&["check-cover", data("u_alpha.json").to_str().unwrap()]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0));
    assert!(out.starts_with(&format!("s3cover {}\nring: QQ[m,a,b]\n", env!("CARGO_PKG_VERSION"))));
    assert!(out.contains("relations: OK\n"));
    assert!(out.contains("loci: U_alpha, Z_G\n"));
    // torsor exactly where -m*omega^2 is a unit
    assert!(out.contains("discriminant: -m^3*b^4 + 2*m^2*a^2*b^2 - m*a^4\n"));
}

#[test]
fn zero_data() {
    let (v, code) = run_json(&["check-cover", data("zero.json").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["coefficient_ring"], "QQ");
    assert_eq!(v["check_cover"]["loci"][0], "{0}");
    assert_eq!(v["check_cover"]["is_torsor"], false);
}

#[test]
fn trivial_torsor_and_sign_of_omega() {
    let o = run(&["check-cover", data("trivial_torsor.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("torsor: yes\n"));
    let text = std::fs::read_to_string(data("trivial_torsor.json")).unwrap().replace("-1/2", "1/2");
    let flipped = temp_file("flipped.json", &text);
    let o = run(&["check-cover", flipped.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("g14 = 2\n"));
}

#[test]
fn s3_verification_summary() {
    let (v, code) = run_json(&["s3", data("trivial_torsor.json").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["verified"], true);
    assert_eq!(v["equivariant_isomorphism"], true);
    assert_eq!(v["invariant_discriminant"], "-27");
    assert_eq!(v["algebra"]["rank"], 6);
    let (v, code) = run_json(&["s3", data("u_alpha.json").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["verified"], true);
}

#[test]
fn algebra_round_trip() {
    for file in ["u_alpha.json", "zero.json", "trivial_torsor.json"] {
        let (v, code) = run_json(&["algebra", data(file).to_str().unwrap()]);
        assert_eq!(code, 0);
        let emitted = temp_file(&format!("alg-{file}"), &v.to_string());
        let (back, code) = run_json(&["algebra", "--check", emitted.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert_eq!(back["commutative"], v["commutative"]);
        assert_eq!(back["associative"], v["associative"]);
        assert_eq!(back["coefficient_ring"], v["coefficient_ring"]);
    }
}

#[test]
fn checker_reports_witnesses() {
    // e1*e1 = e2, e1*e2 = 0, e2*e1 = e1: neither commutative nor associative
    let z = |k: usize| -> Vec<&str> { (0..3).map(|i| if i == k { "1" } else { "0" }).collect() };
    let zero = vec!["0"; 3];
    let mult = serde_json::json!([
        [z(0), z(1), z(2)],
        [z(1), z(2), zero],
        [z(2), z(1), zero],
    ]);
    let text = serde_json::json!({"rank": 3, "unit": 0, "basis": ["1", "e1", "e2"], "mult": mult}).to_string();
    let f = temp_file("bad.json", &text);
    let (v, _) = run_json(&["algebra", "--check", f.to_str().unwrap()]);
    assert_eq!(v["commutative"], false);
    assert_eq!(v["commutativity_witness"], serde_json::json!([1, 2]));
    assert_eq!(v["associative"], false);
}

#[test]
fn triple_conversions() {
    let (v, code) = run_json(&["triple", data("delta_f7.json").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["coefficient_ring"], "GF(7)");
    assert_eq!(v["m"], "3");
    let lambda = temp_file("lambda.json", &v["lambda"].to_string());
    let o = run(&["check-cover", lambda.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    // m = 3 and omega = 1 are units
    assert!(stdout(&o).contains("loci: U_omega, U_alpha, U_beta, Z_G\ntorsor: yes\n"));
    let (back, _) = run_json(&["triple", lambda.to_str().unwrap()]);
    assert_eq!(back["normalised"], serde_json::json!(["6", "2", "0", "1"]));
}

#[test]
fn groebner_basis_of_ideal_file() {
    let f = data("twisted_cubic.ideal");
    let (v, code) = run_json(&["gb", f.to_str().unwrap(), "--order", "lex"]);
    assert_eq!(code, 0);
    assert_eq!(v["basis"], serde_json::json!(["x*z - y^2", "x*w - y*z", "y*w - z^2"]));
    let (v, _) = run_json(&["gb", f.to_str().unwrap(), "--modulus", "5"]);
    assert_eq!(v["coefficient_ring"], "GF(5)[x,y,z,w]");
    assert_eq!(v["basis"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_paper_ideal_suite() {
    let (v, code) = run_json(&["verify-paper", "--suite", "ideal", "--threads", "2"]);
    assert_eq!(code, 0);
    let checks = v["checks"].as_array().unwrap();
    let nil_or_comp: Vec<&Value> = checks
        .iter()
        .filter(|c| {
            let n = c["name"].as_str().unwrap();
            n.starts_with("nilpotent.") || n.starts_with("components.")
        })
        .collect();
    assert!(nil_or_comp.len() >= 12);
    assert!(nil_or_comp.iter().all(|c| c["status"] == "verified"));
}

#[test]
fn refuted_checks_exit_one() {
    let o = run(&["verify-paper", "--suite", "surface", "--field", "fp:5", "--strict"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("summary: "));
}

#[test]
fn output_is_deterministic() {
    let a = run(&["--json", "verify-paper", "--suite", "core", "--seed", "3"]);
    let b = run(&["--json", "verify-paper", "--suite", "core", "--seed", "3"]);
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["s3", data("u_alpha.json").to_str().unwrap()]);
    let b = run(&["s3", data("u_alpha.json").to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn invalid_input_exits_one() {
    assert_eq!(run(&["check-cover", "--frobnicate", "x"]).status.code(), Some(1));
    assert_eq!(run(&["verify-paper", "--field", "fp:9"]).status.code(), Some(1));
    assert_eq!(run(&["check-cover", "/nonexistent.json"]).status.code(), Some(1));
    let bad = temp_file("bad_entry.json", r#"{"alpha":[["0","0"],["0","0"]],"beta":[["0","0","0"],["0","x","0"]],"omega":"0"}"#);
    let o = run(&["check-cover", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("d:"));
}
