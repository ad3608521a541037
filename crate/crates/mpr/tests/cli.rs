//! End-to-end tests of the `mpr` binary: exact output strings, exit codes,
//! byte-level determinism, and the resolve/verify pipeline closure.

mod common;

use std::path::PathBuf;
use std::process::{Command, Output};

fn mpr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mpr")).args(args).output().unwrap()
}

fn out_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn err_str(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn fixture_path(name: &str) -> String {
    common::fixture(name).to_str().unwrap().to_string()
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("mpr-it-{}-{name}", std::process::id()))
}

#[test]
fn validate_reports_the_filtration_shape() {
    let out = mpr(&["validate", &fixture_path("triangle.mfil")]);
    assert_eq!(code(&out), 0);
    assert_eq!(out_str(&out), "ok r=2 simplices=7 dim=2 grid=(3,2) one-critical=false\n");
}

#[test]
fn validate_rejects_a_monotonicity_violation() {
    let out = mpr(&["validate", &fixture_path("broken.mfil")]);
    assert_eq!(code(&out), 2);
    assert!(out_str(&out).is_empty());
    let err = err_str(&out);
    assert!(err.contains("monotonicity violation: simplex 2"), "stderr: {err}");
}

#[test]
fn decompose_prints_the_exact_published_lists() {
    let file = fixture_path("triangle.mfil");
    let c0 = mpr(&["decompose", &file, "-n", "0"]);
    let c1 = mpr(&["decompose", &file, "-n", "1"]);
    let c2 = mpr(&["decompose", &file, "-n", "2"]);
    assert_eq!(code(&c0), 0);
    assert_eq!(out_str(&c0), "C_0 = <1> (+) <x y, x^3, y^2> (+) <y, x^2>\n");
    assert_eq!(out_str(&c1), "C_1 = <x^2> (+) <y^2, x^2 y> (+) <x y^2, x^3>\n");
    assert_eq!(out_str(&c2), "C_2 = <x^3 y^2>\n");
}

#[test]
fn minimized_homology_resolution_prints_the_published_summary() {
    let out =
        mpr(&["resolve", &fixture_path("triangle.mfil"), "--target", "homology", "-n", "1", "--minimize"]);
    assert_eq!(code(&out), 0);
    let text = out_str(&out);
    let summary = text.lines().next().unwrap();
    assert_eq!(summary, "0 -> R(-3,-2)^2 -> R(-2,-2)(+)R(-3,-1) -> 0");
}

#[test]
fn repeated_runs_are_byte_identical() {
    let file = fixture_path("triangle.mfil");
    let args = ["resolve", file.as_str(), "--target", "homology", "-n", "0"];
    let first = mpr(&args);
    let second = mpr(&args);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
    let betti = ["betti", file.as_str(), "--module", "homology", "-n", "1"];
    assert_eq!(mpr(&betti).stdout, mpr(&betti).stdout);
}

#[test]
fn resolve_output_feeds_back_into_verify() {
    for (target, n) in
        [("chains", "0"), ("chains", "1"), ("cycles", "1"), ("boundaries", "0"), ("homology", "1")]
    {
        let file = fixture_path("triangle.mfil");
        let resolved = mpr(&["resolve", &file, "--target", target, "-n", n]);
        assert_eq!(code(&resolved), 0, "resolve {target} {n}: {}", err_str(&resolved));
        let path = temp_path(&format!("{target}-{n}.res"));
        std::fs::write(&path, resolved.stdout).unwrap();
        let verified = mpr(&["verify", &file, path.to_str().unwrap()]);
        assert_eq!(code(&verified), 0, "verify {target} {n}: {}", out_str(&verified));
        let text = out_str(&verified);
        assert!(text.starts_with(&format!("target {target} {n}\n")), "{text}");
        assert!(text.contains("grades checked "), "{text}");
        assert!(text.ends_with("result pass\n"), "{text}");
    }
}

#[test]
fn a_tampered_resolution_fails_verification_with_exit_one() {
    let file = fixture_path("triangle.mfil");
    let resolved = mpr(&["resolve", &file, "--target", "homology", "-n", "1", "--minimize"]);
    assert_eq!(code(&resolved), 0);
    let mut text = String::from_utf8(resolved.stdout).unwrap();
    // Redeclare the target: the file still parses but resolves the wrong module.
    text = text.replace("target homology 1", "target homology 0");
    let path = temp_path("tampered.res");
    std::fs::write(&path, text).unwrap();
    let verified = mpr(&["verify", &file, path.to_str().unwrap()]);
    assert_eq!(code(&verified), 1, "{}", out_str(&verified));
    let report = out_str(&verified);
    assert!(report.contains("result fail at j="), "{report}");
}

#[test]
fn prime_fields_run_the_same_pipeline() {
    let file = fixture_path("triangle.mfil");
    let resolved =
        mpr(&["--field", "fp:5", "resolve", &file, "--target", "homology", "-n", "1", "--minimize"]);
    assert_eq!(code(&resolved), 0, "{}", err_str(&resolved));
    let text = out_str(&resolved);
    assert_eq!(text.lines().next().unwrap(), "0 -> R(-3,-2)^2 -> R(-2,-2)(+)R(-3,-1) -> 0");
    assert!(text.contains("field fp:5"), "{text}");
    let path = temp_path("fp5.res");
    std::fs::write(&path, text).unwrap();
    let verified = mpr(&["--field", "fp:5", "verify", &file, path.to_str().unwrap()]);
    assert_eq!(code(&verified), 0, "{}", out_str(&verified));
    let mismatched = mpr(&["verify", &file, path.to_str().unwrap()]);
    assert_eq!(code(&mismatched), 2);
}

#[test]
fn slice_lists_the_simplices_present_at_a_grade() {
    let out = mpr(&["slice", &fixture_path("triangle.mfil"), "--at", "(2,1)"]);
    assert_eq!(code(&out), 0);
    assert_eq!(out_str(&out), "simplex 0 : 0\nsimplex 1 : 1\nsimplex 2 : 2\nsimplex 3 : 0 2\nsimplex 4 : 0 1\n");
}

#[test]
fn chains_and_syzygies_are_tab_separated() {
    let file = fixture_path("triangle.mfil");
    let chains = mpr(&["chains", &file, "-n", "0"]);
    assert_eq!(code(&chains), 0);
    let chains_text = out_str(&chains);
    let lines: Vec<&str> = chains_text.lines().map(str::trim_end).collect();
    assert_eq!(lines.len(), 6);
    assert_eq!(lines[0], "0\t(0,0)");
    assert_eq!(lines[1], "1\t(1,1)");
    let syz = mpr(&["syzygies", &file, "-n", "0"]);
    assert_eq!(code(&syz), 0);
    let text = out_str(&syz);
    assert!(text.contains("1\t(1,1)\t(3,0)\t(3,1)"), "{text}");
    assert!(text.contains("2\t(0,1)\t(2,0)\t(2,1)"), "{text}");
}

#[test]
fn hilbert_tabulates_every_grade_in_order() {
    let out = mpr(&["hilbert", &fixture_path("edge.mfil"), "--module", "homology", "-n", "0"]);
    assert_eq!(code(&out), 0);
    assert_eq!(out_str(&out), "(0,0)\t2\n(0,1)\t1\n(1,0)\t1\n(1,1)\t1\n");
}

#[test]
fn onecrit_analyses_a_labelled_complex() {
    let out = mpr(&["onecrit", &fixture_path("nonlcm.lsc")]);
    assert_eq!(code(&out), 0, "{}", err_str(&out));
    let text = out_str(&out);
    assert!(text.starts_with("one-critical: true\nmatches chain complex: true\n"), "{text}");
    assert!(text.contains("H_1 hilbert"), "{text}");
    assert!(text.contains("H_1 betti"), "{text}");
    assert!(text.contains("(1,1)\t1"), "{text}");
}

#[test]
fn onecrit_rejects_multicritical_input_with_exit_one() {
    let out = mpr(&["onecrit", &fixture_path("edge.mfil")]);
    assert_eq!(code(&out), 1);
    assert_eq!(out_str(&out), "one-critical: false (simplex 2 has 2 critical grades)\n");
}

#[test]
fn generate_lower_star_round_trips_through_validate() {
    let gen = mpr(&["generate", "lower-star", &fixture_path("star_edge.star")]);
    assert_eq!(code(&gen), 0, "{}", err_str(&gen));
    let path = temp_path("generated.mfil");
    std::fs::write(&path, gen.stdout).unwrap();
    let validated = mpr(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&validated), 0);
    assert_eq!(out_str(&validated), "ok r=2 simplices=3 dim=1 grid=(1,1) one-critical=true\n");
    let onecrit = mpr(&["onecrit", path.to_str().unwrap()]);
    assert_eq!(code(&onecrit), 0);
}

#[test]
fn usage_errors_exit_with_two() {
    let unknown = mpr(&["frobnicate"]);
    assert_eq!(code(&unknown), 2);
    let missing = mpr(&["resolve", &fixture_path("triangle.mfil"), "--target", "nonsense", "-n", "0"]);
    assert_eq!(code(&missing), 2);
    assert!(err_str(&missing).contains("unknown target kind"), "{}", err_str(&missing));
    let flag = mpr(&["validate", "--bogus", &fixture_path("triangle.mfil")]);
    assert_eq!(code(&flag), 2);
}

#[test]
fn single_vertex_filtrations_work_end_to_end() {
    let file = fixture_path("single.mfil");
    let resolved = mpr(&["resolve", &file, "--target", "homology", "-n", "0"]);
    assert_eq!(code(&resolved), 0, "{}", err_str(&resolved));
    let path = temp_path("single.res");
    std::fs::write(&path, resolved.stdout).unwrap();
    let verified = mpr(&["verify", &file, path.to_str().unwrap()]);
    assert_eq!(code(&verified), 0, "{}", out_str(&verified));
}
