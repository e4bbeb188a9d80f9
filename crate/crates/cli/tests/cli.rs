//! End-to-end runs of the `formanifold` binary on the files in `tests/data`.

use std::path::PathBuf;
use std::process::{Command, Output};

use formanifold_cli::Report;
use serde_json::Value;

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_formanifold"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Report, i32) {
    let mut full = args.to_vec();
    full.push("--json");
    let out = run(&full);
    let text = String::from_utf8(out.stdout).unwrap();
    (
        Report::from_json(&text).expect("valid report"),
        out.status.code().unwrap(),
    )
}

fn field<'a>(r: &'a Report, path: &[&str]) -> &'a Value {
    path.iter().fold(&r.results, |v, k| &v[*k])
}

#[test]
fn analyze_slice() {
    let (r, code) = json(&["analyze", &data("slice.fm"), "--point", "0"]);
    assert_eq!(code, 0);
    assert_eq!(r.command, "analyze");
    assert_eq!(r.order, 8);
    assert_eq!(field(&r, &["rank_triple", "total"]), 2);
    assert_eq!(field(&r, &["rank_triple", "reduced"]), 1);
    assert_eq!(field(&r, &["rank_triple", "formal"]), 0);
    assert_eq!(
        field(&r, &["classification", "bijective_differential"]),
        true
    );
    assert_eq!(field(&r, &["constant_rank", "constant"]), true);
    assert_eq!(r.inputs["point"], serde_json::json!(["0/1"]));
}

#[test]
fn standardize_square_reports_witness() {
    let (r, code) = json(&["standardize", &data("square.fm"), "--order", "4"]);
    assert_eq!(code, 4);
    assert_eq!(r.errors.len(), 1);
    let e = &r.errors[0];
    assert_eq!(e.code, "NotStandardizable");
    let d = e.detail.as_ref().unwrap();
    assert_eq!(d["label"], "y1");
    assert_eq!(d["witness"], serde_json::json!(["1/1"]));
}

#[test]
fn invert_cubic() {
    let (r, code) = json(&["invert", &data("cubic.fm"), "--point", "0", "--order", "5"]);
    assert_eq!(code, 0);
    assert_eq!(field(&r, &["roundtrip"]), "ok");
    assert_eq!(
        field(&r, &["inverse"]),
        &serde_json::json!(["u1 = x1 - y1^2 + 2*y1^4", "z1 = y1 - y1^3 + 3*y1^5"])
    );
}

#[test]
fn standardize_parabola() {
    let (r, code) = json(&[
        "standardize",
        &data("parabola.fm"),
        "--point",
        "0",
        "--order",
        "4",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        field(&r, &["standardized"]),
        &serde_json::json!(["x1 = u1", "x2 = 0", "y1 = z1"])
    );
    assert_eq!(field(&r, &["ranks"]), &serde_json::json!([1, 0, 1]));
}

#[test]
fn level_set_projection() {
    let (r, code) = json(&[
        "level-set",
        &data("projection.fm"),
        "--point",
        "0,0",
        "--order",
        "4",
    ]);
    assert_eq!(code, 0);
    assert_eq!(field(&r, &["dims"]), &serde_json::json!([1, 1]));
    assert_eq!(field(&r, &["fiber_check"]), "ok");
    let (r, code) = json(&[
        "level-set",
        &data("projection.fm"),
        "--point",
        "0,0",
        "--value",
        "1",
        "--order",
        "4",
    ]);
    assert_eq!(code, 4);
    assert_eq!(r.errors[0].code, "FiberMismatch");
}

#[test]
fn slices() {
    let (r, code) = json(&["slice-pullback", "--slice", "2,1,1,0,1", "x1*x2 + x2^2"]);
    assert_eq!(code, 0);
    assert_eq!(field(&r, &["pullback"]), "u1*z1 + z1^2");
    assert_eq!(field(&r, &["in_kernel"]), false);
    let (r, _) = json(&["borel-preimage", "--slice", "2,1,1,0,1", "u1*z1 + z1^3"]);
    assert_eq!(field(&r, &["preimage"]), "x1*x2 + x2^3");
    assert_eq!(field(&r, &["roundtrip"]), "ok");
    let (r, code) = json(&["slice-pullback", "--slice", "2,1,2,0,1", "x1"]);
    assert_eq!(code, 4);
    assert_eq!(r.errors[0].code, "ConstraintViolation");
}

#[test]
fn compose_files() {
    let (r, code) = json(&[
        "compose",
        &data("parabola.fm"),
        &data("cubic.fm"),
        "--order",
        "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        field(&r, &["morphism"]),
        &serde_json::json!(["x1 = u1 + z1^2", "x2 = u1^2 + 2*u1*z1^2", "y1 = z1 + z1^3"])
    );
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&["analyze", &data("malformed.fm"), "--point", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["analyze", &data("missing.fm")]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["analyze", &data("constant_term.fm")]).status.code(),
        Some(3)
    );
    assert_eq!(
        run(&["invert", &data("parabola.fm"), "--point", "0"])
            .status
            .code(),
        Some(4)
    );
    assert_eq!(
        run(&["analyze", &data("wide.fm"), "--point", "0,0,0,0"])
            .status
            .code(),
        Some(5)
    );
    let (r, _) = json(&["analyze", &data("malformed.fm"), "--point", "0"]);
    assert_eq!(r.errors[0].detail.as_ref().unwrap()["line"], 3);
}

#[test]
fn json_output_is_deterministic() {
    let args = [
        "analyze",
        &data("parabola.fm"),
        "--point",
        "1/2",
        "--order",
        "4",
        "--json",
    ];
    let a = run(&args).stdout;
    let b = run(&args).stdout;
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn text_output() {
    let out = run(&["analyze", &data("slice.fm"), "--point", "0"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("analyze (order 8)\n"));
    assert!(text.contains("bijective_differential: true"));
    let out = run(&["standardize", &data("square.fm"), "--order", "4"]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("error [NotStandardizable]"));
}
