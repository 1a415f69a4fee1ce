//! Behavioral tests that drive the installed binary the way a shell user
//! would: arguments in, exit codes and JSON out.

use std::path::Path;
use std::process::{Command, Output};

use num_rational::BigRational;
use num_traits::Signed;
use serde_json::Value;

use origami_core::cubic::trisect_cos;
use origami_core::rational::{parse_rational, pow10, rat, ratio};
use origami_core::Tower;

fn origami(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_origami"))
        .args(args)
        .output()
        .expect("binary launches")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf-8")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_str(&stdout_of(out)).expect("stdout is JSON")
}

/// Every stderr line must be a JSON diagnostic; returns the first code.
fn stderr_code(out: &Output) -> String {
    let text = String::from_utf8(out.stderr.clone()).expect("stderr is utf-8");
    let line = text.lines().next().expect("a diagnostic line");
    let v: Value = serde_json::from_str(line).expect("diagnostics are JSON lines");
    v["code"].as_str().expect("diagnostics carry a code").to_string()
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("process exits normally")
}

#[test]
fn construct_verifies_the_named_recipes() {
    for (name, profile, declared) in [
        ("pentagon", "LP", "LPB"),
        ("heptagon", "LPT", "LPBT"),
        ("perp-bisector", "LPB", "LPB"),
        ("archimedes", "LP", "LP"),
    ] {
        let out = origami(&["construct", name, "--json"]);
        assert_eq!(exit_code(&out), 0, "{name}");
        let doc = json_of(&out);
        assert_eq!(doc["schema"], "origami/construct/v1");
        assert_eq!(doc["name"], name);
        assert_eq!(doc["axiom_profile"], profile, "{name}");
        assert_eq!(doc["declared"], declared, "{name}");
        assert_eq!(doc["within_declared"], true);
        assert_eq!(doc["all_pass"], true);
        let checks = doc["checks"].as_array().expect("checks array");
        assert!(!checks.is_empty());
        assert!(checks.iter().all(|c| c["pass"] == true), "{name}");
    }
}

#[test]
fn construct_rejects_unknown_names() {
    let out = origami(&["construct", "hexagon"]);
    assert_eq!(exit_code(&out), 2);
    assert_eq!(stderr_code(&out), "UnknownRecipe");
}

#[test]
fn construct_writes_trace_and_svg_files() {
    let dir = tempfile::tempdir().expect("tempdir");
    let trace = dir.path().join("pentagon.trace.json");
    let svg = dir.path().join("pentagon.svg");
    let out = origami(&[
        "construct",
        "pentagon",
        "--emit-trace",
        trace.to_str().unwrap(),
        "--emit-svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    let svg_text = std::fs::read_to_string(&svg).expect("svg written");
    assert!(svg_text.starts_with("<svg "));
    assert!(svg_text.ends_with("</svg>\n"));
    let validated = origami(&["trace", "validate", trace.to_str().unwrap(), "--json"]);
    assert_eq!(exit_code(&validated), 0);
    let doc = json_of(&validated);
    assert_eq!(doc["schema"], "origami/trace-report/v1");
    assert_eq!(doc["valid"], true);
    assert_eq!(doc["axiom_profile"], "LP");
}

#[test]
fn trisect_reports_three_verified_roots() {
    let out = origami(&["trisect", "--u", "1/2", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let doc = json_of(&out);
    assert_eq!(doc["schema"], "origami/trisect/v1");
    assert_eq!(doc["u"], "1/2");
    let roots = doc["roots"].as_array().expect("roots");
    assert_eq!(roots.len(), 3);
    assert!(roots[0]["decimal"]
        .as_str()
        .unwrap()
        .starts_with("0.9396926207859083840541092773"));
    assert_eq!(doc["sum_is_zero"], true);
    assert_eq!(doc["pair_sum_is_minus_three_quarters"], true);
    assert_eq!(doc["product_is_quarter_u"], true);
    assert_eq!(doc["tower_degree"], 3);
}

#[test]
fn trisect_accepts_decimal_literals_exactly() {
    let from_fraction = origami(&["trisect", "--u", "1/2", "--json"]);
    let from_decimal = origami(&["trisect", "--u", "0.5", "--json"]);
    assert_eq!(exit_code(&from_decimal), 0);
    assert_eq!(stdout_of(&from_fraction), stdout_of(&from_decimal));
}

#[test]
fn trisect_rejects_cosines_outside_the_open_interval() {
    let out = origami(&["trisect", "--u", "3/2"]);
    assert_eq!(exit_code(&out), 1);
    assert_eq!(stderr_code(&out), "OutOfRange");
    let out = origami(&["trisect", "--u", "1"]);
    assert_eq!(exit_code(&out), 1);
    assert_eq!(stderr_code(&out), "DegenerateTrisection");
}

#[test]
fn cubic_solves_the_depressed_example() {
    let out = origami(&["cubic", "--p", "-3", "--q", "1", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let doc = json_of(&out);
    assert_eq!(doc["schema"], "origami/cubic/v1");
    assert_eq!(doc["discriminant"]["decimal"], "81");
    let roots = doc["roots"].as_array().expect("roots");
    assert_eq!(roots.len(), 3);
    assert!(roots.iter().all(|r| r["multiplicity"] == 1));
    assert!(roots[0]["decimal"]
        .as_str()
        .unwrap()
        .starts_with("1.532088886237956"));
    assert_eq!(doc["residuals_zero"], true);
    assert_eq!(doc["totally_real"], true);
}

#[test]
fn cubic_refuses_cubics_with_complex_roots() {
    let out = origami(&["cubic", "--p", "3", "--q", "1"]);
    assert_eq!(exit_code(&out), 1);
    assert_eq!(stderr_code(&out), "NotTotallyReal");
}

#[test]
fn classify_reports_the_degree_test() {
    let out = origami(&["classify", "--minpoly", "8,4,-4,-1", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let doc = json_of(&out);
    assert_eq!(doc["schema"], "origami/classify/v1");
    assert_eq!(doc["degree"], 3);
    assert_eq!(doc["degree_condition"], true);
    assert_eq!(doc["report"]["class"], "totally_real_origami");
    assert_eq!(doc["report"]["evidence"]["verdict"], "tower_witness");
}

#[test]
fn classify_reports_obstructions() {
    let out = origami(&["classify", "--minpoly", "1,0,0,-2", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let doc = json_of(&out);
    assert_eq!(doc["degree_condition"], true);
    assert_eq!(doc["report"]["class"], "not_in_et");
    assert_eq!(doc["report"]["evidence"]["verdict"], "obstruction");
}

#[test]
fn classify_reads_recorded_traces() {
    let dir = tempfile::tempdir().expect("tempdir");
    let trace = dir.path().join("heptagon.trace.json");
    let built = origami(&["construct", "heptagon", "--emit-trace", trace.to_str().unwrap()]);
    assert_eq!(exit_code(&built), 0);
    let out = origami(&["classify", "--trace", trace.to_str().unwrap(), "--json"]);
    assert_eq!(exit_code(&out), 0);
    let doc = json_of(&out);
    assert_eq!(doc["source"], "trace");
    assert_eq!(doc["axiom_profile"], "LPT");
    assert_eq!(doc["class"], "totally_real_origami");
    assert_eq!(doc["symbol"], "BT");
}

#[test]
fn classify_requires_an_input() {
    let out = origami(&["classify"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn alhazen_solves_the_classic_instance() {
    let out = origami(&["alhazen", "--a", "2/1,0", "--b", "3/1,0", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let doc = json_of(&out);
    assert_eq!(doc["schema"], "origami/alhazen/v1");
    assert_eq!(doc["solutions"], 4);
    assert_eq!(doc["pencil"]["k"]["decimal"], "0");
    assert_eq!(doc["pencil"]["tau"]["decimal"], "-29.75");
    let points = doc["points"].as_array().expect("points");
    assert_eq!(points.len(), 4);
    for p in points {
        assert_eq!(p["equation1"], true);
        assert_eq!(p["lines"].as_array().unwrap().len(), 3);
    }
    assert_eq!(doc["lines"].as_array().unwrap().len(), 6);
}

#[test]
fn alhazen_rejects_points_on_or_inside_the_circle() {
    let out = origami(&["alhazen", "--a", "1,0", "--b", "3,0"]);
    assert_eq!(exit_code(&out), 1);
    assert_eq!(stderr_code(&out), "DegenerateInput");
}

#[test]
fn malformed_numbers_are_usage_errors() {
    let out = origami(&["trisect", "--u", "abc"]);
    assert_eq!(exit_code(&out), 2);
    assert_eq!(stderr_code(&out), "Usage");
    let out = origami(&["alhazen", "--a", "2", "--b", "3,0"]);
    assert_eq!(exit_code(&out), 2);
    assert_eq!(stderr_code(&out), "Usage");
}

#[test]
fn emit_flags_are_scoped_to_their_commands() {
    let out = origami(&["trisect", "--u", "1/2", "--emit-trace", "/tmp/never.json"]);
    assert_eq!(exit_code(&out), 2);
    assert!(!Path::new("/tmp/never.json").exists());
    let out = origami(&["cubic", "--p", "-3", "--q", "1", "--emit-svg", "/tmp/never.svg"]);
    assert_eq!(exit_code(&out), 2);
    let out = origami(&["render", "fig1"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn render_draws_every_figure() {
    let dir = tempfile::tempdir().expect("tempdir");
    for figure in ["fig1", "fig2", "fig3", "fig4"] {
        let path = dir.path().join(format!("{figure}.svg"));
        let out = origami(&["render", figure, "--emit-svg", path.to_str().unwrap(), "--json"]);
        assert_eq!(exit_code(&out), 0, "{figure}");
        let doc = json_of(&out);
        assert_eq!(doc["schema"], "origami/render/v1");
        assert_eq!(doc["figure"], figure);
        assert!(doc["shapes"].as_u64().unwrap() > 0);
        let text = std::fs::read_to_string(&path).expect("svg written");
        assert!(text.starts_with("<svg "), "{figure}");
        assert!(text.ends_with("</svg>\n"), "{figure}");
    }
}

#[test]
fn trace_reexport_matches_the_emitted_file() {
    let dir = tempfile::tempdir().expect("tempdir");
    let trace = dir.path().join("heptagon.trace.json");
    let built = origami(&["construct", "heptagon", "--emit-trace", trace.to_str().unwrap()]);
    assert_eq!(exit_code(&built), 0);
    let reexported = origami(&["trace", "reexport", trace.to_str().unwrap()]);
    assert_eq!(exit_code(&reexported), 0);
    let original = std::fs::read(&trace).expect("trace written");
    assert_eq!(reexported.stdout, original);
}

#[test]
fn trace_validate_rejects_garbage() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("garbage.json");
    std::fs::write(&path, "{\"not\": \"a trace\"}").unwrap();
    let out = origami(&["trace", "validate", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 1);
    let out = origami(&["trace", "validate", "/nonexistent/trace.json"]);
    assert_eq!(exit_code(&out), 1);
    assert_eq!(stderr_code(&out), "IoError");
}

/// Half a unit in the last displayed decimal place.
fn half_ulp(decimal: &str) -> BigRational {
    let digits = decimal.trim_start_matches('-');
    let ulp = match digits.find('.') {
        Some(dot) => pow10(-((digits.len() - dot - 1) as i32)),
        None => rat(1),
    };
    ulp * ratio(1, 2)
}

#[test]
fn printed_decimals_agree_with_certified_intervals() {
    let out = origami(&["trisect", "--u", "3/7", "--precision", "12", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let doc = json_of(&out);

    let base = Tower::rationals();
    let (tower, principal) = trisect_cos(&base.from_rational(ratio(3, 7))).unwrap();
    let disc = tower
        .one()
        .checked_sub(&principal.square())
        .unwrap()
        .scale(&rat(3));
    let (_, s) = tower.adjoin_sqrt(&disc).unwrap();
    let half = ratio(1, 2);
    let second = principal.neg().checked_add(&s).unwrap().scale(&half);
    let third = principal.neg().checked_sub(&s).unwrap().scale(&half);

    let eps = pow10(-40);
    for (i, root) in [principal, second, third].iter().enumerate() {
        let printed = doc["roots"][i]["decimal"].as_str().expect("decimal");
        let value = parse_rational(printed).expect("printed decimals parse back");
        let slack = half_ulp(printed);
        assert!(slack.is_positive());
        let iv = root.principal_interval(&eps);
        assert!(
            iv.lo <= value.clone() + slack.clone() && value - slack <= iv.hi,
            "root {i} decimal {printed} drifted from its certified interval"
        );
    }
}
