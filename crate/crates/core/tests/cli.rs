use std::path::PathBuf;
use std::process::{Command, Output};

use kahler::presentation::parse_presentation;
use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kahler")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).expect("valid JSON")
}

#[test]
fn analyze_intro_json() {
    let v = json(&run(&["analyze", &data("intro_g2.grp")]));
    assert_eq!(v["overall"], "not_kahler");
    assert_eq!(v["input"]["subject"], "E");
    assert_eq!(v["input"]["sha256"].as_str().unwrap().len(), 64);
    let names: Vec<&str> = v["tests"].as_array().unwrap().iter().map(|t| t["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["h1_parity", "formality", "abelianization_class", "splitting_obstruction"]);
}

#[test]
fn analyze_without_central_skips_splitting() {
    let v = json(&run(&["analyze", &data("surface2.grp")]));
    assert_eq!(v["tests"].as_array().unwrap().len(), 3);
    assert_ne!(v["overall"], "not_kahler");
}

#[test]
fn analyze_central_override() {
    let v = json(&run(&["analyze", &data("heisenberg.grp"), "--central", "c"]));
    assert!(v["tests"].as_array().unwrap().iter().any(|t| t["name"] == "splitting_obstruction"));
}

#[test]
fn unknown_central_generator_fails() {
    let o = run(&["analyze", &data("heisenberg.grp"), "--central", "z"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a generator"));
}

#[test]
fn text_format() {
    let s = stdout(&run(&["analyze", &data("heisenberg.grp"), "--format", "text"]));
    assert!(s.contains("formality"));
    assert!(s.trim_end().ends_with("overall: not_kahler"));
}

#[test]
fn hom_defaults_to_last() {
    let v = json(&run(&["hom", &data("composite_rank_one.hom")]));
    assert_eq!(v["input"]["subject"], "qp");
    assert_eq!(v["overall"], "not_kahler_hom");
    let v = json(&run(&["hom", &data("composite_rank_one.hom"), "--name", "p"]));
    assert_eq!(v["overall"], "consistent");
}

#[test]
fn hom_unknown_name_fails() {
    let o = run(&["hom", &data("composite_rank_one.hom"), "--name", "zz"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn ext_order_two() {
    let v = json(&run(&["ext", &data("order_two.grp"), "--central", "c"]));
    assert_eq!(v["class"]["verdict"]["kind"], "torsion");
    assert_eq!(v["class"]["verdict"]["order"], "2");
    assert_eq!(v["section_n"], 2);
    assert_eq!(v["agreement"], true);
}

#[test]
fn ext_requires_central() {
    let o = run(&["ext", &data("order_two.grp")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn surface_gamma_round_trips() {
    let s = stdout(&run(&["surface", "gamma", "2"]));
    let p = parse_presentation(&s).unwrap();
    assert_eq!(p.ngens(), 4);
    assert_eq!(p.relators()[0].len(), 8);
}

#[test]
fn surface_orbifold() {
    let s = stdout(&run(&["surface", "orbifold", "2", "3,3"]));
    let p = parse_presentation(&s).unwrap();
    assert_eq!(p.ngens(), 6);
    assert_eq!(p.relators().len(), 3);
    let o = run(&["surface", "orbifold", "1", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn surface_wordtest() {
    let s = stdout(&run(&["surface", "wordtest", "2", "a1 [a1,a3] [a2,a4] a1^-1"]));
    assert!(s.starts_with("trivial"));
    let s = stdout(&run(&["surface", "wordtest", "2", "a1 a2"]));
    assert!(s.starts_with("nontrivial"));
    let o = run(&["surface", "wordtest", "1", "a1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn missing_file_and_bad_syntax() {
    let o = run(&["analyze", "/nonexistent.grp"]);
    assert_eq!(o.status.code(), Some(1));
    let dir = std::env::temp_dir().join(format!("kahler-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.grp");
    std::fs::write(&bad, "group G { gens: x; rels: y; }").unwrap();
    let o = run(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn help_and_usage_errors() {
    assert!(run(&["--help"]).status.success());
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn budget_option_is_reported() {
    let v = json(&run(&["analyze", &data("z4.grp"), "--max-degree", "2", "--dim-budget", "100"]));
    assert_eq!(v["input"]["max_degree"], 2);
    assert_eq!(v["input"]["dim_budget"], 100);
}
