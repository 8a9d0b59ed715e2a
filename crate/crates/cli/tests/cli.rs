use std::path::PathBuf;
use std::process::{Command, Output};

use cohh_cli::{run, Format, Request, Status, Task};
use cohh_core::FieldSpec;
use proptest::prelude::*;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn cohh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cohh")).args(args).output().expect("binary runs")
}

fn request(task: Task, input: &str, n: i32) -> Request {
    Request { task, input: input.to_string(), field: None, max_degree: n, word_bound: None }
}

#[test]
fn exit_codes() {
    let ok = cohh(&["validate", "--input", &fixture("sphere3.dgc")]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("VALID"));

    let broken = cohh(&["validate", "--input", &fixture("broken.dgc")]);
    assert_eq!(broken.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&broken.stdout).contains("coassociativity"));

    let missing = cohh(&["cobar", "--input", "/nonexistent/x.dgc"]);
    assert_eq!(missing.status.code(), Some(3));

    let garbled = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("garbled.dgc");
    std::fs::write(&garbled, "basis\n  1 0\n  z three\n").unwrap();
    let bad = cohh(&["cobar", "--input", garbled.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("line 3"));

    // three vertices: the coalgebra axioms hold but it is not connected
    let tri = cohh(&["cobar", "--input", "sset:boundary(2)"]);
    assert_eq!(tri.status.code(), Some(1));
    let tri = cohh(&["validate", "--input", "sset:boundary(2)"]);
    assert_eq!(tri.status.code(), Some(0));
}

#[test]
fn field_override_and_unsupported_fields() {
    let mut req = request(Task::Cobar, &fixture("sphere2.dgc"), 4);
    assert_eq!(run(&req).unwrap().report.field, "F2");
    req.field = Some(FieldSpec::Rationals);
    assert_eq!(run(&req).unwrap().report.field, "Q");
    req.field = Some(FieldSpec::Prime(7));
    assert_eq!(run(&req).unwrap_err().exit_code(), 1);
}

#[test]
fn json_schema() {
    let out = cohh(&["compare", "--input", &fixture("cp2.dgc"), "--max-degree", "5", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    assert_eq!(keys.len(), 6);
    for k in ["task", "field", "horizon", "approximate", "tables", "verdict"] {
        assert!(keys.contains(&k), "{k}");
    }
    assert_eq!(v["task"], "compare");
    assert_eq!(v["horizon"], 5);
    assert_eq!(v["verdict"], "EQUAL through degree 5");
    let tables = v["tables"].as_array().unwrap();
    assert_eq!(tables.len(), 2);
    assert_eq!(tables[0]["betti"], tables[1]["betti"]);
}

#[test]
fn braided_fixture_passes_morita_check() {
    let out = cohh(&["morita-check", "--input", &fixture("sphere3_braided.dgc"), "--max-degree", "6"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn output_file_matches_stdout() {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cohh_report.csv");
    let args = ["cohh", "--input", "builtin:sphere(3)", "--max-degree", "6", "--format", "csv"];
    let printed = cohh(&args);
    let written = cohh(&[&args[..], &["--output", path.to_str().unwrap()]].concat());
    assert_eq!(written.status.code(), Some(0));
    assert!(written.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), printed.stdout);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn tables_stay_within_the_horizon(
        n in 0i32..7,
        task in prop::sample::select(vec![Task::Cobar, Task::Cohh, Task::Hh, Task::Compare, Task::SdrCheck]),
        input in prop::sample::select(vec!["builtin:sphere(3)", "builtin:cp2", "builtin:point"]),
    ) {
        let req = request(task, input, n);
        let out = run(&req).unwrap();
        prop_assert_eq!(out.status, Status::Ok);
        prop_assert_eq!(out.report.horizon, n);
        for t in &out.report.tables {
            prop_assert_eq!(t.degrees.len(), t.betti.len());
            let bound = if task == Task::Hh { -n..=0 } else { 0..=n };
            prop_assert!(t.degrees.iter().all(|d| bound.contains(d)), "{:?}", t.degrees);
        }
        let again = run(&req).unwrap();
        for f in [Format::Text, Format::Json, Format::Csv] {
            prop_assert_eq!(out.report.render(f), again.report.render(f));
        }
        let csv = out.report.render(Format::Csv);
        let rows: usize = out.report.tables.iter().map(|t| t.degrees.len()).sum();
        prop_assert_eq!(csv.lines().count(), rows + 2);
    }
}
