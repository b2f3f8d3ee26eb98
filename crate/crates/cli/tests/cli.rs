use std::process::{Command, Output};

use serde_json::Value;

fn lsgsb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lsgsb")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn schema() -> jsonschema::JSONSchema {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../schema/certificate.schema.json")).unwrap();
    jsonschema::JSONSchema::compile(&serde_json::from_str(&text).unwrap()).unwrap()
}

#[test]
fn bracket_and_exit_codes() {
    let o = lsgsb(&["--alphabet", "x,y", "lyndon", "bracket", "x x y y x y"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("((x((xy)y))(xy))"));
    assert_eq!(lsgsb(&["--alphabet", "x,y", "lyndon", "bracket", "y x"]).status.code(), Some(1));
    let bad = lsgsb(&["--alphabet", "x,y", "lyndon", "bracket", "q"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).starts_with("error:"));
}

#[test]
fn lyndon_counts_json() {
    let o = lsgsb(&["--alphabet", "x,y", "--format", "json", "lyndon", "list", "--bound", "6", "--depth0", "--count"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.to_string().contains("[2,1,2,3,6,9]"), "{v}");
}

#[test]
fn gsb_check_certificates_validate() {
    let schema = schema();
    for (system, code) in [("rb:lambda=1", 0), ("diff:b=2", 1), ("modrb:lambda=7/3", 0)] {
        let o = lsgsb(&["--format", "json", "gsb-check", "--system", system, "--bound", "4"]);
        assert_eq!(o.status.code(), Some(code), "{system}");
        let v: Value = serde_json::from_slice(&o.stdout).unwrap();
        assert!(schema.is_valid(&v), "{system}");
        assert_eq!(v["equivalence_crosschecks"]["agree"], true);
    }
}

#[test]
fn classify_reports_type_check() {
    let o = lsgsb(&["--format", "json", "classify", "--family", "rb", "--entry", "nijenhuis", "--bound", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(schema().is_valid(&v));
    assert_eq!(v["family"], "rb");
    assert_eq!(v["type_check"]["verdict"], true);
}

#[test]
fn text_summary_and_normal_form() {
    let o = lsgsb(&["gsb-check", "--system", "diff:lambda=1", "--bound", "4"]);
    let s = stdout(&o);
    assert!(s.contains("verdict: GSB"), "{s}");
    assert!(s.contains("agree"), "{s}");
    let o = lsgsb(&["nf", "--system", "diff:lambda=1", "--poly", "P((x y))"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("P((xy))"), "{}", stdout(&o));
}

#[test]
fn every_catalog_spec_runs() {
    let o = lsgsb(&["--format", "json", "catalog"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let entries = v.as_array().unwrap();
    assert_eq!(entries.len(), 9);
    for e in entries {
        let spec = e["spec"].as_str().unwrap();
        let code = lsgsb(&["gsb-check", "--system", spec, "--bound", "3"]).status.code();
        assert!(matches!(code, Some(0 | 1)), "{spec}");
    }
}
