use msod_core::verify::{
    bundled_scenario, emit_report, run_suite, run_suite_with, Fixtures, Format, Provenance, Report, Status, VerifyError,
    FIXTURES_ENV, SCHEMA_VERSION,
};
use serde_json::{json, Value};

fn sample() -> Report {
    let mut r = Report::new("demo", "inline");
    r.hard("a", json!(1), json!(1), Provenance::Definition);
    r.hard("b | c", json!([1, 2]), json!([1, 3]), Provenance::Oracle);
    r.informational("d", json!("x"), json!("y"), Provenance::Published);
    r
}

#[test]
fn statuses_and_summary() {
    let r = sample();
    let statuses: Vec<Status> = r.checks.iter().map(|c| c.status).collect();
    assert_eq!(statuses, vec![Status::Pass, Status::Fail, Status::InformationalMismatch]);
    assert!(!r.passes());
    assert_eq!(r.summary(), "FAIL demo: 1 of 3 checks failed, 1 informational mismatch(es)");
    let mut ok = Report::new("demo", "inline");
    ok.informational("d", json!(1), json!(2), Provenance::Published);
    assert!(ok.passes());
    assert_eq!(ok.summary(), "PASS demo: 1 checks, 1 informational mismatch(es)");
}

#[test]
fn json_report_shape() {
    let v: Value = serde_json::from_str(&emit_report(&sample(), Format::Json)).unwrap();
    assert_eq!(v["schema_version"], json!(SCHEMA_VERSION));
    assert_eq!(v["suite"], "demo");
    assert_eq!(v["checks"][1]["status"], "fail");
    assert_eq!(v["checks"][2]["status"], "informational-mismatch");
    assert_eq!(v["checks"][1]["provenance"], "oracle");
    assert!(v["checks"][0].get("key").is_none());
}

#[test]
fn markdown_escapes_pipes() {
    let md = emit_report(&sample(), Format::Markdown);
    assert!(md.contains("| fail | b \\| c | [1,2] | [1,3] | oracle |"), "{md}");
    assert!(md.trim_end().ends_with("informational mismatch(es)"));
}

#[test]
fn formats_parse() {
    assert_eq!("json".parse::<Format>().unwrap(), Format::Json);
    assert_eq!("md".parse::<Format>().unwrap(), Format::Markdown);
    assert!("yaml".parse::<Format>().is_err());
}

#[test]
fn published_checks_cite_their_source() {
    let spec = bundled_scenario("s3").unwrap().unwrap();
    let r = run_suite_with(&spec, "s3", None, &Fixtures::bundled()).unwrap();
    let published: Vec<_> = r.checks.iter().filter(|c| c.provenance == Provenance::Published).collect();
    assert!(!published.is_empty());
    for c in published {
        assert!(c.key.is_some());
        assert!(c.anchor.contains("[\""), "{}", c.anchor);
    }
}

#[test]
fn suite_model_mismatch_is_an_error() {
    let spec = bundled_scenario("s3").unwrap().unwrap();
    let err = run_suite_with(&spec, "rep-theory", None, &Fixtures::bundled()).unwrap_err();
    assert!(matches!(err, VerifyError::WrongModel { .. }), "{err}");
    let err = run_suite_with(&spec, "nope", None, &Fixtures::bundled()).unwrap_err();
    assert!(err.to_string().contains("rep-theory"), "{err}");
}

#[test]
fn fixed_loci_is_an_alias() {
    let spec = bundled_scenario("type-c").unwrap().unwrap();
    let r = run_suite_with(&spec, "fixed-loci", Some(4), &Fixtures::bundled()).unwrap();
    assert_eq!(r.suite, "type-c");
}

#[test]
fn fixtures_can_be_replaced() {
    let dir = std::env::temp_dir().join(format!("msod-fixtures-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut root: Value = serde_json::from_str(include_str!("../fixtures/expected.json")).unwrap();
    root["s3"]["three_cycle_points"]["value"] = json!(8);
    std::fs::write(dir.join("expected.json"), root.to_string()).unwrap();

    let spec = bundled_scenario("s3").unwrap().unwrap();
    let r = run_suite_with(&spec, "s3", None, &Fixtures::from_dir(&dir).unwrap()).unwrap();
    let failed: Vec<_> = r.failures().iter().filter_map(|c| c.key.clone()).collect();
    assert_eq!(failed, vec!["three_cycle_points".to_string()]);

    // Only this test touches the variable.
    std::env::set_var(FIXTURES_ENV, &dir);
    let via_env = run_suite(&spec, "s3", None);
    std::env::remove_var(FIXTURES_ENV);
    assert!(!via_env.unwrap().passes());

    std::fs::write(dir.join("expected.json"), "[]").unwrap();
    assert!(matches!(Fixtures::from_dir(&dir), Err(VerifyError::Fixture(_))));
}
