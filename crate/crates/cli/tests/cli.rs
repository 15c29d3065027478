use std::process::{Command, Output};

fn msod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_msod"))
        .args(args)
        .env_remove("MSOD_FIXTURES_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn passing_suite_exits_zero() {
    let o = msod(&["verify", "--scenario", "s3", "--suite", "s3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("# Suite `s3`"));
    assert!(stderr(&o).contains("PASS s3"));
}

#[test]
fn failing_suite_exits_one_and_names_the_check() {
    let o = msod(&["verify", "--scenario", "type-c", "--suite", "type-c", "--torsion", "4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).lines().any(|l| l.starts_with("FAIL ") && l.contains("[\"")), "{}", stderr(&o));
}

#[test]
fn json_report_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = msod(&[
        "verify",
        "--scenario",
        "g422-local",
        "--suite",
        "rep-theory",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["suite"], "rep-theory");
    assert!(v["checks"].as_array().unwrap().len() > 10);
}

#[test]
fn census_is_json() {
    let o = msod(&["census", "--scenario", "type-c", "--torsion", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["actions"][0]["group_order"], 16);
    assert_eq!(v["torsion"], 2);
}

#[test]
fn list_names_suites() {
    let o = msod(&["list"]);
    assert!(stdout(&o).contains("exceptional-collection"));
    assert!(stdout(&o).contains("type-c"));
}

#[test]
fn errors_exit_two() {
    let o = msod(&["verify", "--scenario", "s3", "--suite", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown suite"));

    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.toml");
    std::fs::write(&empty, "").unwrap();
    let o = msod(&["verify", "--scenario", empty.to_str().unwrap(), "--suite", "s3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 1"), "{}", stderr(&o));

    let o = msod(&["verify", "--scenario", "/nonexistent/x.toml", "--suite", "s3"]);
    assert_eq!(o.status.code(), Some(2));
}
