use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn fixture(name: &str) -> String {
    fixtures().join(format!("{name}.json")).display().to_string()
}

fn exflex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_exflex"))
        .args(args)
        .env_remove("EXFLEX_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn golden(name: &str) -> String {
    fs::read_to_string(fixtures().join("golden").join(name)).unwrap()
}

const ANALYZE_GOLDENS: &[&str] = &[
    "prism",
    "prism_pinned",
    "two_fold_prism",
    "two_fold_prism_pinned",
    "point_line_pinned",
    "point_line_single_pinned",
    "ph_triangle_pinned",
    "cube_pinned",
    "cycle_of_triangles",
    "k33",
    "triangle",
    "no_edges",
];

const PUSH_GOLDENS: &[&str] = &["prism_minimal", "k33_adjacent", "k33_nonadjacent"];

#[test]
fn analyze_matches_golden_reports() {
    for name in ANALYZE_GOLDENS {
        let out = exflex(&["analyze", &fixture(name)]);
        assert!(out.status.success(), "{name}: {}", stderr(&out));
        assert_eq!(stdout(&out), golden(&format!("{name}.analyze.txt")), "{name}");
    }
}

#[test]
fn push_matches_golden_reports() {
    for name in PUSH_GOLDENS {
        let out = exflex(&["push", &fixture(name)]);
        assert!(out.status.success(), "{name}: {}", stderr(&out));
        assert_eq!(stdout(&out), golden(&format!("{name}.push.txt")), "{name}");
    }
}

#[test]
fn reports_are_deterministic() {
    for args in [
        vec!["analyze".to_string(), fixture("prism"), "--json".into()],
        vec!["push".to_string(), fixture("k33_nonadjacent"), "--json".into()],
    ] {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = exflex(&args);
        let second = exflex(&args);
        assert!(first.status.success());
        assert_eq!(first.stdout, second.stdout);
    }
}

#[test]
fn json_reports_parse() {
    let out = exflex(&["analyze", &fixture("prism_pinned"), "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        v["symmetry"]["verdict"],
        serde_json::json!(["+1 ρ_0 flex (fully-symmetric)", "1 ρ_1 stress"])
    );

    let out = exflex(&["push", &fixture("k33_adjacent"), "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["push"]["determination"], "NotLinearlyDetectable");
}

#[test]
fn malformed_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\n  \"dimension\": 2,\n  \"vertices\": [\n").unwrap();
    let out = exflex(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 4"), "{}", stderr(&out));

    let missing = dir.path().join("missing.json");
    let out = exflex(&["analyze", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn failed_preconditions_exit_with_three() {
    let out = exflex(&["analyze", &fixture("point_line")]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("exflex pin --mode hyperplane"));

    let out = exflex(&["extrude", &fixture("triangle"), "--tau", "0,0"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("zero extrusion direction"));
}

#[test]
fn extrude_and_pin_reproduce_bundled_documents() {
    let dir = tempfile::tempdir().unwrap();
    let prism = dir.path().join("prism.json");
    let out = exflex(&[
        "extrude",
        &fixture("triangle"),
        "--tau",
        "0,2",
        "-o",
        prism.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(
        fs::read_to_string(&prism).unwrap(),
        fs::read_to_string(fixture("prism")).unwrap()
    );

    let out = exflex(&["extrude", &fixture("point_two_lines"), "--tau", "2,2", "--fix", "w1"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out), fs::read_to_string(fixture("point_line_single")).unwrap());

    let out = exflex(&["pin", &fixture("point_line"), "--mode", "hyperplane"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out), fs::read_to_string(fixture("point_line_pinned")).unwrap());

    let out = exflex(&["pin", &fixture("prism")]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out), fs::read_to_string(fixture("prism_minimal")).unwrap());
}

#[test]
fn sketch_draws_a_flex() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("prism.svg");
    let out = exflex(&[
        "sketch",
        &fixture("prism_pinned"),
        "--flex",
        "0:0",
        "-o",
        svg.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg"));
    assert_eq!(text.matches("<circle").count(), 6);
    assert!(text.contains("marker-end"));

    let out = exflex(&["sketch", &fixture("prism_pinned"), "--flex", "1:0"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn tolerance_can_come_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_exflex"))
        .args(["analyze", &fixture("prism"), "--json"])
        .env("EXFLEX_TOL", "1e-7")
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["options"]["tolerance"], 1e-7);
}
