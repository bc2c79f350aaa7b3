//! End-to-end runs of the `grpd` binary on generated and hand-written files.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn grpd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grpd")).args(args).output().expect("binary runs")
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn gen_then_validate() {
    let dir = tempfile::tempdir().unwrap();
    for (family, size) in [("pair", "4"), ("group", "5"), ("affine_cyclic", "3"), ("complex_pair", "2")] {
        let out = path(dir.path(), &format!("{family}.json"));
        let hom = path(dir.path(), &format!("{family}.theta.json"));
        let gen = grpd(&["gen", family, "--size", size, "-o", &out, "--hom-out", &hom]);
        assert_eq!(gen.status.code(), Some(0), "{}", stderr(&gen));
        let v = grpd(&["validate", &out]);
        assert_eq!(v.status.code(), Some(0), "{family}: {}", stdout(&v));
        assert!(stdout(&v).contains("groupoid axioms: true"));
    }
}

#[test]
fn gen_is_deterministic() {
    let a = grpd(&["gen", "affine_cyclic", "--size", "4"]);
    let b = grpd(&["gen", "affine_cyclic", "--size", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn syntax_error_exits_two_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let file = path(dir.path(), "bad.json");
    std::fs::write(&file, "{\"kind\": \"groupoid\",\n \"objects\": [\"0\",]\n}").unwrap();
    let out = grpd(&["validate", &file]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("syntax error at line 2"), "{}", stderr(&out));
}

#[test]
fn schema_error_names_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let file = path(dir.path(), "bad.json");
    std::fs::write(
        &file,
        r#"{"kind": "groupoid", "objects": ["0"], "arrows": [{"id": "e", "src": "0", "dst": "9"}], "compose": []}"#,
    )
    .unwrap();
    let out = grpd(&["validate", &file]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("arrows[0].dst"), "{}", stderr(&out));
}

#[test]
fn broken_table_fails_validation_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(fixture("p2.grpd.json")).unwrap();
    let mut value: serde_json::Value = serde_json::from_str(&text).unwrap();
    let compose = value["compose"].as_array_mut().unwrap();
    compose.retain(|row| !(row[0] == "a" && row[1] == "b"));
    let file = path(dir.path(), "p2.json");
    std::fs::write(&file, serde_json::to_string(&value).unwrap()).unwrap();
    let out = grpd(&["validate", &file]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("(a, b)"), "{}", stdout(&out));
}

#[test]
fn json_format_reports_status() {
    let out = grpd(&[
        "--format",
        "json",
        "congruence",
        &fixture("p2.grpd.json"),
        "--hom",
        &fixture("p2.theta.json"),
        "--profile",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["status"], "fail");
    let complete = json["checks"].as_array().unwrap().iter().find(|c| c["name"] == "complete").unwrap();
    assert_eq!(complete["witness"], serde_json::json!(["a", "object 1"]));
}

#[test]
fn split_partition_breaks_parallelism() {
    let out = grpd(&[
        "congruence",
        &fixture("p2.grpd.json"),
        "--partition",
        &fixture("p2.split.partition.json"),
        "--check-axioms",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("parallelism: false, witness: (a, e0, b, e1)"), "{}", stdout(&out));
}

#[test]
fn sip_scalar_set_on_c4() {
    let out = grpd(&[
        "sip",
        "scalar-set",
        &fixture("c4.grpd.json"),
        "--thetas",
        &fixture("c4.theta.json"),
        "--c",
        "0,1",
        "--g",
        "((1,0),(0,0))",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}{}", stdout(&out), stderr(&out));
    assert!(stdout(&out).contains("((0,1),(0,0))"), "{}", stdout(&out));
}

#[test]
fn norm_and_polarize_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let g = fixture("p5.grpd.json");
    let theta = fixture("p5.theta.json");
    let check = grpd(&["norm", "check", &g, "--sq", &fixture("p5.norm.json"), "--lambda", &theta]);
    assert_eq!(check.status.code(), Some(0), "{}", stdout(&check));
    let out = path(dir.path(), "polar.json");
    let polar = grpd(&["polarize", &g, "--sq", &fixture("p5.norm.json"), "--lambda", &theta, "-o", &out]);
    assert_eq!(polar.status.code(), Some(0), "{}{}", stdout(&polar), stderr(&polar));
    let written: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(written["kind"], "bihom");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(grpd(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(grpd(&["gen", "pair"]).status.code(), Some(2));
    assert_eq!(grpd(&["validate", "/nonexistent/file.json"]).status.code(), Some(2));
    assert_eq!(grpd(&["--help"]).status.code(), Some(0));
}
