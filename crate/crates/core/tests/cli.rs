use std::path::PathBuf;
use std::process::{Command, Output};

fn positroid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_positroid")).args(args).output().expect("binary runs")
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn analyze_text() {
    let o = positroid(&["analyze", "256134"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("n = 6, k = 3"));
    assert!(s.contains("missing adjacent arrows: y1 y2"), "{s}");
    assert!(s.contains("3 -> 1  2:1"));
}

#[test]
fn analyze_formats() {
    let o = positroid(&["analyze", "4 5 8 2 9 1 6 7 3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["k"], 4);
    let dot = stdout(&positroid(&["analyze", "256134", "--format", "dot"]));
    assert!(dot.starts_with("digraph"), "{dot}");
}

#[test]
fn exit_codes() {
    assert_eq!(positroid(&["analyze", "1 1 2"]).status.code(), Some(2));
    assert_eq!(positroid(&["analyze", "2 1 4 3"]).status.code(), Some(3));
    assert_eq!(positroid(&["generate", "2 1 4 3"]).status.code(), Some(3));
    assert_eq!(positroid(&["oracle", "/nonexistent/model.json"]).status.code(), Some(2));
    assert_eq!(positroid(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(positroid(&["oracle", &fixture("parallel_bigon.json"), "--all"]).status.code(), Some(5));
}

#[test]
fn invalid_model_exits_four() {
    let text = std::fs::read_to_string(fixture("six.json")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["faces_cl"].as_array_mut().unwrap().pop();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, v.to_string()).unwrap();
    assert_eq!(positroid(&["oracle", path.to_str().unwrap(), "--all"]).status.code(), Some(4));
}

#[test]
fn oracle_on_fixture() {
    let o = positroid(&["oracle", &fixture("six.json"), "--pair", "3", "1", "--relations"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.starts_with("3 -> 1: arrow-defining, X=2 Y=1"), "{s}");
    assert!(!s.contains("FAILS"));
    let o = positroid(&["oracle", &fixture("six.json"), "--pair", "4", "1"]);
    assert!(stdout(&o).contains("not arrow-defining"));
}

#[test]
fn generate_orders_realise_the_same_permutation() {
    for extra in [&[][..], &["--greatest"], &["--seed", "5"]] {
        let mut args = vec!["generate", "458291673"];
        args.extend_from_slice(extra);
        let o = positroid(&args);
        assert!(o.status.success());
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.json");
        std::fs::write(&path, &o.stdout).unwrap();
        let o = positroid(&["oracle", path.to_str().unwrap(), "--pair", "6", "9"]);
        assert_eq!(stdout(&o).trim(), "6 -> 9: arrow-defining, X=2 Y=3");
    }
    let o = positroid(&["generate", "256134", "--plabic"]);
    assert!(o.status.success());
}

#[test]
fn crosscheck_report() {
    let o = positroid(&["crosscheck", "--enumerate", "5"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["outcome"], "ok");
    assert!(v["wall_time_ms"].is_null());
    let o = positroid(&["crosscheck", "256134", "--timing"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["wall_time_ms"].is_u64());
}
