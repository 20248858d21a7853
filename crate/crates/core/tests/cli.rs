use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn linbase(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linbase")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn shipped(name: &str) -> String {
    corpus().join(format!("{name}.json")).display().to_string()
}

/// A one-entry corpus copied from the shipped one, with the entry's JSON passed through `edit`.
fn small_corpus(dir: &Path, name: &str, edit: impl FnOnce(&mut Value)) {
    let manifest: Value = serde_json::from_str(&fs::read_to_string(corpus().join("manifest.json")).unwrap()).unwrap();
    let mut entry = manifest["groups"].as_array().unwrap().iter().find(|e| e["name"] == name).unwrap().clone();
    edit(&mut entry);
    let file = entry["file"].as_str().unwrap().to_string();
    fs::copy(corpus().join(&file), dir.join(&file)).unwrap();
    fs::write(dir.join("manifest.json"), serde_json::json!({ "groups": [entry] }).to_string()).unwrap();
}

#[test]
fn analyze_prints_invariants() {
    let out = linbase(&["analyze", &shipped("gl-2-3")]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("order                 48"), "{text}");
    assert!(text.contains("b*                    3"), "{text}");

    let out = linbase(&["analyze", "--json", &shipped("diag-z-5")]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!((v["order"].as_u64(), v["b"].as_u64(), v["b_star"].as_u64()), (Some(16), Some(1), Some(1)));
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.json");
    assert_eq!(code(&linbase(&["analyze", missing.to_str().unwrap()])), 2);

    let garbled = dir.path().join("garbled.json");
    fs::write(&garbled, "{ \"name\": ").unwrap();
    assert_eq!(code(&linbase(&["analyze", garbled.to_str().unwrap()])), 2);

    let singular = dir.path().join("singular.json");
    fs::write(&singular, r#"{"name":"s","p":3,"k":1,"n":2,"generators":[[1,1,1,1]]}"#).unwrap();
    let out = linbase(&["analyze", singular.to_str().unwrap()]);
    assert_eq!(code(&out), 2, "{}", String::from_utf8_lossy(&out.stderr));

    assert_eq!(code(&linbase(&["verify", "no-such-suite"])), 2);
    assert_eq!(code(&linbase(&["oracle", "sizes", &shipped("diag-z-3")])), 2);
}

#[test]
fn caps_exit_3() {
    let out = linbase(&["oracle", "order", &shipped("gl-2-3-wr-3")]);
    assert_eq!(code(&out), 3);

    let dir = tempfile::tempdir().unwrap();
    let big = dir.path().join("big.json");
    let identity: Vec<u32> = (0..81).map(|i| u32::from(i % 10 == 0)).collect();
    let file = serde_json::json!({ "name": "big", "p": 3, "k": 1, "n": 9, "generators": [identity] });
    fs::write(&big, file.to_string()).unwrap();
    assert_eq!(code(&linbase(&["analyze", big.to_str().unwrap()])), 3);
}

#[test]
fn oracle_agrees_with_engine() {
    for name in ["diag-z-3", "gl-2-3", "sl-2-3"] {
        let out = linbase(&["oracle", "b", &shipped(name)]);
        assert_eq!(code(&out), 0, "{name}");
        assert!(stdout(&out).contains("pruned == naive"), "{name}: {}", stdout(&out));
    }
    let out = linbase(&["oracle", "order", &shipped("gl-3-2")]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("168"));
}

#[test]
fn verify_writes_json_lines() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.jsonl");
    let out = linbase(&["verify", "strong-bound", "--corpus", corpus().to_str().unwrap(), "--json", report.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("thm1: PASS"));
    let rows: Vec<Value> = fs::read_to_string(&report).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 39);
    assert!(rows.iter().all(|r| r["suite"] == "thm1" && (r["status"] == "pass" || r["status"] == "skip")));
}

#[test]
fn false_claims_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    small_corpus(dir.path(), "diag-z-3", |e| e["claims"]["order"] = 5.into());
    let out = linbase(&["verify", "structure", "--corpus", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 1, "{}", stdout(&out));

    let dir = tempfile::tempdir().unwrap();
    small_corpus(dir.path(), "diag-z-3", |_| {});
    assert_eq!(code(&linbase(&["verify", "structure", "--corpus", dir.path().to_str().unwrap()])), 0);
    let out = linbase(&["verify", "sharpness", "--corpus", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("no group over GF(3) with |G| > |V|^2"));
}

#[test]
fn construct_writes_a_loadable_group() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("singer.json");
    let out = linbase(&["construct", "singer", "--q", "5", "--n", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let out = linbase(&["analyze", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
}

#[test]
fn catalog_export_matches_shipped_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let out = linbase(&["catalog", "export", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let mut names: Vec<_> = fs::read_dir(corpus()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names.len(), 40);
    for name in names {
        let shipped = fs::read(corpus().join(&name)).unwrap();
        let fresh = fs::read(dir.path().join(&name)).unwrap();
        assert!(shipped == fresh, "{name:?} differs");
    }
}
