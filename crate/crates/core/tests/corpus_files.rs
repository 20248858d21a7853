use std::fs;
use std::path::{Path, PathBuf};

use linbase::catalog::{build_corpus, export_corpus, load_corpus, GroupFile, Manifest};

fn shipped() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

#[test]
fn files_render_back_to_their_own_text() {
    let text = fs::read_to_string(shipped().join("manifest.json")).unwrap();
    let manifest = Manifest::parse(&text, "manifest.json").unwrap();
    assert_eq!(manifest.render(), text);
    for e in &manifest.groups {
        let text = fs::read_to_string(shipped().join(&e.file)).unwrap();
        let file = GroupFile::parse(&text, &e.file).unwrap();
        assert_eq!(file.name, e.name);
        assert_eq!(file.render(), text, "{}", e.file);
    }
}

#[test]
fn loaded_corpus_matches_built_corpus() {
    let loaded = load_corpus(&shipped(), 0).unwrap();
    let built = build_corpus(0).unwrap();
    assert_eq!(loaded.len(), built.len());
    for (a, b) in loaded.iter().zip(&built) {
        assert_eq!(a.name(), b.name());
        assert_eq!(a.group().generators(), b.group().generators(), "{}", a.name());
        assert_eq!(a.group().order().unwrap(), b.group().order().unwrap());
    }
}

#[test]
fn export_then_load() {
    let dir = tempfile::tempdir().unwrap();
    let written = export_corpus(dir.path(), 0).unwrap();
    let read = load_corpus(dir.path(), 0).unwrap();
    assert_eq!(written.len(), read.len());
    assert!(read.iter().all(|e| e.group().order().is_ok()));
}
