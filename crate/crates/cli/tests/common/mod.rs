#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

use conjforge::{evaluate_boolean, parse_edge_list, BooleanPropertyId, Graph};

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/graphs")
}

pub fn known_results_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/known_results.json")
}

pub fn seed_corpus() -> Vec<Graph> {
    let mut paths: Vec<_> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "txt"))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| {
            let id = p.file_stem().unwrap().to_str().unwrap();
            parse_edge_list(id, &std::fs::read_to_string(p).unwrap()).unwrap()
        })
        .collect()
}

/// Copies the seed graphs accepted by `keep` into `dir`.
pub fn copy_corpus(dir: &Path, keep: impl Fn(&Graph) -> bool) -> usize {
    let mut count = 0;
    for g in seed_corpus().into_iter().filter(|g| keep(g)) {
        std::fs::copy(
            corpus_dir().join(format!("{}.txt", g.id())),
            dir.join(format!("{}.txt", g.id())),
        )
        .unwrap();
        count += 1;
    }
    count
}

pub fn is_regular(g: &Graph) -> bool {
    evaluate_boolean(g, BooleanPropertyId::Regular)
}

pub struct Output {
    pub ok: bool,
    pub stdout: String,
    pub stderr: String,
}

pub fn conjforge(args: &[&str]) -> Output {
    let out = Command::new(env!("CARGO_BIN_EXE_conjforge"))
        .args(args)
        .env_remove("CONJFORGE_DB")
        .output()
        .expect("binary runs");
    Output {
        ok: out.status.success(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}
