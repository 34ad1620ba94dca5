#![allow(dead_code)]

use std::path::PathBuf;

use conjforge::{parse_edge_list, Graph};
use rand::Rng;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/graphs")
}

pub fn seed_corpus() -> Vec<Graph> {
    let mut paths: Vec<_> = std::fs::read_dir(corpus_dir())
        .expect("seed corpus present")
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

/// Random spanning tree plus each remaining pair with probability `p`.
pub fn random_connected(rng: &mut impl Rng, id: &str, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.random_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(id, n, edges).unwrap()
}

pub fn named_fixtures() -> Vec<Graph> {
    vec![
        Graph::complete("K4", 4),
        Graph::complete_bipartite("K33", 3, 3),
        Graph::cycle("C5", 5),
        Graph::path("P4", 4),
        Graph::petersen("Petersen"),
    ]
}
