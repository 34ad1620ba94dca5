use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Graph;

/// Boolean columns of the feature table; each is one deterministic predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BooleanPropertyId {
    Connected,
    Bipartite,
    Tree,
    Regular,
    Cubic,
    Subcubic,
    ClawFree,
    TriangleFree,
    Eulerian,
    HasLeaf,
}

impl BooleanPropertyId {
    pub const ALL: [BooleanPropertyId; 10] = [
        Self::Connected,
        Self::Bipartite,
        Self::Tree,
        Self::Regular,
        Self::Cubic,
        Self::Subcubic,
        Self::ClawFree,
        Self::TriangleFree,
        Self::Eulerian,
        Self::HasLeaf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Connected => "connected",
            Self::Bipartite => "bipartite",
            Self::Tree => "tree",
            Self::Regular => "regular",
            Self::Cubic => "cubic",
            Self::Subcubic => "subcubic",
            Self::ClawFree => "claw_free",
            Self::TriangleFree => "triangle_free",
            Self::Eulerian => "eulerian",
            Self::HasLeaf => "has_leaf",
        }
    }

    pub fn definition(self) -> &'static str {
        match self {
            Self::Connected => "every pair of vertices is joined by a path",
            Self::Bipartite => "vertices split into two independent sets",
            Self::Tree => "connected with exactly n - 1 edges",
            Self::Regular => "all vertices have the same degree r > 0",
            Self::Cubic => "every vertex has degree 3",
            Self::Subcubic => "maximum degree at most 3",
            Self::ClawFree => "no induced K_{1,3}",
            Self::TriangleFree => "no three mutually adjacent vertices",
            Self::Eulerian => "connected with every degree even",
            Self::HasLeaf => "minimum degree equals 1",
        }
    }
}

impl fmt::Display for BooleanPropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BooleanPropertyId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown boolean property {s:?}"))
    }
}

pub fn evaluate_boolean(g: &Graph, property: BooleanPropertyId) -> bool {
    use BooleanPropertyId::*;
    match property {
        Connected => g.is_connected().unwrap_or(false),
        Bipartite => is_bipartite(g),
        Tree => g.is_connected().unwrap_or(false) && g.size() + 1 == g.order(),
        Regular => g.order() > 0 && g.min_degree() > 0 && g.min_degree() == g.max_degree(),
        Cubic => g.order() > 0 && g.degrees().all(|d| d == 3),
        Subcubic => g.max_degree() <= 3,
        ClawFree => is_claw_free(g),
        TriangleFree => is_triangle_free(g),
        Eulerian => g.is_connected().unwrap_or(false) && g.degrees().all(|d| d % 2 == 0),
        HasLeaf => g.order() > 0 && g.min_degree() == 1,
    }
}

fn is_bipartite(g: &Graph) -> bool {
    let mut side: Vec<Option<bool>> = vec![None; g.order()];
    for start in 0..g.order() {
        if side[start].is_some() {
            continue;
        }
        side[start] = Some(false);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            let s = side[u].unwrap_or_default();
            for &w in g.neighbors(u) {
                match side[w] {
                    None => {
                        side[w] = Some(!s);
                        stack.push(w);
                    }
                    Some(t) if t == s => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

// For each center, look for an independent triple among its neighbors.
fn is_claw_free(g: &Graph) -> bool {
    for v in 0..g.order() {
        let nb = g.neighbors(v);
        for (i, &a) in nb.iter().enumerate() {
            for (j, &b) in nb.iter().enumerate().skip(i + 1) {
                if g.has_edge(a, b) {
                    continue;
                }
                for &c in &nb[j + 1..] {
                    if !g.has_edge(a, c) && !g.has_edge(b, c) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn is_triangle_free(g: &Graph) -> bool {
    g.edges()
        .iter()
        .all(|&(u, v)| g.neighbors(u).iter().all(|w| g.neighbors(v).binary_search(w).is_err()))
}
