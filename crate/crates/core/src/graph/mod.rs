//! Simple undirected graphs, the edge-list text format, and the Boolean
//! structural predicates used as conjecture hypotheses.

mod parse;
mod properties;

use std::collections::{BTreeSet, VecDeque};

pub use parse::{parse_edge_list, to_edge_list};
pub use properties::{evaluate_boolean, BooleanPropertyId};

use crate::error::GraphError;

/// A simple undirected graph on vertices `0..n`.
///
/// Edges are stored normalized (`u < v`) and sorted; adjacency lists are
/// sorted ascending. Values are immutable once constructed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    id: String,
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(
        id: impl Into<String>,
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for endpoint in [u, v] {
                if endpoint >= n {
                    return Err(GraphError::EndpointOutOfRange { endpoint, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u.to_string()));
            }
            let key = (u.min(v), u.max(v));
            if !set.insert(key) {
                return Err(GraphError::DuplicateEdge(key.0.to_string(), key.1.to_string()));
            }
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Self {
            id: id.into(),
            n,
            edges,
            adjacency,
        })
    }

    pub fn complete(id: impl Into<String>, n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::new(id, n, edges).expect("complete graph is simple")
    }

    pub fn path(id: impl Into<String>, n: usize) -> Self {
        Self::new(id, n, (1..n).map(|v| (v - 1, v))).expect("path is simple")
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(id: impl Into<String>, n: usize) -> Self {
        assert!(n >= 3, "cycles need at least 3 vertices");
        Self::new(id, n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle is simple")
    }

    pub fn complete_bipartite(id: impl Into<String>, a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
        Self::new(id, a + b, edges).expect("complete bipartite graph is simple")
    }

    pub fn petersen(id: impl Into<String>) -> Self {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Self::new(id, 10, outer.chain(spokes).chain(inner)).expect("Petersen graph is simple")
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.adjacency.iter().map(Vec::len)
    }

    pub fn min_degree(&self) -> usize {
        self.degrees().min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().max().unwrap_or(0)
    }

    /// Neighborhood bitmasks, available when `n <= 64`.
    pub fn neighbor_masks(&self) -> Option<Vec<u64>> {
        if self.n > 64 {
            return None;
        }
        Some(
            self.adjacency
                .iter()
                .map(|list| list.iter().fold(0u64, |mask, &v| mask | (1 << v)))
                .collect(),
        )
    }

    /// Breadth-first distances from `source`; `None` marks unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap_or_default();
            for &w in &self.adjacency[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// True iff a traversal from vertex 0 reaches every vertex.
    pub fn is_connected(&self) -> Result<bool, GraphError> {
        if self.n == 0 {
            return Err(GraphError::EmptyGraph);
        }
        Ok(self.distances_from(0).iter().all(Option::is_some))
    }
}

/// Graph ids double as file stems and CSV cells.
pub fn validate_id(id: &str) -> Result<(), GraphError> {
    let ok = !id.is_empty() && id.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-');
    if ok {
        Ok(())
    } else {
        Err(GraphError::InvalidId(id.to_string()))
    }
}
