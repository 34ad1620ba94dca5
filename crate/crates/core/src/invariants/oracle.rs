//! Exhaustive-enumeration oracles used to check the exact solvers.
//!
//! Deliberately shares nothing with the solver path: adjacency is an
//! explicit boolean matrix and every set is enumerated without pruning
//! beyond feasibility checks.

use super::InvariantId;
use crate::error::InvariantError;
use crate::graph::Graph;

pub const DEFAULT_ORACLE_CAP: usize = 12;

pub fn brute_force_oracle(g: &Graph, inv: InvariantId) -> Result<u64, InvariantError> {
    brute_force_oracle_with_cap(g, inv, DEFAULT_ORACLE_CAP)
}

pub fn brute_force_oracle_with_cap(g: &Graph, inv: InvariantId, cap: usize) -> Result<u64, InvariantError> {
    let n = g.order();
    if n > cap {
        return Err(InvariantError::OracleCap { n, cap });
    }
    let adj = Matrix::new(g);
    let domain = |reason: &str| InvariantError::Domain {
        invariant: inv,
        reason: reason.to_string(),
    };
    let distances = adj.distances();
    let connected = n > 0 && distances.iter().flatten().all(Option::is_some);
    if inv.requires_connected() && !connected {
        return Err(domain("graph is empty or disconnected"));
    }
    let isolated = (0..n).any(|v| adj.degree(v) == 0);
    let subsets = || (0u32..(1 << n)).map(|mask| members(mask, n));

    use InvariantId::*;
    let value = match inv {
        Order => n,
        Size => adj.edges().len(),
        MinDegree => (0..n).map(|v| adj.degree(v)).min().unwrap_or(0),
        MaxDegree => (0..n).map(|v| adj.degree(v)).max().unwrap_or(0),
        Diameter => distances.iter().flatten().flatten().copied().max().unwrap_or(0),
        IndependenceNumber => subsets()
            .filter(|s| pairs(s).all(|(a, b)| !adj.edge(a, b)))
            .map(|s| s.len())
            .max()
            .unwrap_or(0),
        VertexCoverNumber => subsets()
            .filter(|s| adj.edges().iter().all(|(a, b)| s.contains(a) || s.contains(b)))
            .map(|s| s.len())
            .min()
            .unwrap_or(0),
        DominationNumber => min_subset(subsets(), |s| {
            (0..n).all(|v| s.contains(&v) || s.iter().any(|&w| adj.edge(v, w)))
        }),
        TotalDominationNumber => {
            if isolated {
                return Err(domain("graph has an isolated vertex"));
            }
            min_subset(subsets(), |s| (0..n).all(|v| s.iter().any(|&w| adj.edge(v, w))))
        }
        TwoDominationNumber => min_subset(subsets(), |s| {
            (0..n).all(|v| s.contains(&v) || s.iter().filter(|&&w| adj.edge(v, w)).count() >= 2)
        }),
        MatchingNumber => {
            let edges = adj.edges();
            let mut k = 0;
            while edge_subsets(edges.len(), k + 1).any(|f| pairs(&f).all(|(i, j)| !share_endpoint(edges[i], edges[j])))
            {
                k += 1;
            }
            k
        }
        EdgeDominationNumber => {
            let edges = adj.edges();
            (0..=edges.len())
                .find(|&k| {
                    edge_subsets(edges.len(), k).any(|f| {
                        (0..edges.len())
                            .all(|e| f.contains(&e) || f.iter().any(|&d| share_endpoint(edges[e], edges[d])))
                    })
                })
                .unwrap_or(0)
        }
        ZeroForcingNumber => min_subset(subsets(), |s| adj.forces_everything(s)),
        TotalZeroForcingNumber => {
            if isolated {
                return Err(domain("graph has an isolated vertex"));
            }
            min_subset(subsets(), |s| {
                s.iter().all(|&v| s.iter().any(|&w| adj.edge(v, w))) && adj.forces_everything(s)
            })
        }
    };
    Ok(value as u64)
}

struct Matrix {
    n: usize,
    cells: Vec<Vec<bool>>,
}

impl Matrix {
    fn new(g: &Graph) -> Self {
        let n = g.order();
        let mut cells = vec![vec![false; n]; n];
        for &(u, v) in g.edges() {
            cells[u][v] = true;
            cells[v][u] = true;
        }
        Self { n, cells }
    }

    fn edge(&self, u: usize, v: usize) -> bool {
        self.cells[u][v]
    }

    fn degree(&self, v: usize) -> usize {
        self.cells[v].iter().filter(|&&b| b).count()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| (u + 1..self.n).map(move |v| (u, v)))
            .filter(|&(u, v)| self.cells[u][v])
            .collect()
    }

    // Floyd-Warshall
    fn distances(&self) -> Vec<Vec<Option<usize>>> {
        let n = self.n;
        let mut d: Vec<Vec<Option<usize>>> = (0..n)
            .map(|u| {
                (0..n)
                    .map(|v| match (u == v, self.cells[u][v]) {
                        (true, _) => Some(0),
                        (false, true) => Some(1),
                        _ => None,
                    })
                    .collect()
            })
            .collect();
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                        if d[i][j].is_none_or(|c| a + b < c) {
                            d[i][j] = Some(a + b);
                        }
                    }
                }
            }
        }
        d
    }

    fn forces_everything(&self, start: &[usize]) -> bool {
        let mut blue = vec![false; self.n];
        for &v in start {
            blue[v] = true;
        }
        loop {
            let mut forced = None;
            'scan: for v in 0..self.n {
                if !blue[v] {
                    continue;
                }
                let white: Vec<usize> = (0..self.n).filter(|&w| self.cells[v][w] && !blue[w]).collect();
                if white.len() == 1 {
                    forced = Some(white[0]);
                    break 'scan;
                }
            }
            match forced {
                Some(w) => blue[w] = true,
                None => return blue.iter().all(|&b| b),
            }
        }
    }
}

fn members(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask & (1 << i) != 0).collect()
}

fn pairs(items: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    items
        .iter()
        .enumerate()
        .flat_map(move |(i, &a)| items[i + 1..].iter().map(move |&b| (a, b)))
}

fn min_subset(subsets: impl Iterator<Item = Vec<usize>>, accept: impl Fn(&[usize]) -> bool) -> usize {
    subsets.filter(|s| accept(s)).map(|s| s.len()).min().unwrap_or(0)
}

fn share_endpoint(a: (usize, usize), b: (usize, usize)) -> bool {
    a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1
}

/// All k-subsets of `0..m` as index vectors, in lexicographic order.
fn edge_subsets(m: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current: Option<Vec<usize>> = (k <= m).then(|| (0..k).collect());
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                current = None;
                break;
            }
            i -= 1;
            if next[i] < m - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                current = Some(next);
                break;
            }
        }
        Some(out)
    })
}
