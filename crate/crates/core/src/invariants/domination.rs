//! Minimum dominating-type sets by a shared branch-and-bound.
//!
//! Every variant has the form "find a minimum S such that every vertex is
//! satisfied", where an unsatisfied vertex u can only become satisfied by
//! adding one of its candidate vertices. The search picks the first
//! unsatisfied vertex and branches on its candidates in ascending order,
//! excluding earlier candidates from later branches.

use super::{bits, full_mask};
use crate::graph::Graph;

#[derive(Clone, Copy)]
enum Rule {
    /// u in S or a neighbor in S
    Closed,
    /// a neighbor in S
    Open,
    /// u in S or at least two neighbors in S
    Double,
}

struct Problem<'a> {
    masks: &'a [u64],
    rule: Rule,
    reach: u32,
}

impl Problem<'_> {
    fn satisfied(&self, u: usize, chosen: u64) -> bool {
        let open = self.masks[u] & chosen;
        match self.rule {
            Rule::Closed => chosen & (1 << u) != 0 || open != 0,
            Rule::Open => open != 0,
            Rule::Double => chosen & (1 << u) != 0 || open.count_ones() >= 2,
        }
    }

    fn candidates(&self, u: usize) -> u64 {
        match self.rule {
            Rule::Closed | Rule::Double => self.masks[u] | (1 << u),
            Rule::Open => self.masks[u],
        }
    }

    fn search(&self, chosen: u64, excluded: u64, best: &mut u32) {
        let size = chosen.count_ones();
        if size >= *best {
            return;
        }
        let all = full_mask(self.masks.len());
        let mut unsatisfied = bits(all).filter(|&u| !self.satisfied(u, chosen));
        let Some(first) = unsatisfied.next() else {
            *best = size;
            return;
        };
        let remaining = 1 + unsatisfied.count() as u32;
        // each added vertex satisfies at most itself and its neighbors
        if size + remaining.div_ceil(self.reach) >= *best {
            return;
        }
        let mut banned = excluded;
        for w in bits(self.candidates(first) & !chosen & !excluded) {
            self.search(chosen | (1 << w), banned, best);
            banned |= 1 << w;
        }
    }

    fn solve(masks: &[u64], rule: Rule) -> usize {
        let max_degree = masks.iter().map(|m| m.count_ones()).max().unwrap_or(0);
        let problem = Problem {
            masks,
            rule,
            reach: max_degree + 1,
        };
        let mut best = masks.len() as u32 + 1;
        problem.search(0, 0, &mut best);
        best as usize
    }
}

pub(crate) fn domination_number(masks: &[u64]) -> usize {
    Problem::solve(masks, Rule::Closed)
}

/// Caller guarantees there is no isolated vertex.
pub(crate) fn total_domination_number(masks: &[u64]) -> usize {
    Problem::solve(masks, Rule::Open)
}

pub(crate) fn two_domination_number(masks: &[u64]) -> usize {
    Problem::solve(masks, Rule::Double)
}

/// Edge domination is domination in the line graph. `None` above 64 edges.
pub(crate) fn edge_domination_number(g: &Graph) -> Option<usize> {
    let edges = g.edges();
    if edges.len() > 64 {
        return None;
    }
    let line_masks: Vec<u64> = edges
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| {
            edges
                .iter()
                .enumerate()
                .filter(|&(j, &(c, d))| j != i && (a == c || a == d || b == c || b == d))
                .fold(0u64, |mask, (j, _)| mask | (1 << j))
        })
        .collect();
    Some(domination_number(&line_masks))
}
