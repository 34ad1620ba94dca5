//! Exact computation of the numerical invariant roster.
//!
//! The NP-hard invariants use bitset branch-and-bound and therefore require
//! `n <= 64` (edge domination requires at most 64 edges). Branching always
//! visits vertices in ascending index order, so searches are reproducible.

mod domination;
mod forcing;
mod independence;
mod matching;
pub mod oracle;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::InvariantError;
use crate::graph::Graph;

pub use forcing::forcing_closure;
pub use matching::maximum_matching;
pub use oracle::{brute_force_oracle, brute_force_oracle_with_cap, DEFAULT_ORACLE_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InvariantId {
    Order,
    Size,
    MinDegree,
    MaxDegree,
    Diameter,
    IndependenceNumber,
    MatchingNumber,
    VertexCoverNumber,
    DominationNumber,
    TotalDominationNumber,
    TwoDominationNumber,
    EdgeDominationNumber,
    ZeroForcingNumber,
    TotalZeroForcingNumber,
}

impl InvariantId {
    pub const ALL: [InvariantId; 14] = [
        Self::Order,
        Self::Size,
        Self::MinDegree,
        Self::MaxDegree,
        Self::Diameter,
        Self::IndependenceNumber,
        Self::MatchingNumber,
        Self::VertexCoverNumber,
        Self::DominationNumber,
        Self::TotalDominationNumber,
        Self::TwoDominationNumber,
        Self::EdgeDominationNumber,
        Self::ZeroForcingNumber,
        Self::TotalZeroForcingNumber,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Order => "order",
            Self::Size => "size",
            Self::MinDegree => "min_degree",
            Self::MaxDegree => "max_degree",
            Self::Diameter => "diameter",
            Self::IndependenceNumber => "independence_number",
            Self::MatchingNumber => "matching_number",
            Self::VertexCoverNumber => "vertex_cover_number",
            Self::DominationNumber => "domination_number",
            Self::TotalDominationNumber => "total_domination_number",
            Self::TwoDominationNumber => "two_domination_number",
            Self::EdgeDominationNumber => "edge_domination_number",
            Self::ZeroForcingNumber => "zero_forcing_number",
            Self::TotalZeroForcingNumber => "total_zero_forcing_number",
        }
    }

    pub fn definition(self) -> &'static str {
        match self {
            Self::Order => "number of vertices",
            Self::Size => "number of edges",
            Self::MinDegree => "minimum vertex degree",
            Self::MaxDegree => "maximum vertex degree",
            Self::Diameter => "largest distance between two vertices",
            Self::IndependenceNumber => "maximum size of a set of pairwise non-adjacent vertices",
            Self::MatchingNumber => "maximum size of a set of pairwise non-incident edges",
            Self::VertexCoverNumber => "minimum size of a vertex set meeting every edge",
            Self::DominationNumber => "minimum size of a set S with every vertex outside S adjacent to S",
            Self::TotalDominationNumber => "minimum size of a set S with every vertex adjacent to a member of S",
            Self::TwoDominationNumber => {
                "minimum size of a set S with every vertex outside S having at least 2 neighbors in S"
            }
            Self::EdgeDominationNumber => {
                "minimum size of an edge set F with every edge outside F sharing an endpoint with F"
            }
            Self::ZeroForcingNumber => {
                "minimum size of a set whose closure under the color-change rule is all vertices"
            }
            Self::TotalZeroForcingNumber => "minimum size of a zero forcing set inducing no isolated vertex",
        }
    }

    /// Only the degree-sequence invariants are defined on disconnected graphs.
    pub fn requires_connected(self) -> bool {
        !matches!(self, Self::Order | Self::Size | Self::MinDegree | Self::MaxDegree)
    }
}

impl fmt::Display for InvariantId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InvariantId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| format!("unknown invariant {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantValue {
    pub graph_id: String,
    pub invariant: InvariantId,
    pub value: u64,
}

/// Computes `inv` exactly on `g`.
pub fn compute(g: &Graph, inv: InvariantId) -> Result<u64, InvariantError> {
    use InvariantId::*;
    let domain = |reason: &str| InvariantError::Domain {
        invariant: inv,
        reason: reason.to_string(),
    };
    if inv.requires_connected() && !g.is_connected().unwrap_or(false) {
        return Err(domain("graph is empty or disconnected"));
    }
    let value = match inv {
        Order => g.order(),
        Size => g.size(),
        MinDegree => g.min_degree(),
        MaxDegree => g.max_degree(),
        Diameter => (0..g.order())
            .flat_map(|s| g.distances_from(s))
            .map(|d| d.unwrap_or_default())
            .max()
            .unwrap_or(0),
        MatchingNumber => maximum_matching(g).iter().filter(|m| m.is_some()).count() / 2,
        EdgeDominationNumber => domination::edge_domination_number(g).ok_or_else(|| domain("more than 64 edges"))?,
        _ => {
            let masks = g
                .neighbor_masks()
                .ok_or_else(|| domain("exact search supports at most 64 vertices"))?;
            match inv {
                IndependenceNumber => independence::independence_number(&masks),
                VertexCoverNumber => g.order() - independence::independence_number(&masks),
                DominationNumber => domination::domination_number(&masks),
                TwoDominationNumber => domination::two_domination_number(&masks),
                TotalDominationNumber => {
                    if g.min_degree() == 0 {
                        return Err(domain("graph has an isolated vertex"));
                    }
                    domination::total_domination_number(&masks)
                }
                ZeroForcingNumber => forcing::zero_forcing_number(&masks),
                TotalZeroForcingNumber => {
                    if g.min_degree() == 0 {
                        return Err(domain("graph has an isolated vertex"));
                    }
                    forcing::total_zero_forcing_number(&masks)
                }
                _ => unreachable!("handled above"),
            }
        }
    };
    Ok(value as u64)
}

pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}
