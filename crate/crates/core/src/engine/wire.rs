//! JSON wire format for conjectures. Rationals travel as exact strings.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{conjecture_statement, Conjecture};
use crate::fit::{format_rational, parse_rational, BoundDirection, BoundingFunction};
use crate::invariants::InvariantId;
use crate::table::Hypothesis;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConjectureRecord {
    pub id: String,
    pub statement: String,
    pub hypothesis: Vec<String>,
    pub target: InvariantId,
    pub other: InvariantId,
    pub direction: BoundDirection,
    pub m: String,
    pub b: String,
    pub touch_number: usize,
    pub equality_set: Vec<String>,
    pub scope_set: Vec<String>,
}

impl From<Conjecture> for ConjectureRecord {
    fn from(c: Conjecture) -> Self {
        Self {
            statement: conjecture_statement(&c),
            hypothesis: c.hypothesis.names(),
            m: format_rational(&c.bound.m),
            b: format_rational(&c.bound.b),
            direction: c.bound.direction,
            id: c.id,
            target: c.target,
            other: c.other,
            touch_number: c.touch_number,
            equality_set: c.equality_set.into_iter().collect(),
            scope_set: c.scope_set.into_iter().collect(),
        }
    }
}

impl TryFrom<ConjectureRecord> for Conjecture {
    type Error = String;

    fn try_from(r: ConjectureRecord) -> Result<Self, Self::Error> {
        let hypothesis = Hypothesis::new(r.hypothesis.iter().map(|s| s.parse()).collect::<Result<Vec<_>, _>>()?)?;
        let bound = BoundingFunction {
            m: parse_rational(&r.m)?,
            b: parse_rational(&r.b)?,
            direction: r.direction,
        };
        let equality_set: BTreeSet<String> = r.equality_set.into_iter().collect();
        let scope_set: BTreeSet<String> = r.scope_set.into_iter().collect();
        if r.target == r.other {
            return Err("target and other invariant coincide".into());
        }
        if equality_set.len() != r.touch_number {
            return Err(format!(
                "touch_number {} disagrees with {} equality witnesses",
                r.touch_number,
                equality_set.len()
            ));
        }
        if !equality_set.is_subset(&scope_set) {
            return Err("equality_set is not contained in scope_set".into());
        }
        Ok(Conjecture {
            id: r.id,
            hypothesis,
            target: r.target,
            other: r.other,
            bound,
            touch_number: r.touch_number,
            equality_set,
            scope_set,
        })
    }
}

pub fn conjectures_to_json(list: &[Conjecture]) -> String {
    serde_json::to_string_pretty(list).expect("conjectures serialize")
}

pub fn conjectures_from_json(text: &str) -> Result<Vec<Conjecture>, serde_json::Error> {
    serde_json::from_str(text)
}
