//! Post-processing of a raw conjecture list: touch-number sort, the Theo
//! generality filter, the static Dalmatian novelty filter and known-results
//! removal. Every filter only deletes; surviving conjectures are untouched.

use std::cmp::Reverse;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::engine::{Conjecture, Heuristics};
use crate::fit::{rational_string, BoundDirection, Rational};
use crate::invariants::InvariantId;
use crate::table::{FeatureTable, Hypothesis};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RemovalReason {
    TheoSubsumedBy(String),
    DalmatianNoNewWitness,
    KnownResult(String),
}

impl fmt::Display for RemovalReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::TheoSubsumedBy(id) => write!(f, "theo_subsumed_by {id}"),
            Self::DalmatianNoNewWitness => f.write_str("dalmatian_no_new_witness"),
            Self::KnownResult(citation) => write!(f, "known_result {citation}"),
        }
    }
}

impl Serialize for RemovalReason {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RemovalReason {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        if text == "dalmatian_no_new_witness" {
            Ok(Self::DalmatianNoNewWitness)
        } else if let Some(id) = text.strip_prefix("theo_subsumed_by ") {
            Ok(Self::TheoSubsumedBy(id.to_string()))
        } else if let Some(citation) = text.strip_prefix("known_result ") {
            Ok(Self::KnownResult(citation.to_string()))
        } else {
            Err(serde::de::Error::custom(format!("unknown removal reason {text:?}")))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Removal {
    pub id: String,
    pub reason: RemovalReason,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterReport {
    pub input_count: usize,
    pub output_count: usize,
    pub removed: Vec<Removal>,
}

impl FilterReport {
    fn identity(count: usize) -> Self {
        Self {
            input_count: count,
            output_count: count,
            removed: Vec::new(),
        }
    }

    fn merge(mut self, next: FilterReport) -> Self {
        self.output_count = next.output_count;
        self.removed.extend(next.removed);
        self
    }
}

/// A published inequality. Generated conjectures with the same inequality
/// whose scope lies inside the scope of `hypothesis_at_most` are suppressed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnownResult {
    pub target: InvariantId,
    pub other: InvariantId,
    pub direction: BoundDirection,
    #[serde(with = "rational_string")]
    pub m: Rational,
    #[serde(with = "rational_string")]
    pub b: Rational,
    pub hypothesis_at_most: Hypothesis,
    pub citation: String,
}

#[derive(Debug, Error)]
#[error("malformed known-results file: {0}")]
pub struct KnownResultsError(#[from] serde_json::Error);

pub fn parse_known_results(text: &str) -> Result<Vec<KnownResult>, KnownResultsError> {
    Ok(serde_json::from_str(text)?)
}

/// Touch number nonincreasing; ties broken by conjecture id.
pub fn sort_by_touch(mut list: Vec<Conjecture>) -> Vec<Conjecture> {
    list.sort_by(|a, b| (Reverse(a.touch_number), &a.id).cmp(&(Reverse(b.touch_number), &b.id)));
    list
}

/// Among conjectures sharing one inequality, keeps only those whose scope is
/// not strictly contained in another's. Equal scopes keep the member with the
/// fewest conjuncts, then the earliest.
pub fn theo(list: Vec<Conjecture>) -> (Vec<Conjecture>, FilterReport) {
    let input_count = list.len();
    let mut removed = Vec::new();
    let mut keep = vec![true; list.len()];
    for (i, c) in list.iter().enumerate() {
        // report the surviving representative of the widest scope
        let dominator = list
            .iter()
            .enumerate()
            .filter(|&(j, d)| {
                j != i
                    && c.same_inequality(d)
                    && d.scope_set.is_superset(&c.scope_set)
                    && (d.scope_set.len() > c.scope_set.len() || (d.hypothesis.len(), j) < (c.hypothesis.len(), i))
            })
            .min_by_key(|&(j, d)| (Reverse(d.scope_set.len()), d.hypothesis.len(), j));
        if let Some((_, d)) = dominator {
            keep[i] = false;
            removed.push(Removal {
                id: c.id.clone(),
                reason: RemovalReason::TheoSubsumedBy(d.id.clone()),
            });
        }
    }
    let out: Vec<Conjecture> = list.into_iter().zip(keep).filter_map(|(c, k)| k.then_some(c)).collect();
    let report = FilterReport {
        input_count,
        output_count: out.len(),
        removed,
    };
    (out, report)
}

/// Sequential scan over a touch-sorted list: a conjecture survives iff its
/// equality set contains a graph not yet witnessed by an earlier survivor.
pub fn dalmatian_static(list: Vec<Conjecture>) -> (Vec<Conjecture>, FilterReport) {
    let input_count = list.len();
    let mut witnessed: BTreeSet<String> = BTreeSet::new();
    let mut removed = Vec::new();
    let mut out = Vec::new();
    for (position, c) in list.into_iter().enumerate() {
        let contributes = position == 0 || !c.equality_set.is_subset(&witnessed);
        if contributes {
            witnessed.extend(c.equality_set.iter().cloned());
            out.push(c);
        } else {
            removed.push(Removal {
                id: c.id,
                reason: RemovalReason::DalmatianNoNewWitness,
            });
        }
    }
    let report = FilterReport {
        input_count,
        output_count: out.len(),
        removed,
    };
    (out, report)
}

pub fn remove_known(
    list: Vec<Conjecture>,
    known: &[KnownResult],
    table: &FeatureTable,
) -> (Vec<Conjecture>, FilterReport) {
    let input_count = list.len();
    let scopes: Vec<Option<BTreeSet<&str>>> = known
        .iter()
        .map(|k| {
            table
                .select_indices(&k.hypothesis_at_most)
                .ok()
                .map(|rows| rows.into_iter().map(|r| table.rows()[r].as_str()).collect())
        })
        .collect();
    let mut removed = Vec::new();
    let mut out = Vec::new();
    for c in list {
        let hit = known.iter().zip(&scopes).find(|(k, scope)| {
            k.target == c.target
                && k.other == c.other
                && k.direction == c.bound.direction
                && k.m == c.bound.m
                && k.b == c.bound.b
                && scope
                    .as_ref()
                    .is_some_and(|s| c.scope_set.iter().all(|g| s.contains(g.as_str())))
        });
        match hit {
            Some((k, _)) => removed.push(Removal {
                id: c.id,
                reason: RemovalReason::KnownResult(k.citation.clone()),
            }),
            None => out.push(c),
        }
    }
    let report = FilterReport {
        input_count,
        output_count: out.len(),
        removed,
    };
    (out, report)
}

/// Fixed order: sort, Theo, Dalmatian, known results; each stage optional.
pub fn run_pipeline(
    list: Vec<Conjecture>,
    heuristics: &Heuristics,
    known: &[KnownResult],
    table: &FeatureTable,
) -> (Vec<Conjecture>, FilterReport) {
    let mut report = FilterReport::identity(list.len());
    let mut list = list;
    if heuristics.sort {
        list = sort_by_touch(list);
    }
    if heuristics.theo {
        let (next, r) = theo(list);
        list = next;
        report = report.merge(r);
    }
    if heuristics.dalmatian {
        let (next, r) = dalmatian_static(list);
        list = next;
        report = report.merge(r);
    }
    if heuristics.known_filter {
        let (next, r) = remove_known(list, known, table);
        list = next;
        report = report.merge(r);
    }
    (list, report)
}
