//! Conjecture generation: for every hypothesis and every other invariant,
//! fit a sharp bound on the target over the rows the hypothesis selects,
//! then run the heuristic filter pipeline.

mod wire;

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::exec::Execution;
use crate::filters::{self, FilterReport, KnownResult};
use crate::fit::{fit, format_rational, BoundDirection, BoundingFunction, Rational};
use crate::graph::BooleanPropertyId;
use crate::invariants::InvariantId;
use crate::table::{FeatureRow, FeatureTable, Hypothesis};

pub use wire::{conjectures_from_json, conjectures_to_json};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("empty database")]
    EmptyDatabase,
    #[error("target {0} is not a numeric column of the table")]
    UnknownTarget(InvariantId),
    #[error("hypothesis depth must be at least 1")]
    InvalidDepth,
    #[error("min_scope must be at least 1")]
    InvalidMinScope,
    #[error("row {row} is missing column {column}")]
    MissingColumn { row: String, column: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Heuristics {
    pub sort: bool,
    pub theo: bool,
    pub dalmatian: bool,
    pub known_filter: bool,
}

impl Default for Heuristics {
    fn default() -> Self {
        Self {
            sort: true,
            theo: true,
            dalmatian: true,
            known_filter: true,
        }
    }
}

impl Heuristics {
    pub fn none() -> Self {
        Self {
            sort: false,
            theo: false,
            dalmatian: false,
            known_filter: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationConfig {
    pub target: InvariantId,
    pub direction: BoundDirection,
    pub hypothesis_depth: usize,
    pub min_scope: usize,
    pub heuristics: Heuristics,
}

impl GenerationConfig {
    pub fn new(target: InvariantId, direction: BoundDirection) -> Self {
        Self {
            target,
            direction,
            hypothesis_depth: 2,
            min_scope: 3,
            heuristics: Heuristics::default(),
        }
    }
}

/// A sharp conjectured inequality `target (<=|>=) m*other + b` over the
/// graphs satisfying `hypothesis`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "wire::ConjectureRecord", try_from = "wire::ConjectureRecord")]
pub struct Conjecture {
    pub id: String,
    pub hypothesis: Hypothesis,
    pub target: InvariantId,
    pub other: InvariantId,
    pub bound: BoundingFunction,
    pub touch_number: usize,
    pub equality_set: BTreeSet<String>,
    pub scope_set: BTreeSet<String>,
}

impl Conjecture {
    pub fn statement(&self) -> String {
        conjecture_statement(self)
    }

    /// Same target, other invariant, direction and line.
    pub fn same_inequality(&self, other: &Conjecture) -> bool {
        self.target == other.target && self.other == other.other && self.bound == other.bound
    }
}

/// Stable id over the hypothesis, the invariants, the direction and the line.
pub fn conjecture_id(
    hypothesis: &Hypothesis,
    target: InvariantId,
    other: InvariantId,
    bound: &BoundingFunction,
) -> String {
    let key = format!(
        "{}|{}|{}|{}|{}|{}",
        hypothesis.names().join("+"),
        target,
        other,
        bound.direction,
        format_rational(&bound.m),
        format_rational(&bound.b)
    );
    Sha256::digest(key.as_bytes())
        .iter()
        .take(8)
        .map(|byte| format!("{byte:02x}"))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Evaluation {
    NotInScope,
    HoldsStrict,
    HoldsEqual,
    Violated,
}

/// A generated, filtered conjecture list with its provenance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureRun {
    pub target: InvariantId,
    pub direction: BoundDirection,
    pub heuristics: Heuristics,
    pub hypothesis_depth: usize,
    pub min_scope: usize,
    /// Every graph in the database the run was generated from.
    pub graphs: Vec<String>,
    pub hypotheses_considered: usize,
    pub conjectures: Vec<Conjecture>,
    pub report: FilterReport,
}

pub fn generate(table: &FeatureTable, config: &GenerationConfig) -> Result<ConjectureRun, EngineError> {
    generate_with(table, config, &[], Execution::default())
}

pub fn generate_with(
    table: &FeatureTable,
    config: &GenerationConfig,
    known: &[KnownResult],
    exec: Execution,
) -> Result<ConjectureRun, EngineError> {
    if table.is_empty() {
        return Err(EngineError::EmptyDatabase);
    }
    if config.hypothesis_depth == 0 {
        return Err(EngineError::InvalidDepth);
    }
    if config.min_scope == 0 {
        return Err(EngineError::InvalidMinScope);
    }
    let target_values = table
        .numeric(config.target)
        .ok_or(EngineError::UnknownTarget(config.target))?;

    let hypotheses = enumerate_hypotheses(table, config.hypothesis_depth)
        .into_iter()
        .filter(|(_, rows)| rows.len() >= config.min_scope)
        .collect::<Vec<_>>();
    let others: Vec<InvariantId> = table.numeric_columns().filter(|&inv| inv != config.target).collect();
    let tasks: Vec<(usize, InvariantId)> = (0..hypotheses.len())
        .flat_map(|h| others.iter().map(move |&o| (h, o)))
        .collect();

    let fitted = exec.map(&tasks, |&(h, other)| {
        let (hypothesis, rows) = &hypotheses[h];
        let other_values = table.numeric(other).expect("listed column");
        let points: Vec<(i64, i64)> = rows
            .iter()
            .map(|&r| (other_values[r] as i64, target_values[r] as i64))
            .collect();
        let result = fit(&points, config.direction).expect("scope is nonempty");
        // a zero slope says nothing about `other`
        if result.touch_count == 0 || result.bound.m == Rational::from_integer(0) {
            return None;
        }
        let id = conjecture_id(hypothesis, config.target, other, &result.bound);
        Some(Conjecture {
            id,
            hypothesis: hypothesis.clone(),
            target: config.target,
            other,
            bound: result.bound,
            touch_number: result.touch_count,
            equality_set: result
                .touch_set
                .iter()
                .map(|&i| table.rows()[rows[i]].clone())
                .collect(),
            scope_set: rows.iter().map(|&r| table.rows()[r].clone()).collect(),
        })
    });
    let raw: Vec<Conjecture> = fitted.into_iter().flatten().collect();
    let (conjectures, report) = filters::run_pipeline(raw, &config.heuristics, known, table);

    Ok(ConjectureRun {
        target: config.target,
        direction: config.direction,
        heuristics: config.heuristics,
        hypothesis_depth: config.hypothesis_depth,
        min_scope: config.min_scope,
        graphs: table.rows().to_vec(),
        hypotheses_considered: hypotheses.len(),
        conjectures,
        report,
    })
}

/// All conjunctions of up to `depth` boolean columns, deduplicated by the
/// rows they select; the first (fewest conjuncts, then column order) wins.
pub fn enumerate_hypotheses(table: &FeatureTable, depth: usize) -> Vec<(Hypothesis, Vec<usize>)> {
    let columns: Vec<BooleanPropertyId> = table.boolean_columns().collect();
    let mut seen: HashMap<Vec<usize>, ()> = HashMap::new();
    let mut out = Vec::new();
    for size in 1..=depth.min(columns.len()) {
        for combo in combinations(columns.len(), size) {
            let h = Hypothesis::new(combo.iter().map(|&i| columns[i])).expect("distinct columns");
            let rows = table.select_indices(&h).expect("columns exist");
            if seen.insert(rows.clone(), ()).is_none() {
                out.push((h, rows));
            }
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

pub fn evaluate(c: &Conjecture, row: &FeatureRow) -> Result<Evaluation, EngineError> {
    let missing = |column: &str| EngineError::MissingColumn {
        row: row.id.clone(),
        column: column.to_string(),
    };
    for p in c.hypothesis.conjuncts() {
        if !*row.boolean.get(p).ok_or_else(|| missing(p.name()))? {
            return Ok(Evaluation::NotInScope);
        }
    }
    let lhs = *row.numeric.get(&c.target).ok_or_else(|| missing(c.target.name()))?;
    let x = *row.numeric.get(&c.other).ok_or_else(|| missing(c.other.name()))?;
    let (x, y) = (x as i64, lhs as i64);
    Ok(if !c.bound.satisfied(x, y) {
        Evaluation::Violated
    } else if c.bound.compare(x, y).is_eq() {
        Evaluation::HoldsEqual
    } else {
        Evaluation::HoldsStrict
    })
}

/// Renders `If G is <hypothesis>, then <target> <= <m>·<other> + <b>, and
/// this bound is sharp.` with unit slopes and zero intercepts omitted.
pub fn conjecture_statement(c: &Conjecture) -> String {
    let mut parts = vec!["connected"];
    parts.extend(
        c.hypothesis
            .conjuncts()
            .iter()
            .filter(|&&p| p != BooleanPropertyId::Connected)
            .map(|p| p.name()),
    );
    format!(
        "If G is {}, then {} {} {}, and this bound is sharp.",
        parts.join(" and "),
        c.target,
        c.bound.direction.symbol(),
        render_rhs(&c.bound, c.other)
    )
}

pub(crate) fn render_rhs(bound: &BoundingFunction, other: InvariantId) -> String {
    let zero = Rational::from_integer(0);
    let one = Rational::from_integer(1);
    let mut out = if bound.m == zero {
        return format_rational(&bound.b);
    } else if bound.m == one {
        other.to_string()
    } else if bound.m == -one {
        format!("-{other}")
    } else {
        format!("{}·{other}", format_rational(&bound.m))
    };
    if bound.b > zero {
        out.push_str(&format!(" + {}", format_rational(&bound.b)));
    } else if bound.b < zero {
        out.push_str(&format!(" − {}", format_rational(&-bound.b)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::table::build_table;
    use BooleanPropertyId::*;
    use InvariantId::*;

    fn r(p: i128, q: i128) -> Rational {
        Rational::new(p, q)
    }

    fn conj(
        hyp: &[BooleanPropertyId],
        target: InvariantId,
        other: InvariantId,
        m: Rational,
        b: Rational,
    ) -> Conjecture {
        let hypothesis = Hypothesis::new(hyp.iter().copied()).unwrap();
        let bound = BoundingFunction {
            m,
            b,
            direction: BoundDirection::Upper,
        };
        Conjecture {
            id: conjecture_id(&hypothesis, target, other, &bound),
            hypothesis,
            target,
            other,
            bound,
            touch_number: 1,
            equality_set: BTreeSet::from(["x".to_string()]),
            scope_set: BTreeSet::from(["x".to_string()]),
        }
    }

    #[test]
    fn statements() {
        let c = conj(&[Cubic], IndependenceNumber, MatchingNumber, r(1, 1), r(0, 1));
        assert_eq!(
            c.statement(),
            "If G is connected and cubic, then independence_number ≤ matching_number, and this bound is sharp."
        );
        let c = conj(&[Cubic], IndependenceNumber, TotalDominationNumber, r(3, 2), r(0, 1));
        assert!(c
            .statement()
            .contains("independence_number ≤ 3/2·total_domination_number,"));
        let c = conj(&[Connected], IndependenceNumber, Order, r(1, 1), r(-1, 1));
        assert_eq!(
            c.statement(),
            "If G is connected, then independence_number ≤ order − 1, and this bound is sharp."
        );
        let c = conj(
            &[Regular, Bipartite],
            ZeroForcingNumber,
            DominationNumber,
            r(-1, 1),
            r(5, 2),
        );
        assert!(c
            .statement()
            .starts_with("If G is connected and bipartite and regular, then"));
        assert!(c.statement().contains("≤ -domination_number + 5/2,"));
    }

    #[test]
    fn evaluation_cases() {
        let table = build_table(
            &[Graph::path("P3", 3), Graph::complete_bipartite("K33", 3, 3)],
            &[IndependenceNumber, MatchingNumber],
            &[Connected, Cubic],
        )
        .unwrap();
        let p3 = table.row(table.row_index("P3").unwrap());
        let k33 = table.row(table.row_index("K33").unwrap());
        let cubic = conj(&[Cubic], IndependenceNumber, MatchingNumber, r(1, 1), r(0, 1));
        assert_eq!(evaluate(&cubic, &p3), Ok(Evaluation::NotInScope));
        assert_eq!(evaluate(&cubic, &k33), Ok(Evaluation::HoldsEqual));
        let connected = conj(&[Connected], IndependenceNumber, MatchingNumber, r(1, 1), r(0, 1));
        assert_eq!(evaluate(&connected, &p3), Ok(Evaluation::Violated));
        let loose = conj(&[Connected], IndependenceNumber, MatchingNumber, r(1, 1), r(1, 1));
        assert_eq!(evaluate(&loose, &k33), Ok(Evaluation::HoldsStrict));
        let needs_tree = conj(&[Tree], IndependenceNumber, MatchingNumber, r(1, 1), r(0, 1));
        assert!(matches!(
            evaluate(&needs_tree, &p3),
            Err(EngineError::MissingColumn { .. })
        ));
    }

    #[test]
    fn ids_are_stable_and_distinguish_bounds() {
        let a = conj(&[Cubic], IndependenceNumber, MatchingNumber, r(1, 1), r(0, 1));
        let b = conj(&[Cubic], IndependenceNumber, MatchingNumber, r(1, 1), r(0, 1));
        let c = conj(&[Regular], IndependenceNumber, MatchingNumber, r(1, 1), r(0, 1));
        assert_eq!(a.id, b.id);
        assert_ne!(a.id, c.id);
        assert_eq!(a.id.len(), 16);
    }

    #[test]
    fn hypothesis_enumeration_dedupes_by_scope() {
        let table = build_table(
            &[Graph::complete("K4", 4), Graph::cycle("C5", 5), Graph::path("P3", 3)],
            &[Order, Size],
            &[Connected, Regular, Cubic],
        )
        .unwrap();
        let hyps = enumerate_hypotheses(&table, 2);
        let names: Vec<String> = hyps.iter().map(|(h, _)| h.display_name()).collect();
        // {connected, regular} selects the same rows as {regular}; likewise for cubic
        assert_eq!(names, ["connected", "regular", "cubic"]);
        assert_eq!(enumerate_hypotheses(&table, 1).len(), 3);
    }

    #[test]
    fn small_scopes_are_skipped() {
        let table = build_table(
            &[
                Graph::complete("K4", 4),
                Graph::path("P3", 3),
                Graph::path("P4", 4),
                Graph::cycle("C4", 4),
            ],
            &[IndependenceNumber, Order],
            &[Connected, Cubic],
        )
        .unwrap();
        let run = generate(
            &table,
            &GenerationConfig::new(IndependenceNumber, BoundDirection::Upper),
        )
        .unwrap();
        assert!(run
            .conjectures
            .iter()
            .all(|c| !c.hypothesis.conjuncts().contains(&Cubic)));
        assert_eq!(run.hypotheses_considered, 1);
        let mut config = GenerationConfig::new(Size, BoundDirection::Upper);
        assert_eq!(generate(&table, &config).unwrap_err(), EngineError::UnknownTarget(Size));
        config.target = Order;
        config.min_scope = 0;
        assert_eq!(generate(&table, &config).unwrap_err(), EngineError::InvalidMinScope);
    }
}
