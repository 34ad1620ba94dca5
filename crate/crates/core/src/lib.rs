//! Automated conjecturing over a database of small connected graphs.
//!
//! Graphs are mapped to a feature table of exact integer invariants and
//! Boolean properties. For a chosen target invariant and direction, every
//! hypothesis (a conjunction of Boolean properties) and every other invariant
//! yields a sharp linear bound fitted by an exact two-variable linear
//! program. The resulting conjectures are sorted by touch number and pruned
//! by the Theo generality filter, the static Dalmatian novelty filter and a
//! list of known results.

pub mod engine;
pub mod error;
pub mod exec;
pub mod filters;
pub mod fit;
pub mod graph;
pub mod invariants;
pub mod repository;
pub mod table;

pub use engine::{
    conjecture_statement, evaluate, generate, generate_with, Conjecture, ConjectureRun, Evaluation, GenerationConfig,
    Heuristics,
};
pub use exec::Execution;
pub use filters::{FilterReport, KnownResult, Removal};
pub use fit::{fit, BoundDirection, BoundingFunction, FitResult, Rational};
pub use graph::{evaluate_boolean, parse_edge_list, to_edge_list, BooleanPropertyId, Graph};
pub use invariants::{brute_force_oracle, compute, forcing_closure, InvariantId};
pub use repository::{FalsificationReport, GraphStore};
pub use table::{build_table, read_csv, select_rows, write_csv, FeatureRow, FeatureTable, Hypothesis};
