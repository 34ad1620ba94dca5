//! Command-line and HTTP front end over a conjforge graph database.

pub mod api;
pub mod render;

use conjforge::engine::EngineError;
use conjforge::filters::KnownResult;
use conjforge::table::TableError;
use conjforge::{
    generate_with, BooleanPropertyId, BoundDirection, ConjectureRun, Execution, GenerationConfig, GraphStore,
    Heuristics, Hypothesis, InvariantId,
};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RunError {
    #[error("empty database")]
    EmptyDatabase,
    #[error(transparent)]
    Table(TableError),
    #[error(transparent)]
    Engine(EngineError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOptions {
    pub target: InvariantId,
    pub direction: BoundDirection,
    /// Keep only conjectures under exactly this hypothesis.
    pub hypothesis_filter: Option<Hypothesis>,
    pub heuristics: Heuristics,
    pub hypothesis_depth: usize,
    pub min_scope: usize,
    pub limit: Option<usize>,
}

impl RunOptions {
    pub fn new(target: InvariantId, direction: BoundDirection) -> Self {
        let config = GenerationConfig::new(target, direction);
        Self {
            target,
            direction,
            hypothesis_filter: None,
            heuristics: config.heuristics,
            hypothesis_depth: config.hypothesis_depth,
            min_scope: config.min_scope,
            limit: None,
        }
    }
}

/// Generates a run over the store's current graphs and records it as the
/// store's most recent run. The hypothesis filter and limit are applied after
/// the pipeline, so `report` still describes the full pipeline.
pub fn run_conjectures(
    store: &GraphStore,
    known: &[KnownResult],
    options: &RunOptions,
) -> Result<ConjectureRun, RunError> {
    if store.is_empty() {
        return Err(RunError::EmptyDatabase);
    }
    let table = store
        .feature_table(&InvariantId::ALL, &BooleanPropertyId::ALL)
        .map_err(|e| match e {
            TableError::EmptyDatabase => RunError::EmptyDatabase,
            other => RunError::Table(other),
        })?;
    let config = GenerationConfig {
        target: options.target,
        direction: options.direction,
        hypothesis_depth: options.hypothesis_depth,
        min_scope: options.min_scope,
        heuristics: options.heuristics,
    };
    let mut run = generate_with(&table, &config, known, Execution::default()).map_err(|e| match e {
        EngineError::EmptyDatabase => RunError::EmptyDatabase,
        other => RunError::Engine(other),
    })?;
    if let Some(h) = &options.hypothesis_filter {
        let wanted = normalized(h);
        run.conjectures.retain(|c| normalized(&c.hypothesis) == wanted);
    }
    if let Some(k) = options.limit {
        run.conjectures.truncate(k);
    }
    store.set_last_run(run.clone());
    Ok(run)
}

// every stored graph is connected, so `connected` adds nothing to a conjunction
fn normalized(h: &Hypothesis) -> Vec<BooleanPropertyId> {
    let rest: Vec<_> = h
        .conjuncts()
        .iter()
        .copied()
        .filter(|&p| p != BooleanPropertyId::Connected)
        .collect();
    if rest.is_empty() {
        vec![BooleanPropertyId::Connected]
    } else {
        rest
    }
}

pub fn read_known(path: &std::path::Path) -> anyhow::Result<Vec<KnownResult>> {
    use anyhow::Context;
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    conjforge::filters::parse_known_results(&text).with_context(|| format!("parsing {}", path.display()))
}
