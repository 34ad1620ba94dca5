//! On-disk graph database with an invariant cache and counterexample
//! ingestion.
//!
//! Layout: one edge-list `<id>.txt` per graph in the root directory, plus the
//! cache sidecar `invariants.cache.csv` (graph, content hash, invariant,
//! value). Cache rows whose hash no longer matches the graph file are dropped
//! at load and recomputed lazily.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::{Mutex, RwLock};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::engine::{evaluate, Conjecture, ConjectureRun, EngineError, Evaluation};
use crate::error::{GraphError, InvariantError};
use crate::exec::Execution;
use crate::fit::format_rational;
use crate::graph::{parse_edge_list, to_edge_list, validate_id, BooleanPropertyId, Graph};
use crate::invariants::{compute, InvariantId};
use crate::table::{boolean_columns, check_rosters, FeatureRow, FeatureTable, TableError};

pub const CACHE_FILE: &str = "invariants.cache.csv";

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{file}: {source}")]
    InvalidFile {
        file: PathBuf,
        #[source]
        source: GraphError,
    },
    #[error("{file}: graph is not connected")]
    DisconnectedFile { file: PathBuf },
    #[error("invalid graph: {0}")]
    InvalidGraph(#[from] GraphError),
    #[error("graph id {0} already exists")]
    DuplicateId(String),
    #[error("graph {graph}: {source}")]
    Invariant {
        graph: String,
        #[source]
        source: InvariantError,
    },
    #[error(transparent)]
    Engine(#[from] EngineError),
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> StoreError + '_ {
    move |source| StoreError::Io {
        path: path.to_path_buf(),
        source,
    }
}

#[derive(Debug, Clone)]
struct StoredGraph {
    graph: Graph,
    hash: String,
}

/// A conjecture the new graph violates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Falsified {
    pub id: String,
    pub statement: String,
    pub lhs: u64,
    /// Exact right-hand side as a `p/q` string.
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FalsificationReport {
    pub graph_id: String,
    pub falsified: Vec<Falsified>,
    pub survived_count: usize,
}

/// Readers may share a store; `add_counterexample` needs exclusive access.
#[derive(Debug)]
pub struct GraphStore {
    root: PathBuf,
    graphs: BTreeMap<String, StoredGraph>,
    cache: RwLock<HashMap<(String, InvariantId), u64>>,
    last_run: Mutex<Option<ConjectureRun>>,
}

pub fn content_hash(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .take(8)
        .map(|b| format!("{b:02x}"))
        .collect()
}

impl GraphStore {
    pub fn load(root: impl AsRef<Path>) -> Result<Self, StoreError> {
        let root = root.as_ref().to_path_buf();
        let mut files: Vec<PathBuf> = fs::read_dir(&root)
            .map_err(io_err(&root))?
            .filter_map(|entry| entry.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|e| e == "txt"))
            .collect();
        files.sort();

        let mut graphs = BTreeMap::new();
        for file in files {
            let text = fs::read_to_string(&file).map_err(io_err(&file))?;
            let id = file
                .file_stem()
                .and_then(|s| s.to_str())
                .unwrap_or_default()
                .to_string();
            let invalid = |source| StoreError::InvalidFile {
                file: file.clone(),
                source,
            };
            validate_id(&id).map_err(invalid)?;
            let graph = parse_edge_list(&id, &text).map_err(invalid)?;
            if !graph.is_connected().map_err(invalid)? {
                return Err(StoreError::DisconnectedFile { file });
            }
            graphs.insert(
                id,
                StoredGraph {
                    graph,
                    hash: content_hash(&text),
                },
            );
        }
        let cache = read_cache(&root.join(CACHE_FILE), &graphs);
        Ok(Self {
            root,
            graphs,
            cache: RwLock::new(cache),
            last_run: Mutex::new(None),
        })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.graphs.keys().map(String::as_str)
    }

    pub fn get(&self, id: &str) -> Option<&Graph> {
        self.graphs.get(id).map(|s| &s.graph)
    }

    pub fn graphs(&self) -> Vec<Graph> {
        self.graphs.values().map(|s| s.graph.clone()).collect()
    }

    pub fn cached(&self, id: &str, inv: InvariantId) -> Option<u64> {
        self.cache
            .read()
            .expect("cache lock")
            .get(&(id.to_string(), inv))
            .copied()
    }

    pub fn cached_entries(&self) -> usize {
        self.cache.read().expect("cache lock").len()
    }

    pub fn last_run(&self) -> Option<ConjectureRun> {
        self.last_run.lock().expect("run lock").clone()
    }

    pub fn set_last_run(&self, run: ConjectureRun) {
        *self.last_run.lock().expect("run lock") = Some(run);
    }

    pub fn feature_table(
        &self,
        numeric_roster: &[InvariantId],
        boolean_roster: &[BooleanPropertyId],
    ) -> Result<FeatureTable, TableError> {
        self.feature_table_with(numeric_roster, boolean_roster, Execution::default())
    }

    /// Builds the table from cached values, computing (and persisting) misses.
    pub fn feature_table_with(
        &self,
        numeric_roster: &[InvariantId],
        boolean_roster: &[BooleanPropertyId],
        exec: Execution,
    ) -> Result<FeatureTable, TableError> {
        let graphs: Vec<&Graph> = self.graphs.values().map(|s| &s.graph).collect();
        let owned: Vec<Graph> = graphs.iter().map(|g| (*g).clone()).collect();
        check_rosters(&owned, numeric_roster, boolean_roster)?;

        let misses: Vec<(usize, InvariantId)> = {
            let cache = self.cache.read().expect("cache lock");
            (0..graphs.len())
                .flat_map(|r| numeric_roster.iter().map(move |&inv| (r, inv)))
                .filter(|&(r, inv)| !cache.contains_key(&(graphs[r].id().to_string(), inv)))
                .collect()
        };
        let computed = exec.map(&misses, |&(r, inv)| {
            compute(graphs[r], inv).map_err(|source| TableError::Invariant {
                graph: graphs[r].id().to_string(),
                source,
            })
        });
        if !misses.is_empty() {
            let mut cache = self.cache.write().expect("cache lock");
            for (&(r, inv), value) in misses.iter().zip(computed) {
                cache.insert((graphs[r].id().to_string(), inv), value?);
            }
            drop(cache);
            // a cache that fails to persist is only a performance loss
            let _ = self.persist_cache();
        }

        let cache = self.cache.read().expect("cache lock");
        let numeric = numeric_roster
            .iter()
            .map(|&inv| {
                let column = graphs.iter().map(|g| cache[&(g.id().to_string(), inv)]).collect();
                (inv, column)
            })
            .collect();
        FeatureTable::new(
            graphs.iter().map(|g| g.id().to_string()).collect(),
            numeric,
            boolean_columns(&owned, boolean_roster),
        )
    }

    /// Validates and persists `g`, reporting every conjecture in `run` it
    /// violates. On any error the directory and cache are left unchanged.
    pub fn add_counterexample(&mut self, g: Graph, run: &[Conjecture]) -> Result<FalsificationReport, StoreError> {
        validate_id(g.id())?;
        if self.graphs.contains_key(g.id()) {
            return Err(StoreError::DuplicateId(g.id().to_string()));
        }
        if !g.is_connected()? {
            return Err(StoreError::InvalidGraph(GraphError::Disconnected));
        }
        let row = FeatureRow::compute(&g, &InvariantId::ALL, &BooleanPropertyId::ALL).map_err(|source| {
            StoreError::Invariant {
                graph: g.id().to_string(),
                source,
            }
        })?;

        let mut falsified = Vec::new();
        for c in run {
            if evaluate(c, &row)? == Evaluation::Violated {
                let x = row.numeric[&c.other] as i64;
                falsified.push(Falsified {
                    id: c.id.clone(),
                    statement: c.statement(),
                    lhs: row.numeric[&c.target],
                    rhs: format_rational(&c.bound.eval(x)),
                });
            }
        }

        let text = to_edge_list(&g);
        let path = self.root.join(format!("{}.txt", g.id()));
        write_atomically(&self.root, &path, &text)?;

        let id = g.id().to_string();
        {
            let mut cache = self.cache.write().expect("cache lock");
            for (&inv, &value) in &row.numeric {
                cache.insert((id.clone(), inv), value);
            }
        }
        self.graphs.insert(
            id.clone(),
            StoredGraph {
                graph: g,
                hash: content_hash(&text),
            },
        );
        let _ = self.persist_cache();
        Ok(FalsificationReport {
            graph_id: id,
            survived_count: run.len() - falsified.len(),
            falsified,
        })
    }

    pub fn persist_cache(&self) -> Result<(), StoreError> {
        let cache = self.cache.read().expect("cache lock");
        let mut entries: Vec<(&(String, InvariantId), &u64)> = cache.iter().collect();
        entries.sort();
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        writer
            .write_record(["graph", "hash", "invariant", "value"])
            .expect("in-memory write");
        for ((id, inv), value) in entries {
            let Some(stored) = self.graphs.get(id) else {
                continue;
            };
            writer
                .write_record([id.as_str(), &stored.hash, inv.name(), &value.to_string()])
                .expect("in-memory write");
        }
        let bytes = writer.into_inner().expect("in-memory flush");
        let text = String::from_utf8(bytes).expect("ascii");
        write_atomically(&self.root, &self.root.join(CACHE_FILE), &text)
    }
}

fn read_cache(path: &Path, graphs: &BTreeMap<String, StoredGraph>) -> HashMap<(String, InvariantId), u64> {
    let mut cache = HashMap::new();
    let Ok(mut reader) = csv::Reader::from_path(path) else {
        return cache;
    };
    for record in reader.records().flatten() {
        let (Some(id), Some(hash), Some(inv), Some(value)) =
            (record.get(0), record.get(1), record.get(2), record.get(3))
        else {
            continue;
        };
        let fresh = graphs.get(id).is_some_and(|s| s.hash == hash);
        if let (true, Ok(inv), Ok(value)) = (fresh, inv.parse::<InvariantId>(), value.parse::<u64>()) {
            cache.insert((id.to_string(), inv), value);
        }
    }
    cache
}

fn write_atomically(dir: &Path, dest: &Path, text: &str) -> Result<(), StoreError> {
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err(dir))?;
    tmp.write_all(text.as_bytes()).map_err(io_err(tmp.path()))?;
    tmp.as_file().sync_all().map_err(io_err(dest))?;
    tmp.persist(dest).map_err(|e| StoreError::Io {
        path: dest.to_path_buf(),
        source: e.error,
    })?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{generate, GenerationConfig};
    use crate::fit::BoundDirection;
    use crate::graph::to_edge_list;

    fn write(dir: &Path, g: &Graph) {
        fs::write(dir.join(format!("{}.txt", g.id())), to_edge_list(g)).unwrap();
    }

    fn regular_store() -> (tempfile::TempDir, GraphStore) {
        let dir = tempfile::tempdir().unwrap();
        for g in [
            Graph::complete("K4", 4),
            Graph::complete("K5", 5),
            Graph::cycle("C5", 5),
            Graph::cycle("C6", 6),
            Graph::complete_bipartite("K33", 3, 3),
            Graph::petersen("Petersen"),
        ] {
            write(dir.path(), &g);
        }
        let store = GraphStore::load(dir.path()).unwrap();
        (dir, store)
    }

    #[test]
    fn loads_every_file() {
        let (_dir, store) = regular_store();
        assert_eq!(store.len(), 6);
        assert!(store.get("Petersen").is_some());
    }

    #[test]
    fn disconnected_file_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        write(dir.path(), &Graph::complete("K3", 3));
        fs::write(dir.path().join("split.txt"), "0 1\n2 3\n").unwrap();
        let err = GraphStore::load(dir.path()).unwrap_err();
        assert!(err.to_string().contains("split.txt"), "{err}");
        fs::write(dir.path().join("split.txt"), "0 1\n1 1\n").unwrap();
        assert!(matches!(
            GraphStore::load(dir.path()),
            Err(StoreError::InvalidFile { .. })
        ));
    }

    #[test]
    fn cache_is_persisted_and_invalidated_on_change() {
        let (dir, store) = regular_store();
        let cold = store.feature_table(&InvariantId::ALL, &BooleanPropertyId::ALL).unwrap();
        assert_eq!(store.cached_entries(), 6 * InvariantId::ALL.len());
        assert!(dir.path().join(CACHE_FILE).exists());

        let warm_store = GraphStore::load(dir.path()).unwrap();
        assert_eq!(warm_store.cached_entries(), 6 * InvariantId::ALL.len());
        let warm = warm_store
            .feature_table(&InvariantId::ALL, &BooleanPropertyId::ALL)
            .unwrap();
        assert_eq!(warm, cold);

        // K5 rewritten as K6 under the same id: its stale entries are dropped
        write(dir.path(), &Graph::complete("K5", 6));
        let changed = GraphStore::load(dir.path()).unwrap();
        assert_eq!(changed.cached_entries(), 5 * InvariantId::ALL.len());
        assert_eq!(changed.cached("K5", InvariantId::Order), None);
        let t = changed
            .feature_table(&InvariantId::ALL, &BooleanPropertyId::ALL)
            .unwrap();
        let row = t.row(t.row_index("K5").unwrap());
        assert_eq!(row.numeric[&InvariantId::Order], 6);
    }

    #[test]
    fn counterexample_falsifies_and_persists() {
        let (dir, mut store) = regular_store();
        let table = store.feature_table(&InvariantId::ALL, &BooleanPropertyId::ALL).unwrap();
        // six graphs is too few for dalmatian to keep α ≤ μ; the store is what's under test here
        let mut config = GenerationConfig::new(InvariantId::IndependenceNumber, BoundDirection::Upper);
        config.heuristics.dalmatian = false;
        let run = generate(&table, &config).unwrap();
        let alpha_mu = run
            .conjectures
            .iter()
            .find(|c| c.other == InvariantId::MatchingNumber && c.hypothesis.names() == ["connected"])
            .expect("connected α ≤ μ emitted on regular-only data")
            .clone();

        let report = store
            .add_counterexample(Graph::path("P3", 3), &run.conjectures)
            .unwrap();
        let hit = report.falsified.iter().find(|f| f.id == alpha_mu.id).unwrap();
        assert_eq!((hit.lhs, hit.rhs.as_str()), (2, "1"));
        assert_eq!(report.survived_count + report.falsified.len(), run.conjectures.len());
        assert!(dir.path().join("P3.txt").exists());

        let reloaded = GraphStore::load(dir.path()).unwrap();
        assert_eq!(reloaded.len(), 7);
        let table = reloaded
            .feature_table(&InvariantId::ALL, &BooleanPropertyId::ALL)
            .unwrap();
        let rerun = generate(&table, &config).unwrap();
        assert!(rerun
            .conjectures
            .iter()
            .all(|c| report.falsified.iter().all(|f| f.id != c.id)));
    }

    #[test]
    fn harmless_graph_survives_everything() {
        let (_dir, mut store) = regular_store();
        let table = store.feature_table(&InvariantId::ALL, &BooleanPropertyId::ALL).unwrap();
        let run = generate(
            &table,
            &GenerationConfig::new(InvariantId::IndependenceNumber, BoundDirection::Upper),
        )
        .unwrap();
        let report = store
            .add_counterexample(Graph::cycle("C8", 8), &run.conjectures)
            .unwrap();
        let in_scope_violations: Vec<_> = report.falsified.iter().collect();
        assert_eq!(report.survived_count, run.conjectures.len() - in_scope_violations.len());
    }

    #[test]
    fn failed_adds_leave_store_unchanged() {
        let (dir, mut store) = regular_store();
        let before: Vec<_> = fs::read_dir(dir.path())
            .unwrap()
            .map(|e| e.unwrap().file_name())
            .collect();
        assert!(matches!(
            store.add_counterexample(Graph::complete("K4", 4), &[]),
            Err(StoreError::DuplicateId(_))
        ));
        let split = Graph::new("split", 4, [(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            store.add_counterexample(split, &[]),
            Err(StoreError::InvalidGraph(_))
        ));
        assert!(store.add_counterexample(Graph::complete("bad id", 3), &[]).is_err());
        assert!(matches!(
            store.add_counterexample(Graph::complete("K1", 1), &[]),
            Err(StoreError::Invariant { .. })
        ));
        let after: Vec<_> = fs::read_dir(dir.path())
            .unwrap()
            .map(|e| e.unwrap().file_name())
            .collect();
        assert_eq!(before.len(), after.len());
        assert_eq!(store.len(), 6);
    }
}
