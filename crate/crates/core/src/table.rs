//! The feature table: one row per graph, one column per numerical invariant
//! or Boolean property, plus hypothesis-restricted row selection.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::InvariantError;
use crate::exec::Execution;
use crate::graph::{evaluate_boolean, BooleanPropertyId, Graph};
use crate::invariants::{compute, InvariantId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("empty database")]
    EmptyDatabase,
    #[error("the numeric roster needs at least two invariants")]
    NumericRosterTooSmall,
    #[error("the boolean roster is empty")]
    EmptyBooleanRoster,
    #[error("graph {0} is not connected")]
    Disconnected(String),
    #[error("duplicate graph id {0}")]
    DuplicateRow(String),
    #[error("graph {graph}: {source}")]
    Invariant {
        graph: String,
        #[source]
        source: InvariantError,
    },
    #[error("column {column} has {found} values for {rows} rows")]
    Arity { column: String, found: usize, rows: usize },
    #[error("unknown column {0}")]
    UnknownColumn(String),
    #[error("csv line {line}: {message}")]
    Csv { line: usize, message: String },
}

/// A nonempty conjunction of Boolean properties.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<BooleanPropertyId>", into = "Vec<BooleanPropertyId>")]
pub struct Hypothesis {
    conjuncts: BTreeSet<BooleanPropertyId>,
}

impl Hypothesis {
    pub fn new(conjuncts: impl IntoIterator<Item = BooleanPropertyId>) -> Result<Self, String> {
        let mut set = BTreeSet::new();
        for p in conjuncts {
            if !set.insert(p) {
                return Err(format!("duplicate conjunct {p}"));
            }
        }
        if set.is_empty() {
            return Err("a hypothesis needs at least one conjunct".into());
        }
        Ok(Self { conjuncts: set })
    }

    pub fn single(p: BooleanPropertyId) -> Self {
        Self {
            conjuncts: BTreeSet::from([p]),
        }
    }

    /// Parses a comma- or plus-separated list such as `regular,bipartite`.
    pub fn parse(text: &str) -> Result<Self, String> {
        let parts = text
            .split([',', '+'])
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(str::parse::<BooleanPropertyId>)
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(parts)
    }

    pub fn conjuncts(&self) -> &BTreeSet<BooleanPropertyId> {
        &self.conjuncts
    }

    pub fn len(&self) -> usize {
        self.conjuncts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.conjuncts.is_empty()
    }

    pub fn names(&self) -> Vec<String> {
        self.conjuncts.iter().map(|p| p.name().to_string()).collect()
    }

    /// Conjunct names joined by "and", with `connected` first when present.
    pub fn display_name(&self) -> String {
        let mut names: Vec<&str> = Vec::new();
        if self.conjuncts.contains(&BooleanPropertyId::Connected) {
            names.push("connected");
        }
        names.extend(
            self.conjuncts
                .iter()
                .filter(|&&p| p != BooleanPropertyId::Connected)
                .map(|p| p.name()),
        );
        names.join(" and ")
    }
}

impl TryFrom<Vec<BooleanPropertyId>> for Hypothesis {
    type Error = String;

    fn try_from(value: Vec<BooleanPropertyId>) -> Result<Self, Self::Error> {
        Self::new(value)
    }
}

impl From<Hypothesis> for Vec<BooleanPropertyId> {
    fn from(h: Hypothesis) -> Self {
        h.conjuncts.into_iter().collect()
    }
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_name())
    }
}

/// Rows are graph ids in ascending order; every column has one value per row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureTable {
    rows: Vec<String>,
    numeric: BTreeMap<InvariantId, Vec<u64>>,
    boolean: BTreeMap<BooleanPropertyId, Vec<bool>>,
}

/// The values of one object, keyed by column.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FeatureRow {
    pub id: String,
    pub numeric: BTreeMap<InvariantId, u64>,
    pub boolean: BTreeMap<BooleanPropertyId, bool>,
}

impl FeatureRow {
    pub fn compute(
        g: &Graph,
        numeric_roster: &[InvariantId],
        boolean_roster: &[BooleanPropertyId],
    ) -> Result<Self, InvariantError> {
        let numeric = numeric_roster
            .iter()
            .map(|&inv| compute(g, inv).map(|v| (inv, v)))
            .collect::<Result<_, _>>()?;
        let boolean = boolean_roster.iter().map(|&p| (p, evaluate_boolean(g, p))).collect();
        Ok(Self {
            id: g.id().to_string(),
            numeric,
            boolean,
        })
    }
}

impl FeatureTable {
    /// Assembles a table from columns, sorting rows by id.
    pub fn new(
        rows: Vec<String>,
        numeric: BTreeMap<InvariantId, Vec<u64>>,
        boolean: BTreeMap<BooleanPropertyId, Vec<bool>>,
    ) -> Result<Self, TableError> {
        let count = rows.len();
        for (name, len) in numeric
            .iter()
            .map(|(k, v)| (k.name(), v.len()))
            .chain(boolean.iter().map(|(k, v)| (k.name(), v.len())))
        {
            if len != count {
                return Err(TableError::Arity {
                    column: name.to_string(),
                    found: len,
                    rows: count,
                });
            }
        }
        let mut order: Vec<usize> = (0..count).collect();
        order.sort_by(|&a, &b| rows[a].cmp(&rows[b]));
        for pair in order.windows(2) {
            if rows[pair[0]] == rows[pair[1]] {
                return Err(TableError::DuplicateRow(rows[pair[0]].clone()));
            }
        }
        let permute = |values: &Vec<u64>| order.iter().map(|&i| values[i]).collect::<Vec<_>>();
        Ok(Self {
            rows: order.iter().map(|&i| rows[i].clone()).collect(),
            numeric: numeric.iter().map(|(&k, v)| (k, permute(v))).collect(),
            boolean: boolean
                .iter()
                .map(|(&k, v)| (k, order.iter().map(|&i| v[i]).collect()))
                .collect(),
        })
    }

    pub fn rows(&self) -> &[String] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn numeric_columns(&self) -> impl Iterator<Item = InvariantId> + '_ {
        self.numeric.keys().copied()
    }

    pub fn boolean_columns(&self) -> impl Iterator<Item = BooleanPropertyId> + '_ {
        self.boolean.keys().copied()
    }

    pub fn numeric(&self, inv: InvariantId) -> Option<&[u64]> {
        self.numeric.get(&inv).map(Vec::as_slice)
    }

    pub fn boolean(&self, p: BooleanPropertyId) -> Option<&[bool]> {
        self.boolean.get(&p).map(Vec::as_slice)
    }

    pub fn row_index(&self, id: &str) -> Option<usize> {
        self.rows.binary_search_by(|r| r.as_str().cmp(id)).ok()
    }

    pub fn row(&self, index: usize) -> FeatureRow {
        FeatureRow {
            id: self.rows[index].clone(),
            numeric: self.numeric.iter().map(|(&k, v)| (k, v[index])).collect(),
            boolean: self.boolean.iter().map(|(&k, v)| (k, v[index])).collect(),
        }
    }

    /// Indices of rows satisfying every conjunct, in row order.
    pub fn select_indices(&self, h: &Hypothesis) -> Result<Vec<usize>, TableError> {
        let columns = h
            .conjuncts()
            .iter()
            .map(|p| {
                self.boolean(*p)
                    .ok_or_else(|| TableError::UnknownColumn(p.name().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok((0..self.len()).filter(|&i| columns.iter().all(|c| c[i])).collect())
    }
}

pub fn build_table(
    graphs: &[Graph],
    numeric_roster: &[InvariantId],
    boolean_roster: &[BooleanPropertyId],
) -> Result<FeatureTable, TableError> {
    build_table_with(graphs, numeric_roster, boolean_roster, Execution::default())
}

pub fn build_table_with(
    graphs: &[Graph],
    numeric_roster: &[InvariantId],
    boolean_roster: &[BooleanPropertyId],
    exec: Execution,
) -> Result<FeatureTable, TableError> {
    check_rosters(graphs, numeric_roster, boolean_roster)?;
    let cells: Vec<(usize, InvariantId)> = (0..graphs.len())
        .flat_map(|r| numeric_roster.iter().map(move |&inv| (r, inv)))
        .collect();
    let values = exec.map(&cells, |&(r, inv)| {
        compute(&graphs[r], inv).map_err(|source| TableError::Invariant {
            graph: graphs[r].id().to_string(),
            source,
        })
    });
    let mut numeric: BTreeMap<InvariantId, Vec<u64>> = BTreeMap::new();
    for (&(_, inv), value) in cells.iter().zip(values) {
        numeric.entry(inv).or_default().push(value?);
    }
    let boolean = boolean_columns(graphs, boolean_roster);
    FeatureTable::new(graphs.iter().map(|g| g.id().to_string()).collect(), numeric, boolean)
}

pub(crate) fn check_rosters(
    graphs: &[Graph],
    numeric_roster: &[InvariantId],
    boolean_roster: &[BooleanPropertyId],
) -> Result<(), TableError> {
    if graphs.is_empty() {
        return Err(TableError::EmptyDatabase);
    }
    if numeric_roster.iter().collect::<BTreeSet<_>>().len() < 2 {
        return Err(TableError::NumericRosterTooSmall);
    }
    if boolean_roster.is_empty() {
        return Err(TableError::EmptyBooleanRoster);
    }
    if let Some(g) = graphs.iter().find(|g| !g.is_connected().unwrap_or(false)) {
        return Err(TableError::Disconnected(g.id().to_string()));
    }
    Ok(())
}

pub(crate) fn boolean_columns(
    graphs: &[Graph],
    boolean_roster: &[BooleanPropertyId],
) -> BTreeMap<BooleanPropertyId, Vec<bool>> {
    boolean_roster
        .iter()
        .map(|&p| (p, graphs.iter().map(|g| evaluate_boolean(g, p)).collect()))
        .collect()
}

pub fn select_rows(t: &FeatureTable, h: &Hypothesis) -> Result<Vec<String>, TableError> {
    Ok(t.select_indices(h)?.into_iter().map(|i| t.rows[i].clone()).collect())
}

pub fn write_csv(t: &FeatureTable) -> String {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let header = std::iter::once("graph")
        .chain(t.numeric.keys().map(|k| k.name()))
        .chain(t.boolean.keys().map(|k| k.name()));
    writer.write_record(header).expect("in-memory write");
    for i in 0..t.len() {
        let record = std::iter::once(t.rows[i].clone())
            .chain(t.numeric.values().map(|v| v[i].to_string()))
            .chain(t.boolean.values().map(|v| v[i].to_string()));
        writer.write_record(record).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("ascii output")
}

enum Column {
    Numeric(InvariantId),
    Boolean(BooleanPropertyId),
}

pub fn read_csv(text: &str) -> Result<FeatureTable, TableError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut records = reader.records();
    let csv_err = |line: usize, message: String| TableError::Csv { line, message };

    let header = records
        .next()
        .ok_or_else(|| csv_err(1, "missing header".into()))?
        .map_err(|e| csv_err(1, e.to_string()))?;
    if header.get(0) != Some("graph") {
        return Err(csv_err(1, "first column must be `graph`".into()));
    }
    let columns = header
        .iter()
        .skip(1)
        .map(|name| {
            if let Ok(inv) = name.parse::<InvariantId>() {
                Ok(Column::Numeric(inv))
            } else if let Ok(p) = name.parse::<BooleanPropertyId>() {
                Ok(Column::Boolean(p))
            } else {
                Err(TableError::UnknownColumn(name.to_string()))
            }
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut rows = Vec::new();
    let mut numeric: BTreeMap<InvariantId, Vec<u64>> = BTreeMap::new();
    let mut boolean: BTreeMap<BooleanPropertyId, Vec<bool>> = BTreeMap::new();
    for column in &columns {
        match column {
            Column::Numeric(inv) => {
                if numeric.insert(*inv, Vec::new()).is_some() {
                    return Err(csv_err(1, format!("duplicate column {inv}")));
                }
            }
            Column::Boolean(p) => {
                if boolean.insert(*p, Vec::new()).is_some() {
                    return Err(csv_err(1, format!("duplicate column {p}")));
                }
            }
        }
    }
    for (idx, record) in records.enumerate() {
        let line = idx + 2;
        let record = record.map_err(|e| csv_err(line, e.to_string()))?;
        if record.len() != columns.len() + 1 {
            return Err(csv_err(
                line,
                format!("expected {} fields, found {}", columns.len() + 1, record.len()),
            ));
        }
        rows.push(record[0].to_string());
        for (column, cell) in columns.iter().zip(record.iter().skip(1)) {
            match column {
                Column::Numeric(inv) => {
                    let value = cell
                        .parse::<u64>()
                        .map_err(|_| csv_err(line, format!("{inv}: {cell:?} is not a nonnegative integer")))?;
                    numeric.get_mut(inv).expect("registered").push(value);
                }
                Column::Boolean(p) => {
                    let value = match cell {
                        "true" => true,
                        "false" => false,
                        other => return Err(csv_err(line, format!("{p}: {other:?} is not true/false"))),
                    };
                    boolean.get_mut(p).expect("registered").push(value);
                }
            }
        }
    }
    FeatureTable::new(rows, numeric, boolean)
}
