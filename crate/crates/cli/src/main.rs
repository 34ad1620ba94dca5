use std::net::SocketAddr;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use conjforge::filters::KnownResult;
use conjforge::{parse_edge_list, write_csv, BooleanPropertyId, BoundDirection, GraphStore, Hypothesis, InvariantId};
use conjforge_cli::{api, read_known, render, run_conjectures, RunOptions};

#[derive(Parser)]
#[command(
    name = "conjforge",
    version,
    about = "Conjecture sharp linear bounds between graph invariants"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Db {
    /// Graph database directory.
    #[arg(long, env = "CONJFORGE_DB")]
    db: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Write the feature table of the database as CSV.
    BuildTable {
        #[command(flatten)]
        db: Db,
        #[arg(long)]
        out: PathBuf,
    },
    /// Generate, sort and filter conjectures for one target.
    Conjecture {
        #[command(flatten)]
        db: Db,
        #[command(flatten)]
        gen: GenArgs,
        /// Keep only conjectures under this hypothesis, e.g. `regular,bipartite`.
        #[arg(long)]
        hypothesis: Option<String>,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, conflicts_with = "text")]
        json: bool,
        #[arg(long)]
        text: bool,
        /// Also print what each filter removed.
        #[arg(long, short)]
        verbose: bool,
    },
    /// Add a graph and report which conjectures of a fresh run it falsifies.
    AddGraph {
        #[command(flatten)]
        db: Db,
        #[arg(long)]
        file: PathBuf,
        /// Defaults to the file stem.
        #[arg(long)]
        id: Option<String>,
        #[command(flatten)]
        gen: GenArgs,
        #[arg(long)]
        json: bool,
    },
    /// Serve the HTTP API.
    Serve {
        #[command(flatten)]
        db: Db,
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        /// Known-results JSON file applied by the known filter.
        #[arg(long)]
        known: Option<PathBuf>,
    },
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value = "independence_number")]
    target: String,
    /// upper (up), lower (down) or both.
    #[arg(long, default_value = "upper")]
    direction: String,
    #[arg(long, default_value_t = 2)]
    depth: usize,
    #[arg(long, default_value_t = 3)]
    min_scope: usize,
    #[arg(long)]
    no_theo: bool,
    #[arg(long)]
    no_dalmatian: bool,
    /// Known-results JSON file; conjectures matching an entry are dropped.
    #[arg(long)]
    known: Option<PathBuf>,
}

impl GenArgs {
    fn directions(&self) -> Result<Vec<BoundDirection>> {
        if self.direction == "both" {
            return Ok(vec![BoundDirection::Upper, BoundDirection::Lower]);
        }
        Ok(vec![self.direction.parse().map_err(anyhow::Error::msg)?])
    }

    fn options(&self, direction: BoundDirection) -> Result<RunOptions> {
        let target: InvariantId = self.target.parse().map_err(anyhow::Error::msg)?;
        if self.depth == 0 {
            bail!("--depth must be at least 1");
        }
        if self.min_scope == 0 {
            bail!("--min-scope must be at least 1");
        }
        let mut options = RunOptions::new(target, direction);
        options.hypothesis_depth = self.depth;
        options.min_scope = self.min_scope;
        options.heuristics.theo = !self.no_theo;
        options.heuristics.dalmatian = !self.no_dalmatian;
        Ok(options)
    }

    fn known(&self) -> Result<Vec<KnownResult>> {
        self.known
            .as_deref()
            .map(read_known)
            .transpose()
            .map(Option::unwrap_or_default)
    }
}

fn load(db: &Path) -> Result<GraphStore> {
    GraphStore::load(db).with_context(|| format!("loading database {}", db.display()))
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::BuildTable { db, out } => {
            let store = load(&db.db)?;
            let table = store.feature_table(&InvariantId::ALL, &BooleanPropertyId::ALL)?;
            std::fs::write(&out, write_csv(&table)).with_context(|| format!("writing {}", out.display()))?;
            eprintln!("wrote {} rows to {}", table.len(), out.display());
        }
        Command::Conjecture {
            db,
            gen,
            hypothesis,
            limit,
            json,
            text: _,
            verbose,
        } => {
            let store = load(&db.db)?;
            let known = gen.known()?;
            if limit == Some(0) {
                bail!("--limit must be at least 1");
            }
            let filter = hypothesis
                .as_deref()
                .map(Hypothesis::parse)
                .transpose()
                .map_err(anyhow::Error::msg)?;
            let mut runs = Vec::new();
            for direction in gen.directions()? {
                let mut options = gen.options(direction)?;
                options.hypothesis_filter = filter.clone();
                options.limit = limit;
                runs.push(run_conjectures(&store, &known, &options)?);
            }
            if json {
                let text = match runs.as_slice() {
                    [one] => serde_json::to_string_pretty(one)?,
                    many => serde_json::to_string_pretty(many)?,
                };
                println!("{text}");
            } else {
                for run in &runs {
                    print!("{}", render::run_text(run, verbose));
                }
            }
        }
        Command::AddGraph {
            db,
            file,
            id,
            gen,
            json,
        } => {
            let mut store = load(&db.db)?;
            let id = match id {
                Some(id) => id,
                None => file
                    .file_stem()
                    .and_then(|s| s.to_str())
                    .context("cannot derive an id from the file name")?
                    .to_string(),
            };
            let text = std::fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
            let graph = parse_edge_list(&id, &text).with_context(|| format!("{}", file.display()))?;
            let known = gen.known()?;
            let mut current = Vec::new();
            if !store.is_empty() {
                for direction in gen.directions()? {
                    current.extend(run_conjectures(&store, &known, &gen.options(direction)?)?.conjectures);
                }
            }
            let report = store.add_counterexample(graph, &current)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                print!("{}", render::report_text(&report));
            }
        }
        Command::Serve { db, port, host, known } => {
            let store = load(&db.db)?;
            let known = known.as_deref().map(read_known).transpose()?.unwrap_or_default();
            let addr: SocketAddr = format!("{host}:{port}").parse().context("invalid --host/--port")?;
            let runtime = tokio::runtime::Runtime::new()?;
            runtime.block_on(async move {
                let listener = tokio::net::TcpListener::bind(addr).await?;
                eprintln!("serving {} graphs on http://{addr}", store.len());
                axum::serve(listener, api::router(api::AppState::new(store, known))).await?;
                anyhow::Ok(())
            })?;
        }
    }
    Ok(())
}
