//! JSON HTTP service.
//!
//! Conjecture requests run concurrently under a read lock on the store;
//! graph submissions take the write lock, so they are serialized.

use std::sync::{Arc, RwLock};

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use conjforge::filters::KnownResult;
use conjforge::repository::StoreError;
use conjforge::{
    parse_edge_list, to_edge_list, BooleanPropertyId, BoundDirection, GraphStore, Heuristics, Hypothesis, InvariantId,
};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use tower_http::cors::CorsLayer;

use crate::{run_conjectures, RunError, RunOptions};

pub struct AppState {
    pub store: RwLock<GraphStore>,
    pub known: Vec<KnownResult>,
}

impl AppState {
    pub fn new(store: GraphStore, known: Vec<KnownResult>) -> Arc<Self> {
        Arc::new(Self {
            store: RwLock::new(store),
            known,
        })
    }
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/api/invariants", get(invariants))
        .route("/api/conjectures", post(conjectures))
        .route("/api/graphs", get(list_graphs).post(add_graph))
        .route("/api/graphs/{id}", get(show_graph))
        .layer(CorsLayer::permissive())
        .with_state(state)
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    message: String,
}

impl ApiError {
    fn new(status: StatusCode, message: impl Into<String>) -> Self {
        Self {
            status,
            message: message.into(),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(serde_json::json!({ "error": self.message }))).into_response()
    }
}

impl From<RunError> for ApiError {
    fn from(e: RunError) -> Self {
        let status = match e {
            RunError::EmptyDatabase => StatusCode::CONFLICT,
            RunError::Table(_) | RunError::Engine(_) => StatusCode::INTERNAL_SERVER_ERROR,
        };
        Self::new(status, e.to_string())
    }
}

#[derive(Serialize)]
struct Descriptor {
    name: &'static str,
    definition: &'static str,
}

#[derive(Serialize)]
struct Roster {
    numeric: Vec<Descriptor>,
    boolean: Vec<Descriptor>,
}

async fn invariants() -> Json<Roster> {
    Json(Roster {
        numeric: InvariantId::ALL
            .iter()
            .map(|i| Descriptor {
                name: i.name(),
                definition: i.definition(),
            })
            .collect(),
        boolean: BooleanPropertyId::ALL
            .iter()
            .map(|p| Descriptor {
                name: p.name(),
                definition: p.definition(),
            })
            .collect(),
    })
}

#[derive(Deserialize)]
struct ConjectureRequest {
    target: String,
    direction: String,
    #[serde(default)]
    hypothesis_filter: Option<Value>,
    #[serde(default)]
    heuristics: Option<Heuristics>,
    #[serde(default)]
    limit: Option<i64>,
    #[serde(default)]
    hypothesis_depth: Option<usize>,
    #[serde(default)]
    min_scope: Option<usize>,
}

fn bad_request(message: impl Into<String>) -> ApiError {
    ApiError::new(StatusCode::BAD_REQUEST, message)
}

fn parse_hypothesis(value: &Value) -> Result<Hypothesis, String> {
    match value {
        Value::String(s) => Hypothesis::parse(s),
        Value::Array(items) => {
            let names = items
                .iter()
                .map(|v| v.as_str().ok_or("hypothesis names must be strings"))
                .collect::<Result<Vec<_>, _>>()?;
            Hypothesis::parse(&names.join(","))
        }
        _ => Err("hypothesis_filter must be a string or a list of strings".into()),
    }
}

fn parse_request(body: &[u8]) -> Result<RunOptions, ApiError> {
    let req: ConjectureRequest = serde_json::from_slice(body).map_err(|e| bad_request(e.to_string()))?;
    let target: InvariantId = req.target.parse().map_err(bad_request)?;
    let direction: BoundDirection = req.direction.parse().map_err(bad_request)?;
    let mut options = RunOptions::new(target, direction);
    if let Some(h) = &req.hypothesis_filter {
        options.hypothesis_filter = Some(parse_hypothesis(h).map_err(bad_request)?);
    }
    if let Some(h) = req.heuristics {
        options.heuristics = h;
    }
    if let Some(limit) = req.limit {
        if limit < 1 {
            return Err(bad_request("limit must be at least 1"));
        }
        options.limit = Some(limit as usize);
    }
    if let Some(depth) = req.hypothesis_depth {
        if depth == 0 {
            return Err(bad_request("hypothesis_depth must be at least 1"));
        }
        options.hypothesis_depth = depth;
    }
    if let Some(scope) = req.min_scope {
        if scope == 0 {
            return Err(bad_request("min_scope must be at least 1"));
        }
        options.min_scope = scope;
    }
    Ok(options)
}

fn join_error(e: tokio::task::JoinError) -> ApiError {
    ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, e.to_string())
}

async fn conjectures(State(state): State<Arc<AppState>>, body: Bytes) -> Result<Response, ApiError> {
    let options = parse_request(&body)?;
    let run = tokio::task::spawn_blocking(move || {
        let store = state.store.read().expect("store lock");
        run_conjectures(&store, &state.known, &options)
    })
    .await
    .map_err(join_error)??;
    Ok(Json(run).into_response())
}

#[derive(Deserialize)]
struct GraphSubmission {
    id: String,
    edges: String,
}

async fn add_graph(State(state): State<Arc<AppState>>, body: Bytes) -> Result<Response, ApiError> {
    let sub: GraphSubmission = serde_json::from_slice(&body).map_err(|e| bad_request(e.to_string()))?;
    let graph = parse_edge_list(&sub.id, &sub.edges)
        .map_err(|e| ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, e.to_string()))?;
    let report = tokio::task::spawn_blocking(move || {
        let mut store = state.store.write().expect("store lock");
        let run = store.last_run().map(|r| r.conjectures).unwrap_or_default();
        store.add_counterexample(graph, &run)
    })
    .await
    .map_err(join_error)?
    .map_err(|e| {
        let status = match e {
            StoreError::DuplicateId(_) => StatusCode::CONFLICT,
            StoreError::InvalidGraph(_) => StatusCode::UNPROCESSABLE_ENTITY,
            _ => StatusCode::INTERNAL_SERVER_ERROR,
        };
        ApiError::new(status, e.to_string())
    })?;
    Ok(Json(report).into_response())
}

#[derive(Serialize)]
struct GraphSummary {
    id: String,
    order: usize,
    size: usize,
}

#[derive(Serialize)]
struct GraphDetail {
    id: String,
    order: usize,
    size: usize,
    edges: String,
}

async fn list_graphs(State(state): State<Arc<AppState>>) -> Json<Vec<GraphSummary>> {
    let store = state.store.read().expect("store lock");
    Json(
        store
            .ids()
            .filter_map(|id| store.get(id))
            .map(|g| GraphSummary {
                id: g.id().to_string(),
                order: g.order(),
                size: g.size(),
            })
            .collect(),
    )
}

async fn show_graph(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Json<GraphDetail>, ApiError> {
    let store = state.store.read().expect("store lock");
    let g = store
        .get(&id)
        .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, format!("no graph {id:?}")))?;
    Ok(Json(GraphDetail {
        id: g.id().to_string(),
        order: g.order(),
        size: g.size(),
        edges: to_edge_list(g),
    }))
}
