use thiserror::Error;

use crate::invariants::InvariantId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("self-loop on vertex {0}")]
    SelfLoop(String),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(String, String),
    #[error("edge endpoint {endpoint} out of range for n = {n}")]
    EndpointOutOfRange { endpoint: usize, n: usize },
    #[error("connectivity is undefined on the empty graph")]
    EmptyGraph,
    #[error("graph is not connected")]
    Disconnected,
    #[error("invalid graph id {0:?} (allowed: A-Z a-z 0-9 _ -)")]
    InvalidId(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("{invariant} is undefined: {reason}")]
    Domain { invariant: InvariantId, reason: String },
    #[error("brute-force oracle refuses graphs with n = {n} > cap {cap}")]
    OracleCap { n: usize, cap: usize },
}
