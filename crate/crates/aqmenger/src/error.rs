//! Crate-wide error type.
//!
//! Every rejected precondition maps to a distinct variant so callers (and the
//! CLI exit-code logic) can tell a malformed request from an unmet lemma
//! hypothesis or an infeasible enumeration.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: need n >= 1 and k >= 3, got n={n}, k={k}")]
    InvalidParams { n: u8, k: u8 },

    #[error("graph too large: k^n = {size} exceeds limit {limit}")]
    TooLarge { size: u128, limit: u64 },

    #[error("invalid edge kind for n={n}: {detail}")]
    InvalidKind { n: u8, detail: String },

    #[error("{what} {value} out of range (limit {limit})")]
    OutOfRange {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("operation requires n >= {needs}, graph has n={n}")]
    DimensionTooSmall { needs: u8, n: u8 },

    #[error("endpoints must be distinct")]
    IdenticalEndpoints,

    #[error("endpoint {id} is in the fault set")]
    EndpointFaulty { id: u32 },

    #[error("endpoints are adjacent in the surviving graph; vertex cut is undefined")]
    AdjacentEndpoints,

    #[error("fault-set variant mismatch: expected {expected}, got {got}")]
    VariantMismatch {
        expected: &'static str,
        got: &'static str,
    },

    #[error("invalid vertex label '{label}': {detail}")]
    InvalidLabel { label: String, detail: String },

    #[error("hypothesis unmet: {reason}")]
    HypothesisUnmet { reason: String },

    #[error("infeasible request: {reason}")]
    Infeasible { reason: String },

    #[error("unsatisfiable: {reason}")]
    Unsatisfiable { reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
