//! Shared error type for the library surface.
//!
//! Solver outcomes (`Found`/`Infeasible`/...) are ordinary values, not
//! errors; this enum covers contract violations and construction
//! failures that name the step or inequality that broke.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("precondition not met: {0}")]
    PreconditionNotMet(String),

    #[error("parity mismatch: {0}")]
    ParityMismatch(String),

    #[error("construction failed at {step}: {detail}")]
    ConstructionFailed { step: String, detail: String },

    #[error("invariant violation ({claim}): {detail}")]
    InvariantViolation { claim: String, detail: String },

    #[error("budget exhausted after {nodes} nodes")]
    BudgetExhausted { nodes: u64 },

    #[error("no disjoint path family; blocking cut {cut:?}")]
    NoDisjointFamily { cut: Vec<usize> },

    #[error("removing the cut leaves {components} components, expected 2")]
    NotTwoComponents { components: usize },

    #[error("proxy reservation failed for cut vertex {cut_vertex} on side {side}")]
    ProxyReservationFailed { cut_vertex: usize, side: &'static str },

    #[error("reduced graph is not 2-connected")]
    NotTwoConnected,

    #[error("trim removed too much: kept {kept} of {original}, needed {required}")]
    TrimTooDeep { kept: usize, original: usize, required: usize },

    #[error("requested length {len} outside the admissible bands {bands}")]
    LengthOutOfBand { len: usize, bands: String },

    #[error("graph6 parse error: {0}")]
    Graph6(String),

    #[error("invalid instance: {0:?}")]
    InvalidInstance(Vec<String>),

    #[error("neither the matching case nor the stars case applies: {0}")]
    NeitherCase(String),

    #[error("vertex {vertex} has edges into only {clusters} clusters, below the floor {floor}")]
    DegreeTooLow { vertex: usize, clusters: usize, floor: usize },
}

impl Error {
    pub fn construction(step: &str, detail: impl Into<String>) -> Error {
        Error::ConstructionFailed { step: step.to_string(), detail: detail.into() }
    }

    pub fn invariant(claim: &str, detail: impl Into<String>) -> Error {
        Error::InvariantViolation { claim: claim.to_string(), detail: detail.into() }
    }
}
