//! Solver outcome values shared by the exact oracle and every
//! constructive route.

use serde::{Deserialize, Serialize};

use crate::instance::PathPartition;

/// A named step whose quantitative requirement failed, with the
/// concrete inequality or counter values that broke.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub step: String,
    pub detail: String,
}

impl Failure {
    pub fn new(step: &str, detail: impl Into<String>) -> Self {
        Failure { step: step.to_string(), detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum Outcome {
    Found { partition: PathPartition },
    /// Only emitted after an exhaustive search; `certificate` records
    /// the exhaustiveness marker.
    Infeasible { certificate: String },
    Failed { failure: Failure },
    BudgetExhausted,
}

impl Outcome {
    pub fn found(partition: PathPartition) -> Self {
        Outcome::Found { partition }
    }

    pub fn failed(step: &str, detail: impl Into<String>) -> Self {
        Outcome::Failed { failure: Failure::new(step, detail) }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Outcome::Found { .. })
    }

    pub fn partition(&self) -> Option<&PathPartition> {
        match self {
            Outcome::Found { partition } => Some(partition),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    pub outcome: Outcome,
    pub nodes_explored: u64,
}

impl SolveReport {
    pub fn new(outcome: Outcome, nodes_explored: u64) -> Self {
        SolveReport { outcome, nodes_explored }
    }
}
