//! Library for partitioning a graph into k vertex-disjoint paths with
//! prescribed start vertices and prescribed orders.
//!
//! The crate combines:
//! - an exact backtracking oracle and batch verifier over graph6 streams,
//! - classical constructive subroutines (panconnected and bipanconnected
//!   paths, long cycles from degree-sum bounds),
//! - regularity-pair primitives with synthetic blow-up generation,
//! - three extremal constructions (low minimum degree, large independent
//!   set, low cut connectivity) and a spine/absorbing pipeline that run
//!   on explicit cluster decompositions,
//! - a dispatcher that routes an instance to the right construction and
//!   falls back to the oracle at small scale.
//!
//! Every route returns either a partition that passes the independent
//! validator or a structured failure naming the step that broke.

pub mod bitset;
pub mod builders;
pub mod error;
pub mod fixtures;
pub mod flow;
pub mod graph;
pub mod instance;
pub mod large_indep;
pub mod low_connectivity;
pub mod low_degree;
pub mod mis;
pub mod oracle;
pub mod outcome;
pub mod regularity;
pub mod spine;

pub use bitset::VertexSet;
pub use error::Error;
pub use graph::{parse_graph6, to_graph6, Graph, SigmaTwo};
pub use instance::{
    check_condition, validate_instance, validate_partition, ConditionCheck, PartitionInstance,
    PathPartition,
};
pub use outcome::{Failure, Outcome, SolveReport};
