//! Problem statements and the independent validator for candidate
//! solutions.
//!
//! `validate_partition` is the ground-truth acceptor: every solver in
//! this crate is judged against it.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::graph::{parse_graph6, to_graph6, Graph, SigmaTwo};

/// A graph, k start vertices and k prescribed path orders summing to n.
#[derive(Clone, Debug)]
pub struct PartitionInstance {
    pub graph: Graph,
    pub starts: Vec<usize>,
    pub sizes: Vec<usize>,
}

/// Candidate solution: k vertex sequences.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathPartition {
    pub paths: Vec<Vec<usize>>,
}

impl PartitionInstance {
    pub fn new(graph: Graph, starts: Vec<usize>, sizes: Vec<usize>) -> Self {
        PartitionInstance { graph, starts, sizes }
    }

    pub fn k(&self) -> usize {
        self.starts.len()
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// The paper regime needs k >= 3; smaller k is accepted but flagged.
    pub fn outside_k_regime(&self) -> bool {
        self.k() < 3
    }

    /// Largest prescribed order.
    pub fn max_size(&self) -> usize {
        self.sizes.iter().copied().max().unwrap_or(0)
    }

    /// Copy with sizes sorted ascending and starts permuted alongside.
    pub fn sorted_by_size(&self) -> (PartitionInstance, Vec<usize>) {
        let mut order: Vec<usize> = (0..self.k()).collect();
        order.sort_by_key(|&i| (self.sizes[i], self.starts[i]));
        let inst = PartitionInstance {
            graph: self.graph.clone(),
            starts: order.iter().map(|&i| self.starts[i]).collect(),
            sizes: order.iter().map(|&i| self.sizes[i]).collect(),
        };
        (inst, order)
    }
}

/// Every violated instance invariant, in a fixed order.
pub fn validate_instance(inst: &PartitionInstance) -> Vec<String> {
    let mut out = Vec::new();
    let n = inst.n();
    if inst.starts.len() != inst.sizes.len() {
        out.push(format!(
            "starts/sizes length mismatch: {} vs {}",
            inst.starts.len(),
            inst.sizes.len()
        ));
    }
    if inst.starts.is_empty() {
        out.push("k must be at least 1".into());
    }
    for (i, &x) in inst.starts.iter().enumerate() {
        if x >= n {
            out.push(format!("start {i} = {x} out of range (n = {n})"));
        }
    }
    let mut sorted = inst.starts.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != inst.starts.len() {
        out.push("duplicate start vertices".into());
    }
    if inst.sizes.iter().any(|&s| s == 0) {
        out.push("all sizes must be at least 1".into());
    }
    let total: usize = inst.sizes.iter().sum();
    if total != n {
        out.push(format!("sizes sum to {total}, expected n = {n}"));
    }
    out
}

/// Outcome of comparing sigma2 against n + k - 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConditionCheck {
    /// Margin sigma2 - (n+k-1); `None` when sigma2 is infinite.
    Holds { margin: Option<i64> },
    Fails { margin: i64 },
}

impl ConditionCheck {
    pub fn holds(&self) -> bool {
        matches!(self, ConditionCheck::Holds { .. })
    }

    pub fn margin(&self) -> Option<i64> {
        match *self {
            ConditionCheck::Holds { margin } => margin,
            ConditionCheck::Fails { margin } => Some(margin),
        }
    }
}

/// Degree-sum condition sigma2(G) >= n + k - 1. Complete graphs satisfy
/// it vacuously: the condition quantifies over nonadjacent pairs only.
pub fn check_condition(inst: &PartitionInstance) -> ConditionCheck {
    let bound = inst.n() as i64 + inst.k() as i64 - 1;
    match inst.graph.sigma2() {
        SigmaTwo::Infinite => ConditionCheck::Holds { margin: None },
        SigmaTwo::Finite(s) => {
            let margin = s as i64 - bound;
            if margin >= 0 {
                ConditionCheck::Holds { margin: Some(margin) }
            } else {
                ConditionCheck::Fails { margin }
            }
        }
    }
}

/// Checks disjointness, coverage, consecutive adjacency, starts and
/// sizes of a candidate partition. Returns every violation found.
pub fn validate_partition(inst: &PartitionInstance, cand: &PathPartition) -> Vec<String> {
    let mut out = Vec::new();
    let n = inst.n();
    if cand.paths.len() != inst.k() {
        out.push(format!("expected {} paths, found {}", inst.k(), cand.paths.len()));
    }
    let mut seen = vec![false; n];
    for (i, p) in cand.paths.iter().enumerate() {
        for &v in p {
            if v >= n {
                out.push(format!("path {i} contains out-of-range vertex {v}"));
            } else if seen[v] {
                out.push(format!("vertex {v} appears more than once"));
            } else {
                seen[v] = true;
            }
        }
        for w in p.windows(2) {
            if w[0] < n && w[1] < n && !inst.graph.has_edge(w[0], w[1]) {
                out.push(format!("path {i}: {} and {} are not adjacent", w[0], w[1]));
            }
        }
        if i < inst.k() {
            if p.first() != Some(&inst.starts[i]) {
                out.push(format!(
                    "path {i} starts at {:?}, expected {}",
                    p.first(),
                    inst.starts[i]
                ));
            }
            if p.len() != inst.sizes[i] {
                out.push(format!("path {i} has {} vertices, expected {}", p.len(), inst.sizes[i]));
            }
        }
    }
    let covered = seen.iter().filter(|&&b| b).count();
    let listed: usize = cand.paths.iter().map(|p| p.len()).sum();
    if covered == listed && covered != n {
        out.push(format!("paths cover {covered} of {n} vertices"));
    }
    out
}

// ======================================================================
// JSON wire formats
// ======================================================================

#[derive(Serialize, Deserialize)]
struct InstanceWire {
    graph: String,
    k: usize,
    starts: Vec<usize>,
    sizes: Vec<usize>,
}

impl PartitionInstance {
    pub fn to_json(&self) -> String {
        let wire = InstanceWire {
            graph: to_graph6(&self.graph),
            k: self.k(),
            starts: self.starts.clone(),
            sizes: self.sizes.clone(),
        };
        serde_json::to_string(&wire).unwrap()
    }

    pub fn from_json(s: &str) -> Result<Self, Error> {
        let wire: InstanceWire =
            serde_json::from_str(s).map_err(|e| Error::InvalidInstance(vec![e.to_string()]))?;
        if wire.k != wire.starts.len() {
            return Err(Error::InvalidInstance(vec![format!(
                "k = {} does not match {} starts",
                wire.k,
                wire.starts.len()
            )]));
        }
        Ok(PartitionInstance { graph: parse_graph6(&wire.graph)?, starts: wire.starts, sizes: wire.sizes })
    }
}

impl PathPartition {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).unwrap()
    }

    pub fn from_json(s: &str) -> Result<Self, Error> {
        serde_json::from_str(s).map_err(|e| Error::InvalidInstance(vec![e.to_string()]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k6_inst() -> PartitionInstance {
        PartitionInstance::new(Graph::complete(6), vec![0, 1, 2], vec![1, 2, 3])
    }

    #[test]
    fn instance_validation() {
        assert!(validate_instance(&k6_inst()).is_empty());
        let dup = PartitionInstance::new(Graph::complete(6), vec![0, 0, 2], vec![1, 2, 3]);
        assert!(validate_instance(&dup).iter().any(|v| v.contains("duplicate")));
        let bad_sum = PartitionInstance::new(Graph::complete(6), vec![0, 1, 2], vec![1, 2, 2]);
        assert!(validate_instance(&bad_sum).iter().any(|v| v.contains("sum")));
    }

    #[test]
    fn condition_examples() {
        // K6 minus a perfect matching: sigma2 = 8 = 6 + 3 - 1, margin 0.
        let mut edges = Graph::complete(6).edges();
        edges.retain(|&(u, v)| !matches!((u, v), (0, 1) | (2, 3) | (4, 5)));
        let g = Graph::from_edges(6, &edges);
        let inst = PartitionInstance::new(g, vec![0, 1, 2], vec![2, 2, 2]);
        assert_eq!(check_condition(&inst), ConditionCheck::Holds { margin: Some(0) });

        let c6 = PartitionInstance::new(Graph::cycle(6), vec![0, 2, 4], vec![2, 2, 2]);
        assert_eq!(check_condition(&c6), ConditionCheck::Fails { margin: -4 });

        let pet = PartitionInstance::new(Graph::petersen(), vec![0, 1, 2], vec![3, 3, 4]);
        assert_eq!(check_condition(&pet), ConditionCheck::Fails { margin: -6 });

        let k6 = k6_inst();
        assert_eq!(check_condition(&k6), ConditionCheck::Holds { margin: None });
    }

    #[test]
    fn partition_validation() {
        let inst = k6_inst();
        let ok = PathPartition { paths: vec![vec![0], vec![1, 3], vec![2, 4, 5]] };
        assert!(validate_partition(&inst, &ok).is_empty());

        let repeated = PathPartition { paths: vec![vec![0], vec![1, 3], vec![2, 4, 4]] };
        assert!(validate_partition(&inst, &repeated)
            .iter()
            .any(|v| v.contains("more than once")));

        let c6 = PartitionInstance::new(Graph::cycle(6), vec![0, 2, 4], vec![2, 2, 2]);
        let p = PathPartition { paths: vec![vec![0, 1], vec![2, 3], vec![4, 5]] };
        assert!(validate_partition(&c6, &p).is_empty());

        // Non-adjacent consecutive pair.
        let bad = PathPartition { paths: vec![vec![0, 2], vec![2, 3], vec![4, 5]] };
        assert!(!validate_partition(&c6, &bad).is_empty());
    }

    #[test]
    fn json_roundtrip() {
        let inst = k6_inst();
        let back = PartitionInstance::from_json(&inst.to_json()).unwrap();
        assert_eq!(back.starts, inst.starts);
        assert_eq!(back.sizes, inst.sizes);
        assert_eq!(back.graph, inst.graph);

        let p = PathPartition { paths: vec![vec![0], vec![1, 3], vec![2, 4, 5]] };
        assert_eq!(PathPartition::from_json(&p.to_json()).unwrap(), p);
    }
}
