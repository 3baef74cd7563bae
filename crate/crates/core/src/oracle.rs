//! Exact solver and batch verifier: the ground truth every
//! constructive routine is judged against.

use crate::bitset::VertexSet;
use crate::error::Error;
use crate::graph::{parse_graph6, Graph, SigmaTwo};
use crate::instance::{check_condition, validate_instance, PartitionInstance, PathPartition};
use crate::outcome::{Outcome, SolveReport};

/// Exhaustive backtracking search for a prescribed path partition.
///
/// Paths are built one at a time, shortest prescribed size first;
/// extension prefers vertices with the fewest onward options. Start
/// vertices of pending paths are reserved and never consumed by other
/// paths. Deterministic for fixed inputs and budget.
pub fn solve_exact(inst: &PartitionInstance, budget: u64) -> Result<SolveReport, Error> {
    let violations = validate_instance(inst);
    if !violations.is_empty() {
        return Err(Error::InvalidInstance(violations));
    }
    let (sorted, order) = inst.sorted_by_size();
    let mut search = ExactSearch {
        g: &sorted.graph,
        starts: &sorted.starts,
        sizes: &sorted.sizes,
        budget,
        nodes: 0,
        paths: Vec::new(),
        used: VertexSet::empty(sorted.graph.n()),
        pending: VertexSet::from_iter(sorted.graph.n(), sorted.starts.iter().copied()),
    };
    let outcome = match search.run() {
        Ok(Some(paths)) => {
            // Undo the size-sort so path i answers start i of the input.
            let mut original = vec![Vec::new(); inst.k()];
            for (sorted_idx, &orig_idx) in order.iter().enumerate() {
                original[orig_idx] = paths[sorted_idx].clone();
            }
            let partition = PathPartition { paths: original };
            debug_assert!(crate::instance::validate_partition(inst, &partition).is_empty());
            Outcome::found(partition)
        }
        Ok(None) => Outcome::Infeasible { certificate: "exhaustive backtracking search".into() },
        Err(()) => Outcome::BudgetExhausted,
    };
    Ok(SolveReport::new(outcome, search.nodes))
}

struct ExactSearch<'a> {
    g: &'a Graph,
    starts: &'a [usize],
    sizes: &'a [usize],
    budget: u64,
    nodes: u64,
    paths: Vec<Vec<usize>>,
    used: VertexSet,
    pending: VertexSet,
}

impl ExactSearch<'_> {
    /// Ok(Some(paths)) found, Ok(None) exhausted, Err(()) budget cut.
    fn run(&mut self) -> Result<Option<Vec<Vec<usize>>>, ()> {
        if self.begin_path(0)? {
            Ok(Some(std::mem::take(&mut self.paths)))
        } else {
            Ok(None)
        }
    }

    fn begin_path(&mut self, i: usize) -> Result<bool, ()> {
        if i == self.starts.len() {
            return Ok(true);
        }
        let x = self.starts[i];
        self.pending.remove(x);
        self.used.insert(x);
        self.paths.push(vec![x]);
        if self.extend(i)? {
            return Ok(true);
        }
        self.paths.pop();
        self.used.remove(x);
        self.pending.insert(x);
        Ok(false)
    }

    fn extend(&mut self, i: usize) -> Result<bool, ()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(());
        }
        if self.paths[i].len() == self.sizes[i] {
            return self.begin_path(i + 1);
        }
        if !self.feasible(i) {
            return Ok(false);
        }
        let last = *self.paths[i].last().unwrap();
        let mut cand: Vec<usize> = self
            .g
            .neighbors(last)
            .iter()
            .filter(|&v| !self.used.contains(v) && !self.pending.contains(v))
            .collect();
        // fewest onward options first; small sizes fail fast
        cand.sort_by_key(|&v| {
            let mut onward = self.g.neighbors(v).difference(&self.used);
            onward.subtract(&self.pending);
            (onward.len(), v)
        });
        for v in cand {
            self.used.insert(v);
            self.paths[i].push(v);
            if self.extend(i)? {
                return Ok(true);
            }
            self.paths[i].pop();
            self.used.remove(v);
        }
        Ok(false)
    }

    /// Exact component tiling over the residual graph. Each pending
    /// path is confined to the component of its reserved start, and the
    /// current path grows into exactly one component adjacent to its
    /// endpoint, so per-component totals are forced. Called only with
    /// the current path unfinished.
    fn feasible(&mut self, i: usize) -> bool {
        let free = self.g.vertices().difference(&self.used);
        let comps = self.g.components(&free);
        let cur_remaining = self.sizes[i] - self.paths[i].len();
        let last = *self.paths[i].last().unwrap();

        let mut demand = vec![0usize; comps.len()];
        for j in i + 1..self.starts.len() {
            let x = self.starts[j];
            match comps.iter().position(|c| c.contains(x)) {
                Some(ci) => demand[ci] += self.sizes[j],
                None => return false,
            }
        }
        // Exactly one component may be left for the current path, and
        // its slack must match the current remaining requirement.
        let mut open: Option<usize> = None;
        for (ci, comp) in comps.iter().enumerate() {
            if demand[ci] > comp.len() {
                return false;
            }
            if demand[ci] != comp.len() {
                if open.is_some() {
                    return false;
                }
                open = Some(ci);
            }
        }
        match open {
            None => false, // cur_remaining >= 1 has nowhere to go
            Some(ci) => {
                comps[ci].len() - demand[ci] == cur_remaining
                    && !self.g.neighbors(last).is_disjoint(&comps[ci])
            }
        }
    }
}

// ======================================================================
// Naive oracle: straight permutation enumeration
// ======================================================================

/// Test oracle, independent of `solve_exact`: enumerates vertex
/// arrangements segment by segment with no ordering heuristics or
/// component pruning. `true` means some valid partition exists.
pub fn naive_partition_exists(inst: &PartitionInstance) -> bool {
    let n = inst.n();
    if !validate_instance(inst).is_empty() {
        return false;
    }
    let mut seg_start = Vec::with_capacity(inst.k());
    let mut acc = 0usize;
    for &s in &inst.sizes {
        seg_start.push(acc);
        acc += s;
    }
    let mut slots: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    place(inst, &seg_start, &mut slots, &mut used)
}

fn place(
    inst: &PartitionInstance,
    seg_start: &[usize],
    slots: &mut Vec<usize>,
    used: &mut [bool],
) -> bool {
    let pos = slots.len();
    if pos == inst.n() {
        return true;
    }
    // Segment index of this position.
    let seg = match seg_start.binary_search(&pos) {
        Ok(s) => s,
        Err(s) => s - 1,
    };
    let at_segment_head = seg_start[seg] == pos;
    for v in 0..inst.n() {
        if used[v] {
            continue;
        }
        if at_segment_head {
            if v != inst.starts[seg] {
                continue;
            }
        } else if !inst.graph.has_edge(slots[pos - 1], v) {
            continue;
        }
        used[v] = true;
        slots.push(v);
        if place(inst, seg_start, slots, used) {
            return true;
        }
        slots.pop();
        used[v] = false;
    }
    false
}

// ======================================================================
// Labeled graph enumeration with isomorphism dedup (small n)
// ======================================================================

/// All graphs on `n` vertices (n <= 7 is practical) passing `filter`,
/// one representative per isomorphism class.
pub fn enumerate_graphs(n: usize, mut filter: impl FnMut(&Graph) -> bool) -> Vec<Graph> {
    assert!(n <= 8, "labeled enumeration is capped at n = 8");
    let m = n * (n - 1) / 2;
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let perms = permutations(n);
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1u64 << m {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = Graph::from_edges(n, &edges);
        if !filter(&g) {
            continue;
        }
        if seen.insert(canonical_mask(&g, &pairs, &perms)) {
            out.push(g);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    heap_permute(&mut cur, n, &mut out);
    out
}

fn heap_permute(cur: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == 1 {
        out.push(cur.clone());
        return;
    }
    for i in 0..k {
        heap_permute(cur, k - 1, out);
        if k % 2 == 0 {
            cur.swap(i, k - 1);
        } else {
            cur.swap(0, k - 1);
        }
    }
}

fn canonical_mask(g: &Graph, pairs: &[(usize, usize)], perms: &[Vec<usize>]) -> u64 {
    let mut bit_of = std::collections::HashMap::new();
    for (b, &(u, v)) in pairs.iter().enumerate() {
        bit_of.insert((u, v), b);
    }
    let edges = g.edges();
    let mut best = u64::MAX;
    for p in perms {
        let mut mask = 0u64;
        for &(u, v) in &edges {
            let (a, b) = (p[u].min(p[v]), p[u].max(p[v]));
            mask |= 1u64 << bit_of[&(a, b)];
        }
        best = best.min(mask);
    }
    best
}

// ======================================================================
// Batch verification over graph6 streams
// ======================================================================

#[derive(Clone, Debug)]
pub struct VerifyPolicy {
    pub k: usize,
    pub budget: u64,
    pub workers: usize,
}

impl Default for VerifyPolicy {
    fn default() -> Self {
        VerifyPolicy { k: 3, budget: 1 << 24, workers: 1 }
    }
}

#[derive(Clone, Debug, Default, serde::Serialize)]
pub struct VerifyReport {
    pub graphs: usize,
    pub condition_holds: usize,
    pub instances: u64,
    pub found: u64,
    pub infeasible: u64,
    pub budget_exhausted: u64,
    pub parse_errors: usize,
    /// Condition-satisfying instances the exhaustive search proved
    /// unsolvable; each one falsifies the degree-sum conjecture.
    pub counterexamples: Vec<serde_json::Value>,
}

/// Runs the full quantifier sweep on every stream graph whose
/// degree-sum condition holds: all start injections crossed with all
/// sorted size multisets. Results aggregate in input order regardless
/// of worker count.
pub fn verify_batch<'a>(lines: impl Iterator<Item = &'a str>, policy: &VerifyPolicy) -> VerifyReport {
    let lines: Vec<&str> = lines.filter(|l| !l.trim().is_empty()).collect();
    let workers = policy.workers.max(1).min(lines.len().max(1));
    let chunks: Vec<Vec<(usize, &str)>> = (0..workers)
        .map(|w| {
            lines
                .iter()
                .enumerate()
                .filter(|(i, _)| i % workers == w)
                .map(|(i, &l)| (i, l))
                .collect()
        })
        .collect();

    let mut per_line: Vec<Option<LineResult>> = vec![None; lines.len()];
    std::thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .into_iter()
            .map(|chunk| {
                let policy = policy.clone();
                scope.spawn(move || {
                    chunk
                        .into_iter()
                        .map(|(i, line)| (i, verify_one(line, &policy)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (i, r) in h.join().expect("verify worker panicked") {
                per_line[i] = Some(r);
            }
        }
    });

    let mut report = VerifyReport::default();
    for r in per_line.into_iter().flatten() {
        match r {
            LineResult::ParseError => report.parse_errors += 1,
            LineResult::Graph(sub) => {
                report.graphs += 1;
                report.condition_holds += sub.condition_holds as usize;
                report.instances += sub.instances;
                report.found += sub.found;
                report.infeasible += sub.infeasible;
                report.budget_exhausted += sub.budget_exhausted;
                for c in sub.counterexamples {
                    report
                        .counterexamples
                        .push(serde_json::from_str(&c.to_json()).unwrap());
                }
            }
        }
    }
    report
}

#[derive(Clone)]
enum LineResult {
    ParseError,
    Graph(GraphSweep),
}

#[derive(Clone, Default)]
struct GraphSweep {
    condition_holds: bool,
    instances: u64,
    found: u64,
    infeasible: u64,
    budget_exhausted: u64,
    counterexamples: Vec<PartitionInstance>,
}

fn verify_one(line: &str, policy: &VerifyPolicy) -> LineResult {
    let g = match parse_graph6(line) {
        Ok(g) => g,
        Err(_) => return LineResult::ParseError,
    };
    let mut sweep = GraphSweep::default();
    let n = g.n();
    let k = policy.k;
    if n < k {
        return LineResult::Graph(sweep);
    }
    let probe = PartitionInstance::new(g.clone(), (0..k).collect(), probe_sizes(n, k));
    if !check_condition(&probe).holds() {
        return LineResult::Graph(sweep);
    }
    sweep.condition_holds = true;
    for sizes in size_multisets(n, k) {
        for starts in injections(n, k) {
            let inst = PartitionInstance::new(g.clone(), starts, sizes.clone());
            sweep.instances += 1;
            match solve_exact(&inst, policy.budget).map(|r| r.outcome) {
                Ok(Outcome::Found { .. }) => sweep.found += 1,
                Ok(Outcome::Infeasible { .. }) => {
                    sweep.infeasible += 1;
                    sweep.counterexamples.push(inst);
                }
                Ok(Outcome::BudgetExhausted) => sweep.budget_exhausted += 1,
                _ => {}
            }
        }
    }
    LineResult::Graph(sweep)
}

fn probe_sizes(n: usize, k: usize) -> Vec<usize> {
    let mut v = vec![1; k];
    v[k - 1] = n - (k - 1);
    v
}

/// Sorted size multisets: n1 <= ... <= nk, all >= 1, summing to n.
pub fn size_multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 1 {
            if n >= min {
                cur.push(n);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        let mut s = min;
        while s * k <= n {
            cur.push(s);
            rec(n - s, k - 1, s, cur, out);
            cur.pop();
            s += 1;
        }
    }
    rec(n, k, 1, &mut cur, &mut out);
    out
}

/// All ordered k-tuples of distinct vertices from 0..n.
pub fn injections(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    let mut used = vec![false; n];
    fn rec(n: usize, k: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(n, k, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    rec(n, k, &mut cur, &mut used, &mut out);
    out
}

// ======================================================================
// Sharpness search: sigma2 exactly one below the threshold
// ======================================================================

/// Searches graphs with sigma2 = n + k - 2 for an instance the
/// exhaustive solver proves unsolvable. Structured join families are
/// probed first, then full labeled enumeration for n <= 7.
pub fn find_sharpness_witness(
    n: usize,
    k: usize,
    budget: u64,
) -> Result<Option<PartitionInstance>, Error> {
    if n < k || k < 3 {
        return Err(Error::PreconditionNotMet(format!("need n >= k >= 3, got n={n}, k={k}")));
    }
    let target = n + k - 2;
    let mut spent: u64 = 0;

    // Join family: clique K_k joined to two disjoint cliques.
    for a in 1..=(n - k) / 2 {
        let b = n - k - a;
        if b == 0 {
            continue;
        }
        let g = join_clique_two_cliques(n, k, a, b);
        if g.sigma2() != SigmaTwo::Finite(target) {
            continue;
        }
        if let Some(found) = scan_graph(&g, k, budget, &mut spent)? {
            return Ok(Some(found));
        }
    }

    // Exhaustive over labeled graphs for small n.
    if n <= 7 {
        let m = n * (n - 1) / 2;
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        for mask in 0u64..1u64 << m {
            spent += 1;
            if spent > budget {
                return Err(Error::BudgetExhausted { nodes: spent });
            }
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(bit, _)| mask >> bit & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::from_edges(n, &edges);
            if g.sigma2() != SigmaTwo::Finite(target) {
                continue;
            }
            if let Some(found) = scan_graph(&g, k, budget, &mut spent)? {
                return Ok(Some(found));
            }
        }
    }
    Ok(None)
}

fn scan_graph(
    g: &Graph,
    k: usize,
    budget: u64,
    spent: &mut u64,
) -> Result<Option<PartitionInstance>, Error> {
    let n = g.n();
    for sizes in size_multisets(n, k) {
        for starts in injections(n, k) {
            let inst = PartitionInstance::new(g.clone(), starts, sizes.clone());
            let remaining = budget.saturating_sub(*spent);
            if remaining == 0 {
                return Err(Error::BudgetExhausted { nodes: *spent });
            }
            let report = solve_exact(&inst, remaining)?;
            *spent += report.nodes_explored;
            match report.outcome {
                Outcome::Infeasible { .. } => return Ok(Some(inst)),
                Outcome::BudgetExhausted => {
                    return Err(Error::BudgetExhausted { nodes: *spent })
                }
                _ => {}
            }
        }
    }
    Ok(None)
}

/// K_k joined to the disjoint union K_a + K_b (the first k vertices
/// form the joining clique).
pub fn join_clique_two_cliques(n: usize, k: usize, a: usize, b: usize) -> Graph {
    assert_eq!(k + a + b, n);
    let mut edges = Vec::new();
    for u in 0..k {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    for u in k..k + a {
        for v in u + 1..k + a {
            edges.push((u, v));
        }
    }
    for u in k + a..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::validate_partition;

    #[test]
    fn k6_trivial_found() {
        let inst = PartitionInstance::new(Graph::complete(6), vec![0, 1, 2], vec![1, 2, 3]);
        let r = solve_exact(&inst, 1 << 20).unwrap();
        let p = r.outcome.partition().expect("complete graph must solve");
        assert!(validate_partition(&inst, p).is_empty());
    }

    #[test]
    fn star_infeasible() {
        // K_{1,5} center 0: three disjoint edges would need three
        // pairwise-adjacent leaves.
        let g = Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]);
        let inst = PartitionInstance::new(g, vec![1, 2, 3], vec![2, 2, 2]);
        let r = solve_exact(&inst, 1 << 20).unwrap();
        assert!(matches!(r.outcome, Outcome::Infeasible { .. }));
    }

    #[test]
    fn c6_explicit_witness() {
        let inst = PartitionInstance::new(Graph::cycle(6), vec![0, 2, 4], vec![2, 2, 2]);
        let r = solve_exact(&inst, 1 << 20).unwrap();
        let p = r.outcome.partition().unwrap();
        assert_eq!(p.paths, vec![vec![0, 1], vec![2, 3], vec![4, 5]]);
    }

    #[test]
    fn budget_exhaustion() {
        let inst = PartitionInstance::new(Graph::complete(12), vec![0, 1, 2], vec![4, 4, 4]);
        let r = solve_exact(&inst, 2).unwrap();
        assert_eq!(r.outcome, Outcome::BudgetExhausted);
    }

    #[test]
    fn agrees_with_naive_small() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let n = rng.random_range(4..=8);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random_bool(0.5) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges);
            let k = rng.random_range(2..=3.min(n));
            let sizes = {
                let mut s = vec![1usize; k];
                for _ in 0..n - k {
                    let i = rng.random_range(0..k);
                    s[i] += 1;
                }
                s
            };
            let mut starts: Vec<usize> = (0..n).collect();
            starts.shuffle(&mut rng);
            starts.truncate(k);
            let inst = PartitionInstance::new(g, starts, sizes);
            let fast = solve_exact(&inst, 1 << 24).unwrap();
            let naive = naive_partition_exists(&inst);
            match fast.outcome {
                Outcome::Found { ref partition } => {
                    assert!(validate_partition(&inst, partition).is_empty());
                    assert!(naive, "solver found a partition the oracle says cannot exist");
                }
                Outcome::Infeasible { .. } => assert!(!naive, "solver missed a partition"),
                other => panic!("unexpected outcome {other:?}"),
            }
        }
    }

    #[test]
    fn monotone_under_edge_addition() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let n = 7;
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random_bool(0.55) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges);
            let inst = PartitionInstance::new(g.clone(), vec![0, 1, 2], vec![2, 2, 3]);
            let before = solve_exact(&inst, 1 << 24).unwrap();
            if !before.outcome.is_found() {
                continue;
            }
            // add one absent edge if any
            let mut extra = None;
            'outer: for u in 0..n {
                for v in u + 1..n {
                    if !g.has_edge(u, v) {
                        extra = Some((u, v));
                        break 'outer;
                    }
                }
            }
            if let Some(e) = extra {
                let g2 = g.add_edges(&[e]);
                let inst2 = PartitionInstance::new(g2, vec![0, 1, 2], vec![2, 2, 3]);
                assert!(solve_exact(&inst2, 1 << 24).unwrap().outcome.is_found());
            }
        }
    }

    #[test]
    fn sharpness_witness_exists_small() {
        let w = find_sharpness_witness(6, 3, 1 << 26).unwrap();
        let inst = w.expect("expected a sharpness witness at n = 6");
        assert_eq!(inst.graph.sigma2(), SigmaTwo::Finite(6 + 3 - 2));
        assert!(!naive_partition_exists(&inst));
    }

    #[test]
    fn verify_small_batch() {
        let k7 = crate::graph::to_graph6(&Graph::complete(7));
        let lines = vec![k7.as_str(), "not graph6 !!"];
        let report = verify_batch(lines.into_iter(), &VerifyPolicy { k: 3, budget: 1 << 22, workers: 2 });
        assert_eq!(report.graphs, 1);
        assert_eq!(report.parse_errors, 1);
        assert_eq!(report.infeasible, 0);
        assert!(report.found > 0);
        assert_eq!(report.found, report.instances);
    }

    #[test]
    fn size_multiset_counts() {
        assert_eq!(size_multisets(6, 3), vec![vec![1, 1, 4], vec![1, 2, 3], vec![2, 2, 2]]);
        assert_eq!(size_multisets(7, 3).len(), 4);
        assert_eq!(injections(6, 3).len(), 120);
    }
}
