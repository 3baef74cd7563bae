//! Exact maximum independent set via branch and bound.
//!
//! Pruning uses a greedy clique-cover upper bound (each clique of the
//! candidate set contributes at most one vertex). The search is
//! deterministic: branching picks the highest-degree candidate, ties to
//! the lowest id.

use crate::bitset::VertexSet;
use crate::error::Error;
use crate::graph::Graph;

pub struct MisResult {
    pub size: usize,
    pub witness: VertexSet,
    pub nodes: u64,
}

/// Exact independence number with witness. The public contract caps
/// exact mode at n <= 64; larger graphs go through
/// [`max_independent_set`] directly, which only promises what the
/// budget allows.
pub fn independence_number(g: &Graph, budget: u64) -> Result<MisResult, Error> {
    if g.n() > 64 {
        return Err(Error::PreconditionNotMet(format!(
            "exact mode capped at n <= 64, got n = {}",
            g.n()
        )));
    }
    max_independent_set(g, budget)
}

/// Branch-and-bound MIS over graphs of any order, subject to a
/// search-node budget.
pub fn max_independent_set(g: &Graph, budget: u64) -> Result<MisResult, Error> {
    let mut best = greedy_independent_set(g);
    let mut state = Search { g, budget, nodes: 0, best_len: best.len(), best: &mut best };
    let all = g.vertices();
    let current = VertexSet::empty(g.n());
    state.expand(&current, 0, &all)?;
    let nodes = state.nodes;
    let size = best.len();
    Ok(MisResult { size, witness: best, nodes })
}

struct Search<'a> {
    g: &'a Graph,
    budget: u64,
    nodes: u64,
    best_len: usize,
    best: &'a mut VertexSet,
}

impl Search<'_> {
    fn expand(&mut self, current: &VertexSet, current_len: usize, cand: &VertexSet) -> Result<(), Error> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExhausted { nodes: self.nodes });
        }
        if cand.is_empty() {
            if current_len > self.best_len {
                self.best_len = current_len;
                *self.best = current.clone();
            }
            return Ok(());
        }
        if current_len + clique_cover_bound(self.g, cand) <= self.best_len {
            return Ok(());
        }
        // Branch vertex: max degree within candidates, lowest id on ties.
        let v = cand
            .iter()
            .max_by(|&a, &b| {
                let da = self.g.degree_into(a, cand);
                let db = self.g.degree_into(b, cand);
                da.cmp(&db).then(b.cmp(&a))
            })
            .unwrap();

        // Include v.
        let mut with_v = current.clone();
        with_v.insert(v);
        let mut cand_in = cand.clone();
        cand_in.remove(v);
        cand_in.subtract(self.g.neighbors(v));
        self.expand(&with_v, current_len + 1, &cand_in)?;

        // Exclude v.
        let mut cand_out = cand.clone();
        cand_out.remove(v);
        self.expand(current, current_len, &cand_out)
    }
}

/// Greedy clique cover of `cand`: iterate ascending ids, place each
/// vertex in the first clique it is fully adjacent to.
fn clique_cover_bound(g: &Graph, cand: &VertexSet) -> usize {
    let mut cliques: Vec<VertexSet> = Vec::new();
    for v in cand.iter() {
        let row = g.neighbors(v);
        match cliques.iter_mut().find(|c| c.is_subset(row)) {
            Some(c) => c.insert(v),
            None => {
                let mut c = VertexSet::empty(g.n());
                c.insert(v);
                cliques.push(c);
            }
        }
    }
    cliques.len()
}

/// Min-degree greedy independent set, the initial incumbent.
fn greedy_independent_set(g: &Graph) -> VertexSet {
    let mut out = VertexSet::empty(g.n());
    let mut avail = g.vertices();
    while let Some(v) = avail
        .iter()
        .min_by_key(|&v| (g.degree_into(v, &avail), v))
    {
        out.insert(v);
        avail.remove(v);
        avail.subtract(g.neighbors(v));
    }
    out
}

pub fn is_independent(g: &Graph, set: &VertexSet) -> bool {
    set.iter().all(|v| g.neighbors(v).is_disjoint(set))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        assert_eq!(independence_number(&Graph::cycle(5), 1 << 20).unwrap().size, 2);
        assert_eq!(
            independence_number(&Graph::complete_bipartite(3, 3), 1 << 20).unwrap().size,
            3
        );
        let r = independence_number(&Graph::petersen(), 1 << 20).unwrap();
        assert_eq!(r.size, 4);
        assert!(is_independent(&Graph::petersen(), &r.witness));
        assert_eq!(r.witness.len(), 4);
    }

    #[test]
    fn petersen_exhaustive_oracle() {
        // Exhaustive subset check at n = 10.
        let g = Graph::petersen();
        let mut best = 0usize;
        for mask in 0u32..1 << 10 {
            let set = VertexSet::from_iter(10, (0..10).filter(|&i| mask >> i & 1 == 1));
            if is_independent(&g, &set) {
                best = best.max(set.len());
            }
        }
        assert_eq!(best, 4);
        assert_eq!(independence_number(&g, 1 << 20).unwrap().size, best);
    }

    #[test]
    fn budget_exhaustion_reported() {
        let g = Graph::cycle(20);
        match max_independent_set(&g, 3) {
            Err(Error::BudgetExhausted { .. }) => {}
            other => panic!("expected budget exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn cap_enforced() {
        let g = Graph::empty(65);
        assert!(matches!(independence_number(&g, 100), Err(Error::PreconditionNotMet(_))));
        assert_eq!(max_independent_set(&g, 1 << 20).unwrap().size, 65);
    }
}
