//! Vertex-capacitated flow: internally disjoint path families and
//! vertex connectivity.
//!
//! Every graph vertex is split into in/out endpoints joined by a unit
//! arc, so augmenting paths correspond to internally vertex-disjoint
//! paths in the original graph.

use crate::bitset::VertexSet;
use crate::error::Error;
use crate::graph::Graph;

struct FlowNet {
    // arcs stored in forward/reverse pairs; e ^ 1 is the partner
    to: Vec<usize>,
    cap: Vec<i32>,
    orig: Vec<i32>,
    head: Vec<Vec<usize>>,
}

impl FlowNet {
    fn new(nodes: usize) -> Self {
        FlowNet { to: Vec::new(), cap: Vec::new(), orig: Vec::new(), head: vec![Vec::new(); nodes] }
    }

    fn arc(&mut self, u: usize, v: usize, cap: i32) {
        self.head[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(cap);
        self.orig.push(cap);
        self.head[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(0);
        self.orig.push(0);
    }

    /// Net flow on a forward arc.
    #[inline]
    fn flow(&self, e: usize) -> i32 {
        self.orig[e] - self.cap[e]
    }

    /// One BFS augmentation of a unit of flow; returns false when the
    /// sink is unreachable.
    fn augment(&mut self, s: usize, t: usize) -> bool {
        let n = self.head.len();
        let mut pred: Vec<usize> = vec![usize::MAX; n];
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(s);
        pred[s] = usize::MAX - 1;
        while let Some(u) = queue.pop_front() {
            if u == t {
                break;
            }
            for &e in &self.head[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && pred[v] == usize::MAX {
                    pred[v] = e;
                    queue.push_back(v);
                }
            }
        }
        if pred[t] == usize::MAX {
            return false;
        }
        let mut v = t;
        while v != s {
            let e = pred[v];
            self.cap[e] -= 1;
            self.cap[e ^ 1] += 1;
            v = self.to[e ^ 1];
        }
        true
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &e in &self.head[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}

const IN: usize = 0;
const OUT: usize = 1;
const BIG: i32 = i32::MAX / 4;

#[inline]
fn node(v: usize, side: usize) -> usize {
    2 * v + side
}

/// One internally vertex-disjoint path per source, each ending at its
/// first contact with `sink_region` and avoiding `forbidden`. Sources,
/// sinks and forbidden must be pairwise disjoint. On failure the
/// blocking vertex cut is returned as the error payload.
pub fn menger_disjoint_paths(
    g: &Graph,
    sources: &VertexSet,
    sink_region: &VertexSet,
    forbidden: &VertexSet,
) -> Result<Vec<Vec<usize>>, Error> {
    let n = g.n();
    if !sources.is_disjoint(sink_region)
        || !sources.is_disjoint(forbidden)
        || !sink_region.is_disjoint(forbidden)
    {
        return Err(Error::PreconditionNotMet(
            "sources, sink_region and forbidden must be pairwise disjoint".into(),
        ));
    }
    let want = sources.len();
    if want == 0 {
        return Ok(Vec::new());
    }

    let ssrc = 2 * n;
    let ssink = 2 * n + 1;
    let mut net = FlowNet::new(2 * n + 2);
    for v in 0..n {
        if forbidden.contains(v) {
            continue;
        }
        net.arc(node(v, IN), node(v, OUT), 1);
    }
    for v in 0..n {
        if forbidden.contains(v) {
            continue;
        }
        if sources.contains(v) {
            net.arc(ssrc, node(v, IN), 1);
        }
        if sink_region.contains(v) {
            // sink vertices terminate paths: their only out-arc goes to
            // the super sink
            net.arc(node(v, OUT), ssink, 1);
            continue;
        }
        for w in g.neighbors(v).iter() {
            if forbidden.contains(w) || sources.contains(w) {
                continue; // paths never re-enter a source
            }
            net.arc(node(v, OUT), node(w, IN), BIG);
        }
    }

    let mut flow = 0;
    while flow < want && net.augment(ssrc, ssink) {
        flow += 1;
    }
    if flow < want {
        let seen = net.reachable(ssrc);
        let mut cut = Vec::new();
        for v in 0..n {
            if forbidden.contains(v) {
                continue;
            }
            // interior bottleneck, or an already-routed source walling
            // off the rest
            if (seen[node(v, IN)] && !seen[node(v, OUT)])
                || (sources.contains(v) && !seen[node(v, IN)])
            {
                cut.push(v);
            }
        }
        return Err(Error::NoDisjointFamily { cut });
    }

    // Walk unit flows from each source.
    let mut paths = Vec::with_capacity(want);
    for s in sources.iter() {
        let mut path = vec![s];
        let mut v = s;
        loop {
            if sink_region.contains(v) {
                break;
            }
            // follow a flow-carrying forward arc out of v_out
            let mut next = None;
            for &e in &net.head[node(v, OUT)] {
                if e % 2 == 0 && net.flow(e) > 0 {
                    let w = net.to[e];
                    if w == ssink {
                        continue;
                    }
                    next = Some(w / 2);
                    // consume one unit so later walks do not reuse it
                    net.cap[e] += 1;
                    break;
                }
            }
            match next {
                Some(w) => {
                    path.push(w);
                    v = w;
                }
                None => {
                    return Err(Error::construction(
                        "menger-extract",
                        format!("flow walk from source {s} stalled at {v}"),
                    ))
                }
            }
        }
        paths.push(path);
    }
    Ok(paths)
}

/// Exact vertex connectivity. Complete graphs report n-1. The flow
/// sources range over a fixed minimum-degree vertex and its closed
/// neighborhood, which always captures a minimum cut.
pub fn vertex_connectivity(g: &Graph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    if g.is_complete() {
        return n - 1;
    }
    if !g.is_connected() {
        return 0;
    }
    let v0 = (0..n).min_by_key(|&v| g.degree(v)).unwrap();
    let mut best = n - 1;
    let mut consider = |s: usize, t: usize, best: &mut usize| {
        if s == t || g.has_edge(s, t) {
            return;
        }
        let flow = vertex_flow_bounded(g, s, t, *best);
        *best = (*best).min(flow);
    };
    for t in 0..n {
        consider(v0, t, &mut best);
    }
    let nbrs = g.neighbors(v0).to_vec();
    for (i, &s) in nbrs.iter().enumerate() {
        for &t in &nbrs[i + 1..] {
            consider(s, t, &mut best);
        }
    }
    best
}

/// Max number of internally disjoint s-t paths, stopping early once
/// `cap` is reached.
fn vertex_flow_bounded(g: &Graph, s: usize, t: usize, cap: usize) -> usize {
    let n = g.n();
    let mut net = FlowNet::new(2 * n);
    for v in 0..n {
        let c = if v == s || v == t { BIG } else { 1 };
        net.arc(node(v, IN), node(v, OUT), c);
    }
    for v in 0..n {
        for w in g.neighbors(v).iter() {
            net.arc(node(v, OUT), node(w, IN), BIG);
        }
    }
    let mut flow = 0;
    while flow < cap && net.augment(node(s, OUT), node(t, IN)) {
        flow += 1;
    }
    flow
}

/// A minimum vertex cut separating the graph (only defined for
/// non-complete connected graphs); pairs with `vertex_connectivity`.
pub fn minimum_vertex_cut(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    if g.is_complete() || !g.is_connected() {
        return None;
    }
    let kappa = vertex_connectivity(g);
    // Recover a cut by rerunning the certifying flow.
    let v0 = (0..n).min_by_key(|&v| g.degree(v)).unwrap();
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .filter(|&t| t != v0 && !g.has_edge(v0, t))
        .map(|t| (v0, t))
        .collect();
    let nbrs = g.neighbors(v0).to_vec();
    for (i, &s) in nbrs.iter().enumerate() {
        for &t in &nbrs[i + 1..] {
            if !g.has_edge(s, t) {
                pairs.push((s, t));
            }
        }
    }
    for (s, t) in pairs {
        if vertex_flow_bounded(g, s, t, n) == kappa {
            let mut net = FlowNet::new(2 * n);
            for v in 0..n {
                let c = if v == s || v == t { BIG } else { 1 };
                net.arc(node(v, IN), node(v, OUT), c);
            }
            for v in 0..n {
                for w in g.neighbors(v).iter() {
                    net.arc(node(v, OUT), node(w, IN), BIG);
                }
            }
            while net.augment(node(s, OUT), node(t, IN)) {}
            let seen = net.reachable(node(s, OUT));
            let cut: Vec<usize> = (0..n)
                .filter(|&v| seen[node(v, IN)] && !seen[node(v, OUT)])
                .collect();
            if cut.len() == kappa {
                return Some(cut);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connectivity_examples() {
        assert_eq!(vertex_connectivity(&Graph::path(4)), 1);
        assert_eq!(vertex_connectivity(&Graph::complete(5)), 4);
        assert_eq!(vertex_connectivity(&Graph::petersen()), 3);
        assert_eq!(vertex_connectivity(&Graph::cycle(6)), 2);
    }

    #[test]
    fn connectivity_le_min_degree() {
        let g = Graph::from_edges(7, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 3)]);
        assert!(vertex_connectivity(&g) <= g.min_degree());
    }

    #[test]
    fn min_cut_separates() {
        let g = Graph::petersen();
        let cut = minimum_vertex_cut(&g).unwrap();
        assert_eq!(cut.len(), 3);
        let mut keep = g.vertices();
        for v in cut {
            keep.remove(v);
        }
        assert!(g.components(&keep).len() >= 2);
    }

    #[test]
    fn menger_sink_capacity_one() {
        // Two sources into a single sink vertex cannot be disjoint.
        let g = Graph::complete(5);
        let err = menger_disjoint_paths(
            &g,
            &VertexSet::from_iter(5, [0, 1]),
            &VertexSet::from_iter(5, [4]),
            &VertexSet::empty(5),
        )
        .unwrap_err();
        match err {
            Error::NoDisjointFamily { cut } => assert_eq!(cut, vec![4]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn menger_two_paths_in_k5() {
        let g = Graph::complete(5);
        let paths = menger_disjoint_paths(
            &g,
            &VertexSet::from_iter(5, [0, 1]),
            &VertexSet::from_iter(5, [3, 4]),
            &VertexSet::empty(5),
        )
        .unwrap();
        assert_eq!(paths.len(), 2);
        check_family(&g, &paths, &VertexSet::from_iter(5, [3, 4]));
    }

    #[test]
    fn menger_petersen_three() {
        let g = Graph::petersen();
        let sinks = VertexSet::from_iter(10, [5, 6, 7, 8, 9]);
        let paths = menger_disjoint_paths(
            &g,
            &VertexSet::from_iter(10, [0, 1, 2]),
            &sinks,
            &VertexSet::empty(10),
        )
        .unwrap();
        assert_eq!(paths.len(), 3);
        check_family(&g, &paths, &sinks);
    }

    fn check_family(g: &Graph, paths: &[Vec<usize>], sinks: &VertexSet) {
        let mut seen = VertexSet::empty(g.n());
        for p in paths {
            assert!(g.is_path(p), "not a path: {p:?}");
            for &v in p {
                assert!(!seen.contains(v), "vertex {v} reused");
                seen.insert(v);
            }
            // exactly one sink vertex, at the end
            let in_sink = p.iter().filter(|&&v| sinks.contains(v)).count();
            assert_eq!(in_sink, 1);
            assert!(sinks.contains(*p.last().unwrap()));
        }
    }
}
