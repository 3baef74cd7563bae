//! Immutable simple undirected graphs over dense vertex ids `0..n`.
//!
//! Adjacency is one bitset row per vertex; rows stay symmetric and
//! irreflexive by construction. All queries here are pure.

use crate::bitset::VertexSet;
use crate::error::Error;

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    rows: Vec<VertexSet>,
    degrees: Vec<usize>,
    edge_count: usize,
}

/// Minimum degree sum over nonadjacent vertex pairs. A complete graph has
/// no nonadjacent pair, so the value is the distinguished `Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SigmaTwo {
    Finite(usize),
    Infinite,
}

impl SigmaTwo {
    pub fn at_least(self, bound: usize) -> bool {
        match self {
            SigmaTwo::Finite(v) => v >= bound,
            SigmaTwo::Infinite => true,
        }
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            SigmaTwo::Finite(v) => Some(v),
            SigmaTwo::Infinite => None,
        }
    }

    /// Clamp to `n`, the natural cap for cycle lengths.
    pub fn min_with(self, n: usize) -> usize {
        match self {
            SigmaTwo::Finite(v) => v.min(n),
            SigmaTwo::Infinite => n,
        }
    }
}

impl std::fmt::Display for SigmaTwo {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SigmaTwo::Finite(v) => write!(f, "{v}"),
            SigmaTwo::Infinite => write!(f, "inf"),
        }
    }
}

impl Graph {
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Graph {
        let mut rows = vec![VertexSet::empty(n); n];
        let mut edge_count = 0;
        for &(u, v) in edges {
            assert!(u < n && v < n, "edge endpoint out of range");
            if u == v || rows[u].contains(v) {
                continue;
            }
            rows[u].insert(v);
            rows[v].insert(u);
            edge_count += 1;
        }
        let degrees = rows.iter().map(|r| r.len()).collect();
        Graph { n, rows, degrees, edge_count }
    }

    pub fn empty(n: usize) -> Graph {
        Graph::from_edges(n, &[])
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges)
    }

    pub fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in a..a + b {
                edges.push((u, v));
            }
        }
        Graph::from_edges(a + b, &edges)
    }

    /// Outer 5-cycle 0..4, inner pentagram 5..9, spokes i-(i+5).
    pub fn petersen() -> Graph {
        let mut edges = vec![];
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, i + 5));
        }
        Graph::from_edges(10, &edges)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.rows[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    pub fn min_degree(&self) -> usize {
        self.degrees.iter().copied().min().unwrap_or(0)
    }

    pub fn degree_into(&self, v: usize, set: &VertexSet) -> usize {
        self.rows[v].intersection_len(set)
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.n {
            for v in self.rows[u].iter() {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        self.n <= 1 || self.edge_count == self.n * (self.n - 1) / 2
    }

    /// Edges with one end in `a` and one in `b` (sets assumed disjoint).
    pub fn edges_between(&self, a: &VertexSet, b: &VertexSet) -> usize {
        a.iter().map(|u| self.rows[u].intersection_len(b)).sum()
    }

    /// Minimum degree sum over nonadjacent distinct pairs.
    pub fn sigma2(&self) -> SigmaTwo {
        let mut best: Option<usize> = None;
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.rows[u].contains(v) {
                    let s = self.degrees[u] + self.degrees[v];
                    best = Some(best.map_or(s, |b| b.min(s)));
                }
            }
        }
        match best {
            Some(v) => SigmaTwo::Finite(v),
            None => SigmaTwo::Infinite,
        }
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.component_of(0, &self.vertices()).len() == self.n
    }

    /// Component of `start` within the induced subgraph on `allowed`.
    pub fn component_of(&self, start: usize, allowed: &VertexSet) -> VertexSet {
        let mut seen = VertexSet::empty(self.n);
        if !allowed.contains(start) {
            return seen;
        }
        seen.insert(start);
        let mut frontier = vec![start];
        while let Some(u) = frontier.pop() {
            let mut next = self.rows[u].intersection(allowed);
            next.subtract(&seen);
            for w in next.iter() {
                seen.insert(w);
                frontier.push(w);
            }
        }
        seen
    }

    /// Connected components of the induced subgraph on `allowed`.
    pub fn components(&self, allowed: &VertexSet) -> Vec<VertexSet> {
        let mut rest = allowed.clone();
        let mut out = Vec::new();
        while let Some(v) = rest.first() {
            let comp = self.component_of(v, &rest);
            rest.subtract(&comp);
            out.push(comp);
        }
        out
    }

    /// 2-connectivity via articulation-point search (n >= 3 required to
    /// be meaningfully 2-connected).
    pub fn is_two_connected(&self) -> bool {
        if self.n < 3 || !self.is_connected() {
            return false;
        }
        // Iterative Tarjan lowpoint.
        let n = self.n;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut parent = vec![usize::MAX; n];
        let mut timer = 0usize;
        let mut root_children = 0usize;
        let mut stack: Vec<(usize, Vec<usize>)> = vec![(0, self.rows[0].to_vec())];
        disc[0] = 0;
        low[0] = 0;
        timer += 1;
        while !stack.is_empty() {
            let (u, next) = {
                let top = stack.last_mut().unwrap();
                (top.0, top.1.pop())
            };
            match next {
                Some(v) if disc[v] == usize::MAX => {
                    parent[v] = u;
                    disc[v] = timer;
                    low[v] = timer;
                    timer += 1;
                    if u == 0 {
                        root_children += 1;
                    }
                    stack.push((v, self.rows[v].to_vec()));
                }
                Some(v) => {
                    if v != parent[u] {
                        low[u] = low[u].min(disc[v]);
                    }
                }
                None => {
                    stack.pop();
                    if let Some(&(p, _)) = stack.last() {
                        low[p] = low[p].min(low[u]);
                        if p != 0 && low[u] >= disc[p] {
                            return false; // p is a cut vertex
                        }
                    }
                }
            }
        }
        root_children <= 1
    }

    /// Subgraph induced on `keep`, with vertices renumbered by ascending
    /// id. Returns the mapping new -> old alongside.
    pub fn induced(&self, keep: &VertexSet) -> (Graph, Vec<usize>) {
        let old_ids = keep.to_vec();
        let mut index = vec![usize::MAX; self.n];
        for (new, &old) in old_ids.iter().enumerate() {
            index[old] = new;
        }
        let mut edges = Vec::new();
        for &u in &old_ids {
            for v in self.rows[u].intersection(keep).iter() {
                if v > u {
                    edges.push((index[u], index[v]));
                }
            }
        }
        (Graph::from_edges(old_ids.len(), &edges), old_ids)
    }

    /// Checks that `path` is a simple path in the graph (consecutive
    /// vertices adjacent, no repeats).
    pub fn is_path(&self, path: &[usize]) -> bool {
        let mut seen = VertexSet::empty(self.n);
        for &v in path {
            if v >= self.n || seen.contains(v) {
                return false;
            }
            seen.insert(v);
        }
        path.windows(2).all(|w| self.has_edge(w[0], w[1]))
    }

    /// Checks that `cycle` is a simple cycle (closing edge included).
    pub fn is_cycle(&self, cycle: &[usize]) -> bool {
        cycle.len() >= 3
            && self.is_path(cycle)
            && self.has_edge(cycle[cycle.len() - 1], cycle[0])
    }

    pub fn add_edges(&self, extra: &[(usize, usize)]) -> Graph {
        let mut edges = self.edges();
        edges.extend_from_slice(extra);
        Graph::from_edges(self.n, &edges)
    }

    pub fn complement(&self) -> Graph {
        let mut edges = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(self.n, &edges)
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.edge_count)
    }
}

// ======================================================================
// graph6 encoding
// ======================================================================

/// Parses a graph6 line: size word, then the upper triangle in column
/// order packed into 6-bit groups offset by 63.
pub fn parse_graph6(line: &str) -> Result<Graph, Error> {
    let bytes = line.trim().as_bytes();
    if bytes.is_empty() {
        return Err(Error::Graph6("empty line".into()));
    }
    let (n, mut pos) = if bytes[0] == 126 {
        if bytes.len() >= 2 && bytes[1] == 126 {
            if bytes.len() < 8 {
                return Err(Error::Graph6("truncated size word".into()));
            }
            let mut n = 0usize;
            for &b in &bytes[2..8] {
                n = (n << 6) | decode_byte(b)? as usize;
            }
            (n, 8)
        } else {
            if bytes.len() < 4 {
                return Err(Error::Graph6("truncated size word".into()));
            }
            let mut n = 0usize;
            for &b in &bytes[1..4] {
                n = (n << 6) | decode_byte(b)? as usize;
            }
            (n, 4)
        }
    } else {
        (decode_byte(bytes[0])? as usize, 1)
    };

    let bits_needed = n * n.saturating_sub(1) / 2;
    let bytes_needed = bits_needed.div_ceil(6);
    if bytes.len() - pos < bytes_needed {
        return Err(Error::Graph6(format!(
            "expected {} adjacency bytes, found {}",
            bytes_needed,
            bytes.len() - pos
        )));
    }

    let mut edges = Vec::new();
    let mut bit_idx = 0usize;
    let mut current = 0u8;
    let mut bits_left = 0u8;
    'outer: for col in 1..n {
        for row in 0..col {
            if bits_left == 0 {
                current = decode_byte(bytes[pos])?;
                pos += 1;
                bits_left = 6;
            }
            if current >> (bits_left - 1) & 1 == 1 {
                edges.push((row, col));
            }
            bits_left -= 1;
            bit_idx += 1;
            if bit_idx == bits_needed {
                break 'outer;
            }
        }
    }
    Ok(Graph::from_edges(n, &edges))
}

/// Encodes to graph6, bit-exact per the standard definition.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258047 {
        out.push(126);
        out.push(((n >> 12) & 63) as u8 + 63);
        out.push(((n >> 6) & 63) as u8 + 63);
        out.push((n & 63) as u8 + 63);
    } else {
        out.push(126);
        out.push(126);
        for shift in (0..36).step_by(6).rev() {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut nbits = 0u8;
    for col in 1..n {
        for row in 0..col {
            acc = (acc << 1) | (g.has_edge(row, col) as u8);
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        acc <<= 6 - nbits;
        out.push(acc + 63);
    }
    String::from_utf8(out).unwrap()
}

fn decode_byte(b: u8) -> Result<u8, Error> {
    if !(63..=126).contains(&b) {
        return Err(Error::Graph6(format!("byte {b} out of graph6 range")));
    }
    Ok(b - 63)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma2_examples() {
        assert_eq!(Graph::cycle(5).sigma2(), SigmaTwo::Finite(4));
        assert_eq!(Graph::complete(4).sigma2(), SigmaTwo::Infinite);
        // Brute-force oracle over all nonadjacent pairs.
        let p = Graph::petersen();
        let mut best = usize::MAX;
        for u in 0..10 {
            for v in u + 1..10 {
                if !p.has_edge(u, v) {
                    best = best.min(p.degree(u) + p.degree(v));
                }
            }
        }
        assert_eq!(best, 6);
        assert_eq!(p.sigma2(), SigmaTwo::Finite(6));
    }

    #[test]
    fn sigma2_pair_property() {
        // sigma2 <= d(u)+d(v) for every nonadjacent pair, with equality
        // achieved by some pair.
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 2)]);
        let s2 = g.sigma2().finite().unwrap();
        let mut hit = false;
        for u in 0..6 {
            for v in u + 1..6 {
                if !g.has_edge(u, v) {
                    assert!(s2 <= g.degree(u) + g.degree(v));
                    hit |= s2 == g.degree(u) + g.degree(v);
                }
            }
        }
        assert!(hit);
    }

    #[test]
    fn two_connected() {
        assert!(Graph::cycle(5).is_two_connected());
        assert!(!Graph::path(4).is_two_connected());
        assert!(Graph::petersen().is_two_connected());
        assert!(!Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).is_two_connected());
    }

    #[test]
    fn graph6_roundtrip_known() {
        // C5 encodes as "DUW" per the standard format.
        let c5 = Graph::cycle(5);
        let enc = to_graph6(&c5);
        let back = parse_graph6(&enc).unwrap();
        assert_eq!(back, c5);
        // K4 is "C~".
        assert_eq!(to_graph6(&Graph::complete(4)), "C~");
        assert_eq!(parse_graph6("C~").unwrap(), Graph::complete(4));
    }

    #[test]
    fn graph6_large_n() {
        let g = Graph::cycle(100);
        let enc = to_graph6(&g);
        assert!(enc.starts_with('~'));
        assert_eq!(parse_graph6(&enc).unwrap(), g);
    }

    #[test]
    fn graph6_rejects_garbage() {
        assert!(parse_graph6("").is_err());
        assert!(parse_graph6("D").is_err()); // missing adjacency bytes
        assert!(parse_graph6("D\u{7f}ab").is_err());
    }

    #[test]
    fn induced_subgraph() {
        let g = Graph::petersen();
        let keep = VertexSet::from_iter(10, [0, 1, 2, 5, 6]);
        let (h, ids) = g.induced(&keep);
        assert_eq!(h.n(), 5);
        for u in 0..5 {
            for v in 0..5 {
                assert_eq!(h.has_edge(u, v), g.has_edge(ids[u], ids[v]));
            }
        }
    }
}
