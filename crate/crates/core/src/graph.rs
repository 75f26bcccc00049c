//! Immutable simple graphs on at most 64 vertices, stored as adjacency bitmasks.
//!
//! Every vertex subset is a single `u64`, which keeps induced subgraphs and
//! neighborhood arithmetic to a handful of bit operations and lets the counting
//! engine memoize on the surviving-vertex mask directly.

use std::fmt;

use thiserror::Error;

use crate::limits;

/// Largest order a [`Graph`] can hold (one machine word per adjacency row).
pub const MAX_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("vertex {vertex} out of range for a graph of order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("order {n} exceeds the supported maximum of {cap}")]
    OrderTooLarge { n: usize, cap: usize },
    #[error("cannot place {t} disjoint edges on {n} vertices")]
    InvalidMatching { n: usize, t: usize },
    #[error("named family {0} requires a count parameter")]
    MissingCount(&'static str),
}

#[inline]
pub(crate) const fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Mask with the lowest `n` bits set.
#[inline]
pub const fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A set of vertices of some host graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexMask(pub u64);

impl VertexMask {
    pub const EMPTY: VertexMask = VertexMask(0);

    pub fn all(n: usize) -> Self {
        VertexMask(full_mask(n))
    }

    pub fn singleton(v: usize) -> Self {
        VertexMask(bit(v))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 & bit(v) != 0
    }

    pub fn union(self, other: VertexMask) -> VertexMask {
        VertexMask(self.0 | other.0)
    }

    pub fn minus(self, other: VertexMask) -> VertexMask {
        VertexMask(self.0 & !other.0)
    }

    pub fn iter(self) -> MaskIter {
        MaskIter(self.0)
    }
}

impl fmt::Display for VertexMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// Iterates the set bits of a mask in increasing order.
#[derive(Debug, Clone)]
pub struct MaskIter(u64);

impl Iterator for MaskIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for MaskIter {}

pub(crate) fn mask_iter(bits: u64) -> MaskIter {
    MaskIter(bits)
}

/// Graphs of named families, in the fixed labelling used throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Vertex 0 is the center.
    Star,
    /// Vertices in index order.
    Path,
    Complete,
    Empty,
    /// `t` disjoint edges `(2i, 2i+1)` followed by isolated vertices.
    MatchingPlusIsolated,
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Family::Star => "star",
            Family::Path => "path",
            Family::Complete => "complete",
            Family::Empty => "empty",
            Family::MatchingPlusIsolated => "matching_plus_isolated",
        }
    }
}

/// Simple undirected graph; `adj[v]` is the open neighborhood of `v`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Graph {
    /// The graph with no vertices.
    pub fn null() -> Self {
        Graph {
            n: 0,
            adj: Vec::new(),
        }
    }

    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        check_order(n)?;
        Ok(Graph { n, adj: vec![0; n] })
    }

    /// Builds a graph from an edge list. Duplicate edges (in either orientation) collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        check_order(n)?;
        let mut adj = vec![0u64; n];
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::Loop(u));
            }
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            adj[u] |= bit(v);
            adj[v] |= bit(u);
        }
        Ok(Graph { n, adj })
    }

    /// Builds a graph from adjacency rows, validating symmetry, loops and range.
    pub fn from_adjacency(adj: Vec<u64>) -> Result<Self, GraphError> {
        let n = adj.len();
        check_order(n)?;
        let valid = full_mask(n);
        for (v, &row) in adj.iter().enumerate() {
            if row & bit(v) != 0 {
                return Err(GraphError::Loop(v));
            }
            if row & !valid != 0 {
                let vertex = (row & !valid).trailing_zeros() as usize;
                return Err(GraphError::VertexOutOfRange { vertex, n });
            }
            for u in mask_iter(row) {
                if adj[u] & bit(v) == 0 {
                    return Err(GraphError::VertexOutOfRange { vertex: u, n });
                }
            }
        }
        Ok(Graph { n, adj })
    }

    /// Trusted constructor for rows already known to be symmetric and loop-free.
    pub(crate) fn from_rows_unchecked(adj: Vec<u64>) -> Self {
        debug_assert!(adj.len() <= MAX_ORDER);
        debug_assert!(adj
            .iter()
            .enumerate()
            .all(|(v, &r)| r & bit(v) == 0 && mask_iter(r).all(|u| adj[u] & bit(v) != 0)));
        Graph { n: adj.len(), adj }
    }

    pub fn named(family: Family, n: usize, t: Option<usize>) -> Result<Self, GraphError> {
        check_order(n)?;
        let mut edges = Vec::new();
        match family {
            Family::Star => edges.extend((1..n).map(|v| (0, v))),
            Family::Path => edges.extend((1..n).map(|v| (v - 1, v))),
            Family::Complete => {
                for v in 0..n {
                    edges.extend((v + 1..n).map(|u| (v, u)));
                }
            }
            Family::Empty => {}
            Family::MatchingPlusIsolated => {
                let t = t.ok_or(GraphError::MissingCount(family.name()))?;
                if 2 * t > n {
                    return Err(GraphError::InvalidMatching { n, t });
                }
                edges.extend((0..t).map(|i| (2 * i, 2 * i + 1)));
            }
        }
        Graph::from_edges(n, &edges)
    }

    pub fn star(n: usize) -> Self {
        Graph::named(Family::Star, n, None).expect("star order within cap")
    }

    pub fn path(n: usize) -> Self {
        Graph::named(Family::Path, n, None).expect("path order within cap")
    }

    pub fn complete(n: usize) -> Self {
        Graph::named(Family::Complete, n, None).expect("complete order within cap")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    pub fn vertices(&self) -> VertexMask {
        VertexMask::all(self.n)
    }

    pub fn neighbors(&self, v: usize) -> VertexMask {
        VertexMask(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & bit(v) != 0
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for u in 0..self.n {
            out.extend(mask_iter(self.adj[u] & !full_mask(u + 1)).map(|v| (u, v)));
        }
        out
    }

    /// `N[v]`.
    pub fn closed_neighborhood(&self, v: usize) -> Result<VertexMask, GraphError> {
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        Ok(VertexMask(self.adj[v] | bit(v)))
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn is_edgeless(&self) -> bool {
        self.adj.iter().all(|&r| r == 0)
    }

    /// Subgraph induced by `keep`, relabelled `0..|keep|` in increasing original index.
    pub fn induced_subgraph(&self, keep: VertexMask) -> Graph {
        let keep = keep.0 & full_mask(self.n);
        let kept: Vec<usize> = mask_iter(keep).collect();
        let mut index = [0usize; MAX_ORDER];
        for (i, &v) in kept.iter().enumerate() {
            index[v] = i;
        }
        let adj = kept
            .iter()
            .map(|&v| mask_iter(self.adj[v] & keep).fold(0u64, |acc, u| acc | bit(index[u])))
            .collect();
        Graph::from_rows_unchecked(adj)
    }

    /// `G - S`.
    pub fn remove(&self, removed: VertexMask) -> Graph {
        self.induced_subgraph(self.vertices().minus(removed))
    }

    /// Vertex set of the component containing `start`, restricted to `within`.
    pub(crate) fn component_of(&self, start: usize, within: u64) -> u64 {
        let mut seen = bit(start);
        let mut frontier = bit(start);
        while frontier != 0 {
            let mut next = 0;
            for v in mask_iter(frontier) {
                next |= self.adj[v];
            }
            next &= within & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Connected components ordered by their smallest vertex.
    pub fn connected_components(&self) -> Vec<VertexMask> {
        let mut rest = full_mask(self.n);
        let mut out = Vec::new();
        while rest != 0 {
            let start = rest.trailing_zeros() as usize;
            let comp = self.component_of(start, rest);
            out.push(VertexMask(comp));
            rest &= !comp;
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.component_of(0, full_mask(self.n)) == full_mask(self.n)
    }

    /// Acyclic: every component with `k` vertices has `k - 1` edges.
    pub fn is_forest(&self) -> bool {
        self.size() + self.connected_components().len() == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.is_connected() && self.size() + 1 == self.n
    }

    /// Vertices of degree one.
    pub fn leaves(&self) -> VertexMask {
        VertexMask(
            (0..self.n)
                .filter(|&v| self.degree(v) == 1)
                .fold(0, |acc, v| acc | bit(v)),
        )
    }

    /// Relabels vertex `v` to `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(
            perm.len(),
            self.n,
            "permutation length must equal the order"
        );
        let mut adj = vec![0u64; self.n];
        for v in 0..self.n {
            adj[perm[v]] = mask_iter(self.adj[v]).fold(0, |acc, u| acc | bit(perm[u]));
        }
        Graph::from_rows_unchecked(adj)
    }

    /// Disjoint union; vertices of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.n + other.n;
        check_order(n)?;
        let shift = self.n;
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|&r| r << shift));
        Ok(Graph::from_rows_unchecked(adj))
    }

    /// Adds `k` isolated vertices at the end.
    pub fn with_isolated(&self, k: usize) -> Result<Graph, GraphError> {
        self.disjoint_union(&Graph::empty(k)?)
    }

    /// Copy of the graph without the edge `uv` (no-op if absent).
    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let mut adj = self.adj.clone();
        if u < self.n && v < self.n {
            adj[u] &= !bit(v);
            adj[v] &= !bit(u);
        }
        Graph::from_rows_unchecked(adj)
    }

    /// Drops isolated vertices.
    pub fn strip_isolated(&self) -> Graph {
        let keep = (0..self.n)
            .filter(|&v| self.adj[v] != 0)
            .fold(0, |acc, v| acc | bit(v));
        self.induced_subgraph(VertexMask(keep))
    }
}

fn check_order(n: usize) -> Result<(), GraphError> {
    let cap = limits::capped(MAX_ORDER);
    if n > cap {
        return Err(GraphError::OrderTooLarge { n, cap });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mask(vs: &[usize]) -> VertexMask {
        VertexMask(vs.iter().fold(0, |acc, &v| acc | bit(v)))
    }

    #[test]
    fn make_graph_examples() {
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(k2.rows(), &[0b10, 0b01]);

        let e3 = Graph::from_edges(3, &[]).unwrap();
        assert!(e3.rows().iter().all(|&r| r == 0));

        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(p4, Graph::path(4));
        assert_eq!(p4.edges(), vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn make_graph_dedups_and_rejects() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.size(), 1);
        assert_eq!(Graph::from_edges(3, &[(1, 1)]), Err(GraphError::Loop(1)));
        assert_eq!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert!(matches!(
            Graph::empty(65),
            Err(GraphError::OrderTooLarge { .. })
        ));
    }

    #[test]
    fn from_adjacency_validates() {
        assert!(Graph::from_adjacency(vec![0b10, 0b01]).is_ok());
        assert!(Graph::from_adjacency(vec![0b10, 0b00]).is_err());
        assert_eq!(Graph::from_adjacency(vec![0b1]), Err(GraphError::Loop(0)));
        assert!(Graph::from_adjacency(vec![0b100, 0]).is_err());
    }

    #[test]
    fn named_families() {
        let s4 = Graph::named(Family::Star, 4, None).unwrap();
        assert_eq!(s4.neighbors(0), mask(&[1, 2, 3]));
        assert_eq!(s4.size(), 3);

        let m = Graph::named(Family::MatchingPlusIsolated, 5, Some(2)).unwrap();
        assert_eq!(m.edges(), vec![(0, 1), (2, 3)]);
        assert_eq!(m.degree(4), 0);

        let e0 = Graph::named(Family::Empty, 0, None).unwrap();
        assert_eq!(e0.order(), 0);

        assert_eq!(
            Graph::named(Family::MatchingPlusIsolated, 3, Some(2)),
            Err(GraphError::InvalidMatching { n: 3, t: 2 })
        );
        assert!(Graph::named(Family::MatchingPlusIsolated, 3, None).is_err());
        assert_eq!(Graph::complete(4).size(), 6);
    }

    #[test]
    fn induced_subgraph_examples() {
        let p4 = Graph::path(4);
        assert_eq!(p4.induced_subgraph(mask(&[0, 1, 2])), Graph::path(3));

        let s4 = Graph::star(4);
        assert_eq!(
            s4.induced_subgraph(mask(&[1, 2, 3])),
            Graph::empty(3).unwrap()
        );

        let n1 = p4.closed_neighborhood(1).unwrap();
        let rest = p4.remove(n1);
        assert_eq!(rest, Graph::empty(1).unwrap());

        assert_eq!(p4.induced_subgraph(VertexMask::EMPTY), Graph::null());
        assert_eq!(p4.induced_subgraph(p4.vertices()), p4);
    }

    #[test]
    fn induced_subgraph_relabels_compactly() {
        // C5 minus vertex 2 is the path 3-4-0-1, relabelled as 0-1, 2-3, 3-0
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let h = c5.induced_subgraph(mask(&[0, 1, 3, 4]));
        assert_eq!(h.edges(), vec![(0, 1), (0, 3), (2, 3)]);
    }

    #[test]
    fn closed_neighborhood_examples() {
        assert_eq!(
            Graph::path(2).closed_neighborhood(0).unwrap(),
            mask(&[0, 1])
        );
        assert_eq!(
            Graph::empty(3).unwrap().closed_neighborhood(1).unwrap(),
            mask(&[1])
        );
        assert_eq!(
            Graph::star(4).closed_neighborhood(0).unwrap(),
            VertexMask::all(4)
        );
        assert!(Graph::path(2).closed_neighborhood(2).is_err());
    }

    #[test]
    fn components_examples() {
        let two_k2 = Graph::named(Family::MatchingPlusIsolated, 4, Some(2)).unwrap();
        assert_eq!(
            two_k2.connected_components(),
            vec![mask(&[0, 1]), mask(&[2, 3])]
        );
        assert_eq!(
            Graph::path(4).connected_components(),
            vec![VertexMask::all(4)]
        );
        let g = Graph::from_edges(4, &[(0, 1)]).unwrap();
        assert_eq!(
            g.connected_components(),
            vec![mask(&[0, 1]), mask(&[2]), mask(&[3])]
        );
        assert!(Graph::null().connected_components().is_empty());
    }

    #[test]
    fn max_degree_examples() {
        assert_eq!(Graph::star(5).max_degree(), 4);
        assert_eq!(Graph::empty(3).unwrap().max_degree(), 0);
        assert_eq!(Graph::path(4).max_degree(), 2);
        assert_eq!(Graph::null().max_degree(), 0);
    }

    #[test]
    fn forest_predicates() {
        assert!(Graph::path(5).is_tree());
        assert!(Graph::empty(3).unwrap().is_forest());
        assert!(!Graph::empty(3).unwrap().is_tree());
        assert!(!Graph::complete(3).is_forest());
        assert!(Graph::null().is_forest());
        assert_eq!(Graph::path(4).leaves(), mask(&[0, 3]));
    }

    #[test]
    fn union_and_edge_removal() {
        let g = Graph::path(2).disjoint_union(&Graph::path(2)).unwrap();
        assert_eq!(
            g,
            Graph::named(Family::MatchingPlusIsolated, 4, Some(2)).unwrap()
        );
        assert_eq!(Graph::path(4).without_edge(1, 2), g);
        assert_eq!(g.with_isolated(2).unwrap().order(), 6);
        assert_eq!(g.with_isolated(2).unwrap().strip_isolated(), g);
    }

    #[test]
    fn permute_preserves_structure() {
        let p3 = Graph::path(3);
        let q = p3.permute(&[1, 0, 2]);
        assert_eq!(q.edges(), vec![(0, 1), (0, 2)]);
        assert_eq!(q.max_degree(), 2);
    }
}
