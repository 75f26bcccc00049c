//! Isomorph-free generation of trees, forests and small graphs.
//!
//! * Free trees come from the successor rule on canonical level sequences
//!   (each tree rooted at its center), which emits every unlabelled tree
//!   exactly once without a dedup table.
//! * Forests are multisets of trees, one per integer partition of the order.
//! * General graphs grow one vertex at a time: every class on `n` vertices is
//!   some class on `n - 1` vertices plus a new vertex joined to a subset of
//!   the old ones, and the candidates are deduplicated by canonical code.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canonical::canonical_graph;
use crate::graph::{bit, Graph};
use crate::limits::{self, ALL_GRAPHS_CAP, FOREST_CAP, TREE_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("{family} generation supports orders {min}..={max}, got {n}")]
    OrderOutOfRange {
        family: Family,
        n: usize,
        min: usize,
        max: usize,
    },
    #[error("bounded_degree_graphs needs a maximum degree")]
    MissingDelta,
    #[error("a maximum degree only applies to bounded_degree_graphs")]
    UnexpectedDelta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Trees,
    Forests,
    AllGraphs,
    ConnectedGraphs,
    BoundedDegreeGraphs,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Trees => "trees",
            Family::Forests => "forests",
            Family::AllGraphs => "all_graphs",
            Family::ConnectedGraphs => "connected_graphs",
            Family::BoundedDegreeGraphs => "bounded_degree_graphs",
        })
    }
}

impl Family {
    /// Smallest and largest supported order, after `SIGMA_MAX_N`.
    pub fn order_range(self) -> (usize, usize) {
        match self {
            Family::Trees => (1, limits::capped(TREE_CAP)),
            Family::Forests => (1, limits::capped(FOREST_CAP)),
            Family::AllGraphs | Family::ConnectedGraphs | Family::BoundedDegreeGraphs => {
                (0, limits::capped(ALL_GRAPHS_CAP))
            }
        }
    }

    fn check(self, n: usize) -> Result<(), EnumerateError> {
        let (min, max) = self.order_range();
        if n < min || n > max {
            return Err(EnumerateError::OrderOutOfRange {
                family: self,
                n,
                min,
                max,
            });
        }
        Ok(())
    }
}

/// A universe of graphs: family, order, and (for bounded degree) the exact maximum degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassSpec {
    pub family: Family,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub delta: Option<usize>,
}

impl ClassSpec {
    pub fn new(family: Family, n: usize) -> Self {
        ClassSpec {
            family,
            n,
            delta: None,
        }
    }

    pub fn bounded_degree(n: usize, delta: usize) -> Self {
        ClassSpec {
            family: Family::BoundedDegreeGraphs,
            n,
            delta: Some(delta),
        }
    }

    pub fn validate(&self) -> Result<(), EnumerateError> {
        match (self.family, self.delta) {
            (Family::BoundedDegreeGraphs, None) => return Err(EnumerateError::MissingDelta),
            (Family::BoundedDegreeGraphs, Some(_)) => {}
            (_, Some(_)) => return Err(EnumerateError::UnexpectedDelta),
            _ => {}
        }
        self.family.check(self.n)
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} n={}", self.family, self.n)?;
        if let Some(d) = self.delta {
            write!(f, " delta={d}")?;
        }
        Ok(())
    }
}

pub type GraphStream = Box<dyn Iterator<Item = Graph> + Send>;

/// Stream for any class.
pub fn gen_class(spec: &ClassSpec) -> Result<GraphStream, EnumerateError> {
    spec.validate()?;
    Ok(match spec.family {
        Family::Trees => Box::new(gen_trees(spec.n)?),
        Family::Forests => Box::new(gen_forests(spec.n)?),
        Family::AllGraphs => Box::new(gen_graphs(spec.n, false, None)?),
        Family::ConnectedGraphs => Box::new(gen_graphs(spec.n, true, None)?),
        Family::BoundedDegreeGraphs => Box::new(gen_graphs(spec.n, false, spec.delta)?),
    })
}

// ---------------------------------------------------------------------------
// trees

/// Free trees of order `n`, one per isomorphism class.
pub fn gen_trees(n: usize) -> Result<TreeGen, EnumerateError> {
    Family::Trees.check(n)?;
    let state = match n {
        1 | 2 => TreeState::Single(Some(Graph::path(n))),
        _ => {
            // path rooted at its center
            let mut layout: Vec<usize> = (0..=n / 2).collect();
            layout.extend(1..n.div_ceil(2));
            TreeState::Levels(Some(layout))
        }
    };
    Ok(TreeGen { state })
}

#[derive(Debug, Clone)]
pub struct TreeGen {
    state: TreeState,
}

#[derive(Debug, Clone)]
enum TreeState {
    Single(Option<Graph>),
    Levels(Option<Vec<usize>>),
}

impl Iterator for TreeGen {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        match &mut self.state {
            TreeState::Single(g) => g.take(),
            TreeState::Levels(layout) => {
                let current = next_free_tree(layout.take()?)?;
                *layout = next_rooted_tree(&current, None);
                Some(layout_to_graph(&current))
            }
        }
    }
}

/// Splits a level sequence into the first subtree of the root (levels shifted
/// up by one) and the remainder (root included).
fn split_tree(layout: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let m = layout
        .iter()
        .enumerate()
        .skip(2)
        .find(|&(_, &d)| d == 1)
        .map_or(layout.len(), |(i, _)| i);
    let left = layout[1..m].iter().map(|d| d - 1).collect();
    let mut rest = vec![0];
    rest.extend_from_slice(&layout[m..]);
    (left, rest)
}

/// A level sequence is the canonical representative of a free tree when the
/// first root subtree is no taller than the rest, and on equal height no
/// larger, and on equal size not lexicographically after it.
fn is_free_canonical(left: &[usize], rest: &[usize]) -> bool {
    let lh = left.iter().copied().max().unwrap_or(0);
    let rh = rest.iter().copied().max().unwrap_or(0);
    if rh < lh {
        return false;
    }
    if rh == lh {
        if left.len() > rest.len() {
            return false;
        }
        if left.len() == rest.len() && left > rest {
            return false;
        }
    }
    true
}

/// First canonical free-tree sequence at or after `candidate`.
fn next_free_tree(mut candidate: Vec<usize>) -> Option<Vec<usize>> {
    loop {
        let (left, rest) = split_tree(&candidate);
        if is_free_canonical(&left, &rest) {
            return Some(candidate);
        }
        let p = left.len();
        let mut jumped = next_rooted_tree(&candidate, Some(p))?;
        if candidate[p] > 2 {
            let (new_left, _) = split_tree(&jumped);
            let height = new_left.iter().copied().max().unwrap_or(0);
            let len = jumped.len();
            for (k, slot) in jumped[len - (height + 1)..].iter_mut().enumerate() {
                *slot = k + 1;
            }
        }
        candidate = jumped;
    }
}

/// Successor of a rooted level sequence, optionally forcing the position to bump.
fn next_rooted_tree(prev: &[usize], p: Option<usize>) -> Option<Vec<usize>> {
    let p = match p {
        Some(p) => p,
        None => {
            let mut p = prev.len() - 1;
            while prev[p] == 1 {
                p -= 1;
            }
            p
        }
    };
    if p == 0 {
        return None;
    }
    let mut q = p - 1;
    while prev[q] != prev[p] - 1 {
        q -= 1;
    }
    let mut next = prev.to_vec();
    for i in p..next.len() {
        next[i] = next[i - p + q];
    }
    Some(next)
}

fn layout_to_graph(layout: &[usize]) -> Graph {
    let n = layout.len();
    let mut adj = vec![0u64; n];
    let mut last_at_depth = vec![0usize; n];
    for (v, &depth) in layout.iter().enumerate().skip(1) {
        let parent = last_at_depth[depth - 1];
        adj[v] |= bit(parent);
        adj[parent] |= bit(v);
        last_at_depth[depth] = v;
    }
    Graph::from_rows_unchecked(adj)
}

// ---------------------------------------------------------------------------
// forests

/// Forests of order `n`, one per isomorphism class. Components are laid out
/// largest first in consecutive vertex blocks.
pub fn gen_forests(n: usize) -> Result<ForestGen, EnumerateError> {
    Family::Forests.check(n)?;
    let trees: Vec<Vec<Graph>> = (0..=n)
        .map(|s| {
            if s == 0 {
                Vec::new()
            } else {
                gen_trees(s).expect("sizes within tree cap").collect()
            }
        })
        .collect();
    let mut plans = Vec::new();
    for partition in partitions(n) {
        plan_partition(&partition, &trees, &mut plans);
    }
    Ok(ForestGen {
        trees,
        plans: plans.into_iter(),
    })
}

pub struct ForestGen {
    trees: Vec<Vec<Graph>>,
    plans: std::vec::IntoIter<Vec<(usize, usize)>>,
}

impl Iterator for ForestGen {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        let plan = self.plans.next()?;
        let mut forest = Graph::null();
        for (size, index) in plan {
            forest = forest
                .disjoint_union(&self.trees[size][index])
                .expect("forest order within cap");
        }
        Some(forest)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.plans.size_hint()
    }
}

/// Integer partitions of `n` as non-increasing part lists, `[n]` first.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=max_part.min(rest)).rev() {
            prefix.push(part);
            go(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Non-decreasing index sequences of length `k` over `0..m` (multisets).
pub fn multisets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, k: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for i in start..m {
            prefix.push(i);
            go(i, m, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, k, &mut Vec::new(), &mut out);
    out
}

fn plan_partition(partition: &[usize], trees: &[Vec<Graph>], out: &mut Vec<Vec<(usize, usize)>>) {
    let mut groups: Vec<(usize, usize)> = Vec::new();
    for &part in partition {
        match groups.last_mut() {
            Some((size, count)) if *size == part => *count += 1,
            _ => groups.push((part, 1)),
        }
    }
    let mut acc: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    for (size, count) in groups {
        let choices = multisets(trees[size].len(), count);
        let mut next = Vec::with_capacity(acc.len() * choices.len());
        for prefix in &acc {
            for choice in &choices {
                let mut plan = prefix.clone();
                plan.extend(choice.iter().map(|&i| (size, i)));
                next.push(plan);
            }
        }
        acc = next;
    }
    out.extend(acc);
}

// ---------------------------------------------------------------------------
// general graphs

/// Graphs of order `n`, one per isomorphism class, optionally restricted to
/// connected graphs and/or to maximum degree exactly `delta`. Emitted graphs
/// carry their canonical labelling.
pub fn gen_graphs(
    n: usize,
    connected_only: bool,
    delta: Option<usize>,
) -> Result<GraphGen, EnumerateError> {
    Family::AllGraphs.check(n)?;
    let mut level = vec![Graph::null()];
    for k in 1..n {
        level = GraphGen::extend(level, k, false, None).collect();
    }
    Ok(GraphGen::extend(level, n, connected_only, delta))
}

pub struct GraphGen {
    parents: Vec<Graph>,
    parent: usize,
    attach: u64,
    order: usize,
    seen: HashSet<u64>,
    connected_only: bool,
    delta: Option<usize>,
}

impl GraphGen {
    fn extend(
        parents: Vec<Graph>,
        order: usize,
        connected_only: bool,
        delta: Option<usize>,
    ) -> Self {
        GraphGen {
            parents,
            parent: 0,
            attach: 0,
            order,
            seen: HashSet::new(),
            connected_only,
            delta,
        }
    }

    fn accepts(&self, g: &Graph) -> bool {
        (!self.connected_only || g.is_connected()) && self.delta.is_none_or(|d| g.max_degree() == d)
    }
}

impl Iterator for GraphGen {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.order == 0 {
            // the null graph has no parent to extend
            if self.parents.is_empty() {
                return None;
            }
            self.parents.clear();
            let g = Graph::null();
            return self.accepts(&g).then_some(g);
        }
        let attach_limit = 1u64 << (self.order - 1);
        while self.parent < self.parents.len() {
            let attach = self.attach;
            let base = &self.parents[self.parent];
            self.attach += 1;
            if self.attach == attach_limit {
                self.attach = 0;
                self.parent += 1;
            }
            let mut rows = base.rows().to_vec();
            rows.push(0);
            let new = self.order - 1;
            for (v, row) in rows.iter_mut().enumerate().take(new) {
                if attach & bit(v) != 0 {
                    *row |= bit(new);
                }
            }
            rows[new] = attach;
            let candidate = Graph::from_rows_unchecked(rows);
            let (code, canon) = canonical_graph(&candidate).expect("order within canonical cap");
            if self.seen.insert(code.code) && self.accepts(&canon) {
                return Some(canon);
            }
        }
        None
    }
}
