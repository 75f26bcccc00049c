//! Exact canonical forms for small graphs.
//!
//! The search is individualization/refinement without automorphism pruning
//! beyond twin vertices: an ordered partition is refined by neighbor counts
//! until stable, the first non-singleton cell is split by individualizing
//! each of its vertices in turn, and every discrete leaf yields a labelling.
//! The code is the smallest upper-triangle adjacency string over all leaves.
//! Refinement and cell selection commute with relabelling, so the leaf set,
//! and hence the minimum, is an isomorphism invariant.

use std::fmt;

use thiserror::Error;

use crate::graph::{bit, mask_iter, Graph};
use crate::limits::{self, CANONICAL_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonicalError {
    #[error("canonical form supports orders up to {cap}, got {n}")]
    OrderAboveCap { n: usize, cap: usize },
}

/// Isomorphism-class key: equal codes iff isomorphic graphs (for orders within the cap).
///
/// `code` holds the pairs `(i, j)`, `i < j`, row-major, first pair in the most
/// significant position, so integer order is lexicographic order on bit-strings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode {
    pub n: usize,
    pub code: u64,
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{:x}", self.n, self.code)
    }
}

/// Upper-triangle code of `g` under the labelling that puts `order[i]` at position `i`.
pub fn code_under_order(g: &Graph, order: &[usize]) -> u64 {
    let rows = g.rows();
    let mut code = 0u64;
    for i in 0..order.len() {
        let row = rows[order[i]];
        for &w in &order[i + 1..] {
            code = (code << 1) | ((row >> w) & 1);
        }
    }
    code
}

pub fn canonical_code(g: &Graph) -> Result<CanonicalCode, CanonicalError> {
    canonical_labelling(g).map(|(code, _)| code)
}

/// The canonical relabelling of `g`: isomorphic inputs give identical outputs.
pub fn canonical_graph(g: &Graph) -> Result<(CanonicalCode, Graph), CanonicalError> {
    let (code, order) = canonical_labelling(g)?;
    let mut perm = vec![0; order.len()];
    for (pos, &v) in order.iter().enumerate() {
        perm[v] = pos;
    }
    Ok((code, g.permute(&perm)))
}

/// Canonical code plus the vertex order (position -> original vertex) that realizes it.
pub fn canonical_labelling(g: &Graph) -> Result<(CanonicalCode, Vec<usize>), CanonicalError> {
    let n = g.order();
    let cap = limits::capped(CANONICAL_CAP);
    if n > cap {
        return Err(CanonicalError::OrderAboveCap { n, cap });
    }
    if n == 0 {
        return Ok((CanonicalCode { n, code: 0 }, Vec::new()));
    }
    let mut search = Search { g, best: None };
    search.descend(vec![crate::graph::full_mask(n)]);
    let (code, order) = search.best.expect("search reaches at least one leaf");
    Ok((CanonicalCode { n, code }, order))
}

struct Search<'a> {
    g: &'a Graph,
    best: Option<(u64, Vec<usize>)>,
}

impl Search<'_> {
    fn descend(&mut self, mut cells: Vec<u64>) {
        refine(self.g.rows(), &mut cells);
        let Some(target) = cells.iter().position(|c| c.count_ones() > 1) else {
            let order: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
            let code = code_under_order(self.g, &order);
            if self.best.as_ref().is_none_or(|(b, _)| code < *b) {
                self.best = Some((code, order));
            }
            return;
        };
        let cell = cells[target];
        let rows = self.g.rows();
        let mut tried: Vec<usize> = Vec::new();
        for v in mask_iter(cell) {
            // swapping twins is an automorphism fixing every individualized vertex
            if tried.iter().any(|&r| are_twins(rows, r, v)) {
                continue;
            }
            tried.push(v);
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..target]);
            next.push(bit(v));
            next.push(cell & !bit(v));
            next.extend_from_slice(&cells[target + 1..]);
            self.descend(next);
        }
    }
}

fn are_twins(rows: &[u64], u: usize, v: usize) -> bool {
    (rows[u] ^ rows[v]) & !(bit(u) | bit(v)) == 0
}

/// Splits cells by the vector of neighbor counts into every current cell,
/// repeating until no cell splits. New cells keep the parent's position and are
/// ordered by their count vectors.
fn refine(rows: &[u64], cells: &mut Vec<u64>) {
    loop {
        let mut next = Vec::with_capacity(rows.len());
        let mut split = false;
        for &cell in cells.iter() {
            if cell.count_ones() == 1 {
                next.push(cell);
                continue;
            }
            let mut keyed: Vec<(Vec<u8>, usize)> = mask_iter(cell)
                .map(|v| {
                    let counts = cells
                        .iter()
                        .map(|&c| (rows[v] & c).count_ones() as u8)
                        .collect();
                    (counts, v)
                })
                .collect();
            keyed.sort_unstable();
            let mut group = 0u64;
            for (i, (key, v)) in keyed.iter().enumerate() {
                if i > 0 && *key != keyed[i - 1].0 {
                    next.push(group);
                    group = 0;
                    split = true;
                }
                group |= bit(*v);
            }
            next.push(group);
        }
        *cells = next;
        if !split {
            return;
        }
    }
}
