//! Exact counts of independent (σ₀) and 1-nearly independent (σ₁) vertex subsets.
//!
//! Three independent routes are provided and checked against each other in the
//! test suites:
//!
//! * [`sigma_distribution_bruteforce`] walks all `2^n` subsets in Gray-code
//!   order and histograms the induced edge counts.
//! * [`sigma01_recursive`] applies the vertex-deletion recursion
//!   `σ₀(G) = σ₀(G−v) + σ₀(G−N[v])`,
//!   `σ₁(G) = σ₁(G−v) + σ₁(G−N[v]) + Σ_{u∈N(v)} σ₀(G−N[v]−N[u])`,
//!   memoized on the surviving-vertex mask.
//! * [`sigma01_tree_dp`] is a rooted dynamic program valid for forests.
//!
//! [`sigma01`] splits a graph into components, routes each to the cheapest
//! exact route and multiplies the results together with [`combine_union`].

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::graph::{bit, full_mask, mask_iter, Graph, VertexMask};
use crate::limits::{self, ORACLE_CAP};
use crate::rational::ExactRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SigmaError {
    #[error("subset enumeration supports orders up to {cap}, got {n}")]
    OracleCap { n: usize, cap: usize },
    #[error("tree dynamic program needs an acyclic graph")]
    Cyclic,
    #[error("star order must be at least 1")]
    EmptyStar,
}

/// Exact `(σ₀, σ₁)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SigmaPair {
    #[serde(serialize_with = "crate::report::biguint_as_string")]
    pub sigma0: BigUint,
    #[serde(serialize_with = "crate::report::biguint_as_string")]
    pub sigma1: BigUint,
}

impl SigmaPair {
    pub fn new(sigma0: impl Into<BigUint>, sigma1: impl Into<BigUint>) -> Self {
        SigmaPair {
            sigma0: sigma0.into(),
            sigma1: sigma1.into(),
        }
    }

    /// Counts for the order-0 graph: only the empty subset.
    pub fn unit() -> Self {
        SigmaPair::new(1u32, 0u32)
    }

    /// Counts for `m` isolated vertices.
    pub fn edgeless(m: usize) -> Self {
        SigmaPair {
            sigma0: BigUint::one() << m,
            sigma1: BigUint::zero(),
        }
    }

    /// `Q = σ₁ / σ₀`, normalized.
    pub fn q(&self) -> ExactRational {
        ExactRational::from_counts(&self.sigma1, &self.sigma0)
    }
}

/// `counts[k]` = number of vertex subsets inducing exactly `k` edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SigmaDistribution {
    #[serde(serialize_with = "crate::report::biguints_as_strings")]
    pub counts: Vec<BigUint>,
}

impl SigmaDistribution {
    pub fn sigma(&self, k: usize) -> BigUint {
        self.counts.get(k).cloned().unwrap_or_default()
    }

    pub fn pair(&self) -> SigmaPair {
        SigmaPair {
            sigma0: self.sigma(0),
            sigma1: self.sigma(1),
        }
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }
}

pub fn sigma_distribution_bruteforce(g: &Graph) -> Result<SigmaDistribution, SigmaError> {
    let n = g.order();
    let cap = limits::capped(ORACLE_CAP);
    if n > cap {
        return Err(SigmaError::OracleCap { n, cap });
    }
    let rows = g.rows();
    let mut counts = vec![0u64; g.size() + 1];
    let mut subset = 0u64;
    let mut edges = 0usize;
    counts[0] = 1;
    // successive Gray codes differ in the vertex at the lowest set bit of the step index
    for step in 1u64..(1u64 << n) {
        let v = step.trailing_zeros() as usize;
        let touched = (rows[v] & subset).count_ones() as usize;
        if subset & bit(v) != 0 {
            subset &= !bit(v);
            edges -= touched;
        } else {
            subset |= bit(v);
            edges += touched;
        }
        counts[edges] += 1;
    }
    Ok(SigmaDistribution {
        counts: counts.into_iter().map(BigUint::from).collect(),
    })
}

/// Highest degree inside `alive`, ties to the smallest index.
pub fn max_degree_pivot(g: &Graph, alive: VertexMask) -> usize {
    let rows = g.rows();
    let mut best = None;
    let mut best_deg = 0;
    for v in alive.iter() {
        let d = (rows[v] & alive.bits()).count_ones();
        if best.is_none() || d > best_deg {
            best = Some(v);
            best_deg = d;
        }
    }
    best.expect("pivot requested on an empty vertex set")
}

pub fn sigma01_recursive(g: &Graph) -> SigmaPair {
    sigma01_recursive_with(g, max_degree_pivot)
}

/// Deletion recursion with a caller-chosen pivot. `pivot` receives the
/// surviving vertices (never empty, always spanning at least one edge) and
/// must return one of them.
pub fn sigma01_recursive_with<P>(g: &Graph, pivot: P) -> SigmaPair
where
    P: FnMut(&Graph, VertexMask) -> usize,
{
    let mut rec = Recursion {
        g,
        pivot,
        pairs: HashMap::new(),
        zeros: HashMap::new(),
    };
    rec.pair(full_mask(g.order()))
}

struct Recursion<'a, P> {
    g: &'a Graph,
    pivot: P,
    pairs: HashMap<u64, SigmaPair>,
    zeros: HashMap<u64, BigUint>,
}

impl<P> Recursion<'_, P>
where
    P: FnMut(&Graph, VertexMask) -> usize,
{
    fn is_edgeless(&self, alive: u64) -> bool {
        let rows = self.g.rows();
        mask_iter(alive).all(|v| rows[v] & alive == 0)
    }

    fn choose(&mut self, alive: u64) -> usize {
        let v = (self.pivot)(self.g, VertexMask(alive));
        assert!(alive & bit(v) != 0, "pivot {v} is not a surviving vertex");
        v
    }

    fn sigma0(&mut self, alive: u64) -> BigUint {
        if self.is_edgeless(alive) {
            return BigUint::one() << alive.count_ones();
        }
        if let Some(p) = self.pairs.get(&alive) {
            return p.sigma0.clone();
        }
        if let Some(s) = self.zeros.get(&alive) {
            return s.clone();
        }
        let v = self.choose(alive);
        let closed = self.g.rows()[v] | bit(v);
        let s = self.sigma0(alive & !bit(v)) + self.sigma0(alive & !closed);
        self.zeros.insert(alive, s.clone());
        s
    }

    fn pair(&mut self, alive: u64) -> SigmaPair {
        if self.is_edgeless(alive) {
            return SigmaPair::edgeless(alive.count_ones() as usize);
        }
        if let Some(p) = self.pairs.get(&alive) {
            return p.clone();
        }
        let v = self.choose(alive);
        let rows = self.g.rows();
        let closed_v = rows[v] | bit(v);
        let without_v = self.pair(alive & !bit(v));
        let without_closed = self.pair(alive & !closed_v);
        let mut sigma1 = without_v.sigma1 + without_closed.sigma1;
        for u in mask_iter(rows[v] & alive) {
            sigma1 += self.sigma0(alive & !closed_v & !(rows[u] | bit(u)));
        }
        let result = SigmaPair {
            sigma0: without_v.sigma0 + without_closed.sigma0,
            sigma1,
        };
        self.pairs.insert(alive, result.clone());
        result
    }
}

/// Subtree counts split by whether the subtree root is in the subset and by
/// the number (0 or 1) of induced edges.
#[derive(Clone)]
struct RootedCounts {
    out0: BigUint,
    out1: BigUint,
    in0: BigUint,
    in1: BigUint,
}

impl RootedCounts {
    fn single() -> Self {
        RootedCounts {
            out0: BigUint::one(),
            out1: BigUint::zero(),
            in0: BigUint::one(),
            in1: BigUint::zero(),
        }
    }

    fn attach(&mut self, child: &RootedCounts) {
        let child_any0 = &child.out0 + &child.in0;
        let child_any1 = &child.out1 + &child.in1;
        let out0 = &self.out0 * &child_any0;
        let out1 = &self.out1 * &child_any0 + &self.out0 * &child_any1;
        // both endpoints chosen adds the edge to the parent
        let in0 = &self.in0 * &child.out0;
        let in1 = &self.in1 * &child.out0 + &self.in0 * &child.out1 + &self.in0 * &child.in0;
        *self = RootedCounts {
            out0,
            out1,
            in0,
            in1,
        };
    }
}

/// Forest-only dynamic program. Errors on cyclic input.
pub fn sigma01_tree_dp(t: &Graph) -> Result<SigmaPair, SigmaError> {
    if !t.is_forest() {
        return Err(SigmaError::Cyclic);
    }
    let rows = t.rows();
    let n = t.order();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut total = SigmaPair::unit();
    for comp in t.connected_components() {
        order.clear();
        let root = comp.iter().next().expect("components are non-empty");
        order.push(root);
        parent[root] = root;
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for u in mask_iter(rows[v]) {
                if u != parent[v] {
                    parent[u] = v;
                    order.push(u);
                }
            }
        }
        let mut counts: Vec<Option<RootedCounts>> = vec![None; n];
        for &v in order.iter().rev() {
            let mut here = RootedCounts::single();
            for u in mask_iter(rows[v]) {
                if u != parent[v] {
                    here.attach(counts[u].as_ref().expect("children finish first"));
                }
            }
            counts[v] = Some(here);
        }
        let r = counts[root].take().expect("root computed");
        let comp_pair = SigmaPair {
            sigma0: r.out0 + r.in0,
            sigma1: r.out1 + r.in1,
        };
        total = combine_union(&total, &comp_pair);
    }
    Ok(total)
}

/// Counts of a disjoint union from the counts of its two parts.
pub fn combine_union(a: &SigmaPair, b: &SigmaPair) -> SigmaPair {
    SigmaPair {
        sigma0: &a.sigma0 * &b.sigma0,
        sigma1: &a.sigma1 * &b.sigma0 + &b.sigma1 * &a.sigma0,
    }
}

/// Component-wise dispatch: forests go to the tree DP, everything else to the recursion.
pub fn sigma01(g: &Graph) -> SigmaPair {
    let mut total = SigmaPair::unit();
    let mut isolated = 0;
    for comp in g.connected_components() {
        if comp.len() == 1 {
            isolated += 1;
            continue;
        }
        let h = g.induced_subgraph(comp);
        let part = if h.size() + 1 == h.order() {
            sigma01_tree_dp(&h).expect("connected graph with n-1 edges is a tree")
        } else {
            sigma01_recursive(&h)
        };
        total = combine_union(&total, &part);
    }
    combine_union(&total, &SigmaPair::edgeless(isolated))
}

pub fn q_ratio(g: &Graph) -> ExactRational {
    sigma01(g).q()
}

/// Closed form `(2^{n-1} + 1, n - 1)` for the star on `n >= 1` vertices.
pub fn star_sigma(n: usize) -> Result<SigmaPair, SigmaError> {
    if n == 0 {
        return Err(SigmaError::EmptyStar);
    }
    Ok(SigmaPair {
        sigma0: (BigUint::one() << (n - 1)) + 1u32,
        sigma1: BigUint::from(n - 1),
    })
}

/// `(n-1) / (2^{n-1} + 1)`, the ratio of the star on `n` vertices.
pub fn star_q(n: usize) -> Result<ExactRational, SigmaError> {
    star_sigma(n).map(|s| s.q())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;

    fn dist(g: &Graph) -> Vec<u64> {
        sigma_distribution_bruteforce(g)
            .unwrap()
            .counts
            .iter()
            .map(|c| u64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(dist(&Graph::empty(2).unwrap()), vec![4]);
        assert_eq!(dist(&Graph::complete(3)), vec![4, 3, 0, 1]);
        let p4 = dist(&Graph::path(4));
        assert_eq!((p4[0], p4[1]), (8, 5));
        assert_eq!(dist(&Graph::null()), vec![1]);
    }

    #[test]
    fn bruteforce_cap() {
        let g = Graph::empty(26).unwrap();
        assert_eq!(
            sigma_distribution_bruteforce(&g),
            Err(SigmaError::OracleCap { n: 26, cap: 25 })
        );
    }

    #[test]
    fn recursion_examples() {
        assert_eq!(
            sigma01_recursive(&Graph::star(6)),
            SigmaPair::new(33u32, 5u32)
        );
        assert_eq!(
            sigma01_recursive(&Graph::path(4)),
            SigmaPair::new(8u32, 5u32)
        );
        assert_eq!(
            sigma01_recursive(&Graph::path(3)),
            SigmaPair::new(5u32, 2u32)
        );
        assert_eq!(sigma01_recursive(&Graph::null()), SigmaPair::unit());
    }

    #[test]
    fn pivot_choice_prefers_degree_then_index() {
        let g = Graph::from_edges(5, &[(1, 2), (3, 4), (3, 0), (1, 0)]).unwrap();
        assert_eq!(max_degree_pivot(&g, g.vertices()), 0);
        assert_eq!(max_degree_pivot(&g, VertexMask(0b11110)), 1);
    }

    #[test]
    fn tree_dp_examples() {
        assert_eq!(
            sigma01_tree_dp(&Graph::path(2)).unwrap(),
            SigmaPair::new(3u32, 1u32)
        );
        let s10 = sigma01_tree_dp(&Graph::star(10)).unwrap();
        assert_eq!(s10, SigmaPair::new(513u32, 9u32));
        assert_eq!(sigma01_tree_dp(&Graph::null()).unwrap(), SigmaPair::unit());
        assert_eq!(
            sigma01_tree_dp(&Graph::complete(3)),
            Err(SigmaError::Cyclic)
        );
    }

    #[test]
    fn combine_examples() {
        let k2 = SigmaPair::new(3u32, 1u32);
        assert_eq!(combine_union(&k2, &k2), SigmaPair::new(9u32, 6u32));
        let s = SigmaPair::new(17u32, 4u32);
        assert_eq!(
            combine_union(&s, &SigmaPair::edgeless(1)),
            SigmaPair::new(34u32, 8u32)
        );
        let mut acc = SigmaPair::unit();
        for t in 1..=6u32 {
            acc = combine_union(&acc, &k2);
            assert_eq!(acc, SigmaPair::new(3u32.pow(t), t * 3u32.pow(t - 1)));
        }
    }

    #[test]
    fn dispatcher_examples() {
        let g = Graph::from_edges(5, &[(0, 1)]).unwrap();
        assert_eq!(sigma01(&g), SigmaPair::new(24u32, 8u32));
        assert_eq!(sigma01(&Graph::null()), SigmaPair::unit());
        assert_eq!(sigma01(&Graph::path(4)), SigmaPair::new(8u32, 5u32));
        let k4_plus_p3 = Graph::complete(4).disjoint_union(&Graph::path(3)).unwrap();
        assert_eq!(sigma01(&k4_plus_p3), sigma01_recursive(&k4_plus_p3));
    }

    #[test]
    fn ratio_examples() {
        assert_eq!(q_ratio(&Graph::path(4)), ExactRational::new(5, 8));
        let two_k2 = Graph::named(Family::MatchingPlusIsolated, 4, Some(2)).unwrap();
        assert_eq!(q_ratio(&two_k2), ExactRational::new(2, 3));
        let g = Graph::named(Family::MatchingPlusIsolated, 9, Some(3)).unwrap();
        assert_eq!(q_ratio(&g), ExactRational::from_integer(1));
        assert_eq!(q_ratio(&Graph::null()), ExactRational::zero());
    }

    #[test]
    fn star_closed_forms() {
        assert_eq!(star_q(3).unwrap(), ExactRational::new(2, 5));
        assert_eq!(star_q(4).unwrap(), ExactRational::new(1, 3));
        assert_eq!(star_q(1).unwrap(), ExactRational::zero());
        assert_eq!(star_q(2).unwrap(), ExactRational::new(1, 3));
        assert_eq!(star_q(0), Err(SigmaError::EmptyStar));
        assert_eq!(
            star_sigma(64).unwrap().sigma0,
            (BigUint::one() << 63) + 1u32
        );
    }

    #[test]
    fn large_star_exceeds_machine_words() {
        let s = sigma01(&Graph::star(64));
        assert_eq!(s, star_sigma(64).unwrap());
        let e = sigma01(&Graph::empty(64).unwrap());
        assert_eq!(e.sigma0, BigUint::one() << 64);
    }
}
