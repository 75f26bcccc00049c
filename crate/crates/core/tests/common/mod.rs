//! Independent oracles shared by the integration suites. Nothing here calls
//! the generators or the canonical-form search it is used to check.

#![allow(dead_code)]

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sigma_ratio::Graph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All pairs `(i, j)`, `i < j`, row-major.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push((i, j));
        }
    }
    out
}

/// Every labelled graph on `n` vertices (one per edge subset).
pub fn labelled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs = pairs(n);
    (0u64..1u64 << pairs.len()).map(move |subset| {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| subset >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::from_edges(n, &edges).unwrap()
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Minimum upper-triangle code over all `n!` relabellings.
pub struct BruteCanon {
    n: usize,
    perms: Vec<Vec<usize>>,
}

impl BruteCanon {
    pub fn new(n: usize) -> Self {
        BruteCanon {
            n,
            perms: permutations(n),
        }
    }

    pub fn code(&self, g: &Graph) -> u64 {
        assert_eq!(g.order(), self.n);
        self.perms
            .iter()
            .map(|order| {
                let mut code = 0u64;
                for i in 0..self.n {
                    for j in i + 1..self.n {
                        code = (code << 1) | g.has_edge(order[i], order[j]) as u64;
                    }
                }
                code
            })
            .min()
            .unwrap_or(0)
    }
}

/// Number of isomorphism classes among labelled graphs on `n` vertices passing `keep`.
pub fn labelled_class_count(n: usize, keep: impl Fn(&Graph) -> bool) -> usize {
    let canon = BruteCanon::new(n);
    labelled_graphs(n)
        .filter(|g| keep(g))
        .map(|g| canon.code(&g))
        .collect::<HashSet<_>>()
        .len()
}

/// Tree canonical string: AHU encoding rooted at the center (the smaller of two centers' encodings).
pub fn tree_key(t: &Graph) -> String {
    let n = t.order();
    if n == 1 {
        return "()".to_string();
    }
    // peel leaves to find the center(s)
    let mut degree: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for u in t.neighbors(v).iter() {
                if degree[u] > 1 {
                    degree[u] -= 1;
                    if degree[u] == 1 {
                        next.push(u);
                    }
                }
            }
            degree[v] = 0;
        }
        layer = next;
    }
    layer.iter().map(|&c| ahu(t, c, usize::MAX)).min().unwrap()
}

fn ahu(t: &Graph, v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = t
        .neighbors(v)
        .iter()
        .filter(|&u| u != parent)
        .map(|u| ahu(t, u, v))
        .collect();
    kids.sort();
    format!("({})", kids.concat())
}

/// Free trees on `n` vertices from all `n^(n-2)` Prüfer sequences, deduplicated by [`tree_key`].
pub fn prufer_tree_classes(n: usize) -> HashSet<String> {
    let mut out = HashSet::new();
    if n <= 2 {
        out.insert(tree_key(&Graph::path(n)));
        return out;
    }
    let len = n - 2;
    let total = n.pow(len as u32);
    let mut seq = vec![0usize; len];
    for mut code in 0..total {
        for slot in seq.iter_mut() {
            *slot = code % n;
            code /= n;
        }
        out.insert(tree_key(&prufer_decode(n, &seq)));
    }
    out
}

/// Labelled tree of a Prüfer sequence (`seq.len() == n - 2`, `n >= 2`).
pub fn prufer_decode(n: usize, seq: &[usize]) -> Graph {
    if n == 2 {
        return Graph::path(2);
    }
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::from_edges(n, &edges).unwrap()
}

/// Free trees by repeatedly hanging a new leaf on every vertex, deduplicated by [`tree_key`].
pub fn leaf_extension_tree_classes(n: usize) -> Vec<Graph> {
    let mut level = vec![Graph::path(1)];
    for k in 2..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for t in &level {
            for v in 0..t.order() {
                let mut edges = t.edges();
                edges.push((v, k - 1));
                let grown = Graph::from_edges(k, &edges).unwrap();
                if seen.insert(tree_key(&grown)) {
                    next.push(grown);
                }
            }
        }
        level = next;
    }
    level
}

/// G(n, p) with a seeded generator.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let edges: Vec<_> = pairs(n).into_iter().filter(|_| rng.gen_bool(p)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        perm.swap(i, j);
    }
    perm
}

/// Free-tree counts for n = 1..=18.
pub const FREE_TREE_COUNTS: [usize; 18] = [
    1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159, 7741, 19320, 48629, 123867,
];
