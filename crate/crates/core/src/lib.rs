//! Exact counting of independent (σ₀) and 1-nearly independent (σ₁) vertex
//! subsets, the ratio `Q = σ₁/σ₀`, and exhaustive checks of its extremal
//! bounds over isomorph-free enumerations of small graphs, trees and forests.

pub mod canonical;
pub mod cli;
pub mod enumerate;
pub mod graph;
pub mod graph6;
pub mod limits;
pub mod rational;
pub mod report;
pub mod sigma;
pub mod verify;

pub use canonical::{canonical_code, canonical_graph, CanonicalCode};
pub use enumerate::{gen_class, gen_forests, gen_graphs, gen_trees, ClassSpec, Family};
pub use graph::{Graph, GraphError, VertexMask};
pub use graph6::{emit_graph6, parse_graph6, parse_graph6_str};
pub use rational::ExactRational;
pub use sigma::{
    combine_union, q_ratio, sigma01, sigma01_recursive, sigma01_recursive_with, sigma01_tree_dp,
    sigma_distribution_bruteforce, star_q, star_sigma, SigmaDistribution, SigmaPair,
};
pub use verify::{Claim, ScanConfig, VerificationReport};
