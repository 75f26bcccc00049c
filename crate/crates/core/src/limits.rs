//! Hard order caps, optionally lowered through the `SIGMA_MAX_N` environment variable.

use std::sync::OnceLock;

pub const ENV_VAR: &str = "SIGMA_MAX_N";

/// Largest order accepted by the canonical-form routine.
pub const CANONICAL_CAP: usize = 10;
/// Largest order accepted by the subset-enumeration oracle.
pub const ORACLE_CAP: usize = 25;
/// Free trees are generated up to this order.
pub const TREE_CAP: usize = 18;
pub const FOREST_CAP: usize = 14;
pub const ALL_GRAPHS_CAP: usize = 8;

fn env_ceiling() -> Option<usize> {
    static CEILING: OnceLock<Option<usize>> = OnceLock::new();
    *CEILING.get_or_init(|| {
        std::env::var(ENV_VAR)
            .ok()
            .and_then(|s| s.trim().parse().ok())
    })
}

/// `cap`, lowered to `SIGMA_MAX_N` when that is set and smaller. Never raises a cap.
pub fn capped(cap: usize) -> usize {
    match env_ceiling() {
        Some(ceiling) => cap.min(ceiling),
        None => cap,
    }
}
