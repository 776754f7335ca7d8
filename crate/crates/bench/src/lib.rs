//! Deterministic benchmark fixtures.

use edom_core::generators::{random_bipartite, random_cograph, random_guards, random_tree, trial_rng};
use edom_core::{Graph, GuardConfig};

const SEED: u64 = 7;

pub fn tree(n: usize) -> (Graph, GuardConfig) {
    let mut rng = trial_rng(SEED, n as u64);
    let g = random_tree(n, &mut rng);
    let d = random_guards(n, &mut rng);
    (g, d)
}

pub fn cograph(n: usize) -> (Graph, GuardConfig) {
    let mut rng = trial_rng(SEED + 1, n as u64);
    let g = random_cograph(n, &mut rng);
    let d = random_guards(n, &mut rng);
    (g, d)
}

pub fn bipartite(n: usize, p: f64) -> (Graph, GuardConfig) {
    let mut rng = trial_rng(SEED + 2, n as u64);
    let g = random_bipartite(n, p, &mut rng);
    let d = random_guards(n, &mut rng);
    (g, d)
}
