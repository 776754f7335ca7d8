//! Seeded random instances and exhaustive small-graph enumeration.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, GuardConfig};

/// Independent generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn relabel(n: usize, edges: &[(usize, usize)], rng: &mut impl Rng) -> Graph {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let edges: Vec<_> = edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
    Graph::from_edges(n, &edges).expect("relabelled edges are valid")
}

/// Uniform random recursive tree, randomly relabelled.
pub fn random_tree(n: usize, rng: &mut impl Rng) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    relabel(n, &edges, rng)
}

pub fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("valid edges")
}

/// Random sides, then each cross pair an edge with probability `p`.
pub fn random_bipartite(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let side: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if side[u] != side[v] && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("valid edges")
}

/// Cograph from a random cotree: split the vertex set in two, take the
/// union or the join of the halves, recurse.
pub fn random_cograph(n: usize, rng: &mut impl Rng) -> Graph {
    fn go(vs: &[usize], edges: &mut Vec<(usize, usize)>, rng: &mut impl Rng) {
        if vs.len() <= 1 {
            return;
        }
        let cut = rng.gen_range(1..vs.len());
        let (a, b) = vs.split_at(cut);
        if rng.gen_bool(0.5) {
            for &u in a {
                for &v in b {
                    edges.push((u, v));
                }
            }
        }
        go(a, edges, rng);
        go(b, edges, rng);
    }
    let vs: Vec<usize> = (0..n).collect();
    let mut edges = Vec::new();
    go(&vs, &mut edges, rng);
    relabel(n, &edges, rng)
}

/// Each vertex guarded with a density itself drawn uniformly from `[0, 1]`.
pub fn random_guards(n: usize, rng: &mut impl Rng) -> GuardConfig {
    let p: f64 = rng.gen();
    GuardConfig::from_flags(&(0..n).map(|_| rng.gen_bool(p)).collect::<Vec<_>>())
}

/// Every labelled graph on `n` vertices.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let count = 1u64 << pairs.len();
    (0..count).map(move |mask| {
        let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        Graph::from_edges(n, &edges).expect("valid edges")
    })
}

/// Every guard set of a graph on `n <= 64` vertices.
pub fn all_guard_sets(n: usize) -> impl Iterator<Item = GuardConfig> {
    (0..1u64 << n).map(GuardConfig::from_mask)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// One representative per isomorphism class of graphs on `n` vertices with
/// at most `max_edges` edges; practical up to `n = 6`.
pub fn graphs_up_to_iso(n: usize, max_edges: usize) -> Vec<Graph> {
    let perms = permutations(n);
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for g in all_graphs(n).filter(|g| g.m() <= max_edges) {
        let canon = perms
            .iter()
            .map(|p| {
                let mut e: Vec<(usize, usize)> =
                    g.edges().map(|(u, v)| (p[u].min(p[v]), p[u].max(p[v]))).collect();
                e.sort_unstable();
                e
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            out.push(g);
        }
    }
    out
}
