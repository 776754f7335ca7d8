//! Small named graphs and the worked instances used throughout the tests.

use crate::graph::{Graph, GuardConfig, Instance};

fn build(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges).expect("family edges are valid")
}

/// Path `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    build(n, &edges)
}

pub fn cycle(n: usize) -> Graph {
    let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    edges.push((n - 1, 0));
    build(n, &edges)
}

/// `K_{1,leaves}` with center 0.
pub fn star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    build(leaves + 1, &edges)
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    build(n, &edges)
}

/// `K_{a,b}` with sides `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let edges: Vec<_> = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect();
    build(a + b, &edges)
}

/// Two stars whose centers are joined: centers 0 and 1, leaves of 0 are
/// `2..2+left`, leaves of 1 follow.
pub fn double_star(left: usize, right: usize) -> Graph {
    let mut edges = vec![(0, 1)];
    edges.extend((0..left).map(|i| (0, 2 + i)));
    edges.extend((0..right).map(|i| (1, 2 + left + i)));
    build(2 + left + right, &edges)
}

pub fn guards(n: usize, vertices: &[usize]) -> GuardConfig {
    GuardConfig::new(vertices.to_vec(), n).expect("family guards are valid")
}

/// The seven-vertex graph with a triangle on `{3, 4, 6}`; the attacker needs
/// three turns against guards `{2, 3, 4}`.
pub fn ladder7() -> Instance {
    let g = build(7, &[(0, 1), (1, 2), (0, 3), (1, 4), (2, 5), (3, 4), (3, 6), (4, 6)]);
    Instance::new(g, guards(7, &[2, 3, 4]))
}

/// Same graph, guards `{0, 2, 4}`: one guard per clique of a clique cover.
pub fn ladder7_eternal() -> Instance {
    let Instance { graph, .. } = ladder7();
    Instance::new(graph, guards(7, &[0, 2, 4]))
}

/// Eighteen-vertex tree with nine guards holding an arena of contracted
/// treedepth 3.
pub fn arena_tree18() -> Instance {
    let g = build(
        18,
        &[
            (0, 2),
            (1, 3),
            (2, 4),
            (3, 4),
            (4, 5),
            (5, 6),
            (5, 7),
            (7, 8),
            (8, 9),
            (8, 10),
            (7, 11),
            (11, 12),
            (11, 13),
            (13, 14),
            (14, 15),
            (12, 16),
            (16, 17),
        ],
    );
    Instance::new(g, guards(18, &[2, 3, 5, 6, 8, 10, 11, 14, 16]))
}
