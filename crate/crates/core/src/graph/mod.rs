//! Simple undirected graphs, guard placements and the structural helpers
//! shared by every solver.

mod instance;
mod props;

pub use instance::{parse_instance, serialize_instance, Instance, InstanceJson, ParseError, Parsed};
pub use props::{alpha_bruteforce, bipartition, classify, is_forest, is_tree, twin_classes, ClassTags, ALPHA_LIMIT};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Widest graph for which bitmask adjacency rows are kept.
pub const MASK_LIMIT: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("guard {0} listed twice")]
    DuplicateGuard(usize),
    #[error("graph has {n} vertices, above the limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("expected {expected} names, got {got}")]
    NameCount { expected: usize, got: usize },
}

/// A finite, loopless, simple undirected graph on vertices `0..n`.
///
/// Neighbor lists are sorted. Graphs with at most [`MASK_LIMIT`] vertices also
/// carry one `u64` adjacency row per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    rows: Vec<u64>,
    names: Option<Vec<String>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self::from_sorted_adjacency(vec![Vec::new(); n])
    }

    /// Builds a graph from an edge list, dropping repeated edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self::from_sorted_adjacency(adj))
    }

    fn from_sorted_adjacency(adj: Vec<Vec<usize>>) -> Self {
        let rows = if adj.len() <= MASK_LIMIT {
            adj.iter()
                .map(|list| list.iter().fold(0u64, |m, &v| m | (1 << v)))
                .collect()
        } else {
            Vec::new()
        };
        Graph { adj, rows, names: None }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, GraphError> {
        if names.len() != self.n() {
            return Err(GraphError::NameCount { expected: self.n(), got: names.len() });
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if let Some(row) = self.rows.get(u) {
            return row >> v & 1 == 1;
        }
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Adjacency row of `v` as a bitmask; `None` when `n > 64`.
    pub fn row(&self, v: usize) -> Option<u64> {
        self.rows.get(v).copied()
    }

    pub fn has_masks(&self) -> bool {
        self.n() <= MASK_LIMIT
    }

    pub fn name(&self, v: usize) -> Option<&str> {
        self.names.as_ref().map(|names| names[v].as_str())
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n()
    }

    /// Keeps only the edges accepted by `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(usize, usize) -> bool) -> Graph {
        let adj = self
            .adj
            .iter()
            .enumerate()
            .map(|(u, list)| list.iter().copied().filter(|&v| keep(u.min(v), u.max(v))).collect())
            .collect();
        let mut g = Self::from_sorted_adjacency(adj);
        g.names = self.names.clone();
        g
    }

    /// Subgraph induced by `keep` (in the given order), renumbered `0..keep.len()`.
    /// Returns the graph together with the old index of every new vertex.
    pub fn induced(&self, keep: &[usize]) -> (Graph, Vec<usize>) {
        let mut new_index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            new_index[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| {
                let mut list: Vec<usize> = self.adj[v]
                    .iter()
                    .filter_map(|&w| (new_index[w] != usize::MAX).then_some(new_index[w]))
                    .collect();
                list.sort_unstable();
                list
            })
            .collect();
        let mut g = Self::from_sorted_adjacency(adj);
        g.names = self
            .names
            .as_ref()
            .map(|names| keep.iter().map(|&v| names[v].clone()).collect());
        (g, keep.to_vec())
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// True when the open neighborhoods of `u` and `v` coincide.
    pub fn same_neighborhood(&self, u: usize, v: usize) -> bool {
        self.adj[u] == self.adj[v]
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }
}

/// A guard placement: strictly increasing vertex indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GuardConfig(Vec<usize>);

impl GuardConfig {
    /// Validates and sorts `vertices` against a host graph on `n` vertices.
    pub fn new(mut vertices: Vec<usize>, n: usize) -> Result<Self, GraphError> {
        vertices.sort_unstable();
        for w in vertices.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateGuard(w[0]));
            }
        }
        if let Some(&v) = vertices.last() {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
        }
        Ok(GuardConfig(vertices))
    }

    pub fn empty() -> Self {
        GuardConfig(Vec::new())
    }

    /// Every vertex of a graph on `n` vertices.
    pub fn all(n: usize) -> Self {
        GuardConfig((0..n).collect())
    }

    pub fn from_mask(mask: u64) -> Self {
        GuardConfig((0..64).filter(|&v| mask >> v & 1 == 1).collect())
    }

    /// Wraps an already sorted, duplicate-free list.
    pub fn from_sorted(vertices: Vec<usize>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        GuardConfig(vertices)
    }

    pub fn from_flags(flags: &[bool]) -> Self {
        GuardConfig(flags.iter().enumerate().filter(|(_, &f)| f).map(|(v, _)| v).collect())
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    /// Membership flags over `0..n`.
    pub fn flags(&self, n: usize) -> Vec<bool> {
        let mut flags = vec![false; n];
        for &v in &self.0 {
            flags[v] = true;
        }
        flags
    }

    /// Bitmask form; only meaningful when every guard is below 64.
    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0, |m, &v| m | (1 << v))
    }

    /// The configuration after the guard on `from` slides to `to`.
    pub fn moved(&self, from: usize, to: usize) -> Self {
        let mut next: Vec<usize> = self.0.iter().copied().filter(|&v| v != from).collect();
        let pos = next.binary_search(&to).unwrap_or_else(|p| p);
        next.insert(pos, to);
        GuardConfig(next)
    }

    /// The configuration with an extra guard on `v`.
    pub fn with(&self, v: usize) -> Self {
        let mut next = self.0.clone();
        if let Err(pos) = next.binary_search(&v) {
            next.insert(pos, v);
        }
        GuardConfig(next)
    }

    pub fn without(&self, v: usize) -> Self {
        GuardConfig(self.0.iter().copied().filter(|&w| w != v).collect())
    }

    /// Guards mapped through `old_to_new`, dropping vertices that map to `None`.
    pub fn remap(&self, old_to_new: &[Option<usize>]) -> Self {
        let mut out: Vec<usize> = self.0.iter().filter_map(|&v| old_to_new[v]).collect();
        out.sort_unstable();
        GuardConfig(out)
    }
}

impl From<GuardConfig> for Vec<usize> {
    fn from(d: GuardConfig) -> Self {
        d.0
    }
}
