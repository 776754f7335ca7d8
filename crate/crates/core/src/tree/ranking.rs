//! Ranking lists, vertex rankings and treedepth decompositions of trees.

use std::fmt;

use serde::Serialize;

use crate::graph::Graph;

/// Non-increasing list of positive integers, ordered lexicographically with
/// a proper prefix below its extensions.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct RankingList(Vec<u32>);

impl RankingList {
    pub fn new(mut items: Vec<u32>) -> Self {
        items.sort_unstable_by(|a, b| b.cmp(a));
        debug_assert!(items.iter().all(|&x| x > 0));
        RankingList(items)
    }

    pub fn empty() -> Self {
        RankingList(Vec::new())
    }

    pub fn items(&self) -> &[u32] {
        &self.0
    }

    /// First (largest) entry; 0 for the empty list.
    pub fn head(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn is_valid(&self) -> bool {
        self.0.iter().all(|&x| x > 0) && self.0.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn merge(&self, other: &RankingList) -> RankingList {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            if j == other.0.len() || (i < self.0.len() && self.0[i] >= other.0[j]) {
                out.push(self.0[i]);
                i += 1;
            } else {
                out.push(other.0[j]);
                j += 1;
            }
        }
        RankingList(out)
    }

    /// Replaces the longest suffix that is empty or dominates the staircase
    /// `(k, k-1, ..., 1)` of its own head `k` by `(k + 1)`.
    pub fn closure(&self) -> RankingList {
        let l = &self.0;
        let dominates = |s: &[u32]| {
            let k = s[0];
            let stair = (1..=k).rev();
            s.iter().copied().cmp(stair) != std::cmp::Ordering::Less
        };
        let i = (0..l.len()).find(|&i| dominates(&l[i..])).unwrap_or(l.len());
        let mut out = l[..i].to_vec();
        out.push(if i == l.len() { 1 } else { l[i] + 1 });
        RankingList(out)
    }
}

impl fmt::Display for RankingList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", items.join(","))
    }
}

/// Parent pointers and children lists of a tree component rooted at `root`,
/// with vertices in BFS order.
pub(crate) fn root_at(g: &Graph, root: usize) -> (Vec<usize>, Vec<Option<usize>>) {
    let mut parent = vec![None; g.n()];
    let mut seen = vec![false; g.n()];
    let mut order = vec![root];
    seen[root] = true;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        for &w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(v);
                order.push(w);
            }
        }
        i += 1;
    }
    (order, parent)
}

/// Ranking list of the component of `root`, rooted there.
pub fn ranking_list(g: &Graph, root: usize) -> RankingList {
    let (order, parent) = root_at(g, root);
    let mut acc: Vec<RankingList> = vec![RankingList::empty(); g.n()];
    let mut lists: Vec<RankingList> = vec![RankingList::empty(); g.n()];
    for &v in order.iter().rev() {
        let list = std::mem::take(&mut acc[v]).closure();
        if let Some(p) = parent[v] {
            acc[p] = acc[p].merge(&list);
        }
        lists[v] = list;
    }
    std::mem::take(&mut lists[root])
}

/// Optimal vertex ranking of a forest: equal ranks are always separated by a
/// larger rank, and the largest rank in each tree is its treedepth.
pub fn optimal_ranking(g: &Graph) -> Vec<u32> {
    let mut rank = vec![0u32; g.n()];
    let mut done = vec![false; g.n()];
    for s in g.vertices() {
        if done[s] {
            continue;
        }
        let (order, parent) = root_at(g, s);
        // visible[v]: ranks below v not hidden by a larger rank, descending
        let mut visible: Vec<Vec<u32>> = vec![Vec::new(); g.n()];
        for &v in order.iter().rev() {
            done[v] = true;
            let children = g.neighbors(v).iter().filter(|&&c| parent[c] == Some(v));
            let mut seen: Vec<u32> = Vec::new();
            let mut clash = 0;
            for &c in children {
                for &x in &visible[c] {
                    if seen.contains(&x) {
                        clash = clash.max(x);
                    } else {
                        seen.push(x);
                    }
                }
            }
            let k = (clash + 1..).find(|k| !seen.contains(k)).unwrap();
            rank[v] = k;
            let mut vis: Vec<u32> = seen.into_iter().filter(|&x| x > k).collect();
            vis.push(k);
            vis.sort_unstable_by(|a, b| b.cmp(a));
            visible[v] = vis;
        }
    }
    rank
}

/// A rooted forest on the vertices of a graph in which every edge joins an
/// ancestor and a descendant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub parent: Vec<Option<usize>>,
    /// Depth of each vertex; roots have depth 1.
    pub depth: Vec<u32>,
    pub height: u32,
}

impl Decomposition {
    pub fn is_ancestor(&self, a: usize, mut v: usize) -> bool {
        loop {
            if v == a {
                return true;
            }
            match self.parent[v] {
                Some(p) => v = p,
                None => return false,
            }
        }
    }

    /// Every edge of `g` joins an ancestor–descendant pair.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        g.edges().all(|(u, v)| self.is_ancestor(u, v) || self.is_ancestor(v, u))
    }
}

/// Decomposition of height equal to the treedepth: in every remaining
/// component the vertex of largest optimal rank becomes the root.
pub fn td_decomposition(g: &Graph) -> Decomposition {
    let rank = optimal_ranking(g);
    let mut parent = vec![None; g.n()];
    let mut depth = vec![0u32; g.n()];
    let mut alive = vec![true; g.n()];
    // stamp[v] == round marks v as already placed in a piece this round
    let mut stamp = vec![0usize; g.n()];
    let mut round = 0;
    // (component, parent in the decomposition, depth)
    let mut stack: Vec<(Vec<usize>, Option<usize>, u32)> =
        g.components().into_iter().map(|c| (c, None, 1)).collect();
    while let Some((comp, above, d)) = stack.pop() {
        let root = *comp.iter().max_by_key(|&&v| (rank[v], std::cmp::Reverse(v))).unwrap();
        parent[root] = above;
        depth[root] = d;
        alive[root] = false;
        round += 1;
        for &start in g.neighbors(root) {
            if !alive[start] || stamp[start] == round {
                continue;
            }
            let mut piece = vec![start];
            stamp[start] = round;
            let mut i = 0;
            while i < piece.len() {
                for &w in g.neighbors(piece[i]) {
                    if alive[w] && stamp[w] != round {
                        stamp[w] = round;
                        piece.push(w);
                    }
                }
                i += 1;
            }
            piece.sort_unstable();
            stack.push((piece, Some(root), d + 1));
        }
    }
    let height = depth.iter().copied().max().unwrap_or(0);
    Decomposition { parent, depth, height }
}
