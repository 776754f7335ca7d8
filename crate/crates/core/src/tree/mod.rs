//! Trees: the attacker's fastest win is the smallest contracted treedepth of
//! an arena.
//!
//! An arena is a subtree `X` whose guarded and unguarded parts are both
//! independent, whose guards have degree exactly two in `X`, and whose
//! unguarded vertices have no guarded neighbor outside `X`. Contracting each
//! guard of `X` into an edge between its two neighbors gives the contracted
//! tree.

mod ranking;
mod strategy;

pub use ranking::{optimal_ranking, ranking_list, td_decomposition, Decomposition, RankingList};
pub use strategy::TreeAttacker;

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{is_forest, Graph, GuardConfig};
use crate::turns::Turns;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("graph is not a forest")]
    NotForest,
    #[error("not an arena: {0}")]
    NotArena(String),
    #[error("comp_arena needs a nice tree rooted at an unguarded vertex")]
    BadRoot,
}

/// A component left by [`trim_to_nice`]: guards and non-guards independent,
/// every leaf unguarded. `mapping[local] = original`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceTree {
    pub graph: Graph,
    pub guards: GuardConfig,
    pub mapping: Vec<usize>,
}

/// Strips everything no arena can use: same-status edges, guarded leaves
/// with their neighbor, and isolated guards, to a fixpoint.
pub fn trim_to_nice(t: &Graph, d: &GuardConfig) -> Result<Vec<NiceTree>, TreeError> {
    if !is_forest(t) {
        return Err(TreeError::NotForest);
    }
    let guarded = d.flags(t.n());
    let h = t.filter_edges(|u, v| guarded[u] != guarded[v]);
    let mut alive = vec![true; h.n()];
    let mut degree: Vec<usize> = h.vertices().map(|v| h.degree(v)).collect();
    let mut work: Vec<usize> = h.vertices().filter(|&v| guarded[v] && degree[v] <= 1).collect();
    let kill = |v: usize, alive: &mut Vec<bool>, degree: &mut Vec<usize>, work: &mut Vec<usize>| {
        alive[v] = false;
        for &w in h.neighbors(v) {
            if alive[w] {
                degree[w] -= 1;
                if guarded[w] && degree[w] <= 1 {
                    work.push(w);
                }
            }
        }
    };
    while let Some(v) = work.pop() {
        if !alive[v] {
            continue;
        }
        if degree[v] == 1 {
            let w = *h.neighbors(v).iter().find(|&&w| alive[w]).unwrap();
            kill(v, &mut alive, &mut degree, &mut work);
            kill(w, &mut alive, &mut degree, &mut work);
        } else {
            kill(v, &mut alive, &mut degree, &mut work);
        }
    }
    let kept: Vec<usize> = h.vertices().filter(|&v| alive[v]).collect();
    let (rest, back) = h.induced(&kept);
    let out = rest
        .components()
        .into_iter()
        .map(|comp| {
            let (graph, local) = rest.induced(&comp);
            let mapping: Vec<usize> = local.iter().map(|&v| back[v]).collect();
            let guards = GuardConfig::from_sorted((0..mapping.len()).filter(|&i| guarded[mapping[i]]).collect());
            NiceTree { graph, guards, mapping }
        })
        .collect();
    Ok(out)
}

#[derive(Clone, Debug)]
struct Entry {
    list: RankingList,
    /// Per guarded child, the chosen grandchild.
    picks: Vec<(usize, usize)>,
}

/// Memoized best arenas of a nice tree, keyed by an unguarded vertex and the
/// guard above it (`usize::MAX` for the root).
pub struct ArenaTable<'a> {
    tree: &'a Graph,
    guards: &'a GuardConfig,
    memo: HashMap<(usize, usize), Entry>,
}

impl<'a> ArenaTable<'a> {
    pub fn new(tree: &'a Graph, guards: &'a GuardConfig) -> Self {
        ArenaTable { tree, guards, memo: HashMap::new() }
    }

    fn grandchildren(&self, v: usize, above: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.tree
            .neighbors(v)
            .iter()
            .filter(move |&&u| u != above)
            .flat_map(move |&u| self.tree.neighbors(u).iter().filter(move |&&w| w != v).map(move |&w| (w, u)))
    }

    fn ensure(&mut self, v: usize, above: usize) {
        let mut stack = vec![(v, above)];
        while let Some(&(x, p)) = stack.last() {
            if self.memo.contains_key(&(x, p)) {
                stack.pop();
                continue;
            }
            let missing: Vec<(usize, usize)> =
                self.grandchildren(x, p).filter(|key| !self.memo.contains_key(key)).collect();
            if !missing.is_empty() {
                stack.extend(missing);
                continue;
            }
            let mut merged = RankingList::empty();
            let mut picks = Vec::new();
            for &u in self.tree.neighbors(x).iter().filter(|&&u| u != p) {
                let best = self
                    .tree
                    .neighbors(u)
                    .iter()
                    .filter(|&&w| w != x)
                    .min_by(|&&a, &&b| self.memo[&(a, u)].list.cmp(&self.memo[&(b, u)].list).then(a.cmp(&b)))
                    .copied()
                    .expect("guards of a nice tree have a second neighbor");
                merged = merged.merge(&self.memo[&(best, u)].list);
                picks.push((u, best));
            }
            self.memo.insert((x, p), Entry { list: merged.closure(), picks });
            stack.pop();
        }
    }

    /// The arena containing `root` with the lexicographically smallest
    /// contracted ranking list, and that list.
    pub fn comp_arena(&mut self, root: usize) -> Result<(Vec<usize>, RankingList), TreeError> {
        if root >= self.tree.n() || self.guards.contains(root) {
            return Err(TreeError::BadRoot);
        }
        self.ensure(root, usize::MAX);
        let list = self.memo[&(root, usize::MAX)].list.clone();
        let mut arena = Vec::new();
        let mut stack = vec![(root, usize::MAX)];
        while let Some(key) = stack.pop() {
            arena.push(key.0);
            for &(u, w) in &self.memo[&key].picks {
                arena.push(u);
                stack.push((w, u));
            }
        }
        arena.sort_unstable();
        Ok((arena, list))
    }
}

/// Value of a forest with an optimal arena when finite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeSolution {
    pub value: Turns,
    /// Arena vertices in the original numbering.
    pub arena: Option<Vec<usize>>,
    pub list: Option<RankingList>,
}

pub fn solve_tree(t: &Graph, d: &GuardConfig) -> Result<TreeSolution, TreeError> {
    let mut best: Option<(RankingList, Vec<usize>)> = None;
    for nice in trim_to_nice(t, d)? {
        let mut table = ArenaTable::new(&nice.graph, &nice.guards);
        for r in nice.graph.vertices().filter(|&r| !nice.guards.contains(r)) {
            let (arena, list) = table.comp_arena(r)?;
            if best.as_ref().is_none_or(|(b, _)| list.head() < b.head()) {
                let arena = arena.iter().map(|&v| nice.mapping[v]).collect();
                best = Some((list, arena));
            }
        }
    }
    Ok(match best {
        Some((list, arena)) => TreeSolution { value: Turns::Finite(list.head()), arena: Some(arena), list: Some(list) },
        None => TreeSolution { value: Turns::Infinite, arena: None, list: None },
    })
}

/// Checks the four arena properties of `x` in `(t, d)`.
pub fn is_arena(t: &Graph, d: &GuardConfig, x: &[usize]) -> Result<(), TreeError> {
    let bad = |msg: String| Err(TreeError::NotArena(msg));
    if x.is_empty() {
        return bad("empty set".into());
    }
    let mut inside = vec![false; t.n()];
    for &v in x {
        if v >= t.n() {
            return bad(format!("vertex {v} out of range"));
        }
        inside[v] = true;
    }
    let (sub, _) = t.induced(x);
    if sub.components().len() != 1 {
        return bad("not connected".into());
    }
    for &v in x {
        let in_nbrs = t.neighbors(v).iter().filter(|&&w| inside[w]);
        if in_nbrs.clone().any(|&w| d.contains(w) == d.contains(v)) {
            return bad(format!("vertex {v} has a same-status neighbor inside"));
        }
        if d.contains(v) && in_nbrs.count() != 2 {
            return bad(format!("guard {v} does not have degree 2 inside"));
        }
        if !d.contains(v) && t.neighbors(v).iter().any(|&w| !inside[w] && d.contains(w)) {
            return bad(format!("vertex {v} has a guarded neighbor outside"));
        }
    }
    Ok(())
}

/// Contracted tree of an arena: its unguarded vertices, with each guard
/// replaced by an edge between its two neighbors. Returns the tree and
/// `mapping[local] = original`.
pub fn contracted_tree(t: &Graph, d: &GuardConfig, x: &[usize]) -> (Graph, Vec<usize>) {
    let mut mapping: Vec<usize> = x.iter().copied().filter(|&v| !d.contains(v)).collect();
    mapping.sort_unstable();
    let local = |v: usize| mapping.binary_search(&v).ok();
    let mut edges = Vec::new();
    for &u in x.iter().filter(|&&u| d.contains(u)) {
        let ends: Vec<usize> = t.neighbors(u).iter().filter_map(|&w| x.contains(&w).then(|| local(w)).flatten()).collect();
        if let [a, b] = ends[..] {
            edges.push((a, b));
        }
    }
    let g = Graph::from_edges(mapping.len(), &edges).expect("contracted edges are valid");
    (g, mapping)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;

    #[test]
    fn trimming() {
        assert!(trim_to_nice(&path(3), &guards(3, &[0, 2])).unwrap().is_empty());
        let one = trim_to_nice(&path(3), &guards(3, &[1])).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].graph, path(3));
        let p5 = trim_to_nice(&path(5), &guards(5, &[1, 3])).unwrap();
        assert_eq!(p5.len(), 1);
        assert_eq!(p5[0].mapping, vec![0, 1, 2, 3, 4]);
        assert_eq!(trim_to_nice(&cycle(3), &GuardConfig::empty()), Err(TreeError::NotForest));
    }

    #[test]
    fn comp_arena_examples() {
        let g = Graph::empty(1);
        let d = GuardConfig::empty();
        let (a, l) = ArenaTable::new(&g, &d).comp_arena(0).unwrap();
        assert_eq!((a, l), (vec![0], RankingList::new(vec![1])));

        let p = path(3);
        let d = guards(3, &[1]);
        let (a, l) = ArenaTable::new(&p, &d).comp_arena(0).unwrap();
        assert_eq!(a, vec![0, 1, 2]);
        assert_eq!(l.head(), 2);

        let s = star(3);
        let d = guards(4, &[0]);
        let (a, l) = ArenaTable::new(&s, &d).comp_arena(1).unwrap();
        assert_eq!(a, vec![0, 1, 2]);
        assert_eq!(l.head(), 2);
        assert_eq!(ArenaTable::new(&s, &d).comp_arena(0), Err(TreeError::BadRoot));
    }

    #[test]
    fn solve_examples() {
        assert_eq!(solve_tree(&path(3), &guards(3, &[1])).unwrap().value, Turns::Finite(2));
        assert_eq!(solve_tree(&path(3), &guards(3, &[0, 2])).unwrap().value, Turns::Infinite);
        let f = arena_tree18();
        let sol = solve_tree(&f.graph, &f.guards).unwrap();
        assert_eq!(sol.value, Turns::Finite(3));
        is_arena(&f.graph, &f.guards, sol.arena.as_ref().unwrap()).unwrap();
    }

    #[test]
    fn arena_checks() {
        let p = path(3);
        let d = guards(3, &[1]);
        assert!(is_arena(&p, &d, &[0, 1, 2]).is_ok());
        assert!(is_arena(&p, &d, &[0, 1]).is_err());
        assert!(is_arena(&p, &d, &[0]).is_err());
        assert!(is_arena(&p, &d, &[0, 2]).is_err());
        let (c, m) = contracted_tree(&p, &d, &[0, 1, 2]);
        assert_eq!(c, path(2));
        assert_eq!(m, vec![0, 2]);
    }
}
