use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::{Graph, GraphError};
use crate::cograph::build_cotree;

/// Default vertex limit for [`alpha_bruteforce`].
pub const ALPHA_LIMIT: usize = 20;

/// Two-colors `g`, placing the smallest vertex of every component in the
/// first side. `None` when `g` has an odd cycle.
pub fn bipartition(g: &Graph) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut side = vec![u8::MAX; g.n()];
    for s in g.vertices() {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        let mut queue = vec![s];
        while let Some(v) = queue.pop() {
            for &w in g.neighbors(v) {
                if side[w] == u8::MAX {
                    side[w] = 1 - side[v];
                    queue.push(w);
                } else if side[w] == side[v] {
                    return None;
                }
            }
        }
    }
    let a = g.vertices().filter(|&v| side[v] == 0).collect();
    let b = g.vertices().filter(|&v| side[v] == 1).collect();
    Some((a, b))
}

/// Partitions `scope` into false-twin classes (identical open neighborhoods),
/// ordered by smallest member.
pub fn twin_classes(g: &Graph, scope: &[usize]) -> Vec<Vec<usize>> {
    let mut by_nbhd: BTreeMap<&[usize], Vec<usize>> = BTreeMap::new();
    let mut sorted = scope.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    for v in sorted {
        by_nbhd.entry(g.neighbors(v)).or_default().push(v);
    }
    let mut classes: Vec<Vec<usize>> = by_nbhd.into_values().collect();
    classes.sort_by_key(|c| c[0]);
    classes
}

/// Independence number by exhaustive branching; refuses graphs above `limit`
/// vertices (and always above 64).
pub fn alpha_bruteforce(g: &Graph, limit: usize) -> Result<usize, GraphError> {
    if g.n() > limit.min(64) {
        return Err(GraphError::TooLarge { n: g.n(), limit: limit.min(64) });
    }
    let closed: Vec<u64> = g.vertices().map(|v| g.row(v).unwrap() | 1 << v).collect();
    fn go(mask: u64, closed: &[u64]) -> usize {
        if mask == 0 {
            return 0;
        }
        let v = mask.trailing_zeros() as usize;
        let take = 1 + go(mask & !closed[v], closed);
        if (closed[v] & mask).count_ones() <= 2 {
            // v has at most one live neighbor: some maximum set contains v
            return take;
        }
        take.max(go(mask & !(1 << v), closed))
    }
    let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    Ok(go(all, &closed))
}

pub fn is_forest(g: &Graph) -> bool {
    g.m() + g.components().len() == g.n()
}

pub fn is_tree(g: &Graph) -> bool {
    g.n() > 0 && g.m() + 1 == g.n() && g.components().len() == 1
}

fn is_split(g: &Graph) -> bool {
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    deg.sort_unstable_by(|a, b| b.cmp(a));
    let m = (1..=deg.len()).filter(|&i| deg[i - 1] >= i - 1).max().unwrap_or(0);
    let head: usize = deg[..m].iter().sum();
    let tail: usize = deg[m..].iter().sum();
    head == m * m.saturating_sub(1) + tail
}

/// Structural class tags used for solver dispatch.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClassTags {
    pub tree: bool,
    pub forest: bool,
    pub bipartite: bool,
    pub cograph: bool,
    pub split: bool,
}

impl ClassTags {
    /// No special structure detected.
    pub fn generic(&self) -> bool {
        !(self.tree || self.forest || self.bipartite || self.cograph || self.split)
    }

    pub fn names(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        for (flag, name) in [
            (self.tree, "tree"),
            (self.forest, "forest"),
            (self.bipartite, "bipartite"),
            (self.cograph, "cograph"),
            (self.split, "split"),
        ] {
            if flag {
                out.push(name);
            }
        }
        if out.is_empty() {
            out.push("generic");
        }
        out
    }
}

impl fmt::Display for ClassTags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names().join(","))
    }
}

pub fn classify(g: &Graph) -> ClassTags {
    ClassTags {
        tree: is_tree(g),
        forest: is_forest(g),
        bipartite: bipartition(g).is_some(),
        cograph: build_cotree(g).is_ok(),
        split: is_split(g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;

    #[test]
    fn bipartition_examples() {
        assert_eq!(bipartition(&cycle(4)), Some((vec![0, 2], vec![1, 3])));
        assert_eq!(bipartition(&cycle(3)), None);
        assert_eq!(bipartition(&ladder7().graph), None);
    }

    #[test]
    fn twin_examples() {
        assert_eq!(twin_classes(&star(3), &[1, 2, 3]), vec![vec![1, 2, 3]]);
        assert_eq!(twin_classes(&path(3), &[0, 2]), vec![vec![0, 2]]);
        assert_eq!(twin_classes(&cycle(4), &[0, 1, 2, 3]), vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha_bruteforce(&complete(3), ALPHA_LIMIT), Ok(1));
        assert_eq!(alpha_bruteforce(&Graph::empty(2), ALPHA_LIMIT), Ok(2));
        assert_eq!(alpha_bruteforce(&cycle(5), ALPHA_LIMIT), Ok(2));
        assert_eq!(alpha_bruteforce(&Graph::empty(0), ALPHA_LIMIT), Ok(0));
        assert_eq!(
            alpha_bruteforce(&path(21), ALPHA_LIMIT),
            Err(GraphError::TooLarge { n: 21, limit: 20 })
        );
        assert_eq!(alpha_bruteforce(&path(21), 30), Ok(11));
    }

    #[test]
    fn classify_examples() {
        let p7 = classify(&path(7));
        assert!(p7.tree && p7.forest && p7.bipartite && !p7.cograph && !p7.split);
        let c4 = classify(&cycle(4));
        assert!(c4.bipartite && c4.cograph && !c4.tree && !c4.forest && !c4.split);
        let f1 = classify(&ladder7().graph);
        assert!(f1.generic(), "{f1}");
        assert_eq!(f1.names(), vec!["generic"]);
        let k4 = classify(&complete(4));
        assert!(k4.cograph && k4.split && !k4.bipartite);
    }

    #[test]
    fn split_detection() {
        // triangle plus a pendant on each corner
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)]).unwrap();
        assert!(is_split(&g));
        assert!(!is_split(&cycle(4)));
        assert!(!is_split(&cycle(5)));
    }
}
