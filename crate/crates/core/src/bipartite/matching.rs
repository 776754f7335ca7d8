//! Hopcroft–Karp matching with a König vertex cover.

use std::collections::VecDeque;

use serde::Serialize;

use super::BipartiteError;
use crate::graph::Graph;

const FREE: usize = usize::MAX;

/// A maximum matching and a vertex cover of the same size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchingCertificate {
    /// Edges as `(a, b)` with `a` on the first side, sorted.
    pub matching: Vec<(usize, usize)>,
    pub cover: Vec<usize>,
}

/// Matching state over a fixed bipartition.
pub(crate) struct Matcher<'g> {
    g: &'g Graph,
    a: Vec<usize>,
    /// `mate[v]` for every vertex, `FREE` when unmatched.
    mate: Vec<usize>,
}

impl<'g> Matcher<'g> {
    pub(crate) fn new(g: &'g Graph, a: &[usize]) -> Self {
        let mut m = Matcher { g, a: a.to_vec(), mate: vec![FREE; g.n()] };
        m.a.sort_unstable();
        m.run();
        m
    }

    fn run(&mut self) {
        let n = self.g.n();
        let mut dist = vec![usize::MAX; n];
        loop {
            // layer the A side from the free A vertices
            let mut queue = VecDeque::new();
            for &a in &self.a {
                dist[a] = if self.mate[a] == FREE { 0 } else { usize::MAX };
                if self.mate[a] == FREE {
                    queue.push_back(a);
                }
            }
            let mut found = false;
            while let Some(a) = queue.pop_front() {
                for &b in self.g.neighbors(a) {
                    let next = self.mate[b];
                    if next == FREE {
                        found = true;
                    } else if dist[next] == usize::MAX {
                        dist[next] = dist[a] + 1;
                        queue.push_back(next);
                    }
                }
            }
            if !found {
                break;
            }
            for i in 0..self.a.len() {
                let a = self.a[i];
                if self.mate[a] == FREE {
                    self.augment(a, &mut dist);
                }
            }
        }
    }

    fn augment(&mut self, a: usize, dist: &mut [usize]) -> bool {
        for k in 0..self.g.neighbors(a).len() {
            let b = self.g.neighbors(a)[k];
            let next = self.mate[b];
            if next == FREE || (dist[next] == dist[a] + 1 && self.augment(next, dist)) {
                self.mate[a] = b;
                self.mate[b] = a;
                return true;
            }
        }
        dist[a] = usize::MAX;
        false
    }

    pub(crate) fn mate(&self, v: usize) -> Option<usize> {
        (self.mate[v] != FREE).then_some(self.mate[v])
    }

    pub(crate) fn size(&self) -> usize {
        self.a.iter().filter(|&&a| self.mate[a] != FREE).count()
    }

    pub(crate) fn saturates_a(&self) -> bool {
        self.size() == self.a.len()
    }

    pub(crate) fn edges(&self) -> Vec<(usize, usize)> {
        self.a.iter().filter_map(|&a| self.mate(a).map(|b| (a, b))).collect()
    }

    pub(crate) fn unmatched_a(&self) -> impl Iterator<Item = usize> + '_ {
        self.a.iter().copied().filter(|&a| self.mate[a] == FREE)
    }

    /// Vertices reachable from `starts` by alternating paths (any edge from
    /// A to B, matching edges from B back to A).
    pub(crate) fn alternating_reach(&self, starts: impl IntoIterator<Item = usize>) -> Vec<bool> {
        let mut seen = vec![false; self.g.n()];
        let mut stack: Vec<usize> = starts.into_iter().collect();
        for &s in &stack {
            seen[s] = true;
        }
        while let Some(a) = stack.pop() {
            for &b in self.g.neighbors(a) {
                if seen[b] {
                    continue;
                }
                seen[b] = true;
                if let Some(next) = self.mate(b) {
                    if !seen[next] {
                        seen[next] = true;
                        stack.push(next);
                    }
                }
            }
        }
        seen
    }

    /// König cover `(A \ Z) ∪ (B ∩ Z)` for `Z` reached from the free A vertices.
    pub(crate) fn cover(&self) -> Vec<usize> {
        let z = self.alternating_reach(self.unmatched_a());
        let mut in_a = vec![false; self.g.n()];
        for &a in &self.a {
            in_a[a] = true;
        }
        self.g.vertices().filter(|&v| if in_a[v] { !z[v] } else { z[v] }).collect()
    }
}

/// Maximum matching between sides `a` and `b` with a König cover.
pub fn max_matching_koenig(g: &Graph, a: &[usize], b: &[usize]) -> Result<MatchingCertificate, BipartiteError> {
    let mut side = vec![None; g.n()];
    for (&v, s) in a.iter().map(|v| (v, 0)).chain(b.iter().map(|v| (v, 1))) {
        if v >= g.n() || side[v].is_some() {
            return Err(BipartiteError::InvalidSides(format!("vertex {v} is out of range or listed twice")));
        }
        side[v] = Some(s);
    }
    if let Some(v) = side.iter().position(Option::is_none) {
        return Err(BipartiteError::InvalidSides(format!("vertex {v} is on neither side")));
    }
    if let Some((u, v)) = g.edges().find(|&(u, v)| side[u] == side[v]) {
        return Err(BipartiteError::InvalidSides(format!("edge {u} {v} lies within a side")));
    }
    let m = Matcher::new(g, a);
    Ok(MatchingCertificate { matching: m.edges(), cover: m.cover() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;

    fn check(g: &Graph, cert: &MatchingCertificate) {
        assert_eq!(cert.cover.len(), cert.matching.len());
        for (u, v) in g.edges() {
            assert!(cert.cover.contains(&u) || cert.cover.contains(&v));
        }
    }

    #[test]
    fn examples() {
        let k22 = complete_bipartite(2, 2);
        let c = max_matching_koenig(&k22, &[0, 1], &[2, 3]).unwrap();
        assert_eq!(c.matching.len(), 2);
        check(&k22, &c);

        let s = star(3);
        let c = max_matching_koenig(&s, &[1, 2, 3], &[0]).unwrap();
        assert_eq!(c.matching.len(), 1);
        assert_eq!(c.cover, vec![0]);

        let c6 = cycle(6);
        let c = max_matching_koenig(&c6, &[0, 2, 4], &[1, 3, 5]).unwrap();
        assert_eq!(c.matching.len(), 3);
        check(&c6, &c);
    }

    #[test]
    fn bad_sides() {
        let p = path(3);
        assert!(max_matching_koenig(&p, &[0, 1], &[2]).is_err());
        assert!(max_matching_koenig(&p, &[0], &[1]).is_err());
        assert!(max_matching_koenig(&p, &[0, 2], &[1, 2]).is_err());
    }
}
