use serde::Serialize;

use super::matching::Matcher;
use super::{check_normalized, BipartiteError};
use crate::graph::{twin_classes, Graph, GuardConfig};

/// A reduced instance; `mapping[new] = old`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Kernel {
    #[serde(skip)]
    pub graph: Graph,
    pub guards: GuardConfig,
    pub mapping: Vec<usize>,
}

impl Kernel {
    fn keep(g: &Graph, d: &GuardConfig, keep: &[bool]) -> Kernel {
        let kept: Vec<usize> = g.vertices().filter(|&v| keep[v]).collect();
        let (graph, mapping) = g.induced(&kept);
        let mut old_to_new = vec![None; g.n()];
        for (new, &old) in mapping.iter().enumerate() {
            old_to_new[old] = Some(new);
        }
        Kernel { graph, guards: d.remap(&old_to_new), mapping }
    }

    /// Composes with an outer kernel whose vertices this one was built on.
    pub fn through(mut self, outer: &Kernel) -> Kernel {
        for v in &mut self.mapping {
            *v = outer.mapping[*v];
        }
        self
    }
}

/// Keeps the `g + 1` smallest members of each twin class of unguarded
/// vertices.
pub fn twin_kernel(g: &Graph, d: &GuardConfig) -> Result<Kernel, BipartiteError> {
    check_normalized(g, d)?;
    let unguarded: Vec<usize> = g.vertices().filter(|&v| !d.contains(v)).collect();
    let mut keep = vec![true; g.n()];
    for class in twin_classes(g, &unguarded) {
        for &v in class.iter().skip(d.len() + 1) {
            keep[v] = false;
        }
    }
    Ok(Kernel::keep(g, d, &keep))
}

/// Alternates two rules until neither applies: drop isolated guards, and
/// while guards outnumber unguarded vertices remove a crown `A' ∪ B'` with
/// `A'` the unguarded part of a König cover and `B'` the guards outside it.
/// The result has at most `2 (n - g)` vertices.
pub fn crown_kernel(g: &Graph, d: &GuardConfig) -> Result<Kernel, BipartiteError> {
    check_normalized(g, d)?;
    let mut current = Kernel { graph: g.clone(), guards: d.clone(), mapping: g.vertices().collect() };
    loop {
        let h = &current.graph;
        let guarded = current.guards.flags(h.n());
        let isolated: Vec<bool> = h.vertices().map(|v| guarded[v] && h.degree(v) == 0).collect();
        if isolated.iter().any(|&x| x) {
            let keep: Vec<bool> = isolated.iter().map(|&x| !x).collect();
            current = Kernel::keep(h, &current.guards, &keep).through(&current);
            continue;
        }
        let a: Vec<usize> = h.vertices().filter(|&v| !guarded[v]).collect();
        if a.len() >= current.guards.len() {
            break;
        }
        let m = Matcher::new(h, &a);
        let mut in_cover = vec![false; h.n()];
        for v in m.cover() {
            in_cover[v] = true;
        }
        // A' = cover ∩ A, B' = B \ cover
        let remove: Vec<bool> = h.vertices().map(|v| guarded[v] != in_cover[v]).collect();
        assert!(
            a.iter().any(|&v| remove[v]),
            "crown rule needs a nonempty A' when guards outnumber unguarded vertices"
        );
        let keep: Vec<bool> = remove.iter().map(|&x| !x).collect();
        current = Kernel::keep(h, &current.guards, &keep).through(&current);
    }
    Ok(current)
}
