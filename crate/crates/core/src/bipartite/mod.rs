//! Bipartite instances: one-side normalization, the eternal-domination
//! decision through matchings saturating the unguarded side, Hall-set
//! attacks, and two kernels.
//!
//! After normalization every edge joins a guard to an unguarded vertex, and
//! guards never benefit from edges among themselves, nor the attacker from
//! edges among unguarded vertices.

mod kernel;
mod matching;

pub use kernel::{crown_kernel, twin_kernel, Kernel};
pub use matching::{max_matching_koenig, MatchingCertificate};

use serde::Serialize;
use thiserror::Error;

use crate::game::{AttackerPolicy, GameState};
use crate::graph::{bipartition, Graph, GuardConfig};
use matching::Matcher;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BipartiteError {
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("invalid bipartition: {0}")]
    InvalidSides(String),
    #[error("instance is not normalized: edge {0} {1} joins two vertices of the same status")]
    NotNormalized(usize, usize),
    #[error("invalid Hall violator: {0}")]
    InvalidViolator(String),
}

/// Drops every guard–guard and unguarded–unguarded edge.
pub fn normalize_one_side(g: &Graph, d: &GuardConfig) -> Result<Graph, BipartiteError> {
    if bipartition(g).is_none() {
        return Err(BipartiteError::NotBipartite);
    }
    let guarded = d.flags(g.n());
    Ok(g.filter_edges(|u, v| guarded[u] != guarded[v]))
}

pub(crate) fn check_normalized(g: &Graph, d: &GuardConfig) -> Result<(), BipartiteError> {
    let guarded = d.flags(g.n());
    match g.edges().find(|&(u, v)| guarded[u] == guarded[v]) {
        Some((u, v)) => Err(BipartiteError::NotNormalized(u, v)),
        None => Ok(()),
    }
}

/// Unguarded vertices `set` with fewer than `set.len()` neighbors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HallViolator {
    pub set: Vec<usize>,
    pub neighborhood: Vec<usize>,
    /// `|N(S)| + 1`, the number of turns the attack needs at most.
    pub bound: usize,
}

impl HallViolator {
    /// Checks the violator against a normalized instance.
    pub fn validate(&self, g: &Graph, d: &GuardConfig) -> Result<(), BipartiteError> {
        let bad = |msg: String| Err(BipartiteError::InvalidViolator(msg));
        if let Some(&v) = self.set.iter().find(|&&v| v >= g.n() || d.contains(v)) {
            return bad(format!("vertex {v} is guarded or out of range"));
        }
        let mut nbhd: Vec<usize> = self.set.iter().flat_map(|&v| g.neighbors(v).iter().copied()).collect();
        nbhd.sort_unstable();
        nbhd.dedup();
        if nbhd != self.neighborhood {
            return bad("neighborhood does not match".into());
        }
        if nbhd.len() >= self.set.len() {
            return bad(format!("|N(S)| = {} is not below |S| = {}", nbhd.len(), self.set.len()));
        }
        if self.bound != nbhd.len() + 1 {
            return bad("bound must be |N(S)| + 1".into());
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EdsCertificate {
    /// Matched edges plus lone guards: one guard per clique of a clique cover.
    Matching { edges: Vec<(usize, usize)>, lone_guards: Vec<usize> },
    HallSet(HallViolator),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdsDecision {
    pub eternal: bool,
    pub certificate: EdsCertificate,
}

/// Decides whether `d` is an eternal dominating set of the bipartite `g`.
pub fn eds_decide(g: &Graph, d: &GuardConfig) -> Result<EdsDecision, BipartiteError> {
    let h = normalize_one_side(g, d)?;
    let a: Vec<usize> = h.vertices().filter(|&v| !d.contains(v)).collect();
    let m = Matcher::new(&h, &a);
    if m.saturates_a() {
        let edges = m.edges();
        let lone_guards = d.iter().filter(|&b| m.mate(b).is_none()).collect();
        return Ok(EdsDecision { eternal: true, certificate: EdsCertificate::Matching { edges, lone_guards } });
    }
    let start = m.unmatched_a().next().expect("some vertex is unmatched");
    let z = m.alternating_reach([start]);
    let set: Vec<usize> = a.iter().copied().filter(|&v| z[v]).collect();
    let neighborhood: Vec<usize> = d.iter().filter(|&v| z[v]).collect();
    let bound = neighborhood.len() + 1;
    Ok(EdsDecision { eternal: false, certificate: EdsCertificate::HallSet(HallViolator { set, neighborhood, bound }) })
}

/// Attack script from a Hall violator of the normalized instance: the first
/// `|N(S)| + 1` vertices of `S`. Guards only ever enter attacked vertices, so
/// each scripted vertex is still unguarded when its turn comes, and each
/// answer uses up one guard of `N(S)`.
pub fn hall_attack(g: &Graph, d: &GuardConfig, hv: &HallViolator) -> Result<Vec<usize>, BipartiteError> {
    check_normalized(g, d)?;
    hv.validate(g, d)?;
    Ok(hv.set[..hv.bound].to_vec())
}

/// Attacker playing a fixed script, skipping vertices that became guarded.
pub struct ScriptAttacker {
    script: Vec<usize>,
}

impl ScriptAttacker {
    pub fn new(script: Vec<usize>) -> Self {
        ScriptAttacker { script }
    }
}

impl AttackerPolicy for ScriptAttacker {
    fn attack(&mut self, _g: &Graph, state: &GameState) -> Option<usize> {
        while !self.script.is_empty() {
            let v = self.script.remove(0);
            if !state.guards.contains(v) {
                return Some(v);
            }
        }
        None
    }
}
