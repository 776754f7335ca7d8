//! Cographs: values through the cotree recursion of the reservist game, the
//! deepest-common-ancestor defender and a matching attacker.
//!
//! For a union of `G1` and `G2` the attacker splits the reservists,
//! `t(D, r) = min_i t1(D1, i) + t2(D2, r - i)`; for a join it plays inside one
//! side and every guard of the other side counts as a reservist,
//! `t(D, r) = min(t1(D1, r + |D2|), t2(D2, r + |D1|))`.

mod cotree;

pub use cotree::{build_cotree, Cotree, CotreeError, CotreeNode, NodeKind};

use std::collections::HashMap;

use serde::Serialize;

use crate::game::{AttackerPolicy, Defense, DefenderPolicy, GameState};
use crate::graph::{Graph, GuardConfig};
use crate::turns::Turns;

/// Memoized reservist-game values over one cotree and guard placement.
pub struct ReservistTable<'a> {
    tree: &'a Cotree,
    guarded: Vec<bool>,
    guards_below: Vec<u32>,
    memo: HashMap<(usize, u32), Turns>,
}

impl<'a> ReservistTable<'a> {
    pub fn new(tree: &'a Cotree, d: &GuardConfig) -> Self {
        let n = tree.node(tree.root()).vertices.len();
        let guarded = d.flags(n);
        let guards_below = (0..tree.len())
            .map(|i| tree.node(i).vertices.iter().filter(|&&v| guarded[v]).count() as u32)
            .collect();
        ReservistTable { tree, guarded, guards_below, memo: HashMap::new() }
    }

    pub fn guards_below(&self, node: usize) -> u32 {
        self.guards_below[node]
    }

    fn unguarded_below(&self, node: usize) -> u32 {
        self.tree.node(node).vertices.len() as u32 - self.guards_below[node]
    }

    /// `t(D ∩ node, r)` on the subgraph below `node`.
    pub fn value(&mut self, node: usize, r: u32) -> Turns {
        if r == 0 {
            return Turns::ZERO;
        }
        // a reservist for every unguarded vertex fills the subgraph
        if r > self.unguarded_below(node) {
            return Turns::Infinite;
        }
        if let Some(&t) = self.memo.get(&(node, r)) {
            return t;
        }
        let t = self.recompute(node, r);
        self.memo.insert((node, r), t);
        t
    }

    /// One application of the recursion from (memoized) child values.
    pub fn recompute(&mut self, node: usize, r: u32) -> Turns {
        let n = self.tree.node(node);
        match (n.kind, n.children) {
            (NodeKind::Leaf(v), _) => {
                if r == 0 {
                    Turns::ZERO
                } else if r == 1 && !self.guarded[v] {
                    Turns::Finite(1)
                } else {
                    Turns::Infinite
                }
            }
            (NodeKind::Union, Some((a, b))) => {
                (0..=r).map(|i| self.value(a, i) + self.value(b, r - i)).min().unwrap()
            }
            (NodeKind::Join, Some((a, b))) => {
                let (ga, gb) = (self.guards_below[a], self.guards_below[b]);
                self.value(a, r + gb).min(self.value(b, r + ga))
            }
            _ => unreachable!("inner node without children"),
        }
    }

    /// Memoized entries so far.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, u32), Turns)> + '_ {
        self.memo.iter().map(|(&k, &v)| (k, v))
    }

    /// Best split `(i, r - i)` at a union node, smallest `i` on ties.
    fn union_split(&mut self, a: usize, b: usize, r: u32) -> u32 {
        (0..=r).min_by_key(|&i| (self.value(a, i) + self.value(b, r - i), i)).unwrap()
    }

    /// The side a join commits to: 0 for left, 1 for right (left on ties).
    fn join_side(&mut self, a: usize, b: usize, r: u32) -> usize {
        let (ga, gb) = (self.guards_below[a], self.guards_below[b]);
        usize::from(self.value(b, r + ga) < self.value(a, r + gb))
    }

    /// The attack realizing `value(node, r)`; `None` if that value is 0 or
    /// infinite.
    pub fn attack(&mut self, node: usize, r: u32) -> Option<usize> {
        let value = self.value(node, r);
        if !value.is_finite() || value == Turns::ZERO {
            return None;
        }
        let n = self.tree.node(node);
        match (n.kind, n.children) {
            (NodeKind::Leaf(v), _) => Some(v),
            (NodeKind::Union, Some((a, b))) => {
                let i = self.union_split(a, b, r);
                if self.value(a, i) > Turns::ZERO {
                    self.attack(a, i)
                } else {
                    self.attack(b, r - i)
                }
            }
            (NodeKind::Join, Some((a, b))) => {
                if self.join_side(a, b, r) == 0 {
                    self.attack(a, r + self.guards_below[b])
                } else {
                    self.attack(b, r + self.guards_below[a])
                }
            }
            _ => unreachable!("inner node without children"),
        }
    }
}

/// `t(D, r)` on a cograph.
pub fn solve_reservists(tree: &Cotree, d: &GuardConfig, r: u32) -> Turns {
    ReservistTable::new(tree, d).value(tree.root(), r)
}

/// `t_G(D)` on a cograph.
pub fn solve_cograph(g: &Graph, d: &GuardConfig) -> Result<Turns, CotreeError> {
    let tree = build_cotree(g)?;
    Ok(solve_reservists(&tree, d, 1))
}

/// The guarded neighbor of `v` whose common cotree ancestor with `v` is
/// deepest, smallest index on ties. `None` if `v` has no guarded neighbor.
pub fn sstar_choice(g: &Graph, tree: &Cotree, guards: &GuardConfig, v: usize) -> Option<usize> {
    g.neighbors(v)
        .iter()
        .copied()
        .filter(|&u| guards.contains(u))
        .min_by_key(|&u| (std::cmp::Reverse(tree.node(tree.lca(u, v)).depth), u))
}

/// Defender answering by [`sstar_choice`], falling back to a reservist when
/// one is spare.
pub struct SStarDefender {
    tree: Cotree,
}

impl SStarDefender {
    pub fn new(tree: Cotree) -> Self {
        SStarDefender { tree }
    }
}

impl DefenderPolicy for SStarDefender {
    fn defend(&mut self, g: &Graph, state: &GameState, attacked: usize) -> Option<Defense> {
        match sstar_choice(g, &self.tree, &state.guards, attacked) {
            Some(u) => Some(Defense::Guard(u)),
            None if state.reservists >= 2 => Some(Defense::Reservist),
            None => None,
        }
    }
}

/// Attacker following the recursion; re-derives its plan from the current
/// position every turn, so each attack lowers the value by at least one.
pub struct CographAttacker {
    tree: Cotree,
}

impl CographAttacker {
    pub fn new(tree: Cotree) -> Self {
        CographAttacker { tree }
    }
}

impl AttackerPolicy for CographAttacker {
    fn attack(&mut self, _g: &Graph, state: &GameState) -> Option<usize> {
        ReservistTable::new(&self.tree, &state.guards).attack(self.tree.root(), state.reservists)
    }
}

/// One step of the recursion behind a cograph value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum TraceStep {
    Join { id: usize, side: &'static str, reservists: u32, value: Turns },
    Union { id: usize, left: u32, right: u32, value: Turns },
    Leaf { id: usize, vertex: usize, reservists: u32, value: Turns },
}

/// The recursion tree chosen at the start position, in preorder.
pub fn certificate_trace(tree: &Cotree, d: &GuardConfig, r: u32) -> Vec<TraceStep> {
    let mut table = ReservistTable::new(tree, d);
    let mut out = Vec::new();
    let mut stack = vec![(tree.root(), r)];
    while let Some((node, r)) = stack.pop() {
        let value = table.value(node, r);
        let n = tree.node(node);
        match (n.kind, n.children) {
            (NodeKind::Leaf(v), _) => out.push(TraceStep::Leaf { id: node, vertex: v, reservists: r, value }),
            (NodeKind::Union, Some((a, b))) => {
                let i = table.union_split(a, b, r);
                out.push(TraceStep::Union { id: node, left: i, right: r - i, value });
                if i > 0 {
                    stack.push((b, r - i));
                    stack.push((a, i));
                } else {
                    stack.push((b, r));
                }
            }
            (NodeKind::Join, Some((a, b))) => {
                let (side, next) = if table.join_side(a, b, r) == 0 {
                    ("left", (a, r + table.guards_below(b)))
                } else {
                    ("right", (b, r + table.guards_below(a)))
                };
                out.push(TraceStep::Join { id: node, side, reservists: next.1, value });
                if value.is_finite() {
                    stack.push(next);
                }
            }
            _ => unreachable!("inner node without children"),
        }
    }
    out
}
