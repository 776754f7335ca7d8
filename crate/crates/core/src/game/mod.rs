//! Exact game solver by retrograde labeling of the reachable position graph.
//!
//! Attacker positions are `(guards, reservists)`; defender positions add the
//! attacked vertex. Labels follow the min/max rules: an attacker position is
//! worth one more than its cheapest attack, a defender position is worth its
//! most resilient defense, and a defender position without any defense is
//! worth 0. Unlabeled positions after the backward sweep are `Infinite`.
//!
//! The plain game is the reservist game with one reservist: placing the last
//! reservist loses, so a lone reservist is never a real defense.

mod key;
mod play;

pub use play::{
    play_match, play_match_with_reservists, AttackerPolicy, DefenderPolicy, GameState, LabelingAttacker,
    LabelingDefender, MatchOutcome, MatchTranscript, MoveRecord, PlayError,
};

use std::collections::{HashMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GuardConfig};
use crate::turns::Turns;
use key::{ConfigKey, WideKey};

/// Default cap on explored positions.
pub const DEFAULT_BUDGET: usize = 10_000_000;

const UNLABELED: u32 = u32::MAX;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GameError {
    #[error("position budget of {budget} exceeded; use a class-specific solver or a smaller instance")]
    BudgetExceeded { budget: usize },
    #[error("position is not part of the labeled game")]
    Unlabeled,
    #[error("guard {guard} out of range for a graph on {n} vertices")]
    GuardOutOfRange { guard: usize, n: usize },
}

/// A game position.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Position {
    AttackerToMove { guards: GuardConfig, reservists: u32 },
    DefenderToMove { guards: GuardConfig, reservists: u32, attacked: usize },
}

impl Position {
    pub fn attacker(guards: GuardConfig, reservists: u32) -> Self {
        Position::AttackerToMove { guards, reservists }
    }

    pub fn defender(guards: GuardConfig, reservists: u32, attacked: usize) -> Self {
        Position::DefenderToMove { guards, reservists, attacked }
    }
}

/// A defender answer: slide the guard standing on a neighbor, or call a reservist.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Defense {
    Guard(usize),
    Reservist,
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Reservist count; 1 is the plain game.
    pub reservists: u32,
    /// Attacks are limited to these vertices when set.
    pub restrict: Option<Vec<usize>>,
    /// Maximum number of attacker plus defender positions.
    pub budget: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { reservists: 1, restrict: None, budget: DEFAULT_BUDGET }
    }
}

impl SolveOptions {
    pub fn reservists(mut self, r: u32) -> Self {
        self.reservists = r;
        self
    }

    pub fn restrict(mut self, side: Vec<usize>) -> Self {
        self.restrict = Some(side);
        self
    }

    pub fn budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }
}

/// `t_G(D)` in the plain game with default options.
pub fn solve_exact(g: &Graph, d: &GuardConfig) -> Result<Turns, GameError> {
    solve_exact_with(g, d, &SolveOptions::default())
}

pub fn solve_exact_with(g: &Graph, d: &GuardConfig, opts: &SolveOptions) -> Result<Turns, GameError> {
    Ok(label_game(g, d, opts)?.start_value())
}

/// Rough upper bound on the number of positions reachable from `d`.
pub fn estimate_positions(n: usize, guards: usize, reservists: u32) -> f64 {
    let binom = |k: usize| -> f64 {
        if k > n {
            return 0.0;
        }
        (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
    };
    let layers = reservists.max(1) as usize;
    (0..layers).map(|j| binom(guards + j) * (n + 1) as f64).sum()
}

/// Builds and labels every position reachable from `(d, opts.reservists)`.
pub fn label_game(g: &Graph, d: &GuardConfig, opts: &SolveOptions) -> Result<Labeling, GameError> {
    if let Some(&v) = d.vertices().last() {
        if v >= g.n() {
            return Err(GameError::GuardOutOfRange { guard: v, n: g.n() });
        }
    }
    let restrict = opts.restrict.as_ref().map(|side| {
        let mut flags = vec![false; g.n()];
        for &v in side {
            if v < g.n() {
                flags[v] = true;
            }
        }
        flags
    });
    let tables = if g.has_masks() {
        Tables::Mask(Table::<u64>::build(g, d, opts.reservists, restrict.as_deref(), opts.budget)?)
    } else {
        Tables::Wide(Table::<WideKey>::build(g, d, opts.reservists, restrict.as_deref(), opts.budget)?)
    };
    Ok(Labeling { graph: g.clone(), restrict, tables })
}

/// Position graph of one reachable subgame with its labels.
struct Table<K> {
    keys: Vec<(K, u32)>,
    index: HashMap<(K, u32), u32>,
    /// Defender positions of attacker node `i` are `def_start[i]..def_start[i + 1]`.
    def_start: Vec<u32>,
    def_attack: Vec<u32>,
    def_parent: Vec<u32>,
    /// Successors of defender node `j` are `opt[opt_start[j]..opt_start[j + 1]]`.
    opt_start: Vec<u32>,
    opt: Vec<u32>,
    att_label: Vec<u32>,
    def_label: Vec<u32>,
}

impl<K: ConfigKey> Table<K> {
    fn build(
        g: &Graph,
        d: &GuardConfig,
        reservists: u32,
        restrict: Option<&[bool]>,
        budget: usize,
    ) -> Result<Self, GameError> {
        let start = (K::encode(d), reservists.min(g.n() as u32 + 1));
        let mut t = Table {
            keys: vec![start.clone()],
            index: HashMap::from([(start, 0)]),
            def_start: vec![0],
            def_attack: Vec::new(),
            def_parent: Vec::new(),
            opt_start: vec![0],
            opt: Vec::new(),
            att_label: Vec::new(),
            def_label: Vec::new(),
        };
        let mut guarded = Vec::new();
        let mut i = 0;
        // nodes are expanded in creation order, so `def_start` stays a prefix sum
        while i < t.keys.len() {
            let (key, r) = t.keys[i].clone();
            if r > 0 {
                for v in g.vertices() {
                    if key.contains(v) || restrict.is_some_and(|side| !side[v]) {
                        continue;
                    }
                    let j = t.def_attack.len() as u32;
                    t.def_attack.push(v as u32);
                    t.def_parent.push(i as u32);
                    key.guarded_neighbors(g, v, &mut guarded);
                    let mut succ: Vec<(K, u32)> = guarded.iter().map(|&u| (key.moved(u, v), r)).collect();
                    if r >= 2 {
                        succ.push((key.with(v), r - 1));
                    }
                    for s in succ {
                        let next = t.keys.len() as u32;
                        let id = *t.index.entry(s.clone()).or_insert_with(|| next);
                        if id == next {
                            t.keys.push(s);
                        }
                        t.opt.push(id);
                    }
                    t.opt_start.push(t.opt.len() as u32);
                    debug_assert_eq!(t.opt_start.len(), j as usize + 2);
                }
            }
            t.def_start.push(t.def_attack.len() as u32);
            if t.keys.len() + t.def_attack.len() > budget {
                return Err(GameError::BudgetExceeded { budget });
            }
            i += 1;
        }
        t.label();
        Ok(t)
    }

    fn defenders_of(&self, a: usize) -> std::ops::Range<usize> {
        self.def_start[a] as usize..self.def_start[a + 1] as usize
    }

    fn options_of(&self, j: usize) -> &[u32] {
        &self.opt[self.opt_start[j] as usize..self.opt_start[j + 1] as usize]
    }

    fn label(&mut self) {
        let na = self.keys.len();
        let nd = self.def_attack.len();
        // predecessor lists in CSR form
        let mut pred_start = vec![0u32; na + 1];
        for &a in &self.opt {
            pred_start[a as usize + 1] += 1;
        }
        for a in 0..na {
            pred_start[a + 1] += pred_start[a];
        }
        let mut fill = pred_start.clone();
        let mut pred = vec![0u32; self.opt.len()];
        for j in 0..nd {
            for &a in self.options_of(j) {
                pred[fill[a as usize] as usize] = j as u32;
                fill[a as usize] += 1;
            }
        }

        let mut att = vec![UNLABELED; na];
        let mut def = vec![UNLABELED; nd];
        let mut remaining: Vec<u32> = (0..nd).map(|j| self.opt_start[j + 1] - self.opt_start[j]).collect();
        let mut queue = VecDeque::new();
        for (a, (_, r)) in self.keys.iter().enumerate() {
            if *r == 0 {
                att[a] = 0;
                queue.push_back(a as u32);
            }
        }
        for j in 0..nd {
            if remaining[j] == 0 {
                def[j] = 0;
                let p = self.def_parent[j] as usize;
                if att[p] == UNLABELED {
                    att[p] = 1;
                    queue.push_back(p as u32);
                }
            }
        }
        while let Some(a) = queue.pop_front() {
            let level = att[a as usize];
            for &j in &pred[pred_start[a as usize] as usize..pred_start[a as usize + 1] as usize] {
                let j = j as usize;
                remaining[j] -= 1;
                if remaining[j] == 0 {
                    def[j] = level;
                    let p = self.def_parent[j] as usize;
                    if att[p] == UNLABELED {
                        att[p] = level + 1;
                        queue.push_back(p as u32);
                    }
                }
            }
        }
        self.att_label = att;
        self.def_label = def;
    }

    fn node(&self, d: &GuardConfig, r: u32) -> Option<usize> {
        self.index.get(&(K::encode(d), r)).map(|&i| i as usize)
    }

    fn defender_node(&self, a: usize, v: usize) -> Option<usize> {
        self.defenders_of(a).find(|&j| self.def_attack[j] as usize == v)
    }

    fn check_fixpoint(&self) -> bool {
        let att_ok = (0..self.keys.len()).all(|a| {
            if self.keys[a].1 == 0 {
                return self.att_label[a] == 0;
            }
            let best = self.defenders_of(a).map(|j| self.def_label[j]).min().unwrap_or(UNLABELED);
            let expect = if best == UNLABELED { UNLABELED } else { best + 1 };
            self.att_label[a] == expect
        });
        let def_ok = (0..self.def_attack.len()).all(|j| {
            let expect = self.options_of(j).iter().map(|&a| self.att_label[a as usize]).max().unwrap_or(0);
            self.def_label[j] == expect
        });
        att_ok && def_ok
    }
}

fn to_turns(label: u32) -> Turns {
    if label == UNLABELED {
        Turns::Infinite
    } else {
        Turns::Finite(label)
    }
}

enum Tables {
    Mask(Table<u64>),
    Wide(Table<WideKey>),
}

macro_rules! with_table {
    ($self:expr, $t:ident => $body:expr) => {
        match &$self.tables {
            Tables::Mask($t) => $body,
            Tables::Wide($t) => $body,
        }
    };
}

/// Labels of every position reachable from the start of one solve.
pub struct Labeling {
    graph: Graph,
    restrict: Option<Vec<bool>>,
    tables: Tables,
}

impl Labeling {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn start(&self) -> Position {
        with_table!(self, t => {
            let (key, r) = &t.keys[0];
            Position::attacker(key.decode(), *r)
        })
    }

    pub fn start_value(&self) -> Turns {
        with_table!(self, t => to_turns(t.att_label[0]))
    }

    /// Attacker plus defender positions in the table.
    pub fn positions_explored(&self) -> usize {
        with_table!(self, t => t.keys.len() + t.def_attack.len())
    }

    pub fn attacker_positions(&self) -> usize {
        with_table!(self, t => t.keys.len())
    }

    /// Re-applies both labeling rules everywhere; true when nothing changes.
    pub fn check_fixpoint(&self) -> bool {
        with_table!(self, t => t.check_fixpoint())
    }

    pub fn is_legal_attack(&self, guards: &GuardConfig, v: usize) -> bool {
        v < self.graph.n() && !guards.contains(v) && self.restrict.as_ref().is_none_or(|side| side[v])
    }

    pub fn label(&self, p: &Position) -> Option<Turns> {
        with_table!(self, t => match p {
            Position::AttackerToMove { guards, reservists } => {
                t.node(guards, *reservists).map(|a| to_turns(t.att_label[a]))
            }
            Position::DefenderToMove { guards, reservists, attacked } => t
                .node(guards, *reservists)
                .and_then(|a| t.defender_node(a, *attacked))
                .map(|j| to_turns(t.def_label[j])),
        })
    }

    /// An attack that lowers the label by one; `None` when the label is
    /// `Infinite` or 0.
    pub fn optimal_attack(&self, guards: &GuardConfig, reservists: u32) -> Result<Option<usize>, GameError> {
        with_table!(self, t => {
            let a = t.node(guards, reservists).ok_or(GameError::Unlabeled)?;
            let label = t.att_label[a];
            if label == UNLABELED || label == 0 {
                return Ok(None);
            }
            Ok(t.defenders_of(a).find(|&j| t.def_label[j].wrapping_add(1) == label).map(|j| t.def_attack[j] as usize))
        })
    }

    /// A defense keeping the label unchanged; `None` when no legal defense
    /// exists.
    pub fn optimal_defense(
        &self,
        guards: &GuardConfig,
        reservists: u32,
        attacked: usize,
    ) -> Result<Option<Defense>, GameError> {
        let options = self.defenses(guards, reservists, attacked)?;
        let Some(label) = self.label(&Position::defender(guards.clone(), reservists, attacked)) else {
            return Err(GameError::Unlabeled);
        };
        Ok(options.into_iter().find_map(|(defense, value)| (value == label).then_some(defense)))
    }

    /// Every real defense at a defender position with the label it leads to.
    pub fn defenses(
        &self,
        guards: &GuardConfig,
        reservists: u32,
        attacked: usize,
    ) -> Result<Vec<(Defense, Turns)>, GameError> {
        if self.label(&Position::defender(guards.clone(), reservists, attacked)).is_none() {
            return Err(GameError::Unlabeled);
        }
        let mut out = Vec::new();
        for &u in self.graph.neighbors(attacked) {
            if guards.contains(u) {
                let next = Position::attacker(guards.moved(u, attacked), reservists);
                out.push((Defense::Guard(u), self.label(&next).ok_or(GameError::Unlabeled)?));
            }
        }
        if reservists >= 2 {
            let next = Position::attacker(guards.with(attacked), reservists - 1);
            out.push((Defense::Reservist, self.label(&next).ok_or(GameError::Unlabeled)?));
        }
        Ok(out)
    }
}

/// JSON record of an oracle run.
#[derive(Clone, Debug, Serialize)]
pub struct OracleRecord {
    pub value: Turns,
    pub positions_explored: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_attack: Option<usize>,
    pub certificate_kind: &'static str,
}

impl OracleRecord {
    pub fn from_labeling(lab: &Labeling) -> Self {
        let first_attack = match lab.start() {
            Position::AttackerToMove { guards, reservists } => lab.optimal_attack(&guards, reservists).ok().flatten(),
            Position::DefenderToMove { .. } => None,
        };
        OracleRecord {
            value: lab.start_value(),
            positions_explored: lab.positions_explored(),
            first_attack,
            certificate_kind: "labeling",
        }
    }
}
