//! Move-by-move match simulation with legality checks.

use serde::Serialize;
use thiserror::Error;

use super::{Defense, Labeling, Position};
use crate::graph::{Graph, GuardConfig};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameState {
    pub guards: GuardConfig,
    pub reservists: u32,
}

impl GameState {
    pub fn position(&self) -> Position {
        Position::attacker(self.guards.clone(), self.reservists)
    }
}

pub trait AttackerPolicy {
    /// The next attack, or `None` to stop.
    fn attack(&mut self, g: &Graph, state: &GameState) -> Option<usize>;

    /// Called after every answered attack with the resulting state.
    fn observe(&mut self, _attacked: usize, _defense: Defense, _next: &GameState) {}
}

pub trait DefenderPolicy {
    /// The answer to an attack on `attacked`, or `None` to concede.
    fn defend(&mut self, g: &Graph, state: &GameState, attacked: usize) -> Option<Defense>;
}

impl<P: AttackerPolicy + ?Sized> AttackerPolicy for &mut P {
    fn attack(&mut self, g: &Graph, state: &GameState) -> Option<usize> {
        (**self).attack(g, state)
    }

    fn observe(&mut self, attacked: usize, defense: Defense, next: &GameState) {
        (**self).observe(attacked, defense, next)
    }
}

impl<P: DefenderPolicy + ?Sized> DefenderPolicy for &mut P {
    fn defend(&mut self, g: &Graph, state: &GameState, attacked: usize) -> Option<Defense> {
        (**self).defend(g, state, attacked)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MoveRecord {
    pub attacked: usize,
    /// `None` when the defender had no answer.
    pub defense: Option<Defense>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "result")]
pub enum MatchOutcome {
    AttackerWon { turns: u32 },
    /// Turn limit reached or the attacker stopped.
    DefenderSurvived { turns: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchTranscript {
    pub initial: GuardConfig,
    pub reservists: u32,
    pub moves: Vec<MoveRecord>,
    pub outcome: MatchOutcome,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PlayError {
    #[error("illegal attack on {vertex} at {position:?}")]
    IllegalAttack { vertex: usize, position: Position },
    #[error("illegal defense {defense:?} at {position:?}")]
    IllegalDefense { defense: Defense, position: Position },
}

/// Plays the plain game; the defender may only slide guards.
pub fn play_match(
    g: &Graph,
    d: &GuardConfig,
    attacker: impl AttackerPolicy,
    defender: impl DefenderPolicy,
    limit: u32,
) -> Result<MatchTranscript, PlayError> {
    run(g, d, 1, false, attacker, defender, limit)
}

/// Plays the reservist game starting with `reservists` reservists.
pub fn play_match_with_reservists(
    g: &Graph,
    d: &GuardConfig,
    reservists: u32,
    attacker: impl AttackerPolicy,
    defender: impl DefenderPolicy,
    limit: u32,
) -> Result<MatchTranscript, PlayError> {
    run(g, d, reservists, true, attacker, defender, limit)
}

fn run(
    g: &Graph,
    d: &GuardConfig,
    reservists: u32,
    allow_reservists: bool,
    mut attacker: impl AttackerPolicy,
    mut defender: impl DefenderPolicy,
    limit: u32,
) -> Result<MatchTranscript, PlayError> {
    let mut state = GameState { guards: d.clone(), reservists };
    let mut moves = Vec::new();
    let finish = |moves, outcome| MatchTranscript { initial: d.clone(), reservists, moves, outcome };
    if reservists == 0 {
        return Ok(finish(moves, MatchOutcome::AttackerWon { turns: 0 }));
    }
    for turn in 1..=limit {
        let Some(v) = attacker.attack(g, &state) else {
            return Ok(finish(moves, MatchOutcome::DefenderSurvived { turns: turn - 1 }));
        };
        if v >= g.n() || state.guards.contains(v) {
            return Err(PlayError::IllegalAttack { vertex: v, position: state.position() });
        }
        let defense = defender.defend(g, &state, v);
        let next = match defense {
            None => None,
            Some(Defense::Guard(u)) if state.guards.contains(u) && g.has_edge(u, v) => {
                Some(GameState { guards: state.guards.moved(u, v), reservists: state.reservists })
            }
            Some(Defense::Reservist) if allow_reservists => (state.reservists > 1)
                .then(|| GameState { guards: state.guards.with(v), reservists: state.reservists - 1 }),
            Some(bad) => {
                return Err(PlayError::IllegalDefense {
                    defense: bad,
                    position: Position::defender(state.guards.clone(), state.reservists, v),
                })
            }
        };
        moves.push(MoveRecord { attacked: v, defense });
        let Some(next) = next else {
            return Ok(finish(moves, MatchOutcome::AttackerWon { turns: turn }));
        };
        attacker.observe(v, defense.expect("answered"), &next);
        state = next;
    }
    Ok(finish(moves, MatchOutcome::DefenderSurvived { turns: limit }))
}

/// Attacker following a labeling; keeps attacking the smallest legal vertex
/// once the label is `Infinite`.
pub struct LabelingAttacker<'a> {
    lab: &'a Labeling,
}

impl<'a> LabelingAttacker<'a> {
    pub fn new(lab: &'a Labeling) -> Self {
        LabelingAttacker { lab }
    }
}

impl AttackerPolicy for LabelingAttacker<'_> {
    fn attack(&mut self, g: &Graph, state: &GameState) -> Option<usize> {
        self.lab
            .optimal_attack(&state.guards, state.reservists)
            .ok()
            .flatten()
            .or_else(|| g.vertices().find(|&v| self.lab.is_legal_attack(&state.guards, v)))
    }
}

/// Defender following a labeling.
pub struct LabelingDefender<'a> {
    lab: &'a Labeling,
}

impl<'a> LabelingDefender<'a> {
    pub fn new(lab: &'a Labeling) -> Self {
        LabelingDefender { lab }
    }
}

impl DefenderPolicy for LabelingDefender<'_> {
    fn defend(&mut self, g: &Graph, state: &GameState, attacked: usize) -> Option<Defense> {
        match self.lab.optimal_defense(&state.guards, state.reservists, attacked) {
            Ok(defense) => defense,
            // off the labeled subgame: any guarded neighbor
            Err(_) => g.neighbors(attacked).iter().find(|&&u| state.guards.contains(u)).map(|&u| Defense::Guard(u)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;
    use crate::game::{label_game, SolveOptions};

    #[test]
    fn optimal_play_on_ladder7() {
        let f = ladder7();
        let lab = label_game(&f.graph, &f.guards, &SolveOptions::default()).unwrap();
        let t = play_match(&f.graph, &f.guards, LabelingAttacker::new(&lab), LabelingDefender::new(&lab), 50).unwrap();
        assert_eq!(t.outcome, MatchOutcome::AttackerWon { turns: 3 });
        assert_eq!(t.moves.len(), 3);
        assert_eq!(t.moves[2].defense, None);

        let e = ladder7_eternal();
        let lab = label_game(&e.graph, &e.guards, &SolveOptions::default()).unwrap();
        let t = play_match(&e.graph, &e.guards, LabelingAttacker::new(&lab), LabelingDefender::new(&lab), 50).unwrap();
        assert_eq!(t.outcome, MatchOutcome::DefenderSurvived { turns: 50 });
    }

    #[test]
    fn p3_middle_guard() {
        let g = path(3);
        let d = guards(3, &[1]);
        let lab = label_game(&g, &d, &SolveOptions::default()).unwrap();
        let t = play_match(&g, &d, LabelingAttacker::new(&lab), LabelingDefender::new(&lab), 10).unwrap();
        assert_eq!(t.outcome, MatchOutcome::AttackerWon { turns: 2 });
    }

    struct Fixed(Vec<usize>);

    impl AttackerPolicy for Fixed {
        fn attack(&mut self, _: &Graph, _: &GameState) -> Option<usize> {
            (!self.0.is_empty()).then(|| self.0.remove(0))
        }
    }

    struct Reserve;

    impl DefenderPolicy for Reserve {
        fn defend(&mut self, _: &Graph, _: &GameState, _: usize) -> Option<Defense> {
            Some(Defense::Reservist)
        }
    }

    #[test]
    fn illegal_moves_are_reported() {
        let g = path(3);
        let d = guards(3, &[1]);
        let lab = label_game(&g, &d, &SolveOptions::default()).unwrap();
        let err = play_match(&g, &d, Fixed(vec![1]), LabelingDefender::new(&lab), 5).unwrap_err();
        assert_eq!(err, PlayError::IllegalAttack { vertex: 1, position: Position::attacker(d.clone(), 1) });
        let err = play_match(&g, &d, Fixed(vec![0]), Reserve, 5).unwrap_err();
        assert!(matches!(err, PlayError::IllegalDefense { defense: Defense::Reservist, .. }));
    }

    #[test]
    fn reservists_run_out() {
        let g = Graph::empty(3);
        let t = play_match_with_reservists(&g, &GuardConfig::empty(), 2, Fixed(vec![0, 1]), Reserve, 5).unwrap();
        assert_eq!(t.outcome, MatchOutcome::AttackerWon { turns: 2 });
        assert_eq!(t.moves[1].defense, Some(Defense::Reservist));
        let t = play_match_with_reservists(&g, &GuardConfig::empty(), 4, Fixed(vec![0]), Reserve, 5).unwrap();
        assert_eq!(t.outcome, MatchOutcome::DefenderSurvived { turns: 1 });
    }
}
