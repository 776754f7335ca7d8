use super::{contracted_tree, is_arena, td_decomposition, TreeError};
use crate::game::{AttackerPolicy, Defense, GameState};
use crate::graph::{Graph, GuardConfig};

/// Attacker driven by an arena: attack the shallowest remaining vertex of a
/// treedepth decomposition of the contracted tree, then shrink the arena to
/// the side the moved guard left behind.
pub struct TreeAttacker {
    host: Graph,
    inside: Vec<bool>,
    /// Decomposition depth of each unguarded arena vertex.
    depth: Vec<u32>,
    broken: bool,
}

impl TreeAttacker {
    pub fn new(t: &Graph, d: &GuardConfig, arena: &[usize]) -> Result<Self, TreeError> {
        is_arena(t, d, arena)?;
        let (contracted, mapping) = contracted_tree(t, d, arena);
        let dec = td_decomposition(&contracted);
        let mut depth = vec![u32::MAX; t.n()];
        for (local, &v) in mapping.iter().enumerate() {
            depth[v] = dec.depth[local];
        }
        let mut inside = vec![false; t.n()];
        for &v in arena {
            inside[v] = true;
        }
        Ok(TreeAttacker { host: t.clone(), inside, depth, broken: false })
    }
}

impl AttackerPolicy for TreeAttacker {
    fn attack(&mut self, _g: &Graph, state: &GameState) -> Option<usize> {
        if self.broken {
            return None;
        }
        self.host
            .vertices()
            .filter(|&v| self.inside[v] && !state.guards.contains(v))
            .min_by_key(|&v| (self.depth[v], v))
    }

    fn observe(&mut self, attacked: usize, defense: Defense, _next: &GameState) {
        let Defense::Guard(u) = defense else {
            self.broken = true;
            return;
        };
        let w = self.host.neighbors(u).iter().copied().find(|&w| w != attacked && self.inside[w]);
        let Some(w) = w.filter(|_| self.inside[u]) else {
            self.broken = true;
            return;
        };
        // keep the component of w once u is gone
        let mut keep = vec![false; self.host.n()];
        keep[w] = true;
        let mut stack = vec![w];
        while let Some(x) = stack.pop() {
            for &y in self.host.neighbors(x) {
                if self.inside[y] && y != u && !keep[y] {
                    keep[y] = true;
                    stack.push(y);
                }
            }
        }
        self.inside = keep;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;
    use crate::game::{label_game, play_match, LabelingDefender, MatchOutcome, SolveOptions};
    use crate::tree::solve_tree;

    fn check(t: &Graph, d: &GuardConfig, bound: u32) {
        let sol = solve_tree(t, d).unwrap();
        let attacker = TreeAttacker::new(t, d, sol.arena.as_ref().unwrap()).unwrap();
        let lab = label_game(t, d, &SolveOptions::default()).unwrap();
        let tr = play_match(t, d, attacker, LabelingDefender::new(&lab), 50).unwrap();
        let MatchOutcome::AttackerWon { turns } = tr.outcome else { panic!("survived: {tr:?}") };
        assert!(turns <= bound);
    }

    #[test]
    fn wins_within_value() {
        check(&path(3), &guards(3, &[1]), 2);
        check(&star(3), &guards(4, &[0]), 2);
        let f = arena_tree18();
        check(&f.graph, &f.guards, 3);
    }

    #[test]
    fn rejects_non_arena() {
        assert!(TreeAttacker::new(&path(3), &guards(3, &[1]), &[0, 1]).is_err());
    }
}
