//! Interactive play on a terminal-like pair of streams.

use std::io::{BufRead, Write};

use anyhow::{bail, Result};
use clap::ValueEnum;
use edom_core::cograph::{build_cotree, CographAttacker, SStarDefender};
use edom_core::game::{
    estimate_positions, play_match, AttackerPolicy, DefenderPolicy, GameState, LabelingAttacker, LabelingDefender,
    MatchTranscript,
};
use edom_core::graph::is_forest;
use edom_core::tree::{solve_tree, TreeAttacker};
use edom_core::{label_game, Defense, Graph, GuardConfig, Labeling, SolveOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Role {
    Attacker,
    Defender,
}

struct Human<'io, R, W> {
    input: &'io mut R,
    out: &'io mut W,
}

impl<R: BufRead, W: Write> Human<'_, R, W> {
    /// Next vertex typed by the player; `None` on end of input or `q`.
    fn read_vertex(&mut self, prompt: &str, n: usize) -> Option<usize> {
        loop {
            write!(self.out, "{prompt}> ").ok();
            self.out.flush().ok();
            let mut line = String::new();
            if self.input.read_line(&mut line).ok()? == 0 {
                writeln!(self.out).ok();
                return None;
            }
            match line.trim() {
                "q" | "quit" => return None,
                tok => match tok.parse::<usize>() {
                    Ok(v) if v < n => return Some(v),
                    _ => {
                        writeln!(self.out, "enter a vertex index below {n}, or q to quit").ok();
                    }
                },
            }
        }
    }

    fn show(&mut self, state: &GameState) {
        let list: Vec<String> = state.guards.iter().map(|v| v.to_string()).collect();
        writeln!(self.out, "guards: {}", list.join(" ")).ok();
    }
}

impl<R: BufRead, W: Write> AttackerPolicy for Human<'_, R, W> {
    fn attack(&mut self, g: &Graph, state: &GameState) -> Option<usize> {
        self.show(state);
        loop {
            let v = self.read_vertex("attack", g.n())?;
            if !state.guards.contains(v) {
                return Some(v);
            }
            writeln!(self.out, "vertex {v} is guarded; attack an unguarded vertex").ok();
        }
    }

    fn observe(&mut self, attacked: usize, defense: Defense, _next: &GameState) {
        match defense {
            Defense::Guard(u) => writeln!(self.out, "defender moves the guard on {u} to {attacked}").ok(),
            Defense::Reservist => writeln!(self.out, "defender places a reservist on {attacked}").ok(),
        };
    }
}

impl<R: BufRead, W: Write> DefenderPolicy for Human<'_, R, W> {
    fn defend(&mut self, g: &Graph, state: &GameState, attacked: usize) -> Option<Defense> {
        self.show(state);
        writeln!(self.out, "attacker hits {attacked}").ok();
        if !g.neighbors(attacked).iter().any(|&u| state.guards.contains(u)) {
            writeln!(self.out, "no guard is adjacent to {attacked}").ok();
            return None;
        }
        loop {
            let u = self.read_vertex("move guard from", g.n())?;
            if state.guards.contains(u) && g.has_edge(u, attacked) {
                return Some(Defense::Guard(u));
            }
            writeln!(self.out, "{u} holds no guard adjacent to {attacked}").ok();
        }
    }
}

/// Machine attacker when the game graph is too large to label.
fn fallback_attacker(g: &Graph, d: &GuardConfig) -> Result<Box<dyn AttackerPolicy>> {
    if is_forest(g) {
        if let Some(arena) = solve_tree(g, d)?.arena {
            return Ok(Box::new(TreeAttacker::new(g, d, &arena)?));
        }
        bail!("no winning arena: the guards hold forever and there is no strategy to show");
    }
    if let Ok(tree) = build_cotree(g) {
        return Ok(Box::new(CographAttacker::new(tree)));
    }
    bail!("instance is over the oracle budget and has no polynomial attacker strategy")
}

fn fallback_defender(g: &Graph) -> Result<Box<dyn DefenderPolicy>> {
    match build_cotree(g) {
        Ok(tree) => Ok(Box::new(SStarDefender::new(tree))),
        Err(_) => bail!("instance is over the oracle budget and has no polynomial defender strategy"),
    }
}

/// Plays the human (on `input`/`out`) in `role` against an optimal machine.
pub fn play<R: BufRead, W: Write>(
    g: &Graph,
    d: &GuardConfig,
    role: Role,
    limit: u32,
    budget: usize,
    input: &mut R,
    out: &mut W,
) -> Result<MatchTranscript> {
    let lab: Option<Labeling> = if estimate_positions(g.n(), d.len(), 1) <= budget as f64 {
        label_game(g, d, &SolveOptions::default().budget(budget)).ok()
    } else {
        None
    };
    let mut human = Human { input, out };
    let transcript = match role {
        Role::Defender => {
            let mut machine: Box<dyn AttackerPolicy + '_> = match &lab {
                Some(lab) => Box::new(LabelingAttacker::new(lab)),
                None => fallback_attacker(g, d)?,
            };
            play_match(g, d, &mut *machine, &mut human, limit)?
        }
        Role::Attacker => {
            let mut machine: Box<dyn DefenderPolicy + '_> = match &lab {
                Some(lab) => Box::new(LabelingDefender::new(lab)),
                None => fallback_defender(g)?,
            };
            play_match(g, d, &mut human, &mut *machine, limit)?
        }
    };
    Ok(transcript)
}
