//! Class-dispatched solving.

use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use edom_core::bipartite::{crown_kernel, eds_decide, normalize_one_side, twin_kernel, EdsCertificate, HallViolator};
use edom_core::cograph::{build_cotree, certificate_trace, solve_reservists, TraceStep};
use edom_core::graph::classify;
use edom_core::tree::{solve_tree, RankingList};
use edom_core::{label_game, ClassTags, Graph, GuardConfig, SolveOptions, Turns};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Solver {
    Tree,
    Cograph,
    BipartiteEds,
    Oracle,
}

impl Solver {
    pub fn name(self) -> &'static str {
        match self {
            Solver::Tree => "tree",
            Solver::Cograph => "cograph",
            Solver::BipartiteEds => "bipartite-eds",
            Solver::Oracle => "oracle",
        }
    }

    fn applies(self, class: &ClassTags) -> bool {
        match self {
            Solver::Tree => class.forest,
            Solver::Cograph => class.cograph,
            Solver::BipartiteEds => class.bipartite,
            Solver::Oracle => true,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Arena { vertices: Vec<usize>, ranking_list: RankingList },
    /// The value is infinite on a forest: no arena exists.
    NoArena,
    Matching { edges: Vec<(usize, usize)>, lone_guards: Vec<usize> },
    HallSet { violator: HallViolator, kernel_vertices: usize },
    Cotree { cotree: String, trace: Vec<TraceStep> },
    Labeling { positions_explored: usize, attacker_positions: usize, first_attack: Option<usize> },
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceSummary {
    pub n: usize,
    pub m: usize,
    pub guards: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub instance: InstanceSummary,
    pub class: ClassTags,
    pub solver: &'static str,
    pub value: Turns,
    pub certificate: Certificate,
    pub wall_ms: f64,
}

fn oracle(g: &Graph, d: &GuardConfig, budget: usize) -> Result<(Turns, Certificate)> {
    let lab = label_game(g, d, &SolveOptions::default().budget(budget))?;
    let value = lab.start_value();
    let first_attack = lab.optimal_attack(d, 1).ok().flatten();
    let cert = Certificate::Labeling {
        positions_explored: lab.positions_explored(),
        attacker_positions: lab.attacker_positions(),
        first_attack,
    };
    Ok((value, cert))
}

fn bipartite(g: &Graph, d: &GuardConfig, budget: usize) -> Result<(Turns, Certificate)> {
    let dec = eds_decide(g, d)?;
    match dec.certificate {
        EdsCertificate::Matching { edges, lone_guards } => Ok((Turns::Infinite, Certificate::Matching { edges, lone_guards })),
        EdsCertificate::HallSet(violator) => {
            // the value is preserved by both kernels, so the oracle runs on the smaller one
            let h = normalize_one_side(g, d)?;
            let twin = twin_kernel(&h, d)?;
            let crown = crown_kernel(&twin.graph, &twin.guards)?;
            log::info!("kernel: {} -> {} -> {} vertices", g.n(), twin.graph.n(), crown.graph.n());
            let (value, _) = oracle(&crown.graph, &crown.guards, budget).context("oracle on the crown kernel")?;
            Ok((value, Certificate::HallSet { violator, kernel_vertices: crown.graph.n() }))
        }
    }
}

/// Picks a solver from the class tags (or honours `forced`) and runs it.
pub fn solve(g: &Graph, d: &GuardConfig, forced: Option<Solver>, budget: usize) -> Result<SolveReport> {
    let start = Instant::now();
    let class = classify(g);
    let solver = match forced {
        Some(s) if !s.applies(&class) => bail!("solver {} does not apply to a {class} graph", s.name()),
        Some(s) => s,
        None if class.forest => Solver::Tree,
        None if class.cograph => Solver::Cograph,
        None if class.bipartite => Solver::BipartiteEds,
        None => Solver::Oracle,
    };
    let (value, certificate) = match solver {
        Solver::Tree => {
            let sol = solve_tree(g, d)?;
            let cert = match (sol.arena, sol.list) {
                (Some(vertices), Some(ranking_list)) => Certificate::Arena { vertices, ranking_list },
                _ => Certificate::NoArena,
            };
            (sol.value, cert)
        }
        Solver::Cograph => {
            let tree = build_cotree(g)?;
            let value = solve_reservists(&tree, d, 1);
            let trace = certificate_trace(&tree, d, 1);
            (value, Certificate::Cotree { cotree: tree.to_string(), trace })
        }
        Solver::BipartiteEds => bipartite(g, d, budget)?,
        Solver::Oracle => oracle(g, d, budget)?,
    };
    Ok(SolveReport {
        instance: InstanceSummary { n: g.n(), m: g.m(), guards: d.len() },
        class,
        solver: solver.name(),
        value,
        certificate,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use edom_core::families::*;
    use edom_core::DEFAULT_BUDGET as B;

    #[test]
    fn dispatch_examples() {
        let f = ladder7();
        let r = solve(&f.graph, &f.guards, None, B).unwrap();
        assert_eq!((r.solver, r.value), ("oracle", Turns::Finite(3)));

        let r = solve(&path(3), &guards(3, &[1]), None, B).unwrap();
        assert_eq!((r.solver, r.value), ("tree", Turns::Finite(2)));
        assert!(matches!(r.certificate, Certificate::Arena { ref vertices, .. } if vertices == &[0, 1, 2]));

        let r = solve(&complete_bipartite(2, 2), &guards(4, &[0]), None, B).unwrap();
        assert_eq!((r.solver, r.value), ("cograph", Turns::Finite(1)));
    }

    #[test]
    fn bipartite_route() {
        let g = edom_core::Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
        let r = solve(&g, &guards(6, &[0, 3]), None, B).unwrap();
        assert_eq!(r.solver, "bipartite-eds");
        assert_eq!(r.value, solve(&g, &guards(6, &[0, 3]), Some(Solver::Oracle), B).unwrap().value);
        let r = solve(&g, &guards(6, &[0, 2, 4]), None, B).unwrap();
        assert_eq!(r.value, Turns::Infinite);
    }

    #[test]
    fn forcing_an_inapplicable_solver_fails() {
        let f = ladder7();
        assert!(solve(&f.graph, &f.guards, Some(Solver::Tree), B).is_err());
        assert!(solve(&f.graph, &f.guards, Some(Solver::BipartiteEds), B).is_err());
    }

    #[test]
    fn budget_is_enforced() {
        let f = ladder7();
        assert!(solve(&f.graph, &f.guards, None, 3).is_err());
    }
}
