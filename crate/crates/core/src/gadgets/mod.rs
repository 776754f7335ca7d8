//! Generators for the hardness reductions and a small-scale checker.
//!
//! Vertex numbering follows construction order, so identical inputs give
//! identical instances.

mod cnf;

pub use cnf::{solve_unordered_cnf, CnfError, Literal, Side, UnorderedCnf, Winner, CNF_SOLVE_LIMIT};

use serde::Serialize;

use crate::game::{estimate_positions, solve_exact_with, SolveOptions, DEFAULT_BUDGET};
use crate::graph::{alpha_bruteforce, bipartition, Graph, GuardConfig, ALPHA_LIMIT};
use crate::turns::Turns;

/// The reduction an instance came from, with its source data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Premise {
    ConpBipartite { graph: Graph, k: usize },
    ConpSplit { graph: Graph, k: usize, complete_guards: bool },
    Pspace { phi: UnorderedCnf },
    W1 { graph: Graph, k: usize },
}

impl Premise {
    pub fn name(&self) -> &'static str {
        match self {
            Premise::ConpBipartite { .. } => "conp-bip",
            Premise::ConpSplit { .. } => "conp-split",
            Premise::Pspace { .. } => "pspace",
            Premise::W1 { .. } => "w1",
        }
    }
}

/// A named group of gadget vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Role {
    pub name: String,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetInstance {
    pub graph: Graph,
    pub guards: GuardConfig,
    /// The attacker should win within `bound` turns exactly when the source
    /// instance is a yes-instance of the reduction.
    pub bound: u32,
    pub roles: Vec<Role>,
    pub premise: Premise,
}

/// JSON sidecar written next to a generated instance.
#[derive(Clone, Debug, Serialize)]
pub struct GadgetSidecar<'a> {
    pub kind: &'static str,
    pub n: usize,
    pub guards: usize,
    pub bound: u32,
    pub roles: &'a [Role],
}

impl GadgetInstance {
    pub fn sidecar(&self) -> GadgetSidecar<'_> {
        GadgetSidecar {
            kind: self.premise.name(),
            n: self.graph.n(),
            guards: self.guards.len(),
            bound: self.bound,
            roles: &self.roles,
        }
    }

    pub fn role(&self, name: &str) -> Option<&[usize]> {
        self.roles.iter().find(|r| r.name == name).map(|r| r.vertices.as_slice())
    }
}

struct Builder {
    n: usize,
    edges: Vec<(usize, usize)>,
    guarded: Vec<bool>,
    names: Vec<String>,
    roles: Vec<Role>,
}

impl Builder {
    fn new() -> Self {
        Builder { n: 0, edges: Vec::new(), guarded: Vec::new(), names: Vec::new(), roles: Vec::new() }
    }

    fn block(&mut self, role: String, size: usize, guarded: bool, name: impl Fn(usize) -> String) -> Vec<usize> {
        let vs: Vec<usize> = (self.n..self.n + size).collect();
        self.n += size;
        self.guarded.extend(std::iter::repeat_n(guarded, size));
        self.names.extend((0..size).map(name));
        self.roles.push(Role { name: role, vertices: vs.clone() });
        vs
    }

    fn join(&mut self, a: &[usize], b: &[usize]) {
        for &u in a {
            for &v in b {
                self.edges.push((u, v));
            }
        }
    }

    fn finish(self, bound: u32, premise: Premise) -> GadgetInstance {
        let graph = Graph::from_edges(self.n, &self.edges)
            .and_then(|g| g.with_names(self.names))
            .expect("gadget edges are valid");
        let guards = GuardConfig::from_flags(&self.guarded);
        GadgetInstance { graph, guards, bound, roles: self.roles, premise }
    }
}

fn conp_blocks(g: &Graph, k: usize) -> (Builder, Vec<usize>, Vec<Vec<usize>>) {
    let mut b = Builder::new();
    let u = b.block("U".into(), k, false, |i| format!("u{}", i + 1));
    let v = b.block("V".into(), g.n(), true, |i| format!("v{}", i + 1));
    b.join(&u, &v);
    let mut t_blocks = Vec::new();
    for (i, j) in g.edges() {
        let tag = format!("{}-{}", i + 1, j + 1);
        let s = b.block(format!("S[{tag}]"), k + 1, false, |a| format!("s{tag}.{}", a + 1));
        let t = b.block(format!("T[{tag}]"), k, true, |a| format!("t{tag}.{}", a + 1));
        b.join(&s, &t);
        b.join(&s, &[v[i], v[j]]);
        t_blocks.push(t);
    }
    (b, v, t_blocks)
}

/// Bipartite gadget: the attacker wins within `2k + 1` turns iff `g` has no
/// independent set of size `k`.
pub fn gen_conp_bipartite(g: &Graph, k: usize) -> GadgetInstance {
    assert!(k >= 1 && g.n() >= 1, "need k >= 1 and a nonempty graph");
    let (b, _, _) = conp_blocks(g, k);
    b.finish(2 * k as u32 + 1, Premise::ConpBipartite { graph: g.clone(), k })
}

/// The bipartite gadget plus a guarded vertex `s` adjacent to `V` and every
/// `T` block; `complete_guards` also joins all guards pairwise.
pub fn gen_conp_split(g: &Graph, k: usize, complete_guards: bool) -> GadgetInstance {
    assert!(k >= 1 && g.n() >= 1, "need k >= 1 and a nonempty graph");
    let (mut b, v, t_blocks) = conp_blocks(g, k);
    let s = b.block("s".into(), 1, true, |_| "s".into());
    b.join(&s, &v);
    for t in &t_blocks {
        b.join(&s, t);
    }
    if complete_guards {
        let guards: Vec<usize> = (0..b.n).filter(|&x| b.guarded[x]).collect();
        for (i, &x) in guards.iter().enumerate() {
            for &y in &guards[i + 1..] {
                b.edges.push((x, y));
            }
        }
    }
    b.finish(2 * k as u32 + 1, Premise::ConpSplit { graph: g.clone(), k, complete_guards })
}

/// `M = 8 k^2` for the PSPACE construction.
pub fn pspace_m(k: usize) -> usize {
    8 * k * k
}

/// 2-unipolar gadget: the attacker wins within `k + M` turns iff Falsifier
/// wins the formula game.
pub fn gen_pspace_unipolar(phi: &UnorderedCnf) -> GadgetInstance {
    let k = phi.k;
    let m = pspace_m(k);
    let mut b = Builder::new();
    let lit = |side: Side, i: usize, neg: bool| Literal::new(side, i, neg).to_string();

    // literal pairs u_x, u_~x
    let mut u_of = Vec::new();
    for i in 0..k {
        let pair = b.block(format!("U[x{}]", i + 1), 2, false, |a| format!("u[{}]", lit(Side::X, i, a == 1)));
        b.edges.push((pair[0], pair[1]));
        u_of.push(pair);
    }

    // guarded grid v_{a,b}: a over X literals, b over Y literals
    let x_lits: Vec<Literal> = (0..k).flat_map(|i| [false, true].map(|n| Literal::new(Side::X, i, n))).collect();
    let y_lits: Vec<Literal> = (0..k).flat_map(|j| [false, true].map(|n| Literal::new(Side::Y, j, n))).collect();
    let cells: Vec<(Literal, Literal)> = x_lits.iter().flat_map(|&a| y_lits.iter().map(move |&c| (a, c))).collect();
    let grid = b.block("grid".into(), cells.len(), true, |i| format!("v[{},{}]", cells[i].0, cells[i].1));
    for (cell, &(a, _)) in grid.iter().zip(&cells) {
        b.edges.push((u_of[a.index][usize::from(a.negated)], *cell));
    }

    // variable checkers
    for j in 0..k {
        let star: Vec<usize> = grid.iter().zip(&cells).filter(|(_, c)| c.1.index == j).map(|(&v, _)| v).collect();
        let vy = b.block(format!("V[y{}]", j + 1), m, false, |a| format!("V[y{}].{}", j + 1, a + 1));
        let vy2 = b.block(format!("V'[y{}]", j + 1), m - 4 * k + 1, true, |a| format!("V'[y{}].{}", j + 1, a + 1));
        b.join(&vy, &vy2);
        b.join(&vy, &star);
    }

    // clause checkers over L_i: cells whose literals both avoid the clause
    for (i, clause) in phi.clauses.iter().enumerate() {
        let l: Vec<usize> = grid
            .iter()
            .zip(&cells)
            .filter(|(_, (a, c))| !clause.contains(a) && !clause.contains(c))
            .map(|(&v, _)| v)
            .collect();
        let w = b.block(format!("W[{}]", i + 1), m, false, |a| format!("W[{}].{}", i + 1, a + 1));
        let w2 = b.block(format!("W'[{}]", i + 1), m - l.len() + k - 1, true, |a| format!("W'[{}].{}", i + 1, a + 1));
        b.join(&w, &w2);
        b.join(&w, &l);
        b.roles.push(Role { name: format!("L[{}]", i + 1), vertices: l });
    }

    b.block("s".into(), 1, true, |_| "s".into());
    let guards: Vec<usize> = (0..b.n).filter(|&x| b.guarded[x]).collect();
    for (i, &x) in guards.iter().enumerate() {
        for &y in &guards[i + 1..] {
            b.edges.push((x, y));
        }
    }
    b.finish((k + m) as u32, Premise::Pspace { phi: phi.clone() })
}

/// `g` plus `k - 1` guarded vertices adjacent to every vertex of `g`: the
/// attacker wins within `k` turns iff `g` has an independent set of size `k`.
pub fn gen_w1(g: &Graph, k: usize) -> GadgetInstance {
    assert!(k >= 1, "need k >= 1");
    let mut b = Builder::new();
    let base = b.block("G".into(), g.n(), false, |i| format!("g{}", i + 1));
    b.edges.extend(g.edges());
    let extra = b.block("D".into(), k - 1, true, |i| format!("d{}", i + 1));
    b.join(&base, &extra);
    b.finish(k as u32, Premise::W1 { graph: g.clone(), k })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Equivalence {
    Holds { premise: bool, value: Turns },
    Fails { premise: bool, value: Turns },
    Skipped { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GadgetReport {
    pub kind: &'static str,
    pub structure: Vec<Check>,
    pub equivalence: Equivalence,
}

impl GadgetReport {
    pub fn ok(&self) -> bool {
        self.structure.iter().all(|c| c.ok) && !matches!(self.equivalence, Equivalence::Fails { .. })
    }
}

fn check(name: &str, ok: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), ok, detail: if ok { String::new() } else { detail.into() } }
}

fn is_clique(g: &Graph, set: &[usize]) -> bool {
    set.iter().enumerate().all(|(i, &u)| set[i + 1..].iter().all(|&v| g.has_edge(u, v)))
}

fn roles_partition(inst: &GadgetInstance) -> bool {
    let mut seen = vec![0u32; inst.graph.n()];
    for role in inst.roles.iter().filter(|r| !r.name.starts_with("L[")) {
        for &v in &role.vertices {
            seen[v] += 1;
        }
    }
    seen.iter().all(|&c| c == 1)
}

fn size_check(inst: &GadgetInstance, role: &str, expect: usize) -> Check {
    let got = inst.role(role).map_or(0, <[usize]>::len);
    check(&format!("|{role}| = {expect}"), got == expect, format!("found {got}"))
}

/// Structural checks plus, when the oracle fits the budget, the
/// reduction's equivalence.
pub fn verify_gadget(inst: &GadgetInstance, budget: usize) -> GadgetReport {
    let g = &inst.graph;
    let d = &inst.guards;
    let guards: Vec<usize> = d.iter().collect();
    let unguarded: Vec<usize> = g.vertices().filter(|&v| !d.contains(v)).collect();
    let mut structure = vec![check("roles partition the vertices", roles_partition(inst), "overlap or gap")];
    let guarded_roles_ok = inst.roles.iter().filter(|r| !r.name.starts_with("L[")).all(|r| {
        let flags: Vec<bool> = r.vertices.iter().map(|&v| d.contains(v)).collect();
        flags.iter().all(|&f| f) || flags.iter().all(|&f| !f)
    });
    structure.push(check("each role is all guarded or all unguarded", guarded_roles_ok, ""));

    let premise = match &inst.premise {
        Premise::ConpBipartite { graph, k } | Premise::ConpSplit { graph, k, .. } => {
            let e = graph.m();
            structure.push(size_check(inst, "U", *k));
            structure.push(size_check(inst, "V", graph.n()));
            structure.push(check("edge blocks", inst.roles.len() >= 2 + 2 * e, "missing S/T blocks"));
            for (i, j) in graph.edges() {
                let tag = format!("{}-{}", i + 1, j + 1);
                structure.push(size_check(inst, &format!("S[{tag}]"), k + 1));
                structure.push(size_check(inst, &format!("T[{tag}]"), *k));
            }
            structure.push(check("bound is 2k+1", inst.bound == 2 * *k as u32 + 1, ""));
            if let Premise::ConpSplit { complete_guards, .. } = inst.premise {
                structure.push(size_check(inst, "s", 1));
                let split = g.is_independent(&unguarded) && is_clique(g, &guards);
                structure.push(Check {
                    name: "split partition (guards clique, rest independent)".into(),
                    ok: split || !complete_guards,
                    detail: if split { String::new() } else { "not split with this guard side".into() },
                });
            } else {
                let one_side = g.edges().all(|(u, v)| d.contains(u) != d.contains(v));
                structure.push(check("bipartite", bipartition(g).is_some(), "odd cycle"));
                structure.push(check("guards form one side", one_side, "same-status edge"));
            }
            alpha_bruteforce(graph, ALPHA_LIMIT).ok().map(|a| a < *k)
        }
        Premise::W1 { graph, k } => {
            structure.push(size_check(inst, "G", graph.n()));
            structure.push(size_check(inst, "D", k - 1));
            let universal = d.iter().all(|x| g.degree(x) == graph.n());
            structure.push(check("extra guards see every vertex of G", universal, ""));
            structure.push(check("bound is k", inst.bound == *k as u32, ""));
            alpha_bruteforce(graph, ALPHA_LIMIT).ok().map(|a| a >= *k)
        }
        Premise::Pspace { phi } => {
            let k = phi.k;
            let m = pspace_m(k);
            structure.push(check("bound is k + M", inst.bound == (k + m) as u32, ""));
            structure.push(size_check(inst, "grid", 4 * k * k));
            for j in 1..=k {
                structure.push(size_check(inst, &format!("V[y{j}]"), m));
                structure.push(size_check(inst, &format!("V'[y{j}]"), m - 4 * k + 1));
            }
            for i in 1..=phi.clauses.len() {
                let l = inst.role(&format!("L[{i}]")).map_or(0, <[usize]>::len);
                structure.push(size_check(inst, &format!("W[{i}]"), m));
                structure.push(size_check(inst, &format!("W'[{i}]"), m - l + k - 1));
            }
            structure.push(check("guards form a clique", is_clique(g, &guards), ""));
            let (rest, _) = g.induced(&unguarded);
            let small = rest.components().iter().all(|c| c.len() <= 2);
            structure.push(check("non-guard components have at most 2 vertices", small, ""));
            solve_unordered_cnf(phi).ok().map(|w| w == Winner::Falsifier)
        }
    };

    let equivalence = match premise {
        None => Equivalence::Skipped { reason: "premise: source too large".into() },
        Some(_) if estimate_positions(g.n(), d.len(), 1) > budget as f64 => {
            Equivalence::Skipped { reason: "size".into() }
        }
        Some(premise) => match solve_exact_with(g, d, &SolveOptions::default().budget(budget)) {
            Ok(value) if value.within(inst.bound) == premise => Equivalence::Holds { premise, value },
            Ok(value) => Equivalence::Fails { premise, value },
            Err(_) => Equivalence::Skipped { reason: "size".into() },
        },
    };
    GadgetReport { kind: inst.premise.name(), structure, equivalence }
}

/// [`verify_gadget`] with the default oracle budget.
pub fn verify_gadget_default(inst: &GadgetInstance) -> GadgetReport {
    verify_gadget(inst, DEFAULT_BUDGET)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;

    fn sample_formula() -> UnorderedCnf {
        UnorderedCnf::parse("k 2\nx1 ~y1\n~x1 x2 y2\n").unwrap()
    }

    #[test]
    fn conp_counts() {
        let inst = gen_conp_bipartite(&complete(2), 2);
        assert_eq!(inst.graph.n(), 9);
        assert_eq!(inst.guards.len(), 4);
        assert_eq!(inst.bound, 5);
        let split = gen_conp_split(&complete(2), 2, false);
        assert_eq!(split.graph.n(), 10);
        assert_eq!(split.guards.len(), 5);
    }

    #[test]
    fn conp_small_equivalence() {
        for inst in [
            gen_conp_bipartite(&complete(2), 2),
            gen_conp_bipartite(&Graph::empty(2), 2),
            gen_conp_split(&complete(2), 2, false),
            gen_conp_split(&Graph::empty(2), 2, true),
        ] {
            let report = verify_gadget_default(&inst);
            assert!(report.ok(), "{report:?}");
            assert!(matches!(report.equivalence, Equivalence::Holds { .. }), "{report:?}");
        }
    }

    #[test]
    fn w1_examples() {
        let inst = gen_w1(&Graph::empty(2), 2);
        assert!(matches!(verify_gadget_default(&inst).equivalence, Equivalence::Holds { premise: true, .. }));
        let inst = gen_w1(&complete(2), 2);
        assert!(matches!(verify_gadget_default(&inst).equivalence, Equivalence::Holds { premise: false, .. }));
        let inst = gen_w1(&path(3), 1);
        assert!(inst.guards.is_empty());
        assert_eq!(inst.graph, path(3).with_names(vec!["g1".into(), "g2".into(), "g3".into()]).unwrap());
    }

    #[test]
    fn pspace_sample() {
        let inst = gen_pspace_unipolar(&sample_formula());
        assert_eq!(inst.bound, 34);
        assert_eq!(inst.role("V'[y1]").unwrap().len(), 25);
        assert_eq!(inst.role("L[1]").unwrap().len(), 9);
        assert_eq!(inst.role("L[2]").unwrap().len(), 6);
        assert_eq!(inst.role("W'[1]").unwrap().len(), 24);
        assert_eq!(inst.role("W'[2]").unwrap().len(), 27);
        assert_eq!(inst.graph.n(), 250);
        assert_eq!(inst.guards.len(), 118);
        let report = verify_gadget_default(&inst);
        assert!(report.structure.iter().all(|c| c.ok), "{report:?}");
        assert_eq!(report.equivalence, Equivalence::Skipped { reason: "size".into() });
        assert_eq!(gen_pspace_unipolar(&sample_formula()), inst);
    }
}
