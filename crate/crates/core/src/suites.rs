//! Randomized and exhaustive cross-checks of every solver against the exact
//! game engine. Each trial draws from its own seeded stream, so runs are
//! reproducible and trials run in parallel.

use std::collections::HashMap;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bipartite::{
    crown_kernel, eds_decide, hall_attack, max_matching_koenig, normalize_one_side, twin_kernel, EdsCertificate,
    ScriptAttacker,
};
use crate::cograph::{build_cotree, solve_reservists, CographAttacker, ReservistTable, SStarDefender};
use crate::families::path;
use crate::gadgets::{gen_conp_bipartite, gen_conp_split, gen_pspace_unipolar, gen_w1, verify_gadget, UnorderedCnf};
use crate::game::{
    label_game, play_match, solve_exact, solve_exact_with, LabelingAttacker, LabelingDefender, MatchOutcome,
    SolveOptions, DEFAULT_BUDGET,
};
use crate::generators::{
    all_graphs, random_bipartite, random_cograph, random_graph, random_guards, random_tree, trial_rng,
};
use crate::graph::{bipartition, serialize_instance, Graph, GuardConfig};
use crate::tree::{is_arena, ranking_list, solve_tree, td_decomposition, RankingList, TreeAttacker};
use crate::turns::Turns;

pub const SUITES: [&str; 7] = ["tree-oracle", "cograph-oracle", "bipartite-eds", "kernels", "gadgets", "ranking", "lemmas"];

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub trial: u64,
    pub message: String,
    /// The offending instance in the text format, when there is one.
    pub instance: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub trials: u64,
    pub failures: Vec<Counterexample>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

type Trial = Result<(), (String, Option<String>)>;

fn fail(msg: String, g: &Graph, d: &GuardConfig) -> Trial {
    Err((msg, Some(serialize_instance(g, d))))
}

fn run_trials(suite: &str, seed: u64, trials: u64, f: impl Fn(u64) -> Trial + Sync) -> SuiteReport {
    let failures = (0..trials)
        .into_par_iter()
        .filter_map(|t| f(t).err().map(|(message, instance)| Counterexample { trial: t, message, instance }))
        .collect();
    SuiteReport { suite: suite.into(), seed, trials, failures }
}

/// Runs a named suite; `None` for an unknown name.
pub fn run_suite(name: &str, seed: u64, trials: u64) -> Option<SuiteReport> {
    Some(match name {
        "tree-oracle" => tree_oracle(seed, trials),
        "cograph-oracle" => cograph_oracle(seed, trials),
        "bipartite-eds" => bipartite_eds(seed, trials),
        "kernels" => kernels(seed, trials),
        "gadgets" => gadgets(),
        "ranking" => ranking(seed, trials),
        "lemmas" => lemmas(seed, trials),
        _ => return None,
    })
}

/// Turns an attacker policy needs against the labeling-optimal defender.
fn turns_vs_optimal(g: &Graph, d: &GuardConfig, attacker: impl crate::game::AttackerPolicy) -> Option<u32> {
    let lab = label_game(g, d, &SolveOptions::default()).ok()?;
    let t = play_match(g, d, attacker, LabelingDefender::new(&lab), g.n() as u32 + 2).ok()?;
    match t.outcome {
        MatchOutcome::AttackerWon { turns } => Some(turns),
        MatchOutcome::DefenderSurvived { .. } => None,
    }
}

pub fn log2_bound(n: usize) -> u32 {
    usize::BITS - n.leading_zeros()
}

pub fn tree_oracle(seed: u64, trials: u64) -> SuiteReport {
    run_trials("tree-oracle", seed, trials, |t| {
        let mut rng = trial_rng(seed, t);
        let n = rng.gen_range(1..=12);
        let g = random_tree(n, &mut rng);
        let d = random_guards(n, &mut rng);
        let sol = solve_tree(&g, &d).map_err(|e| (e.to_string(), None))?;
        let exact = solve_exact(&g, &d).map_err(|e| (e.to_string(), None))?;
        if sol.value != exact {
            return fail(format!("tree solver {} but oracle {}", sol.value, exact), &g, &d);
        }
        let Turns::Finite(value) = sol.value else { return Ok(()) };
        let arena = sol.arena.as_ref().unwrap();
        if let Err(e) = is_arena(&g, &d, arena) {
            return fail(format!("returned arena {arena:?} invalid: {e}"), &g, &d);
        }
        if value > log2_bound(n) {
            return fail(format!("value {value} above ceil(log2(n+1))"), &g, &d);
        }
        let attacker = TreeAttacker::new(&g, &d, arena).map_err(|e| (e.to_string(), None))?;
        match turns_vs_optimal(&g, &d, attacker) {
            Some(turns) if turns == value => Ok(()),
            other => fail(format!("arena strategy took {other:?} turns, value {value}"), &g, &d),
        }
    })
}

pub fn cograph_oracle(seed: u64, trials: u64) -> SuiteReport {
    run_trials("cograph-oracle", seed, trials, |t| {
        let mut rng = trial_rng(seed, t);
        let n = rng.gen_range(1..=10);
        let g = random_cograph(n, &mut rng);
        let d = random_guards(n, &mut rng);
        let tree = build_cotree(&g).map_err(|e| (e.to_string(), None))?;
        for r in 1..=3 {
            let fast = solve_reservists(&tree, &d, r);
            let exact = solve_exact_with(&g, &d, &SolveOptions::default().reservists(r))
                .map_err(|e| (e.to_string(), None))?;
            if fast != exact {
                return fail(format!("r = {r}: recursion {fast} but oracle {exact}"), &g, &d);
            }
        }
        let mut table = ReservistTable::new(&tree, &d);
        table.value(tree.root(), 1);
        let entries: Vec<_> = table.entries().collect();
        for ((node, r), v) in entries {
            if table.recompute(node, r) != v {
                return fail(format!("memo entry ({node}, {r}) not reproducible"), &g, &d);
            }
        }
        let Turns::Finite(value) = solve_reservists(&tree, &d, 1) else { return Ok(()) };
        let vs_opt = turns_vs_optimal(&g, &d, CographAttacker::new(tree.clone()));
        let vs_sstar = play_match(&g, &d, CographAttacker::new(tree.clone()), SStarDefender::new(tree), n as u32 + 2)
            .map_err(|e| (e.to_string(), None))?
            .outcome;
        if vs_opt != Some(value) || vs_sstar != (MatchOutcome::AttackerWon { turns: value }) {
            return fail(format!("strategy: {vs_opt:?} vs optimal, {vs_sstar:?} vs S*, value {value}"), &g, &d);
        }
        Ok(())
    })
}

fn bipartite_instance(seed: u64, t: u64) -> (Graph, GuardConfig) {
    let mut rng = trial_rng(seed, t);
    let n = rng.gen_range(1..=12);
    let p = rng.gen_range(0.1..0.7);
    let g = random_bipartite(n, p, &mut rng);
    let d = random_guards(n, &mut rng);
    (g, d)
}

pub fn bipartite_eds(seed: u64, trials: u64) -> SuiteReport {
    run_trials("bipartite-eds", seed, trials, |t| {
        let (g, d) = bipartite_instance(seed, t);
        let exact = solve_exact(&g, &d).map_err(|e| (e.to_string(), None))?;
        let dec = eds_decide(&g, &d).map_err(|e| (e.to_string(), None))?;
        if dec.eternal != (exact == Turns::Infinite) {
            return fail(format!("eds says {} but oracle {exact}", dec.eternal), &g, &d);
        }
        if let EdsCertificate::HallSet(hv) = &dec.certificate {
            let h = normalize_one_side(&g, &d).unwrap();
            let script = hall_attack(&h, &d, hv).map_err(|e| (e.to_string(), None))?;
            match turns_vs_optimal(&h, &d, ScriptAttacker::new(script)) {
                Some(turns) if turns as usize <= hv.bound => {}
                other => return fail(format!("Hall attack took {other:?}, bound {}", hv.bound), &g, &d),
            }
            if exact.finite().is_some_and(|v| v as usize > d.len() + 1) {
                return fail(format!("value {exact} above |D| + 1"), &g, &d);
            }
        }
        let (a, b) = bipartition(&g).unwrap();
        let side_a = solve_exact_with(&g, &d, &SolveOptions::default().restrict(a)).unwrap();
        let side_b = solve_exact_with(&g, &d, &SolveOptions::default().restrict(b)).unwrap();
        if side_a.min(side_b) != exact {
            return fail(format!("sides give {side_a} and {side_b}, unrestricted {exact}"), &g, &d);
        }
        Ok(())
    })
}

pub fn kernels(seed: u64, trials: u64) -> SuiteReport {
    run_trials("kernels", seed, trials, |t| {
        let (g, d) = bipartite_instance(seed, t);
        let exact = solve_exact(&g, &d).map_err(|e| (e.to_string(), None))?;
        let h = normalize_one_side(&g, &d).unwrap();
        let on_norm = solve_exact(&h, &d).unwrap();
        if on_norm != exact {
            return fail(format!("normalization changed {exact} to {on_norm}"), &g, &d);
        }
        let (a, b) = bipartition(&g).unwrap();
        let cert = max_matching_koenig(&g, &a, &b).unwrap();
        let covered = g.edges().all(|(u, v)| cert.cover.contains(&u) || cert.cover.contains(&v));
        if cert.cover.len() != cert.matching.len() || !covered {
            return fail("König certificate invalid".into(), &g, &d);
        }
        let twin = twin_kernel(&h, &d).unwrap();
        let crown = crown_kernel(&h, &d).unwrap();
        let tv = solve_exact(&twin.graph, &twin.guards).unwrap();
        let cv = solve_exact(&crown.graph, &crown.guards).unwrap();
        if tv != exact || cv != exact {
            return fail(format!("twin kernel {tv}, crown kernel {cv}, original {exact}"), &g, &d);
        }
        if crown.graph.n() > 2 * (g.n() - d.len()) {
            return fail(format!("crown kernel has {} vertices", crown.graph.n()), &g, &d);
        }
        Ok(())
    })
}

/// Small two-player formula with k = 2 used for the PSPACE gadget checks.
pub fn sample_formula() -> UnorderedCnf {
    UnorderedCnf::parse("k 2\nx1 ~y1\n~x1 x2 y2\n").expect("valid formula")
}

/// Exhaustive gadget sweeps; deterministic, so no seed is involved.
pub fn gadgets() -> SuiteReport {
    let mut cases = Vec::new();
    for n in 1..=4 {
        for g in all_graphs(n).filter(|g| g.m() <= 3) {
            cases.push(gen_conp_bipartite(&g, 2));
            cases.push(gen_conp_split(&g, 2, false));
            cases.push(gen_conp_split(&g, 2, true));
        }
    }
    for n in 1..=5 {
        for g in all_graphs(n) {
            for k in 1..=3 {
                cases.push(gen_w1(&g, k));
            }
        }
    }
    cases.push(gen_pspace_unipolar(&sample_formula()));
    let failures = cases
        .par_iter()
        .enumerate()
        .filter_map(|(i, inst)| {
            let report = verify_gadget(inst, DEFAULT_BUDGET);
            (!report.ok()).then(|| Counterexample {
                trial: i as u64,
                message: serde_json::to_string(&report).unwrap_or_default(),
                instance: Some(serialize_instance(&inst.graph, &inst.guards)),
            })
        })
        .collect();
    SuiteReport { suite: "gadgets".into(), seed: 0, trials: cases.len() as u64, failures }
}

/// Treedepth by exhaustive elimination over vertex subsets.
pub fn treedepth_bruteforce(g: &Graph) -> u32 {
    fn go(g: &Graph, set: u64, memo: &mut HashMap<u64, u32>) -> u32 {
        if set == 0 {
            return 0;
        }
        if let Some(&v) = memo.get(&set) {
            return v;
        }
        // split into components first
        let start = set.trailing_zeros() as usize;
        let mut comp = 1u64 << start;
        let mut frontier = comp;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = g.row(v).unwrap() & set & !comp;
            comp |= new;
            frontier |= new;
        }
        let best = if comp != set {
            go(g, comp, memo).max(go(g, set & !comp, memo))
        } else {
            let mut best = u32::MAX;
            let mut rest = set;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                best = best.min(1 + go(g, set & !(1 << v), memo));
            }
            best
        };
        memo.insert(set, best);
        best
    }
    let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    go(g, all, &mut HashMap::new())
}

fn random_list(rng: &mut impl Rng) -> RankingList {
    let len = rng.gen_range(0..=8);
    RankingList::new((0..len).map(|_| rng.gen_range(1..=8)).collect())
}

pub fn ranking(seed: u64, trials: u64) -> SuiteReport {
    let worked = RankingList::new(vec![7, 6, 4, 3, 2, 2]).closure() == RankingList::new(vec![7, 6, 5])
        && RankingList::new(vec![4, 3, 2]).closure() == RankingList::new(vec![4, 3, 2, 1])
        && ranking_list(&path(7), 0).head() == 3;
    let mut report = run_trials("ranking", seed, trials, |t| {
        let mut rng = trial_rng(seed, t);
        let (a, b, c) = (random_list(&mut rng), random_list(&mut rng), random_list(&mut rng));
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        if lo.closure() > hi.closure() {
            return Err((format!("closure not monotone on {lo} <= {hi}"), None));
        }
        if lo.merge(&c) > hi.merge(&c) {
            return Err((format!("merge not monotone on {lo} <= {hi} with {c}"), None));
        }
        let n = rng.gen_range(1..=8);
        let g = random_tree(n, &mut rng);
        let d = GuardConfig::empty();
        let td = treedepth_bruteforce(&g);
        for r in 0..n {
            let list = ranking_list(&g, r);
            if list.head() != td || !list.is_valid() {
                return fail(format!("rooted at {r}: list {list}, treedepth {td}"), &g, &d);
            }
        }
        let dec = td_decomposition(&g);
        if dec.height != td || !dec.is_valid_for(&g) {
            return fail(format!("decomposition height {} for treedepth {td}", dec.height), &g, &d);
        }
        // two disjoint subtrees of equal treedepth force a larger treedepth
        let pick = |rng: &mut rand_chacha::ChaCha8Rng| -> u64 { rng.gen_range(1..1u64 << n) };
        let (s1, s2) = (pick(&mut rng), pick(&mut rng));
        if s1 & s2 == 0 {
            let sub = |s: u64| {
                let keep: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 1).collect();
                g.induced(&keep).0
            };
            let (g1, g2) = (sub(s1), sub(s2));
            let connected = |h: &Graph| h.components().len() == 1;
            if connected(&g1) && connected(&g2) {
                let (d1, d2) = (treedepth_bruteforce(&g1), treedepth_bruteforce(&g2));
                if d1 == d2 && td <= d1 {
                    return fail(format!("disjoint subtrees of treedepth {d1} in a tree of treedepth {td}"), &g, &d);
                }
            }
        }
        Ok(())
    });
    if !worked {
        report.failures.push(Counterexample { trial: 0, message: "worked closure examples differ".into(), instance: None });
    }
    report
}

/// Value from the full position table over every guard set of size `|d|`,
/// labeled by repeated rule scans instead of a work queue.
pub fn full_table_value(g: &Graph, d: &GuardConfig) -> Turns {
    let n = g.n();
    let size = d.len() as u32;
    let configs: Vec<u64> = (0..1u64 << n).filter(|m| m.count_ones() == size).collect();
    let index: HashMap<u64, usize> = configs.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut label: Vec<Option<u32>> = vec![None; configs.len()];
    for level in 0.. {
        let mut changed = Vec::new();
        for (i, &mask) in configs.iter().enumerate() {
            if label[i].is_some() {
                continue;
            }
            let wins = (0..n).filter(|&v| mask >> v & 1 == 0).any(|v| {
                let guarded = g.row(v).unwrap() & mask;
                (0..n).filter(|&u| guarded >> u & 1 == 1).all(|u| {
                    let next = mask & !(1 << u) | 1 << v;
                    label[index[&next]].is_some_and(|l| l <= level)
                })
            });
            if wins {
                changed.push(i);
            }
        }
        if changed.is_empty() {
            break;
        }
        for i in changed {
            label[i] = Some(level + 1);
        }
    }
    label[index[&d.mask()]].map_or(Turns::Infinite, Turns::Finite)
}

pub fn lemmas(seed: u64, trials: u64) -> SuiteReport {
    run_trials("lemmas", seed, trials, |t| {
        let mut rng = trial_rng(seed, t);
        let n = rng.gen_range(1..=9);
        let g = if rng.gen_bool(0.5) { random_cograph(n, &mut rng) } else { random_graph(n, rng.gen_range(0.2..0.8), &mut rng) };
        let d = random_guards(n, &mut rng);
        let lab = label_game(&g, &d, &SolveOptions::default()).map_err(|e| (e.to_string(), None))?;
        if !lab.check_fixpoint() {
            return fail("labeling is not a fixpoint".into(), &g, &d);
        }
        let value = lab.start_value();
        if n <= 8 {
            let full = full_table_value(&g, &d);
            if full != value {
                return fail(format!("reachable subgame {value}, full table {full}"), &g, &d);
            }
        }
        let play = play_match(&g, &d, LabelingAttacker::new(&lab), LabelingDefender::new(&lab), n as u32 + 2)
            .map_err(|e| (e.to_string(), None))?;
        // with every vertex guarded the attacker has no move and play stops early
        let consistent = match (value, &play.outcome) {
            (Turns::Finite(v), MatchOutcome::AttackerWon { turns }) => *turns == v,
            (Turns::Infinite, MatchOutcome::DefenderSurvived { .. }) => true,
            _ => false,
        };
        if !consistent {
            return fail(format!("optimal play gave {:?} for value {value}", play.outcome), &g, &d);
        }
        for r in 1..=2 {
            let with = solve_exact_with(&g, &d, &SolveOptions::default().reservists(r)).unwrap();
            for x in d.iter() {
                let without =
                    solve_exact_with(&g, &d.without(x), &SolveOptions::default().reservists(r + 1)).unwrap();
                if with > without {
                    return fail(format!("r = {r}, x = {x}: {with} > {without}"), &g, &d);
                }
            }
        }
        Ok(())
    })
}
