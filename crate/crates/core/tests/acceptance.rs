//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the run exits with failure if any criterion fails.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use edom_core::bipartite::{crown_kernel, eds_decide, hall_attack, normalize_one_side, twin_kernel, EdsCertificate, ScriptAttacker};
use edom_core::cograph::{build_cotree, solve_reservists, CographAttacker};
use edom_core::families::{ladder7, ladder7_eternal, path};
use edom_core::gadgets::{gen_conp_bipartite, gen_pspace_unipolar, gen_w1, pspace_m, Literal, Side, UnorderedCnf};
use edom_core::game::{label_game, play_match, AttackerPolicy, LabelingDefender, MatchOutcome, SolveOptions};
use edom_core::generators::{random_bipartite, random_cograph, random_guards, random_tree, trial_rng};
use edom_core::graph::bipartition;
use edom_core::tree::{ranking_list, solve_tree, RankingList, TreeAttacker};
use edom_core::{serialize_instance, solve_exact, solve_exact_with, Graph, GuardConfig, Turns};
use rand::Rng;
use rayon::prelude::*;

const SEED: u64 = 2024;
const CORPUS: u64 = 500;

const LIMIT_LADDER7: Duration = Duration::from_secs(1);
const LIMIT_TREES: Duration = Duration::from_secs(120);
const LIMIT_COGRAPHS: Duration = Duration::from_secs(300);
const LIMIT_BIPARTITE: Duration = Duration::from_secs(120);
const LIMIT_GADGETS: Duration = Duration::from_secs(600);

type Outcome = Result<String, String>;

fn within(start: Instant, limit: Duration, detail: String) -> Outcome {
    let took = start.elapsed();
    if took <= limit {
        Ok(format!("{detail} in {took:.2?}"))
    } else {
        Err(format!("{detail} but took {took:.2?} (limit {limit:?})"))
    }
}

/// Collects the first few failure messages from a parallel sweep.
fn sweep<T: Sync>(items: &[T], f: impl Fn(&T) -> Option<String> + Sync + Send) -> Vec<String> {
    let mut bad: Vec<String> = items.par_iter().filter_map(f).collect();
    bad.truncate(3);
    bad
}

fn verdict(bad: Vec<String>, ok: String) -> Outcome {
    if bad.is_empty() {
        Ok(ok)
    } else {
        Err(bad.join("; "))
    }
}

fn attacker_turns(g: &Graph, d: &GuardConfig, r: u32, attacker: impl AttackerPolicy) -> Option<u32> {
    let lab = label_game(g, d, &SolveOptions::default().reservists(r)).ok()?;
    let t = play_match(g, d, attacker, LabelingDefender::new(&lab), g.n() as u32 + 2).ok()?;
    match t.outcome {
        MatchOutcome::AttackerWon { turns } => Some(turns),
        MatchOutcome::DefenderSurvived { .. } => None,
    }
}

fn tree_corpus() -> Vec<(Graph, GuardConfig)> {
    (0..CORPUS)
        .map(|t| {
            let mut rng = trial_rng(SEED, t);
            let n = rng.gen_range(1..=12);
            let g = random_tree(n, &mut rng);
            let d = random_guards(n, &mut rng);
            (g, d)
        })
        .collect()
}

fn cograph_corpus() -> Vec<(Graph, GuardConfig)> {
    (0..CORPUS)
        .map(|t| {
            let mut rng = trial_rng(SEED + 1, t);
            let n = rng.gen_range(1..=10);
            let g = random_cograph(n, &mut rng);
            let d = random_guards(n, &mut rng);
            (g, d)
        })
        .collect()
}

fn bipartite_corpus() -> Vec<(Graph, GuardConfig)> {
    (0..CORPUS)
        .map(|t| {
            let mut rng = trial_rng(SEED + 2, t);
            let n = rng.gen_range(1..=12);
            let p = rng.gen_range(0.1..0.7);
            let g = random_bipartite(n, p, &mut rng);
            let d = random_guards(n, &mut rng);
            (g, d)
        })
        .collect()
}

fn show(g: &Graph, d: &GuardConfig) -> String {
    serialize_instance(g, d).replace('\n', " | ")
}

fn c1_ladder7() -> Outcome {
    let start = Instant::now();
    let a = ladder7();
    let b = ladder7_eternal();
    let va = solve_exact(&a.graph, &a.guards).map_err(|e| e.to_string())?;
    let vb = solve_exact(&b.graph, &b.guards).map_err(|e| e.to_string())?;
    if va != Turns::Finite(3) || vb != Turns::Infinite {
        return Err(format!("got {va} and {vb}"));
    }
    within(start, LIMIT_LADDER7, "values 3 and inf".into())
}

fn c2_ranking() -> Outcome {
    let a = RankingList::new(vec![7, 6, 4, 3, 2, 2]).closure();
    let b = RankingList::new(vec![4, 3, 2]).closure();
    let h = ranking_list(&path(7), 0).head();
    if a == RankingList::new(vec![7, 6, 5]) && b == RankingList::new(vec![4, 3, 2, 1]) && h == 3 {
        Ok(format!("cl = {a}, {b}; head(P7) = {h}"))
    } else {
        Err(format!("cl = {a}, {b}; head(P7) = {h}"))
    }
}

fn c3_trees(corpus: &[(Graph, GuardConfig)]) -> Outcome {
    let start = Instant::now();
    let bad = sweep(corpus, |(g, d)| {
        let fast = solve_tree(g, d).map(|s| s.value).map_err(|e| e.to_string());
        let exact = solve_exact(g, d).map_err(|e| e.to_string());
        (fast != exact).then(|| format!("{fast:?} vs {exact:?} on {}", show(g, d)))
    });
    if !bad.is_empty() {
        return verdict(bad, String::new());
    }
    within(start, LIMIT_TREES, format!("{} trees agree", corpus.len()))
}

fn c4_cographs(corpus: &[(Graph, GuardConfig)]) -> Outcome {
    let start = Instant::now();
    let bad = sweep(corpus, |(g, d)| {
        let tree = build_cotree(g).ok()?;
        (1..=3).find_map(|r| {
            let fast = solve_reservists(&tree, d, r);
            let exact = solve_exact_with(g, d, &SolveOptions::default().reservists(r)).ok();
            (Some(fast) != exact).then(|| format!("r = {r}: {fast} vs {exact:?} on {}", show(g, d)))
        })
    });
    if !bad.is_empty() {
        return verdict(bad, String::new());
    }
    within(start, LIMIT_COGRAPHS, format!("{} cographs x 3 reservist counts agree", corpus.len()))
}

fn c5_eds(corpus: &[(Graph, GuardConfig)]) -> Outcome {
    let start = Instant::now();
    let bad = sweep(corpus, |(g, d)| {
        let exact = solve_exact(g, d).ok()?;
        let dec = match eds_decide(g, d) {
            Ok(dec) => dec,
            Err(e) => return Some(e.to_string()),
        };
        if dec.eternal != (exact == Turns::Infinite) {
            return Some(format!("eds {} vs {exact} on {}", dec.eternal, show(g, d)));
        }
        let EdsCertificate::HallSet(hv) = dec.certificate else { return None };
        let h = normalize_one_side(g, d).ok()?;
        let script = hall_attack(&h, d, &hv).ok()?;
        let limit = hv.neighborhood.len() as u32 + 1;
        match attacker_turns(&h, d, 1, ScriptAttacker::new(script)) {
            Some(t) if t <= limit => None,
            other => Some(format!("Hall attack took {other:?}, limit {limit} on {}", show(g, d))),
        }
    });
    if !bad.is_empty() {
        return verdict(bad, String::new());
    }
    within(start, LIMIT_BIPARTITE, format!("{} instances agree", corpus.len()))
}

fn c6_kernels(corpus: &[(Graph, GuardConfig)]) -> Outcome {
    let bad = sweep(corpus, |(g, d)| {
        let exact = solve_exact(g, d).ok()?;
        let h = normalize_one_side(g, d).ok()?;
        let twin = twin_kernel(&h, d).ok()?;
        let crown = crown_kernel(&h, d).ok()?;
        let tv = solve_exact(&twin.graph, &twin.guards).ok();
        let cv = solve_exact(&crown.graph, &crown.guards).ok();
        if tv != Some(exact) || cv != Some(exact) {
            return Some(format!("twin {tv:?} crown {cv:?} vs {exact} on {}", show(g, d)));
        }
        let cap = 2 * (g.n() - d.len());
        (crown.graph.n() > cap).then(|| format!("crown size {} > {cap} on {}", crown.graph.n(), show(g, d)))
    });
    verdict(bad, format!("{} instances preserved, crown size within 2(n-g)", corpus.len()))
}

fn c7_sides(corpus: &[(Graph, GuardConfig)]) -> Outcome {
    let bad = sweep(corpus, |(g, d)| {
        let exact = solve_exact(g, d).ok()?;
        let (a, b) = bipartition(g)?;
        let va = solve_exact_with(g, d, &SolveOptions::default().restrict(a)).ok()?;
        let vb = solve_exact_with(g, d, &SolveOptions::default().restrict(b)).ok()?;
        (va.min(vb) != exact).then(|| format!("sides {va}, {vb} vs {exact} on {}", show(g, d)))
    });
    verdict(bad, format!("{} instances agree", corpus.len()))
}

/// Every labeled graph on `n` vertices, straight from edge bitmasks.
fn labeled_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0..1u64 << pairs.len())
        .map(|mask| {
            let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
        .collect()
}

fn alpha(g: &Graph) -> usize {
    let n = g.n();
    (0..1u64 << n)
        .filter(|s| g.edges().all(|(u, v)| s >> u & 1 == 0 || s >> v & 1 == 0))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

fn c8_gadgets() -> Outcome {
    let start = Instant::now();
    let k = 2;
    let conp: Vec<Graph> = (1..=4).flat_map(labeled_graphs).filter(|g| g.m() <= 3).collect();
    let mut bad = sweep(&conp, |g| {
        let inst = gen_conp_bipartite(g, k);
        let value = solve_exact(&inst.graph, &inst.guards).ok()?;
        let premise = alpha(g) < k;
        (premise != value.within(2 * k as u32 + 1)).then(|| format!("conp: alpha {} value {value} on {:?}", alpha(g), g.edges().collect::<Vec<_>>()))
    });
    let w1: Vec<(Graph, usize)> =
        (1..=5).flat_map(labeled_graphs).flat_map(|g| (1..=3).map(move |k| (g.clone(), k))).collect();
    bad.extend(sweep(&w1, |(g, k)| {
        let inst = gen_w1(g, *k);
        let value = solve_exact(&inst.graph, &inst.guards).ok()?;
        let premise = alpha(g) >= *k;
        (premise != value.within(*k as u32)).then(|| format!("w1 k = {k}: alpha {} value {value} on {:?}", alpha(g), g.edges().collect::<Vec<_>>()))
    }));
    if !bad.is_empty() {
        return verdict(bad, String::new());
    }
    within(start, LIMIT_GADGETS, format!("{} coNP and {} W[1] gadgets", conp.len(), w1.len()))
}

fn c9_pspace() -> Outcome {
    let phi = UnorderedCnf::parse("k 2\nx1 ~y1\n~x1 x2 y2\n").map_err(|e| e.to_string())?;
    let inst = gen_pspace_unipolar(&phi);
    let again = gen_pspace_unipolar(&phi);
    let g = &inst.graph;
    let d = &inst.guards;
    let k = 2;
    let m = pspace_m(k);
    let mut problems = Vec::new();
    if m != 32 || inst.bound != 34 {
        problems.push(format!("M = {m}, t = {}", inst.bound));
    }
    let guards: Vec<usize> = d.iter().collect();
    if !guards.iter().enumerate().all(|(i, &u)| guards[i + 1..].iter().all(|&v| g.has_edge(u, v))) {
        problems.push("guards are not a clique".into());
    }
    let rest: Vec<usize> = g.vertices().filter(|&v| !d.contains(v)).collect();
    let (h, _) = g.induced(&rest);
    if h.components().iter().any(|c| c.len() > 2 || (c.len() == 2 && h.m() == 0)) {
        problems.push("non-guard part is not a union of K1 and K2".into());
    }
    let size = |role: &str| inst.role(role).map_or(usize::MAX, <[usize]>::len);
    if size("grid") != 4 * k * k {
        problems.push(format!("grid has {}", size("grid")));
    }
    for j in 1..=k {
        if size(&format!("V[y{j}]")) != m || size(&format!("V'[y{j}]")) != 25 {
            problems.push(format!("variable checker y{j} sizes"));
        }
    }
    // |L_i|: grid cells whose two literals both avoid the clause
    let lits = |side| (0..k).flat_map(move |i| [false, true].map(|neg| Literal::new(side, i, neg)));
    for (i, clause) in phi.clauses.iter().enumerate() {
        let l = lits(Side::X)
            .flat_map(|a| lits(Side::Y).map(move |b| (a, b)))
            .filter(|(a, b)| !clause.contains(a) && !clause.contains(b))
            .count();
        let w2 = m - l + k - 1;
        if size(&format!("L[{}]", i + 1)) != l || size(&format!("W[{}]", i + 1)) != m || size(&format!("W'[{}]", i + 1)) != w2 {
            problems.push(format!("clause {} checker sizes (expected |L| = {l}, |W'| = {w2})", i + 1));
        }
    }
    if serialize_instance(g, d) != serialize_instance(&again.graph, &again.guards) || inst.roles != again.roles {
        problems.push("generation is not deterministic".into());
    }
    if problems.is_empty() {
        Ok(format!("n = {}, {} guards, M = 32, t = 34, |L| = 9 and 6", g.n(), d.len()))
    } else {
        Err(problems.join("; "))
    }
}

fn c10_strategies(trees: &[(Graph, GuardConfig)], cographs: &[(Graph, GuardConfig)]) -> Outcome {
    let mut bad = sweep(trees, |(g, d)| {
        let sol = solve_tree(g, d).ok()?;
        let Turns::Finite(v) = sol.value else { return None };
        let bound = usize::BITS - g.n().leading_zeros();
        if v > bound {
            return Some(format!("tree value {v} above log bound {bound} on {}", show(g, d)));
        }
        let attacker = TreeAttacker::new(g, d, sol.arena.as_ref()?).ok()?;
        let got = attacker_turns(g, d, 1, attacker);
        (got != Some(v)).then(|| format!("tree strategy {got:?} vs {v} on {}", show(g, d)))
    });
    bad.extend(sweep(cographs, |(g, d)| {
        let tree = build_cotree(g).ok()?;
        let Turns::Finite(v) = solve_reservists(&tree, d, 1) else { return None };
        let got = attacker_turns(g, d, 1, CographAttacker::new(tree));
        (got != Some(v)).then(|| format!("cograph strategy {got:?} vs {v} on {}", show(g, d)))
    }));
    verdict(bad, "tree and cograph strategies exact, log bound holds".into())
}

/// Attacker wins from `mask` within `depth` turns, by plain game-tree search.
fn wins(adj: &[u64], n: usize, mask: u64, depth: u32, memo: &mut HashMap<(u64, u32), bool>) -> bool {
    if depth == 0 {
        return false;
    }
    if let Some(&w) = memo.get(&(mask, depth)) {
        return w;
    }
    let w = (0..n).filter(|&v| mask >> v & 1 == 0).any(|v| {
        (0..n)
            .filter(|&u| mask >> u & 1 == 1 && adj[v] >> u & 1 == 1)
            .all(|u| wins(adj, n, mask & !(1 << u) | 1 << v, depth - 1, memo))
    });
    memo.insert((mask, depth), w);
    w
}

fn c11_micro_oracle() -> Outcome {
    let graphs: Vec<Graph> = (1..=5).flat_map(labeled_graphs).collect();

    let bad = sweep(&graphs, |g| {
        let n = g.n();
        let mut adj = vec![0u64; n];
        for (u, v) in g.edges() {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        let mut memo = HashMap::new();
        let limit = n as u32 + 2;
        (0..1u64 << n).find_map(|mask| {
            let d = GuardConfig::from_mask(mask);
            let value = solve_exact(g, &d).ok();
            let direct = (1..=limit).find(|&t| wins(&adj, n, mask, t, &mut memo)).map_or(Turns::Infinite, Turns::Finite);
            (value != Some(direct)).then(|| format!("{value:?} vs minimax {direct} on {}", show(g, &d)))
        })
    });
    let checked: usize = graphs.iter().map(|g| 1usize << g.n()).sum();
    verdict(bad, format!("{checked} (graph, guard set) pairs confirmed"))
}

fn main() -> std::process::ExitCode {
    let trees = tree_corpus();
    let cographs = cograph_corpus();
    let bipartite = bipartite_corpus();
    let results = [
        ("1 seven-vertex ladder values", c1_ladder7()),
        ("2 ranking calculus", c2_ranking()),
        ("3 tree oracle equivalence", c3_trees(&trees)),
        ("4 cograph oracle equivalence", c4_cographs(&cographs)),
        ("5 bipartite eds", c5_eds(&bipartite)),
        ("6 kernels", c6_kernels(&bipartite)),
        ("7 one-side restriction", c7_sides(&bipartite)),
        ("8 gadget equivalences", c8_gadgets()),
        ("9 pspace gadget structure", c9_pspace()),
        ("10 strategy soundness", c10_strategies(&trees, &cographs)),
        ("11 exhaustive micro-oracle", c11_micro_oracle()),
    ];
    let mut failed = 0;
    for (name, result) in &results {
        match result {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        std::process::ExitCode::SUCCESS
    } else {
        std::process::ExitCode::FAILURE
    }
}
