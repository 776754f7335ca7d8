//! The `edom` command line.

pub mod play;
pub mod solve;

use std::fs;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use edom_core::bipartite::{crown_kernel, eds_decide, normalize_one_side, twin_kernel, Kernel};
use edom_core::gadgets::{gen_conp_bipartite, gen_conp_split, gen_pspace_unipolar, gen_w1, verify_gadget, UnorderedCnf};
use edom_core::game::MatchOutcome;
use edom_core::suites::{run_suite, SUITES};
use edom_core::{label_game, parse_instance, serialize_instance, Instance, OracleRecord, SolveOptions, DEFAULT_BUDGET};
use serde::Serialize;

pub use play::Role;
pub use solve::{solve, Certificate, SolveReport, Solver};

#[derive(Debug, Parser)]
#[command(name = "edom", version, about = "Fastest attacker wins in the eternal domination game")]
pub struct Cli {
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Position budget for the exact game solver.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Include the certificate in text output.
    #[arg(long, global = true)]
    pub certificate: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve with the fastest applicable algorithm.
    Solve {
        path: PathBuf,
        /// Use this solver instead of the class dispatch.
        #[arg(long, value_enum)]
        solver: Option<Solver>,
    },
    /// Run the exact game solver.
    Oracle {
        path: PathBuf,
        #[arg(long, default_value_t = 1)]
        reservists: u32,
    },
    /// Decide eternal domination on a bipartite graph.
    Eds { path: PathBuf },
    /// Reduce a bipartite instance, printing the kernel in instance format.
    Kernel {
        #[arg(value_enum)]
        kind: KernelKind,
        path: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generate a reduction gadget; writes OUTPUT and OUTPUT.json.
    Gadget {
        #[arg(value_enum)]
        kind: GadgetKind,
        /// Source graph (instance format; guards ignored) or, for pspace, a formula.
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(short, default_value_t = 2)]
        k: usize,
        /// For conp-split: also join the guards into a clique.
        #[arg(long)]
        complete_guards: bool,
        /// Also check the gadget against the exact solver when small enough.
        #[arg(long)]
        verify: bool,
    },
    /// Play against the machine.
    Play {
        path: PathBuf,
        /// The side you play.
        #[arg(long, value_enum)]
        role: Role,
        #[arg(long, default_value_t = 20)]
        limit: u32,
    },
    /// Run a cross-validation suite.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 100)]
        trials: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KernelKind {
    Twin,
    Crown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GadgetKind {
    ConpBip,
    ConpSplit,
    Pspace,
    W1,
}

fn load(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let parsed = parse_instance(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(parsed.instance)
}

fn emit_json(out: &mut impl Write, value: &impl Serialize) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

#[derive(Serialize)]
struct KernelReport<'a> {
    kind: &'static str,
    n_before: usize,
    n_after: usize,
    kernel: &'a Kernel,
}

/// Runs `cli`, reading interactive input from `input`. Returns the exit
/// code: 0 on success, 1 when a suite found counterexamples.
pub fn run(cli: &Cli, input: &mut impl BufRead, out: &mut impl Write) -> Result<i32> {
    match &cli.command {
        Command::Solve { path, solver } => {
            let inst = load(path)?;
            let report = solve(&inst.graph, &inst.guards, *solver, cli.budget)?;
            if cli.json {
                emit_json(out, &report)?;
            } else {
                writeln!(out, "instance: n={} m={} guards={}", report.instance.n, report.instance.m, report.instance.guards)?;
                writeln!(out, "class: {}", report.class)?;
                writeln!(out, "solver: {}", report.solver)?;
                writeln!(out, "value: {}", report.value)?;
                if cli.certificate {
                    writeln!(out, "certificate: {}", serde_json::to_string(&report.certificate)?)?;
                }
                writeln!(out, "time: {:.3} ms", report.wall_ms)?;
            }
        }
        Command::Oracle { path, reservists } => {
            let inst = load(path)?;
            let opts = SolveOptions::default().reservists(*reservists).budget(cli.budget);
            let lab = label_game(&inst.graph, &inst.guards, &opts)?;
            let record = OracleRecord::from_labeling(&lab);
            if cli.json {
                emit_json(out, &record)?;
            } else {
                writeln!(out, "value: {}", record.value)?;
                writeln!(out, "positions: {}", record.positions_explored)?;
                if let Some(v) = record.first_attack {
                    writeln!(out, "first attack: {v}")?;
                }
            }
        }
        Command::Eds { path } => {
            let inst = load(path)?;
            let dec = eds_decide(&inst.graph, &inst.guards)?;
            if cli.json {
                emit_json(out, &dec)?;
            } else {
                writeln!(out, "eternal: {}", if dec.eternal { "yes" } else { "no" })?;
                if cli.certificate {
                    writeln!(out, "certificate: {}", serde_json::to_string(&dec.certificate)?)?;
                }
            }
        }
        Command::Kernel { kind, path, output } => {
            let inst = load(path)?;
            let h = normalize_one_side(&inst.graph, &inst.guards)?;
            let kernel = match kind {
                KernelKind::Twin => twin_kernel(&h, &inst.guards)?,
                KernelKind::Crown => crown_kernel(&h, &inst.guards)?,
            };
            let text = serialize_instance(&kernel.graph, &kernel.guards);
            if let Some(p) = output {
                fs::write(p, &text).with_context(|| format!("writing {}", p.display()))?;
            }
            if cli.json {
                let name = if *kind == KernelKind::Twin { "twin" } else { "crown" };
                emit_json(out, &KernelReport { kind: name, n_before: inst.graph.n(), n_after: kernel.graph.n(), kernel: &kernel })?;
            } else if output.is_none() {
                out.write_all(text.as_bytes())?;
            } else {
                writeln!(out, "kernel: {} -> {} vertices", inst.graph.n(), kernel.graph.n())?;
            }
        }
        Command::Gadget { kind, input, output, k, complete_guards, verify } => {
            let inst = match kind {
                GadgetKind::Pspace => {
                    let text = fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
                    gen_pspace_unipolar(&UnorderedCnf::parse(&text)?)
                }
                _ => {
                    let g = load(input)?.graph;
                    if *k == 0 || g.n() == 0 {
                        bail!("gadgets need k >= 1 and a nonempty source graph");
                    }
                    match kind {
                        GadgetKind::ConpBip => gen_conp_bipartite(&g, *k),
                        GadgetKind::ConpSplit => gen_conp_split(&g, *k, *complete_guards),
                        _ => gen_w1(&g, *k),
                    }
                }
            };
            fs::write(output, serialize_instance(&inst.graph, &inst.guards))
                .with_context(|| format!("writing {}", output.display()))?;
            let mut sidecar = output.clone().into_os_string();
            sidecar.push(".json");
            fs::write(&sidecar, serde_json::to_string_pretty(&inst.sidecar())?)?;
            let sc = inst.sidecar();
            writeln!(out, "{}: n={} guards={} bound={}", sc.kind, sc.n, sc.guards, sc.bound)?;
            if *verify {
                let report = verify_gadget(&inst, cli.budget);
                if cli.json {
                    emit_json(out, &report)?;
                } else {
                    for c in &report.structure {
                        writeln!(out, "{} {}", if c.ok { "ok  " } else { "FAIL" }, c.name)?;
                    }
                    writeln!(out, "equivalence: {}", serde_json::to_string(&report.equivalence)?)?;
                }
                if !report.ok() {
                    return Ok(1);
                }
            }
        }
        Command::Play { path, role, limit } => {
            let inst = load(path)?;
            let t = play::play(&inst.graph, &inst.guards, *role, *limit, cli.budget, input, out)?;
            match t.outcome {
                MatchOutcome::AttackerWon { turns } => writeln!(out, "attacker wins after {turns} turns")?,
                MatchOutcome::DefenderSurvived { turns } => writeln!(out, "defender survives {turns} turns")?,
            }
            if cli.json {
                emit_json(out, &t)?;
            }
        }
        Command::Verify { suite, trials } => {
            let Some(report) = run_suite(suite, cli.seed, *trials) else {
                bail!("unknown suite {suite:?}; expected one of {}", SUITES.join(", "));
            };
            if cli.json {
                emit_json(out, &report)?;
            } else {
                for c in &report.failures {
                    writeln!(out, "# counterexample, trial {}: {}", c.trial, c.message)?;
                    if let Some(text) = &c.instance {
                        out.write_all(text.as_bytes())?;
                    }
                }
                let verdict = if report.passed() { "pass" } else { "FAIL" };
                writeln!(out, "{}: {verdict} ({} trials, {} failures, seed {})", report.suite, report.trials, report.failures.len(), report.seed)?;
            }
            if !report.passed() {
                return Ok(1);
            }
        }
    }
    Ok(0)
}
