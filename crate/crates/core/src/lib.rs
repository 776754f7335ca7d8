//! Exact solvers for the attacker's fastest win in the eternal domination
//! game, with polynomial algorithms for bipartite graphs, trees and cographs,
//! and the reduction gadgets behind the hardness results.

pub mod bipartite;
pub mod cograph;
pub mod families;
pub mod gadgets;
pub mod generators;
pub mod game;
pub mod graph;
pub mod suites;
pub mod tree;
pub mod turns;

pub use game::{
    label_game, solve_exact, solve_exact_with, Defense, Labeling, OracleRecord, Position, SolveOptions, DEFAULT_BUDGET,
};
pub use graph::{parse_instance, serialize_instance, ClassTags, Graph, GuardConfig, Instance};
pub use turns::Turns;
