//! Ground truth for small instances: exhaustive search over seed sets, and a
//! binary program in LP text format with a reader and a small exact solver.

mod brute;
pub mod lp;
pub mod milp;
pub mod solver;

pub use brute::{binomial, brute_force, BruteForceConfig, BruteForceResult, Objective};
pub use lp::{parse_lp, LpProblem};
pub use milp::{build_milp, emit_milp, induced_assignment, BudgetSense, EmissionSummary, MilpConfig, MilpModel};
pub use solver::{solve_binary, BinarySolution, SolverConfig};

use crate::graph::NodeId;

/// `S_B` read off a solved model: non-`S_A` nodes with `B_u_0 = 1`.
pub fn seeds_from_solution(problem: &LpProblem, values: &[bool], s_a: &[NodeId]) -> Vec<NodeId> {
    let mut seeds: Vec<NodeId> = problem
        .names
        .iter()
        .zip(values)
        .filter(|&(_, &on)| on)
        .filter_map(|(name, _)| {
            let rest = name.strip_prefix("B_")?.strip_suffix("_0")?;
            rest.parse::<NodeId>().ok()
        })
        .filter(|u| !s_a.contains(u))
        .collect();
    seeds.sort_unstable();
    seeds
}
