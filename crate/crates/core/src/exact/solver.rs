//! Depth-first branch and bound for pure binary programs.
//!
//! Each node propagates variable bounds from constraint activities until a
//! fixed point, then branches on the first free variable (declaration order),
//! trying 1 before 0. A node is cut when its objective bound cannot beat the
//! incumbent.

use super::lp::LpProblem;
use super::milp::Sense;
use crate::error::{Error, Result};

const TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct BinarySolution {
    pub values: Vec<bool>,
    pub objective: f64,
    /// Search nodes visited.
    pub nodes: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub node_limit: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { node_limit: 5_000_000 }
    }
}

/// Rows as `lo <= sum a_j x_j <= hi`.
struct Row {
    terms: Vec<(usize, f64)>,
    lo: f64,
    hi: f64,
}

struct Search<'a> {
    rows: Vec<Row>,
    by_var: Vec<Vec<usize>>,
    /// Objective with maximization sense.
    obj: Vec<f64>,
    problem: &'a LpProblem,
    best: Option<(f64, Vec<i8>)>,
    nodes: u64,
    limit: u64,
}

/// `-1` free, `0`/`1` fixed.
type Fixing = Vec<i8>;

impl Search<'_> {
    fn propagate(&self, fix: &mut Fixing, mut queue: Vec<usize>) -> bool {
        let mut queued = vec![false; self.rows.len()];
        for &r in &queue {
            queued[r] = true;
        }
        while let Some(r) = queue.pop() {
            queued[r] = false;
            let row = &self.rows[r];
            let (mut min_act, mut max_act) = (0.0, 0.0);
            for &(v, a) in &row.terms {
                match fix[v] {
                    -1 => {
                        if a > 0.0 {
                            max_act += a;
                        } else {
                            min_act += a;
                        }
                    }
                    1 => {
                        min_act += a;
                        max_act += a;
                    }
                    _ => {}
                }
            }
            if min_act > row.hi + TOL || max_act < row.lo - TOL {
                return false;
            }
            for &(v, a) in &row.terms {
                if fix[v] != -1 {
                    continue;
                }
                // Setting v to the value that raises activity by |a|.
                let forced = if a > 0.0 {
                    if min_act + a > row.hi + TOL {
                        Some(0)
                    } else if max_act - a < row.lo - TOL {
                        Some(1)
                    } else {
                        None
                    }
                } else if min_act - a > row.hi + TOL {
                    Some(1)
                } else if max_act + a < row.lo - TOL {
                    Some(0)
                } else {
                    None
                };
                if let Some(value) = forced {
                    fix[v] = value;
                    for &other in &self.by_var[v] {
                        if !queued[other] {
                            queued[other] = true;
                            queue.push(other);
                        }
                    }
                }
            }
        }
        true
    }

    fn bound(&self, fix: &Fixing) -> f64 {
        self.obj
            .iter()
            .zip(fix)
            .map(|(&c, &f)| match f {
                1 => c,
                -1 if c > 0.0 => c,
                _ => 0.0,
            })
            .sum()
    }

    fn dfs(&mut self, fix: Fixing, queue: Vec<usize>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::CapExceeded {
                what: "branch-and-bound nodes",
                actual: self.nodes as u128,
                limit: self.limit as u128,
            });
        }
        let mut fix = fix;
        if !self.propagate(&mut fix, queue) {
            return Ok(());
        }
        let bound = self.bound(&fix);
        if let Some((incumbent, _)) = &self.best {
            if bound <= *incumbent + TOL {
                return Ok(());
            }
        }
        match fix.iter().position(|&f| f == -1) {
            None => {
                self.best = Some((bound, fix));
            }
            Some(v) => {
                for value in [1, 0] {
                    let mut child = fix.clone();
                    child[v] = value;
                    self.dfs(child, self.by_var[v].clone())?;
                }
            }
        }
        Ok(())
    }
}

/// Optimal 0/1 assignment, or `None` if the problem is infeasible.
pub fn solve_binary(problem: &LpProblem, config: &SolverConfig) -> Result<Option<BinarySolution>> {
    let n = problem.names.len();
    let rows: Vec<Row> = problem
        .constraints
        .iter()
        .map(|c| {
            let (lo, hi) = match c.sense {
                Sense::Le => (f64::NEG_INFINITY, c.rhs),
                Sense::Ge => (c.rhs, f64::INFINITY),
                Sense::Eq => (c.rhs, c.rhs),
            };
            Row {
                terms: c.terms.clone(),
                lo,
                hi,
            }
        })
        .collect();
    let mut by_var = vec![Vec::new(); n];
    for (r, row) in rows.iter().enumerate() {
        for &(v, _) in &row.terms {
            by_var[v].push(r);
        }
    }
    let mut obj = vec![0.0; n];
    let scale = if problem.maximize { 1.0 } else { -1.0 };
    for &(v, c) in &problem.objective {
        obj[v] += scale * c;
    }
    let mut search = Search {
        rows,
        by_var,
        obj,
        problem,
        best: None,
        nodes: 0,
        limit: config.node_limit,
    };
    let all: Vec<usize> = (0..search.rows.len()).collect();
    search.dfs(vec![-1; n], all)?;
    let nodes = search.nodes;
    Ok(search.best.map(|(_, fix)| {
        let values: Vec<bool> = fix.iter().map(|&f| f == 1).collect();
        BinarySolution {
            objective: search.problem.objective_value(&values),
            values,
            nodes,
        }
    }))
}
