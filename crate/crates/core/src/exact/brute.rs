use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diffusion::{diffuse, Thresholds};
use crate::error::{Error, Result};
use crate::graph::{NodeId, WeightedDigraph};
use crate::lodbh::SeedSet;

/// What the exhaustive search maximizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Objective {
    /// `sigma_B` of the joint run.
    #[default]
    SpreadB,
    /// `sigma_B - sigma_A`, the genetic algorithm's fitness.
    Margin,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BruteForceConfig {
    /// Largest number of `k`-subsets the search will enumerate.
    pub combination_cap: u128,
    pub objective: Objective,
}

impl Default for BruteForceConfig {
    fn default() -> Self {
        BruteForceConfig {
            combination_cap: 2_000_000,
            objective: Objective::SpreadB,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BruteForceResult {
    pub seeds: SeedSet,
    pub sigma_a: usize,
    pub sigma_b: usize,
    /// Number of subsets evaluated.
    pub evaluated: u128,
}

impl BruteForceResult {
    pub fn margin(&self) -> i64 {
        self.sigma_b as i64 - self.sigma_a as i64
    }
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Try every `k`-subset of `V \ S_A` as `S_B` and keep the best one.
/// Ties go to the lexicographically smallest sorted subset.
pub fn brute_force(
    graph: &WeightedDigraph,
    thresholds: &Thresholds,
    s_a: &[NodeId],
    k: usize,
    config: &BruteForceConfig,
) -> Result<BruteForceResult> {
    let n = graph.node_count();
    let mut in_s_a = vec![false; n];
    for &u in s_a {
        if u >= n {
            return Err(Error::Precondition(format!("seed {u} is not a node (n = {n})")));
        }
        in_s_a[u] = true;
    }
    let pool: Vec<NodeId> = (0..n).filter(|&u| !in_s_a[u]).collect();
    if k > pool.len() {
        return Err(Error::Precondition(format!(
            "budget k = {k} exceeds |V \\ S_A| = {}",
            pool.len()
        )));
    }
    let total = binomial(pool.len(), k);
    if total > config.combination_cap {
        return Err(Error::CapExceeded {
            what: "subset count",
            actual: total,
            limit: config.combination_cap,
        });
    }

    let score = |seeds: &[NodeId]| -> Result<(i64, usize, usize)> {
        let r = diffuse(graph, thresholds, s_a, seeds)?;
        let value = match config.objective {
            Objective::SpreadB => r.sigma_b as i64,
            Objective::Margin => r.sigma_b as i64 - r.sigma_a as i64,
        };
        Ok((value, r.sigma_a, r.sigma_b))
    };

    // Subsets are split by their first pool index; each branch enumerates its
    // subsets in lexicographic order and the reduction keeps the earliest best.
    type Best = Option<(i64, Vec<NodeId>, usize, usize)>;
    let better = |a: Best, b: Best| -> Best {
        match (a, b) {
            (None, x) | (x, None) => x,
            (Some(a), Some(b)) => {
                if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                    Some(b)
                } else {
                    Some(a)
                }
            }
        }
    };

    let best: Best = if k == 0 {
        let (v, sa, sb) = score(&[])?;
        Some((v, Vec::new(), sa, sb))
    } else {
        let branches: Vec<Result<Best>> = (0..=pool.len() - k)
            .into_par_iter()
            .map(|first| {
                let mut best: Best = None;
                let mut idx: Vec<usize> = (first..first + k).collect();
                loop {
                    let seeds: Vec<NodeId> = idx.iter().map(|&i| pool[i]).collect();
                    let (v, sa, sb) = score(&seeds)?;
                    best = better(best, Some((v, seeds, sa, sb)));
                    if !next_combination(&mut idx[1..], pool.len()) {
                        break;
                    }
                }
                Ok(best)
            })
            .collect();
        let mut best: Best = None;
        for b in branches {
            best = better(best, b?);
        }
        best
    };

    let (_, members, sigma_a, sigma_b) = best.expect("at least one subset");
    Ok(BruteForceResult {
        seeds: SeedSet { members, budget: k },
        sigma_a,
        sigma_b,
        evaluated: total,
    })
}

/// Advance `idx` (strictly increasing indices below `n`) to the next
/// combination in lexicographic order. Returns false when exhausted.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - (k - i) {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn th() -> Thresholds {
        Thresholds::new(0.5, 0.3).unwrap()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(60, 30), 118264581564861424);
    }

    #[test]
    fn combinations_in_order() {
        let mut idx = vec![0, 1];
        let mut seen = vec![idx.clone()];
        while next_combination(&mut idx, 4) {
            seen.push(idx.clone());
        }
        assert_eq!(seen, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn g3_ties_break_lexicographically() {
        let g = WeightedDigraph::neutral(3, [(0, 2, 0.6), (1, 2, 0.5)]).unwrap();
        let r = brute_force(&g, &th(), &[0], 1, &BruteForceConfig::default()).unwrap();
        assert_eq!((r.seeds.members, r.sigma_b), (vec![1], 1));
        assert_eq!(r.evaluated, 2);
    }

    #[test]
    fn g3_swapped_weights() {
        let g = WeightedDigraph::neutral(3, [(0, 2, 0.5), (1, 2, 0.6)]).unwrap();
        let r = brute_force(&g, &th(), &[0], 1, &BruteForceConfig::default()).unwrap();
        assert_eq!((r.seeds.members, r.sigma_b), (vec![1], 2));
    }

    #[test]
    fn g5_optimum_under_both_objectives() {
        let g = WeightedDigraph::neutral(6, [(0, 1, 0.9), (1, 2, 0.9), (3, 1, 0.9), (4, 5, 0.9)]).unwrap();
        let th = Thresholds::new(0.5, 0.2).unwrap();
        let r = brute_force(&g, &th, &[0], 1, &BruteForceConfig::default()).unwrap();
        assert_eq!((r.seeds.members.clone(), r.sigma_b), (vec![1], 2));
        let cfg = BruteForceConfig { objective: Objective::Margin, ..Default::default() };
        let r = brute_force(&g, &th, &[0], 1, &cfg).unwrap();
        assert_eq!((r.seeds.members.clone(), r.margin()), (vec![1], 1));
    }

    #[test]
    fn cap_and_budget_errors() {
        let g = WeightedDigraph::neutral(30, []).unwrap();
        let cfg = BruteForceConfig { combination_cap: 100, ..Default::default() };
        match brute_force(&g, &th(), &[0], 3, &cfg) {
            Err(Error::CapExceeded { actual, .. }) => assert_eq!(actual, binomial(29, 3)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            brute_force(&g, &th(), &[0], 30, &BruteForceConfig::default()),
            Err(Error::Precondition(_))
        ));
    }
}
