use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::WeightedDigraph;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PageRankConfig {
    pub damping: f64,
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for PageRankConfig {
    fn default() -> Self {
        PageRankConfig {
            damping: 0.85,
            tol: 1e-9,
            max_iter: 200,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PageRankVector {
    pub scores: Vec<f64>,
    pub damping: f64,
    pub iterations: usize,
    /// L1 distance between the last two iterates.
    pub residual: f64,
    pub residual_history: Vec<f64>,
}

/// Power iteration over uniform out-link transitions. Edge weights are
/// ignored; the mass of dangling nodes is spread uniformly.
pub fn pagerank(graph: &WeightedDigraph, config: PageRankConfig) -> Result<PageRankVector> {
    let n = graph.node_count();
    if n == 0 {
        return Err(Error::Domain("pagerank of an empty graph".into()));
    }
    let PageRankConfig {
        damping,
        tol,
        max_iter,
    } = config;
    if !(damping > 0.0 && damping < 1.0) {
        return Err(Error::Domain(format!("damping {damping} outside (0, 1)")));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Domain(format!("tolerance {tol} must be positive")));
    }

    let nf = n as f64;
    let inv_out: Vec<f64> = (0..n)
        .map(|u| match graph.out_degree(u) {
            0 => 0.0,
            d => 1.0 / d as f64,
        })
        .collect();
    let mut scores = vec![1.0 / nf; n];
    let mut next = vec![0.0; n];
    let mut history = Vec::new();
    let mut residual = f64::INFINITY;
    let mut iterations = 0;

    while iterations < max_iter {
        let dangling: f64 = (0..n)
            .filter(|&u| graph.out_degree(u) == 0)
            .map(|u| scores[u])
            .sum();
        let base = (1.0 - damping) / nf + damping * dangling / nf;
        for (v, slot) in next.iter_mut().enumerate() {
            let pulled: f64 = graph
                .in_neighbors(v)
                .iter()
                .map(|&(u, _)| scores[u] * inv_out[u])
                .sum();
            *slot = base + damping * pulled;
        }
        residual = scores.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut scores, &mut next);
        iterations += 1;
        history.push(residual);
        if residual < tol {
            break;
        }
    }

    Ok(PageRankVector {
        scores,
        damping,
        iterations,
        residual,
        residual_history: history,
    })
}
