//! Louvain community detection on the undirected projection of a digraph.
//!
//! The projection sums the weights of antiparallel arcs. Each level runs
//! local moving in a seeded random node order until no node improves, then
//! collapses every community into a supernode. Modularity after every level
//! is recorded in [`CommunityPartition::pass_modularity`].

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{NodeId, WeightedDigraph};
use crate::seeded_rng;

/// Gains below this are treated as zero so float noise cannot cause cycling.
const MIN_GAIN: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommunityPartition {
    /// Community index of every node.
    pub assignment: Vec<usize>,
    /// Members of each community, ascending. Communities are numbered by
    /// their smallest member.
    pub communities: Vec<Vec<NodeId>>,
    pub modularity: f64,
    /// Modularity of the singleton partition followed by the value after
    /// each aggregation level.
    pub pass_modularity: Vec<f64>,
}

impl CommunityPartition {
    /// Build from explicit member lists, checking they partition `0..n`.
    pub fn from_communities(
        graph: &WeightedDigraph,
        communities: Vec<Vec<NodeId>>,
    ) -> Result<Self> {
        let n = graph.node_count();
        let mut assignment = vec![usize::MAX; n];
        for (c, members) in communities.iter().enumerate() {
            for &u in members {
                if u >= n {
                    return Err(Error::Domain(format!("community member {u} outside 0..{n}")));
                }
                if assignment[u] != usize::MAX {
                    return Err(Error::Domain(format!("node {u} is in two communities")));
                }
                assignment[u] = c;
            }
        }
        if let Some(u) = assignment.iter().position(|&c| c == usize::MAX) {
            return Err(Error::Domain(format!("node {u} is in no community")));
        }
        Self::from_assignment(graph, &assignment)
    }

    /// Build from a per-node label vector. Labels are renumbered canonically.
    pub fn from_assignment(graph: &WeightedDigraph, labels: &[usize]) -> Result<Self> {
        let q = modularity(graph, labels)?;
        let (assignment, communities) = canonical(labels);
        Ok(CommunityPartition {
            assignment,
            communities,
            modularity: q,
            pass_modularity: vec![q],
        })
    }

    pub fn len(&self) -> usize {
        self.communities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.communities.is_empty()
    }

    pub fn community_of(&self, u: NodeId) -> usize {
        self.assignment[u]
    }
}

fn canonical(labels: &[usize]) -> (Vec<usize>, Vec<Vec<NodeId>>) {
    let mut renumber: BTreeMap<usize, usize> = BTreeMap::new();
    let mut communities: Vec<Vec<NodeId>> = Vec::new();
    let assignment = labels
        .iter()
        .enumerate()
        .map(|(u, &l)| {
            let next = renumber.len();
            let c = *renumber.entry(l).or_insert(next);
            if c == communities.len() {
                communities.push(Vec::new());
            }
            communities[c].push(u);
            c
        })
        .collect();
    (assignment, communities)
}

/// Symmetric weighted graph. `adj` excludes the diagonal, which lives in
/// `loops` with the convention `k_i = loops[i] + sum_j adj[i][j]`.
struct Undirected {
    adj: Vec<Vec<(usize, f64)>>,
    loops: Vec<f64>,
    degree: Vec<f64>,
    two_m: f64,
}

impl Undirected {
    fn project(graph: &WeightedDigraph) -> Self {
        let n = graph.node_count();
        let mut maps: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); n];
        for a in graph.arcs() {
            *maps[a.source].entry(a.target).or_insert(0.0) += a.weight;
            *maps[a.target].entry(a.source).or_insert(0.0) += a.weight;
        }
        Self::from_maps(maps, vec![0.0; n])
    }

    fn from_maps(maps: Vec<BTreeMap<usize, f64>>, loops: Vec<f64>) -> Self {
        let adj: Vec<Vec<(usize, f64)>> = maps.into_iter().map(|m| m.into_iter().collect()).collect();
        let degree: Vec<f64> = adj
            .iter()
            .zip(&loops)
            .map(|(row, l)| l + row.iter().map(|&(_, w)| w).sum::<f64>())
            .collect();
        let two_m = degree.iter().sum();
        Undirected {
            adj,
            loops,
            degree,
            two_m,
        }
    }

    fn len(&self) -> usize {
        self.adj.len()
    }

    fn modularity(&self, labels: &[usize]) -> f64 {
        if self.two_m <= 0.0 {
            return 0.0;
        }
        let mut inside: BTreeMap<usize, f64> = BTreeMap::new();
        let mut total: BTreeMap<usize, f64> = BTreeMap::new();
        for i in 0..self.len() {
            let c = labels[i];
            *total.entry(c).or_insert(0.0) += self.degree[i];
            let mut w_in = self.loops[i];
            for &(j, w) in &self.adj[i] {
                if labels[j] == c {
                    w_in += w;
                }
            }
            *inside.entry(c).or_insert(0.0) += w_in;
        }
        total
            .iter()
            .map(|(c, &tot)| {
                let w_in = inside.get(c).copied().unwrap_or(0.0);
                w_in / self.two_m - (tot / self.two_m).powi(2)
            })
            .sum()
    }

    /// One round of local moving. Returns the label of every node and whether
    /// any node moved.
    fn local_moving(&self, rng: &mut crate::Rng) -> (Vec<usize>, bool) {
        let n = self.len();
        let mut label: Vec<usize> = (0..n).collect();
        let mut total = self.degree.clone();
        let mut order: Vec<usize> = (0..n).collect();
        let mut moved_any = false;
        let mut link: Vec<f64> = vec![0.0; n];
        let mut seen = vec![false; n];
        let mut touched: Vec<usize> = Vec::new();

        loop {
            order.shuffle(rng);
            let mut moved = false;
            for &i in &order {
                let own = label[i];
                let k_i = self.degree[i];
                for &(j, w) in &self.adj[i] {
                    let c = label[j];
                    if !seen[c] {
                        seen[c] = true;
                        touched.push(c);
                    }
                    link[c] += w;
                }
                total[own] -= k_i;
                let gain = |c: usize, link: &[f64], total: &[f64]| {
                    link[c] - total[c] * k_i / self.two_m
                };
                let mut best = own;
                let mut best_gain = gain(own, &link, &total);
                for &c in &touched {
                    let g = gain(c, &link, &total);
                    if g > best_gain + MIN_GAIN {
                        best = c;
                        best_gain = g;
                    }
                }
                total[best] += k_i;
                if best != own {
                    label[i] = best;
                    moved = true;
                    moved_any = true;
                }
                for &c in &touched {
                    link[c] = 0.0;
                    seen[c] = false;
                }
                touched.clear();
            }
            if !moved {
                break;
            }
        }
        (label, moved_any)
    }

    fn aggregate(&self, label: &[usize]) -> (Self, Vec<usize>) {
        let (assignment, communities) = canonical(label);
        let mut maps: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); communities.len()];
        let mut loops = vec![0.0; communities.len()];
        for i in 0..self.len() {
            let ci = assignment[i];
            loops[ci] += self.loops[i];
            for &(j, w) in &self.adj[i] {
                let cj = assignment[j];
                if ci == cj {
                    loops[ci] += w;
                } else {
                    *maps[ci].entry(cj).or_insert(0.0) += w;
                }
            }
        }
        (Self::from_maps(maps, loops), assignment)
    }
}

/// Newman modularity of `labels` on the undirected projection of `graph`.
pub fn modularity(graph: &WeightedDigraph, labels: &[usize]) -> Result<f64> {
    if labels.len() != graph.node_count() {
        return Err(Error::Domain(format!(
            "partition labels {} nodes, graph has {}",
            labels.len(),
            graph.node_count()
        )));
    }
    Ok(Undirected::project(graph).modularity(labels))
}

/// Detect communities with the two-phase Louvain method. Deterministic for a
/// given `rng_seed`.
pub fn louvain(graph: &WeightedDigraph, rng_seed: u64) -> CommunityPartition {
    let base = Undirected::project(graph);
    let n = base.len();
    let mut rng = seeded_rng(rng_seed);
    let mut membership: Vec<usize> = (0..n).collect();
    let mut pass_modularity = vec![base.modularity(&membership)];

    if base.two_m > 0.0 {
        let mut level = Undirected::project(graph);
        loop {
            let (label, moved) = level.local_moving(&mut rng);
            if !moved {
                break;
            }
            let (next, assignment) = level.aggregate(&label);
            for m in membership.iter_mut() {
                *m = assignment[*m];
            }
            pass_modularity.push(base.modularity(&membership));
            if next.len() == level.len() {
                break;
            }
            level = next;
        }
    }

    let (assignment, communities) = canonical(&membership);
    CommunityPartition {
        modularity: *pass_modularity.last().unwrap(),
        assignment,
        communities,
        pass_modularity,
    }
}
