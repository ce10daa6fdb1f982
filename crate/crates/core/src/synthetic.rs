//! Random graphs with planted community structure.

use std::collections::HashSet;

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeList, NodeId};
use crate::seeded_rng;

/// Nodes are split into `communities` contiguous blocks of near-equal size.
/// Each arc picks a uniform source, then a target inside the source's block
/// with probability `1 - cross_fraction`, otherwise in another block.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlantedPartition {
    pub nodes: usize,
    pub communities: usize,
    pub arcs: usize,
    pub cross_fraction: f64,
    pub seed: u64,
}

impl PlantedPartition {
    /// Block of node `u`.
    pub fn block_of(&self, u: NodeId) -> usize {
        u * self.communities / self.nodes
    }

    fn block_range(&self, c: usize) -> std::ops::Range<NodeId> {
        let start = (c * self.nodes).div_ceil(self.communities);
        let end = ((c + 1) * self.nodes).div_ceil(self.communities);
        start..end
    }

    /// The planted blocks as member lists.
    pub fn blocks(&self) -> Vec<Vec<NodeId>> {
        (0..self.communities).map(|c| self.block_range(c).collect()).collect()
    }

    pub fn generate(&self) -> Result<EdgeList> {
        let (n, c) = (self.nodes, self.communities);
        if c == 0 || n < 2 * c {
            return Err(Error::Config(format!("{c} communities need at least 2 nodes each (n = {n})")));
        }
        if !(0.0..=1.0).contains(&self.cross_fraction) || (c == 1 && self.cross_fraction > 0.0) {
            return Err(Error::Config(format!("cross fraction {} is not usable", self.cross_fraction)));
        }
        let smallest = (0..c).map(|b| self.block_range(b).len()).min().unwrap_or(0);
        if self.arcs > c * smallest * (smallest - 1) / 2 {
            return Err(Error::Config(format!("{} arcs is too dense for {n} nodes", self.arcs)));
        }
        let mut rng = seeded_rng(self.seed);
        let mut seen: HashSet<(NodeId, NodeId)> = HashSet::with_capacity(self.arcs);
        let mut pairs = Vec::with_capacity(self.arcs);
        while pairs.len() < self.arcs {
            let u = rng.gen_range(0..n);
            let own = self.block_of(u);
            let block = if c > 1 && rng.gen_bool(self.cross_fraction) {
                (own + rng.gen_range(1..c)) % c
            } else {
                own
            };
            let v = rng.gen_range(self.block_range(block));
            if u != v && seen.insert((u, v)) {
                pairs.push((u, v));
            }
        }
        EdgeList::from_pairs(n, pairs)
    }
}
