//! Centrality and community primitives shared by the seed-selection algorithms.

mod louvain;
mod pagerank;

pub use louvain::{louvain, modularity, CommunityPartition};
pub use pagerank::{pagerank, PageRankConfig, PageRankVector};

use crate::graph::{NodeId, WeightedDigraph};

/// Sort `nodes` by descending out-degree (arc count), ties by ascending id.
pub fn rank_by_out_degree(graph: &WeightedDigraph, nodes: &[NodeId]) -> Vec<NodeId> {
    let mut ranked = nodes.to_vec();
    ranked.sort_by_key(|&u| (std::cmp::Reverse(graph.out_degree(u)), u));
    ranked
}
