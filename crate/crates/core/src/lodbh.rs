//! Local out-degree based heuristic for choosing `S_B`.
//!
//! The nodes A reaches on its own are bucketed by community. Inside every
//! touched community a reverse breadth-first search collects the nodes that
//! can reach those buckets without passing through `S_A`; the candidates are
//! ranked by out-degree and the first `k` become `S_B`.

use std::collections::HashSet;
use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::analytics::{rank_by_out_degree, CommunityPartition};
use crate::diffusion::{diffuse, Side, Thresholds};
use crate::error::{Error, Result};
use crate::graph::{NodeId, WeightedDigraph};

/// A seed set chosen under budget `budget`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedSet {
    pub members: Vec<NodeId>,
    pub budget: usize,
}

impl SeedSet {
    /// Fewer members than the budget allowed.
    pub fn is_short(&self) -> bool {
        self.members.len() < self.budget
    }
}

/// Every node of `community` that reaches `roots` along arcs inside the
/// community without entering `s_a`, including the roots, in dequeue order.
pub fn find_parents(
    graph: &WeightedDigraph,
    roots: &[NodeId],
    community: &[NodeId],
    s_a: &[NodeId],
) -> Vec<NodeId> {
    let inside: HashSet<NodeId> = community.iter().copied().collect();
    let blocked: HashSet<NodeId> = s_a.iter().copied().collect();
    reverse_bfs(graph, roots, |v| inside.contains(&v), |v| blocked.contains(&v))
}

fn reverse_bfs(
    graph: &WeightedDigraph,
    roots: &[NodeId],
    inside: impl Fn(NodeId) -> bool,
    blocked: impl Fn(NodeId) -> bool,
) -> Vec<NodeId> {
    let mut visited: HashSet<NodeId> = HashSet::with_capacity(roots.len());
    let mut queue: VecDeque<NodeId> = VecDeque::new();
    for &u in roots {
        if visited.insert(u) {
            queue.push_back(u);
        }
    }
    let mut order = Vec::new();
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for &(v, _) in graph.in_neighbors(u) {
            if inside(v) && !blocked(v) && visited.insert(v) {
                queue.push_back(v);
            }
        }
    }
    order
}

/// Full output of [`get_seed_sb`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LodbhSelection {
    pub seeds: SeedSet,
    /// Nodes A reaches when B does not play (seeds included), ascending.
    pub influenced: Vec<NodeId>,
    /// Communities holding at least one influenced node.
    pub touched_communities: Vec<usize>,
    /// All candidates after removing `S_A`, in ranked order.
    pub candidates: Vec<NodeId>,
}

/// Choose up to `k` seeds for B against `s_a`.
///
/// Returns a short seed set when fewer than `k` candidates exist; see
/// [`SeedSet::is_short`].
pub fn get_seed_sb(
    graph: &WeightedDigraph,
    thresholds: &Thresholds,
    s_a: &[NodeId],
    k: usize,
    partition: &CommunityPartition,
) -> Result<LodbhSelection> {
    if s_a.is_empty() {
        return Err(Error::Precondition("S_A must be non-empty".into()));
    }
    if k == 0 {
        return Err(Error::Precondition("budget k must be at least 1".into()));
    }
    if partition.assignment.len() != graph.node_count() {
        return Err(Error::Precondition(format!(
            "partition covers {} nodes, graph has {}",
            partition.assignment.len(),
            graph.node_count()
        )));
    }

    let alone = diffuse(graph, thresholds, s_a, &[])?;
    let influenced = alone.final_state.members(Side::A);

    let mut buckets: Vec<Vec<NodeId>> = vec![Vec::new(); partition.len()];
    for &u in &influenced {
        buckets[partition.community_of(u)].push(u);
    }
    let touched_communities: Vec<usize> =
        (0..buckets.len()).filter(|&c| !buckets[c].is_empty()).collect();

    let mut in_s_a = vec![false; graph.node_count()];
    for &u in s_a {
        in_s_a[u] = true;
    }
    let mut parents = Vec::new();
    for &c in &touched_communities {
        let found = reverse_bfs(
            graph,
            &buckets[c],
            |v| partition.community_of(v) == c,
            |v| in_s_a[v],
        );
        parents.extend(found);
    }
    let found = parents.len();
    parents.retain(|&v| !in_s_a[v]);
    if parents.is_empty() {
        return Err(Error::NoCandidates {
            influenced: influenced.len(),
            communities: touched_communities.len(),
            parents: found,
        });
    }

    let candidates = rank_by_out_degree(graph, &parents);
    let members = candidates.iter().take(k).copied().collect();
    Ok(LodbhSelection {
        seeds: SeedSet { members, budget: k },
        influenced,
        touched_communities,
        candidates,
    })
}
