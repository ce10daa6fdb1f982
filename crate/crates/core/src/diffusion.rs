//! The two-stage competitive diffusion process.
//!
//! Every round first collects the *temporarily active* nodes, i.e. inactive
//! nodes whose incoming weight from finally-active neighbours crosses their
//! tendency-dependent threshold, and then commits each of them to A or B.
//! Both steps read the state as it was at the start of the round, so the
//! outcome does not depend on node order. The process stops after the first
//! round that changes nothing.
//!
//! Weight sums are compared with an absolute tolerance of [`WEIGHT_TOLERANCE`],
//! so `0.3 + 0.6` reaches a threshold of `0.9` and ties with a single `0.9` arc.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{NodeId, Tendency, WeightedDigraph};

/// Slack applied to every weight comparison.
pub const WEIGHT_TOLERANCE: f64 = 1e-9;

/// `x >= c` up to [`WEIGHT_TOLERANCE`].
pub fn reaches(x: f64, c: f64) -> bool {
    x >= c - WEIGHT_TOLERANCE
}

/// Activation thresholds `theta1` (own side) and `theta1 + theta2` (opposing side).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    theta1: f64,
    theta2: f64,
}

impl Thresholds {
    pub fn new(theta1: f64, theta2: f64) -> Result<Self> {
        for (name, v) in [("theta1", theta1), ("theta2", theta2)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Domain(format!("{name} = {v} outside [0, 1]")));
            }
        }
        Ok(Thresholds { theta1, theta2 })
    }

    pub fn theta1(&self) -> f64 {
        self.theta1
    }

    pub fn theta2(&self) -> f64 {
        self.theta2
    }

    /// Threshold for influence coming from the side a node does not lean to.
    pub fn opposing(&self) -> f64 {
        self.theta1 + self.theta2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

/// Per-node diffusion status. Transitions only go from `Inactive` to a final state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    Inactive(Tendency),
    FinalA,
    FinalB,
}

impl Status {
    pub fn is_final(self) -> bool {
        !matches!(self, Status::Inactive(_))
    }

    /// Numeric encoding: inactive nodes carry their tendency code (0, 1, 2),
    /// final A is 1.5 and final B is 2.5.
    pub fn code(self) -> f64 {
        match self {
            Status::Inactive(t) => t.code() as f64,
            Status::FinalA => 1.5,
            Status::FinalB => 2.5,
        }
    }
}

/// Status of every node.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ActivationState(Vec<Status>);

impl ActivationState {
    /// All nodes inactive with their graph tendency.
    pub fn initial(graph: &WeightedDigraph) -> Self {
        ActivationState(
            graph
                .tendencies()
                .iter()
                .map(|&t| Status::Inactive(t))
                .collect(),
        )
    }

    /// Initial state with `s_a` final A and `s_b` final B.
    pub fn seeded(graph: &WeightedDigraph, s_a: &[NodeId], s_b: &[NodeId]) -> Result<Self> {
        let n = graph.node_count();
        let mut state = Self::initial(graph);
        for (seeds, status) in [(s_a, Status::FinalA), (s_b, Status::FinalB)] {
            for &u in seeds {
                if u >= n {
                    return Err(Error::Precondition(format!(
                        "seed {u} is not a node (n = {n})"
                    )));
                }
                if state.0[u].is_final() && state.0[u] != status {
                    return Err(Error::Precondition(format!(
                        "node {u} is in both S_A and S_B"
                    )));
                }
                state.0[u] = status;
            }
        }
        Ok(state)
    }

    pub fn statuses(&self) -> &[Status] {
        &self.0
    }

    pub fn get(&self, u: NodeId) -> Status {
        self.0[u]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self, side: Side) -> usize {
        let target = match side {
            Side::A => Status::FinalA,
            Side::B => Status::FinalB,
        };
        self.0.iter().filter(|&&s| s == target).count()
    }

    /// Nodes in final state for `side`, ascending.
    pub fn members(&self, side: Side) -> Vec<NodeId> {
        let target = match side {
            Side::A => Status::FinalA,
            Side::B => Status::FinalB,
        };
        (0..self.0.len()).filter(|&u| self.0[u] == target).collect()
    }
}

/// Incoming weight at `u` from final-A and final-B neighbours.
pub fn incoming_weights(graph: &WeightedDigraph, state: &ActivationState, u: NodeId) -> (f64, f64) {
    let (mut t_a, mut t_b) = (0.0, 0.0);
    for &(v, w) in graph.in_neighbors(u) {
        match state.0[v] {
            Status::FinalA => t_a += w,
            Status::FinalB => t_b += w,
            Status::Inactive(_) => {}
        }
    }
    (t_a, t_b)
}

fn is_temporarily_active(tendency: Tendency, t_a: f64, t_b: f64, th: &Thresholds) -> bool {
    match tendency {
        Tendency::A => reaches(t_a, th.theta1) || reaches(t_b, th.opposing()),
        Tendency::B => reaches(t_b, th.theta1) || reaches(t_a, th.opposing()),
        Tendency::Neutral => reaches(t_a + t_b, th.theta1),
    }
}

fn final_side(tendency: Tendency, t_a: f64, t_b: f64, th: &Thresholds) -> Status {
    match tendency {
        Tendency::A if reaches(t_b, t_a) && reaches(t_b, th.opposing()) => Status::FinalB,
        Tendency::A => Status::FinalA,
        Tendency::B if reaches(t_a, t_b) && reaches(t_a, th.opposing()) => Status::FinalA,
        Tendency::B => Status::FinalB,
        Tendency::Neutral if !reaches(t_a, t_b) => Status::FinalB,
        Tendency::Neutral => Status::FinalA,
    }
}

/// Inactive nodes that are temporarily activated by the current state, ascending.
pub fn temporary_active(
    graph: &WeightedDigraph,
    state: &ActivationState,
    thresholds: &Thresholds,
) -> Vec<NodeId> {
    (0..graph.node_count())
        .filter(|&u| match state.0[u] {
            Status::Inactive(t) => {
                let (t_a, t_b) = incoming_weights(graph, state, u);
                is_temporarily_active(t, t_a, t_b, thresholds)
            }
            _ => false,
        })
        .collect()
}

/// Commit every node of `temporary` to a side. All sums are taken against `state`
/// as given; nodes already final are left alone. Returns whether anything changed.
pub fn finalize(
    graph: &WeightedDigraph,
    state: &ActivationState,
    thresholds: &Thresholds,
    temporary: &[NodeId],
) -> (ActivationState, bool) {
    let decided = decide(graph, state, thresholds, temporary);
    let changed = !decided.is_empty();
    let mut next = state.clone();
    for (u, s) in decided {
        next.0[u] = s;
    }
    (next, changed)
}

fn decide(
    graph: &WeightedDigraph,
    state: &ActivationState,
    thresholds: &Thresholds,
    temporary: &[NodeId],
) -> Vec<(NodeId, Status)> {
    temporary
        .iter()
        .filter_map(|&u| match state.0[u] {
            Status::Inactive(t) => {
                let (t_a, t_b) = incoming_weights(graph, state, u);
                Some((u, final_side(t, t_a, t_b, thresholds)))
            }
            _ => None,
        })
        .collect()
}

/// Outcome of a diffusion run. Seeds are included in both counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffusionResult {
    pub final_state: ActivationState,
    pub sigma_a: usize,
    pub sigma_b: usize,
    /// Rounds executed, including the last one that changed nothing.
    pub rounds: usize,
}

impl DiffusionResult {
    pub fn sigma(&self, side: Side) -> usize {
        match side {
            Side::A => self.sigma_a,
            Side::B => self.sigma_b,
        }
    }
}

/// Run the process from seeds `s_a` and `s_b` to its fixed point.
pub fn diffuse(
    graph: &WeightedDigraph,
    thresholds: &Thresholds,
    s_a: &[NodeId],
    s_b: &[NodeId],
) -> Result<DiffusionResult> {
    let state = ActivationState::seeded(graph, s_a, s_b)?;
    Ok(run(graph, thresholds, state, None))
}

/// Continue diffusion from an arbitrary state.
pub fn diffuse_from(
    graph: &WeightedDigraph,
    thresholds: &Thresholds,
    state: ActivationState,
) -> DiffusionResult {
    run(graph, thresholds, state, None)
}

/// Like [`diffuse`], also returning the state after every round
/// (`trace[0]` is the seeded state, `trace[r]` the state after round `r`).
pub fn diffuse_traced(
    graph: &WeightedDigraph,
    thresholds: &Thresholds,
    s_a: &[NodeId],
    s_b: &[NodeId],
) -> Result<(DiffusionResult, Vec<ActivationState>)> {
    let state = ActivationState::seeded(graph, s_a, s_b)?;
    let mut trace = vec![state.clone()];
    let result = run(graph, thresholds, state, Some(&mut trace));
    Ok((result, trace))
}

fn run(
    graph: &WeightedDigraph,
    thresholds: &Thresholds,
    mut state: ActivationState,
    mut trace: Option<&mut Vec<ActivationState>>,
) -> DiffusionResult {
    let n = graph.node_count();
    let mut rounds = 0;
    if n > 0 {
        // Only nodes whose incoming sums moved can change their temporary
        // status after the first round, so later rounds scan the out-neighbours
        // of the previous round's newly final nodes.
        let mut candidates = temporary_active(graph, &state, thresholds);
        let mut mark = vec![false; n];
        loop {
            rounds += 1;
            let decided = decide(graph, &state, thresholds, &candidates);
            for &(u, s) in &decided {
                state.0[u] = s;
            }
            if let Some(t) = trace.as_deref_mut() {
                t.push(state.clone());
            }
            if decided.is_empty() {
                break;
            }
            let mut next = Vec::new();
            for &(u, _) in &decided {
                for &(v, _) in graph.out_neighbors(u) {
                    if !mark[v] && !state.0[v].is_final() {
                        mark[v] = true;
                        next.push(v);
                    }
                }
            }
            next.sort_unstable();
            for &v in &next {
                mark[v] = false;
            }
            candidates = next
                .into_iter()
                .filter(|&v| match state.0[v] {
                    Status::Inactive(t) => {
                        let (t_a, t_b) = incoming_weights(graph, &state, v);
                        is_temporarily_active(t, t_a, t_b, thresholds)
                    }
                    _ => false,
                })
                .collect();
        }
    }
    DiffusionResult {
        sigma_a: state.count(Side::A),
        sigma_b: state.count(Side::B),
        final_state: state,
        rounds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn th() -> Thresholds {
        Thresholds::new(0.5, 0.3).unwrap()
    }

    fn g3(w0: f64, w1: f64, t2: Tendency) -> WeightedDigraph {
        WeightedDigraph::from_arcs(
            3,
            [(0, 2, w0), (1, 2, w1)],
            vec![Tendency::Neutral, Tendency::Neutral, t2],
        )
        .unwrap()
    }

    fn state(g: &WeightedDigraph) -> ActivationState {
        ActivationState::seeded(g, &[0], &[1]).unwrap()
    }

    #[test]
    fn thresholds_are_validated() {
        assert!(Thresholds::new(1.1, 0.0).is_err());
        assert!(Thresholds::new(0.5, -0.1).is_err());
        assert_eq!(th().opposing(), 0.5 + 0.3);
    }

    #[test]
    fn neutral_node_temporarily_active_on_combined_weight() {
        let g = g3(0.6, 0.5, Tendency::Neutral);
        assert_eq!(temporary_active(&g, &state(&g), &th()), vec![2]);
    }

    #[test]
    fn a_leaning_node_active_via_own_side() {
        let g = g3(0.6, 0.5, Tendency::A);
        let s = state(&g);
        assert_eq!(incoming_weights(&g, &s, 2), (0.6, 0.5));
        assert_eq!(temporary_active(&g, &s, &th()), vec![2]);
    }

    #[test]
    fn nothing_active_without_final_nodes() {
        let g = g3(0.6, 0.5, Tendency::Neutral);
        let s = ActivationState::initial(&g);
        assert!(temporary_active(&g, &s, &th()).is_empty());
    }

    #[test]
    fn opposing_threshold_applies_to_leaning_nodes() {
        // B-leaning node with only A influence 0.6 < 0.8 stays inactive.
        let g = WeightedDigraph::from_arcs(
            2,
            [(0, 1, 0.6)],
            vec![Tendency::Neutral, Tendency::B],
        )
        .unwrap();
        let s = ActivationState::seeded(&g, &[0], &[]).unwrap();
        assert!(temporary_active(&g, &s, &th()).is_empty());
    }

    #[test]
    fn finalize_neutral_prefers_larger_side() {
        let g = g3(0.6, 0.5, Tendency::Neutral);
        let (next, changed) = finalize(&g, &state(&g), &th(), &[2]);
        assert!(changed);
        assert_eq!(next.get(2), Status::FinalA);

        let g = g3(0.5, 0.6, Tendency::Neutral);
        let (next, _) = finalize(&g, &state(&g), &th(), &[2]);
        assert_eq!(next.get(2), Status::FinalB);
    }

    #[test]
    fn finalize_neutral_tie_goes_to_a() {
        let g = g3(0.5, 0.5, Tendency::Neutral);
        let (next, _) = finalize(&g, &state(&g), &th(), &[2]);
        assert_eq!(next.get(2), Status::FinalA);
    }

    #[test]
    fn finalize_a_leaning_switches_when_b_dominates() {
        let g = g3(0.6, 0.9, Tendency::A);
        let (next, _) = finalize(&g, &state(&g), &th(), &[2]);
        assert_eq!(next.get(2), Status::FinalB);
        let g = g3(0.6, 0.5, Tendency::A);
        let (next, _) = finalize(&g, &state(&g), &th(), &[2]);
        assert_eq!(next.get(2), Status::FinalA);
    }

    #[test]
    fn finalize_ignores_final_nodes_and_empty_sets() {
        let g = g3(0.6, 0.5, Tendency::Neutral);
        let s = state(&g);
        let (next, changed) = finalize(&g, &s, &th(), &[]);
        assert!(!changed);
        assert_eq!(next, s);
        let (next, changed) = finalize(&g, &s, &th(), &[0, 1]);
        assert!(!changed);
        assert_eq!(next, s);
    }

    #[test]
    fn diffuse_g3() {
        let g = g3(0.6, 0.5, Tendency::Neutral);
        let r = diffuse(&g, &th(), &[0], &[1]).unwrap();
        assert_eq!((r.sigma_a, r.sigma_b, r.rounds), (2, 1, 2));
        assert_eq!(r.final_state.members(Side::A), vec![0, 2]);
        assert_eq!(r.sigma(Side::A), 2);
    }

    #[test]
    fn diffuse_empty_and_saturated() {
        let g = g3(0.6, 0.5, Tendency::Neutral);
        let r = diffuse(&g, &th(), &[], &[]).unwrap();
        assert_eq!((r.sigma_a, r.sigma_b, r.rounds), (0, 0, 1));
        assert_eq!(r.sigma(Side::B), 0);
        let r = diffuse(&g, &th(), &[0, 1, 2], &[]).unwrap();
        assert_eq!((r.sigma_a, r.sigma_b), (3, 0));
    }

    #[test]
    fn diffuse_rejects_bad_seeds() {
        let g = g3(0.6, 0.5, Tendency::Neutral);
        assert!(matches!(
            diffuse(&g, &th(), &[0], &[0]),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            diffuse(&g, &th(), &[5], &[]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn zero_threshold_activates_isolated_neutrals() {
        let g = g3(0.6, 0.5, Tendency::Neutral);
        let th = Thresholds::new(0.0, 0.0).unwrap();
        let r = diffuse(&g, &th, &[], &[]).unwrap();
        // t_b > t_a fails on 0 = 0, so every neutral node goes to A.
        assert_eq!(r.sigma_a, 3);
    }

    #[test]
    fn trace_records_every_round() {
        let g = WeightedDigraph::neutral(4, [(0, 1, 0.9), (1, 2, 0.9), (2, 3, 0.9)]).unwrap();
        let (r, trace) = diffuse_traced(&g, &th(), &[0], &[]).unwrap();
        assert_eq!(r.rounds, 4);
        assert_eq!(trace.len(), r.rounds + 1);
        assert_eq!(trace[1].count(Side::A), 2);
        assert_eq!(trace.last().unwrap(), &r.final_state);
    }

    #[test]
    fn status_codes() {
        assert_eq!(Status::Inactive(Tendency::B).code(), 2.0);
        assert_eq!(Status::FinalA.code(), 1.5);
        assert_eq!(Status::FinalB.code(), 2.5);
    }
}
