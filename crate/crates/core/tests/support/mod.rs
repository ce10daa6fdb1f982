#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use udcim::graph::{Tendency, WeightedDigraph};
use udcim::{seeded_rng, NodeId};

pub const WEIGHTS: [f64; 3] = [0.3, 0.6, 0.9];

/// Random digraph on `n` nodes, each ordered pair an arc with probability `p`,
/// weights from `WEIGHTS`, tendencies uniform over the three kinds.
pub fn random_graph(rng: &mut udcim::Rng, n: usize, p: f64) -> WeightedDigraph {
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p) {
                arcs.push((u, v, WEIGHTS[rng.gen_range(0..WEIGHTS.len())]));
            }
        }
    }
    let tendencies = (0..n).map(|_| Tendency::from_code(rng.gen_range(0..3)).unwrap()).collect();
    WeightedDigraph::from_arcs(n, arcs, tendencies).unwrap()
}

/// Two disjoint random subsets of `0..n` with the given sizes.
pub fn disjoint_seeds(rng: &mut udcim::Rng, n: usize, a: usize, b: usize) -> (Vec<NodeId>, Vec<NodeId>) {
    let mut nodes: Vec<NodeId> = (0..n).collect();
    nodes.shuffle(rng);
    let mut s_a = nodes[..a].to_vec();
    let mut s_b = nodes[a..a + b].to_vec();
    s_a.sort_unstable();
    s_b.sort_unstable();
    (s_a, s_b)
}

/// A small optimization instance.
pub struct Fixture {
    pub graph: WeightedDigraph,
    pub s_a: Vec<NodeId>,
    pub k: usize,
}

/// Deterministic instances with 6 to 10 nodes and k in {1, 2}.
pub fn fixture_suite() -> Vec<Fixture> {
    let mut rng = seeded_rng(20_240_601);
    (0..24)
        .map(|i| {
            let n = 6 + i % 5;
            let graph = random_graph(&mut rng, n, 0.3);
            let (s_a, _) = disjoint_seeds(&mut rng, n, 1 + i % 2, 0);
            Fixture { graph, s_a, k: 1 + (i / 2) % 2 }
        })
        .collect()
}

/// 0 inactive, 1 final A, 2 final B.
pub fn status_codes(state: &udcim::diffusion::ActivationState) -> Vec<u8> {
    use udcim::diffusion::Status;
    state
        .statuses()
        .iter()
        .map(|s| match s {
            Status::Inactive(_) => 0,
            Status::FinalA => 1,
            Status::FinalB => 2,
        })
        .collect()
}

/// Straight transcription of the activation rules on a dense weight matrix.
/// `w[v][u]` is the weight of arc `v -> u`, `tendency[u]` is 0 neutral,
/// 1 leaning A, 2 leaning B. Returns status codes as in `status_codes`.
pub fn reference_diffusion(
    w: &[Vec<f64>],
    tendency: &[u8],
    s_a: &[usize],
    s_b: &[usize],
    theta1: f64,
    theta2: f64,
) -> Vec<u8> {
    const EPS: f64 = 1e-9;
    let n = w.len();
    let at_least = |x: f64, c: f64| x >= c - EPS;
    let mut state = vec![0u8; n];
    for &u in s_a {
        state[u] = 1;
    }
    for &u in s_b {
        state[u] = 2;
    }
    loop {
        // Sums seen by each node at the start of the round.
        let mut t_a = vec![0.0; n];
        let mut t_b = vec![0.0; n];
        for u in 0..n {
            for v in 0..n {
                if state[v] == 1 {
                    t_a[u] += w[v][u];
                }
                if state[v] == 2 {
                    t_b[u] += w[v][u];
                }
            }
        }
        let mut next = state.clone();
        for u in 0..n {
            if state[u] != 0 {
                continue;
            }
            let (a, b) = (t_a[u], t_b[u]);
            let temporary = match tendency[u] {
                1 => at_least(a, theta1) || at_least(b, theta1 + theta2),
                2 => at_least(b, theta1) || at_least(a, theta1 + theta2),
                _ => at_least(a + b, theta1),
            };
            if !temporary {
                continue;
            }
            next[u] = match tendency[u] {
                1 => {
                    if at_least(b, a) && at_least(b, theta1 + theta2) {
                        2
                    } else {
                        1
                    }
                }
                2 => {
                    if at_least(a, b) && at_least(a, theta1 + theta2) {
                        1
                    } else {
                        2
                    }
                }
                _ => {
                    if b > a + EPS {
                        2
                    } else {
                        1
                    }
                }
            };
        }
        if next == state {
            return state;
        }
        state = next;
    }
}

/// Dense view of a graph for the reference simulator.
pub fn dense(graph: &WeightedDigraph) -> (Vec<Vec<f64>>, Vec<u8>) {
    let n = graph.node_count();
    let mut w = vec![vec![0.0; n]; n];
    for a in graph.arcs() {
        w[a.source][a.target] = a.weight;
    }
    let t = (0..n).map(|u| graph.tendency(u).code()).collect();
    (w, t)
}

pub fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    xs[xs.len() / 2]
}
