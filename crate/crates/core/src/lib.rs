//! User-driven competitive influence maximization.
//!
//! Two competitors, A and B, seed a directed weighted network. Each node
//! carries a tendency (A, B or neutral) and is activated in two stages: it is
//! first *temporarily* activated once enough incoming weight comes from
//! finally-active neighbours, and is then *finally* committed to one side by
//! comparing the A and B weight it receives. Given a fixed seed set `S_A`,
//! the crate searches for a seed set `S_B` of size `k` that maximizes B's
//! final spread.
//!
//! - [`diffusion`] runs the two-stage process to its fixed point.
//! - [`analytics`] provides PageRank, Louvain communities and out-degree ranking.
//! - [`lodbh`] is the local out-degree heuristic over reverse-reachable nodes.
//! - [`csbga`] is the steady-state genetic algorithm with community-scored mutation.
//! - [`exact`] holds the brute-force optimizer, the LP-format model emitter
//!   and a small exact 0/1 solver used to check emitted models.
//! - [`synthetic`] generates planted-partition test graphs.
//! - [`experiment`] loads datasets, runs algorithms and writes JSON/CSV reports.
//!
//! See the `examples/` directory of this crate for one runnable program per
//! capability.

pub mod analytics;
pub mod csbga;
pub mod diffusion;
pub mod error;
pub mod exact;
pub mod experiment;
pub mod graph;
pub mod lodbh;
pub mod synthetic;

pub use diffusion::{diffuse, DiffusionResult, Side, Thresholds};
pub use error::{Error, Result};
pub use graph::{NodeId, Tendency, WeightedDigraph};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator behind every stochastic choice in the crate.
pub type Rng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
