//! Benchmark runs: load a dataset once, run several seed-selection algorithms
//! against the same `S_A`, and report spreads and timings as JSON or CSV.

use std::fmt;
use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rand::seq::index::sample;
use serde::{Deserialize, Serialize};

use crate::analytics::{louvain, rank_by_out_degree, CommunityPartition};
use crate::csbga::{evolve, GaConfig};
use crate::diffusion::{diffuse, Thresholds};
use crate::error::{Error, Result};
use crate::exact::{brute_force, BruteForceConfig};
use crate::graph::{parse_edge_list, parse_tendencies, Directedness, NodeId, TendencyDefault, WeightPolicy, WeightedDigraph};
use crate::lodbh::get_seed_sb;
use crate::seeded_rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Lodbh,
    Csbga,
    Exact,
    RandomBaseline,
}

impl Algorithm {
    pub fn is_stochastic(self) -> bool {
        matches!(self, Algorithm::Csbga | Algorithm::RandomBaseline)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Lodbh => "lodbh",
            Algorithm::Csbga => "csbga",
            Algorithm::Exact => "exact",
            Algorithm::RandomBaseline => "random-baseline",
        })
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lodbh" => Ok(Algorithm::Lodbh),
            "csbga" | "csbgh" => Ok(Algorithm::Csbga),
            "exact" | "brute-force" => Ok(Algorithm::Exact),
            "random-baseline" | "random" => Ok(Algorithm::RandomBaseline),
            _ => Err(Error::Config(format!("unknown algorithm `{s}`"))),
        }
    }
}

/// How `S_A` is built.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeedSource {
    /// Node labels as they appear in the dataset.
    Explicit(Vec<String>),
    /// The `k` nodes of highest out-degree (ties by id).
    TopOutDegree,
    /// `k` nodes drawn uniformly.
    Random { seed: u64 },
}

impl SeedSource {
    pub fn resolve(&self, graph: &WeightedDigraph, k: usize) -> Result<Vec<NodeId>> {
        let n = graph.node_count();
        let need = |k: usize| {
            if k > n {
                Err(Error::Precondition(format!("|S_A| = {k} exceeds n = {n}")))
            } else {
                Ok(())
            }
        };
        let mut seeds = match self {
            SeedSource::Explicit(labels) => labels
                .iter()
                .map(|l| {
                    graph
                        .node_by_label(l)
                        .ok_or_else(|| Error::Config(format!("S_A node `{l}` is not in the graph")))
                })
                .collect::<Result<Vec<_>>>()?,
            SeedSource::TopOutDegree => {
                need(k)?;
                let all: Vec<NodeId> = (0..n).collect();
                rank_by_out_degree(graph, &all).into_iter().take(k).collect()
            }
            SeedSource::Random { seed } => {
                need(k)?;
                sample(&mut seeded_rng(*seed), n, k).into_vec()
            }
        };
        seeds.sort_unstable();
        seeds.dedup();
        Ok(seeds)
    }
}

impl fmt::Display for SeedSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeedSource::Explicit(labels) => write!(f, "list:{}", labels.join(",")),
            SeedSource::TopOutDegree => write!(f, "top-out-degree"),
            SeedSource::Random { seed } => write!(f, "random:{seed}"),
        }
    }
}

impl FromStr for SeedSource {
    type Err = Error;

    /// Accepts `top-out-degree`, `random:<seed>`, `list:<l1>,<l2>,...` or a
    /// bare comma-separated label list.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("invalid S_A spec `{s}`"));
        if s == "top-out-degree" || s == "top" {
            return Ok(SeedSource::TopOutDegree);
        }
        if let Some(seed) = s.strip_prefix("random:") {
            return Ok(SeedSource::Random {
                seed: seed.parse().map_err(|_| bad())?,
            });
        }
        let list = s.strip_prefix("list:").unwrap_or(s);
        let labels: Vec<String> = list.split(',').map(|l| l.trim().to_string()).collect();
        if labels.iter().any(|l| l.is_empty()) {
            return Err(bad());
        }
        Ok(SeedSource::Explicit(labels))
    }
}

/// Tendencies from a `label code` file (unlisted nodes get the default) or
/// from a policy alone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum TendencySpec {
    Policy(TendencyDefault),
    File { path: PathBuf, default: TendencyDefault },
}

impl fmt::Display for TendencySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TendencySpec::Policy(p) => write!(f, "{p}"),
            TendencySpec::File { path, default } => write!(f, "file:{}+{default}", path.display()),
        }
    }
}

impl FromStr for TendencySpec {
    type Err = Error;

    /// A policy string (`neutral`, `random:<seed>:<pA>:<pB>`) or a file path.
    fn from_str(s: &str) -> Result<Self> {
        match s.parse::<TendencyDefault>() {
            Ok(p) => Ok(TendencySpec::Policy(p)),
            Err(_) if s.starts_with("random:") => Err(Error::Config(format!("invalid tendency policy `{s}`"))),
            Err(_) => Ok(TendencySpec::File {
                path: PathBuf::from(s),
                default: TendencyDefault::Neutral,
            }),
        }
    }
}

/// A graph ready for experiments plus the descriptors that produced it.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub name: String,
    pub graph: WeightedDigraph,
    pub weights: String,
    pub tendencies: String,
}

impl Dataset {
    pub fn new(name: impl Into<String>, graph: WeightedDigraph) -> Self {
        Dataset {
            name: name.into(),
            graph,
            weights: "given".into(),
            tendencies: "given".into(),
        }
    }
}

/// Read an edge list, assign weights and tendencies.
pub fn load_dataset(
    path: &Path,
    directedness: Directedness,
    weights: WeightPolicy,
    tendencies: &TendencySpec,
) -> Result<Dataset> {
    let file = File::open(path).map_err(|e| Error::Config(format!("cannot open {}: {e}", path.display())))?;
    let edges = parse_edge_list(BufReader::new(file), directedness)?;
    let graph = edges.assign_weights(weights)?;
    let assigned = match tendencies {
        TendencySpec::Policy(p) => p.assign(graph.node_count())?,
        TendencySpec::File { path, default } => {
            let file = File::open(path)
                .map_err(|e| Error::Config(format!("cannot open {}: {e}", path.display())))?;
            parse_tendencies(BufReader::new(file), &graph, *default)?
        }
    };
    let graph = graph.with_tendencies(assigned)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    Ok(Dataset {
        name,
        graph,
        weights: weights.to_string(),
        tendencies: tendencies.to_string(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub dataset: PathBuf,
    pub directedness: Directedness,
    pub weights: WeightPolicy,
    pub tendencies: TendencySpec,
    pub theta1: f64,
    pub theta2: f64,
    pub k: usize,
    pub seed_a: SeedSource,
    pub algorithms: Vec<Algorithm>,
    /// Base seed; repetition `i` of a stochastic algorithm uses `rng_seed + i`.
    /// Also seeds Louvain.
    pub rng_seed: u64,
    pub repetitions: usize,
    pub ga: GaConfig,
    pub brute: BruteForceConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            dataset: PathBuf::new(),
            directedness: Directedness::AsDirected,
            weights: WeightPolicy::InverseInDegree,
            tendencies: TendencySpec::Policy(TendencyDefault::Neutral),
            theta1: 0.5,
            theta2: 0.3,
            k: 10,
            seed_a: SeedSource::TopOutDegree,
            algorithms: vec![Algorithm::Lodbh, Algorithm::Csbga, Algorithm::RandomBaseline],
            rng_seed: 0,
            repetitions: 5,
            ga: GaConfig::default(),
            brute: BruteForceConfig::default(),
        }
    }
}

/// A spread value: a plain count, or a mean over repetitions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Sigma {
    Count(usize),
    Mean(f64),
}

impl Sigma {
    pub fn value(self) -> f64 {
        match self {
            Sigma::Count(c) => c as f64,
            Sigma::Mean(m) => m,
        }
    }
}

impl fmt::Display for Sigma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sigma::Count(c) => write!(f, "{c}"),
            Sigma::Mean(m) if m.fract() == 0.0 => write!(f, "{m:.1}"),
            Sigma::Mean(m) => write!(f, "{m}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub algorithm: Algorithm,
    pub repetitions: usize,
    pub sigma_a: Option<Sigma>,
    pub sigma_b: Option<Sigma>,
    /// Mean wall time per repetition, rounded to milliseconds.
    pub wall_time_seconds: f64,
    /// Base seed for stochastic algorithms.
    pub rng_seed: Option<u64>,
    /// `S_B` labels for deterministic algorithms.
    pub seeds_b: Option<Vec<String>>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub dataset: String,
    pub n: usize,
    pub m: usize,
    pub weights: String,
    pub tendencies: String,
    pub seed_a: String,
    pub s_a: Vec<String>,
    pub theta1: f64,
    pub theta2: f64,
    pub k: usize,
    pub rows: Vec<ReportRow>,
    pub tool_version: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            _ => Err(Error::Config(format!("unknown format `{s}` (expected json or csv)"))),
        }
    }
}

/// Fixed CSV header.
pub const CSV_HEADER: [&str; 14] = [
    "dataset",
    "n",
    "m",
    "theta1",
    "theta2",
    "k",
    "algorithm",
    "repetitions",
    "sigma_a",
    "sigma_b",
    "wall_time_seconds",
    "rng_seed",
    "seeds_b",
    "error",
];

fn round_ms(seconds: f64) -> f64 {
    (seconds * 1000.0).round() / 1000.0
}

/// Load the dataset named in `config` and run every algorithm on it.
pub fn run_experiment(config: &RunConfig) -> Result<RunReport> {
    let dataset = load_dataset(&config.dataset, config.directedness, config.weights, &config.tendencies)?;
    run_on_dataset(&dataset, config)
}

struct Outcome {
    sigma_a: usize,
    sigma_b: usize,
    seeds: Vec<NodeId>,
    seconds: f64,
}

/// Run the configured algorithms on an already loaded dataset; `config.dataset`
/// and the loading policies are ignored.
pub fn run_on_dataset(dataset: &Dataset, config: &RunConfig) -> Result<RunReport> {
    let graph = &dataset.graph;
    let thresholds = Thresholds::new(config.theta1, config.theta2)?;
    if config.k == 0 {
        return Err(Error::Config("k must be at least 1".into()));
    }
    if config.repetitions == 0 {
        return Err(Error::Config("repetitions must be at least 1".into()));
    }
    let s_a = config.seed_a.resolve(graph, config.k)?;
    if s_a.is_empty() {
        return Err(Error::Config("S_A is empty".into()));
    }
    if config.k > graph.node_count() - s_a.len() {
        return Err(Error::Precondition(format!(
            "k = {} exceeds the {} nodes outside S_A",
            config.k,
            graph.node_count() - s_a.len()
        )));
    }
    let needs_partition = config
        .algorithms
        .iter()
        .any(|a| matches!(a, Algorithm::Lodbh | Algorithm::Csbga));
    let partition = needs_partition.then(|| louvain(graph, config.rng_seed));

    let mut rows = Vec::new();
    for &algorithm in &config.algorithms {
        let reps = if algorithm.is_stochastic() { config.repetitions } else { 1 };
        let mut outcomes = Vec::with_capacity(reps);
        let mut failure = None;
        for i in 0..reps {
            let seed = config.rng_seed.wrapping_add(i as u64);
            match run_one(algorithm, graph, &thresholds, &s_a, config, partition.as_ref(), seed) {
                Ok(o) => outcomes.push(o),
                Err(e @ (Error::CapExceeded { .. } | Error::NoCandidates { .. })) => {
                    failure = Some(e.to_string());
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        rows.push(match failure {
            Some(error) => ReportRow {
                algorithm,
                repetitions: reps,
                sigma_a: None,
                sigma_b: None,
                wall_time_seconds: 0.0,
                rng_seed: algorithm.is_stochastic().then_some(config.rng_seed),
                seeds_b: None,
                error: Some(error),
            },
            None => summarize(algorithm, &outcomes, graph, config.rng_seed),
        });
    }

    Ok(RunReport {
        dataset: dataset.name.clone(),
        n: graph.node_count(),
        m: graph.arc_count(),
        weights: dataset.weights.clone(),
        tendencies: dataset.tendencies.clone(),
        seed_a: config.seed_a.to_string(),
        s_a: s_a.iter().map(|&u| graph.label(u).to_string()).collect(),
        theta1: config.theta1,
        theta2: config.theta2,
        k: config.k,
        rows,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
    })
}

fn run_one(
    algorithm: Algorithm,
    graph: &WeightedDigraph,
    thresholds: &Thresholds,
    s_a: &[NodeId],
    config: &RunConfig,
    partition: Option<&CommunityPartition>,
    seed: u64,
) -> Result<Outcome> {
    let start = Instant::now();
    let seeds = match algorithm {
        Algorithm::Lodbh => {
            get_seed_sb(graph, thresholds, s_a, config.k, partition.expect("partition"))?
                .seeds
                .members
        }
        Algorithm::Csbga => {
            let ga = GaConfig {
                rng_seed: seed,
                ..config.ga
            };
            evolve(graph, thresholds, s_a, config.k, &ga, partition.expect("partition"))?
                .seeds
                .members
        }
        Algorithm::Exact => brute_force(graph, thresholds, s_a, config.k, &config.brute)?.seeds.members,
        Algorithm::RandomBaseline => random_seeds(graph.node_count(), s_a, config.k, seed),
    };
    let result = diffuse(graph, thresholds, s_a, &seeds)?;
    Ok(Outcome {
        sigma_a: result.sigma_a,
        sigma_b: result.sigma_b,
        seeds,
        seconds: start.elapsed().as_secs_f64(),
    })
}

/// `k` distinct nodes outside `s_a`, uniformly at random.
pub fn random_seeds(n: usize, s_a: &[NodeId], k: usize, seed: u64) -> Vec<NodeId> {
    let pool: Vec<NodeId> = (0..n).filter(|u| !s_a.contains(u)).collect();
    let mut picked: Vec<NodeId> = sample(&mut seeded_rng(seed), pool.len(), k.min(pool.len()))
        .into_iter()
        .map(|i| pool[i])
        .collect();
    picked.sort_unstable();
    picked
}

fn summarize(algorithm: Algorithm, outcomes: &[Outcome], graph: &WeightedDigraph, base_seed: u64) -> ReportRow {
    let reps = outcomes.len();
    let mean = |f: fn(&Outcome) -> f64| outcomes.iter().map(f).sum::<f64>() / reps as f64;
    let seconds = round_ms(mean(|o| o.seconds));
    if algorithm.is_stochastic() {
        ReportRow {
            algorithm,
            repetitions: reps,
            sigma_a: Some(Sigma::Mean(mean(|o| o.sigma_a as f64))),
            sigma_b: Some(Sigma::Mean(mean(|o| o.sigma_b as f64))),
            wall_time_seconds: seconds,
            rng_seed: Some(base_seed),
            seeds_b: None,
            error: None,
        }
    } else {
        let o = &outcomes[0];
        ReportRow {
            algorithm,
            repetitions: 1,
            sigma_a: Some(Sigma::Count(o.sigma_a)),
            sigma_b: Some(Sigma::Count(o.sigma_b)),
            wall_time_seconds: seconds,
            rng_seed: None,
            seeds_b: Some(o.seeds.iter().map(|&u| graph.label(u).to_string()).collect()),
            error: None,
        }
    }
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_HEADER).expect("in-memory write");
        let opt = |s: Option<Sigma>| s.map(|s| s.to_string()).unwrap_or_default();
        for row in &self.rows {
            w.write_record([
                self.dataset.clone(),
                self.n.to_string(),
                self.m.to_string(),
                self.theta1.to_string(),
                self.theta2.to_string(),
                self.k.to_string(),
                row.algorithm.to_string(),
                row.repetitions.to_string(),
                opt(row.sigma_a),
                opt(row.sigma_b),
                format!("{:.3}", row.wall_time_seconds),
                row.rng_seed.map(|s| s.to_string()).unwrap_or_default(),
                row.seeds_b.as_ref().map(|s| s.join(" ")).unwrap_or_default(),
                row.error.clone().unwrap_or_default(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    pub fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Json => self.to_json(),
            ReportFormat::Csv => self.to_csv(),
        }
    }

    pub fn row(&self, algorithm: Algorithm) -> Option<&ReportRow> {
        self.rows.iter().find(|r| r.algorithm == algorithm)
    }
}
