//! Directed weighted graphs with per-node tendencies.
//!
//! Datasets arrive as whitespace-separated edge lists whose labels are
//! arbitrary strings. Ingestion remaps them onto dense ids `0..n`, drops
//! self-loops, merges duplicate arcs (keeping the larger weight) and leaves
//! missing weights unassigned until a [`WeightPolicy`] fills them in.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seeded_rng;

/// Dense node index, `0..n` after ingestion.
pub type NodeId = usize;

/// A node's prior leaning towards one of the competing products.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Tendency {
    #[default]
    Neutral,
    A,
    B,
}

impl Tendency {
    /// File encoding: 0 neutral, 1 A, 2 B.
    pub fn code(self) -> u8 {
        match self {
            Tendency::Neutral => 0,
            Tendency::A => 1,
            Tendency::B => 2,
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            0 => Some(Tendency::Neutral),
            1 => Some(Tendency::A),
            2 => Some(Tendency::B),
            _ => None,
        }
    }
}

/// A weighted arc `source -> target`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Arc {
    pub source: NodeId,
    pub target: NodeId,
    pub weight: f64,
}

/// How undirected input lines are turned into arcs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Directedness {
    #[default]
    AsDirected,
    /// Every line `u v` yields both `u -> v` and `v -> u`.
    Symmetrize,
}

impl FromStr for Directedness {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "directed" | "as-directed" => Ok(Directedness::AsDirected),
            "undirected" | "symmetrize" => Ok(Directedness::Symmetrize),
            other => Err(Error::Config(format!("unknown directedness `{other}`"))),
        }
    }
}

/// Bookkeeping from ingestion.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IngestStats {
    pub lines_read: usize,
    pub edge_lines: usize,
    pub self_loops_dropped: usize,
    pub duplicates_merged: usize,
    pub unassigned_weights: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawArc {
    pub source: NodeId,
    pub target: NodeId,
    pub weight: Option<f64>,
}

/// A parsed edge list whose weights may still be missing.
#[derive(Debug, Clone)]
pub struct EdgeList {
    labels: Vec<String>,
    arcs: Vec<RawArc>,
    stats: IngestStats,
}

/// Parse a whitespace-separated edge list (`u v` or `u v w` per line).
///
/// Lines starting with `#` or `%` are comments. Labels are remapped to dense
/// ids in sorted order: numerically when every label is an unsigned integer,
/// lexicographically otherwise, so the mapping does not depend on line order.
pub fn parse_edge_list<R: BufRead>(reader: R, directedness: Directedness) -> Result<EdgeList> {
    let mut stats = IngestStats::default();
    let mut lines: Vec<(String, String, Option<f64>)> = Vec::new();

    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        stats.lines_read += 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        let weight = match tokens.len() {
            2 => None,
            3 => {
                let w: f64 = tokens[2].parse().map_err(|_| {
                    Error::parse(lineno, format!("weight `{}` is not a number", tokens[2]))
                })?;
                if !(0.0..=1.0).contains(&w) {
                    return Err(Error::Domain(format!(
                        "line {lineno}: weight {w} outside [0, 1]"
                    )));
                }
                Some(w)
            }
            n => {
                return Err(Error::parse(
                    lineno,
                    format!("expected `u v` or `u v w`, found {n} tokens"),
                ))
            }
        };
        stats.edge_lines += 1;
        lines.push((tokens[0].to_string(), tokens[1].to_string(), weight));
    }

    let mut labels: Vec<String> = lines
        .iter()
        .flat_map(|(u, v, _)| [u.clone(), v.clone()])
        .collect();
    sort_labels(&mut labels);
    labels.dedup();
    let index: HashMap<&str, NodeId> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();

    let mut merged: BTreeMap<(NodeId, NodeId), Option<f64>> = BTreeMap::new();
    let mut insert = |s: NodeId, t: NodeId, w: Option<f64>, stats: &mut IngestStats| {
        if s == t {
            stats.self_loops_dropped += 1;
            return;
        }
        match merged.get_mut(&(s, t)) {
            Some(existing) => {
                stats.duplicates_merged += 1;
                *existing = match (*existing, w) {
                    (Some(a), Some(b)) => Some(a.max(b)),
                    (a, b) => a.or(b),
                };
            }
            None => {
                merged.insert((s, t), w);
            }
        }
    };
    for (u, v, w) in &lines {
        let (s, t) = (index[u.as_str()], index[v.as_str()]);
        insert(s, t, *w, &mut stats);
        if directedness == Directedness::Symmetrize && s != t {
            insert(t, s, *w, &mut stats);
        }
    }

    let arcs: Vec<RawArc> = merged
        .into_iter()
        .map(|((source, target), weight)| RawArc {
            source,
            target,
            weight,
        })
        .collect();
    stats.unassigned_weights = arcs.iter().filter(|a| a.weight.is_none()).count();

    Ok(EdgeList {
        labels,
        arcs,
        stats,
    })
}

fn sort_labels(labels: &mut [String]) {
    if labels.iter().all(|l| l.parse::<u64>().is_ok()) {
        labels.sort_by_key(|l| l.parse::<u64>().unwrap());
    } else {
        labels.sort();
    }
}

/// Policy for filling in arc weights.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum WeightPolicy {
    /// Every arc must already carry a weight.
    Keep,
    /// `W(v, u) = 1 / in_degree(u)`.
    InverseInDegree,
    Uniform(f64),
    /// i.i.d. uniform draws from `[0, 1]`.
    RandomUniform { seed: u64 },
}

impl Default for WeightPolicy {
    fn default() -> Self {
        WeightPolicy::InverseInDegree
    }
}

impl fmt::Display for WeightPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightPolicy::Keep => write!(f, "keep"),
            WeightPolicy::InverseInDegree => write!(f, "inverse-in-degree"),
            WeightPolicy::Uniform(c) => write!(f, "uniform:{c}"),
            WeightPolicy::RandomUniform { seed } => write!(f, "random:{seed}"),
        }
    }
}

impl FromStr for WeightPolicy {
    type Err = Error;

    /// Accepts `keep`, `inverse-in-degree`, `uniform:<c>` and `random:<seed>`.
    fn from_str(s: &str) -> Result<Self> {
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        let bad = || Error::Config(format!("invalid weight policy `{s}`"));
        match (head, arg) {
            ("keep", None) => Ok(WeightPolicy::Keep),
            ("inverse-in-degree" | "iid", None) => Ok(WeightPolicy::InverseInDegree),
            ("uniform", Some(c)) => Ok(WeightPolicy::Uniform(c.parse().map_err(|_| bad())?)),
            ("random", Some(seed)) => Ok(WeightPolicy::RandomUniform {
                seed: seed.parse().map_err(|_| bad())?,
            }),
            _ => Err(bad()),
        }
    }
}

impl EdgeList {
    /// Unweighted arcs over nodes labelled `0..n`. Self-loops are dropped and
    /// repeated pairs merged, as when parsing.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (NodeId, NodeId)>) -> Result<Self> {
        let mut stats = IngestStats::default();
        let mut set = std::collections::BTreeSet::new();
        for (s, t) in pairs {
            if s >= n || t >= n {
                return Err(Error::Domain(format!("arc {s} -> {t} references a node outside 0..{n}")));
            }
            stats.edge_lines += 1;
            if s == t {
                stats.self_loops_dropped += 1;
            } else if !set.insert((s, t)) {
                stats.duplicates_merged += 1;
            }
        }
        let arcs: Vec<RawArc> = set
            .into_iter()
            .map(|(source, target)| RawArc {
                source,
                target,
                weight: None,
            })
            .collect();
        stats.unassigned_weights = arcs.len();
        Ok(EdgeList {
            labels: (0..n).map(|u| u.to_string()).collect(),
            arcs,
            stats,
        })
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn arcs(&self) -> &[RawArc] {
        &self.arcs
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn stats(&self) -> &IngestStats {
        &self.stats
    }

    /// Produce a weighted graph with all-neutral tendencies.
    pub fn assign_weights(&self, policy: WeightPolicy) -> Result<WeightedDigraph> {
        let n = self.labels.len();
        let weights: Vec<f64> = match policy {
            WeightPolicy::Keep => self
                .arcs
                .iter()
                .map(|a| {
                    a.weight.ok_or_else(|| {
                        Error::Domain(format!(
                            "arc {} -> {} has no weight under the `keep` policy",
                            self.labels[a.source], self.labels[a.target]
                        ))
                    })
                })
                .collect::<Result<_>>()?,
            WeightPolicy::InverseInDegree => {
                let mut indeg = vec![0usize; n];
                for a in &self.arcs {
                    indeg[a.target] += 1;
                }
                self.arcs
                    .iter()
                    .map(|a| 1.0 / indeg[a.target] as f64)
                    .collect()
            }
            WeightPolicy::Uniform(c) => {
                if !(0.0..=1.0).contains(&c) {
                    return Err(Error::Domain(format!("uniform weight {c} outside [0, 1]")));
                }
                vec![c; self.arcs.len()]
            }
            WeightPolicy::RandomUniform { seed } => {
                let mut rng = seeded_rng(seed);
                self.arcs.iter().map(|_| rng.gen_range(0.0..=1.0)).collect()
            }
        };
        let arcs = self
            .arcs
            .iter()
            .zip(weights)
            .map(|(a, weight)| Arc {
                source: a.source,
                target: a.target,
                weight,
            })
            .collect();
        WeightedDigraph::build(self.labels.clone(), arcs, vec![Tendency::Neutral; n])
    }
}

/// Immutable directed graph with weights in `[0, 1]` and node tendencies.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedDigraph {
    labels: Vec<String>,
    arcs: Vec<Arc>,
    out_adj: Vec<Vec<(NodeId, f64)>>,
    in_adj: Vec<Vec<(NodeId, f64)>>,
    tendency: Vec<Tendency>,
}

impl WeightedDigraph {
    /// Build from dense ids. Labels default to the decimal id.
    ///
    /// Unlike file ingestion this rejects self-loops and duplicate arcs.
    pub fn from_arcs(
        n: usize,
        arcs: impl IntoIterator<Item = (NodeId, NodeId, f64)>,
        tendency: Vec<Tendency>,
    ) -> Result<Self> {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let arcs = arcs
            .into_iter()
            .map(|(source, target, weight)| Arc {
                source,
                target,
                weight,
            })
            .collect();
        Self::build(labels, arcs, tendency)
    }

    /// Same as [`from_arcs`](Self::from_arcs) with every node neutral.
    pub fn neutral(n: usize, arcs: impl IntoIterator<Item = (NodeId, NodeId, f64)>) -> Result<Self> {
        Self::from_arcs(n, arcs, vec![Tendency::Neutral; n])
    }

    fn build(labels: Vec<String>, mut arcs: Vec<Arc>, tendency: Vec<Tendency>) -> Result<Self> {
        let n = labels.len();
        if tendency.len() != n {
            return Err(Error::Domain(format!(
                "tendency vector has {} entries for {n} nodes",
                tendency.len()
            )));
        }
        arcs.sort_by_key(|a| (a.source, a.target));
        for (i, a) in arcs.iter().enumerate() {
            if a.source >= n || a.target >= n {
                return Err(Error::Domain(format!(
                    "arc {} -> {} references a node outside 0..{n}",
                    a.source, a.target
                )));
            }
            if a.source == a.target {
                return Err(Error::Domain(format!("self-loop on node {}", a.source)));
            }
            if !(0.0..=1.0).contains(&a.weight) {
                return Err(Error::Domain(format!(
                    "arc {} -> {} has weight {} outside [0, 1]",
                    a.source, a.target, a.weight
                )));
            }
            if i > 0 && arcs[i - 1].source == a.source && arcs[i - 1].target == a.target {
                return Err(Error::Domain(format!(
                    "duplicate arc {} -> {}",
                    a.source, a.target
                )));
            }
        }
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for a in &arcs {
            out_adj[a.source].push((a.target, a.weight));
            in_adj[a.target].push((a.source, a.weight));
        }
        debug_assert_eq!(
            out_adj.iter().map(Vec::len).sum::<usize>(),
            in_adj.iter().map(Vec::len).sum::<usize>()
        );
        Ok(WeightedDigraph {
            labels,
            arcs,
            out_adj,
            in_adj,
            tendency,
        })
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Arcs sorted by `(source, target)`.
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn out_neighbors(&self, u: NodeId) -> &[(NodeId, f64)] {
        &self.out_adj[u]
    }

    pub fn in_neighbors(&self, u: NodeId) -> &[(NodeId, f64)] {
        &self.in_adj[u]
    }

    pub fn out_degree(&self, u: NodeId) -> usize {
        self.out_adj[u].len()
    }

    pub fn in_degree(&self, u: NodeId) -> usize {
        self.in_adj[u].len()
    }

    /// Sum of incoming weights at `u`.
    pub fn in_weight(&self, u: NodeId) -> f64 {
        self.in_adj[u].iter().map(|&(_, w)| w).sum()
    }

    pub fn tendency(&self, u: NodeId) -> Tendency {
        self.tendency[u]
    }

    pub fn tendencies(&self) -> &[Tendency] {
        &self.tendency
    }

    pub fn label(&self, u: NodeId) -> &str {
        &self.labels[u]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Look up the dense id of an original label.
    pub fn node_by_label(&self, label: &str) -> Option<NodeId> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn with_tendencies(mut self, tendency: Vec<Tendency>) -> Result<Self> {
        if tendency.len() != self.node_count() {
            return Err(Error::Domain(format!(
                "tendency vector has {} entries for {} nodes",
                tendency.len(),
                self.node_count()
            )));
        }
        self.tendency = tendency;
        Ok(self)
    }

    /// Write arcs as `label label weight` lines, loadable with
    /// [`Directedness::AsDirected`] and [`WeightPolicy::Keep`].
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> Result<()> {
        for a in &self.arcs {
            writeln!(
                out,
                "{} {} {}",
                self.labels[a.source], self.labels[a.target], a.weight
            )?;
        }
        Ok(())
    }

    pub fn write_tendencies<W: Write>(&self, mut out: W) -> Result<()> {
        for (u, t) in self.tendency.iter().enumerate() {
            writeln!(out, "{} {}", self.labels[u], t.code())?;
        }
        Ok(())
    }
}

/// What unlisted nodes get when reading a tendency file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum TendencyDefault {
    Neutral,
    /// Each unlisted node is A with probability `p_a`, B with `p_b`, else neutral.
    Random { seed: u64, p_a: f64, p_b: f64 },
}

impl TendencyDefault {
    fn validate(&self) -> Result<()> {
        if let TendencyDefault::Random { p_a, p_b, .. } = *self {
            if p_a < 0.0 || p_b < 0.0 || p_a + p_b > 1.0 {
                return Err(Error::Domain(format!(
                    "tendency probabilities pA={p_a}, pB={p_b} must be non-negative and sum to at most 1"
                )));
            }
        }
        Ok(())
    }

    /// Assign tendencies to every node without reading a file.
    pub fn assign(&self, n: usize) -> Result<Vec<Tendency>> {
        self.fill(vec![None; n])
    }

    fn fill(&self, listed: Vec<Option<Tendency>>) -> Result<Vec<Tendency>> {
        self.validate()?;
        match *self {
            TendencyDefault::Neutral => Ok(listed
                .into_iter()
                .map(|t| t.unwrap_or(Tendency::Neutral))
                .collect()),
            TendencyDefault::Random { seed, p_a, p_b } => {
                let mut rng = seeded_rng(seed);
                Ok(listed
                    .into_iter()
                    .map(|t| {
                        t.unwrap_or_else(|| {
                            let x: f64 = rng.gen();
                            if x < p_a {
                                Tendency::A
                            } else if x < p_a + p_b {
                                Tendency::B
                            } else {
                                Tendency::Neutral
                            }
                        })
                    })
                    .collect())
            }
        }
    }
}

impl FromStr for TendencyDefault {
    type Err = Error;

    /// Accepts `neutral` or `random:<seed>:<pA>:<pB>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("invalid tendency policy `{s}`"));
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["neutral"] => Ok(TendencyDefault::Neutral),
            ["random", seed, p_a, p_b] => Ok(TendencyDefault::Random {
                seed: seed.parse().map_err(|_| bad())?,
                p_a: p_a.parse().map_err(|_| bad())?,
                p_b: p_b.parse().map_err(|_| bad())?,
            }),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for TendencyDefault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TendencyDefault::Neutral => write!(f, "neutral"),
            TendencyDefault::Random { seed, p_a, p_b } => write!(f, "random:{seed}:{p_a}:{p_b}"),
        }
    }
}

/// Read `label code` lines (codes 0/1/2) for the nodes of `graph`.
pub fn parse_tendencies<R: BufRead>(
    reader: R,
    graph: &WeightedDigraph,
    default: TendencyDefault,
) -> Result<Vec<Tendency>> {
    let index: HashMap<&str, NodeId> = graph
        .labels()
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    let mut listed = vec![None; graph.node_count()];
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::parse(
                lineno,
                format!("expected `label code`, found {} tokens", tokens.len()),
            ));
        }
        let code: u8 = tokens[1].parse().map_err(|_| {
            Error::parse(lineno, format!("tendency code `{}` is not an integer", tokens[1]))
        })?;
        let t = Tendency::from_code(code).ok_or_else(|| {
            Error::Domain(format!("line {lineno}: tendency code {code} not in {{0, 1, 2}}"))
        })?;
        let u = *index.get(tokens[0]).ok_or_else(|| {
            Error::Domain(format!("line {lineno}: unknown node label `{}`", tokens[0]))
        })?;
        listed[u] = Some(t);
    }
    default.fill(listed)
}
