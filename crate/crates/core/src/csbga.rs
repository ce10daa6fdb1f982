//! Community sized-based genetic algorithm for choosing `S_B`.
//!
//! A steady-state GA over `k`-subsets of `V \ S_A`. Each generation picks two
//! parents by tournament, splices them with one-point crossover, mutates the
//! children from a pool of high out-degree nodes in communities that A
//! reaches, and lets the children replace the two weakest individuals when
//! at least one of them beats an incumbent. Fitness is `sigma_B - sigma_A`
//! of the joint diffusion.
//!
//! Every random choice comes from one seeded stream, so a run is fully
//! determined by its inputs and `GaConfig::rng_seed`.

use std::cmp::Ordering;

use rand::seq::index;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::analytics::{pagerank, rank_by_out_degree, CommunityPartition, PageRankConfig, PageRankVector};
use crate::diffusion::{diffuse, Side, Thresholds};
use crate::error::{Error, Result};
use crate::graph::{NodeId, WeightedDigraph};
use crate::lodbh::SeedSet;
use crate::{seeded_rng, Rng as StreamRng};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaConfig {
    pub population_size: usize,
    pub generations: usize,
    pub tournament_size: usize,
    /// Share of an individual's genes considered for mutation.
    pub mutation_gene_fraction: f64,
    /// Chance that a pool node is accepted while walking the mutation pool.
    pub mutation_accept_probability: f64,
    pub rng_seed: u64,
    pub pagerank: PageRankConfig,
}

impl Default for GaConfig {
    fn default() -> Self {
        GaConfig {
            population_size: 50,
            generations: 200,
            tournament_size: 4,
            mutation_gene_fraction: 0.05,
            mutation_accept_probability: 0.5,
            rng_seed: 0,
            pagerank: PageRankConfig::default(),
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        if self.population_size < 4 {
            return Err(Error::Config(format!(
                "population size {} below 4",
                self.population_size
            )));
        }
        if self.tournament_size < 2 || self.tournament_size > self.population_size {
            return Err(Error::Config(format!(
                "tournament size {} must lie in 2..={}",
                self.tournament_size, self.population_size
            )));
        }
        for (name, v) in [
            ("mutation gene fraction", self.mutation_gene_fraction),
            ("mutation accept probability", self.mutation_accept_probability),
        ] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::Config(format!("{name} {v} outside (0, 1)")));
            }
        }
        Ok(())
    }

    /// Number of gene positions mutated in an individual of size `k`.
    pub fn mutated_genes(&self, k: usize) -> usize {
        ((self.mutation_gene_fraction * k as f64).round() as usize).max(1)
    }
}

/// Candidate seed set with its cached fitness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Individual {
    pub genes: Vec<NodeId>,
    pub fitness: Option<i64>,
}

impl Individual {
    pub fn new(genes: Vec<NodeId>) -> Self {
        Individual {
            genes,
            fitness: None,
        }
    }

    fn sorted_genes(&self) -> Vec<NodeId> {
        let mut g = self.genes.clone();
        g.sort_unstable();
        g
    }

    /// Higher fitness first, then the lexicographically smaller sorted gene list.
    fn rank_cmp(&self, other: &Self) -> Ordering {
        other
            .fitness
            .cmp(&self.fitness)
            .then_with(|| self.sorted_genes().cmp(&other.sorted_genes()))
    }
}

/// Nodes eligible as genes: everything outside `S_A`.
#[derive(Debug, Clone)]
pub struct GeneSpace {
    in_s_a: Vec<bool>,
    allowed: Vec<NodeId>,
}

impl GeneSpace {
    pub fn new(n: usize, s_a: &[NodeId]) -> Result<Self> {
        let mut in_s_a = vec![false; n];
        for &u in s_a {
            if u >= n {
                return Err(Error::Precondition(format!("seed {u} is not a node (n = {n})")));
            }
            in_s_a[u] = true;
        }
        let allowed = (0..n).filter(|&u| !in_s_a[u]).collect();
        Ok(GeneSpace { in_s_a, allowed })
    }

    pub fn allowed(&self) -> &[NodeId] {
        &self.allowed
    }

    /// Distinct genes, none in `S_A`, exactly `k` of them.
    pub fn is_valid(&self, individual: &Individual, k: usize) -> bool {
        let mut g = individual.sorted_genes();
        let len = g.len();
        g.dedup();
        len == k && g.len() == k && g.iter().all(|&u| u < self.in_s_a.len() && !self.in_s_a[u])
    }

    fn random_subset(&self, k: usize, rng: &mut StreamRng) -> Vec<NodeId> {
        index::sample(rng, self.allowed.len(), k)
            .into_iter()
            .map(|i| self.allowed[i])
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Population {
    pub individuals: Vec<Individual>,
}

impl Population {
    pub fn len(&self) -> usize {
        self.individuals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.individuals.is_empty()
    }

    pub fn best(&self) -> Option<&Individual> {
        self.individuals.iter().min_by(|a, b| a.rank_cmp(b))
    }

    fn min_fitness(&self) -> Option<i64> {
        self.individuals.iter().filter_map(|i| i.fitness).min()
    }

    /// Drop the lowest-fitness individual; among equals the latest one goes.
    fn evict_worst(&mut self) {
        if let Some((idx, _)) = self
            .individuals
            .iter()
            .enumerate()
            .min_by(|(ia, a), (ib, b)| a.fitness.cmp(&b.fitness).then(ib.cmp(ia)))
        {
            self.individuals.remove(idx);
        }
    }
}

/// `sigma_B - sigma_A` after diffusing `S_A` against `genes`.
pub fn fitness(
    graph: &WeightedDigraph,
    thresholds: &Thresholds,
    s_a: &[NodeId],
    genes: &[NodeId],
) -> Result<i64> {
    let r = diffuse(graph, thresholds, s_a, genes)?;
    Ok(r.sigma_b as i64 - r.sigma_a as i64)
}

fn evaluate(
    graph: &WeightedDigraph,
    thresholds: &Thresholds,
    s_a: &[NodeId],
    individual: &mut Individual,
) -> Result<()> {
    individual.fitness = Some(fitness(graph, thresholds, s_a, &individual.genes)?);
    Ok(())
}

/// `p` uniform random `k`-subsets of `V \ S_A`, evaluated.
pub fn init_population(
    graph: &WeightedDigraph,
    thresholds: &Thresholds,
    s_a: &[NodeId],
    k: usize,
    config: &GaConfig,
) -> Result<Population> {
    let mut rng = seeded_rng(config.rng_seed);
    let space = GeneSpace::new(graph.node_count(), s_a)?;
    init_with(graph, thresholds, s_a, k, config, &space, &mut rng)
}

fn init_with(
    graph: &WeightedDigraph,
    thresholds: &Thresholds,
    s_a: &[NodeId],
    k: usize,
    config: &GaConfig,
    space: &GeneSpace,
    rng: &mut StreamRng,
) -> Result<Population> {
    config.validate()?;
    if k == 0 {
        return Err(Error::Precondition("budget k must be at least 1".into()));
    }
    if k > space.allowed.len() {
        return Err(Error::Precondition(format!(
            "budget k = {k} exceeds |V \\ S_A| = {}",
            space.allowed.len()
        )));
    }
    let mut individuals: Vec<Individual> = (0..config.population_size)
        .map(|_| Individual::new(space.random_subset(k, rng)))
        .collect();
    for ind in &mut individuals {
        evaluate(graph, thresholds, s_a, ind)?;
    }
    Ok(Population { individuals })
}

/// Best of `t` individuals drawn without replacement.
pub fn tournament_select<'p>(population: &'p Population, t: usize, rng: &mut StreamRng) -> &'p Individual {
    let t = t.clamp(1, population.len());
    index::sample(rng, population.len(), t)
        .into_iter()
        .map(|i| &population.individuals[i])
        .min_by(|a, b| a.rank_cmp(b))
        .expect("population is non-empty")
}

/// One-point crossover with a uniformly drawn cut in `1..k`. For `k = 1` the
/// children are copies of the parents.
pub fn crossover(
    parent1: &Individual,
    parent2: &Individual,
    space: &GeneSpace,
    rng: &mut StreamRng,
) -> (Individual, Individual) {
    let k = parent1.genes.len();
    if k < 2 {
        return (
            Individual::new(parent1.genes.clone()),
            Individual::new(parent2.genes.clone()),
        );
    }
    let cut = rng.gen_range(1..k);
    crossover_at(parent1, parent2, cut, space, rng)
}

/// Splice at `cut`, then replace repeated genes with random unused nodes.
pub fn crossover_at(
    parent1: &Individual,
    parent2: &Individual,
    cut: usize,
    space: &GeneSpace,
    rng: &mut StreamRng,
) -> (Individual, Individual) {
    let splice = |head: &[NodeId], tail: &[NodeId]| {
        let mut genes: Vec<NodeId> = head[..cut].to_vec();
        genes.extend_from_slice(&tail[cut..]);
        genes
    };
    let mut c1 = splice(&parent1.genes, &parent2.genes);
    let mut c2 = splice(&parent2.genes, &parent1.genes);
    repair(&mut c1, space, rng);
    repair(&mut c2, space, rng);
    (Individual::new(c1), Individual::new(c2))
}

fn repair(genes: &mut [NodeId], space: &GeneSpace, rng: &mut StreamRng) {
    for i in 1..genes.len() {
        if genes[..i].contains(&genes[i]) {
            let free: Vec<NodeId> = space
                .allowed
                .iter()
                .copied()
                .filter(|u| !genes.contains(u))
                .collect();
            if free.is_empty() {
                // k exceeds the space; cannot happen for validated inputs.
                continue;
            }
            genes[i] = free[rng.gen_range(0..free.len())];
        }
    }
}

/// Mutation candidates drawn from communities that A reaches on its own.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MutationPool {
    /// Touched communities with their score `|c| * sum_{u in c} pr(u)`, best first.
    pub community_order: Vec<(usize, f64)>,
    /// Members of those communities concatenated in score order, `S_A` removed.
    pub concatenated: Vec<NodeId>,
    /// `concatenated` re-sorted by out-degree (ties by id). Mutation walks this list.
    pub ordered: Vec<NodeId>,
}

impl MutationPool {
    pub fn is_empty(&self) -> bool {
        self.ordered.is_empty()
    }
}

pub fn community_score(pagerank_sum: f64, size: usize) -> f64 {
    pagerank_sum * size as f64
}

pub fn build_mutation_pool(
    graph: &WeightedDigraph,
    s_a: &[NodeId],
    thresholds: &Thresholds,
    partition: &CommunityPartition,
    pagerank: &PageRankVector,
) -> Result<MutationPool> {
    let alone = diffuse(graph, thresholds, s_a, &[])?;
    let mut touched = vec![false; partition.len()];
    for u in alone.final_state.members(Side::A) {
        touched[partition.community_of(u)] = true;
    }
    let mut community_order: Vec<(usize, f64)> = (0..partition.len())
        .filter(|&c| touched[c])
        .map(|c| {
            let members = &partition.communities[c];
            let pr_sum: f64 = members.iter().map(|&u| pagerank.scores[u]).sum();
            (c, community_score(pr_sum, members.len()))
        })
        .collect();
    community_order.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));

    let mut in_s_a = vec![false; graph.node_count()];
    for &u in s_a {
        in_s_a[u] = true;
    }
    let concatenated: Vec<NodeId> = community_order
        .iter()
        .flat_map(|&(c, _)| partition.communities[c].iter().copied())
        .filter(|&u| !in_s_a[u])
        .collect();
    let ordered = rank_by_out_degree(graph, &concatenated);
    Ok(MutationPool {
        community_order,
        concatenated,
        ordered,
    })
}

/// Replace `max(1, round(fraction * k))` random genes. For each chosen
/// position the pool is walked in order with one coin flip per node; the
/// first node that wins its flip and is not already a gene takes the slot.
pub fn mutate(
    individual: &Individual,
    pool: &MutationPool,
    config: &GaConfig,
    rng: &mut StreamRng,
) -> Individual {
    let mut genes = individual.genes.clone();
    if pool.is_empty() || genes.is_empty() {
        return Individual {
            genes,
            fitness: individual.fitness,
        };
    }
    let m = config.mutated_genes(genes.len()).min(genes.len());
    for pos in index::sample(rng, genes.len(), m) {
        for &v in &pool.ordered {
            let draw: f64 = rng.gen();
            if draw < config.mutation_accept_probability && !genes.contains(&v) {
                genes[pos] = v;
                break;
            }
        }
    }
    let fitness = if genes == individual.genes {
        individual.fitness
    } else {
        None
    };
    Individual { genes, fitness }
}

/// Result of [`evolve`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaOutcome {
    pub seeds: SeedSet,
    pub best: Individual,
    /// Best fitness seen so far: the initial population, then after each generation.
    pub best_trace: Vec<i64>,
    pub population: Population,
    pub pool: MutationPool,
}

pub fn evolve(
    graph: &WeightedDigraph,
    thresholds: &Thresholds,
    s_a: &[NodeId],
    k: usize,
    config: &GaConfig,
    partition: &CommunityPartition,
) -> Result<GaOutcome> {
    config.validate()?;
    let space = GeneSpace::new(graph.node_count(), s_a)?;
    let pr = pagerank(graph, config.pagerank)?;
    let pool = build_mutation_pool(graph, s_a, thresholds, partition, &pr)?;
    let mut rng = seeded_rng(config.rng_seed);
    let mut population = init_with(graph, thresholds, s_a, k, config, &space, &mut rng)?;
    let mut best = population.best().cloned().expect("population is non-empty");
    let mut best_trace = vec![best.fitness.unwrap()];

    for _ in 0..config.generations {
        let p1 = tournament_select(&population, config.tournament_size, &mut rng).clone();
        let p2 = tournament_select(&population, config.tournament_size, &mut rng).clone();
        let (c1, c2) = crossover(&p1, &p2, &space, &mut rng);
        let mut c1 = mutate(&c1, &pool, config, &mut rng);
        let mut c2 = mutate(&c2, &pool, config, &mut rng);
        let (r1, r2) = rayon::join(
            || evaluate(graph, thresholds, s_a, &mut c1),
            || evaluate(graph, thresholds, s_a, &mut c2),
        );
        r1?;
        r2?;

        let floor = population.min_fitness();
        if c1.fitness > floor || c2.fitness > floor {
            for child in [&c1, &c2] {
                if child.fitness > best.fitness {
                    best = child.clone();
                }
            }
            population.individuals.push(c1);
            population.individuals.push(c2);
            population.evict_worst();
            population.evict_worst();
        }
        best_trace.push(best.fitness.unwrap());
    }

    Ok(GaOutcome {
        seeds: SeedSet {
            members: best.genes.clone(),
            budget: k,
        },
        best,
        best_trace,
        population,
        pool,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Tendency;

    fn th() -> Thresholds {
        Thresholds::new(0.5, 0.3).unwrap()
    }

    fn line(n: usize) -> WeightedDigraph {
        WeightedDigraph::neutral(n, (0..n - 1).map(|i| (i, i + 1, 0.9))).unwrap()
    }

    fn cfg(p: usize) -> GaConfig {
        GaConfig {
            population_size: p,
            generations: 10,
            rng_seed: 11,
            ..Default::default()
        }
    }

    #[test]
    fn config_validation() {
        assert!(GaConfig::default().validate().is_ok());
        assert!(GaConfig { population_size: 3, ..Default::default() }.validate().is_err());
        assert!(GaConfig { tournament_size: 1, ..Default::default() }.validate().is_err());
        assert!(GaConfig { mutation_gene_fraction: 0.0, ..Default::default() }.validate().is_err());
    }

    #[test]
    fn mutation_count_floor() {
        let c = GaConfig::default();
        assert_eq!(c.mutated_genes(20), 1);
        assert_eq!(c.mutated_genes(3), 1);
        assert_eq!(c.mutated_genes(50), 3);
    }

    #[test]
    fn population_shape() {
        let g = line(10);
        let pop = init_population(&g, &th(), &[0], 3, &cfg(5)).unwrap();
        let space = GeneSpace::new(10, &[0]).unwrap();
        assert_eq!(pop.len(), 5);
        for ind in &pop.individuals {
            assert!(space.is_valid(ind, 3));
            assert!(ind.fitness.is_some());
        }
        assert_eq!(pop, init_population(&g, &th(), &[0], 3, &cfg(5)).unwrap());
    }

    #[test]
    fn forced_population_when_k_fills_space() {
        let g = line(5);
        let pop = init_population(&g, &th(), &[0], 4, &cfg(4)).unwrap();
        for ind in &pop.individuals {
            assert_eq!(ind.sorted_genes(), vec![1, 2, 3, 4]);
        }
        assert!(init_population(&g, &th(), &[0], 5, &cfg(4)).is_err());
    }

    fn g3(w0: f64, w1: f64) -> WeightedDigraph {
        WeightedDigraph::neutral(3, [(0, 2, w0), (1, 2, w1)]).unwrap()
    }

    #[test]
    fn fitness_is_spread_margin() {
        assert_eq!(fitness(&g3(0.6, 0.5), &th(), &[0], &[1]).unwrap(), -1);
        assert_eq!(fitness(&g3(0.5, 0.6), &th(), &[0], &[1]).unwrap(), 1);
        assert!(fitness(&g3(0.5, 0.6), &th(), &[0], &[0]).is_err());
        // B saturates an arcless graph: (n - |S_A|) - |S_A|.
        let g = WeightedDigraph::neutral(5, []).unwrap();
        assert_eq!(fitness(&g, &th(), &[0], &[1, 2, 3, 4]).unwrap(), 3);
    }

    fn with_fitness(genes: Vec<NodeId>, f: i64) -> Individual {
        Individual { genes, fitness: Some(f) }
    }

    #[test]
    fn tournament_picks_fittest() {
        let pop = Population {
            individuals: vec![
                with_fitness(vec![1], 1),
                with_fitness(vec![2], 5),
                with_fitness(vec![3], 3),
                with_fitness(vec![4], 5),
            ],
        };
        let mut rng = seeded_rng(1);
        assert_eq!(tournament_select(&pop, 4, &mut rng).genes, vec![2]);
        let pair = Population { individuals: vec![with_fitness(vec![1], 5), with_fitness(vec![2], 1)] };
        assert_eq!(tournament_select(&pair, 2, &mut rng).genes, vec![1]);

        let winners = |seed| -> Vec<Vec<NodeId>> {
            let mut rng = seeded_rng(seed);
            (0..8).map(|_| tournament_select(&pop, 2, &mut rng).genes.clone()).collect()
        };
        assert_eq!(winners(9), winners(9));
    }

    #[test]
    fn crossover_splices_and_repairs() {
        let space = GeneSpace::new(10, &[0]).unwrap();
        let mut rng = seeded_rng(2);
        let (a, b) = crossover_at(
            &Individual::new(vec![1, 2, 3]),
            &Individual::new(vec![4, 5, 6]),
            1,
            &space,
            &mut rng,
        );
        assert_eq!(a.genes, vec![1, 5, 6]);
        assert_eq!(b.genes, vec![4, 2, 3]);

        let (a, b) = crossover_at(
            &Individual::new(vec![1, 2]),
            &Individual::new(vec![2, 1]),
            1,
            &space,
            &mut rng,
        );
        assert_eq!(a.genes[0], 1);
        assert_eq!(b.genes[0], 2);
        assert!(space.is_valid(&a, 2) && space.is_valid(&b, 2));

        let (a, b) = crossover(&Individual::new(vec![7]), &Individual::new(vec![8]), &space, &mut rng);
        assert_eq!((a.genes, b.genes), (vec![7], vec![8]));
    }

    #[test]
    fn pool_scores_communities() {
        assert_eq!(community_score(0.6, 3), 0.6 * 3.0);
        assert!(community_score(0.4, 5) > community_score(0.6, 3));

        // Both communities touched: {0,1,2} holds S_A and its pr sum 0.6;
        // {3..7} gets reached through 2 -> 3 and sums to 0.4.
        let g = WeightedDigraph::neutral(
            8,
            [(0, 1, 0.9), (1, 2, 0.9), (2, 3, 0.9), (3, 4, 0.9), (4, 5, 0.1)],
        )
        .unwrap();
        let partition =
            CommunityPartition::from_communities(&g, vec![vec![0, 1, 2], vec![3, 4, 5, 6, 7]]).unwrap();
        let pr = PageRankVector {
            scores: vec![0.2, 0.2, 0.2, 0.08, 0.08, 0.08, 0.08, 0.08],
            damping: 0.85,
            iterations: 0,
            residual: 0.0,
            residual_history: vec![],
        };
        let pool = build_mutation_pool(&g, &[0], &th(), &partition, &pr).unwrap();
        assert_eq!(pool.community_order[0].0, 1);
        assert_eq!(pool.concatenated, vec![3, 4, 5, 6, 7, 1, 2]);
        assert_eq!(pool.ordered, vec![1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn pool_on_single_touched_community() {
        let g = WeightedDigraph::neutral(6, [(0, 1, 0.9), (1, 2, 0.9), (3, 1, 0.9), (4, 5, 0.9)]).unwrap();
        let partition = CommunityPartition::from_communities(&g, vec![vec![0, 1, 2, 3], vec![4, 5]]).unwrap();
        let pr = PageRankVector {
            scores: vec![1.0 / 6.0; 6],
            damping: 0.85,
            iterations: 0,
            residual: 0.0,
            residual_history: vec![],
        };
        let pool = build_mutation_pool(&g, &[0], &Thresholds::new(0.5, 0.2).unwrap(), &partition, &pr).unwrap();
        assert_eq!(pool.community_order.len(), 1);
        assert_eq!(pool.ordered, vec![1, 3, 2]);
    }

    #[test]
    fn mutation_changes_one_gene_from_pool() {
        let pool = MutationPool {
            community_order: vec![(0, 1.0)],
            concatenated: vec![30, 31, 32],
            ordered: vec![30, 31, 32],
        };
        let ind = with_fitness((1..=20).collect(), 4);
        let mut rng = seeded_rng(5);
        let mut changed = 0;
        for _ in 0..50 {
            let m = mutate(&ind, &pool, &GaConfig::default(), &mut rng);
            let diff = m.genes.iter().zip(&ind.genes).filter(|(a, b)| a != b).count();
            assert!(diff <= 1);
            if diff == 1 {
                changed += 1;
                assert!(m.fitness.is_none());
                assert!(m.genes.iter().any(|g| [30, 31, 32].contains(g)));
            }
            let mut s = m.genes.clone();
            s.sort_unstable();
            s.dedup();
            assert_eq!(s.len(), 20);
        }
        assert!(changed > 30);
    }

    #[test]
    fn empty_pool_is_a_no_op() {
        let pool = MutationPool { community_order: vec![], concatenated: vec![], ordered: vec![] };
        let ind = with_fitness(vec![1, 2, 3], 2);
        let mut rng = seeded_rng(5);
        assert_eq!(mutate(&ind, &pool, &GaConfig::default(), &mut rng), ind);
    }

    #[test]
    fn zero_generations_returns_initial_best() {
        let g = line(8);
        let partition = crate::analytics::louvain(&g, 0);
        let config = GaConfig { generations: 0, ..cfg(6) };
        let out = evolve(&g, &th(), &[0], 2, &config, &partition).unwrap();
        let pop = init_population(&g, &th(), &[0], 2, &config).unwrap();
        assert_eq!(out.best.fitness, pop.best().unwrap().fitness);
        assert_eq!(out.best_trace.len(), 1);
    }

    #[test]
    fn evolve_finds_g5_optimum() {
        let g = WeightedDigraph::from_arcs(
            6,
            [(0, 1, 0.9), (1, 2, 0.9), (3, 1, 0.9), (4, 5, 0.9)],
            vec![Tendency::Neutral; 6],
        )
        .unwrap();
        let partition = CommunityPartition::from_communities(&g, vec![vec![0, 1, 2, 3], vec![4, 5]]).unwrap();
        let th = Thresholds::new(0.5, 0.2).unwrap();
        let config = GaConfig { population_size: 8, generations: 30, rng_seed: 3, ..Default::default() };
        let out = evolve(&g, &th, &[0], 1, &config, &partition).unwrap();
        assert_eq!(out.seeds.members, vec![1]);
        assert!(out.best_trace.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(out.population.len(), 8);
        let again = evolve(&g, &th, &[0], 1, &config, &partition).unwrap();
        assert_eq!(out, again);
    }
}
