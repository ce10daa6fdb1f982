use udcim::analytics::louvain;
use udcim::csbga::{evolve, GaConfig};
use udcim::experiment::SeedSource;
use udcim::graph::{TendencyDefault, WeightPolicy};
use udcim::synthetic::PlantedPartition;
use udcim::{diffuse, Thresholds};

fn main() {
    let planted = PlantedPartition { nodes: 300, communities: 3, arcs: 1200, cross_fraction: 0.05, seed: 8 };
    let g = planted
        .generate()
        .unwrap()
        .assign_weights(WeightPolicy::InverseInDegree)
        .unwrap();
    let g = g
        .with_tendencies(TendencyDefault::Random { seed: 5, p_a: 0.3, p_b: 0.3 }.assign(300).unwrap())
        .unwrap();
    let th = Thresholds::new(0.5, 0.3).unwrap();
    let k = 10;
    let s_a = SeedSource::TopOutDegree.resolve(&g, k).unwrap();
    let partition = louvain(&g, 0);

    let config = GaConfig { generations: 300, rng_seed: 11, ..GaConfig::default() };
    let out = evolve(&g, &th, &s_a, k, &config, &partition).unwrap();

    println!("mutation pool: {} nodes from {} communities", out.pool.ordered.len(), out.pool.community_order.len());
    for (gen, fit) in out.best_trace.iter().enumerate().step_by(50) {
        println!("  generation {gen:>3}: best sigma_B - sigma_A = {fit}");
    }
    let r = diffuse(&g, &th, &s_a, &out.seeds.members).unwrap();
    println!("S_B = {:?}", out.seeds.members);
    println!("sigma_A = {}, sigma_B = {}", r.sigma_a, r.sigma_b);
}
