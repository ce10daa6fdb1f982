use udcim::analytics::louvain;
use udcim::csbga::{evolve, GaConfig};
use udcim::exact::{binomial, brute_force, BruteForceConfig, Objective};
use udcim::graph::{TendencyDefault, WeightPolicy};
use udcim::lodbh::get_seed_sb;
use udcim::synthetic::PlantedPartition;
use udcim::{diffuse, Error, Thresholds};

fn main() {
    let planted = PlantedPartition { nodes: 24, communities: 2, arcs: 70, cross_fraction: 0.1, seed: 4 };
    let g = planted
        .generate()
        .unwrap()
        .assign_weights(WeightPolicy::InverseInDegree)
        .unwrap();
    let g = g
        .with_tendencies(TendencyDefault::Random { seed: 2, p_a: 0.3, p_b: 0.3 }.assign(24).unwrap())
        .unwrap();
    let th = Thresholds::new(0.4, 0.2).unwrap();
    let s_a = [0, 12];
    let k = 3;

    println!("{} subsets of size {k}", binomial(g.node_count() - s_a.len(), k));
    let spread = brute_force(&g, &th, &s_a, k, &BruteForceConfig::default()).unwrap();
    println!("max sigma_B:        S_B = {:?}  sigma_B = {}  sigma_A = {}", spread.seeds.members, spread.sigma_b, spread.sigma_a);
    let margin_cfg = BruteForceConfig { objective: Objective::Margin, ..BruteForceConfig::default() };
    let margin = brute_force(&g, &th, &s_a, k, &margin_cfg).unwrap();
    println!("max sigma_B-sigma_A: S_B = {:?}  margin = {}", margin.seeds.members, margin.margin());

    let partition = louvain(&g, 0);
    match get_seed_sb(&g, &th, &s_a, k, &partition) {
        Ok(sel) => {
            let r = diffuse(&g, &th, &s_a, &sel.seeds.members).unwrap();
            println!("lodbh:              S_B = {:?}  sigma_B = {}", sel.seeds.members, r.sigma_b);
        }
        Err(e) => println!("lodbh: {e}"),
    }
    let ga = evolve(&g, &th, &s_a, k, &GaConfig::default(), &partition).unwrap();
    println!("csbga:              S_B = {:?}  margin = {}", ga.seeds.members, ga.best.fitness.unwrap());

    let tight = BruteForceConfig { combination_cap: 1000, ..BruteForceConfig::default() };
    if let Err(e @ Error::CapExceeded { .. }) = brute_force(&g, &th, &s_a, k, &tight) {
        println!("{e}");
    }
}
