use udcim::experiment::{run_on_dataset, Algorithm, Dataset, RunConfig, SeedSource};
use udcim::graph::{TendencyDefault, WeightPolicy};
use udcim::synthetic::PlantedPartition;

fn main() {
    let planted = PlantedPartition { nodes: 600, communities: 2, arcs: 2300, cross_fraction: 0.05, seed: 600 };
    let g = planted
        .generate()
        .unwrap()
        .assign_weights(WeightPolicy::InverseInDegree)
        .unwrap();
    let tendencies = TendencyDefault::Random { seed: 17, p_a: 1.0 / 3.0, p_b: 1.0 / 3.0 };
    let g = g.with_tendencies(tendencies.assign(600).unwrap()).unwrap();
    let dataset = Dataset {
        name: "planted-600".into(),
        graph: g,
        weights: WeightPolicy::InverseInDegree.to_string(),
        tendencies: tendencies.to_string(),
    };

    let config = RunConfig {
        k: 30,
        seed_a: SeedSource::TopOutDegree,
        algorithms: vec![Algorithm::Lodbh, Algorithm::Csbga, Algorithm::RandomBaseline, Algorithm::Exact],
        repetitions: 3,
        ..RunConfig::default()
    };
    let report = run_on_dataset(&dataset, &config).unwrap();
    print!("{}", report.to_csv());
    println!();
    println!("{}", report.to_json());
}
