use udcim::analytics::louvain;
use udcim::experiment::{random_seeds, SeedSource};
use udcim::graph::{TendencyDefault, WeightPolicy};
use udcim::lodbh::get_seed_sb;
use udcim::synthetic::PlantedPartition;
use udcim::{diffuse, Thresholds};

fn main() {
    let planted = PlantedPartition { nodes: 600, communities: 2, arcs: 2300, cross_fraction: 0.05, seed: 600 };
    let g = planted
        .generate()
        .unwrap()
        .assign_weights(WeightPolicy::InverseInDegree)
        .unwrap();
    let tendencies = TendencyDefault::Random { seed: 17, p_a: 1.0 / 3.0, p_b: 1.0 / 3.0 }
        .assign(g.node_count())
        .unwrap();
    let g = g.with_tendencies(tendencies).unwrap();
    let th = Thresholds::new(0.5, 0.3).unwrap();
    let k = 30;

    let s_a = SeedSource::TopOutDegree.resolve(&g, k).unwrap();
    let partition = louvain(&g, 0);
    let sel = get_seed_sb(&g, &th, &s_a, k, &partition).unwrap();
    println!(
        "A alone reaches {} nodes in {} communities; {} candidates",
        sel.influenced.len(),
        sel.touched_communities.len(),
        sel.candidates.len()
    );
    println!("S_B = {:?}", sel.seeds.members);

    let r = diffuse(&g, &th, &s_a, &sel.seeds.members).unwrap();
    println!("lodbh:  sigma_A = {:>3}  sigma_B = {:>3}", r.sigma_a, r.sigma_b);
    let random = random_seeds(g.node_count(), &s_a, k, 1);
    let r = diffuse(&g, &th, &s_a, &random).unwrap();
    println!("random: sigma_A = {:>3}  sigma_B = {:>3}", r.sigma_a, r.sigma_b);
}
