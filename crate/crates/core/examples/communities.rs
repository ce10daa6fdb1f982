use udcim::analytics::{louvain, modularity, pagerank, PageRankConfig};
use udcim::graph::WeightPolicy;
use udcim::synthetic::PlantedPartition;

fn main() {
    let planted = PlantedPartition { nodes: 400, communities: 4, arcs: 2400, cross_fraction: 0.05, seed: 3 };
    let g = planted
        .generate()
        .unwrap()
        .assign_weights(WeightPolicy::InverseInDegree)
        .unwrap();

    let labels: Vec<usize> = (0..g.node_count()).map(|u| planted.block_of(u)).collect();
    println!("planted modularity {:.4}", modularity(&g, &labels).unwrap());

    let p = louvain(&g, 42);
    println!("louvain: {} communities, modularity {:.4}", p.len(), p.modularity);
    println!("per pass: {:?}", p.pass_modularity.iter().map(|q| format!("{q:.4}")).collect::<Vec<_>>());
    let sizes: Vec<usize> = p.communities.iter().map(Vec::len).collect();
    println!("sizes: {sizes:?}");

    let pr = pagerank(&g, PageRankConfig::default()).unwrap();
    let mut order: Vec<usize> = (0..g.node_count()).collect();
    order.sort_by(|&a, &b| pr.scores[b].total_cmp(&pr.scores[a]));
    println!("pagerank converged in {} iterations (residual {:.2e})", pr.iterations, pr.residual);
    for &u in &order[..5] {
        println!("  node {u:>3}  score {:.5}  community {}", pr.scores[u], p.community_of(u));
    }
}
