use std::io::Cursor;

use udcim::graph::{parse_edge_list, parse_tendencies, Directedness, TendencyDefault, WeightPolicy};

const EDGES: &str = "\
# friendship graph
alice bob
bob carol 0.4
carol alice
dave alice
dave alice
erin erin
";

const TENDENCIES: &str = "alice 1\ncarol 2\n";

fn main() {
    let edges = parse_edge_list(Cursor::new(EDGES), Directedness::AsDirected).unwrap();
    println!("labels: {:?}", edges.labels());
    println!("stats: {:?}", edges.stats());

    for policy in ["inverse-in-degree", "uniform:0.3", "random:7"] {
        let g = edges.assign_weights(policy.parse::<WeightPolicy>().unwrap()).unwrap();
        let weights: Vec<String> = g
            .arcs()
            .iter()
            .map(|a| format!("{}->{} {:.3}", g.label(a.source), g.label(a.target), a.weight))
            .collect();
        println!("{policy:>18}: {}", weights.join(", "));
    }

    // `keep` needs every weight in the file.
    println!("keep: {}", edges.assign_weights(WeightPolicy::Keep).unwrap_err());

    let g = edges.assign_weights(WeightPolicy::InverseInDegree).unwrap();
    let tendencies = parse_tendencies(Cursor::new(TENDENCIES), &g, TendencyDefault::Neutral).unwrap();
    let g = g.with_tendencies(tendencies).unwrap();
    let mut out = Vec::new();
    g.write_tendencies(&mut out).unwrap();
    print!("{}", String::from_utf8(out).unwrap());

    let undirected = parse_edge_list(Cursor::new(EDGES), Directedness::Symmetrize).unwrap();
    println!("symmetrized arcs: {}", undirected.arcs().len());
}
