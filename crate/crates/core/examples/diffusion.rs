use udcim::diffusion::{diffuse_traced, Status};
use udcim::graph::Tendency;
use udcim::{Thresholds, WeightedDigraph};

fn main() {
    // 0 -> 1 -> 2, 3 -> 1, 4 -> 5
    let g = WeightedDigraph::from_arcs(
        6,
        [(0, 1, 0.9), (1, 2, 0.9), (3, 1, 0.9), (4, 5, 0.9)],
        vec![Tendency::Neutral, Tendency::A, Tendency::B, Tendency::Neutral, Tendency::Neutral, Tendency::B],
    )
    .unwrap();
    let th = Thresholds::new(0.5, 0.2).unwrap();

    for s_b in [vec![], vec![1], vec![3]] {
        let (result, trace) = diffuse_traced(&g, &th, &[0], &s_b).unwrap();
        println!("S_A = [0], S_B = {s_b:?}");
        for (r, state) in trace.iter().enumerate() {
            let row: String = state
                .statuses()
                .iter()
                .map(|s| match s {
                    Status::FinalA => 'A',
                    Status::FinalB => 'B',
                    Status::Inactive(_) => '.',
                })
                .collect();
            println!("  round {r}: {row}");
        }
        println!(
            "  sigma_A = {}, sigma_B = {}, rounds = {}\n",
            result.sigma_a, result.sigma_b, result.rounds
        );
    }
}
