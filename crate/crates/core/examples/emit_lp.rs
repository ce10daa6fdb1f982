use udcim::exact::{brute_force, build_milp, parse_lp, seeds_from_solution, solve_binary, BruteForceConfig, MilpConfig, SolverConfig};
use udcim::graph::Tendency;
use udcim::{diffuse, Thresholds, WeightedDigraph};

fn main() {
    let g = WeightedDigraph::from_arcs(
        5,
        [(0, 1, 0.5), (1, 2, 0.75), (3, 2, 0.5), (2, 4, 0.5), (3, 4, 0.25), (4, 1, 0.25)],
        vec![Tendency::Neutral, Tendency::A, Tendency::B, Tendency::Neutral, Tendency::A],
    )
    .unwrap();
    let th = Thresholds::new(0.5, 0.3).unwrap();
    let (s_a, k) = ([0], 1);

    let model = build_milp(&g, &th, &s_a, k, &MilpConfig::default()).unwrap();
    let text = model.to_lp_string();
    let summary = model.summary();
    println!(
        "{} variables ({} auxiliary), {} constraints, {} bytes",
        summary.variables,
        summary.auxiliaries,
        summary.constraints,
        text.len()
    );
    for line in text.lines().take(12) {
        println!("  {line}");
    }
    let path = std::env::temp_dir().join("udcim_model.lp");
    std::fs::write(&path, &text).unwrap();
    println!("wrote {}", path.display());

    let problem = parse_lp(&text).unwrap();
    let sol = solve_binary(&problem, &SolverConfig::default()).unwrap().unwrap();
    let seeds = seeds_from_solution(&problem, &sol.values, &s_a);
    println!("solver: objective {} after {} nodes, S_B = {seeds:?}", sol.objective, sol.nodes);
    println!("replay: sigma_B = {}", diffuse(&g, &th, &s_a, &seeds).unwrap().sigma_b);

    let best = brute_force(&g, &th, &s_a, k, &BruteForceConfig::default()).unwrap();
    println!("brute force: S_B = {:?}, sigma_B = {}", best.seeds.members, best.sigma_b);
}
