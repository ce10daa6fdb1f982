use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use udcim::csbga::GaConfig;
use udcim::exact::{binomial, build_milp, parse_lp, seeds_from_solution, solve_binary, BudgetSense, MilpConfig, SolverConfig};
use udcim::experiment::{load_dataset, run_on_dataset, Algorithm, ReportFormat, RunConfig, SeedSource, TendencySpec};
use udcim::graph::{Directedness, WeightPolicy};
use udcim::{diffuse, Error, Result, Thresholds};

#[derive(Parser)]
#[command(name = "udcim", version, about = "Competitive influence maximization with user tendencies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Edge list, one `u v [w]` per line.
    #[arg(long)]
    graph: PathBuf,
    /// Read each line as an undirected edge.
    #[arg(long)]
    undirected: bool,
    /// keep | inverse-in-degree | uniform:<c> | random:<seed>
    #[arg(long, default_value = "inverse-in-degree")]
    weights: WeightPolicy,
    /// Tendency file, or neutral | random:<seed>:<pA>:<pB>
    #[arg(long, default_value = "neutral")]
    tendencies: TendencySpec,
    #[arg(long, default_value_t = 0.5)]
    theta1: f64,
    #[arg(long, default_value_t = 0.3)]
    theta2: f64,
    #[arg(long, default_value_t = 10)]
    k: usize,
    /// top-out-degree | random:<seed> | comma-separated labels
    #[arg(long, default_value = "top-out-degree")]
    seed_a: SeedSource,
    #[arg(long, default_value_t = 0)]
    rng_seed: u64,
    #[arg(long, default_value = "json")]
    format: ReportFormat,
    /// Output file (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct GaArgs {
    #[arg(long, default_value_t = 50)]
    population: usize,
    #[arg(long, default_value_t = 200)]
    generations: usize,
    #[arg(long, default_value_t = 4)]
    tournament: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Run the diffusion for given S_A and S_B.
    Diffuse {
        #[command(flatten)]
        common: Common,
        /// Comma-separated labels.
        #[arg(long, default_value = "")]
        seed_b: String,
    },
    /// Choose S_B with the local out-degree heuristic.
    Lodbh {
        #[command(flatten)]
        common: Common,
    },
    /// Choose S_B with the genetic algorithm.
    Csbga {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        ga: GaArgs,
    },
    /// Choose S_B by exhaustive search.
    Exact {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 2_000_000)]
        cap: u128,
    },
    /// Write the binary program for choosing S_B in LP format.
    EmitLp {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        horizon: Option<usize>,
        #[arg(long, default_value_t = 200)]
        node_cap: usize,
        /// Require exactly k B seeds instead of at most k.
        #[arg(long)]
        exact_budget: bool,
        /// Also solve the model with the bundled solver and report S_B on stderr.
        #[arg(long)]
        solve: bool,
    },
    /// Compare several algorithms on one dataset.
    Bench {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        ga: GaArgs,
        #[arg(long, value_delimiter = ',', default_value = "lodbh,csbga,random-baseline")]
        algorithms: Vec<Algorithm>,
        #[arg(long, default_value_t = 5)]
        repetitions: usize,
        #[arg(long, default_value_t = 2_000_000)]
        cap: u128,
    },
}

fn output(common: &Common) -> Result<Box<dyn Write>> {
    Ok(match &common.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn directedness(common: &Common) -> Directedness {
    if common.undirected {
        Directedness::Symmetrize
    } else {
        Directedness::AsDirected
    }
}

fn run_config(common: &Common, algorithms: Vec<Algorithm>) -> RunConfig {
    RunConfig {
        dataset: common.graph.clone(),
        directedness: directedness(common),
        weights: common.weights,
        tendencies: common.tendencies.clone(),
        theta1: common.theta1,
        theta2: common.theta2,
        k: common.k,
        seed_a: common.seed_a.clone(),
        algorithms,
        rng_seed: common.rng_seed,
        ..RunConfig::default()
    }
}

fn ga_config(ga: &GaArgs, base: &RunConfig) -> GaConfig {
    GaConfig {
        population_size: ga.population,
        generations: ga.generations,
        tournament_size: ga.tournament,
        ..base.ga
    }
}

/// Writes the report. With `strict`, an error row fails the command.
fn report(common: &Common, config: &RunConfig, strict: bool) -> Result<()> {
    let dataset = load_dataset(&config.dataset, config.directedness, config.weights, &config.tendencies)?;
    let report = run_on_dataset(&dataset, config)?;
    let mut out = output(common)?;
    writeln!(out, "{}", report.render(common.format).trim_end())?;
    out.flush()?;
    match report.rows.iter().find_map(|r| r.error.clone()) {
        Some(error) if strict => Err(Error::Domain(error)),
        _ => Ok(()),
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Diffuse { common, seed_b } => {
            let cfg = run_config(&common, vec![]);
            let data = load_dataset(&cfg.dataset, cfg.directedness, cfg.weights, &cfg.tendencies)?;
            let g = &data.graph;
            let th = Thresholds::new(common.theta1, common.theta2)?;
            let s_a = common.seed_a.resolve(g, common.k)?;
            let s_b = if seed_b.trim().is_empty() {
                Vec::new()
            } else {
                seed_b.parse::<SeedSource>()?.resolve(g, common.k)?
            };
            let r = diffuse(g, &th, &s_a, &s_b)?;
            let labels = |side| {
                r.final_state
                    .members(side)
                    .into_iter()
                    .map(|u| g.label(u).to_string())
                    .collect::<Vec<_>>()
            };
            let mut out = output(&common)?;
            match common.format {
                ReportFormat::Json => {
                    let doc = json!({
                        "dataset": data.name,
                        "n": g.node_count(),
                        "m": g.arc_count(),
                        "sigma_a": r.sigma_a,
                        "sigma_b": r.sigma_b,
                        "rounds": r.rounds,
                        "final_a": labels(udcim::Side::A),
                        "final_b": labels(udcim::Side::B),
                    });
                    writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"))?;
                }
                ReportFormat::Csv => {
                    writeln!(out, "dataset,n,m,sigma_a,sigma_b,rounds")?;
                    writeln!(
                        out,
                        "{},{},{},{},{},{}",
                        data.name,
                        g.node_count(),
                        g.arc_count(),
                        r.sigma_a,
                        r.sigma_b,
                        r.rounds
                    )?;
                }
            }
            out.flush()?;
            Ok(())
        }
        Command::Lodbh { common } => report(&common, &run_config(&common, vec![Algorithm::Lodbh]), true),
        Command::Csbga { common, ga } => {
            let mut cfg = run_config(&common, vec![Algorithm::Csbga]);
            cfg.ga = ga_config(&ga, &cfg);
            cfg.repetitions = 1;
            report(&common, &cfg, true)
        }
        Command::Exact { common, cap } => {
            let mut cfg = run_config(&common, vec![Algorithm::Exact]);
            cfg.brute.combination_cap = cap;
            let dataset = load_dataset(&cfg.dataset, cfg.directedness, cfg.weights, &cfg.tendencies)?;
            let report = run_on_dataset(&dataset, &cfg)?;
            let mut out = output(&common)?;
            writeln!(out, "{}", report.render(common.format).trim_end())?;
            out.flush()?;
            if report.rows.iter().any(|r| r.error.is_some()) {
                let pool = dataset.graph.node_count() - report.s_a.len();
                return Err(Error::CapExceeded {
                    what: "subset count",
                    actual: binomial(pool, cfg.k),
                    limit: cap,
                });
            }
            Ok(())
        }
        Command::EmitLp {
            common,
            horizon,
            node_cap,
            exact_budget,
            solve,
        } => {
            let cfg = run_config(&common, vec![]);
            let data = load_dataset(&cfg.dataset, cfg.directedness, cfg.weights, &cfg.tendencies)?;
            let g = &data.graph;
            let th = Thresholds::new(common.theta1, common.theta2)?;
            let s_a = common.seed_a.resolve(g, common.k)?;
            let milp = MilpConfig {
                node_cap,
                horizon,
                budget: if exact_budget { BudgetSense::Exactly } else { BudgetSense::AtMost },
                ..MilpConfig::default()
            };
            let model = build_milp(g, &th, &s_a, common.k, &milp)?;
            let text = model.to_lp_string();
            let mut out = output(&common)?;
            out.write_all(text.as_bytes())?;
            out.flush()?;
            let summary = model.summary();
            eprintln!(
                "variables {} constraints {} auxiliaries {}",
                summary.variables, summary.constraints, summary.auxiliaries
            );
            if solve {
                let problem = parse_lp(&text)?;
                match solve_binary(&problem, &SolverConfig::default())? {
                    Some(sol) => {
                        let seeds = seeds_from_solution(&problem, &sol.values, &s_a);
                        let r = diffuse(g, &th, &s_a, &seeds)?;
                        let labels: Vec<&str> = seeds.iter().map(|&u| g.label(u)).collect();
                        eprintln!(
                            "optimum {} S_B [{}] sigma_a {} sigma_b {}",
                            sol.objective,
                            labels.join(" "),
                            r.sigma_a,
                            r.sigma_b
                        );
                    }
                    None => eprintln!("model is infeasible"),
                }
            }
            Ok(())
        }
        Command::Bench {
            common,
            ga,
            algorithms,
            repetitions,
            cap,
        } => {
            let mut cfg = run_config(&common, algorithms);
            cfg.ga = ga_config(&ga, &cfg);
            cfg.repetitions = repetitions;
            cfg.brute.combination_cap = cap;
            report(&common, &cfg, false)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
