//! Command-line front end: run verification suites, list body descriptors,
//! and compute single interpolation-norm sandwiches.

mod config;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};

use logbm_core::geometry::builtin::{make_builtin, BodyDescriptor};
use logbm_core::geometry::grid::DirectionGrid;
use logbm_core::interpolation::sandwich::norm_sandwich;

use config::ExperimentConfig;

#[derive(Parser)]
#[command(
    name = "logbm",
    about = "Numerical checks for logarithmic Brunn-Minkowski-type inequalities \
             over complex-symmetric convex bodies",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check in a JSON experiment config and write reports.
    Verify {
        /// Path to the experiment config (JSON, schema 1).
        config: PathBuf,
        /// Output directory for report.json, summary.csv, and plot files.
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Worker threads (default: all cores). Results do not depend on this.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Information about available body descriptors.
    Bodies {
        #[command(subcommand)]
        command: BodiesCommand,
    },
    /// Certified sandwich bounds for one interpolation norm ||x||_lambda.
    Interp {
        /// Body K as a JSON descriptor, e.g. '{"kind":"lp-ball","p":1,"weights":[1,1],"complex":true}'.
        #[arg(long)]
        k: String,
        /// Body T as a JSON descriptor.
        #[arg(long)]
        t: String,
        /// Interpolation parameter in [0, 1].
        #[arg(long)]
        lambda: f64,
        /// Point, comma-separated coordinates, e.g. "1,0,0,0".
        #[arg(long)]
        point: String,
        /// Candidate family size.
        #[arg(long, default_value_t = 3)]
        m: usize,
        /// Boundary damping parameter.
        #[arg(long, default_value_t = 0.05)]
        epsilon: f64,
        /// Optimizer sweep budget.
        #[arg(long, default_value_t = 2000)]
        budget: usize,
        /// Direction grid size for the lower bound.
        #[arg(long, default_value_t = 2000)]
        grid_size: usize,
        /// Use Hopf-orbit directions (valid for exactly complex bodies).
        #[arg(long)]
        orbit: bool,
    },
}

#[derive(Subcommand)]
enum BodiesCommand {
    /// List the built-in body descriptor kinds with examples.
    List,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify { config, out, jobs } => verify(&config, &out, jobs),
        Command::Bodies { command: BodiesCommand::List } => {
            print_bodies();
            ExitCode::SUCCESS
        }
        Command::Interp {
            k,
            t,
            lambda,
            point,
            m,
            epsilon,
            budget,
            grid_size,
            orbit,
        } => interp(&k, &t, lambda, &point, m, epsilon, budget, grid_size, orbit),
    }
}

fn verify(config_path: &PathBuf, out: &PathBuf, jobs: Option<usize>) -> ExitCode {
    let text = match std::fs::read_to_string(config_path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", config_path.display());
            return ExitCode::from(1);
        }
    };
    let cfg = match ExperimentConfig::parse(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let run_it = || run::run_suite(&cfg, out);
    let outcome = match jobs {
        Some(n) => {
            let pool = match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
                Ok(p) => p,
                Err(e) => {
                    eprintln!("error: cannot build thread pool: {e}");
                    return ExitCode::from(1);
                }
            };
            pool.install(run_it)
        }
        None => run_it(),
    };
    let outcome = match outcome {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    println!(
        "{:<24} {:<14} {:>7} {:>12} {:>10}  verdict",
        "check", "kind", "lambda", "margin", "budget"
    );
    for r in &outcome.reports {
        println!(
            "{:<24} {:<14} {:>7} {:>12} {:>10}  {}",
            r.check_id,
            r.kind,
            r.lambda.map(|l| format!("{l:.3}")).unwrap_or_default(),
            if r.margin.is_finite() {
                format!("{:+.4}", r.margin)
            } else {
                "-".into()
            },
            format!("{:.4}", r.error_budget.total),
            run::verdict_str(r.verdict),
        );
    }
    println!(
        "\n{} report(s) written to {}",
        outcome.reports.len(),
        out.display()
    );
    ExitCode::from(outcome.exit_code as u8)
}

#[allow(clippy::too_many_arguments)]
fn interp(
    k: &str,
    t: &str,
    lambda: f64,
    point: &str,
    m: usize,
    epsilon: f64,
    budget: usize,
    grid_size: usize,
    orbit: bool,
) -> ExitCode {
    let parse_body = |label: &str, text: &str| -> Result<_, String> {
        let desc: BodyDescriptor = serde_json::from_str(text)
            .map_err(|e| format!("cannot parse {label} descriptor: {e}"))?;
        make_builtin::<f64>(&desc).map_err(|e| format!("invalid {label} body: {e}"))
    };
    let result = (|| -> Result<String, String> {
        let kb = parse_body("--k", k)?;
        let tb = parse_body("--t", t)?;
        let x: Vec<f64> = point
            .split(',')
            .map(|s| s.trim().parse::<f64>().map_err(|e| format!("bad coordinate {s:?}: {e}")))
            .collect::<Result<_, _>>()?;
        if x.len() != kb.dim() {
            return Err(format!(
                "point has {} coordinates, bodies have dimension {}",
                x.len(),
                kb.dim()
            ));
        }
        let grid = match (kb.dim(), orbit) {
            (2, false) => DirectionGrid::uniform_2d(grid_size.max(8)),
            (4, false) => DirectionGrid::sphere_4d(grid_size),
            (4, true) => DirectionGrid::hopf_orbit(grid_size),
            (d, true) => {
                return Err(format!("--orbit needs dimension 4, got {d}"));
            }
            (d, _) => return Err(format!("no direction grid in dimension {d}")),
        }
        .map_err(|e| e.to_string())?;
        let grid = Arc::new(grid);
        let s = norm_sandwich(&kb, &tb, lambda, &x, &grid, m, epsilon, budget)
            .map_err(|e| e.to_string())?;
        serde_json::to_string_pretty(&s).map_err(|e| e.to_string())
    })();
    match result {
        Ok(json) => {
            println!("{json}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn print_bodies() {
    println!(
        "\
Body descriptors (JSON, tag \"kind\"):

  euclidean-ball        {{\"kind\":\"euclidean-ball\",\"dim\":4}}
                        Unit Euclidean ball B_2^dim (dim even).
  cube                  {{\"kind\":\"cube\",\"dim\":4}}
                        [-1,1]^dim.
  cross-polytope        {{\"kind\":\"cross-polytope\",\"dim\":4}}
                        conv{{+-e_i}} (the l_1 unit ball).
  lp-ball               {{\"kind\":\"lp-ball\",\"p\":1.5,\"weights\":[1,1],\"complex\":true}}
                        Weighted l_p ball; \"complex\" groups coordinates into
                        complex pairs (sum of w_j^2 |z_j|^p <= 1 style gauges);
                        p may be a number or \"inf\".
  hermitian-ellipsoid   {{\"kind\":\"hermitian-ellipsoid\",\"matrix\":[[1,0],[0,4]],\"complex\":false}}
                        {{x : <x, A x> <= 1}} for SPD A (row-major).
  random-sym-polytope   {{\"kind\":\"random-sym-polytope\",\"dim\":4,\"pairs\":12,\"seed\":7}}
                        Seeded origin-symmetric polytope, vertices in
                        antipodal pairs on the unit sphere. Deterministic.
  v-polytope            {{\"kind\":\"v-polytope\",\"vertices\":[[1,1],[-1,1],[-1,-1],[1,-1]]}}
  h-polytope            {{\"kind\":\"h-polytope\",\"halfspaces\":[{{\"normal\":[1,0],\"offset\":1}}, ...]}}

Experiment configs may also wrap any polytope descriptor as

  complex-hull          {{\"kind\":\"complex-hull\",\"of\":{{...}}}}
                        {{x : |<x, n_i>_C| <= b_i}}: the intersection of all
                        complex rotations of the halfspace family (for a
                        vertex list, vertices are read as halfspace normals
                        with offset 1)."
    );
}
