//! `graphjac`: Jacobians of multigraphs, the monodromy pairing, and
//! discrete logarithms on `Jac(G)` from the command line.
//!
//! Graph files hold a header line `n m` followed by `m` lines `u v`;
//! divisors are comma-separated coefficients such as `1,-1,0`.

mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use commands::Output;

#[derive(Parser, Debug)]
#[command(name = "graphjac", version, about = "Jacobians of multigraphs and pairing-based discrete logs")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Vertex and edge counts, group order and invariant factors.
    Info {
        #[arg(long)]
        graph: String,
    },
    /// Invariant factors and one generator per factor.
    Structure {
        #[arg(long)]
        graph: String,
    },
    /// The monodromy pairing of two degree-zero divisors.
    Pairing {
        #[arg(long)]
        graph: String,
        #[arg(long, allow_hyphen_values = true)]
        d1: String,
        #[arg(long, allow_hyphen_values = true)]
        d2: String,
        /// `minor:i` (delete row and column i) or `mp` (Moore-Penrose).
        #[arg(long, default_value = "minor:0")]
        inverse: String,
        /// Evaluate with every minor inverse and Moore-Penrose; they must agree.
        #[arg(long, conflicts_with = "inverse")]
        all_inverses: bool,
    },
    /// Solve x·base ~ target.
    Dlp {
        #[arg(long)]
        graph: String,
        #[arg(long, allow_hyphen_values = true)]
        base: String,
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        /// Use the multi-generator solver even for cyclic Jacobians.
        #[arg(long)]
        general: bool,
        /// Cross-check against a brute-force scan when the group is small.
        #[arg(long)]
        oracle: bool,
    },
    /// The q-reduced divisor equivalent to the input.
    Reduce {
        #[arg(long)]
        graph: String,
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
        #[arg(long, default_value_t = 0)]
        q: usize,
    },
    /// A seeded graph and DLP instance with a known secret.
    GenInstance {
        /// cycle, complete, banana, wheel or random
        #[arg(long)]
        family: String,
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the graph here; otherwise it is printed with the instance.
        #[arg(long)]
        out: Option<String>,
    },
    /// Run the acceptance checks on the built-in corpus.
    SelfCheck {
        #[arg(long, default_value_t = 200)]
        pairs: usize,
        #[arg(long, default_value_t = 100)]
        instances: u64,
        #[arg(long, default_value_t = 100)]
        lift_trials: u64,
        /// Include the timing criterion (cycle graphs on 800 and 1600 vertices).
        #[arg(long)]
        bench: bool,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
    /// Time DLP solves on cycle graphs of the given sizes.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [800, 1600])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 20)]
        instances: usize,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
}

fn run(command: Command) -> anyhow::Result<Output> {
    match command {
        Command::Info { graph } => commands::info(&graph),
        Command::Structure { graph } => commands::structure(&graph),
        Command::Pairing {
            graph,
            d1,
            d2,
            inverse,
            all_inverses,
        } => commands::pairing(&graph, &d1, &d2, &inverse, all_inverses),
        Command::Dlp {
            graph,
            base,
            target,
            general,
            oracle,
        } => commands::dlp(&graph, &base, &target, general, oracle),
        Command::Reduce { graph, divisor, q } => commands::reduce(&graph, &divisor, q),
        Command::GenInstance {
            family,
            size,
            seed,
            out,
        } => commands::gen_instance(&family, size, seed, out.as_deref()),
        Command::SelfCheck {
            pairs,
            instances,
            lift_trials,
            bench,
            seed,
        } => commands::self_check(pairs, instances, lift_trials, bench, seed),
        Command::Bench { sizes, instances, seed } => commands::bench(&sizes, instances, seed),
    }
}

/// Exit code and short tag for an error.
fn classify(err: &anyhow::Error) -> (u8, &'static str) {
    use graphjac::Error as E;
    let Some(e) = err.chain().find_map(|c| c.downcast_ref::<E>()) else {
        return (1, "error");
    };
    match e {
        E::Parse { .. } => (2, "parse"),
        E::EmptyGraph | E::LoopEdge(_) | E::VertexOutOfRange { .. } | E::Disconnected => (3, "invalid-graph"),
        E::NonZeroDegree(_)
        | E::DimensionMismatch { .. }
        | E::InvalidArgument(_)
        | E::NotSquare { .. }
        | E::Singular
        | E::TooLarge { .. } => (4, "domain"),
        E::NoSolution => (5, "no-solution"),
        E::NotCyclic(_) => (6, "not-cyclic"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            if cli.json {
                println!("{}", out.json);
            } else {
                print!("{}", out.text);
            }
            if out.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(err) => {
            let (code, kind) = classify(&err);
            if cli.json {
                let body = if kind == "no-solution" {
                    json!({ "error": kind })
                } else {
                    json!({ "error": kind, "message": format!("{err:#}") })
                };
                println!("{body}");
            } else {
                eprintln!("error: {err:#}");
            }
            ExitCode::from(code)
        }
    }
}
