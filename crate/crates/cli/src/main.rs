//! Command-line front end: game-config ingestion, the commitment solvers,
//! reward-interval design, steering verification, simulation, and the
//! normal-form dump.
//!
//! Exit codes are a stable scripting contract: 0 success, 1 semantic
//! negative (steering violated), 2 input or usage error, 3 capacity
//! exceeded. Exactly one result document goes to stdout; everything else
//! goes to stderr.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use stackrec::{
    brute_force_commitment_value, enumerate_worker_types, feasible_mu_region, harsanyi_transform,
    optimal_observed_action_commitment, simulate, solve_multiple_lps, verify_steering,
    write_normal_form_dump, DesignError, GameSpec, MixedStrategy, SolverError,
};

use stackrec_cli::config::GameConfigDocument;
use stackrec_cli::doc::{Payload, ResultDocument};

const EXIT_STEERING_VIOLATED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_CAPACITY: u8 = 3;

#[derive(Parser)]
#[command(
    name = "stackrec",
    version,
    about = "Optimal task-recommendation commitments against typed workers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the full worker type space for K tasks (4 * K! rows).
    EnumerateTypes {
        /// Number of task types (1..=7).
        #[arg(long)]
        tasks: usize,
    },
    /// Compute the optimal leader commitment for a game config.
    Solve {
        config: PathBuf,
        /// multilp: one program per follower profile; observed: best pure
        /// recommendation under observed-action play; grid: sweep oracle
        /// (two-task games only).
        #[arg(long, value_enum, default_value_t = Method::Multilp)]
        method: Method,
        /// Grid steps for --method grid.
        #[arg(long, default_value_t = 1000)]
        grid: usize,
    },
    /// Derive the disobedience-cost interval that steers every type to a
    /// suitable task (two-task games only).
    DesignMu { config: PathBuf },
    /// Check whether a concrete μ steers every type; exit 0 iff it does.
    VerifySteering {
        config: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        mu: f64,
    },
    /// Replay seeded one-shot interactions under a committed strategy.
    Simulate(SimulateArgs),
    /// Write the type-expanded normal form as a tab-separated matrix file.
    Transform {
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct SimulateArgs {
    config: PathBuf,
    /// Commitment as comma-separated probabilities, e.g. "0.25,0.75".
    #[arg(long, group = "strategy", required = true)]
    sigma: Option<String>,
    /// Use the multilp solver's optimal commitment instead.
    #[arg(long, group = "strategy")]
    from_solve: bool,
    #[arg(long)]
    rounds: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Multilp,
    Observed,
    Grid,
}

enum CliError {
    Usage(String),
    Input(Vec<String>),
    Capacity(String),
}

impl CliError {
    fn report(&self) -> u8 {
        match self {
            CliError::Usage(msg) => {
                eprintln!("error: {msg}");
                EXIT_INPUT
            }
            CliError::Input(problems) => {
                eprintln!("error: the config is not a valid game instance:");
                for problem in problems {
                    eprintln!("  - {problem}");
                }
                EXIT_INPUT
            }
            CliError::Capacity(msg) => {
                eprintln!("error: {msg}");
                EXIT_CAPACITY
            }
        }
    }
}

struct LoadedConfig {
    spec: GameSpec,
    digest: String,
}

fn hex_digest(bytes: &[u8]) -> String {
    let hash = Sha256::digest(bytes);
    let mut out = String::with_capacity(7 + hash.len() * 2);
    out.push_str("sha256:");
    for byte in hash {
        write!(out, "{byte:02x}").expect("writing to a string");
    }
    out
}

fn load_config(path: &Path) -> Result<LoadedConfig, CliError> {
    let bytes = fs::read(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let digest = hex_digest(&bytes);
    let document: GameConfigDocument = serde_json::from_slice(&bytes)
        .map_err(|e| CliError::Input(vec![format!("invalid JSON: {e}")]))?;
    let spec = document
        .to_game_spec()
        .map_err(|e| CliError::Input(vec![e]))?;
    let violations = spec.validate();
    if !violations.is_empty() {
        return Err(CliError::Input(
            violations.iter().map(ToString::to_string).collect(),
        ));
    }
    if !spec.has_full_type_enumeration() {
        eprintln!(
            "note: worker type list is hand-restricted ({} types for {} tasks)",
            spec.type_count(),
            spec.task_count()
        );
    }
    Ok(LoadedConfig { spec, digest })
}

fn solver_error(err: SolverError) -> CliError {
    match err {
        SolverError::CapacityExceeded { .. } => CliError::Capacity(err.to_string()),
        other => CliError::Usage(other.to_string()),
    }
}

fn design_error(err: DesignError) -> CliError {
    match err {
        DesignError::UnsupportedShape { found } => CliError::Usage(format!(
            "the reward-interval analysis is derived for two-task games; \
             this config has {found} task types"
        )),
        other => CliError::Usage(other.to_string()),
    }
}

fn emit(document: &ResultDocument) {
    println!("{}", document.render());
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::EnumerateTypes { tasks } => {
            if !(1..=7).contains(&tasks) {
                return Err(CliError::Usage(format!(
                    "--tasks must lie in 1..=7 (4 * K! types get unwieldy fast), got {tasks}"
                )));
            }
            let types =
                enumerate_worker_types(tasks).map_err(|e| CliError::Usage(e.to_string()))?;
            for (index, wt) in types.iter().enumerate() {
                let order: Vec<String> = wt
                    .preference_order
                    .iter()
                    .map(ToString::to_string)
                    .collect();
                println!("{index}\t{}\t{}", wt.beta_category, order.join(","));
            }
            Ok(0)
        }
        Command::Solve {
            config,
            method,
            grid,
        } => {
            let loaded = load_config(&config)?;
            let payload = match method {
                Method::Multilp => {
                    let result = solve_multiple_lps(&loaded.spec).map_err(solver_error)?;
                    eprintln!(
                        "solved {} programs ({} optimal, {} infeasible)",
                        result.lps_solved,
                        result.lp_statuses.optimal,
                        result.lp_statuses.infeasible
                    );
                    Payload::Commitment {
                        method: "multilp",
                        result,
                    }
                }
                Method::Observed => {
                    let (recommendation, value) = optimal_observed_action_commitment(&loaded.spec);
                    Payload::ObservedCommitment {
                        recommendation,
                        value,
                    }
                }
                Method::Grid => {
                    let value =
                        brute_force_commitment_value(&loaded.spec, grid).map_err(solver_error)?;
                    Payload::GridSearch { grid, value }
                }
            };
            emit(&ResultDocument::new(loaded.digest, payload));
            Ok(0)
        }
        Command::DesignMu { config } => {
            let loaded = load_config(&config)?;
            let region = feasible_mu_region(&loaded.spec).map_err(design_error)?;
            if let Some((low, high)) = region.blocking_pair {
                eprintln!(
                    "note: the steering region is empty; type {low}'s lower bound \
                     crosses type {high}'s upper bound"
                );
            }
            emit(&ResultDocument::new(
                loaded.digest,
                Payload::MuDesign { region },
            ));
            Ok(0)
        }
        Command::VerifySteering { config, mu } => {
            let loaded = load_config(&config)?;
            let verdict = verify_steering(&loaded.spec, mu);
            if !verdict.boundary.is_empty() {
                eprintln!(
                    "note: μ = {mu} sits exactly on a type's bound; the outcome \
                     there is tie-break dependent, not guaranteed"
                );
            }
            let steers = verdict.steers();
            emit(&ResultDocument::new(
                loaded.digest,
                Payload::Steering { verdict },
            ));
            Ok(if steers { 0 } else { EXIT_STEERING_VIOLATED })
        }
        Command::Simulate(args) => {
            let loaded = load_config(&args.config)?;
            let sigma = if args.from_solve {
                let result = solve_multiple_lps(&loaded.spec).map_err(solver_error)?;
                eprintln!(
                    "using the multilp commitment (value {})",
                    result.leader_value
                );
                result.sigma
            } else {
                parse_sigma(args.sigma.as_deref().expect("clap enforces the group"))?
            };
            if args.rounds < 1 {
                return Err(CliError::Usage("--rounds must be at least 1".into()));
            }
            let report = simulate(&loaded.spec, &sigma, args.rounds, args.seed);
            emit(&ResultDocument::new(
                loaded.digest,
                Payload::Simulation { report },
            ));
            Ok(0)
        }
        Command::Transform { config, out } => {
            let loaded = load_config(&config)?;
            let game = harsanyi_transform(&loaded.spec).map_err(solver_error)?;
            let mut buffer = Vec::new();
            write_normal_form_dump(&game, &mut buffer)
                .map_err(|e| CliError::Usage(format!("cannot render the dump: {e}")))?;
            fs::write(&out, &buffer)
                .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", out.display())))?;
            emit(&ResultDocument::new(
                loaded.digest,
                Payload::Transform {
                    leader_actions: game.leader_actions(),
                    profiles: game.profile_count(),
                    out: out.display().to_string(),
                },
            ));
            Ok(0)
        }
    }
}

fn parse_sigma(text: &str) -> Result<MixedStrategy, CliError> {
    let probs: Result<Vec<f64>, _> = text.split(',').map(|p| p.trim().parse::<f64>()).collect();
    let probs = probs
        .map_err(|e| CliError::Usage(format!("--sigma must be comma-separated reals: {e}")))?;
    MixedStrategy::new(probs)
        .map_err(|e| CliError::Usage(format!("--sigma is not a strategy: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => ExitCode::from(err.report()),
    }
}
