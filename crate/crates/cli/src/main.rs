mod commands;
mod config;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use thiserror::Error;

use config::{default_cache_dir, GensChoice, RunConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("verification failed\n{0}")]
    Verification(String),
    #[error(transparent)]
    Core(#[from] coset_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use coset_core::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Verification(_) => 1,
            CliError::Core(E::CapExceeded(_)) => 3,
            CliError::Core(E::Unknown { .. } | E::Parse(_) | E::QubitOutOfRange { .. } | E::SameControlTarget(_)) => 2,
            CliError::Core(_) | CliError::Io(_) => 1,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "coset-graphs", version, about = "Clifford reachability graphs, contracted graphs and entropy vectors")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// State spec: basis:01, ghz:3, dicke:4:2, w:3, fixture:NAME, address:..., word:N:GATES, or a JSON file
    #[arg(long, global = true)]
    state: Option<String>,
    /// Generator set: hc12, c2, p2c12 or hp1
    #[arg(long, global = true, default_value = "hc12")]
    gens: String,
    /// JSON generator set {"name", "qubits", "generators", "local"}; overrides --gens
    #[arg(long, global = true)]
    gen_file: Option<PathBuf>,
    /// Directory for graph and table files
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// dot, graphml, json or csv
    #[arg(long, global = true, default_value = "dot")]
    format: String,
    /// Bound on orbit, group or census size
    #[arg(long, global = true, default_value_t = 4_000_000)]
    cap: usize,
    /// Tolerance for comparing entropies with reference values
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Allow the 5-qubit census
    #[arg(long, global = true)]
    extended: bool,
    /// Keep self-loops in contracted graphs
    #[arg(long, global = true)]
    keep_loops: bool,
    /// Export every arc, including both directions of involutive generators
    #[arg(long, global = true)]
    directed_edges: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate the group generated by --gens and cache it
    Enumerate,
    /// Build the reachability graph of --state
    Reach,
    /// Build and contract the reachability graph of --state
    Contract,
    /// Classify all n-qubit stabilizer states into two-qubit Clifford orbits
    Census { n: usize },
    /// Run a verification suite (or `all`)
    Verify {
        #[arg(default_value = "all")]
        suite: String,
    },
    /// Maximum number of entropy vectors in one n-qubit Clifford orbit
    DiversityTable {
        #[arg(default_value_t = 5)]
        max_n: u32,
    },
}

fn config(cli: &Cli) -> Result<RunConfig, CliError> {
    let command = match &cli.command {
        Command::Enumerate => "enumerate",
        Command::Reach => "reach",
        Command::Contract => "contract",
        Command::Census { .. } => "census",
        Command::Verify { .. } => "verify",
        Command::DiversityTable { .. } => "diversity-table",
    };
    let cfg = RunConfig {
        command: command.to_string(),
        state: cli.state.clone(),
        gens: match &cli.gen_file {
            Some(p) => GensChoice::File(p.clone()),
            None => GensChoice::Named(cli.gens.clone()),
        },
        tol: cli.tol,
        cap: cli.cap,
        out: cli.out.clone(),
        cache_dir: default_cache_dir(),
        jobs: cli.jobs,
        format: cli.format.parse().map_err(|e: coset_core::Error| CliError::Usage(e.to_string()))?,
        extended: cli.extended,
        keep_loops: cli.keep_loops,
        directed_edges: cli.directed_edges,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn run_verify(cfg: &RunConfig, suite: &str) -> Result<String, CliError> {
    if suite != "all" && !verify::SUITES.contains(&suite) {
        return Err(CliError::Usage(format!(
            "unknown suite `{suite}`; expected all or one of {}",
            verify::SUITES.join(", ")
        )));
    }
    let opts = verify::Options {
        tol: cfg.tol,
        extended: cfg.extended,
        jobs: cfg.jobs,
    };
    let checks = verify::run(suite, &opts)?;
    let passed = checks.iter().filter(|c| c.pass).count();
    let text = match cfg.format {
        coset_core::graphs::export::Format::Json => serde_json::to_string_pretty(&checks).expect("plain data") + "\n",
        _ => {
            let mut s = String::new();
            for c in &checks {
                s.push_str(&format!(
                    "{} {}/{}: expected {} actual {}\n",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.suite,
                    c.name,
                    c.expected,
                    c.actual
                ));
            }
            s.push_str(&format!("{passed}/{} checks passed\n", checks.len()));
            s
        }
    };
    if let Some(p) = cfg.write_output(&format!("verify-{suite}.json"), &serde_json::to_string_pretty(&checks).expect("plain data"))? {
        eprintln!("wrote {}", p.display());
    }
    if passed == checks.len() {
        Ok(text)
    } else {
        Err(CliError::Verification(text))
    }
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let cfg = config(cli)?;
    match &cli.command {
        Command::Enumerate => commands::enumerate(&cfg),
        Command::Reach => commands::reach(&cfg),
        Command::Contract => commands::contract(&cfg),
        Command::Census { n } => commands::run_census(&cfg, *n),
        Command::Verify { suite } => run_verify(&cfg, suite),
        Command::DiversityTable { max_n } => commands::diversity_table(*max_n),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::Verification(report)) => {
            print!("{report}");
            eprintln!("verification failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
