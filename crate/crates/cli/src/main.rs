mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gassmann_core::fp::FpError;
use gassmann_core::gassmann::GassmannError;
use gassmann_core::obstruction::{Limits, ObstructionError};
use gassmann_core::perm::PermError;

use config::{OutputMode, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "gassmann", version, about = "Almost-conjugate subgroups and the mod-2 S obstruction")]
struct Cli {
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel scans (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Coset limit for Todd–Coxeter enumeration.
    #[arg(long, global = true, env = "GASSMANN_MAX_COSETS")]
    max_cosets: Option<usize>,
    /// Largest group order that may be enumerated element by element.
    #[arg(long, global = true)]
    max_group_order: Option<u64>,
    /// Largest group order for subgroup-lattice enumeration.
    #[arg(long, global = true)]
    max_subgroup_order: Option<u64>,
    /// Node budget for homomorphism search.
    #[arg(long, global = true)]
    hom_budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum DemoName {
    S16,
    M23,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    Auto,
    Explicit,
    CycleType,
}

#[derive(Subcommand, Debug)]
pub(crate) enum Command {
    /// Run one of the worked examples end to end.
    Demo {
        which: DemoName,
        /// Ambient degree for the S_n demo.
        #[arg(long, default_value_t = 16)]
        n: usize,
        /// Generator file for M23.
        #[arg(long)]
        data: Option<PathBuf>,
    },
    /// Whether H and K are almost conjugate in G.
    CheckGassmann {
        g: PathBuf,
        h: PathBuf,
        k: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        mode: ModeArg,
    },
    /// S of a permutation group, a presented group, or a finite-index subgroup of one.
    SInvariant {
        file: PathBuf,
        /// Subgroup generators as words, e.g. "a, b*a*b^-1".
        #[arg(long)]
        subgroup: Option<String>,
    },
    /// csinv(pi; phi) for an almost-conjugate triple (G, H, K).
    Csinv {
        /// The group pi: a .pgrp or .fp file.
        #[arg(long)]
        pi: PathBuf,
        /// "identity" or a .pgrp-format file listing the images of pi's generators.
        #[arg(long, default_value = "identity")]
        phi: String,
        /// G.pgrp H.pgrp K.pgrp
        #[arg(long, num_args = 3, value_names = ["G", "H", "K"])]
        triple: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "auto")]
        mode: ModeArg,
    },
    /// Exhaustive CS check of a finite permutation group over all its quotients.
    VerifyCs { group: PathBuf },
    /// Exhaustive CS check of Q(8a, b, c).
    VerifyCsQ8abc { a: u64, b: u64, c: u64 },
    /// All nonconjugate almost-conjugate subgroup pairs of a group.
    SearchPairs { group: PathBuf },
    /// Todd–Coxeter coset enumeration.
    CosetEnum {
        presentation: PathBuf,
        #[arg(long)]
        subgroup: Option<String>,
    },
    /// All homomorphisms from a presented group to a permutation group.
    HomSearch {
        presentation: PathBuf,
        group: PathBuf,
        /// Only surjective homomorphisms.
        #[arg(long)]
        surjective: bool,
    },
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Budget(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Budget(m) => m,
        }
    }
}

impl From<PermError> for CliError {
    fn from(e: PermError) -> Self {
        match e {
            PermError::LimitExceeded { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<FpError> for CliError {
    fn from(e: FpError) -> Self {
        match e {
            FpError::CosetLimit { .. } | FpError::IndexTooLarge { .. } => {
                CliError::Budget(e.to_string())
            }
            FpError::Perm(p) => p.into(),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<GassmannError> for CliError {
    fn from(e: GassmannError) -> Self {
        match e {
            GassmannError::Perm(p) => p.into(),
            GassmannError::NoClassMode | GassmannError::UnsupportedAction(_) => CliError::Budget(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<ObstructionError> for CliError {
    fn from(e: ObstructionError) -> Self {
        match e {
            ObstructionError::Perm(p) => p.into(),
            ObstructionError::Fp(f) => f.into(),
            ObstructionError::Gassmann(g) => g.into(),
            ObstructionError::Infeasible(_) => CliError::Budget(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

fn run(cli: Cli) -> Result<(commands::Outcome, OutputMode), CliError> {
    let defaults = Limits::default();
    let config = RunConfig {
        limits: Limits {
            max_cosets: cli.max_cosets.unwrap_or(defaults.max_cosets),
            max_group_order: cli.max_group_order.unwrap_or(defaults.max_group_order),
            max_subgroup_enum_order: cli.max_subgroup_order.unwrap_or(defaults.max_subgroup_enum_order),
            max_hom_index: defaults.max_hom_index,
            hom_node_budget: cli.hom_budget.unwrap_or(defaults.hom_node_budget),
        },
        workers: cli.workers,
        output: if cli.json { OutputMode::Json } else { OutputMode::Text },
    };
    config.validate()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = config.workers {
        builder = builder.num_threads(w);
    }
    let pool = builder.build().map_err(|e| CliError::Input(e.to_string()))?;
    let out = pool.install(|| commands::dispatch(cli.command, &config))?;
    Ok((out, config.output))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, mode)) => {
            if mode == OutputMode::Json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable report"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.exit)
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
