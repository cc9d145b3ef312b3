use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use hopfbench::Reflector;
use hopfbench_cli::*;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "hopfbench", version, about = "Schur multipliers, five-term sequences and central extensions of finite groups")]
#[command(after_help = "Exit codes: 0 ok, 1 internal failure, 2 invalid input or non-surjective extension, \
3 cap exceeded, 4 group not perfect.")]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Largest group order accepted from input files.
    #[arg(long, global = true, env = "HOPFBENCH_CAP_ORDER", default_value_t = DEFAULT_CAP_ORDER,
          value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
    cap_order: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ExtensionArgs {
    /// Homomorphism file of a surjection.
    extension: PathBuf,
    #[arg(long, value_enum, default_value = "abelianization")]
    reflector: ReflectorArg,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum ReflectorArg {
    Abelianization,
    Identity,
    Zero,
}

impl From<ReflectorArg> for Reflector {
    fn from(r: ReflectorArg) -> Self {
        match r {
            ReflectorArg::Abelianization => Reflector::Abelianization,
            ReflectorArg::Identity => Reflector::Identity,
            ReflectorArg::Zero => Reflector::Zero,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Second homology of a group.
    H2 {
        /// Group file; optional with `--method fp`, where it is used as a cross-check.
        group: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "bar")]
        method: Method,
        /// Presentation file for `--method fp`.
        #[arg(long)]
        presentation: Option<PathBuf>,
        /// Relator lattice file (matrix text format) for `--method fp`.
        #[arg(long)]
        lattice: Option<PathBuf>,
    },
    /// Five-term exact sequence of a surjection.
    FiveTerm {
        /// Homomorphism file of a surjection.
        extension: PathBuf,
    },
    /// Centralisation, computed directly and through the kernel pair.
    Centralise(ExtensionArgs),
    /// Trivialisation and the comparison from the centralisation.
    Trivialise(ExtensionArgs),
    /// Trivial, central-not-trivial or non-central.
    Classify(ExtensionArgs),
    /// A stem extension with kernel the Schur multiplier.
    Stem {
        group: PathBuf,
        /// Also print the defining cocycle.
        #[arg(long)]
        cocycle: bool,
    },
    /// Universal central extension of a perfect group.
    Uce {
        group: PathBuf,
        /// Allow groups beyond the fast tier.
        #[arg(long)]
        slow: bool,
        #[arg(long)]
        cocycle: bool,
    },
}

fn emit<T: Serialize + Display>(report: T, json: bool) {
    if json {
        println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
    } else {
        print!("{report}");
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let cap = cli.cap_order;
    let json = cli.json;
    match cli.command {
        Command::H2 { group, method, presentation, lattice } => {
            let g = group.map(|p| load_group(&p, cap)).transpose()?;
            let module = match (presentation, lattice) {
                (Some(p), Some(l)) => Some(load_module(&p, &l)?),
                (None, None) => None,
                _ => return Err(CliError::Usage("--presentation and --lattice go together".into())),
            };
            emit(cmd_h2(g.as_ref(), method, module.as_ref())?, json);
        }
        Command::FiveTerm { extension } => emit(cmd_five_term(&load_extension(&extension, cap)?)?, json),
        Command::Centralise(a) => emit(cmd_centralise(&load_extension(&a.extension, cap)?, a.reflector.into())?, json),
        Command::Trivialise(a) => emit(cmd_trivialise(&load_extension(&a.extension, cap)?, a.reflector.into())?, json),
        Command::Classify(a) => emit(cmd_classify(&load_extension(&a.extension, cap)?, a.reflector.into())?, json),
        Command::Stem { group, cocycle } => emit(cmd_stem(&load_group(&group, cap)?, cocycle)?, json),
        Command::Uce { group, slow, cocycle } => {
            let g = load_group(&group, cap)?;
            let start = Instant::now();
            if slow {
                eprintln!("warning: slow tier enabled; this may take several minutes");
            }
            let report = cmd_uce(&g, slow, cocycle)?;
            if slow {
                eprintln!("finished in {:.1?}", start.elapsed());
            }
            emit(report, json);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
