//! `homcal` — exact verification and derivation of twisted bracket
//! structures defined in TOML files.
//!
//! Exit codes: 0 = success / all laws hold; 1 = a verification failed
//! (a report with the failing law and a counterexample is printed);
//! 2 = the input could not be used (syntax error, semantic error,
//! unknown name, incompatible derivation target).

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use homcal_cli::catalog;
use homcal_cli::format::{
    derive_structure, parse_structure, print_structure, verify_structure, DeriveResult, Target,
};

#[derive(Parser)]
#[command(
    name = "homcal",
    version,
    about = "Exact verification of twisted bracket structures (Hom-Lie algebroids, bialgebroids, Courant algebroids)",
    after_help = "Exit codes: 0 success, 1 verification failure, 2 unusable input."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a structure file and check every law of its kind.
    Verify {
        /// Structure file (TOML).
        file: PathBuf,
        /// Largest monomial degree used for sampling function slots.
        #[arg(long, default_value_t = 3)]
        max_degree: u32,
        /// Also write the report as JSON to this path.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Print the report as JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Apply a construction to a structure file and write the result.
    Derive {
        /// Input structure file (TOML).
        file: PathBuf,
        /// Which construction to apply.
        target: TargetArg,
        /// Output path (defaults to stdout).
        #[arg(long, short = 'o')]
        out: Option<PathBuf>,
        /// Largest monomial degree used when verifying input and output.
        #[arg(long, default_value_t = 3)]
        max_degree: u32,
    },
    /// List or emit the built-in examples.
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// List the built-in example names.
    List,
    /// Print a built-in example as a structure file.
    Emit {
        /// Example name (see `catalog list`).
        name: String,
        /// Output path (defaults to stdout).
        #[arg(long, short = 'o')]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    /// Double of a bialgebroid (→ courant) or of a bialgebra (→ homlie).
    Double,
    /// Cotangent algebroid of a Poisson structure (→ algebroid).
    Cotangent,
    /// Two-term structure of a Courant algebroid (re-verifies its laws).
    TwoAlgebra,
    /// Swapped constituents of a bialgebroid (→ bialgebroid).
    Dual,
    /// Induced Poisson structure of a bialgebroid (→ poisson).
    InducedPoisson,
}

impl From<TargetArg> for Target {
    fn from(t: TargetArg) -> Target {
        match t {
            TargetArg::Double => Target::Double,
            TargetArg::Cotangent => Target::Cotangent,
            TargetArg::TwoAlgebra => Target::TwoAlgebra,
            TargetArg::Dual => Target::Dual,
            TargetArg::InducedPoisson => Target::InducedPoisson,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Writes to stdout, treating a closed pipe (e.g. `| head`) as success.
fn print_out(text: &str) -> Result<()> {
    match std::io::stdout().write_all(text.as_bytes()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => Err(e.into()),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Verify {
            file,
            max_degree,
            report,
            json,
        } => {
            let text = std::fs::read_to_string(&file)
                .with_context(|| format!("reading {}", file.display()))?;
            let structure =
                parse_structure(&text).with_context(|| format!("in {}", file.display()))?;
            let result = verify_structure(&structure, max_degree);
            if json {
                print_out(&format!("{}\n", serde_json::to_string_pretty(&result)?))?;
            } else {
                print_out(&result.render_text())?;
            }
            if let Some(path) = report {
                std::fs::write(&path, serde_json::to_string_pretty(&result)?)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(ExitCode::from(if result.passed() { 0 } else { 1 }))
        }
        Cmd::Derive {
            file,
            target,
            out,
            max_degree,
        } => {
            let text = std::fs::read_to_string(&file)
                .with_context(|| format!("reading {}", file.display()))?;
            let structure =
                parse_structure(&text).with_context(|| format!("in {}", file.display()))?;
            match derive_structure(&structure, target.into(), max_degree) {
                DeriveResult::Incompatible(msg) => Err(anyhow!(msg)),
                DeriveResult::InputFailed(report) => {
                    eprintln!("the input fails its own verification:");
                    eprint!("{}", report.render_text());
                    Ok(ExitCode::from(1))
                }
                DeriveResult::BuildFailed(msg) => {
                    eprintln!("the construction reported an error: {msg}");
                    Ok(ExitCode::from(1))
                }
                DeriveResult::Derived {
                    output,
                    verification,
                } => {
                    if !verification.passed() {
                        eprintln!("the derived structure fails verification:");
                        eprint!("{}", verification.render_text());
                        return Ok(ExitCode::from(1));
                    }
                    let rendered = print_structure(&output);
                    match out {
                        Some(path) => {
                            std::fs::write(&path, &rendered)
                                .with_context(|| format!("writing {}", path.display()))?;
                            eprintln!(
                                "wrote {} ({}; verified: {} checks passed)",
                                path.display(),
                                output.kind(),
                                verification.checks.len()
                            );
                        }
                        None => print_out(&rendered)?,
                    }
                    Ok(ExitCode::from(0))
                }
            }
        }
        Cmd::Catalog { cmd } => match cmd {
            CatalogCmd::List => {
                for (name, description) in catalog::entries() {
                    print_out(&format!("{name:18} {description}\n"))?;
                }
                Ok(ExitCode::from(0))
            }
            CatalogCmd::Emit { name, out } => {
                let structure = catalog::build(&name).ok_or_else(|| {
                    anyhow!(
                        "unknown example {:?}; available: {}",
                        name,
                        catalog::entries()
                            .iter()
                            .map(|(n, _)| *n)
                            .collect::<Vec<_>>()
                            .join(", ")
                    )
                })?;
                let rendered = print_structure(&structure);
                match out {
                    Some(path) => std::fs::write(&path, &rendered)
                        .with_context(|| format!("writing {}", path.display()))?,
                    None => print!("{rendered}"),
                }
                Ok(ExitCode::from(0))
            }
        },
    }
}
