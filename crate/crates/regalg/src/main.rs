use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use regalg::commands;
use regalg::verify::{self, VerifyConfig};
use regalg::{render, DrcSelection, Family, Format, Report, Suite};
use regalg_core::DrcKind;

#[derive(Parser)]
#[command(
    name = "regalg",
    version,
    about = "Regular upper-triangular subalgebras of sl(n)"
)]
struct Cli {
    /// Seed for the generic-rank instantiations.
    #[arg(long, global = true, env = "REGALG_SEED", default_value_t = 0)]
    seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Largest n for the exhaustive oracles.
    #[arg(long, global = true, default_value_t = 5)]
    n_max_oracle: usize,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct DrcArgs {
    /// Number of removed positions (drc family).
    #[arg(long)]
    k: Option<usize>,

    /// Restrict the drc family to one kind: D, R or C.
    #[arg(long, value_parser = parse_kind)]
    kind: Option<DrcKind>,

    /// Restrict the drc family to one index.
    #[arg(long)]
    index: Option<usize>,
}

impl DrcArgs {
    fn selection(&self) -> DrcSelection {
        DrcSelection {
            k: self.k,
            kind: self.kind,
            index: self.index,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the members of a family.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        family: Family,
        #[command(flatten)]
        drc: DrcArgs,
    },
    /// Print the invariant signature of a subalgebra.
    Invariants { descriptor: String },
    /// Decide whether two subalgebras are conjugate.
    Decide { a: String, b: String },
    /// Partition a family, or a list of descriptors, into conjugacy classes.
    Classify {
        #[arg(long, requires = "family")]
        n: Option<usize>,
        #[arg(long, value_enum, requires = "n", conflicts_with = "descriptors")]
        family: Option<Family>,
        #[command(flatten)]
        drc: DrcArgs,
        descriptors: Vec<String>,
    },
    /// Run the verification suites.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long)]
        n: usize,
        /// Only check this k in the drc suite.
        #[arg(long)]
        k: Option<usize>,
    },
}

fn parse_kind(s: &str) -> Result<DrcKind, String> {
    DrcKind::from_name(s).ok_or_else(|| format!("unknown kind `{s}`, expected D, R or C"))
}

fn emit<R: Report>(cli: &Cli, report: &R) -> anyhow::Result<()> {
    let text = render(report, cli.format)?;
    match &cli.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    match &cli.command {
        Command::Enumerate { n, family, drc } => {
            emit(cli, &commands::enumerate(*n, *family, drc.selection())?)?
        }
        Command::Invariants { descriptor } => {
            emit(cli, &commands::invariants(descriptor, cli.seed)?)?
        }
        Command::Decide { a, b } => emit(cli, &commands::decide(a, b, cli.seed)?)?,
        Command::Classify {
            n,
            family,
            drc,
            descriptors,
        } => {
            let report = match (n, family) {
                (Some(n), Some(family)) => {
                    commands::classify_family(*n, *family, drc.selection(), cli.seed)?
                }
                _ => commands::classify_descriptors(descriptors, cli.seed)?,
            };
            emit(cli, &report)?;
        }
        Command::Verify { suite, n, k } => {
            let cfg = VerifyConfig {
                n: *n,
                seed: cli.seed,
                n_max_oracle: cli.n_max_oracle,
                k: *k,
            };
            let report = verify::verify(*suite, cfg)?;
            emit(cli, &report)?;
            return Ok(report.success());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
