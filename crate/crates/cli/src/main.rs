//! `chartab`: exact character-table workbench.

mod blocks_cmd;
mod group_cmd;
mod output;
mod suzuki_cmd;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};

use output::Report;

#[derive(Parser, Debug)]
#[command(name = "chartab", version, about = "Exact character-table workbench")]
struct Cli {
    /// Write `report.txt`, `summary.json` and per-candidate files here.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Worker threads for the parallel enumerations (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    /// Print only the JSON summary on stdout.
    #[arg(long, global = true)]
    summary_only: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check both orthogonality relations and the degree identity of a table.
    Validate {
        #[arg(value_name = "TABLE", required_unless_present = "config")]
        table: Option<PathBuf>,
        #[arg(long, value_name = "FILE", conflicts_with = "table")]
        config: Option<PathBuf>,
    },
    /// Structure constant `a_xyz` of a table, with the character sum.
    Structconst {
        #[arg(long, value_name = "FILE")]
        config: PathBuf,
        x: String,
        y: String,
        z: String,
    },
    /// Special-class elimination from a scenario configuration.
    Suzuki {
        #[arg(long, value_name = "FILE")]
        config: PathBuf,
        /// Override the `order_ratio_bound` of the configuration.
        #[arg(long, value_name = "N")]
        order_ratio_bound: Option<i64>,
    },
    /// Principal-block column search from an instance document.
    Blocksearch {
        #[arg(long, value_name = "FILE")]
        config: PathBuf,
        /// Skip the block-theoretic filters; every candidate stays pending.
        #[arg(long)]
        no_filters: bool,
    },
    /// Permutation group tools on a generator file.
    Permgroup {
        #[arg(long, value_name = "FILE")]
        config: PathBuf,
        /// Abort closure beyond this many elements.
        #[arg(long, value_name = "N", default_value_t = chartab::permgroup::DEFAULT_CAP)]
        cap: usize,
        #[command(subcommand)]
        action: group_cmd::GroupAction,
    },
    /// Number of solutions of `x^m = 1`, from a table or from generators.
    Frobenius {
        #[arg(long, value_name = "FILE")]
        config: PathBuf,
        m: u64,
        /// Treat the configuration as a generator file rather than a table.
        #[arg(long)]
        generators: bool,
    },
}

/// Input problems exit with 2; an honest outcome that does not close the
/// argument (no contradiction, count mismatch) exits with 1.
fn exit_code_for(err: &anyhow::Error) -> u8 {
    use chartab::Error as E;
    match err.downcast_ref::<chartab::Error>() {
        Some(
            E::Parse { .. }
            | E::Io { .. }
            | E::Structure(_)
            | E::UnknownLabel(_)
            | E::DimensionMismatch(_)
            | E::InvalidPermutation(_)
            | E::ValueOutsideRing(_),
        ) => 2,
        Some(_) => 1,
        None => 2,
    }
}

fn run(cli: Cli) -> anyhow::Result<(Report, u8)> {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .context("configuring the worker pool")?;
    }
    match cli.command {
        Command::Validate { table, config } => {
            let path = table.or(config).expect("clap enforces one of them");
            group_cmd::validate(&path)
        }
        Command::Structconst { config, x, y, z } => group_cmd::structconst(&config, [&x, &y, &z]),
        Command::Suzuki {
            config,
            order_ratio_bound,
        } => suzuki_cmd::run(&config, order_ratio_bound),
        Command::Blocksearch { config, no_filters } => blocks_cmd::run(&config, !no_filters),
        Command::Permgroup { config, cap, action } => group_cmd::permgroup(&config, cap, action),
        Command::Frobenius { config, m, generators } => group_cmd::frobenius(&config, m, generators),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    let summary_only = cli.summary_only;
    match run(cli).and_then(|(report, code)| {
        report.emit(out.as_deref(), summary_only)?;
        Ok(code)
    }) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {:#}", err);
            ExitCode::from(exit_code_for(&err))
        }
    }
}
