//! `combhom`: invariants of named spaces, adjunction and van Kampen checks, resolution sweeps.
//!
//! Exit status: 0 success, 1 input error, 2 inconclusive, 3 check failure.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use combhom::nerves::Verdict;

#[derive(Parser)]
#[command(name = "combhom", version, about = "Combinatorial homotopy of simple spaces at desk scale")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
pub struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Length bound for hom enumeration.
    #[arg(long, global = true, default_value_t = 4)]
    pub max_len: usize,
    /// Coset budget for Todd-Coxeter enumeration.
    #[arg(long, global = true, default_value_t = 100_000)]
    pub budget: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Components, vertex group presentations and abelian invariants; hom table when directed.
    Invariants {
        /// A catalog spec such as `circle:5` or `wedge(circle:3,circle:3)`.
        spec: Option<String>,
        /// A JSON file holding a truncated set or a space instead of a spec.
        #[arg(long, conflicts_with = "spec")]
        file: Option<PathBuf>,
        /// Base vertex of the vertex group; every component is reported when absent.
        #[arg(long)]
        base: Option<usize>,
    },
    /// Counit check for a groupoid or category table.
    Adjunction {
        file: PathBuf,
        /// Treat the table as a category even when every arrow is invertible.
        #[arg(long)]
        directed: bool,
    },
    /// Compares the pushout of a span with the pushout of presentations.
    Vankampen { file: PathBuf },
    /// Invariants of a point cloud or image over a list of resolutions.
    Sweep {
        file: PathBuf,
        /// Comma-separated resolutions, or an inclusive integer range `a..b`.
        #[arg(long, default_value = "1")]
        eps: String,
        #[arg(long, default_value = "linf")]
        metric: String,
        /// Image pixels at or above this value become points.
        #[arg(long)]
        threshold: Option<u32>,
        /// `csv` or `pgm`; taken from the extension when absent.
        #[arg(long)]
        input_format: Option<String>,
        /// Also report directed loop statistics for this step relation: `coordinatewise` or `intensity`.
        #[arg(long)]
        step: Option<String>,
        #[arg(long)]
        base: Option<usize>,
    },
    /// Delay and strong normal forms of a path given by its vertices.
    Normalize {
        spec: String,
        /// Comma-separated vertices.
        #[arg(long)]
        path: String,
    },
    /// Brute-force path classes against the presentation side, for vertex pairs of a space.
    Oracle {
        spec: String,
        /// Check this many random vertex pairs instead of all of them.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Lists the catalog, or prints the truncated set of one spec.
    Catalog { spec: Option<String> },
}

/// A rendered command result.
pub struct Output {
    pub json: serde_json::Value,
    pub text: String,
    pub verdict: Option<Verdict>,
}

fn run(cli: Cli) -> anyhow::Result<Output> {
    let c = &cli.common;
    match cli.command {
        Command::Invariants { spec, file, base } => commands::invariants(c, spec.as_deref(), file.as_deref(), base),
        Command::Adjunction { file, directed } => commands::adjunction(c, &file, directed),
        Command::Vankampen { file } => commands::vankampen(c, &file),
        Command::Sweep {
            file,
            eps,
            metric,
            threshold,
            input_format,
            step,
            base,
        } => commands::sweep(c, &file, &eps, &metric, threshold, input_format.as_deref(), step.as_deref(), base),
        Command::Normalize { spec, path } => commands::normalize(&spec, &path),
        Command::Oracle { spec, samples, seed } => commands::oracle(c, &spec, samples, seed),
        Command::Catalog { spec } => commands::catalog(spec.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (format, out) = (cli.common.format, cli.common.out.clone());
    let output = match run(cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    let mut rendered = match format {
        Format::Json => serde_json::to_string_pretty(&output.json).expect("reports serialize"),
        Format::Text => output.text,
    };
    if !rendered.ends_with('\n') {
        rendered.push('\n');
    }
    match out {
        Some(p) => {
            if let Err(e) = std::fs::write(&p, rendered) {
                eprintln!("error: {}: {e}", p.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{rendered}"),
    }
    match output.verdict {
        Some(Verdict::Fail) => ExitCode::from(3),
        Some(Verdict::Inconclusive) => ExitCode::from(2),
        _ => ExitCode::SUCCESS,
    }
}
