use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use combs_cli::{render, run_files, Format, Options, Strategy};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "combs", version, about = "Decide equivalence of combs, optics and polycombs")]
struct Args {
    /// Theory file: backend, objects and generators.
    theory: String,
    /// Program file: definitions and queries.
    program: String,
    /// Default strategy: auto, name, lens, enumerate, positive, factorization, zigzag.
    #[arg(long, default_value = "auto", value_parser = parse_strategy)]
    strategy: Strategy,
    /// Word-length bound for enumerating probes.
    #[arg(long)]
    bound: Option<usize>,
    /// Numerical tolerance for floating-point backends.
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Add wall-clock timings to reports.
    #[arg(long)]
    timing: bool,
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    Strategy::parse(s).ok_or_else(|| format!("unknown strategy `{s}`"))
}

fn main() -> ExitCode {
    let args = Args::parse();
    let opts = Options { strategy: args.strategy, bound: args.bound, tolerance: args.tolerance, timing: args.timing };
    let format = match args.format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
    };
    match run_files(&args.theory, &args.program, &opts) {
        Ok(outcome) => {
            print!("{}", render(&outcome, format));
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
