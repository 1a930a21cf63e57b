use std::process::ExitCode;

use biextctl::{run, Command, Format, RunConfig, EXIT_INPUT};
use clap::Parser;

/// Weil pairings, reciprocity laws and biextensions of curves and complex tori.
#[derive(Debug, Parser)]
#[command(name = "biextctl", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Input JSON: a file path, or the JSON text itself.
    #[arg(long, global = true)]
    input: Option<String>,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Override the tolerance of analytic comparisons.
    #[arg(long, global = true, allow_hyphen_values = true)]
    tolerance: Option<f64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT as u8 } else { 0 });
        }
    };
    let cfg = RunConfig {
        command: cli.command,
        input: cli.input,
        seed: cli.seed,
        tolerance: cli.tolerance,
        format: cli.format,
    };
    match run(&cfg) {
        Ok(report) => {
            print!("{}", report.render(cfg.format));
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("biextctl: {e}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
