use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use protest_tools::commands::{run, Command, Context};
use protest_tools::config::Config;
use protest_tools::ToolResult;

/// Protest-image analysis pipelines: annotation consensus, pairwise
/// ranking, evaluation, candidate filtering, geo and text analytics.
#[derive(Debug, Parser)]
#[command(name = "protest", version)]
struct Cli {
    /// Seed for every randomized step [default: 0].
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Directory receiving outputs and `manifest.json`.
    #[arg(long, global = true, default_value = "out")]
    out_dir: PathBuf,
    /// TOML file with defaults for command flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

fn execute(cli: &Cli) -> ToolResult<()> {
    let config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    let ctx = Context { out_dir: cli.out_dir.clone(), seed: cli.seed, config };
    let manifest = run(&cli.command, &ctx)?;
    for output in &manifest.outputs {
        println!("{}", ctx.out_dir.join(&output.path).display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.report());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
