mod commands;
mod error;
mod formats;
mod layout;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use symtrig2d::analysis::Model;

use crate::error::{CliError, CliResult};
use crate::formats::SpectrumFile;
use crate::layout::GridArgs;

/// Symmetric and antisymmetric trigonometric transforms on triangular grids.
#[derive(Parser, Debug)]
#[command(name = "symtrig2d", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample a model function on a grid and write the samples as CSV.
    Sample {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value = "gaussian")]
        model: Model,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compute the discrete transform of a sample CSV and write the spectrum as JSON.
    Transform {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Evaluate a JSON spectrum back on its grid and write the samples as CSV.
    Synthesize {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Evaluate the interpolant of a sample CSV on an R×R raster restricted to x ≥ y.
    Interpolate {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1000)]
        resolution: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Tabulate L² interpolation errors of a model for several N.
    ErrorTable {
        #[arg(long, default_value = "gaussian")]
        model: Model,
        /// Grid sizes: `4..12`, `4,6,8` or a single value.
        #[arg(long, default_value = "4..12")]
        ns: String,
        #[arg(long, default_value_t = 1000)]
        resolution: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the built-in consistency checks and print a pass/fail report.
    Verify {
        /// Check a single grid size instead of 2..=8.
        #[arg(long)]
        n: Option<usize>,
        /// Quadrature resolution of the continuous orthogonality check.
        #[arg(long, default_value_t = 400)]
        resolution: usize,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var("SYMTRIG2D_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Usage(format!("SYMTRIG2D_THREADS must be a positive integer, got '{raw}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn run(cli: Cli) -> CliResult<()> {
    configure_threads()?;
    match cli.command {
        Command::Sample { grid, model, output } => {
            let rows = commands::sample(&grid.layout()?, model);
            commands::with_output(output.as_ref(), |w| commands::emit_samples(&rows, w))
        }
        Command::Transform { grid, input, output } => {
            let layout = grid.layout()?;
            let rows = commands::read_checked_samples(&layout, commands::open_input(&input)?)?;
            let file = commands::transform(&layout, &rows)?;
            commands::with_output(output.as_ref(), |w| {
                serde_json::to_writer_pretty(&mut *w, &file)?;
                writeln!(w)?;
                Ok(())
            })
        }
        Command::Synthesize { input, output } => {
            let file: SpectrumFile = serde_json::from_reader(commands::open_input(&input)?)
                .map_err(|e| CliError::Format(e.to_string()))?;
            let rows = commands::synthesize(&file)?;
            commands::with_output(output.as_ref(), |w| commands::emit_samples(&rows, w))
        }
        Command::Interpolate {
            grid,
            input,
            resolution,
            output,
        } => {
            let layout = grid.layout()?;
            let rows = commands::read_checked_samples(&layout, commands::open_input(&input)?)?;
            let raster = commands::interpolate(&layout, &rows, resolution)?;
            commands::with_output(output.as_ref(), |w| commands::emit_raster(&raster, w))
        }
        Command::ErrorTable {
            model,
            ns,
            resolution,
            output,
        } => {
            let ns = commands::parse_ns(&ns).map_err(CliError::Usage)?;
            commands::with_output(output.as_ref(), |w| commands::table(model, &ns, resolution, w))
        }
        Command::Verify {
            n,
            resolution,
            output,
            inject_fault,
        } => {
            let ns = match n {
                Some(0) => return Err(CliError::Usage("N must be at least 1".into())),
                Some(n) => vec![n],
                None => (2..=8).collect(),
            };
            let cfg = verify::VerifyConfig {
                ns,
                resolution,
                inject_fault,
            };
            let checks = verify::run(&cfg)?;
            let mut failed = 0;
            commands::with_output(output.as_ref(), |w| {
                failed = verify::report(&checks, w)?;
                Ok(())
            })?;
            if failed > 0 {
                Err(CliError::ChecksFailed(failed))
            } else {
                Ok(())
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("symtrig2d: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
