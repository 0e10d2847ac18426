use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use dmchain::acceptance;
use dmchain::studio::{
    figure_recipe, recipe_names, run_oracle, run_sweep, sweep_to_file, SweepConfig,
};
use dmchain::{Error, Result};

/// Entanglement and teleportation sweeps for two-qubit DM-coupled Heisenberg chains.
#[derive(Parser)]
#[command(name = "dmchain", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a sweep described by a TOML config. CSV goes to stdout unless --out is given.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Write CSV here plus a `.meta.toml` sidecar.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a named figure recipe.
    Figure {
        #[arg(required_unless_present = "list")]
        name: Option<String>,
        #[arg(long, required_unless_present_any = ["list", "print_config"])]
        out: Option<PathBuf>,
        /// Print the recipe as a config file instead of running it.
        #[arg(long)]
        print_config: bool,
        /// List recipe names.
        #[arg(long, conflicts_with_all = ["name", "out", "print_config"])]
        list: bool,
    },
    /// Run the acceptance criteria.
    Check,
    /// Compare the spectral propagator with RK4 integration at every grid point.
    Oracle {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
}

fn run(cmd: Command) -> Result<ExitCode> {
    match cmd {
        Command::Sweep { config, out } => {
            let cfg = SweepConfig::from_path(&config)?;
            match out {
                Some(path) => {
                    let meta = sweep_to_file(&cfg, &path, None)?;
                    eprintln!("wrote {} rows to {}", meta.rows, path.display());
                }
                None => {
                    run_sweep(&cfg, BufWriter::new(io::stdout().lock()))?;
                }
            }
        }
        Command::Figure { list: true, .. } => {
            for name in recipe_names() {
                println!("{name}");
            }
        }
        Command::Figure {
            name,
            out,
            print_config,
            ..
        } => {
            let recipe = figure_recipe(name.as_deref().unwrap_or_default())?;
            if print_config {
                for a in &recipe.assumptions {
                    println!("# assumption: {a}");
                }
                print!("{}", recipe.config.to_toml()?);
            } else if let Some(path) = out {
                let meta = sweep_to_file(&recipe.config, &path, Some(&recipe))?;
                eprintln!(
                    "{}: wrote {} rows to {}",
                    recipe.name,
                    meta.rows,
                    path.display()
                );
            }
        }
        Command::Check => {
            let reports = acceptance::run_all();
            let mut stdout = io::stdout().lock();
            for r in &reports {
                writeln!(stdout, "{r}")?;
            }
            let failed = reports.iter().filter(|r| !r.passed).count();
            writeln!(stdout, "{} passed, {failed} failed", reports.len() - failed)?;
            if failed > 0 {
                return Ok(ExitCode::from(2));
            }
        }
        Command::Oracle { config, dt, tol } => {
            if !(tol.is_finite() && tol > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "tol = {tol} must be positive"
                )));
            }
            let cfg = SweepConfig::from_path(&config)?;
            let report = run_oracle(&cfg, dt)?;
            println!("points: {}", report.points);
            println!("max entrywise difference: {:e}", report.max_diff);
            if let Some(p) = report.worst {
                println!("worst point: {p:?}");
            }
            if report.max_diff > tol {
                println!("FAIL: exceeds tolerance {tol:e}");
                return Ok(ExitCode::from(2));
            }
            println!("PASS: within tolerance {tol:e}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(Error::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
