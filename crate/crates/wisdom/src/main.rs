use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use wisdom::commands;
use wisdom::{CliError, Instance};
use wisdom_core::stochastics::Distribution;

/// Decide, construct and validate social-power allocations for the wisdom
/// of crowds.
///
/// Exit codes: 0 success, 1 input error, 2 gate or assertion failure.
#[derive(Debug, Parser)]
#[command(name = "wisdom", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Membership, consistency grade, collective and optimal variance of x.
    Analyze {
        instance: PathBuf,
        /// Absolute slack on every comparison.
        #[arg(long, default_value_t = wisdom_core::DEFAULT_TOL)]
        tol: f64,
    },
    /// Orderings whose whole hypertriangle improves the wisdom.
    Mpg {
        instance: PathBuf,
        /// Cross-check against brute-force enumeration (n <= 9).
        #[arg(long)]
        oracle: bool,
    },
    /// Label a barycentric grid of the 3-simplex and export it as CSV.
    Region {
        instance: PathBuf,
        #[arg(long, default_value_t = 200)]
        resolution: usize,
        #[arg(long)]
        out: PathBuf,
        /// Also count midpoint convexity violations (quadratic cost).
        #[arg(long)]
        check_convexity: bool,
    },
    /// French-DeGroot pipeline: W, social power, centrality and corollaries.
    Fd {
        instance: PathBuf,
        /// Simulate this many steps from estimates drawn with the instance seed.
        #[arg(long)]
        steps: Option<usize>,
        /// Report the column averages of W^K.
        #[arg(long, value_name = "K")]
        power: Option<u64>,
    },
    /// Monte Carlo check of the collective variance of x.
    Mc {
        instance: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        trials: usize,
        #[arg(long, value_enum, default_value_t = Dist::Gaussian)]
        dist: Dist,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Dist {
    Gaussian,
    Uniform,
}

impl From<Dist> for Distribution {
    fn from(d: Dist) -> Self {
        match d {
            Dist::Gaussian => Distribution::Gaussian,
            Dist::Uniform => Distribution::UniformMatched,
        }
    }
}

fn emit<T: Serialize>(report: &T, passed: bool) -> ExitCode {
    // A closed pipe (`| head`) is not an error worth a panic.
    let _ = writeln!(
        std::io::stdout().lock(),
        "{}",
        serde_json::to_string_pretty(report).expect("reports serialize")
    );
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    Ok(match cli.command {
        Command::Analyze { instance, tol } => {
            emit(&commands::analyze(&Instance::from_path(&instance)?, tol)?, true)
        }
        Command::Mpg { instance, oracle } => {
            let r = commands::mpg(&Instance::from_path(&instance)?, oracle)?;
            let passed = r.passed();
            if !passed {
                eprintln!("error: MPG and the enumeration oracle disagree");
            }
            emit(&r, passed)
        }
        Command::Region {
            instance,
            resolution,
            out,
            check_convexity,
        } => {
            let r = commands::region(
                &Instance::from_path(&instance)?,
                resolution,
                &out,
                check_convexity,
            )?;
            for w in &r.warnings {
                eprintln!("warning: {w}");
            }
            let passed = r.passed();
            emit(&r, passed)
        }
        Command::Fd {
            instance,
            steps,
            power,
        } => emit(
            &commands::fd(&Instance::from_path(&instance)?, steps, power)?,
            true,
        ),
        Command::Mc {
            instance,
            trials,
            dist,
        } => {
            let r = commands::mc(&Instance::from_path(&instance)?, trials, dist.into())?;
            let passed = r.passed;
            emit(&r, passed)
        }
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
