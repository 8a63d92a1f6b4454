use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anosov_cli::census::{run_census, write_csv};
use anosov_cli::commands::{bratteli_diagram, bratteli_report, factor_report, jp_report, to_dot};
use anosov_cli::report::{compare_report, invariant_report};
use anosov_cli::{max_steps_from_env, to_json, CliError};
use anosov_core::matrix::{charpoly_string, IntMatrix};
use clap::{Parser, Subcommand};

/// Exact conjugacy invariants of hyperbolic integer matrices.
///
/// Matrices are written `a,b;c,d` or `[[a,b],[c,d]]`.
#[derive(Parser)]
#[command(name = "anosov", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full invariant report as JSON.
    Invariants {
        matrix: String,
        /// Add floating-point approximations.
        #[arg(long)]
        approx: bool,
        /// Report on `A^k` instead of `A`.
        #[arg(long, default_value_t = 1)]
        power: u32,
    },
    /// Reports for two matrices, conjugacy and stable isomorphism verdicts.
    Compare { left: String, right: String },
    /// `det(tI - A)`.
    Alexander { matrix: String },
    /// Jacobi–Perron expansion of the Perron–Frobenius direction.
    Jp {
        matrix: String,
        /// Overrides INVARIANT_MAX_STEPS.
        #[arg(long)]
        max_steps: Option<usize>,
    },
    /// Product of elementary matrices equal to a non-negative representative.
    Factor {
        matrix: String,
        #[arg(long, default_value_t = 12)]
        max_depth: usize,
        /// Entry bound of the search for a non-negative conjugate.
        #[arg(long, default_value_t = 10)]
        search_bound: u64,
    },
    /// Stationary (or Jacobi–Perron) Bratteli diagram.
    Bratteli {
        matrix: String,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Emit DOT instead of JSON.
        #[arg(long)]
        dot: bool,
        /// Levels from the Jacobi–Perron digits instead of `A` itself.
        #[arg(long)]
        jp: bool,
        #[arg(long, default_value_t = 10)]
        search_bound: u64,
    },
    /// Non-negative hyperbolic matrices in SL_2(Z) bucketed by charpoly.
    Census {
        #[arg(long)]
        entry_bound: i64,
        /// CSV destination for the per-matrix rows.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        parallel: usize,
    },
}

fn parse(text: &str) -> Result<IntMatrix, CliError> {
    IntMatrix::parse(text).map_err(CliError::from)
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Invariants {
            matrix,
            approx,
            power,
        } => {
            let a = parse(&matrix)?;
            Ok(to_json(&invariant_report(
                &a,
                power,
                max_steps_from_env()?,
                approx,
            )?))
        }
        Command::Compare { left, right } => {
            let (a, b) = (parse(&left)?, parse(&right)?);
            Ok(to_json(&compare_report(&a, &b, max_steps_from_env()?)?))
        }
        Command::Alexander { matrix } => Ok(charpoly_string(&parse(&matrix)?)),
        Command::Jp { matrix, max_steps } => {
            let a = parse(&matrix)?;
            let steps = match max_steps {
                Some(s) => s,
                None => max_steps_from_env()?,
            };
            Ok(to_json(&jp_report(&a, steps)?))
        }
        Command::Factor {
            matrix,
            max_depth,
            search_bound,
        } => Ok(to_json(&factor_report(
            &parse(&matrix)?,
            max_depth,
            search_bound,
        )?)),
        Command::Bratteli {
            matrix,
            depth,
            dot,
            jp,
            search_bound,
        } => {
            let a = parse(&matrix)?;
            let (d, conjugator) =
                bratteli_diagram(&a, depth, jp, max_steps_from_env()?, search_bound)?;
            if dot {
                Ok(to_dot(&d).trim_end().to_string())
            } else {
                Ok(to_json(&bratteli_report(&a, &d, jp, conjugator)?))
            }
        }
        Command::Census {
            entry_bound,
            out,
            parallel,
        } => {
            let (rows, summary) = run_census(entry_bound, parallel)?;
            if let Some(path) = out {
                let file = File::create(&path)
                    .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                write_csv(&rows, BufWriter::new(file))?;
            }
            Ok(to_json(&summary))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            // a closed pipe is not an error for a report printer
            let _ = writeln!(std::io::stdout().lock(), "{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            if let CliError::Core(_) | CliError::Overflow(_) = e {
                let _ = writeln!(std::io::stdout().lock(), "{}", e.to_json());
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
