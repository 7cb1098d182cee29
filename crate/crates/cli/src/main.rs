mod commands;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use eaqecc::concat::Procedure;
use eaqecc::Degeneracy;

use commands::PolyRegistry;
use output::Format;

#[derive(Parser)]
#[command(
    name = "eaqecc",
    version,
    about = "Exact parameter and bound analysis for entanglement-assisted quantum codes"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rates and every applicable bound for one code.
    Check {
        /// `[[n,k,d;c]]` for an EA code or `[n,k,d]_q` for a classical code.
        code: String,
        #[arg(long, conflicts_with = "nondegenerate")]
        degenerate: bool,
        #[arg(long)]
        nondegenerate: bool,
    },
    /// Concatenate an outer code with an inner code.
    Concat {
        /// Code notation or a constant family name (C1, C2, C4).
        outer: String,
        inner: String,
        /// Report both orders and the ebit difference.
        #[arg(long, conflicts_with = "force")]
        both_orders: bool,
        /// Force procedure 1 (divisible) or 2 (non-divisible).
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        force: Option<u8>,
    },
    /// Pseudothreshold of a component polynomial or of a composition.
    Pseudothreshold {
        #[command(flatten)]
        polys: PolyArgs,
        /// Bisection tolerance.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Also write p, p_L samples on [0, 0.5] to this CSV file.
        #[arg(long)]
        curve: Option<PathBuf>,
    },
    /// EA Hamming check along a family concatenated with a fixed code.
    ScanEahb {
        #[arg(long)]
        outer_family: String,
        /// Code notation or constant family name.
        #[arg(long)]
        inner: String,
        #[arg(long)]
        n_min: Option<u64>,
        #[arg(long)]
        n_max: Option<u64>,
        /// Put the fixed code outside and the family inside.
        #[arg(long)]
        reversed: bool,
    },
    /// Members of a named family.
    Family {
        name: String,
        /// Indices to list; defaults to the first few admissible ones.
        #[arg(long = "n")]
        n: Vec<u64>,
    },
    /// Rates of the five reference concatenated codes.
    Table1,
    /// Logical error probability sampled over a range of p.
    Curve {
        #[command(flatten)]
        polys: PolyArgs,
        #[arg(long, default_value_t = 0.0)]
        p_min: f64,
        #[arg(long, default_value_t = 0.5)]
        p_max: f64,
        #[arg(long, default_value_t = 101)]
        steps: usize,
    },
}

#[derive(clap::Args)]
struct PolyArgs {
    /// five13, four131, rep3132, rep3132_enumerated or a --poly-file name.
    #[arg(long)]
    outer: String,
    #[arg(long)]
    inner: Option<String>,
    /// Extra polynomial as NAME=PATH; the file holds a JSON coefficient
    /// array or {"label": ..., "coefficients": [...]}.
    #[arg(long = "poly-file", value_name = "NAME=PATH")]
    poly_files: Vec<String>,
}

fn run(cli: Cli) -> commands::Outcome {
    match cli.command {
        Command::Check {
            code,
            degenerate,
            nondegenerate,
        } => {
            let degeneracy = match (degenerate, nondegenerate) {
                (true, _) => Some(Degeneracy::Degenerate),
                (_, true) => Some(Degeneracy::Nondegenerate),
                _ => None,
            };
            commands::check(&code, degeneracy)
        }
        Command::Concat {
            outer,
            inner,
            both_orders,
            force,
        } => {
            let force = force.map(|f| {
                if f == 1 {
                    Procedure::Divisible
                } else {
                    Procedure::NonDivisible
                }
            });
            commands::concat_cmd(&outer, &inner, both_orders, force)
        }
        Command::Pseudothreshold { polys, tol, curve } => {
            let registry = PolyRegistry::load(&polys.poly_files)?;
            commands::pseudothreshold_cmd(&registry, &polys.outer, polys.inner.as_deref(), tol, curve.as_deref())
        }
        Command::ScanEahb {
            outer_family,
            inner,
            n_min,
            n_max,
            reversed,
        } => commands::scan_cmd(&outer_family, &inner, n_min, n_max, reversed),
        Command::Family { name, n } => commands::family_cmd(&name, &n),
        Command::Table1 => commands::table1(),
        Command::Curve {
            polys,
            p_min,
            p_max,
            steps,
        } => {
            let registry = PolyRegistry::load(&polys.poly_files)?;
            commands::curve_cmd(&registry, &polys.outer, polys.inner.as_deref(), p_min, p_max, steps)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    match run(cli) {
        Ok(rendered) => {
            let result = rendered.emit(format, &mut stdout.lock(), &mut stderr.lock());
            match result {
                Ok(()) => ExitCode::SUCCESS,
                // closed pipe and similar
                Err(_) => ExitCode::from(1),
            }
        }
        Err(failure) => {
            let _ = writeln!(stderr.lock(), "{}", failure.to_json());
            ExitCode::from(1)
        }
    }
}
