//! `recipchow`: command-line front end.
//!
//! Exit status is 0 on success, 1 for unusable input (parse or
//! precondition failures) and 2 when an internal identity check fails.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use recipchow::Error;

#[derive(Parser, Debug)]
#[command(name = "recipchow", version, about = "Chow forms and entropic discriminants of reciprocal linear spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Vars {
    /// Plücker coordinates of the orthogonal complement of M.
    Gamma,
    /// Plücker coordinates of M itself.
    Beta,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Plücker coordinates of a linear space.
    Pluecker {
        #[arg(long)]
        input: PathBuf,
    },
    /// Bases, circuits and the broken-circuit complex.
    Matroid {
        #[arg(long)]
        input: PathBuf,
    },
    /// The symmetric matrix representation and its determinant.
    Chow {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Vars::Gamma)]
        vars: Vars,
        /// Multiply the determinant by the product of the Plücker coordinates.
        #[arg(long)]
        cleared: bool,
    },
    /// Spanning-forest expansion for the uniform matroid.
    Expand {
        /// Space with nonzero Plücker coordinates; omit for symbolic α.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
    },
    /// The Bi-Chow form, optionally specialized at L and M.
    Bichow {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        input2: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
    },
    /// The hypersurface L ⋆ M, or its symbolic form.
    Hadamard {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        input2: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        /// Seed for the membership self-check.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Trace form, entropic discriminant and sum-of-squares certificate.
    Entropic {
        #[arg(long)]
        input: PathBuf,
        /// Relative residual accepted in floating mode.
        #[arg(long, default_value_t = recipchow::entropic::DEFAULT_TOLERANCE)]
        tolerance: f64,
        /// Skip the exact search and certify in floating point.
        #[arg(long)]
        force_floating: bool,
        /// Omit the certificate.
        #[arg(long)]
        no_sos: bool,
    },
    /// Tree sum against the Sylvester resultant of the fiber forms.
    Resultant {
        /// The 2×n matrix a.
        #[arg(long)]
        input: PathBuf,
        /// The 2×n matrix c.
        #[arg(long)]
        input2: PathBuf,
    },
    /// Run bundled self-checks.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn configure_threads() -> recipchow::Result<()> {
    let Ok(raw) = std::env::var("RECIPCHOW_THREADS") else { return Ok(()) };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Error::Parse(format!("RECIPCHOW_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))
}

fn run(cli: Cli) -> recipchow::Result<commands::Report> {
    configure_threads()?;
    use commands as c;
    match cli.command {
        Command::Pluecker { input } => c::pluecker(&input),
        Command::Matroid { input } => c::matroid(&input),
        Command::Chow { input, vars, cleared } => c::chow(&input, vars, cleared),
        Command::Expand { input, n, d } => c::expand(input.as_deref(), n, d),
        Command::Bichow { input, input2, n, d } => c::bichow(input.as_deref(), input2.as_deref(), n, d),
        Command::Hadamard { input, input2, n, d, seed } => c::hadamard(input.as_deref(), input2.as_deref(), n, d, seed),
        Command::Entropic { input, tolerance, force_floating, no_sos } => {
            c::entropic(&input, tolerance, force_floating, no_sos)
        }
        Command::Resultant { input, input2 } => c::resultant(&input, &input2),
        Command::Verify { suite, seed } => c::verify(&suite, seed),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let format = cli.format;
    match run(cli) {
        Ok(report) => {
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report.json).expect("serializable")),
                Format::Text => print!("{}", report.text),
            }
            ExitCode::from(report.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_internal() { 2 } else { 1 })
        }
    }
}
