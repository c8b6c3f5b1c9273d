mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use report::Format;

/// Rumin complex calculator for the Heisenberg group.
#[derive(Parser, Debug)]
#[command(name = "heiscalc", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Output format
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Write output to this path (a directory for `mobius`)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for random trials
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Random trials per check
    #[arg(long, global = true, default_value_t = 100)]
    trials: usize,
    /// Degree bound for random polynomial coefficients
    #[arg(long, global = true, default_value_t = 3)]
    degree: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimensions of Ω^k, I^k and the quotient for each n in a range
    Dims {
        /// A single n or a range `a..b` (inclusive), 1 ≤ n ≤ 8
        #[arg(long)]
        n: String,
    },
    /// Bases of I^k, J^k and the quotient complements
    Complex {
        #[arg(long)]
        n: usize,
        /// Restrict to one degree
        #[arg(long)]
        k: Option<usize>,
    },
    /// Run the exactness, lift, subspace and d_c suites
    Verify {
        #[arg(long)]
        n: usize,
    },
    /// Check that pullback by a contact map commutes with the complex
    Commute {
        /// Map literal: `dilation:r=2`, `translate:q=…`, `compose:a;b`, `poly:[…]`
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Locate characteristic points of the Möbius strip
    Mobius {
        #[arg(long)]
        radius: f64,
        #[arg(long = "half-width")]
        half_width: f64,
        /// Grid as `NRxNS`
        #[arg(long, default_value = "1024x512")]
        grid: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
}

/// Failure to meet a precondition (exit 2) as opposed to a failed check (exit 1).
#[derive(Debug)]
pub struct Precondition(pub String);

impl std::fmt::Display for Precondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Precondition {}

fn configure_workers() -> anyhow::Result<()> {
    let Ok(v) = std::env::var("HEISCALC_WORKERS") else { return Ok(()) };
    let threads: usize = v
        .trim()
        .parse()
        .map_err(|_| Precondition(format!("HEISCALC_WORKERS must be a non-negative integer, got `{v}`")))?;
    rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    configure_workers()?;
    let c = &cli.common;
    if c.trials == 0 {
        return Err(Precondition("--trials must be at least 1".into()).into());
    }
    let report = match &cli.command {
        Command::Dims { n } => commands::dims(n)?,
        Command::Complex { n, k } => commands::complex(*n, *k)?,
        Command::Verify { n } => commands::verify(*n, c)?,
        Command::Commute { map, n } => commands::commute(map, *n, c)?,
        Command::Mobius { radius, half_width, grid, tol } => {
            let report = commands::mobius(*radius, *half_width, grid, *tol, c.out.as_deref())?;
            report.emit(c.format, None)?;
            return Ok(report.passed);
        }
    };
    report.emit(c.format, c.out.as_deref())?;
    Ok(report.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
