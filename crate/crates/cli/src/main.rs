//! `bellmix`: entanglement, mixedness, and CHSH analysis for two-qubit
//! states from the command line.
//!
//! Six subcommands: `measures` and `chsh-opt` read JSON state files,
//! `classify` and `witness` work on a (linear entropy, concurrence)
//! point, `family-scan` and `boundary` emit CSV tables.

mod commands;
mod statefile;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

/// Failure with the process exit code it maps to: 1 for file system
/// trouble, 2 for malformed input, 3 for input that parses but fails
/// state validation, 4 for valid input outside a command's domain.
#[derive(Debug)]
pub enum CliError {
    Io(String),
    Parse(String),
    Validation(String),
    Domain(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            Self::Io(_) => 1,
            Self::Parse(_) => 2,
            Self::Validation(_) => 3,
            Self::Domain(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Self::Io(m) | Self::Parse(m) | Self::Validation(m) | Self::Domain(m) => m,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Io(e.to_string())
    }
}

#[derive(Parser)]
#[command(name = "bellmix", version, about = "Two-qubit entanglement, mixedness, and CHSH analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Report concurrence, entanglement of formation, mixedness, and the
    /// CHSH verdict for a state file.
    Measures {
        /// JSON state file carrying an "e0" or a "rho" member.
        state_file: PathBuf,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        /// Write here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Classify a (linear entropy, concurrence) point and print the
    /// boundary entropies at its concurrence.
    Classify {
        /// Normalized linear entropy, in [0, 1].
        #[arg(long)]
        entropy: f64,
        /// Concurrence, in (0, 1].
        #[arg(long)]
        concurrence: f64,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Write a violating and a non-violating state with identical
    /// concurrence and linear entropy. The point must sit where both
    /// verdicts coexist.
    Witness {
        /// Normalized linear entropy, in [0, 1].
        #[arg(long)]
        entropy: f64,
        /// Concurrence, in (0, 1].
        #[arg(long)]
        concurrence: f64,
        /// Off-diagonal phase of the generated states.
        #[arg(long, default_value_t = 0.0)]
        theta: f64,
        /// The states land in <prefix>_vbi.json and <prefix>_non_vbi.json.
        #[arg(long, default_value = "witness")]
        state_prefix: String,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Tabulate the violation parameter m over the family angle phi at a
    /// fixed point, as CSV.
    FamilyScan {
        /// Normalized linear entropy, in [0, 1].
        #[arg(long)]
        entropy: f64,
        /// Concurrence, in (0, 1].
        #[arg(long)]
        concurrence: f64,
        /// Off-diagonal phase of the scanned states.
        #[arg(long, default_value_t = 0.0)]
        theta: f64,
        /// Number of rows, at least 2.
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Tabulate the boundary entropies S1, S2, Smax over the concurrence
    /// range (0, 1], as CSV.
    Boundary {
        /// Number of rows, at least 2.
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Maximize the CHSH expectation numerically and compare against the
    /// closed form 2 sqrt(m).
    ChshOpt {
        /// JSON state file carrying an "e0" or a "rho" member.
        state_file: PathBuf,
        /// Independent optimizer starts.
        #[arg(long, default_value_t = 24)]
        restarts: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("error: {}", err.message());
        std::process::exit(err.exit_code());
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Measures { state_file, format, output } => {
            with_output(output.as_deref(), |out| commands::cmd_measures(&state_file, format, out))
        }
        Command::Classify { entropy, concurrence, format, output } => with_output(
            output.as_deref(),
            |out| commands::cmd_classify(entropy, concurrence, format, out),
        ),
        Command::Witness { entropy, concurrence, theta, state_prefix, format, output } => {
            with_output(output.as_deref(), |out| {
                commands::cmd_witness(entropy, concurrence, theta, &state_prefix, format, out)
            })
        }
        Command::FamilyScan { entropy, concurrence, theta, samples, output } => {
            with_output(output.as_deref(), |out| {
                commands::cmd_family_scan(entropy, concurrence, theta, samples, out)
            })
        }
        Command::Boundary { samples, output } => {
            with_output(output.as_deref(), |out| commands::cmd_boundary(samples, out))
        }
        Command::ChshOpt { state_file, restarts, seed, format, output } => {
            with_output(output.as_deref(), |out| {
                commands::cmd_chsh_opt(&state_file, restarts, seed, format, out)
            })
        }
    }
}

fn with_output(
    path: Option<&Path>,
    body: impl FnOnce(&mut dyn Write) -> Result<(), CliError>,
) -> Result<(), CliError> {
    match path {
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            body(&mut lock)?;
            Ok(lock.flush()?)
        }
        Some(p) => {
            let file = std::fs::File::create(p)
                .map_err(|e| CliError::Io(format!("cannot create {}: {e}", p.display())))?;
            let mut buf = std::io::BufWriter::new(file);
            body(&mut buf)?;
            Ok(buf.flush()?)
        }
    }
}

/// 12 significant digits: enough to rebuild the exact f64 in practice
/// and stable across runs, so CSV goldens can be compared byte for byte.
pub fn fmt_f(v: f64) -> String {
    format!("{v:.11e}")
}
