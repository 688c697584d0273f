//! `tec` — exact classification of probability measures on `Z_2^3` by
//! the modulus of their characteristic function.
//!
//! Exit codes: 0 success/agreement, 1 validated disagreement between the
//! classifier and the oracle, 2 input error, 3 internal inconsistency.

use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use tec_cli::exec::{self, Format, GenerateRequest};

#[derive(Parser)]
#[command(
    name = "tec",
    about = "Decide whether a probability measure on Z_2^3 is determined by the modulus of its characteristic function up to shift",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Human,
    Machine,
}

impl From<OutputFormat> for Format {
    fn from(value: OutputFormat) -> Format {
        match value {
            OutputFormat::Human => Format::Human,
            OutputFormat::Machine => Format::Machine,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify a measure with both the closed-form procedure and the
    /// brute-force oracle; exit 3 if they ever disagree.
    Classify {
        /// Group exponent (the classifier itself covers l=3).
        #[arg(long, default_value_t = 3)]
        l: u32,
        /// Read mass tokens from a file instead of the arguments.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
        format: OutputFormat,
        /// Mass tokens ("p/q", integer, or finite decimal); read from
        /// stdin when absent.
        masses: Vec<String>,
    },
    /// Enumerate the full equivalence class of a measure, one canonical
    /// representative per shift orbit.
    Class {
        #[arg(long, default_value_t = 3)]
        l: u32,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
        format: OutputFormat,
        masses: Vec<String>,
    },
    /// Cross-validate classifier and oracle on random measures
    /// (ChaCha8 stream seeded with --seed; denominators drawn uniformly
    /// up to the bound, numerators uniformly over compositions).
    Fuzz {
        #[arg(long, default_value_t = 10_000)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest mass denominator to draw.
        #[arg(long, default_value_t = 1_000)]
        denominator: u64,
    },
    /// Cross-validate classifier and oracle on every measure with
    /// masses d_i / denominator.
    Grid {
        #[arg(long)]
        denominator: u64,
        /// Refuse grids with more measures than this.
        #[arg(long, default_value_t = 10_000_000)]
        cap: u128,
    },
    /// Check one of the published criteria against the oracle over a
    /// parameter grid.
    Theorems {
        /// Criterion to check: 1 (flat spectrum), 2 (three generators),
        /// or 3 (the Z_2^2 classification).
        #[arg(long)]
        which: u32,
        /// Grid density: q = k/denominator for 1, (p,q,r) likewise for
        /// 2, exhaustive mass denominators up to this bound for 3.
        #[arg(long)]
        denominator: Option<u64>,
    },
    /// Print the partition of the 128 sign-pattern systems into the
    /// solution families A, B, C_k, D_k.
    Systems,
    /// Print the exact mass vector of a parametrized family, in the
    /// input grammar of `classify`.
    Generate {
        #[command(subcommand)]
        family: Family,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Worked example family n = 1..=9 at parameter --eps.
    Example {
        n: usize,
        #[arg(long)]
        eps: String,
    },
    /// Flat-spectrum measure with value --q at every nontrivial
    /// character.
    PoissonHaar {
        #[arg(long)]
        q: String,
    },
    /// Compound-Poisson measure with exponentiated spectral masses
    /// --u u1,...,u7 on the nonzero elements.
    Poisson {
        #[arg(long)]
        u: String,
    },
}

fn gather_tokens(masses: Vec<String>, input: Option<PathBuf>) -> Result<Vec<String>, String> {
    if !masses.is_empty() {
        if input.is_some() {
            return Err("give masses either as arguments or via --input, not both".into());
        }
        return Ok(masses);
    }
    let text = match input {
        Some(path) => std::fs::read_to_string(&path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?,
        None => {
            let mut buffer = String::new();
            std::io::stdin()
                .read_to_string(&mut buffer)
                .map_err(|e| format!("cannot read stdin: {e}"))?;
            buffer
        }
    };
    Ok(text.split_whitespace().map(String::from).collect())
}

fn main() {
    // Die quietly on closed pipes (`tec systems | head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Classify { l, input, format, masses } => match gather_tokens(masses, input) {
            Ok(tokens) => exec::run_classify(l, &tokens, format.into()),
            Err(e) => {
                eprintln!("error: {e}");
                2
            }
        },
        Command::Class { l, input, format, masses } => match gather_tokens(masses, input) {
            Ok(tokens) => exec::run_class(l, &tokens, format.into()),
            Err(e) => {
                eprintln!("error: {e}");
                2
            }
        },
        Command::Fuzz { count, seed, denominator } => {
            if count == 0 || denominator == 0 {
                eprintln!("error: --count and --denominator must be at least 1");
                2
            } else {
                exec::run_fuzz(count, seed, denominator)
            }
        }
        Command::Grid { denominator, cap } => {
            if denominator == 0 {
                eprintln!("error: --denominator must be at least 1");
                2
            } else {
                exec::run_grid(denominator, cap)
            }
        }
        Command::Theorems { which, denominator } => {
            let default = match which {
                1 => 100,
                2 => 10,
                _ => 24,
            };
            exec::run_theorems(which, denominator.unwrap_or(default))
        }
        Command::Systems => exec::run_systems(),
        Command::Generate { family } => {
            let request = match family {
                Family::Example { n, eps } => GenerateRequest::Example { n, eps },
                Family::PoissonHaar { q } => GenerateRequest::PoissonHaar { q },
                Family::Poisson { u } => GenerateRequest::Poisson { u },
            };
            exec::run_generate(&request)
        }
    };
    std::process::exit(code);
}
