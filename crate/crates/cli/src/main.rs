//! `ternary`: command-line access to forms, genera, densities and the identity checks.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ternary::Error;

use commands::Output;

/// Exact computations with positive ternary quadratic forms.
///
/// Forms are written as the comma separated sextuple `a,b,c,d,e,f` for
/// `a x² + b y² + c z² + d yz + e zx + f xy`, e.g. `31,5,11,1,-14,6`.
///
/// Exit codes: 0 success or pass, 1 identity failure or internal error,
/// 2 usage error, 3 work limit exceeded.
#[derive(Parser, Debug)]
#[command(name = "ternary", version)]
pub struct Cli {
    #[command(flatten)]
    pub config: Config,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Config {
    /// Directory for cached genus enumerations.
    #[arg(long, global = true, env = "TERNARY_CACHE", value_name = "PATH")]
    pub cache: Option<PathBuf>,

    /// Worker threads, or `auto` for one per core.
    #[arg(long, global = true, default_value = "auto", value_parser = parse_threads, value_name = "K")]
    pub threads: Threads,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Operation budget for congruence counting.
    #[arg(long, global = true, default_value_t = ternary::local::DEFAULT_WORK_LIMIT, value_name = "OPS")]
    pub work_limit: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Threads {
    Auto,
    Fixed(usize),
}

fn parse_threads(s: &str) -> Result<Threads, String> {
    if s == "auto" {
        return Ok(Threads::Auto);
    }
    match s.parse::<usize>() {
        Ok(0) | Err(_) => Err(format!("expected `auto` or a positive integer, got {s:?}")),
        Ok(k) => Ok(Threads::Fixed(k)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Discriminant `4abc + def − ad² − be² − cf²`.
    Disc {
        #[arg(allow_hyphen_values = true)]
        form: String,
    },
    /// Canonical reduced form with a witness `U`, `U' G U` the reduced Gram matrix.
    Reduce {
        #[arg(allow_hyphen_values = true)]
        form: String,
    },
    /// Number of integer solutions of `form(x, y, z) = n`.
    Count {
        #[arg(allow_hyphen_values = true)]
        form: String,
        n: String,
    },
    /// Representation numbers for `0..=bound`.
    Theta {
        #[arg(allow_hyphen_values = true)]
        form: String,
        bound: u64,
    },
    /// Integral automorphs.
    Auts {
        #[arg(allow_hyphen_values = true)]
        form: String,
        /// List the group elements as well.
        #[arg(long)]
        elements: bool,
    },
    /// Integral equivalence with a witness `U`, `U' G U = H`.
    Equiv {
        #[arg(allow_hyphen_values = true)]
        first: String,
        #[arg(allow_hyphen_values = true)]
        second: String,
    },
    /// Class representatives of TG1 (discriminant p²) or TG2 (discriminant 16p²).
    Genus {
        p: u64,
        #[arg(long, value_enum, default_value_t = GenusChoice::Tg1)]
        label: GenusChoice,
    },
    /// Masses of TG1(p) and TG2(p) against the closed form (p − 1)/48.
    Mass { p: u64 },
    /// The map ⟨a,b,c,d,e,f⟩ ↦ ⟨a,4b,4c,4d,2e,2f⟩ on a Convenient Shape 1 representative.
    Phi {
        #[arg(allow_hyphen_values = true)]
        form: String,
    },
    /// The inverse of `phi`, from a Convenient Shape 2 representative.
    PhiInv {
        #[arg(allow_hyphen_values = true)]
        form: String,
    },
    /// Watson's λ_m: the rescaled restriction of the form to Λ_m.
    Lambda {
        #[arg(allow_hyphen_values = true)]
        form: String,
        #[arg(long, short, default_value = "4")]
        m: String,
    },
    /// Local density at p, stabilized over successive powers of p.
    Density {
        #[arg(allow_hyphen_values = true)]
        form: String,
        n: String,
        p: u64,
    },
    /// Exact identity checks and property suites.
    Verify {
        #[arg(value_enum)]
        target: VerifyTarget,
        /// Odd prime for `thm1.3`.
        #[arg(long)]
        p: Option<u64>,
        /// Largest n checked (defaults: 1000 for thm1.1 and thm1.2, 500 for thm1.3, 200 for tg73).
        #[arg(long)]
        n_max: Option<u64>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenusChoice {
    Tg1,
    Tg2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyTarget {
    #[value(name = "thm1.1")]
    Thm11,
    #[value(name = "thm1.2")]
    Thm12,
    #[value(name = "thm1.3")]
    Thm13,
    #[value(name = "tg73")]
    Tg73,
    Densities,
    Genus,
    Watson,
    All,
}

/// Process exit status for an error.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ResourceLimit { .. } => 3,
        Error::Parse { .. }
        | Error::InvalidInput(_)
        | Error::NotPositiveDefinite(_)
        | Error::NotUnimodular(..)
        | Error::Imprimitive(_)
        | Error::EvenDiscriminant(..)
        | Error::ShapePrecondition { .. } => 2,
        _ => 1,
    }
}

fn emit(out: &Output, format: Format) -> std::io::Result<()> {
    let mut stdout = std::io::stdout().lock();
    match format {
        Format::Json => writeln!(stdout, "{}", out.json),
        Format::Tsv => write!(stdout, "{}", out.tsv),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Threads::Fixed(k) = cli.config.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match commands::run(&cli.command, &cli.config) {
        Ok(out) => {
            if let Err(e) = emit(&out, cli.config.format) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(if out.pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
