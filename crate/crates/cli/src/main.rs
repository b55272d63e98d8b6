mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::report::Failure;

/// Betti numbers, regularity and linear quotients of monomial ideals and of
/// products of ideals generated by linear forms.
#[derive(Parser)]
#[command(name = "prodreg", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Global {
    /// Field characteristic: 0 for the rationals, or a prime below 2^32.
    #[arg(long = "char", global = true, default_value_t = 0, value_name = "0|p")]
    characteristic: u64,
    /// Degree cap for computations that work degree by degree.
    #[arg(long, global = true, value_name = "d")]
    cap: Option<u32>,
    /// Seed for randomly generated inputs.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    /// One JSON document per run.
    Structured,
}

/// Input text given inline or read from a file.
#[derive(Args, Clone)]
struct Source {
    /// `ideal(...)` or `linforms(...)` text.
    #[arg(long, visible_alias = "family", conflicts_with = "file")]
    ideal: Option<String>,
    /// File holding the input text.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Graded Betti table of R/I up to the degree cap.
    Betti(Source),
    /// Castelnuovo–Mumford regularity of I.
    Reg(Source),
    /// Saturation profile and saturation degree of I.
    Sat(Source),
    /// Monomial colon ideal I : u.
    Colon {
        #[command(flatten)]
        source: Source,
        /// The monomial u.
        #[arg(long)]
        by: String,
    },
    /// Compares reg(IJ) with reg(I) + reg(J).
    Inequality {
        #[command(flatten)]
        source: Source,
        /// The second ideal J.
        #[arg(long)]
        other: String,
    },
    /// Linear quotients of monomial ideals.
    #[command(subcommand)]
    Quotients(QuotientsCommand),
    /// Polymatroidal and matroidal ideals.
    #[command(subcommand)]
    Polymatroid(PolymatroidCommand),
    /// Products of ideals generated by linear forms (over the rationals).
    #[command(subcommand)]
    Linforms(LinformsCommand),
    /// Products of chain ideals J_t.
    #[command(subcommand)]
    Hankel(HankelCommand),
    /// Runs the worked examples.
    Fixtures {
        /// Topic or fixture name.
        #[arg(long)]
        only: Option<String>,
    },
}

#[derive(Subcommand)]
enum QuotientsCommand {
    /// Checks the generators in the order given.
    Check(Source),
    /// Searches for an order with linear quotients.
    Search {
        #[command(flatten)]
        source: Source,
        /// Largest number of generators to search over.
        #[arg(long, default_value_t = prodreg::quotients::DEFAULT_SEARCH_GUARD)]
        guard: usize,
    },
}

#[derive(Subcommand)]
enum PolymatroidCommand {
    /// Exchange-property check.
    Check(Source),
    /// Product, or squarefree product, of two polymatroidal ideals.
    Product {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        other: String,
        #[arg(long)]
        squarefree: bool,
    },
    /// Squarefree product of the ideals generated by each set of variables.
    Transversal {
        /// Sets separated by ';', variables by ',', e.g. "a,b; b,c".
        #[arg(long)]
        sets: String,
        /// Number of variables (default: the largest one used).
        #[arg(long)]
        vars: Option<usize>,
    },
}

#[derive(Args, Clone)]
struct FamilySource {
    #[command(flatten)]
    source: Source,
    /// Random family of D subspaces in N variables, "N,D" (uses --seed).
    #[arg(long, value_name = "N,D", conflicts_with_all = ["ideal", "file"])]
    random: Option<String>,
}

#[derive(Subcommand)]
enum LinformsCommand {
    /// Primary components I_A^|A| of the product.
    Decompose(FamilySource),
    /// Compares the product with the intersection of its components.
    Verify(FamilySource),
    /// Whether the family is linearly general.
    General(FamilySource),
    /// Saturation degree of the product.
    Sat(FamilySource),
    /// Regularity of the product.
    Reg(FamilySource),
    /// Decomposition, saturation and regularity together.
    Check(FamilySource),
    /// Colon test J : m = I_A for the family (x_i, y).
    Assoc {
        #[command(flatten)]
        family: FamilySource,
        /// 1-based positions in the family, e.g. "1,3".
        #[arg(long)]
        subset: String,
    },
}

#[derive(Subcommand)]
enum HankelCommand {
    /// Generators of J_{t1} ... J_{tp} from the gamma test.
    Omega(ChainArgs),
    /// Canonical decomposition of a monomial into chains.
    Decompose {
        #[arg(long)]
        monomial: String,
    },
    /// Linear-quotient certificate for J_{t1} ... J_{tp}.
    Certify(ChainArgs),
}

#[derive(Args, Clone)]
struct ChainArgs {
    /// Number of variables.
    #[arg(long)]
    n: usize,
    /// Chain sizes, e.g. "2,2".
    #[arg(long)]
    t: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let global = cli.global.clone();
    match commands::run(&cli) {
        Ok(report) => {
            report.print(&global);
            ExitCode::from(if report.verdict { 0 } else { 1 })
        }
        Err(Failure(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
