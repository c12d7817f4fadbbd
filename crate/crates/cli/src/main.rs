//! `lbz`: command-line access to the leibniz crate.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use leibniz::Error;

/// Largest degree accepted even when `--max-n` asks for more.
const HARD_CAP: usize = 7;

#[derive(Parser, Debug)]
#[command(name = "lbz", version, about = "Exact computations in varieties of Leibniz algebras")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Largest degree any command may touch (at most 7).
    #[arg(long, global = true, default_value_t = 6)]
    max_n: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct VarietyArg {
    /// Built-in variety: free, abelian, NsA(s), V1, V1tilde, V3tilde.
    #[arg(long, conflicts_with = "variety_file")]
    variety: Option<String>,

    /// JSON file with named identities.
    #[arg(long)]
    variety_file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rewrite a combination of terms in the left-normed basis.
    Reduce { term: String },
    /// dim P_n(V).
    Dim {
        #[command(flatten)]
        variety: VarietyArg,
        #[arg(long)]
        n: usize,
    },
    /// The θ-basis of P_n(V3tilde).
    Basis {
        #[arg(long)]
        n: usize,
    },
    /// θ-coordinates of a multilinear element.
    ThetaReduce {
        term: String,
        /// Degree; defaults to the largest generator index.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Check whether the identities of a file hold in a variety.
    Check {
        #[arg(long)]
        identity_file: PathBuf,
        #[command(flatten)]
        variety: VarietyArg,
    },
    /// Colength l_n for n = 1..nmax.
    Colength {
        #[command(flatten)]
        variety: VarietyArg,
        #[arg(long)]
        nmax: usize,
    },
    /// Character of P_n(V) and its decomposition into irreducibles.
    Character {
        #[command(flatten)]
        variety: VarietyArg,
        #[arg(long)]
        n: usize,
    },
    /// Verify span, independence and rewriting consistency of the θ-basis.
    VerifyTheorem2 {
        #[arg(long)]
        n: usize,
        /// Exponent of t at the head of each substitution (at least n).
        #[arg(long)]
        fdeg: Option<usize>,
        #[arg(long, default_value_t = 2)]
        seed: u64,
    },
    /// xY^k zY^(m-k) ≡ Σ α_i xY^(k-i) zY^(m-k+i): check given α or solve for one.
    Condition3 {
        #[command(flatten)]
        variety: VarietyArg,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        /// Comma-separated rationals α_1,...,α_k.
        #[arg(long)]
        alphas: Option<String>,
    },
    /// Evaluate a combination of terms in H ⊕ Q[t].
    Eval {
        term: String,
        /// JSON map from generator to element, e.g. {"x1": "a", "x2": "[t^2]"}.
        #[arg(long)]
        assignment: PathBuf,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::UnknownVariety(_) => 3,
        Error::DegreeBound { .. } => 4,
        Error::Invariant(_) => 5,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("lbz: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cli: &Cli) -> leibniz::Result<String> {
    if cli.max_n > HARD_CAP {
        return Err(Error::DegreeBound {
            degree: cli.max_n,
            bound: HARD_CAP,
        });
    }
    let ctx = commands::Context {
        format: cli.format,
        bound: cli.max_n,
    };
    match &cli.command {
        Command::Reduce { term } => commands::reduce(&ctx, term),
        Command::Dim { variety, n } => commands::dim(&ctx, variety, *n),
        Command::Basis { n } => commands::basis(&ctx, *n),
        Command::ThetaReduce { term, n } => commands::theta_reduce(&ctx, term, *n),
        Command::Check {
            identity_file,
            variety,
        } => commands::check(&ctx, identity_file, variety),
        Command::Colength { variety, nmax } => commands::colength(&ctx, variety, *nmax),
        Command::Character { variety, n } => commands::character(&ctx, variety, *n),
        Command::VerifyTheorem2 { n, fdeg, seed } => {
            commands::verify_theorem2(&ctx, *n, *fdeg, *seed)
        }
        Command::Condition3 {
            variety,
            k,
            m,
            alphas,
        } => commands::condition3(&ctx, variety, *k, *m, alphas.as_deref()),
        Command::Eval { term, assignment } => commands::eval(&ctx, term, assignment),
    }
}
