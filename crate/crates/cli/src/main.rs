mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "atl", version, about = "Exact computations in affine Temperley-Lieb algebras")]
pub struct Cli {
    #[command(flatten)]
    pub cfg: Config,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Config {
    /// Number of generators
    #[arg(long, global = true, default_value_t = 3)]
    pub gens: usize,
    /// Graph type
    #[arg(long = "type", global = true, value_enum, default_value_t = Kind::Affine)]
    pub kind: Kind,
    /// Basis used to print elements
    #[arg(long, global = true, value_enum, default_value_t = Basis::F)]
    pub basis: Basis,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for randomized checks
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Longest basis word allowed (enumeration length, sample size bound)
    #[arg(long, global = true)]
    pub max_len: Option<usize>,
    /// Depth of the alpha/beta system
    #[arg(long, global = true, default_value_t = 4)]
    pub kmax: usize,
    /// Worker threads for batch evaluation
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Reduction strategy for products
    #[arg(long, global = true, default_value = "left-fold")]
    pub strategy: String,
    /// Trace functional (default: rho on affine, jones on classical)
    #[arg(long, global = true)]
    pub trace: Option<String>,
    /// Random samples per randomized check
    #[arg(long, global = true, default_value_t = 50)]
    pub samples: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Affine,
    Classical,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Basis {
    F,
    G,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Link invariant of affine braid closures, one per word
    Invariant {
        /// Braid words such as "s1 a^-1 s2"
        words: Vec<String>,
        /// Newline-delimited file of braid words
        #[arg(long)]
        file: Option<std::path::PathBuf>,
    },
    /// Trace of algebra elements, one per input
    Trace {
        /// Elements such as "2*[s1 a] - v*[s2]"
        elements: Vec<String>,
        #[arg(long)]
        file: Option<std::path::PathBuf>,
    },
    /// Product of two or more elements
    Multiply {
        #[arg(required = true, num_args = 2..)]
        elements: Vec<String>,
    },
    /// Normal form of a product of f-generators
    Reduce { letters: String },
    /// List the fully commutative basis words
    EnumerateFc,
    /// Run verification suites
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
