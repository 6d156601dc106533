//! `torelli`: batch front end to the exact algebra library. Inputs are JSON
//! files, output is aligned text or JSON, and exit codes are 0 on success,
//! 1 on malformed input and 2 when a mathematical precondition fails.

mod commands;
mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use report::Format;

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const DEFAULT_PRIMES: [u64; 3] = [101, 103, 107];
pub const MAX_SUBSET_CAP: usize = 20;

#[derive(Parser, Debug)]
#[command(name = "torelli", version, about = "Exact checks for logarithmic bundles of arrangements")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ThresholdKind {
    /// Hyperplanes of P^n.
    Pn,
    /// Degree-d hypersurface sections of a smooth quadric Q_n.
    Quadric,
    /// Hyperplane sections of Q_n.
    QuadricHyperplane,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compare the Jacobian spaces of two polynomials.
    Distinguish {
        f: PathBuf,
        g: PathBuf,
        /// Random restrictions to the first factor (needs two or more factors).
        #[arg(long, default_value_t = 0)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Put a pair of split-type polynomials on P1 x P1 into normal form.
    Recover { f: PathBuf, g: PathBuf },
    /// The Jacobian space of one factor.
    Jacobian {
        f: PathBuf,
        /// Factor, numbered from 1.
        #[arg(long, default_value_t = 1)]
        factor: usize,
    },
    /// Smoothness of a curve on P1 x P1.
    Smooth {
        f: PathBuf,
        /// Run the modular point count first; a pass is reported as probabilistic.
        #[arg(long)]
        modular: bool,
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_PRIMES)]
        primes: Vec<u64>,
    },
    /// Singular members of the pencil spanned by two curves on P1 x P1.
    Pencil { f: PathBuf, g: PathBuf },
    /// The apolar point of a hyperplane with respect to a quadric.
    Apolar { quadric: PathBuf, hyperplane: PathBuf },
    /// Whether a configuration of hyperplane sections of a quadric is tame.
    Tame {
        quadric: PathBuf,
        sections: PathBuf,
        #[arg(long, default_value_t = MAX_SUBSET_CAP)]
        max_subset: usize,
    },
    /// Simple normal crossings of a hyperplane arrangement.
    Snc {
        arrangement: PathBuf,
        #[arg(long, default_value_t = MAX_SUBSET_CAP)]
        max_subset: usize,
    },
    /// Points on at least r + 1 hyperplanes of an arrangement in P^r.
    Sigma {
        arrangement: PathBuf,
        #[arg(long, default_value_t = MAX_SUBSET_CAP)]
        max_subset: usize,
    },
    /// Chern classes of the logarithmic cotangent bundle of curves on P1 x P1.
    Chern { curves: PathBuf },
    /// Euler characteristic of the logarithmic cotangent bundle, optionally twisted.
    Chi {
        curves: PathBuf,
        /// `s,t` for the twist by O(s, t).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [0i64, 0])]
        twist: Vec<i64>,
    },
    /// Splitting of the logarithmic bundle of a lines of class (1,0) and b of class (0,1).
    Splitting { a: u32, b: u32 },
    /// Whether the logarithmic bundle is arithmetically Cohen-Macaulay.
    Acm { curves: PathBuf },
    /// h^1 of the tangent bundle of a product of projective spaces twisted by -a.
    Vanishing {
        #[arg(long, value_delimiter = ',', required = true)]
        shape: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        degree: Vec<u32>,
    },
    /// Number of components from which a general arrangement is recovered.
    Threshold {
        #[arg(value_enum)]
        kind: ThresholdKind,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        d: u32,
    },
    /// Euler characteristic through the residue sequence against Riemann-Roch.
    ResidueCheck { curves: PathBuf },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli.command) {
        Ok(report) => {
            print!("{}", report.render(cli.format));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
