//! `wkern`: kernels, reductions and oracles for weighted instance files.

mod commands;
mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use report::{CliError, EXIT_USAGE};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "wkern", version, about = "Weighted kernelization toolkit")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Error probability, as p/q or a decimal such as 0.1.
    #[arg(long, global = true, default_value = "1/10")]
    pub epsilon: String,
    /// Enumeration cap for the exhaustive oracles (overrides WKERN_CAP).
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Worker threads for batch work; 1 runs sequentially.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Output path.
    #[arg(short = 'o', long = "output", global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide an instance with the exhaustive oracle.
    Solve {
        file: PathBuf,
        /// Optimize instead of matching the target (hyperclique and CSP).
        #[arg(long)]
        max: bool,
    },
    /// Randomized prime-hashing kernel (hyperclique, subset sum, AND-CSP).
    Kernelize {
        file: PathBuf,
        /// Also write the modulus certificate here.
        #[arg(long)]
        emit_cert: Option<PathBuf>,
    },
    /// Turing kernel for max-weight hyperclique; `-o` names the output directory.
    TuringMax {
        file: PathBuf,
        /// Answer the family with the internal oracle as well.
        #[arg(long)]
        decide: bool,
    },
    /// Cross-compose instances into one exact-weight clique instance.
    Compose {
        #[command(subcommand)]
        what: ComposeKind,
    },
    /// Lift z^(d−2) weighted graphs to one d-uniform hypergraph.
    Lift {
        #[arg(long)]
        d: usize,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Polynomial-time reductions between problems.
    Reduce {
        #[command(subcommand)]
        what: ReduceKind,
    },
    /// Constraint-language utilities.
    Csp {
        #[command(subcommand)]
        what: CspKind,
    },
    /// Bipartite vertex-cover weight compression.
    Vc {
        #[command(subcommand)]
        what: VcKind,
    },
    /// Instance generators.
    Gen {
        #[command(subcommand)]
        what: GenKind,
    },
    /// Run the acceptance checks.
    VerifySuite {
        #[arg(long, value_enum, default_value_t = ScaleArg::Small)]
        scale: ScaleArg,
        /// Comma-separated criterion ids; default all.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ComposeKind {
    /// Red-blue dominating set instances (padded to a cube by repeating the first).
    Rbds {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = PaddingArg::Standard)]
        padding: PaddingArg,
    },
}

#[derive(Subcommand, Debug)]
pub enum ReduceKind {
    /// Exact red-blue dominating set to subset sum.
    Erbds2ss { file: PathBuf },
    /// Exact-weight clique to AND-CSP.
    Hc2csp { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum CspKind {
    /// Characteristic polynomials and the language degree.
    Degree { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum VcKind {
    /// Compress weights into [1, |V|] keeping the minimum-weight covers.
    Compress {
        file: PathBuf,
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Do two weightings have the same minimum-weight covers?
    VerifyMin { graph: PathBuf, weights: PathBuf },
    /// Do two weightings order all minimal covers the same way?
    Equiv { graph: PathBuf, weights: PathBuf },
    /// Tightness witnesses (same as `wkern gen`).
    #[command(subcommand)]
    Gen(GenKind),
}

#[derive(Subcommand, Debug, Clone)]
pub enum GenKind {
    /// Star on n vertices, center weight n, leaves 1.
    Star {
        #[arg(long)]
        n: usize,
    },
    /// Matching gadget encoding the threshold function Σ w_i x_i ≥ t.
    Threshold {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        w: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum ScaleArg {
    Small,
    Full,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum PaddingArg {
    Standard,
    Widened,
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.render().to_string();
            eprintln!("{}", CliError::usage(msg.trim_end()).to_json());
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match commands::run(cli, argv[1..].to_vec()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.code)
        }
    }
}
