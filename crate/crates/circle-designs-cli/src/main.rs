//! Command-line front end for the circle-designs toolkit: enumerate
//! σ-families on the unit circle, verify t-designs exactly, build the
//! [q+1, q−5] BCH code and its weight tables, compute circle-stabilizer
//! orbits, and rerun the full published-value verification suite.

mod family;
mod report;
mod run;
mod suite;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "circle-designs",
    version,
    about = "Exact designs, codes, and group actions on the unit circle of GF(q^2), q = 2^m"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate a σ-family of blocks and optionally write a block-set file.
    Blocks {
        /// Subfield size: 16, 32, 64, or 128.
        #[arg(long)]
        q: u32,
        /// Family descriptor: plain:K,L | u:K,L | b:K,L | bbar:K,L |
        /// zero63 | zero73 | general:K:EXPR  (EXPR over s1..s7, a, integers).
        #[arg(long)]
        family: String,
        /// Write the blocks as JSON to this path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Verify that a block-set file is an exact t-design.
    Verify {
        /// Block-set JSON file produced by `blocks`.
        #[arg(long)]
        blocks: PathBuf,
        /// Strength to verify.
        #[arg(long)]
        t: u32,
        /// Write the verdict as JSON to this path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the BCH code: parameters, support scans, weight tables, trace code.
    Code {
        /// Subfield size: 16, 32, 64, or 128.
        #[arg(long)]
        q: u32,
        /// Allow the long q=128 distance certification.
        #[arg(long)]
        heavy: bool,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Write the report as JSON to this path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Close the circle stabilizer and partition k-subsets into orbits.
    Group {
        /// Subfield size: 16, 32, 64, or 128.
        #[arg(long)]
        q: u32,
        /// Subset size for the orbit partition.
        #[arg(long, default_value_t = 5)]
        k: usize,
        /// Sample size for the randomized order-2 / invariance checks.
        #[arg(long, default_value_t = 100)]
        sample: usize,
        /// Allow orbit partitions over more than 5·10^7 subsets.
        #[arg(long)]
        heavy: bool,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Write the report as JSON to this path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-derive every published value and compare exactly (exit 1 on any mismatch).
    Suite {
        /// Fields to check, comma separated (subset of 16,32,64).
        #[arg(long, value_delimiter = ',', default_values_t = vec![16u32, 32, 64])]
        q: Vec<u32>,
        /// Include the multi-minute checks (C(65,7) stream, q=32 7-subset orbits).
        #[arg(long)]
        heavy: bool,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Randomized cases per property check.
        #[arg(long, default_value_t = 10_000)]
        cases: u64,
        /// Write all check records as JSON to this path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the randomized and exhaustive property checks on their own.
    Props {
        /// Randomized cases per property check.
        #[arg(long, default_value_t = 10_000)]
        cases: u64,
        /// Write all check records as JSON to this path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> anyhow::Result<bool> {
    match cli.cmd {
        Cmd::Blocks {
            q,
            family,
            out,
            jobs,
        } => {
            run::cmd_blocks(q, &family, out.as_deref(), jobs)?;
            Ok(true)
        }
        Cmd::Verify { blocks, t, out } => run::cmd_verify(&blocks, t, out.as_deref()),
        Cmd::Code {
            q,
            heavy,
            jobs,
            out,
        } => {
            run::cmd_code(q, heavy, jobs, out.as_deref())?;
            Ok(true)
        }
        Cmd::Group {
            q,
            k,
            sample,
            heavy,
            jobs,
            out,
        } => run::cmd_group(q, k, sample, heavy, jobs, out.as_deref()),
        Cmd::Suite {
            q,
            heavy,
            jobs,
            cases,
            out,
        } => run::cmd_suite(&q, heavy, jobs, cases, out.as_deref()),
        Cmd::Props { cases, out } => run::cmd_props(cases, out.as_deref()),
    }
}
