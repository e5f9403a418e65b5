//! `dmod`: command-line front end for `dmod-core`.
//!
//! Exit codes: 0 success or certified, 1 failed check or inconclusive,
//! 2 invalid input, 3 internal invariant violation.

mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dmod_core::{Error, ErrorClass};

#[derive(Parser, Debug)]
#[command(name = "dmod", version, about = "Exact computations with Drinfeld F_q[t]-modules over finite fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Describe F_{q^m}: characteristic, degree, modulus.
    Field,
    /// Build a module from --theta and --coeffs; report invariants and psi_n.
    Psi,
    /// Enumerate psi[n] and pick an A/nA-basis.
    Torsion,
    /// Moore determinant and interpolation of a tuple, or the t-torsion pairing of a module.
    Moore,
    /// Run a verification suite on one case or on the standard grid.
    Verify,
    /// Orders and subgroups of GL_r(A/nA).
    Group,
    /// Frobenius matrix of a specialization on psi[n].
    Frobenius,
    /// Certify that sampled Frobenius classes force the full group GL_r(A/nA).
    Certify,
}

#[derive(clap::Args, Debug, Clone, Default)]
pub struct Opts {
    /// Size of the constant field F_q.
    #[arg(long, global = true)]
    pub q: Option<u64>,
    /// Rank.
    #[arg(long, global = true)]
    pub r: Option<usize>,
    /// Level, a polynomial in t such as t^2+t+1.
    #[arg(long, global = true)]
    pub n: Option<String>,
    /// Degree of the base field F_{q^m} over F_q.
    #[arg(long, global = true)]
    pub m: Option<usize>,
    /// Image of t, as [c0,c1,...] over F_p or an element index.
    #[arg(long, global = true)]
    pub theta: Option<String>,
    /// Comma-separated field elements: a_1..a_r for modules (a_r = 1 may be
    /// omitted when --r is given), or the tuple for `moore`.
    #[arg(long, global = true)]
    pub coeffs: Option<String>,
    /// Sample budget for `certify`; number of seeds for grid runs of `verify`.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// prop1 | level | moore | leading | jinv | groups
    #[arg(long, global = true)]
    pub suite: Option<String>,
    /// order | kernelG | kernelS | abelianization | factorcheck
    #[arg(long, global = true)]
    pub op: Option<String>,
    /// Write the JSON report to this path.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
    /// Print the JSON report instead of the summary.
    #[arg(long, global = true)]
    pub json: bool,
}

/// Outcome of a successful dispatch.
pub struct Report {
    pub json: serde_json::Value,
    pub text: String,
    /// False for failed checks and inconclusive certifications.
    pub ok: bool,
}

fn exit_code(e: &Error) -> u8 {
    match e.class() {
        ErrorClass::Input => 2,
        ErrorClass::Inconclusive => 1,
        ErrorClass::Internal => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::dispatch(cli.command, &cli.opts) {
        Ok(report) => {
            let rendered = serde_json::to_string_pretty(&report.json).expect("reports serialize");
            if let Some(path) = &cli.opts.out {
                if let Err(e) = std::fs::write(path, format!("{rendered}\n")) {
                    eprintln!("error[Io]: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let mut out = std::io::stdout().lock();
            let _ = if cli.opts.json { writeln!(out, "{rendered}") } else { write!(out, "{}", report.text) };
            ExitCode::from(if report.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(exit_code(&e))
        }
    }
}
