//! `deuring` — numerical verification of an explicit zero-repulsion bound:
//! a hypothetical off-critical-line zero of ζ(s) forces a lower bound on
//! L(1,χ) for real primitive characters. One subcommand per suite; flags
//! select discriminants, zero hypotheses, primes q, and output format.
//!
//! Exit status: 0 when no asserted check fails, 1 on check or I/O
//! failure, 2 on bad usage, 3 on an internal invariant violation.

mod config;
mod output;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{parse_list, Format, Suite, SuiteConfig, DEFAULT_SEED};
use suites::RunError;

#[derive(Parser)]
#[command(name = "deuring", version, about = "Verification suites for the elementary zero-repulsion bound on L(1,chi)")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact integer identities: divisor decomposition, convolutions,
    /// character sums, L(1,chi) ground truth, hyperbola main terms
    Identities(CommonArgs),
    /// Lower-bound machinery: main factor grid, zeta ratio, rearrangement
    /// and tail enclosure at desk scale
    Lemma1(CommonArgs),
    /// Inner-sum split bound and the summation-by-parts identity grid
    Lemma2(CommonArgs),
    /// The decomposition chain |Σ| ≤ Σ'₁+Σ'₂ ≤ Σ₁+Σ₂ at desk scale
    Sigma(CommonArgs),
    /// Closed-form threshold chain over beta and U grids
    Threshold(CommonArgs),
    /// The closed-form lower bound on L(1,chi) and its monotonicity
    Bound(CommonArgs),
    /// Prime-q generalization: Ramanujan sums, q-factor grids
    #[command(name = "general-q")]
    GeneralQ(CommonArgs),
    /// Grid scans of the closed-form quantities, CSV-friendly
    Scan(CommonArgs),
    /// Every suite above, in order
    All(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Sieve limit N (all exact sums run below it)
    #[arg(long, default_value_t = 1_000_000)]
    nmax: u64,
    /// Comma-separated moduli D; each -D must be a fundamental discriminant
    #[arg(long, default_value = "4,8,20,24")]
    disc: String,
    /// Comma-separated real parts beta of the hypothetical zero
    #[arg(long, default_value = "0.9,0.875")]
    beta: String,
    /// Comma-separated imaginary parts gamma (zipped against --beta)
    #[arg(long, default_value = "3,5")]
    gamma: String,
    /// Comma-separated primes q for the general-q pipeline
    #[arg(long, default_value = "2,3,5,7,11")]
    q: String,
    /// Inject |rho| symbolically (e.g. 2.4e12) instead of hypot(beta, gamma)
    #[arg(long)]
    rho_modulus: Option<f64>,
    /// Analytic slack added to computed tail certificates (default 1e-6)
    #[arg(long)]
    tolerance: Option<f64>,
    /// Output format: json or csv
    #[arg(long, default_value = "json")]
    format: String,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

fn build_config(suite: Suite, args: &CommonArgs) -> Result<SuiteConfig, String> {
    let format = match args.format.as_str() {
        "json" => Format::Json,
        "csv" => Format::Csv,
        other => return Err(format!("--format {other:?} is neither json nor csv")),
    };
    let cfg = SuiteConfig {
        suite,
        nmax: args.nmax,
        disc: parse_list(&args.disc, "--disc")?,
        beta: parse_list(&args.beta, "--beta")?,
        gamma: parse_list(&args.gamma, "--gamma")?,
        q: parse_list(&args.q, "--q")?,
        rho_modulus: args.rho_modulus,
        tolerance: args.tolerance,
        format,
        out: args.out.clone(),
        seed: DEFAULT_SEED,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (suite, args) = match &cli.cmd {
        Cmd::Identities(a) => (Suite::Identities, a),
        Cmd::Lemma1(a) => (Suite::Lemma1, a),
        Cmd::Lemma2(a) => (Suite::Lemma2, a),
        Cmd::Sigma(a) => (Suite::Sigma, a),
        Cmd::Threshold(a) => (Suite::Threshold, a),
        Cmd::Bound(a) => (Suite::Bound, a),
        Cmd::GeneralQ(a) => (Suite::GeneralQ, a),
        Cmd::Scan(a) => (Suite::Scan, a),
        Cmd::All(a) => (Suite::All, a),
    };
    let cfg = match build_config(suite, args) {
        Ok(cfg) => cfg,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let doc = match suites::run(&cfg) {
        Ok(doc) => doc,
        Err(RunError::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(RunError::Internal(msg)) => {
            eprintln!("internal invariant violation: {msg}");
            return ExitCode::from(3);
        }
    };
    let rendered = doc.render(cfg.format);
    if let Some(path) = &cfg.out {
        if let Err(e) = std::fs::write(path, &rendered) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(1);
        }
    } else {
        print!("{rendered}");
    }
    suites::print_summary(&doc);
    if doc.summary().fail > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
