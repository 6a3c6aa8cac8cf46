//! Batch front-end for the hypersurface point-counting library.
//!
//! Exit codes: 0 success, 2 bad input / precondition errors, 3 numerical
//! failure, 4 resource guard tripped.

mod output;
mod scan;

use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use fermatq::{Error, FieldContext, HypersurfaceSpec};

/// Environment variable overriding the q size cap.
pub const Q_CAP_ENV: &str = "FERMATQ_Q_CAP";

#[derive(Debug, Parser)]
#[command(name = "fermatq")]
#[command(about = "count points on diagonal hypersurfaces over F_q and decide Weil-bound extremality")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Brute,
    Charsum,
    Formula,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count F_q-points on a_1 x_1^{d_1} + ... + a_s x_s^{d_s} = b.
    Count {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        /// Exponents, comma-separated (each must divide q-1).
        #[arg(long, value_delimiter = ',')]
        d: Vec<u64>,
        /// Coefficients: base-p integer encodings or "g^k".
        #[arg(long, value_delimiter = ',')]
        a: Vec<String>,
        /// Right-hand side: encoding or "g^k".
        #[arg(long)]
        b: String,
        #[arg(long, value_enum)]
        method: MethodArg,
        /// Optional modulus coefficients (ascending, monic).
        #[arg(long, value_delimiter = ',')]
        modulus: Option<Vec<u64>>,
    },
    /// Weil interval and the invariant I(d_1,...,d_s).
    Bound {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        s: usize,
        #[arg(long, value_delimiter = ',')]
        d: Vec<u64>,
    },
    /// Decide maximality/minimality with full evidence.
    Classify {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        #[arg(long, value_delimiter = ',')]
        d: Vec<u64>,
        #[arg(long, value_delimiter = ',')]
        a: Vec<String>,
        #[arg(long)]
        b: String,
        #[arg(long, value_delimiter = ',')]
        modulus: Option<Vec<u64>>,
    },
    /// Run the character-sum identity suite for one field.
    Verify {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
    },
    /// Scan a parameter grid and emit a JSONL catalog of classifications.
    Scan(scan::ScanArgs),
}

fn q_cap() -> u64 {
    std::env::var(Q_CAP_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(fermatq::DEFAULT_Q_CAP)
}

fn build_field(p: u64, n: u32, modulus: Option<&[u64]>) -> Result<Arc<FieldContext>, Error> {
    Ok(Arc::new(FieldContext::build_capped(p, n, modulus, q_cap())?))
}

/// Parse an element given as a base-p integer encoding or "g^k".
fn parse_element(ctx: &FieldContext, text: &str) -> Result<u64, Error> {
    if let Some(exp) = text.strip_prefix("g^") {
        let k: u64 = exp
            .parse()
            .map_err(|_| Error::InvalidSpec(format!("bad exponent in {text:?}")))?;
        return Ok(ctx.idx_exp(k));
    }
    if text == "g" {
        return Ok(ctx.generator_index());
    }
    let i: u64 = text
        .parse()
        .map_err(|_| Error::InvalidSpec(format!("bad element {text:?}")))?;
    if i >= ctx.q() {
        return Err(Error::OutOfRange(i, ctx.q()));
    }
    Ok(i)
}

fn parse_spec(
    p: u64,
    n: u32,
    d: Vec<u64>,
    a: &[String],
    b: &str,
    modulus: Option<&[u64]>,
) -> Result<HypersurfaceSpec, Error> {
    let ctx = build_field(p, n, modulus)?;
    let a: Vec<u64> = a
        .iter()
        .map(|t| parse_element(&ctx, t))
        .collect::<Result<_, _>>()?;
    let b = parse_element(&ctx, b)?;
    HypersurfaceSpec::new(ctx, d, a, b)
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::NumericalFailure { .. } => 3,
        Error::TooLarge(_) | Error::FieldTooLarge { .. } | Error::TooManyVariables(..) => 4,
        _ => 2,
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Count {
            p,
            n,
            d,
            a,
            b,
            method,
            modulus,
        } => {
            let spec = parse_spec(p, n, d, &a, &b, modulus.as_deref())?;
            let result = match method {
                MethodArg::Brute => fermatq::count_bruteforce(&spec)?,
                MethodArg::Charsum => fermatq::count_charsum(&spec)?,
                MethodArg::Formula => fermatq::count_formula(&spec)?,
            };
            output::print_count(spec.context().q(), &result);
        }
        Command::Bound { p, n, s, d } => {
            let bound = fermatq::weil_bound(p, n, s, &d)?;
            output::print_bound(&bound);
        }
        Command::Classify {
            p,
            n,
            d,
            a,
            b,
            modulus,
        } => {
            let spec = parse_spec(p, n, d, &a, &b, modulus.as_deref())?;
            let result = fermatq::classify(&spec)?;
            output::print_classification(&result);
        }
        Command::Verify { p, n } => {
            let ctx = build_field(p, n, None)?;
            let reports = fermatq::identity_suite(&ctx);
            output::print_verify(p, n, ctx.q(), &reports);
            if reports.iter().any(|r| !r.pass) {
                return Err(Error::NumericalFailure {
                    residual: reports.iter().map(|r| r.max_residual).fold(0.0, f64::max),
                    budget: 0.0,
                });
            }
        }
        Command::Scan(args) => scan::run_scan(args)?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
