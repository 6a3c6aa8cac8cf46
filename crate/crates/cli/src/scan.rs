//! Parameter-grid scanner: classifies every hypersurface in a grid and
//! streams one JSONL catalog row per spec, plus a summary on stdout.
//!
//! Iteration order is fixed (p, n, s ascending; exponent tuples and
//! coefficient classes lexicographic) and the generator choice is
//! deterministic, so identical jobs produce byte-identical catalogs.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use fermatq::{
    classify, count_charsum, Error, FieldContext, HypersurfaceSpec, Status,
};

/// Hard cap on the number of generated specs.
pub const GRID_GUARD: u64 = 1_000_000;

/// Environment variable lowering the grid guard (useful in tests).
pub const GRID_GUARD_ENV: &str = "FERMATQ_SCAN_GUARD";

fn grid_guard() -> u64 {
    std::env::var(GRID_GUARD_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .map_or(GRID_GUARD, |g: u64| g.min(GRID_GUARD))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sampling {
    /// One coefficient representative per d-th-power class (default);
    /// counts depend only on these classes.
    Representatives,
    Exhaustive,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// Job file (JSON with the same keys as these flags); overrides the flags.
    #[arg(long)]
    pub job: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    pub p_min: u64,
    #[arg(long, default_value_t = 3)]
    pub p_max: u64,
    #[arg(long, default_value_t = 1)]
    pub n_min: u32,
    #[arg(long, default_value_t = 4)]
    pub n_max: u32,
    #[arg(long, default_value_t = 2)]
    pub s_min: usize,
    #[arg(long, default_value_t = 5)]
    pub s_max: usize,
    /// Largest exponent admitted into tuples.
    #[arg(long, default_value_t = 10)]
    pub max_d: u64,
    /// Only emit tuples with gcd(d_1,...,d_s) > 2.
    #[arg(long)]
    pub require_gcd_gt_2: bool,
    #[arg(long, value_enum, default_value_t = Sampling::Representatives)]
    pub sampling: Sampling,
    /// Catalog output path (JSONL).
    #[arg(long)]
    pub out: PathBuf,
    /// Fraction of Maximal/Minimal rows re-checked by the character-sum count.
    #[arg(long, default_value_t = 0.0)]
    pub verify_sample_rate: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanJob {
    pub p_min: u64,
    pub p_max: u64,
    pub n_min: u32,
    pub n_max: u32,
    pub s_min: usize,
    pub s_max: usize,
    pub max_d: u64,
    #[serde(default)]
    pub require_gcd_gt_2: bool,
    pub sampling: Sampling,
    pub out: PathBuf,
    #[serde(default)]
    pub verify_sample_rate: f64,
    #[serde(default)]
    pub seed: u64,
}

impl ScanJob {
    fn from_args(args: ScanArgs) -> Result<ScanJob, Error> {
        if let Some(path) = &args.job {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidSpec(format!("cannot read job file: {e}")))?;
            return serde_json::from_str(&text)
                .map_err(|e| Error::InvalidSpec(format!("bad job file: {e}")));
        }
        Ok(ScanJob {
            p_min: args.p_min,
            p_max: args.p_max,
            n_min: args.n_min,
            n_max: args.n_max,
            s_min: args.s_min,
            s_max: args.s_max,
            max_d: args.max_d,
            require_gcd_gt_2: args.require_gcd_gt_2,
            sampling: args.sampling,
            out: args.out,
            verify_sample_rate: args.verify_sample_rate,
            seed: args.seed,
        })
    }
}

#[derive(Serialize)]
struct CatalogRow {
    p: u64,
    n: u32,
    q: u64,
    s: usize,
    d: Vec<u64>,
    a: Vec<u64>,
    b: u64,
    status: String,
    r: Option<u64>,
    epsilon: Option<i8>,
    i_value: u64,
    lower: u128,
    upper: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    count: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verified: Option<bool>,
}

#[derive(Serialize, Default)]
struct ScanSummary {
    total: u64,
    maximal: u64,
    minimal: u64,
    not_attained: u64,
    hypotheses_not_met: u64,
    verified: u64,
    mismatches: u64,
    truncated: bool,
}

struct SpecParams {
    d: Vec<u64>,
    a: Vec<u64>,
    b: u64,
}

fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(2)..=hi).filter(|&p| fermatq_is_prime(p)).collect()
}

// trial division is plenty at desk scale
fn fermatq_is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn divisor_pool(qm1: u64, max_d: u64) -> Vec<u64> {
    (2..=max_d.min(qm1)).filter(|&d| qm1 % d == 0).collect()
}

fn gcd_all(d: &[u64]) -> u64 {
    d.iter().fold(0, |acc, &x| num_integer::gcd(acc, x))
}

/// Coefficient/rhs tuples for one exponent tuple under the sampling policy.
/// Stops after `limit` tuples so a huge grid never gets materialized.
fn spec_params_for(
    ctx: &FieldContext,
    d: &[u64],
    sampling: Sampling,
    limit: usize,
) -> Vec<SpecParams> {
    let qm1 = ctx.q() - 1;
    let s = d.len();
    let mut out = Vec::new();
    match sampling {
        Sampling::Representatives => {
            // a_i over g^0..g^{d_i-1}, b over g^0..g^{D-1}, D = lcm(d)
            let lcm = d.iter().fold(1u64, |acc, &x| num_integer::lcm(acc, x)).min(qm1);
            let mut class = vec![0u64; s];
            'outer: loop {
                let a: Vec<u64> = class.iter().map(|&t| ctx.idx_exp(t)).collect();
                for u in 0..lcm {
                    if out.len() >= limit {
                        return out;
                    }
                    out.push(SpecParams {
                        d: d.to_vec(),
                        a: a.clone(),
                        b: ctx.idx_exp(u),
                    });
                }
                for (slot, &di) in class.iter_mut().zip(d) {
                    *slot += 1;
                    if *slot < di {
                        continue 'outer;
                    }
                    *slot = 0;
                }
                break;
            }
        }
        Sampling::Exhaustive => {
            let q = ctx.q();
            let mut a = vec![1u64; s];
            'outer2: loop {
                for b in 1..q {
                    if out.len() >= limit {
                        return out;
                    }
                    out.push(SpecParams {
                        d: d.to_vec(),
                        a: a.clone(),
                        b,
                    });
                }
                for slot in a.iter_mut() {
                    *slot += 1;
                    if *slot < q {
                        continue 'outer2;
                    }
                    *slot = 1;
                }
                break;
            }
        }
    }
    out
}

fn classify_row(
    ctx: &Arc<FieldContext>,
    params: &SpecParams,
    job: &ScanJob,
    row_index: u64,
) -> Result<(CatalogRow, Status, bool, bool), Error> {
    let spec = HypersurfaceSpec::new(ctx.clone(), params.d.clone(), params.a.clone(), params.b)?;
    let result = classify(&spec)?;
    let extremal = matches!(result.status, Status::Maximal | Status::Minimal);

    let mut verified = None;
    let mut mismatch = false;
    if extremal && job.verify_sample_rate > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(job.seed ^ row_index.wrapping_mul(0x9e3779b97f4a7c15));
        if rng.gen::<f64>() < job.verify_sample_rate {
            match count_charsum(&spec) {
                Ok(check) => {
                    let expected = result.verified_count.as_ref().map(|c| c.n_points);
                    let endpoint = match result.status {
                        Status::Maximal => result.bound.upper,
                        _ => result.bound.lower,
                    };
                    let ok = Some(check.n_points) == expected && check.n_points == endpoint;
                    verified = Some(ok);
                    mismatch = !ok;
                }
                Err(Error::TooLarge(_)) => {} // box too large to re-check; leave unverified
                Err(e) => return Err(e),
            }
        }
    }

    let row = CatalogRow {
        p: ctx.p(),
        n: ctx.n(),
        q: ctx.q(),
        s: params.d.len(),
        d: params.d.clone(),
        a: params.a.clone(),
        b: params.b,
        status: result.status.to_string(),
        r: result.r,
        epsilon: result.epsilon,
        i_value: result.bound.i_value,
        lower: result.bound.lower,
        upper: result.bound.upper,
        count: result.verified_count.as_ref().map(|c| c.n_points),
        verified,
    };
    Ok((row, result.status, verified.is_some(), mismatch))
}

pub fn run_scan(args: ScanArgs) -> Result<(), Error> {
    let job = ScanJob::from_args(args)?;
    let cap = crate::q_cap();
    let file = File::create(&job.out)
        .map_err(|e| Error::InvalidSpec(format!("cannot create {}: {e}", job.out.display())))?;
    let mut writer = BufWriter::new(file);

    let guard = grid_guard();
    let mut summary = ScanSummary::default();
    let mut emitted = 0u64;
    let mut truncated = false;

    'grid: for p in primes_in(job.p_min, job.p_max) {
        for n in job.n_min..=job.n_max {
            let Some(q) = p.checked_pow(n).filter(|&q| q <= cap) else {
                continue;
            };
            let ctx = Arc::new(FieldContext::build_capped(p, n, None, cap)?);
            let pool = divisor_pool(q - 1, job.max_d);
            if pool.is_empty() {
                continue;
            }
            for s in job.s_min..=job.s_max {
                // lexicographic odometer over exponent tuples
                let mut idx = vec![0usize; s];
                'tuples: loop {
                    let d: Vec<u64> = idx.iter().map(|&i| pool[i]).collect();
                    if !job.require_gcd_gt_2 || gcd_all(&d) > 2 {
                        let remaining = (guard - emitted) as usize;
                        // +1 so overshooting the guard is observable
                        let params = spec_params_for(&ctx, &d, job.sampling, remaining + 1);
                        let take = if params.len() > remaining {
                            truncated = true;
                            remaining
                        } else {
                            params.len()
                        };
                        let base_index = emitted;
                        let rows: Vec<_> = params[..take]
                            .par_iter()
                            .enumerate()
                            .map(|(i, sp)| classify_row(&ctx, sp, &job, base_index + i as u64))
                            .collect::<Result<_, _>>()?;
                        for (row, status, was_verified, mismatch) in rows {
                            writer
                                .write_all(serde_json::to_string(&row).unwrap().as_bytes())
                                .and_then(|_| writer.write_all(b"\n"))
                                .map_err(|e| Error::InvalidSpec(format!("write failed: {e}")))?;
                            summary.total += 1;
                            match status {
                                Status::Maximal => summary.maximal += 1,
                                Status::Minimal => summary.minimal += 1,
                                Status::NotAttained => summary.not_attained += 1,
                                Status::HypothesesNotMet => summary.hypotheses_not_met += 1,
                            }
                            if was_verified {
                                summary.verified += 1;
                            }
                            if mismatch {
                                summary.mismatches += 1;
                            }
                        }
                        emitted += take as u64;
                        if truncated {
                            break 'grid;
                        }
                    }
                    // advance odometer
                    for slot in idx.iter_mut() {
                        *slot += 1;
                        if *slot < pool.len() {
                            continue 'tuples;
                        }
                        *slot = 0;
                    }
                    break;
                }
            }
        }
    }

    if truncated {
        summary.truncated = true;
        writer
            .write_all(b"{\"truncated\":true}\n")
            .map_err(|e| Error::InvalidSpec(format!("write failed: {e}")))?;
    }
    writer
        .flush()
        .map_err(|e| Error::InvalidSpec(format!("flush failed: {e}")))?;
    println!("{}", serde_json::to_string(&summary).unwrap());

    if truncated {
        return Err(Error::TooLarge(format!("grid exceeds {guard} specs; catalog truncated")));
    }
    Ok(())
}
