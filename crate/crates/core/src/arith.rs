//! Pure-integer arithmetic: (p,r)-admissibility, the invariant I(d_1,...,d_s)
//! by three independent routes, Sun's zero criterion, and the Weil bound.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::intmath::{is_prime, multiplicative_order};

/// Guard on the direct enumeration of I.
pub const I_DIRECT_GUARD: u128 = 100_000_000;
/// Subset-enumeration guard for the inclusion-exclusion route.
pub const MAX_VARIABLES: usize = 25;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibilityResult {
    pub d: u64,
    pub p: u64,
    /// Minimal r with d | p^r + 1, when one exists.
    pub r: Option<u64>,
}

/// Minimal r with p^r = -1 (mod d), scanning r = 1.. up to ord_d(p);
/// by periodicity of p^r mod d no larger r can work if none of these do.
pub fn minimal_admissible_r(d: u64, p: u64) -> Result<AdmissibilityResult> {
    if d == 0 || !is_prime(p) {
        return Err(Error::InvalidSpec(format!("need d >= 1 and p prime, got d={d} p={p}")));
    }
    if d % p == 0 && d > 1 {
        return Err(Error::PDividesD { d, p });
    }
    if d == 1 {
        return Ok(AdmissibilityResult { d, p, r: Some(1) });
    }
    let ord = multiplicative_order(p % d, d);
    let target = d - 1; // -1 mod d
    let mut pw = 1u64;
    for r in 1..=ord {
        pw = pw * (p % d) % d;
        if pw == target % d || (d == 2 && pw == 1) {
            // d = 2: p odd means p = 1 = -1 (mod 2)
            return Ok(AdmissibilityResult { d, p, r: Some(r) });
        }
    }
    Ok(AdmissibilityResult { d, p, r: None })
}

fn check_degrees(d: &[u64]) -> Result<()> {
    if d.len() < 2 {
        return Err(Error::TooManyVariables(d.len(), 2));
    }
    if d.iter().any(|&di| di < 2) {
        return Err(Error::InvalidSpec("each d_i must be >= 2".into()));
    }
    Ok(())
}

/// I by direct enumeration of tuples 1 <= y_i <= d_i - 1 with
/// sum y_i / d_i an integer. The oracle route.
pub fn i_count_direct(d: &[u64]) -> Result<u64> {
    check_degrees(d)?;
    let total: u128 = d.iter().map(|&di| (di - 1) as u128).product();
    if total > I_DIRECT_GUARD {
        return Err(Error::TooLarge(format!("prod(d_i - 1) = {total} exceeds {I_DIRECT_GUARD}")));
    }
    let lcm: u128 = d.iter().fold(1u128, |acc, &di| acc.lcm(&(di as u128)));
    let weights: Vec<u128> = d.iter().map(|&di| lcm / di as u128).collect();
    let mut count = 0u64;
    let mut tuple = vec![1u64; d.len()];
    'outer: loop {
        let sum: u128 = tuple.iter().zip(&weights).map(|(&y, &w)| y as u128 * w).sum();
        if sum % lcm == 0 {
            count += 1;
        }
        for (slot, &di) in tuple.iter_mut().zip(d) {
            *slot += 1;
            if *slot < di {
                continue 'outer;
            }
            *slot = 1;
        }
        break;
    }
    Ok(count)
}

/// I via the lcm formula: (-1)^s / D * sum_{m=1}^{D} prod_{d_i | m} (1 - d_i).
/// The default route; O(D s).
pub fn i_count_lcm(d: &[u64]) -> Result<u64> {
    check_degrees(d)?;
    let lcm: u128 = d.iter().fold(1u128, |acc, &di| acc.lcm(&(di as u128)));
    if lcm > I_DIRECT_GUARD {
        return Err(Error::TooLarge(format!("lcm(d) = {lcm} exceeds {I_DIRECT_GUARD}")));
    }
    let mut sum: i128 = 0;
    for m in 1..=lcm as u64 {
        let mut term: i128 = 1;
        for &di in d {
            if m as u128 % di as u128 == 0 {
                term = term
                    .checked_mul(1 - di as i128)
                    .ok_or_else(|| Error::TooLarge("overflow in lcm-formula term".into()))?;
            }
        }
        sum = sum
            .checked_add(term)
            .ok_or_else(|| Error::TooLarge("overflow in lcm-formula sum".into()))?;
    }
    if d.len() % 2 == 1 {
        sum = -sum;
    }
    if sum % lcm as i128 != 0 || sum < 0 {
        return Err(Error::NonIntegralResult(format!(
            "lcm formula gave {sum} not divisible by D = {lcm}"
        )));
    }
    Ok((sum / lcm as i128) as u64)
}

/// I via inclusion-exclusion over the 2^s subsets of indices.
pub fn i_count_inclusion_exclusion(d: &[u64]) -> Result<u64> {
    check_degrees(d)?;
    let s = d.len();
    if s > MAX_VARIABLES {
        return Err(Error::TooManyVariables(s, MAX_VARIABLES));
    }
    // (-1)^s + (-1)^s sum_r (-1)^r sum_{subsets of size r} prod d / lcm
    let mut total: i128 = 1; // empty subset contributes 1 = (-1)^0 * 1
    for mask in 1u32..(1 << s) {
        let mut prod: u128 = 1;
        let mut lcm: u128 = 1;
        for (i, &di) in d.iter().enumerate() {
            if mask >> i & 1 == 1 {
                prod = prod
                    .checked_mul(di as u128)
                    .ok_or_else(|| Error::TooLarge("overflow in subset product".into()))?;
                lcm = lcm.lcm(&(di as u128));
            }
        }
        let term = (prod / lcm) as i128;
        if mask.count_ones() % 2 == 1 {
            total -= term;
        } else {
            total += term;
        }
    }
    if s % 2 == 1 {
        total = -total;
    }
    if total < 0 {
        return Err(Error::NonIntegralResult(format!("inclusion-exclusion gave {total} < 0")));
    }
    Ok(total as u64)
}

/// Sun's criterion: for s > 2, I(d) = 0 iff (a) some d_i is coprime to the
/// product of the others, or (b) the even entries d_{i_1},...,d_{i_k} have
/// k odd, the d_{i_j}/2 pairwise coprime, and every even entry coprime to
/// every odd entry.
pub fn i_is_zero_sun(d: &[u64]) -> Result<bool> {
    check_degrees(d)?;
    if d.len() <= 2 {
        return Err(Error::STooSmall(d.len()));
    }
    // clause (a)
    for (i, &di) in d.iter().enumerate() {
        let coprime_to_rest = d
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .all(|(_, &dj)| di.gcd(&dj) == 1);
        if coprime_to_rest {
            return Ok(true);
        }
    }
    // clause (b)
    let evens: Vec<u64> = d.iter().copied().filter(|&x| x % 2 == 0).collect();
    let odds: Vec<u64> = d.iter().copied().filter(|&x| x % 2 == 1).collect();
    if evens.is_empty() || evens.len() % 2 == 0 {
        return Ok(false);
    }
    for (i, &a) in evens.iter().enumerate() {
        for &b in &evens[i + 1..] {
            if (a / 2).gcd(&(b / 2)) != 1 {
                return Ok(false);
            }
        }
    }
    for &e in &evens {
        for &o in &odds {
            if e.gcd(&o) != 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeilBoundResult {
    pub q: u64,
    pub s: usize,
    pub d: Vec<u64>,
    pub i_value: u64,
    /// q^{(s-2)/2} [ sqrt(q) prod(d_i - 1) - (sqrt(q) - 1) I ].
    pub radius: f64,
    /// Integer-clamped endpoints; lower additionally clamped at 0.
    pub lower: u128,
    pub upper: u128,
    /// True when the true lower endpoint is negative (so `lower` = 0 is a
    /// clamp, not an attainable Weil endpoint).
    pub clamped: bool,
    /// True when n is even, so the endpoints are exact integers.
    pub exact: bool,
}

/// The two-sided Weil interval around q^{s-1}.
pub fn weil_bound(p: u64, n: u32, s: usize, d: &[u64]) -> Result<WeilBoundResult> {
    check_degrees(d)?;
    if d.len() != s {
        return Err(Error::InvalidSpec(format!("s = {s} but {} degrees given", d.len())));
    }
    let q = p
        .checked_pow(n)
        .ok_or_else(|| Error::TooLarge("q overflow".into()))?;
    let qm1 = q - 1;
    for &di in d {
        if qm1 % di != 0 {
            return Err(Error::DNotDivisor { d: di, qm1 });
        }
    }
    let i_value = i_count_lcm(d)?;
    let prod: u128 = d.iter().map(|&di| (di - 1) as u128).product();
    let center: u128 = (q as u128)
        .checked_pow(s as u32 - 1)
        .ok_or_else(|| Error::TooLarge("q^{s-1} overflow".into()))?;

    // radius = (prod - I) q^{(s-1)/2} + I q^{(s-2)/2}; a term is an exact
    // integer when its exponent n(s-1)/2 resp. n(s-2)/2 is integral or its
    // coefficient vanishes. prod >= I always (I counts a subset of the box).
    let excess = prod - i_value as u128;
    let e1 = n as u64 * (s as u64 - 1);
    let e2 = n as u64 * (s as u64 - 2);
    let exact = (excess == 0 || e1 % 2 == 0) && (i_value == 0 || e2 % 2 == 0);

    if exact {
        let mut radius: u128 = 0;
        if excess > 0 {
            radius += excess * (p as u128).pow((e1 / 2) as u32);
        }
        if i_value > 0 {
            radius += i_value as u128 * (p as u128).pow((e2 / 2) as u32);
        }
        let lower = center.saturating_sub(radius);
        let upper = center + radius;
        Ok(WeilBoundResult {
            q,
            s,
            d: d.to_vec(),
            i_value,
            radius: radius as f64,
            lower,
            upper,
            clamped: radius > center,
            exact: true,
        })
    } else {
        let sq = (q as f64).sqrt();
        let radius = sq.powi(s as i32 - 2) * (sq * prod as f64 - (sq - 1.0) * i_value as f64);
        // tiny slack so float roundoff never narrows the interval
        let slack = 1e-9 * radius.max(1.0);
        let lower = (center as f64 - radius - slack).ceil().max(0.0) as u128;
        let upper = (center as f64 + radius + slack).floor() as u128;
        Ok(WeilBoundResult {
            q,
            s,
            d: d.to_vec(),
            i_value,
            radius,
            lower,
            upper,
            clamped: radius > center as f64,
            exact: false,
        })
    }
}
