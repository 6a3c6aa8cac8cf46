//! Small integer number theory shared by the field builder and the
//! pure-integer arithmetic module.

/// Deterministic Miller-Rabin for u64.
pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if m == p {
            return true;
        }
        if m % p == 0 {
            return false;
        }
    }
    let mut d = m - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, m);
        if x == 1 || x == m - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, m);
            if x == m - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Trial-division factorization, returned as (prime, multiplicity) pairs.
pub fn factor(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            let mut e = 0;
            while m % d == 0 {
                m /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// Distinct prime divisors.
pub fn prime_divisors(m: u64) -> Vec<u64> {
    factor(m).into_iter().map(|(p, _)| p).collect()
}

/// Multiplicative order of a modulo m (requires gcd(a, m) = 1).
pub fn multiplicative_order(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    // order divides the group exponent; shrink lambda = phi-like bound by
    // stripping primes while the power stays 1
    let phi: u64 = factor(m)
        .iter()
        .map(|&(p, e)| (p - 1) * p.pow(e - 1))
        .product();
    let mut ord = phi;
    for (p, _) in factor(phi) {
        while ord % p == 0 && pow_mod(a, ord / p, m) == 1 {
            ord /= p;
        }
    }
    debug_assert_eq!(pow_mod(a, ord, m), 1);
    ord
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(1021));
        assert!(!is_prime(1));
        assert!(!is_prime(1023));
        assert!(is_prime(4294967291));
    }

    #[test]
    fn factorization() {
        assert_eq!(factor(80), vec![(2, 4), (5, 1)]);
        assert_eq!(factor(1), vec![]);
        assert_eq!(prime_divisors(12), vec![2, 3]);
    }

    #[test]
    fn orders() {
        assert_eq!(multiplicative_order(3, 7), 6);
        assert_eq!(multiplicative_order(2, 7), 3);
        assert_eq!(multiplicative_order(2, 1), 1);
    }
}
