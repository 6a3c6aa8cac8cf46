//! Explicit finite fields F_{p^n} with full discrete-log and trace tables.
//!
//! A [`FieldContext`] materializes one field: the defining modulus, a fixed
//! primitive element `g`, the table `exp[k] = g^k`, its inverse `dlog`, and
//! the absolute trace of every element. All construction choices are
//! deterministic so fixtures are reproducible bit-for-bit: the modulus is the
//! lexicographically first irreducible monic polynomial and `g` is the first
//! element in encode order that generates the multiplicative group.
//!
//! Elements are canonically encoded as integers in `[0, q)` via base-p
//! digits: the digit of p^k is the coefficient of x^k.

use crate::error::{Error, Result};
use crate::intmath::{is_prime, prime_divisors};

/// Default cap on q = p^n; dlog tables and O(q) sums stay interactive below it.
pub const DEFAULT_Q_CAP: u64 = 1 << 20;

/// Defining data of F_{p^n}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldParams {
    pub p: u64,
    pub n: u32,
    pub q: u64,
    /// Monic degree-n polynomial over Z_p, ascending coefficients, length n+1.
    pub modulus: Vec<u64>,
}

/// One element of F_q in canonical form: length-n coefficient vector over Z_p.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

const NO_DLOG: u32 = u32::MAX;

/// A fully materialized finite field, immutable after construction.
#[derive(Debug, Clone)]
pub struct FieldContext {
    params: FieldParams,
    g: FieldElement,
    g_index: u64,
    /// exp[k] = encoding of g^k, k in [0, q-1).
    exp: Vec<u32>,
    /// dlog[encoding] = k with g^k = element; NO_DLOG for zero.
    dlog: Vec<u32>,
    /// Absolute trace to F_p, indexed by encoding.
    trace_table: Vec<u64>,
}

// ---- dense polynomial arithmetic over Z_p (construction only) ----

fn poly_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    poly_rem(&mut prod, f, p);
    prod
}

/// Reduce `a` modulo the monic polynomial `f` in place.
fn poly_rem(a: &mut Vec<u64>, f: &[u64], p: u64) {
    let deg_f = f.len() - 1;
    while a.len() > deg_f {
        let lead = *a.last().unwrap();
        let shift = a.len() - 1 - deg_f;
        if lead != 0 {
            for (i, &fi) in f.iter().enumerate() {
                let idx = shift + i;
                a[idx] = (a[idx] + p * p - (lead * fi) % p) % p;
            }
        }
        a.pop();
    }
    poly_trim(a);
}

fn poly_pow_mod(base: &[u64], mut exp: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = base.to_vec();
    poly_rem(&mut b, f, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = poly_mul_mod(&acc, &b, f, p);
        }
        b = poly_mul_mod(&b, &b, f, p);
        exp >>= 1;
    }
    acc
}

fn poly_gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !b.is_empty() {
        // make b monic so poly_rem applies
        let lead = *b.last().unwrap();
        if lead != 1 {
            let inv = crate::intmath::pow_mod(lead, p - 2, p);
            for c in b.iter_mut() {
                *c = *c * inv % p;
            }
        }
        poly_rem(&mut a, &b, p);
        std::mem::swap(&mut a, &mut b);
    }
    a
}

/// Irreducibility over F_p by the Frobenius-gcd criterion:
/// x^{p^n} = x mod f, and gcd(x^{p^{n/l}} - x, f) = 1 for every prime l | n.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = f.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    // frob[i] = x^{p^i} mod f
    let x = vec![0u64, 1];
    let mut frob = vec![x.clone()];
    for _ in 0..n {
        let next = poly_pow_mod(frob.last().unwrap(), p, f, p);
        frob.push(next);
    }
    if frob[n] != x {
        return false;
    }
    for l in prime_divisors(n as u64) {
        let k = n / l as usize;
        let mut h = frob[k].clone();
        // h - x
        if h.len() < 2 {
            h.resize(2, 0);
        }
        h[1] = (h[1] + p - 1) % p;
        poly_trim(&mut h);
        let g = poly_gcd(h, f.to_vec(), p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

impl FieldContext {
    /// Build F_{p^n} with the default size cap. If `modulus` is omitted the
    /// lexicographically first monic irreducible polynomial is used.
    pub fn build(p: u64, n: u32, modulus: Option<&[u64]>) -> Result<FieldContext> {
        Self::build_capped(p, n, modulus, DEFAULT_Q_CAP)
    }

    pub fn build_capped(p: u64, n: u32, modulus: Option<&[u64]>, cap: u64) -> Result<FieldContext> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::BadModulus("extension degree must be >= 1".into()));
        }
        let mut q: u64 = 1;
        for _ in 0..n {
            q = q
                .checked_mul(p)
                .filter(|&v| v <= cap)
                .ok_or(Error::FieldTooLarge { q: u64::MAX, cap })?;
        }
        if q > cap {
            return Err(Error::FieldTooLarge { q, cap });
        }

        let modulus = match modulus {
            Some(m) => {
                if m.len() != n as usize + 1 {
                    return Err(Error::BadModulus(format!(
                        "expected {} coefficients, got {}",
                        n + 1,
                        m.len()
                    )));
                }
                let f: Vec<u64> = m.iter().map(|&c| c % p).collect();
                if *f.last().unwrap() != 1 {
                    return Err(Error::BadModulus("modulus must be monic".into()));
                }
                if !is_irreducible(&f, p) {
                    return Err(Error::ModulusReducible(p));
                }
                f
            }
            None => find_irreducible(p, n, q),
        };

        let params = FieldParams { p, n, q, modulus };
        let g_index = find_primitive_element(&params)?;
        Self::from_generator(params, g_index)
    }

    /// Materialize tables for a given primitive element encoding. Errors if
    /// the element does not generate the multiplicative group.
    pub fn from_generator(params: FieldParams, g_index: u64) -> Result<FieldContext> {
        let q = params.q;
        let p = params.p;
        let n = params.n as usize;
        let qm1 = q - 1;
        let g_poly = index_to_poly(g_index, p, n);

        let mut exp = vec![0u32; qm1 as usize];
        let mut dlog = vec![NO_DLOG; q as usize];
        let mut e = vec![1u64];
        for k in 0..qm1 {
            let idx = poly_to_index(&e, p);
            if dlog[idx as usize] != NO_DLOG {
                return Err(Error::InvalidSpec(format!(
                    "element {} is not primitive",
                    g_index
                )));
            }
            exp[k as usize] = idx as u32;
            dlog[idx as usize] = k as u32;
            e = poly_mul_mod(&e, &g_poly, &params.modulus, p);
        }
        if poly_to_index(&e, p) != 1 {
            return Err(Error::InvalidSpec(format!(
                "element {} is not primitive",
                g_index
            )));
        }

        // trace(g^k) = sum_i g^{k p^i}, summed digitwise; the result lies in
        // the prime subfield so only the constant digit survives.
        let mut trace_table = vec![0u64; q as usize];
        let mut frob_exp = vec![0u64; params.n as usize]; // p^i mod (q-1)
        let mut pe = 1u64 % qm1.max(1);
        for fe in frob_exp.iter_mut() {
            *fe = pe;
            pe = pe * (p % qm1.max(1)) % qm1.max(1);
        }
        for k in 0..qm1 {
            let mut acc = vec![0u64; n];
            for &fe in &frob_exp {
                let conj_idx = exp[((k as u128 * fe as u128) % qm1 as u128) as usize];
                let digits = index_to_poly(conj_idx as u64, p, n);
                for (a, d) in acc.iter_mut().zip(digits.iter().chain(std::iter::repeat(&0))) {
                    *a = (*a + d) % p;
                }
            }
            debug_assert!(acc.iter().skip(1).all(|&c| c == 0));
            trace_table[exp[k as usize] as usize] = acc[0];
        }

        let g = FieldElement {
            coeffs: pad(index_to_poly(g_index, p, n), n),
        };
        Ok(FieldContext {
            params,
            g,
            g_index,
            exp,
            dlog,
            trace_table,
        })
    }

    /// Rebuild this context around the alternative generator g^k
    /// (requires gcd(k, q-1) = 1). Used to check generator invariance.
    pub fn with_generator_exponent(&self, k: u64) -> Result<FieldContext> {
        let qm1 = self.params.q - 1;
        if num_integer::gcd(k % qm1.max(1), qm1) != 1 {
            return Err(Error::InvalidSpec(format!(
                "g^{} does not generate: gcd({}, {}) > 1",
                k, k, qm1
            )));
        }
        Self::from_generator(self.params.clone(), self.exp[(k % qm1) as usize] as u64)
    }

    pub fn params(&self) -> &FieldParams {
        &self.params
    }

    pub fn p(&self) -> u64 {
        self.params.p
    }

    pub fn n(&self) -> u32 {
        self.params.n
    }

    pub fn q(&self) -> u64 {
        self.params.q
    }

    /// The fixed primitive element g.
    pub fn generator(&self) -> &FieldElement {
        &self.g
    }

    pub fn generator_index(&self) -> u64 {
        self.g_index
    }

    pub fn same_field(&self, other: &FieldContext) -> bool {
        self.params == other.params && self.g_index == other.g_index
    }

    // ---- index-level operations (encoding in [0, q)) ----

    pub fn idx_add(&self, x: u64, y: u64) -> u64 {
        let p = self.params.p;
        let mut out = 0u64;
        let (mut x, mut y, mut place) = (x, y, 1u64);
        for _ in 0..self.params.n {
            out += (x % p + y % p) % p * place;
            x /= p;
            y /= p;
            place *= p;
        }
        out
    }

    pub fn idx_neg(&self, x: u64) -> u64 {
        let p = self.params.p;
        let mut out = 0u64;
        let (mut x, mut place) = (x, 1u64);
        for _ in 0..self.params.n {
            out += (p - x % p) % p * place;
            x /= p;
            place *= p;
        }
        out
    }

    pub fn idx_sub(&self, x: u64, y: u64) -> u64 {
        self.idx_add(x, self.idx_neg(y))
    }

    pub fn idx_mul(&self, x: u64, y: u64) -> u64 {
        if x == 0 || y == 0 {
            return 0;
        }
        let qm1 = self.params.q - 1;
        let k = (self.dlog[x as usize] as u64 + self.dlog[y as usize] as u64) % qm1;
        self.exp[k as usize] as u64
    }

    pub fn idx_inv(&self, x: u64) -> Result<u64> {
        if x == 0 {
            return Err(Error::DivisionByZero);
        }
        let qm1 = self.params.q - 1;
        let k = (qm1 - self.dlog[x as usize] as u64) % qm1;
        Ok(self.exp[k as usize] as u64)
    }

    /// x^m by index, m any integer (negative needs x != 0). 0^0 = 1.
    pub fn idx_pow(&self, x: u64, m: i64) -> Result<u64> {
        if x == 0 {
            return match m.cmp(&0) {
                std::cmp::Ordering::Greater => Ok(0),
                std::cmp::Ordering::Equal => Ok(1),
                std::cmp::Ordering::Less => Err(Error::DivisionByZero),
            };
        }
        let qm1 = (self.params.q - 1) as i128;
        let k = (self.dlog[x as usize] as i128 * m as i128).rem_euclid(qm1);
        Ok(self.exp[k as usize] as u64)
    }

    pub fn idx_dlog(&self, x: u64) -> Result<u64> {
        if x == 0 {
            return Err(Error::ZeroElement);
        }
        Ok(self.dlog[x as usize] as u64)
    }

    pub fn idx_trace(&self, x: u64) -> u64 {
        self.trace_table[x as usize]
    }

    /// g^k by exponent, k reduced mod q-1.
    pub fn idx_exp(&self, k: u64) -> u64 {
        self.exp[(k % (self.params.q - 1)) as usize] as u64
    }

    // ---- element-level operations ----

    pub fn decode(&self, i: u64) -> Result<FieldElement> {
        if i >= self.params.q {
            return Err(Error::OutOfRange(i, self.params.q));
        }
        Ok(FieldElement {
            coeffs: pad(
                index_to_poly(i, self.params.p, self.params.n as usize),
                self.params.n as usize,
            ),
        })
    }

    pub fn encode(&self, x: &FieldElement) -> u64 {
        let mut out = 0u64;
        for &c in x.coeffs.iter().rev() {
            out = out * self.params.p + c % self.params.p;
        }
        out
    }

    pub fn zero(&self) -> FieldElement {
        self.decode(0).unwrap()
    }

    pub fn one(&self) -> FieldElement {
        self.decode(1).unwrap()
    }

    pub fn add(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        self.decode(self.idx_add(self.encode(x), self.encode(y))).unwrap()
    }

    pub fn sub(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        self.decode(self.idx_sub(self.encode(x), self.encode(y))).unwrap()
    }

    pub fn neg(&self, x: &FieldElement) -> FieldElement {
        self.decode(self.idx_neg(self.encode(x))).unwrap()
    }

    pub fn mul(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        self.decode(self.idx_mul(self.encode(x), self.encode(y))).unwrap()
    }

    pub fn inv(&self, x: &FieldElement) -> Result<FieldElement> {
        Ok(self.decode(self.idx_inv(self.encode(x))?).unwrap())
    }

    pub fn pow(&self, x: &FieldElement, m: i64) -> Result<FieldElement> {
        Ok(self.decode(self.idx_pow(self.encode(x), m)?).unwrap())
    }

    pub fn dlog(&self, x: &FieldElement) -> Result<u64> {
        self.idx_dlog(self.encode(x))
    }

    pub fn trace(&self, x: &FieldElement) -> u64 {
        self.idx_trace(self.encode(x))
    }
}

fn pad(mut v: Vec<u64>, n: usize) -> Vec<u64> {
    v.resize(n, 0);
    v
}

fn index_to_poly(i: u64, p: u64, n: usize) -> Vec<u64> {
    let mut digits = Vec::with_capacity(n);
    let mut i = i;
    while i > 0 {
        digits.push(i % p);
        i /= p;
    }
    digits
}

fn poly_to_index(poly: &[u64], p: u64) -> u64 {
    let mut out = 0u64;
    for &c in poly.iter().rev() {
        out = out * p + c;
    }
    out
}

/// Lexicographically first monic irreducible polynomial of degree n over F_p,
/// ordered by the integer encoding of the non-leading coefficients.
fn find_irreducible(p: u64, n: u32, q: u64) -> Vec<u64> {
    for m in 0..q {
        let mut f = pad(index_to_poly(m, p, n as usize), n as usize);
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over F_p")
}

/// Smallest element in encode order whose multiplicative order is q-1.
fn find_primitive_element(params: &FieldParams) -> Result<u64> {
    let qm1 = params.q - 1;
    let primes = prime_divisors(qm1);
    for idx in 1..params.q {
        let e = index_to_poly(idx, params.p, params.n as usize);
        let full = poly_pow_mod(&e, qm1, &params.modulus, params.p);
        if poly_to_index(&full, params.p) != 1 {
            continue; // only possible when idx encodes a non-unit, which cannot happen
        }
        if primes
            .iter()
            .all(|&l| poly_to_index(&poly_pow_mod(&e, qm1 / l, &params.modulus, params.p), params.p) != 1)
        {
            return Ok(idx);
        }
    }
    Err(Error::InvalidSpec("no primitive element found".into()))
}
