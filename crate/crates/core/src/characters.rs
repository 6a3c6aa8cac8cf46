//! Multiplicative characters chi_d^j of F_q^*, the canonical additive
//! character psi, and the exact power-residue predicate theta_d.
//!
//! Characters are identified by the declared modulus `d` and exponent `j`,
//! not by the reduced order, so the box indexing of the character-sum count
//! stays literal. Every character, including the trivial one, takes the
//! value 0 at the zero element.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};

/// Numerical carrier for character values and sums.
pub type ComplexValue = Complex64;

/// exp(2 pi i k / m) with the argument reduced before the trig call.
pub fn root_of_unity(k: u64, m: u64) -> ComplexValue {
    let angle = 2.0 * std::f64::consts::PI * ((k % m) as f64) / (m as f64);
    ComplexValue::new(angle.cos(), angle.sin())
}

/// chi_d^j on a fixed field: value at g^k is exp(2 pi i jk / d), value at 0 is 0.
#[derive(Debug, Clone)]
pub struct MultiplicativeCharacter {
    ctx: Arc<FieldContext>,
    d: u64,
    j: u64,
}

impl MultiplicativeCharacter {
    /// chi_d^j; requires d | q-1 and 0 <= j < d.
    pub fn new(ctx: Arc<FieldContext>, d: u64, j: u64) -> Result<Self> {
        let qm1 = ctx.q() - 1;
        if d == 0 || qm1 % d != 0 {
            return Err(Error::DNotDivisor { d, qm1 });
        }
        if j >= d {
            return Err(Error::OutOfRange(j, d));
        }
        Ok(MultiplicativeCharacter { ctx, d, j })
    }

    /// The trivial character.
    pub fn trivial(ctx: Arc<FieldContext>) -> Self {
        MultiplicativeCharacter { ctx, d: 1, j: 0 }
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn j(&self) -> u64 {
        self.j
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    /// Canonical index t in [0, q-1): the character sending g^k to
    /// exp(2 pi i t k / (q-1)). Character products add these indices.
    pub fn canonical_index(&self) -> u64 {
        self.j % self.d * ((self.ctx.q() - 1) / self.d)
    }

    /// Exact order as a map: d / gcd(d, j).
    pub fn order(&self) -> u64 {
        self.d / num_integer::gcd(self.d, self.j)
    }

    pub fn is_trivial(&self) -> bool {
        self.j % self.d == 0
    }

    /// Value at the element with the given encoding.
    pub fn eval_index(&self, x: u64) -> ComplexValue {
        if x == 0 {
            return ComplexValue::new(0.0, 0.0);
        }
        let k = self.ctx.idx_dlog(x).expect("nonzero");
        root_of_unity(self.j % self.d * (k % self.d), self.d)
    }

    pub fn eval(&self, x: &FieldElement) -> Result<ComplexValue> {
        if x.coeffs().len() != self.ctx.n() as usize {
            return Err(Error::ContextMismatch);
        }
        Ok(self.eval_index(self.ctx.encode(x)))
    }
}

pub fn char_eval(chi: &MultiplicativeCharacter, x: &FieldElement) -> Result<ComplexValue> {
    chi.eval(x)
}

/// psi(x) = exp(2 pi i Tr(x) / p).
#[derive(Debug, Clone)]
pub struct CanonicalAdditiveCharacter {
    ctx: Arc<FieldContext>,
}

impl CanonicalAdditiveCharacter {
    pub fn new(ctx: Arc<FieldContext>) -> Self {
        CanonicalAdditiveCharacter { ctx }
    }

    pub fn eval_index(&self, x: u64) -> ComplexValue {
        root_of_unity(self.ctx.idx_trace(x), self.ctx.p())
    }

    pub fn eval(&self, x: &FieldElement) -> ComplexValue {
        self.eval_index(self.ctx.encode(x))
    }
}

/// theta_d(a, b) = 1 iff chi_d(a) = chi_d(b), decided exactly in the field:
/// a and b lie in the same coset of d-th powers iff d | dlog(a) - dlog(b).
pub fn theta(ctx: &FieldContext, d: u64, a: u64, b: u64) -> Result<u8> {
    let qm1 = ctx.q() - 1;
    if d == 0 || qm1 % d != 0 {
        return Err(Error::DNotDivisor { d, qm1 });
    }
    if a == 0 || b == 0 {
        return Err(Error::ZeroArgument);
    }
    let ka = ctx.idx_dlog(a)?;
    let kb = ctx.idx_dlog(b)?;
    Ok(u8::from((ka + qm1 - kb) % d == 0))
}

/// true iff x is a d-th power in F_q^*, i.e. x^{(q-1)/d} = 1.
pub fn is_dth_power(ctx: &FieldContext, d: u64, x: u64) -> Result<bool> {
    Ok(theta(ctx, d, x, 1)? == 1)
}
