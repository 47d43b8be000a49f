//! Exact integer helpers: gcd, canonical Bézout pairs, residues.

use crate::error::{Error, Result};
use crate::scalar::Int;

/// Bézout coefficients for coprime endpoint sizes, normalised so that
/// `beta0 >= 0`, `beta1 <= 0` and `beta0` is as small as possible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BezoutPair<I> {
    pub beta0: I,
    pub beta1: I,
}

impl<I: Int> BezoutPair<I> {
    /// `beta0 * m0 + beta1 * m1`.
    pub fn combine(&self, m0: I, m1: I) -> I {
        self.beta0 * m0 + self.beta1 * m1
    }
}

/// Non-negative gcd; `gcd(0, 0) = 0`.
pub fn gcd<I: Int>(a: I, b: I) -> I {
    a.gcd(&b)
}

pub fn lcm<I: Int>(a: I, b: I) -> I {
    a.lcm(&b)
}

/// Representative of `v` modulo `p` in `[0, p)`.
pub fn canonical_residue<I: Int>(v: I, p: I) -> Result<I> {
    if p < I::lit(2) {
        return Err(Error::BadModulus(p.to_string()));
    }
    Ok(v.mod_floor(&p))
}

/// `v mod p` for any positive modulus, including `p = 1`.
pub(crate) fn modp<I: Int>(v: I, p: I) -> I {
    debug_assert!(p > I::zero());
    v.mod_floor(&p)
}

pub fn divides<I: Int>(d: I, v: I) -> bool {
    if d.is_zero() {
        v.is_zero()
    } else {
        v.is_multiple_of(&d)
    }
}

/// The minimal pair `(beta0, beta1)` with `beta0 * m0 + beta1 * m1 = 1`,
/// `beta0 >= 0` and `beta1 <= 0`.
pub fn bezout_canonical<I: Int>(m0: I, m1: I) -> Result<BezoutPair<I>> {
    if m0 <= I::zero() || m1 <= I::zero() {
        return Err(Error::InvalidAlgebra(format!(
            "endpoint sizes must be positive, got ({m0}, {m1})"
        )));
    }
    let eg = m0.extended_gcd(&m1);
    if !eg.gcd.is_one() {
        return Err(Error::NotCoprime(m0.to_string(), m1.to_string()));
    }
    // beta0 ranges over the class of m0^{-1} mod m1; beta0 = 0 is only
    // possible when m1 = 1, and then beta1 = 1 > 0, so step once.
    let mut beta0 = eg.x.mod_floor(&m1);
    if beta0.is_zero() {
        beta0 = m1;
    }
    let num = I::one() - beta0 * m0;
    debug_assert!(num.is_multiple_of(&m1));
    let beta1 = num / m1;
    debug_assert!(beta1 <= I::zero());
    Ok(BezoutPair { beta0, beta1 })
}
