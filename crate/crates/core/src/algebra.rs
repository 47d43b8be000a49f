//! Dimension drop interval algebras `I[m0, m, m1]`, the four basic
//! homomorphisms between them, and the K-homology presentation.

use std::fmt;
use std::str::FromStr;

use crate::arithmetic::{divides, gcd};
use crate::error::{Error, Result};
use crate::scalar::Int;

/// `I[m0, m, m1]`: continuous `M_m`-valued functions on `[0, 1]` whose
/// endpoint values are inflated from `M_{m0}` and `M_{m1}`.
///
/// Only the three sizes are stored. Construction requires `m0 | m` and
/// `m1 | m`; algebras whose endpoints are not coprime, or where `m0 * m1`
/// does not divide `m`, can be built but are rejected by every K-theoretic
/// operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DimensionDropAlgebra<I> {
    m0: I,
    m: I,
    m1: I,
}

impl<I: Int> DimensionDropAlgebra<I> {
    pub fn new(m0: I, m: I, m1: I) -> Result<Self> {
        if m0 <= I::zero() || m <= I::zero() || m1 <= I::zero() {
            return Err(Error::InvalidAlgebra(format!(
                "sizes must be positive, got ({m0},{m},{m1})"
            )));
        }
        if !divides(m0, m) || !divides(m1, m) {
            return Err(Error::InvalidAlgebra(format!(
                "endpoint sizes must divide m, got ({m0},{m},{m1})"
            )));
        }
        Ok(Self { m0, m, m1 })
    }

    pub fn m0(&self) -> I {
        self.m0
    }

    pub fn m(&self) -> I {
        self.m
    }

    pub fn m1(&self) -> I {
        self.m1
    }

    pub fn coprime_endpoints(&self) -> bool {
        gcd(self.m0, self.m1).is_one()
    }

    pub fn full_drop(&self) -> bool {
        divides(self.m0 * self.m1, self.m)
    }

    pub fn is_valid(&self) -> bool {
        self.coprime_endpoints() && self.full_drop()
    }

    pub fn require_valid(&self) -> Result<()> {
        if !self.coprime_endpoints() {
            return Err(Error::InvalidAlgebra(format!(
                "{self}: endpoint sizes are not coprime"
            )));
        }
        if !self.full_drop() {
            return Err(Error::InvalidAlgebra(format!(
                "{self}: m0*m1 does not divide m"
            )));
        }
        Ok(())
    }

    /// `m / (m0 * m1)`, the order of the cyclic group `K1`.
    pub fn k1_order(&self) -> Result<I> {
        self.require_valid()?;
        Ok(self.s())
    }

    /// `m / (m0 * m1)` without the validity check; callers have already
    /// established validity.
    pub(crate) fn s(&self) -> I {
        self.m / (self.m0 * self.m1)
    }

    pub fn same_endpoints(&self, other: &Self) -> bool {
        self.m0 == other.m0 && self.m1 == other.m1
    }

    /// Checks that `self.m` divides `p`.
    pub fn require_divides(&self, p: I) -> Result<()> {
        if p < I::lit(2) {
            return Err(Error::BadModulus(p.to_string()));
        }
        if !divides(self.m, p) {
            return Err(Error::ModulusNotMultiple {
                p: p.to_string(),
                size: self.m.to_string(),
            });
        }
        Ok(())
    }
}

impl<I: Int> fmt::Display for DimensionDropAlgebra<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I[{},{},{}]", self.m0, self.m, self.m1)
    }
}

/// Parses the literal `"m0,m,m1"`.
impl<I: Int> FromStr for DimensionDropAlgebra<I> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let v = parse_int_list::<I>(s, 3)?;
        Self::new(v[0], v[1], v[2])
    }
}

/// Parses a comma separated list of exactly `n` integers. A leading `=` is
/// tolerated so that negative leading values can be passed on a command line.
pub fn parse_int_list<I: Int>(s: &str, n: usize) -> Result<Vec<I>> {
    let s = s.trim();
    let s = s.strip_prefix('=').unwrap_or(s);
    let vals = s
        .split(',')
        .map(|t| {
            I::from_str_radix(t.trim(), 10)
                .map_err(|_| Error::Mismatch(format!("cannot parse integer {t:?} in {s:?}")))
        })
        .collect::<Result<Vec<I>>>()?;
    if vals.len() != n {
        return Err(Error::Mismatch(format!(
            "expected {n} comma separated integers, got {} in {s:?}",
            vals.len()
        )));
    }
    Ok(vals)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HomKind {
    Delta0,
    Delta1,
    Id,
    IdBar,
}

impl HomKind {
    pub const ALL: [HomKind; 4] = [
        HomKind::Delta0,
        HomKind::Delta1,
        HomKind::Id,
        HomKind::IdBar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            HomKind::Delta0 => "delta0",
            HomKind::Delta1 => "delta1",
            HomKind::Id => "id",
            HomKind::IdBar => "idbar",
        }
    }
}

impl FromStr for HomKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        HomKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Mismatch(format!("unknown homomorphism kind {s:?}")))
    }
}

impl fmt::Display for HomKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One of the four basic homomorphisms `I[m0,m,m1] -> I[m0,n,m1] ⊗ M_k`:
/// the two endpoint evaluations, the identity pattern and the flipped
/// identity pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasicHom<I> {
    pub kind: HomKind,
    pub source: DimensionDropAlgebra<I>,
    pub target: DimensionDropAlgebra<I>,
}

impl<I: Int> BasicHom<I> {
    pub fn new(
        kind: HomKind,
        source: DimensionDropAlgebra<I>,
        target: DimensionDropAlgebra<I>,
    ) -> Result<Self> {
        if !source.same_endpoints(&target) {
            return Err(Error::AlgebraMismatch(format!(
                "{source} and {target} have different endpoint sizes"
            )));
        }
        if kind != HomKind::Id && !source.coprime_endpoints() {
            return Err(Error::InvalidAlgebra(format!(
                "{kind} needs coprime endpoint sizes, got {source}"
            )));
        }
        Ok(Self {
            kind,
            source,
            target,
        })
    }
}

/// Class `u [V0] + v [V1]` in the K-homology `K^0` of an algebra, where
/// `V0`, `V1` are the endpoint irreducible representations. Two pairs
/// represent the same class when they differ by a multiple of
/// `(m/m0, -m/m1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KHomologyClass<I> {
    pub u: I,
    pub v: I,
    pub algebra: DimensionDropAlgebra<I>,
}

impl<I: Int> KHomologyClass<I> {
    pub fn new(u: I, v: I, algebra: DimensionDropAlgebra<I>) -> Self {
        Self { u, v, algebra }
    }

    fn relation(&self) -> (I, I) {
        let a = self.algebra;
        (a.m / a.m0, a.m / a.m1)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch(format!(
                "{} vs {}",
                self.algebra, other.algebra
            )));
        }
        Ok(Self::new(self.u + other.u, self.v + other.v, self.algebra))
    }

    pub fn scale(&self, k: I) -> Self {
        Self::new(self.u * k, self.v * k, self.algebra)
    }
}

/// Equality of K-homology classes modulo the relation `(m/m0)[V0] = (m/m1)[V1]`.
pub fn khomology_equal<I: Int>(a: &KHomologyClass<I>, b: &KHomologyClass<I>) -> Result<bool> {
    if a.algebra != b.algebra {
        return Err(Error::AlgebraMismatch(format!(
            "{} vs {}",
            a.algebra, b.algebra
        )));
    }
    let (ru, rv) = a.relation();
    let du = a.u - b.u;
    let dv = a.v - b.v;
    if !du.is_multiple_of(&ru) {
        return Ok(false);
    }
    let t = du / ru;
    Ok(dv == -(t * rv))
}

/// Whether the class is represented by a finite dimensional representation,
/// i.e. some `t` makes both `u + t*m/m0` and `v - t*m/m1` non-negative.
pub fn khomology_positive<I: Int>(c: &KHomologyClass<I>) -> Result<bool> {
    c.algebra.require_valid()?;
    Ok(khomology_shift(c).is_some())
}

/// The smallest shift `t` witnessing positivity, if any.
pub fn khomology_shift<I: Int>(c: &KHomologyClass<I>) -> Option<I> {
    let (ru, rv) = c.relation();
    // u + t*ru >= 0  <=>  t >= ceil(-u / ru);  v - t*rv >= 0  <=>  t <= floor(v / rv)
    let lo = (-c.u).div_ceil(&ru);
    let hi = c.v.div_floor(&rv);
    (lo <= hi).then_some(lo)
}
