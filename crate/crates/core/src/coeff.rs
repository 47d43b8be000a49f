//! `K0(A; G_p)` with `G_p = Z ⊕ Z/p`: the group, its Dadarlat–Loring
//! positive cone, the cone generators and the Bockstein maps.
//!
//! Elements are written `(a, b, c)` where `a` is the `K0(A) = Z` coordinate
//! and `(b, c)` lies in
//! `Z(m, p) = {(b, c) in (Z/p)^2 : (m/m1) c - (m/m0) b ≡ 0 mod p}`.

use std::collections::BTreeSet;
use std::fmt;

use crate::algebra::DimensionDropAlgebra;
use crate::arithmetic::{canonical_residue, divides, gcd, modp};
use crate::error::{Error, Result};
use crate::scalar::{span, upto, Int};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GpElement<I> {
    pub algebra: DimensionDropAlgebra<I>,
    pub p: I,
    pub a: I,
    pub b: I,
    pub c: I,
}

impl<I: Int> GpElement<I> {
    /// Builds an element, reducing `b`, `c` to `[0, p)` and checking the
    /// defining congruence of `Z(m, p)`.
    pub fn new(algebra: DimensionDropAlgebra<I>, p: I, a: I, b: I, c: I) -> Result<Self> {
        let b = canonical_residue(b, p)?;
        let c = canonical_residue(c, p)?;
        if !in_zmp(&algebra, p, b, c) {
            return Err(Error::NotInGroup(format!(
                "({a},{b},{c}) in K0({algebra}; G_{p})"
            )));
        }
        Ok(Self {
            algebra,
            p,
            a,
            b,
            c,
        })
    }

    pub fn zero(algebra: DimensionDropAlgebra<I>, p: I) -> Result<Self> {
        Self::new(algebra, p, I::zero(), I::zero(), I::zero())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.algebra != o.algebra || self.p != o.p {
            return Err(Error::Mismatch(format!("{self} + {o}")));
        }
        Self::new(
            self.algebra,
            self.p,
            self.a + o.a,
            self.b + o.b,
            self.c + o.c,
        )
    }

    pub fn scale(&self, k: I) -> Self {
        Self {
            a: self.a * k,
            b: modp(self.b * k, self.p),
            c: modp(self.c * k, self.p),
            ..*self
        }
    }
}

impl<I: Int> fmt::Display for GpElement<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// The defining congruence of `Z(m, p)`.
pub fn in_zmp<I: Int>(a: &DimensionDropAlgebra<I>, p: I, b: I, c: I) -> bool {
    let v = (a.m() / a.m1()) * c - (a.m() / a.m0()) * b;
    divides(p, v)
}

/// All of `Z(m, p)` in lexicographic order.
pub fn zmp_members<I: Int>(a: &DimensionDropAlgebra<I>, p: I) -> Result<Vec<(I, I)>> {
    a.require_valid()?;
    canonical_residue(I::zero(), p)?;
    Ok(upto(p)
        .flat_map(|b| upto(p).map(move |c| (b, c)))
        .filter(|&(b, c)| in_zmp(a, p, b, c))
        .collect())
}

/// The two generators `(m0, m1)` and `(0, (p/m) m1)` of `Z(m, p)`, reduced.
/// Requires `m | p`.
pub fn zmp_generators<I: Int>(a: &DimensionDropAlgebra<I>, p: I) -> [(I, I); 2] {
    let q = p / a.m();
    [
        (modp(a.m0(), p), modp(a.m1(), p)),
        (I::zero(), modp(q * a.m1(), p)),
    ]
}

/// Dadarlat–Loring positivity: `a*m0/g >= b` and `a*m1/g >= c` with
/// `g = gcd(m0, m1)`, comparing against the canonical residues.
pub fn is_positive<I: Int>(e: &GpElement<I>) -> Result<bool> {
    let alg = &e.algebra;
    if e.b < I::zero() || e.b >= e.p || e.c < I::zero() || e.c >= e.p || !in_zmp(alg, e.p, e.b, e.c)
    {
        return Err(Error::NotInGroup(e.to_string()));
    }
    let g = gcd(alg.m0(), alg.m1());
    Ok(e.a * (alg.m0() / g) >= e.b && e.a * (alg.m1() / g) >= e.c)
}

fn require_cone_setting<I: Int>(a: &DimensionDropAlgebra<I>, p: I) -> Result<()> {
    a.require_valid()?;
    a.require_divides(p)
}

/// Classes of `δ0, δ1, id, id̄` from the unitized classical dimension drop
/// algebra into `A`, in that order.
pub fn cone_generators<I: Int>(a: &DimensionDropAlgebra<I>, p: I) -> Result<[GpElement<I>; 4]> {
    require_cone_setting(a, p)?;
    let q = p / a.m();
    let (m0, m1) = (a.m0(), a.m1());
    Ok([
        GpElement::new(*a, p, I::one(), I::zero(), I::zero())?,
        GpElement::new(*a, p, I::one(), m0, m1)?,
        GpElement::new(*a, p, q, I::zero(), q * m1)?,
        GpElement::new(*a, p, q, q * m0, I::zero())?,
    ])
}

/// `c1[δ0] + c2[δ1] + c3[id] + c4[id̄]`.
pub fn recombine<I: Int>(
    a: &DimensionDropAlgebra<I>,
    p: I,
    coeffs: [I; 4],
) -> Result<GpElement<I>> {
    let gens = cone_generators(a, p)?;
    gens.iter()
        .zip(coeffs)
        .try_fold(GpElement::zero(*a, p)?, |acc, (g, k)| acc.add(&g.scale(k)))
}

/// Writes a positive element as a non-negative combination of the four
/// cone generators. Uses the minimal lifts `l1 = b/m0`, `l2 = c/m1`.
pub fn cone_decompose<I: Int>(e: &GpElement<I>) -> Result<[I; 4]> {
    let a = &e.algebra;
    require_cone_setting(a, e.p)?;
    if !is_positive(e)? {
        return Err(Error::NotPositive(e.to_string()));
    }
    if !divides(a.m0(), e.b) || !divides(a.m1(), e.c) {
        return Err(Error::NotDecomposable(format!("{e} over {a}")));
    }
    let l1 = e.b / a.m0();
    let l2 = e.c / a.m1();
    let q = e.p / a.m();
    let (hi, lo) = if l1 >= l2 { (l1, l2) } else { (l2, l1) };
    if !divides(q, hi - lo) {
        return Err(Error::Internal(format!(
            "lift gap {} not divisible by p/m = {q}",
            hi - lo
        )));
    }
    let j = (hi - lo) / q;
    let out = if l1 >= l2 {
        [e.a - l1, l2, I::zero(), j]
    } else {
        [e.a - l2, l1, j, I::zero()]
    };
    debug_assert!(out.iter().all(|c| *c >= I::zero()));
    Ok(out)
}

/// `μ(k) = (k m0, k m1) mod p`.
pub fn bockstein_mu<I: Int>(a: &DimensionDropAlgebra<I>, p: I, k: I) -> Result<(I, I)> {
    Ok((
        canonical_residue(k * a.m0(), p)?,
        canonical_residue(k * a.m1(), p)?,
    ))
}

/// `((m/m1) c - (m/m0) b) / p`, before reduction into `K1`.
pub(crate) fn nu_lift<I: Int>(a: &DimensionDropAlgebra<I>, p: I, b: I, c: I) -> Result<I> {
    let v = (a.m() / a.m1()) * c - (a.m() / a.m0()) * b;
    if !divides(p, v) {
        return Err(Error::NotInGroup(format!(
            "({b},{c}) in Z({},{p}) of {a}",
            a.m()
        )));
    }
    Ok(v / p)
}

/// `ν(b, c)` as a residue modulo `|K1(A)| = m/(m0 m1)`.
pub fn bockstein_nu<I: Int>(a: &DimensionDropAlgebra<I>, p: I, bc: (I, I)) -> Result<I> {
    a.require_valid()?;
    a.require_divides(p)?;
    let b = canonical_residue(bc.0, p)?;
    let c = canonical_residue(bc.1, p)?;
    Ok(modp(nu_lift(a, p, b, c)?, a.s()))
}

/// Outcome of one segment of the exactness check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<String>,
}

impl Segment {
    fn new(name: &'static str, witness: Option<String>) -> Self {
        Self {
            name,
            passed: witness.is_none(),
            witness,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactnessReport {
    pub segments: [Segment; 3],
    pub zmp_order: usize,
    pub k1_order: String,
}

impl ExactnessReport {
    pub fn passed(&self) -> bool {
        self.segments.iter().all(|s| s.passed)
    }
}

/// Checks `K0 -p-> K0 -μ-> K0(;Z/p) -ν-> K1 -p-> K1` by enumeration:
/// `ker μ = pZ` on `k in [0, p^2]`, `im μ = ker ν` on `Z(m, p)`, and
/// `im ν = ker(×p)` on `Z/(m/(m0 m1))`.
pub fn verify_bockstein_exactness<I: Int>(
    a: &DimensionDropAlgebra<I>,
    p: I,
) -> Result<ExactnessReport> {
    require_cone_setting(a, p)?;
    let s = a.s();

    let ker_mu = span(I::zero(), p * p).find_map(|k| {
        let zero = bockstein_mu(a, p, k).ok()? == (I::zero(), I::zero());
        (zero != divides(p, k)).then(|| format!("k={k}: mu(k)=0 is {zero}"))
    });

    let members = zmp_members(a, p)?;
    let image: BTreeSet<(I, I)> = upto(p).filter_map(|k| bockstein_mu(a, p, k).ok()).collect();
    let mut kernel = BTreeSet::new();
    let mut nu_values = BTreeSet::new();
    for &(b, c) in &members {
        let v = bockstein_nu(a, p, (b, c))?;
        if v.is_zero() {
            kernel.insert((b, c));
        }
        nu_values.insert(v);
    }
    let mid = if image == kernel {
        None
    } else {
        let w = image
            .symmetric_difference(&kernel)
            .next()
            .map(|(b, c)| format!("({b},{c}) in exactly one of im mu, ker nu"));
        w.or_else(|| Some("im mu != ker nu".into()))
    };

    // ×p is zero on Z/s because s | m | p, so its kernel is all of Z/s.
    let ker_times_p: BTreeSet<I> = upto(s).filter(|y| divides(s, *y * p)).collect();
    let right = if nu_values == ker_times_p {
        None
    } else {
        Some(format!(
            "im nu has {} elements, ker(xp) has {}",
            nu_values.len(),
            ker_times_p.len()
        ))
    };

    Ok(ExactnessReport {
        segments: [
            Segment::new("ker mu = pZ", ker_mu),
            Segment::new("im mu = ker nu", mid),
            Segment::new("im nu = ker(xp)", right),
        ],
        zmp_order: members.len(),
        k1_order: s.to_string(),
    })
}

/// Class of a representation of the unitized classical dimension drop
/// algebra with `c0` copies of `δ0`, `c1` of `δ1` and `interior` interior
/// point evaluations (each of size `p`): `(c0 + c1 + interior*p, c1 mod p)`.
pub fn scalar_class<I: Int>(c0: I, c1: I, interior: I, p: I) -> Result<(I, I)> {
    if c0 < I::zero() || c1 < I::zero() || interior < I::zero() {
        return Err(Error::Mismatch(format!(
            "negative counts ({c0},{c1},{interior})"
        )));
    }
    Ok((c0 + c1 + interior * p, canonical_residue(c1, p)?))
}

/// Subgroup of `(Z/p)^2` spanned by the two `zmp_generators`.
#[doc(hidden)]
pub fn generated_subgroup<I: Int>(a: &DimensionDropAlgebra<I>, p: I) -> BTreeSet<(I, I)> {
    let [g1, g2] = zmp_generators(a, p);
    let mut out = BTreeSet::new();
    for i in upto(p) {
        for j in upto(p) {
            out.insert((modp(i * g1.0 + j * g2.0, p), modp(i * g1.1 + j * g2.1, p)));
        }
    }
    out
}
