//! KK-classes between `I[m0,m,m1]` and `I[m0,n,m1]` as integer combinations
//! of the four basic homomorphisms. Equality is decided through the induced
//! triples at `p = lcm(m, n)`, where the triple map is an isomorphism.

use std::fmt;

use crate::algebra::{BasicHom, DimensionDropAlgebra, HomKind};
use crate::arithmetic::{gcd, lcm, modp};
use crate::error::{Error, Result};
use crate::scalar::Int;
use crate::triples::{
    check_setting, decompose_triple, induced_triple, torsion_census, triples_equal, EqualityMode,
    KTriple, TorsionCensus,
};

/// `c_δ0·δ0 + c_δ1·δ1 + c_id·id + c_id̄·id̄`. Coefficients are not a
/// canonical form: use [`kk_equal`] or [`kk_canonical`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KKElement<I> {
    pub source: DimensionDropAlgebra<I>,
    pub target: DimensionDropAlgebra<I>,
    pub coeffs: [I; 4],
}

impl<I: Int> KKElement<I> {
    pub fn new(
        source: DimensionDropAlgebra<I>,
        target: DimensionDropAlgebra<I>,
        coeffs: [I; 4],
    ) -> Result<Self> {
        source.require_valid()?;
        target.require_valid()?;
        if !source.same_endpoints(&target) {
            return Err(Error::AlgebraMismatch(format!(
                "{source} and {target} have different endpoint sizes"
            )));
        }
        Ok(Self {
            source,
            target,
            coeffs,
        })
    }

    pub fn zero(source: DimensionDropAlgebra<I>, target: DimensionDropAlgebra<I>) -> Result<Self> {
        Self::new(source, target, [I::zero(); 4])
    }

    pub fn basic(
        kind: HomKind,
        source: DimensionDropAlgebra<I>,
        target: DimensionDropAlgebra<I>,
    ) -> Result<Self> {
        let mut coeffs = [I::zero(); 4];
        coeffs[kind as usize] = I::one();
        Self::new(source, target, coeffs)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.source != o.source || self.target != o.target {
            return Err(Error::Mismatch(format!("{self} + {o}")));
        }
        let mut coeffs = self.coeffs;
        coeffs.iter_mut().zip(o.coeffs).for_each(|(c, d)| *c += d);
        Ok(Self { coeffs, ..*self })
    }

    pub fn scale(&self, k: I) -> Self {
        Self {
            coeffs: self.coeffs.map(|c| c * k),
            ..*self
        }
    }

    /// `lcm(m, n)`, the smallest modulus at which triples detect KK-classes
    /// (2 when both algebras are `C`).
    pub fn default_modulus(&self) -> I {
        lcm(self.source.m(), self.target.m()).max(I::lit(2))
    }
}

impl<I: Int> fmt::Display for KKElement<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (kind, c) in HomKind::ALL.iter().zip(self.coeffs) {
            if c.is_zero() {
                continue;
            }
            match (first, c < I::zero()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            if !c.abs().is_one() {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "{kind}")?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `Γ(e; p)`: the coefficient-weighted sum of the induced triples.
pub fn gamma<I: Int>(e: &KKElement<I>, p: I) -> Result<KTriple<I>> {
    check_setting(&e.source, &e.target, p)?;
    let mut acc = KTriple::zero(e.source, e.target, p)?;
    for (kind, c) in HomKind::ALL.iter().zip(e.coeffs) {
        if c.is_zero() {
            continue;
        }
        let t = induced_triple(&BasicHom::new(*kind, e.source, e.target)?, p)?;
        acc = acc.add(&t.scale(c))?;
    }
    Ok(acc)
}

pub fn kk_equal<I: Int>(e1: &KKElement<I>, e2: &KKElement<I>, mode: EqualityMode) -> Result<bool> {
    if e1.source != e2.source || e1.target != e2.target {
        return Err(Error::Mismatch(format!(
            "{}->{} vs {}->{}",
            e1.source, e1.target, e2.source, e2.target
        )));
    }
    let p = e1.default_modulus();
    triples_equal(&gamma(e1, p)?, &gamma(e2, p)?, mode)
}

/// Canonical coordinates of a KK-class together with the generator
/// expression `k·id + c0·δ0 + c1·δ1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KKCanonical<I> {
    /// K0-multiplicity.
    pub x: I,
    /// K1-multiplicity reduced modulo `|K1(B)|`.
    pub y_mod: I,
    /// Torsion index in `[0, m/(m0 m1))`.
    pub d: I,
    pub k: I,
    pub c0: I,
    pub c1: I,
}

impl<I: Int> KKCanonical<I> {
    pub fn expression(
        &self,
        source: DimensionDropAlgebra<I>,
        target: DimensionDropAlgebra<I>,
    ) -> Result<KKElement<I>> {
        KKElement::new(source, target, [self.c0, self.c1, self.k, I::zero()])
    }
}

pub fn kk_canonical<I: Int>(e: &KKElement<I>) -> Result<KKCanonical<I>> {
    let t = gamma(e, e.default_modulus())?;
    let dec = decompose_triple(&t)?;
    let out = KKCanonical {
        x: t.x,
        y_mod: modp(t.y, e.target.s()),
        d: dec.d,
        k: dec.k,
        c0: dec.c0,
        c1: dec.c1,
    };
    let back = out.expression(e.source, e.target)?;
    if !kk_equal(&back, e, EqualityMode::Map)? {
        return Err(Error::Internal(format!(
            "canonical form {back} differs from {e}"
        )));
    }
    Ok(out)
}

/// Structure report for `KK(A, B)`.
///
/// `formula_torsion` holds the cyclic orders `(gcd(n, m), m/(m0 m1))` of the
/// closed-form presentation `Z ⊕ Z_gcd(n,m) ⊕ Z_{m/(m0 m1)}`. The remaining
/// fields are computed: `hom_k1_order = gcd(|K1(A)|, |K1(B)|)` and
/// `ext_order = |K1(A)|` from the cyclic K1 groups, and the triple censuses
/// at `p = lcm(m, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KKGroupInfo<I> {
    pub free_rank: usize,
    pub formula_torsion: (I, I),
    pub hom_k1_order: I,
    pub ext_order: I,
    /// Map classes of torsion triples with `y ≡ 0`.
    pub enumerated_torsion_count: usize,
    pub census: TorsionCensus,
    /// Whether `gcd(n,m)·m/(m0 m1)` equals the enumerated size of the whole
    /// torsion subgroup of triples.
    pub formula_matches_enumeration: bool,
}

pub fn kk_group_info<I: Int>(
    a: &DimensionDropAlgebra<I>,
    b: &DimensionDropAlgebra<I>,
) -> Result<KKGroupInfo<I>> {
    let p = lcm(a.m(), b.m()).max(I::lit(2));
    check_setting(a, b, p)?;
    let (sa, sb) = (a.s(), b.s());
    let formula_torsion = (gcd(b.m(), a.m()), sa);
    let census = torsion_census(a, b, p)?;
    let formula_order = (formula_torsion.0 * formula_torsion.1).to_usize_checked();
    Ok(KKGroupInfo {
        free_rank: 1,
        formula_torsion,
        hom_k1_order: gcd(sa, sb),
        ext_order: sa,
        enumerated_torsion_count: census.map_classes,
        census,
        formula_matches_enumeration: formula_order == Some(census.map_classes_any_y),
    })
}
