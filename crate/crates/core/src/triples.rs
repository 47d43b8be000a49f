//! Morphism triples `(x, φ, y)` between the coefficient K-theories of
//! `A = I[m0,m,m1]` and `B = I[m0,n,m1]` at a modulus `p` with `m | p`,
//! `n | p`.
//!
//! `x` acts on `K0 = Z`, `φ` is a 2×2 matrix over `Z/p` acting on
//! `K0(; Z/p) ⊂ (Z/p)^2` and `y` acts as `1 ↦ y` from `K1(A) = Z/(m/(m0 m1))`
//! to `K1(B) = Z/(n/(m0 m1))`. A triple is valid when both Bockstein squares
//! commute.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::algebra::{BasicHom, DimensionDropAlgebra, HomKind};
use crate::arithmetic::{bezout_canonical, divides, gcd, modp};
use crate::coeff::{in_zmp, nu_lift, zmp_generators};
use crate::error::{Error, Result};
use crate::scalar::{upto, Int};

pub type Matrix<I> = [[I; 2]; 2];

/// How two triples are compared.
///
/// `Map` compares `φ` as a map on `K0(A; Z/p)`, i.e. on the two generators
/// `(m0, m1)` and `(0, (p/m) m1)`, and `y` modulo `|K1(B)|`. `Strict`
/// compares matrix entries and the integer `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum EqualityMode {
    #[default]
    Map,
    Strict,
}

impl EqualityMode {
    pub fn name(self) -> &'static str {
        match self {
            EqualityMode::Map => "map",
            EqualityMode::Strict => "strict",
        }
    }
}

impl fmt::Display for EqualityMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EqualityMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "map" => Ok(EqualityMode::Map),
            "strict" => Ok(EqualityMode::Strict),
            other => Err(Error::Mismatch(format!("unknown equality mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KTriple<I> {
    pub source: DimensionDropAlgebra<I>,
    pub target: DimensionDropAlgebra<I>,
    pub p: I,
    pub x: I,
    pub phi: Matrix<I>,
    pub y: I,
}

impl<I: Int> KTriple<I> {
    /// Builds a triple with `φ` reduced mod `p`. Does not check the
    /// commuting squares; see [`validate_triple`].
    pub fn new(
        source: DimensionDropAlgebra<I>,
        target: DimensionDropAlgebra<I>,
        p: I,
        x: I,
        phi: Matrix<I>,
        y: I,
    ) -> Result<Self> {
        check_setting(&source, &target, p)?;
        Ok(Self {
            source,
            target,
            p,
            x,
            phi: reduce(phi, p),
            y,
        })
    }

    pub fn zero(
        source: DimensionDropAlgebra<I>,
        target: DimensionDropAlgebra<I>,
        p: I,
    ) -> Result<Self> {
        let z = I::zero();
        Self::new(source, target, p, z, [[z, z], [z, z]], z)
    }

    fn compatible(&self, o: &Self) -> Result<()> {
        if self.source != o.source || self.target != o.target || self.p != o.p {
            return Err(Error::Mismatch(format!(
                "{}->{} at p={} vs {}->{} at p={}",
                self.source, self.target, self.p, o.source, o.target, o.p
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.compatible(o)?;
        let mut phi = self.phi;
        for (i, row) in phi.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = modp(*v + o.phi[i][j], self.p);
            }
        }
        Ok(Self {
            x: self.x + o.x,
            y: self.y + o.y,
            phi,
            ..*self
        })
    }

    pub fn scale(&self, k: I) -> Self {
        let phi = reduce(self.phi.map(|r| r.map(|v| v * k)), self.p);
        Self {
            x: self.x * k,
            y: self.y * k,
            phi,
            ..*self
        }
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(-I::one()))
    }

    /// Images of the two generators of `K0(A; Z/p)` under `φ`.
    pub fn generator_images(&self) -> [(I, I); 2] {
        zmp_generators(&self.source, self.p).map(|g| apply(&self.phi, g, self.p))
    }
}

impl<I: Int> fmt::Display for KTriple<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.phi;
        write!(
            f,
            "({}, [[{},{}],[{},{}]], {})",
            self.x, m[0][0], m[0][1], m[1][0], m[1][1], self.y
        )
    }
}

pub fn triple_add<I: Int>(s: &KTriple<I>, t: &KTriple<I>) -> Result<KTriple<I>> {
    s.add(t)
}

pub fn triple_scale<I: Int>(t: &KTriple<I>, k: I) -> KTriple<I> {
    t.scale(k)
}

fn reduce<I: Int>(phi: Matrix<I>, p: I) -> Matrix<I> {
    phi.map(|r| r.map(|v| modp(v, p)))
}

/// `φ · (b, c)ᵀ mod p`.
pub fn apply<I: Int>(phi: &Matrix<I>, (b, c): (I, I), p: I) -> (I, I) {
    (
        modp(phi[0][0] * b + phi[0][1] * c, p),
        modp(phi[1][0] * b + phi[1][1] * c, p),
    )
}

pub(crate) fn check_setting<I: Int>(
    a: &DimensionDropAlgebra<I>,
    b: &DimensionDropAlgebra<I>,
    p: I,
) -> Result<()> {
    a.require_valid()?;
    b.require_valid()?;
    if !a.same_endpoints(b) {
        return Err(Error::AlgebraMismatch(format!(
            "{a} and {b} have different endpoint sizes"
        )));
    }
    a.require_divides(p)?;
    b.require_divides(p)
}

/// `[[-m1 m0, m0 m0], [-m1 m1, m0 m1]]`; its multiples are exactly the
/// triples with vanishing K0- and K1-multiplicity.
pub fn torsion_matrix<I: Int>(a: &DimensionDropAlgebra<I>) -> Matrix<I> {
    let (m0, m1) = (a.m0(), a.m1());
    [[-(m1 * m0), m0 * m0], [-(m1 * m1), m0 * m1]]
}

/// Which commuting condition a triple violates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TripleDefect<I> {
    /// `φ(m0, m1) ≠ x (m0, m1)`.
    FirstSquare { got: (I, I), want: (I, I) },
    /// `|K1(B)|` does not divide `y |K1(A)|`, so `×y` is not a map.
    Multiplicity { y: I },
    /// `φ(g)` falls outside `K0(B; Z/p)`.
    ImageNotInGroup { generator: usize, image: (I, I) },
    /// `ν_B(φ g) ≠ y ν_A(g)`.
    SecondSquare { generator: usize, got: I, want: I },
}

impl<I: Int> fmt::Display for TripleDefect<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TripleDefect::FirstSquare { got, want } => write!(
                f,
                "first square: phi(m0,m1) = ({},{}) but x(m0,m1) = ({},{})",
                got.0, got.1, want.0, want.1
            ),
            TripleDefect::Multiplicity { y } => {
                write!(
                    f,
                    "K1 multiplicity {y} does not define a map K1(A) -> K1(B)"
                )
            }
            TripleDefect::ImageNotInGroup { generator, image } => write!(
                f,
                "generator {generator}: image ({},{}) not in K0(B; Z/p)",
                image.0, image.1
            ),
            TripleDefect::SecondSquare {
                generator,
                got,
                want,
            } => write!(
                f,
                "second square on generator {generator}: nu_B(phi g) = {got} but y nu_A(g) = {want}"
            ),
        }
    }
}

/// Returns `None` when both Bockstein squares commute, otherwise the first
/// violated condition.
pub fn validate_triple<I: Int>(t: &KTriple<I>) -> Result<Option<TripleDefect<I>>> {
    check_setting(&t.source, &t.target, t.p)?;
    let (a, b, p) = (&t.source, &t.target, t.p);
    let gens = zmp_generators(a, p);
    let imgs = t.generator_images();

    let want = (modp(t.x * a.m0(), p), modp(t.x * a.m1(), p));
    if imgs[0] != want {
        return Ok(Some(TripleDefect::FirstSquare { got: imgs[0], want }));
    }
    let (sa, sb) = (a.s(), b.s());
    if !divides(sb, t.y * sa) {
        return Ok(Some(TripleDefect::Multiplicity { y: t.y }));
    }
    for (i, (g, img)) in gens.iter().zip(imgs).enumerate() {
        if !in_zmp(b, p, img.0, img.1) {
            return Ok(Some(TripleDefect::ImageNotInGroup {
                generator: i,
                image: img,
            }));
        }
        let got = modp(nu_lift(b, p, img.0, img.1)?, sb);
        let want = modp(t.y * nu_lift(a, p, g.0, g.1)?, sb);
        if got != want {
            return Ok(Some(TripleDefect::SecondSquare {
                generator: i,
                got,
                want,
            }));
        }
    }
    Ok(None)
}

pub fn is_valid_triple<I: Int>(t: &KTriple<I>) -> Result<bool> {
    Ok(validate_triple(t)?.is_none())
}

/// Equality of triples under `mode`.
pub fn triples_equal<I: Int>(s: &KTriple<I>, t: &KTriple<I>, mode: EqualityMode) -> Result<bool> {
    s.compatible(t)?;
    Ok(match mode {
        EqualityMode::Map => {
            let sb = s.target.s();
            s.x == t.x
                && s.generator_images() == t.generator_images()
                && modp(s.y - t.y, sb).is_zero()
        }
        EqualityMode::Strict => s.x == t.x && s.phi == t.phi && s.y == t.y,
    })
}

/// The triple induced by a basic homomorphism.
pub fn induced_triple<I: Int>(h: &BasicHom<I>, p: I) -> Result<KTriple<I>> {
    let (a, b) = (h.source, h.target);
    check_setting(&a, &b, p)?;
    let (m0, m, m1, n) = (a.m0(), a.m(), a.m1(), b.m());
    let z = I::zero();
    let g = gcd(m, n);
    let t = match h.kind {
        HomKind::Delta0 => KTriple::new(a, b, p, m0, [[m0, z], [m1, z]], z)?,
        HomKind::Delta1 => KTriple::new(a, b, p, m1, [[z, m0], [z, m1]], z)?,
        HomKind::Id => {
            let k = m / g;
            KTriple::new(a, b, p, k, [[k, z], [z, k]], n / g)?
        }
        HomKind::IdBar => {
            let h2 = gcd(g, a.s());
            let upper = m * m0 / gcd(m1 * g, m / m0);
            let lower = m * m1 / gcd(m0 * g, m / m1);
            KTriple::new(a, b, p, m / h2, [[z, upper], [lower, z]], -(n / h2))?
        }
    };
    if let Some(defect) = validate_triple(&t)? {
        return Err(Error::Internal(format!(
            "induced triple of {} fails: {defect}",
            h.kind
        )));
    }
    Ok(t)
}

/// The unique `d` in `[0, m/(m0 m1))` with `t` map-equal to `d·(0, T, 0)`.
pub fn torsion_param<I: Int>(t: &KTriple<I>) -> Result<I> {
    let sb = t.target.s();
    if !t.x.is_zero() || !modp(t.y, sb).is_zero() {
        return Err(Error::NotTorsionForm(format!(
            "{t} has non-zero multiplicities"
        )));
    }
    let unit = KTriple::new(
        t.source,
        t.target,
        t.p,
        I::zero(),
        torsion_matrix(&t.source),
        I::zero(),
    )?;
    for d in upto(t.source.s()) {
        if triples_equal(
            &unit.scale(d),
            &KTriple { y: I::zero(), ..*t },
            EqualityMode::Map,
        )? {
            return Ok(d);
        }
    }
    Err(Error::NotTorsionForm(format!(
        "{t} is no multiple of the torsion triple"
    )))
}

/// `(x, x·[[m0β0, m0β1], [m1β0, m1β1]], 0)`.
pub fn build_x_triple<I: Int>(
    a: &DimensionDropAlgebra<I>,
    b: &DimensionDropAlgebra<I>,
    p: I,
    x: I,
) -> Result<KTriple<I>> {
    check_setting(a, b, p)?;
    let bz = bezout_canonical(a.m0(), a.m1())?;
    let (m0, m1) = (a.m0(), a.m1());
    let phi = [
        [x * m0 * bz.beta0, x * m0 * bz.beta1],
        [x * m1 * bz.beta0, x * m1 * bz.beta1],
    ];
    KTriple::new(*a, *b, p, x, phi, I::zero())
}

/// `(0, ψ, y)` with `ψ = (m y / n)·[[m1β1, -m0β1], [-m1β0, m0β0]]`.
pub fn build_y_triple<I: Int>(
    a: &DimensionDropAlgebra<I>,
    b: &DimensionDropAlgebra<I>,
    p: I,
    y: I,
) -> Result<KTriple<I>> {
    check_setting(a, b, p)?;
    let (sa, sb) = (a.s(), b.s());
    if !divides(sb, y * sa) {
        return Err(Error::BadMultiplicity(
            y.to_string(),
            format!("|K1(B)| = {sb} does not divide y*|K1(A)| = {}", y * sa),
        ));
    }
    let bz = bezout_canonical(a.m0(), a.m1())?;
    let r = a.m() * y / b.m();
    let (m0, m1) = (a.m0(), a.m1());
    let phi = [
        [r * m1 * bz.beta1, -(r * m0 * bz.beta1)],
        [-(r * m1 * bz.beta0), r * m0 * bz.beta0],
    ];
    KTriple::new(*a, *b, p, I::zero(), phi, y)
}

/// `(x, σ + d T, y)`: the general triple with given multiplicities and
/// torsion index.
pub fn build_triple<I: Int>(
    a: &DimensionDropAlgebra<I>,
    b: &DimensionDropAlgebra<I>,
    p: I,
    x: I,
    y: I,
    d: I,
) -> Result<KTriple<I>> {
    check_setting(a, b, p)?;
    let s = a.s();
    if d < I::zero() || d >= s {
        return Err(Error::BadTorsionIndex {
            d: d.to_string(),
            order: s.to_string(),
        });
    }
    let torsion = KTriple::new(*a, *b, p, I::zero(), torsion_matrix(a), I::zero())?.scale(d);
    build_x_triple(a, b, p, x)?
        .add(&build_y_triple(a, b, p, y)?)?
        .add(&torsion)
}

/// `t = k·Γ(id) + c0·Γ(δ0) + c1·Γ(δ1)` (map equality), with `d` the torsion
/// index of the residual after the `id` part is removed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TripleDecomposition<I> {
    pub k: I,
    pub c0: I,
    pub c1: I,
    pub d: I,
}

pub fn decompose_triple<I: Int>(t: &KTriple<I>) -> Result<TripleDecomposition<I>> {
    if let Some(defect) = validate_triple(t)? {
        return Err(Error::NoSolution(format!(
            "{t} is not a valid triple: {defect}"
        )));
    }
    let (a, b, p) = (t.source, t.target, t.p);
    let (m, n, sb) = (a.m(), b.m(), b.s());
    let g = gcd(m, n);
    let step = n / g;
    let k = upto(sb)
        .find(|k| modp(*k * step - t.y, sb).is_zero())
        .ok_or_else(|| Error::NoSolution(format!("k*{step} ≡ {} mod {sb}", t.y)))?;

    let id = induced_triple(&BasicHom::new(HomKind::Id, a, b)?, p)?;
    let x_rest = t.x - k * (m / g);
    let residual = t
        .sub(&id.scale(k))?
        .sub(&build_x_triple(&a, &b, p, x_rest)?)?;
    let d = torsion_param(&residual)?;

    let bz = bezout_canonical(a.m0(), a.m1())?;
    let out = TripleDecomposition {
        k,
        c0: x_rest * bz.beta0 - d * a.m1(),
        c1: x_rest * bz.beta1 + d * a.m0(),
        d,
    };
    let back = recombine_decomposition(&a, &b, p, &out)?;
    if !triples_equal(&back, t, EqualityMode::Map)? {
        return Err(Error::Internal(format!(
            "decomposition of {t} recombines to {back}"
        )));
    }
    Ok(out)
}

/// `k·Γ(id) + c0·Γ(δ0) + c1·Γ(δ1)`.
pub fn recombine_decomposition<I: Int>(
    a: &DimensionDropAlgebra<I>,
    b: &DimensionDropAlgebra<I>,
    p: I,
    dec: &TripleDecomposition<I>,
) -> Result<KTriple<I>> {
    let gamma = |kind| induced_triple(&BasicHom::new(kind, *a, *b)?, p);
    gamma(HomKind::Id)?
        .scale(dec.k)
        .add(&gamma(HomKind::Delta0)?.scale(dec.c0))?
        .add(&gamma(HomKind::Delta1)?.scale(dec.c1))
}

/// Counts of valid triples with vanishing K0-multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TorsionCensus {
    /// Map-equality classes of valid `(0, φ, y)` with `y ≡ 0`.
    pub map_classes: usize,
    /// Distinct matrices `φ` with `(0, φ, 0)` valid.
    pub strict_matrices: usize,
    /// Map-equality classes of valid `(0, φ, y)` for every admissible `y`.
    pub map_classes_any_y: usize,
}

/// Census of torsion triples. The map class of `(0, φ, y)` only depends on
/// the second column of `φ` once `φ(m0, m1) = 0` is solvable, so the count
/// runs over `p^2` columns instead of `p^4` matrices.
pub fn torsion_census<I: Int>(
    a: &DimensionDropAlgebra<I>,
    b: &DimensionDropAlgebra<I>,
    p: I,
) -> Result<TorsionCensus> {
    check_setting(a, b, p)?;
    let (m0, m1) = (a.m0(), a.m1());
    let q = p / a.m();
    let (sa, sb) = (a.s(), b.s());
    let g0 = gcd(m0, p);
    let col1_choices = (g0 * g0)
        .to_usize_checked()
        .ok_or(Error::Overflow("torsion census"))?;
    let admissible_y: Vec<I> = upto(sb).filter(|y| divides(sb, *y * sa)).collect();

    let mut map_keys = BTreeSet::new();
    let mut map_keys_any_y = BTreeSet::new();
    let mut strict = 0usize;
    for c12 in upto(p) {
        for c22 in upto(p) {
            // first column must solve m0·col1 ≡ -m1·col2 (mod p)
            if !divides(g0, m1 * c12) || !divides(g0, m1 * c22) {
                continue;
            }
            let v = (modp(q * m1 * c12, p), modp(q * m1 * c22, p));
            if !in_zmp(b, p, v.0, v.1) {
                continue;
            }
            let nu = modp(nu_lift(b, p, v.0, v.1)?, sb);
            if nu.is_zero() {
                map_keys.insert(v);
                strict += col1_choices;
            }
            // generator 2 has nu_A = 1, so the square forces y ≡ nu
            if admissible_y.contains(&nu) {
                map_keys_any_y.insert((v, nu));
            }
        }
    }
    Ok(TorsionCensus {
        map_classes: map_keys.len(),
        strict_matrices: strict,
        map_classes_any_y: map_keys_any_y.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn alg(m0: i64, m: i64, m1: i64) -> DimensionDropAlgebra<i64> {
        DimensionDropAlgebra::new(m0, m, m1).unwrap()
    }

    fn a12() -> DimensionDropAlgebra<i64> {
        alg(2, 12, 3)
    }

    fn tri(x: i64, phi: Matrix<i64>, y: i64) -> KTriple<i64> {
        KTriple::new(a12(), a12(), 12, x, phi, y).unwrap()
    }

    fn gamma(
        kind: HomKind,
        a: DimensionDropAlgebra<i64>,
        b: DimensionDropAlgebra<i64>,
        p: i64,
    ) -> KTriple<i64> {
        induced_triple(&BasicHom::new(kind, a, b).unwrap(), p).unwrap()
    }

    fn valid_algebras(max_m: i64) -> Vec<DimensionDropAlgebra<i64>> {
        let mut out = Vec::new();
        for m in 2..=max_m {
            for m0 in 1..=m {
                for m1 in 1..=m {
                    if let Ok(a) = DimensionDropAlgebra::new(m0, m, m1) {
                        if a.is_valid() {
                            out.push(a);
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn validate_examples() {
        assert_eq!(validate_triple(&tri(2, [[2, 0], [3, 0]], 0)).unwrap(), None);
        assert_eq!(validate_triple(&tri(0, [[0, 0], [0, 0]], 0)).unwrap(), None);
        assert_eq!(
            validate_triple(&tri(1, [[0, 0], [0, 0]], 0)).unwrap(),
            Some(TripleDefect::FirstSquare {
                got: (0, 0),
                want: (2, 3)
            })
        );
    }

    #[test]
    fn validate_reports_second_square() {
        // φ = identity with y = 0 breaks the Bockstein square on (0, 3)
        let d = validate_triple(&tri(1, [[1, 0], [0, 1]], 0)).unwrap();
        assert!(
            matches!(
                d,
                Some(TripleDefect::SecondSquare {
                    generator: 1,
                    got: 1,
                    want: 0
                })
            ),
            "{d:?}"
        );
    }

    #[test]
    fn validate_reports_bad_multiplicity() {
        let (a, b) = (alg(2, 6, 3), a12());
        let t = KTriple::new(a, b, 12, 0, [[0, 0], [0, 0]], 1).unwrap();
        assert_eq!(
            validate_triple(&t).unwrap(),
            Some(TripleDefect::Multiplicity { y: 1 })
        );
    }

    #[test]
    fn modulus_must_be_multiple() {
        let e = KTriple::new(a12(), a12(), 18, 0, [[0, 0], [0, 0]], 0).unwrap_err();
        assert!(matches!(e, Error::ModulusNotMultiple { .. }), "{e}");
        let e = KTriple::new(a12(), alg(3, 12, 2), 12, 0, [[0, 0], [0, 0]], 0).unwrap_err();
        assert!(matches!(e, Error::AlgebraMismatch(_)));
    }

    #[test]
    fn map_versus_strict_equality() {
        let t2 = tri(0, torsion_matrix(&a12()), 0).scale(2);
        assert_eq!(t2.phi, [[0, 8], [6, 0]]);
        let zero = KTriple::zero(a12(), a12(), 12).unwrap();
        assert!(triples_equal(&t2, &zero, EqualityMode::Map).unwrap());
        assert!(!triples_equal(&t2, &zero, EqualityMode::Strict).unwrap());
        for mode in [EqualityMode::Map, EqualityMode::Strict] {
            assert!(triples_equal(&t2, &t2, mode).unwrap());
        }
        // y compared mod |K1(B)| = 2 only under map equality
        let y2 = tri(0, [[0, 0], [0, 0]], 2);
        assert!(triples_equal(&y2, &zero, EqualityMode::Map).unwrap());
        assert!(!triples_equal(&y2, &zero, EqualityMode::Strict).unwrap());
    }

    #[test]
    fn equality_needs_same_setting() {
        let s = KTriple::zero(a12(), a12(), 12).unwrap();
        let t = KTriple::zero(a12(), a12(), 24).unwrap();
        assert!(matches!(
            triples_equal(&s, &t, EqualityMode::Map),
            Err(Error::Mismatch(_))
        ));
    }

    #[test]
    fn induced_examples() {
        let a = a12();
        assert_eq!(
            gamma(HomKind::Delta0, a, a, 12),
            tri(2, [[2, 0], [3, 0]], 0)
        );
        assert_eq!(
            gamma(HomKind::Delta1, a, a, 12),
            tri(3, [[0, 2], [0, 3]], 0)
        );
        assert_eq!(gamma(HomKind::Id, a, a, 12), tri(1, [[1, 0], [0, 1]], 1));
        assert_eq!(
            gamma(HomKind::IdBar, a, a, 12),
            tri(6, [[0, 4], [9, 0]], -6)
        );
    }

    #[test]
    fn induced_triples_validate_on_grid() {
        for a in valid_algebras(36) {
            let m = a.m();
            for n in [m, 2 * m, 3 * m] {
                let b = alg(a.m0(), n, a.m1());
                let p = n;
                for kind in HomKind::ALL {
                    let t = gamma(kind, a, b, p);
                    assert_eq!(validate_triple(&t).unwrap(), None, "{kind} {a}->{b}");
                }
            }
        }
    }

    #[test]
    fn torsion_param_examples() {
        assert_eq!(torsion_param(&tri(0, [[6, 4], [3, 6]], 0)).unwrap(), 1);
        assert_eq!(
            torsion_param(&KTriple::zero(a12(), a12(), 12).unwrap()).unwrap(),
            0
        );
        assert!(matches!(
            torsion_param(&tri(0, [[1, 0], [0, 0]], 0)),
            Err(Error::NotTorsionForm(_))
        ));
        assert!(matches!(
            torsion_param(&tri(1, [[0, 0], [0, 0]], 0)),
            Err(Error::NotTorsionForm(_))
        ));
    }

    #[test]
    fn build_examples() {
        let a = a12();
        assert_eq!(
            build_x_triple(&a, &a, 12, 1).unwrap(),
            tri(1, [[4, 10], [6, 9]], 0)
        );
        assert_eq!(
            build_x_triple(&a, &a, 12, 0).unwrap(),
            KTriple::zero(a, a, 12).unwrap()
        );
        assert_eq!(
            build_x_triple(&a, &a, 12, 6).unwrap(),
            tri(6, [[0, 0], [0, 6]], 0)
        );

        let y1 = build_y_triple(&a, &a, 12, 1).unwrap();
        assert_eq!(y1, tri(0, [[9, 2], [6, 4]], 1));
        assert!(is_valid_triple(&y1).unwrap());
        assert_eq!(
            build_y_triple(&a, &a, 12, 0).unwrap(),
            KTriple::zero(a, a, 12).unwrap()
        );
        let e = build_y_triple(&alg(2, 6, 3), &a, 12, 1).unwrap_err();
        assert!(matches!(e, Error::BadMultiplicity(..)));

        assert_eq!(
            build_triple(&a, &a, 12, 2, 0, 0).unwrap(),
            tri(2, [[8, 8], [0, 6]], 0)
        );
        assert_eq!(
            build_triple(&a, &a, 12, 0, 0, 0).unwrap(),
            KTriple::zero(a, a, 12).unwrap()
        );
        assert_eq!(
            build_triple(&a, &a, 12, 2, 0, 1).unwrap(),
            tri(2, [[2, 0], [3, 0]], 0)
        );
        assert!(matches!(
            build_triple(&a, &a, 12, 2, 0, 2),
            Err(Error::BadTorsionIndex { .. })
        ));
    }

    #[test]
    fn add_and_scale_examples() {
        let a = a12();
        let (d0, d1) = (
            gamma(HomKind::Delta0, a, a, 12),
            gamma(HomKind::Delta1, a, a, 12),
        );
        assert_eq!(triple_add(&d0, &d1).unwrap(), tri(5, [[2, 2], [3, 3]], 0));
        assert_eq!(triple_scale(&d0, 0), KTriple::zero(a, a, 12).unwrap());
        assert_eq!(triple_scale(&d0, 2), tri(4, [[4, 0], [6, 0]], 0));
    }

    #[test]
    fn decompose_examples() {
        let a = a12();
        let dec = |t| decompose_triple(&t).unwrap();
        assert_eq!(
            dec(gamma(HomKind::Delta0, a, a, 12)),
            TripleDecomposition {
                k: 0,
                c0: 1,
                c1: 0,
                d: 1
            }
        );
        assert_eq!(
            dec(gamma(HomKind::Id, a, a, 12)),
            TripleDecomposition {
                k: 1,
                c0: 0,
                c1: 0,
                d: 0
            }
        );
        assert_eq!(
            dec(KTriple::zero(a, a, 12).unwrap()),
            TripleDecomposition {
                k: 0,
                c0: 0,
                c1: 0,
                d: 0
            }
        );
        assert!(matches!(
            decompose_triple(&tri(1, [[0, 0], [0, 0]], 0)),
            Err(Error::NoSolution(_))
        ));
    }

    #[test]
    fn degenerate_target_has_trivial_k1() {
        let (a, b) = (alg(2, 12, 3), alg(2, 6, 3));
        let t = gamma(HomKind::Id, a, b, 12);
        assert_eq!(decompose_triple(&t).unwrap().k, 0);
    }

    #[test]
    fn torsion_triple_in_generators() {
        for a in valid_algebras(24) {
            let p = a.m();
            let (d0, d1) = (
                gamma(HomKind::Delta0, a, a, p),
                gamma(HomKind::Delta1, a, a, p),
            );
            let unit = KTriple::new(a, a, p, 0, torsion_matrix(&a), 0).unwrap();
            for d in 0..a.s() {
                let via = d1.scale(d * a.m0()).sub(&d0.scale(d * a.m1())).unwrap();
                assert!(
                    triples_equal(&via, &unit.scale(d), EqualityMode::Map).unwrap(),
                    "{a} d={d}"
                );
            }
        }
    }

    #[test]
    fn decompose_roundtrip_grid() {
        for a in valid_algebras(24) {
            let m = a.m();
            for b in [a, alg(a.m0(), 2 * m, a.m1())] {
                let p = b.m();
                let ys: Vec<i64> = (0..b.s()).filter(|y| divides(b.s(), y * a.s())).collect();
                for x in -2 * m..=2 * m {
                    for &y in &ys {
                        for d in 0..a.s() {
                            let t = build_triple(&a, &b, p, x, y, d).unwrap();
                            assert!(is_valid_triple(&t).unwrap(), "{t}");
                            let dec = decompose_triple(&t).unwrap();
                            let back = recombine_decomposition(&a, &b, p, &dec).unwrap();
                            assert!(triples_equal(&back, &t, EqualityMode::Map).unwrap());
                        }
                    }
                }
            }
        }
    }

    /// Reference count over every matrix in `(Z/p)^4` and every `y` mod
    /// `|K1(B)|`.
    fn census_oracle(
        a: &DimensionDropAlgebra<i64>,
        b: &DimensionDropAlgebra<i64>,
        p: i64,
    ) -> TorsionCensus {
        let mut map = BTreeSet::new();
        let mut any = BTreeSet::new();
        let mut strict = 0;
        for e in 0..p * p * p * p {
            let phi = [[e % p, e / p % p], [e / (p * p) % p, e / (p * p * p)]];
            for y in 0..b.s() {
                let t = KTriple::new(*a, *b, p, 0, phi, y).unwrap();
                if !is_valid_triple(&t).unwrap() {
                    continue;
                }
                let key = (t.generator_images(), y);
                if y == 0 {
                    map.insert(key);
                    strict += 1;
                }
                any.insert(key);
            }
        }
        TorsionCensus {
            map_classes: map.len(),
            strict_matrices: strict,
            map_classes_any_y: any.len(),
        }
    }

    #[test]
    fn census_matches_brute_force() {
        let cases = [
            (alg(2, 12, 3), alg(2, 12, 3), 12),
            (alg(1, 4, 1), alg(1, 6, 1), 12),
            (alg(2, 6, 3), alg(2, 12, 3), 12),
            (alg(1, 10, 2), alg(1, 10, 2), 10),
            (alg(3, 6, 2), alg(3, 6, 2), 6),
            (alg(1, 9, 1), alg(1, 9, 1), 9),
        ];
        for (a, b, p) in cases {
            assert_eq!(
                torsion_census(&a, &b, p).unwrap(),
                census_oracle(&a, &b, p),
                "{a}->{b} p={p}"
            );
        }
        assert_eq!(torsion_census(&a12(), &a12(), 12).unwrap().map_classes, 2);
    }

    #[test]
    fn torsion_count_is_k1_order() {
        for a in valid_algebras(12) {
            let c = torsion_census(&a, &a, a.m()).unwrap();
            assert_eq!(c.map_classes as i64, a.s(), "{a}");
        }
    }

    #[test]
    fn wider_scalars() {
        let a = DimensionDropAlgebra::<i32>::new(2, 12, 3).unwrap();
        let t = induced_triple(&BasicHom::new(HomKind::IdBar, a, a).unwrap(), 12).unwrap();
        assert_eq!((t.x, t.phi, t.y), (6, [[0, 4], [9, 0]], -6));
        let a = DimensionDropAlgebra::<i128>::new(2, 12, 3).unwrap();
        let t = build_triple(&a, &a, 12, 2, 0, 1).unwrap();
        assert_eq!(t.phi, [[2, 0], [3, 0]]);
    }

    #[test]
    fn display_and_mode_parsing() {
        assert_eq!(
            tri(6, [[0, 4], [9, 0]], -6).to_string(),
            "(6, [[0,4],[9,0]], -6)"
        );
        assert_eq!(
            "STRICT".parse::<EqualityMode>().unwrap(),
            EqualityMode::Strict
        );
        assert_eq!(" map ".parse::<EqualityMode>().unwrap(), EqualityMode::Map);
        assert!("entrywise".parse::<EqualityMode>().is_err());
        assert_eq!(EqualityMode::default(), EqualityMode::Map);
    }

    fn setting() -> impl Strategy<Value = (DimensionDropAlgebra<i64>, DimensionDropAlgebra<i64>)> {
        prop::sample::select(vec![
            (1, 1),
            (1, 2),
            (2, 1),
            (2, 3),
            (3, 2),
            (1, 3),
            (3, 4),
            (2, 5),
        ])
        .prop_flat_map(|(m0, m1)| (Just((m0, m1)), 1..=4i64, 1..=3i64))
        .prop_map(|((m0, m1), k, l)| {
            let m = m0 * m1 * k;
            (alg(m0, m, m1), alg(m0, m * l, m1))
        })
    }

    proptest! {
        #[test]
        fn validity_closed_under_add_and_scale(
            (a, b) in setting(),
            c in prop::array::uniform4(-6i64..=6),
            k in -5i64..=5,
        ) {
            let p = 2 * b.m();
            let mut acc = KTriple::zero(a, b, p).unwrap();
            for (kind, c) in HomKind::ALL.iter().zip(c) {
                acc = acc.add(&gamma(*kind, a, b, p).scale(c)).unwrap();
            }
            prop_assert!(is_valid_triple(&acc).unwrap());
            prop_assert!(is_valid_triple(&acc.scale(k)).unwrap());
        }

        #[test]
        fn build_then_decompose(
            (a, b) in setting(),
            x in -40i64..=40,
            yi in 0usize..8,
            di in 0i64..100,
        ) {
            let p = 2 * b.m();
            let ys: Vec<i64> = (0..b.s()).filter(|y| divides(b.s(), y * a.s())).collect();
            let y = ys[yi % ys.len()];
            let d = di % a.s();
            let t = build_triple(&a, &b, p, x, y, d).unwrap();
            let dec = decompose_triple(&t).unwrap();
            let back = recombine_decomposition(&a, &b, p, &dec).unwrap();
            prop_assert!(triples_equal(&back, &t, EqualityMode::Map).unwrap());
        }
    }
}
