//! Lifting checks for KK-classes between dimension drop algebras.
//!
//! Three independent verdicts are computed for a class `α`:
//!
//! * order preservation: `Γ(α; p)` maps the positive cone of `K0(A; G_p)`
//!   into that of `K0(B; G_p)` (checked on the four cone generators);
//! * K-homology positivity: `α*` sends `[V0^B]`, `[V1^B]` to classes of
//!   genuine representations of `A`;
//! * span membership: `α` is a non-negative integer combination of the
//!   four basic homomorphisms, found by exhaustive search.
//!
//! Span membership is a sufficient realizability certificate (a direct sum
//! of basic homomorphisms is a homomorphism); its absence is reported as a
//! span verdict only.

use crate::algebra::{khomology_positive, DimensionDropAlgebra, HomKind, KHomologyClass};
use crate::arithmetic::{bezout_canonical, gcd, modp};
use crate::coeff::{cone_generators, is_positive, GpElement};
use crate::error::{Error, Result};
use crate::kk::{gamma, kk_equal, KKElement};
use crate::scalar::{span, upto, Int};
use crate::triples::{apply, check_setting, EqualityMode, KTriple};

/// Index `(x, d)` into the family `(β0 x - d m1)·δ0 + (β1 x + d m0)·δ1`
/// of classes with vanishing K1-multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyElement<I> {
    pub x: I,
    pub d: I,
}

pub fn family_element<I: Int>(
    a: &DimensionDropAlgebra<I>,
    b: &DimensionDropAlgebra<I>,
    x: I,
    d: I,
) -> Result<KKElement<I>> {
    a.require_valid()?;
    let s = a.s();
    if d < I::zero() || d >= s {
        return Err(Error::BadTorsionIndex {
            d: d.to_string(),
            order: s.to_string(),
        });
    }
    let bz = bezout_canonical(a.m0(), a.m1())?;
    KKElement::new(
        *a,
        *b,
        [
            bz.beta0 * x - d * a.m1(),
            bz.beta1 * x + d * a.m0(),
            I::zero(),
            I::zero(),
        ],
    )
}

/// A cone generator of `K0(A; G_p)` whose image is not positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DlWitness<I> {
    /// Index into `[δ0, δ1, id, id̄]`.
    pub generator: usize,
    pub image: GpElement<I>,
}

impl<I: Int> DlWitness<I> {
    pub fn generator_name(&self) -> &'static str {
        HomKind::ALL[self.generator].name()
    }
}

/// Image of `(a, b, c)` under the triple: `(x a, φ (b, c))`.
pub fn push_forward<I: Int>(t: &KTriple<I>, e: &GpElement<I>) -> Result<GpElement<I>> {
    let (b, c) = apply(&t.phi, (e.b, e.c), t.p);
    GpElement::new(t.target, t.p, t.x * e.a, b, c)
        .map_err(|err| Error::Internal(format!("image of {e} under {t}: {err}")))
}

/// Order preservation of `Γ(e; p)` with respect to the Dadarlat–Loring
/// cones. Returns the first failing cone generator, or `None` if positive.
pub fn dl_check<I: Int>(e: &KKElement<I>, p: I) -> Result<Option<DlWitness<I>>> {
    let t = gamma(e, p)?;
    for (i, g) in cone_generators(&e.source, p)?.iter().enumerate() {
        let image = push_forward(&t, g)?;
        if !is_positive(&image)? {
            return Ok(Some(DlWitness {
                generator: i,
                image,
            }));
        }
    }
    Ok(None)
}

pub fn dl_positive<I: Int>(e: &KKElement<I>, p: I) -> Result<bool> {
    Ok(dl_check(e, p)?.is_none())
}

/// Closed-form order test for `β0 x·δ0 + β1 x·δ1`, with `R`, `S` the
/// remainders of `β0 m0 m0 x` and `β0 m0 m1 x` modulo `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosedForm<I> {
    pub holds: bool,
    /// `β0 m0 m0 x`, compared against `m`.
    pub first: I,
    /// `β0 m0 m1 x`, compared against `m`.
    pub second: I,
    pub r: I,
    pub s: I,
    /// `m0 x`, compared against `R`.
    pub r_bound: I,
    /// `m1 x`, compared against `S`.
    pub s_bound: I,
}

pub fn dl_closed_form<I: Int>(a: &DimensionDropAlgebra<I>, x: I) -> Result<ClosedForm<I>> {
    a.require_valid()?;
    if x < I::zero() {
        return Err(Error::Mismatch(format!(
            "closed form needs x >= 0, got {x}"
        )));
    }
    let bz = bezout_canonical(a.m0(), a.m1())?;
    let (m0, m, m1) = (a.m0(), a.m(), a.m1());
    let first = bz.beta0 * m0 * m0 * x;
    let second = bz.beta0 * m0 * m1 * x;
    let r = modp(first, m);
    let s = modp(second, m);
    let holds = x.is_zero() || (first >= m && second >= m && m0 * x >= r && m1 * x >= s);
    Ok(ClosedForm {
        holds,
        first,
        second,
        r,
        s,
        r_bound: m0 * x,
        s_bound: m1 * x,
    })
}

/// Images of `[V0^B]` and `[V1^B]` under `α*: K^0(B) -> K^0(A)`.
pub fn js_action<I: Int>(e: &KKElement<I>) -> Result<[KHomologyClass<I>; 2]> {
    let (a, b) = (e.source, e.target);
    a.require_valid()?;
    b.require_valid()?;
    let (m0, m, m1) = (a.m0(), a.m(), a.m1());
    let z = I::zero();
    let g = gcd(m, b.m());
    let k = m / g;
    let q1 = m * m0 / gcd(m1 * g, m / m0);
    let q0 = m * m1 / gcd(m0 * g, m / m1);
    // (u, v) images of [V0^B] and [V1^B] for each basic homomorphism
    let basic: [[(I, I); 2]; 4] = [
        [(m0, z), (m1, z)],
        [(z, m0), (z, m1)],
        [(k, z), (z, k)],
        [(z, q1), (q0, z)],
    ];
    let mut out = [KHomologyClass::new(z, z, a); 2];
    for (imgs, c) in basic.iter().zip(e.coeffs) {
        for (o, (u, v)) in out.iter_mut().zip(imgs) {
            o.u += c * *u;
            o.v += c * *v;
        }
    }
    Ok(out)
}

pub fn js_liftable<I: Int>(e: &KKElement<I>) -> Result<bool> {
    let [v0, v1] = js_action(e)?;
    Ok(khomology_positive(&v0)? && khomology_positive(&v1)?)
}

/// Linearised comparison data of a triple under an equality mode: four
/// residues mod `p` and a K1 key (mod `|K1(B)|` for map equality, exact
/// otherwise).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Signature<I> {
    residues: [I; 4],
    y: I,
}

struct SignatureSpace<I> {
    p: I,
    y_modulus: Option<I>,
    mode: EqualityMode,
}

impl<I: Int> SignatureSpace<I> {
    fn of(&self, t: &KTriple<I>) -> Signature<I> {
        let residues = match self.mode {
            EqualityMode::Map => {
                let [g1, g2] = t.generator_images();
                [g1.0, g1.1, g2.0, g2.1]
            }
            EqualityMode::Strict => [t.phi[0][0], t.phi[0][1], t.phi[1][0], t.phi[1][1]],
        };
        Signature {
            residues,
            y: self.reduce_y(t.y),
        }
    }

    fn reduce_y(&self, y: I) -> I {
        match self.y_modulus {
            Some(s) => modp(y, s),
            None => y,
        }
    }
}

/// Lexicographically first `(a, b, c, e) >= 0` such that
/// `a·δ0 + b·δ1 + c·id + e·id̄` is KK-equal to `e` under `mode`, or `None`.
///
/// The search space is finite because every basic class has positive
/// K0-multiplicity, so the K0-multiplicity of `e` bounds all coefficients.
pub fn span_member<I: Int>(
    elem: &KKElement<I>,
    p: I,
    mode: EqualityMode,
) -> Result<Option<[I; 4]>> {
    check_setting(&elem.source, &elem.target, p)?;
    let (src, tgt) = (elem.source, elem.target);
    let pk = elem.default_modulus();
    let basics = HomKind::ALL.map(|k| KKElement::basic(k, src, tgt).and_then(|b| gamma(&b, pk)));
    let [g0, g1, g2, g3] = match basics {
        [Ok(a), Ok(b), Ok(c), Ok(d)] => [a, b, c, d],
        other => return Err(other.into_iter().find_map(|r| r.err()).expect("some error")),
    };
    let target = gamma(elem, pk)?;
    let total = target.x;
    if total < I::zero() {
        return Ok(None);
    }
    let space = SignatureSpace {
        p: pk,
        y_modulus: (mode == EqualityMode::Map).then(|| tgt.s()),
        mode,
    };
    let want = space.of(&target);
    let sig = [&g0, &g1, &g2, &g3].map(|t| space.of(t));
    let w = [g0.x, g1.x, g2.x, g3.x];

    let mut best: Option<[I; 4]> = None;
    for c in span(I::zero(), total / w[2]) {
        let after_c = total - c * w[2];
        for e in span(I::zero(), after_c / w[3]) {
            let y = space.reduce_y(c * sig[2].y + e * sig[3].y);
            if y != want.y {
                continue;
            }
            let rest = after_c - e * w[3];
            let a_max = match best {
                Some(bst) => bst[0].min(rest / w[0]),
                None => rest / w[0],
            };
            for a in span(I::zero(), a_max) {
                let rem = rest - a * w[0];
                if !rem.is_multiple_of(&w[1]) {
                    continue;
                }
                let b = rem / w[1];
                let coeffs = [a, b, c, e];
                let hit = (0..4).all(|i| {
                    let v = coeffs
                        .iter()
                        .zip(&sig)
                        .fold(I::zero(), |acc, (k, s)| acc + *k * s.residues[i]);
                    modp(v, space.p) == want.residues[i]
                });
                if hit {
                    if best.is_none_or(|bst| coeffs < bst) {
                        best = Some(coeffs);
                    }
                    break;
                }
            }
        }
    }

    if let Some(coeffs) = best {
        let recombined = KKElement::new(src, tgt, coeffs)?;
        if !kk_equal(&recombined, elem, mode)? {
            return Err(Error::Internal(format!(
                "span witness {recombined} differs from {elem}"
            )));
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Agreement {
    pub dl_vs_span: bool,
    pub js_vs_span: bool,
}

/// The joint verdict for one KK-class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftReport<I> {
    pub element: KKElement<I>,
    pub p: I,
    pub equality_mode: EqualityMode,
    pub dl_positive: bool,
    pub dl_witness: Option<DlWitness<I>>,
    pub js_positive: bool,
    pub js_images: [KHomologyClass<I>; 2],
    pub span_member: bool,
    pub span_witness: Option<[I; 4]>,
    pub agreement: Agreement,
}

pub fn lift_report<I: Int>(e: &KKElement<I>, p: I, mode: EqualityMode) -> Result<LiftReport<I>> {
    let dl_witness = dl_check(e, p)?;
    let js_images = js_action(e)?;
    let js_positive = khomology_positive(&js_images[0])? && khomology_positive(&js_images[1])?;
    let span_witness = span_member(e, p, mode)?;
    let dl = dl_witness.is_none();
    let sm = span_witness.is_some();
    Ok(LiftReport {
        element: *e,
        p,
        equality_mode: mode,
        dl_positive: dl,
        dl_witness,
        js_positive,
        js_images,
        span_member: sm,
        span_witness,
        agreement: Agreement {
            dl_vs_span: dl == sm,
            js_vs_span: js_positive == sm,
        },
    })
}

/// Family elements with `x <= x_max` that preserve order but have no span
/// witness, sorted by `(x, d)`.
///
/// Under map equality every family element with `x >= m` has a span
/// witness, so those are skipped there; strict equality searches the full
/// range.
pub fn search_counterexamples<I: Int>(
    a: &DimensionDropAlgebra<I>,
    b: &DimensionDropAlgebra<I>,
    p: I,
    x_max: I,
    include_torsion: bool,
    mode: EqualityMode,
) -> Result<Vec<(FamilyElement<I>, LiftReport<I>)>> {
    check_setting(a, b, p)?;
    if x_max < I::zero() {
        return Err(Error::Mismatch(format!(
            "x_max must be non-negative, got {x_max}"
        )));
    }
    let d_range = if include_torsion { a.s() } else { I::one() };
    let x_hi = match mode {
        EqualityMode::Map => x_max.min(a.m() - I::one()),
        EqualityMode::Strict => x_max,
    };
    let mut out = Vec::new();
    for x in span(I::zero(), x_hi) {
        for d in upto(d_range) {
            let e = family_element(a, b, x, d)?;
            if !dl_positive(&e, p)? {
                continue;
            }
            let report = lift_report(&e, p, mode)?;
            if !report.span_member {
                out.push((FamilyElement { x, d }, report));
            }
        }
    }
    Ok(out)
}

/// One row of the fixed audit scenario.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditRow<I> {
    pub x: I,
    pub element: KKElement<I>,
    pub closed_form: ClosedForm<I>,
    pub dl_positive: bool,
    pub js_liftable: bool,
    pub span_map: Option<[I; 4]>,
    pub span_strict: Option<[I; 4]>,
}

/// A published assertion about the audit scenario and whether the
/// computation agrees with it, per equality mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceClaim {
    pub id: &'static str,
    pub statement: &'static str,
    pub agrees_map: bool,
    pub agrees_strict: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport<I> {
    pub algebra: DimensionDropAlgebra<I>,
    pub p: I,
    pub beta: (I, I),
    pub rows: Vec<AuditRow<I>>,
    /// `x` values of order-preserving family elements (`d = 0`, `x < m`)
    /// without a span witness.
    pub search_map: Vec<I>,
    pub search_strict: Vec<I>,
    pub claims: Vec<ReferenceClaim>,
    /// Every span witness recombines to its element.
    pub witnesses_valid: bool,
    /// Every span member passes the K-homology test.
    pub span_implies_js: bool,
}

impl<I: Int> AuditReport<I> {
    pub fn cross_checks_pass(&self) -> bool {
        self.witnesses_valid && self.span_implies_js
    }
}

/// Scenario constants: `I[2,12,3]` to itself at `p = 12`.
pub const AUDIT_ALGEBRA: (i64, i64, i64) = (2, 12, 3);
pub const AUDIT_P: i64 = 12;
pub const AUDIT_XS: [i64; 4] = [1, 2, 3, 5];

/// Runs the fixed counterexample scenario under both equality modes.
pub fn audit_claims<I: Int>() -> Result<AuditReport<I>> {
    let (m0, m, m1) = AUDIT_ALGEBRA;
    let a = DimensionDropAlgebra::new(I::lit(m0), I::lit(m), I::lit(m1))?;
    let p = I::lit(AUDIT_P);
    let bz = bezout_canonical(a.m0(), a.m1())?;

    let mut rows = Vec::new();
    let mut witnesses_valid = true;
    let mut span_implies_js = true;
    for x in AUDIT_XS.map(I::lit) {
        let e = family_element(&a, &a, x, I::zero())?;
        let js = js_liftable(&e)?;
        let span_map = span_member(&e, p, EqualityMode::Map)?;
        let span_strict = span_member(&e, p, EqualityMode::Strict)?;
        for (w, mode) in [
            (span_map, EqualityMode::Map),
            (span_strict, EqualityMode::Strict),
        ] {
            if let Some(w) = w {
                witnesses_valid &= kk_equal(&KKElement::new(a, a, w)?, &e, mode)?;
                span_implies_js &= js;
            }
        }
        rows.push(AuditRow {
            x,
            element: e,
            closed_form: dl_closed_form(&a, x)?,
            dl_positive: dl_positive(&e, p)?,
            js_liftable: js,
            span_map,
            span_strict,
        });
    }

    let x_max = a.m() - I::one();
    let xs = |mode| -> Result<Vec<I>> {
        let found = search_counterexamples(&a, &a, p, x_max, false, mode)?;
        Ok(found.into_iter().map(|(f, _)| f.x).collect())
    };
    let search_map = xs(EqualityMode::Map)?;
    let search_strict = xs(EqualityMode::Strict)?;

    let row = |x: i64| {
        rows.iter()
            .find(|r| r.x == I::lit(x))
            .expect("scenario row")
    };
    let r2 = row(2);
    let closed_form_claim = r2.closed_form.holds
        && r2.closed_form.first == I::lit(16)
        && r2.closed_form.second == I::lit(24)
        && r2.closed_form.r == I::lit(4)
        && r2.closed_form.s == I::zero();
    let x2_claim = |w: &Option<[I; 4]>| r2.dl_positive && w.is_none() && !r2.js_liftable;
    let exact_set = |found: &[I]| found == [I::lit(3), I::lit(5)];
    let claims = vec![
        ReferenceClaim {
            id: "closed-form-x2",
            statement: "at x = 2 the inequalities 8x >= 12, 12x >= 12, R = 4 <= 2x, S = 0 <= 3x hold",
            agrees_map: closed_form_claim,
            agrees_strict: closed_form_claim,
        },
        ReferenceClaim {
            id: "x2-not-liftable",
            statement: "4 delta0 - 2 delta1 preserves order and fails the K-homology lifting test",
            agrees_map: x2_claim(&r2.span_map),
            agrees_strict: x2_claim(&r2.span_strict),
        },
        ReferenceClaim {
            id: "complete-list-3-5",
            statement: "for x < m the non-liftable order-preserving family elements are exactly x = 3 and x = 5",
            agrees_map: exact_set(&search_map),
            agrees_strict: exact_set(&search_strict),
        },
    ];

    Ok(AuditReport {
        algebra: a,
        p,
        beta: (bz.beta0, bz.beta1),
        rows,
        search_map,
        search_strict,
        claims,
        witnesses_valid,
        span_implies_js,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::zmp_members;
    use proptest::prelude::*;

    type A = DimensionDropAlgebra<i64>;

    fn alg(m0: i64, m: i64, m1: i64) -> A {
        DimensionDropAlgebra::new(m0, m, m1).unwrap()
    }

    fn a12() -> A {
        alg(2, 12, 3)
    }

    fn el(c: [i64; 4]) -> KKElement<i64> {
        KKElement::new(a12(), a12(), c).unwrap()
    }

    #[test]
    fn family_examples() {
        let a = a12();
        assert_eq!(family_element(&a, &a, 2, 0).unwrap().coeffs, [4, -2, 0, 0]);
        assert_eq!(family_element(&a, &a, 0, 0).unwrap().coeffs, [0; 4]);
        assert_eq!(family_element(&a, &a, 5, 0).unwrap().coeffs, [10, -5, 0, 0]);
        assert_eq!(family_element(&a, &a, 2, 1).unwrap().coeffs, [1, 0, 0, 0]);
        assert!(matches!(
            family_element(&a, &a, 2, 2),
            Err(Error::BadTorsionIndex { .. })
        ));
        let bad = alg(2, 4, 2);
        assert!(family_element(&bad, &bad, 1, 0).is_err());
    }

    #[test]
    fn dl_examples() {
        assert!(dl_positive(&el([4, -2, 0, 0]), 12).unwrap());
        let w = dl_check(&el([2, -1, 0, 0]), 12).unwrap().unwrap();
        assert_eq!(w.generator_name(), "id");
        assert!(dl_positive(&el([1, 0, 0, 0]), 12).unwrap());
        assert!(matches!(
            dl_positive(&el([1, 0, 0, 0]), 8),
            Err(Error::ModulusNotMultiple { .. })
        ));
    }

    #[test]
    fn closed_form_examples() {
        let cf = dl_closed_form(&a12(), 2).unwrap();
        assert!(cf.holds);
        assert_eq!(
            (cf.first, cf.second, cf.r, cf.s, cf.r_bound, cf.s_bound),
            (16, 24, 4, 0, 4, 6)
        );
        assert!(dl_closed_form(&a12(), 0).unwrap().holds);
        let cf = dl_closed_form(&a12(), 1).unwrap();
        assert!(!cf.holds);
        assert_eq!(cf.first, 8);
        let cf = dl_closed_form(&a12(), 5).unwrap();
        assert!(cf.holds);
        assert_eq!((cf.first, cf.second, cf.r, cf.s), (40, 60, 4, 0));
        assert!(dl_closed_form(&alg(2, 4, 2), 1).is_err());
    }

    #[test]
    fn js_examples() {
        let [v0, v1] = js_action(&el([1, 0, 0, 0])).unwrap();
        assert_eq!(((v0.u, v0.v), (v1.u, v1.v)), ((2, 0), (3, 0)));
        let [v0, v1] = js_action(&el([0; 4])).unwrap();
        assert_eq!(((v0.u, v0.v), (v1.u, v1.v)), ((0, 0), (0, 0)));
        let [v0, v1] = js_action(&el([4, -2, 0, 0])).unwrap();
        assert_eq!(((v0.u, v0.v), (v1.u, v1.v)), ((8, -4), (12, -6)));

        assert!(js_liftable(&el([1, 1, 0, 0])).unwrap());
        assert!(!js_liftable(&el([-1, 0, 0, 0])).unwrap());
        assert!(js_liftable(&el([4, -2, 0, 0])).unwrap());
    }

    #[test]
    fn js_action_respects_target_relation() {
        // (n/m0)[V0^B] - (n/m1)[V1^B] = 0 must map to zero
        for (s, t) in [
            ((2, 12, 3), (2, 24, 3)),
            ((2, 18, 3), (2, 12, 3)),
            ((1, 10, 2), (1, 4, 2)),
        ] {
            let (a, b) = (alg(s.0, s.1, s.2), alg(t.0, t.1, t.2));
            for kind in HomKind::ALL {
                let [v0, v1] = js_action(&KKElement::basic(kind, a, b).unwrap()).unwrap();
                let rel = v0
                    .scale(b.m() / b.m0())
                    .add(&v1.scale(-(b.m() / b.m1())))
                    .unwrap();
                let zero = KHomologyClass::new(0, 0, a);
                assert!(
                    crate::algebra::khomology_equal(&rel, &zero).unwrap(),
                    "{kind} {a}->{b}"
                );
            }
        }
    }

    #[test]
    fn span_examples() {
        assert_eq!(
            span_member(&el([1, 1, 0, 0]), 12, EqualityMode::Map).unwrap(),
            Some([1, 1, 0, 0])
        );
        assert_eq!(
            span_member(&el([-1, 0, 0, 0]), 12, EqualityMode::Map).unwrap(),
            None
        );
        assert_eq!(
            span_member(&el([4, -2, 0, 0]), 12, EqualityMode::Map).unwrap(),
            Some([0, 0, 2, 0])
        );
        assert_eq!(
            span_member(&el([4, -2, 0, 0]), 12, EqualityMode::Strict).unwrap(),
            None
        );
        assert!(matches!(
            span_member(&el([1, 0, 0, 0]), 9, EqualityMode::Map),
            Err(Error::ModulusNotMultiple { .. })
        ));
    }

    /// Lexicographic scan of every non-negative tuple up to the
    /// K0-multiplicity, compared with `kk_equal`.
    fn span_oracle(e: &KKElement<i64>, mode: EqualityMode) -> Option<[i64; 4]> {
        let x = gamma(e, e.default_modulus()).unwrap().x;
        if x < 0 {
            return None;
        }
        for a in 0..=x {
            for b in 0..=x {
                for c in 0..=x {
                    for d in 0..=x {
                        let cand = KKElement::new(e.source, e.target, [a, b, c, d]).unwrap();
                        if gamma(&cand, e.default_modulus()).unwrap().x != x {
                            continue;
                        }
                        if kk_equal(&cand, e, mode).unwrap() {
                            return Some([a, b, c, d]);
                        }
                    }
                }
            }
        }
        None
    }

    #[test]
    fn span_matches_oracle() {
        let pairs = [
            (a12(), a12()),
            (alg(1, 4, 2), alg(1, 8, 2)),
            (alg(1, 6, 1), alg(1, 4, 1)),
        ];
        for (a, b) in pairs {
            for c0 in -3..=4 {
                for c1 in -3..=3 {
                    for k in 0..=2 {
                        let e = KKElement::new(a, b, [c0, c1, k, 0]).unwrap();
                        for mode in [EqualityMode::Map, EqualityMode::Strict] {
                            let p = e.default_modulus();
                            assert_eq!(
                                span_member(&e, p, mode).unwrap(),
                                span_oracle(&e, mode),
                                "{e} {mode}"
                            );
                        }
                    }
                }
            }
        }
    }

    /// Checks the image of every positive element with `a < 2p/m`, not just
    /// the cone generators.
    fn dl_oracle(e: &KKElement<i64>, p: i64) -> bool {
        let t = gamma(e, p).unwrap();
        let a = e.source;
        for av in 0..2 * p / a.m() {
            for (b, c) in zmp_members(&a, p).unwrap() {
                let g = GpElement::new(a, p, av, b, c).unwrap();
                if is_positive(&g).unwrap() && !is_positive(&push_forward(&t, &g).unwrap()).unwrap()
                {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn dl_matches_oracle() {
        for a in [a12(), alg(1, 6, 2), alg(3, 6, 2), alg(1, 4, 1)] {
            let p = a.m();
            for c0 in -4..=6 {
                for c1 in -4..=6 {
                    let e = KKElement::new(a, a, [c0, c1, 0, 0]).unwrap();
                    assert_eq!(dl_positive(&e, p).unwrap(), dl_oracle(&e, p), "{e} on {a}");
                }
            }
        }
    }

    #[test]
    fn report_examples() {
        let r = lift_report(&el([1, 0, 0, 0]), 12, EqualityMode::Map).unwrap();
        assert!(r.dl_positive && r.js_positive && r.span_member);
        assert_eq!(
            r.agreement,
            Agreement {
                dl_vs_span: true,
                js_vs_span: true
            }
        );
        let r = lift_report(&el([-1, 0, 0, 0]), 12, EqualityMode::Map).unwrap();
        assert!(!r.dl_positive && !r.js_positive && !r.span_member);
        assert_eq!(
            r.agreement,
            Agreement {
                dl_vs_span: true,
                js_vs_span: true
            }
        );
        assert!(r.dl_witness.is_some());

        let a = a12();
        let e = family_element(&a, &a, 2, 0).unwrap();
        let map = lift_report(&e, 12, EqualityMode::Map).unwrap();
        let strict = lift_report(&e, 12, EqualityMode::Strict).unwrap();
        assert!(map.dl_positive && strict.dl_positive);
        assert!(map.span_member && !strict.span_member);
        assert!(!strict.agreement.dl_vs_span);
    }

    #[test]
    fn search_examples() {
        let a = a12();
        let strict = search_counterexamples(&a, &a, 12, 11, false, EqualityMode::Strict).unwrap();
        let xs: Vec<i64> = strict.iter().map(|(f, _)| f.x).collect();
        assert_eq!(xs, (2..=11).collect::<Vec<_>>());
        assert!(
            search_counterexamples(&a, &a, 12, 11, false, EqualityMode::Map)
                .unwrap()
                .is_empty()
        );
        for mode in [EqualityMode::Map, EqualityMode::Strict] {
            assert!(search_counterexamples(&a, &a, 12, 0, true, mode)
                .unwrap()
                .is_empty());
        }
        assert!(search_counterexamples(&a, &a, 12, -1, false, EqualityMode::Map).is_err());
    }

    #[test]
    fn search_sorted_with_torsion() {
        let a = alg(2, 24, 3);
        let found = search_counterexamples(&a, &a, 24, 30, true, EqualityMode::Strict).unwrap();
        let keys: Vec<_> = found.iter().map(|(f, _)| *f).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert!(keys.iter().any(|f| f.d > 0));
    }

    #[test]
    fn classical_search_is_empty() {
        for (m, n) in [(2, 2), (3, 6), (4, 6), (5, 10)] {
            let (a, b) = (alg(1, m, 1), alg(1, n, 1));
            let p = m * n;
            for mode in [EqualityMode::Map, EqualityMode::Strict] {
                let found = search_counterexamples(&a, &b, p, 3 * m, true, mode).unwrap();
                assert!(found.is_empty(), "{a}->{b} {mode}");
            }
        }
    }

    #[test]
    fn prune_is_sound() {
        // every family element with x >= m has a map span witness
        for a in [a12(), alg(1, 10, 2), alg(3, 24, 4), alg(2, 30, 5)] {
            for x in a.m()..=2 * a.m() {
                for d in 0..a.s() {
                    let e = family_element(&a, &a, x, d).unwrap();
                    assert!(
                        span_member(&e, a.m(), EqualityMode::Map).unwrap().is_some(),
                        "{a} x={x} d={d}"
                    );
                }
            }
        }
    }

    #[test]
    fn positive_family_has_nonnegative_delta0() {
        for m in 2..=36 {
            for m0 in 1..=m {
                for m1 in 1..=m {
                    let Ok(a) = DimensionDropAlgebra::new(m0, m, m1) else {
                        continue;
                    };
                    if !a.is_valid() {
                        continue;
                    }
                    let d_max = m / (m0 * m1 * m0.max(m1));
                    for x in 0..=2 * m {
                        for d in 0..d_max.min(a.s()) {
                            let e = family_element(&a, &a, x, d).unwrap();
                            if dl_positive(&e, m).unwrap() {
                                assert!(e.coeffs[0] >= 0, "{a} x={x} d={d}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn closed_form_agrees_for_nontrivial_left_drop() {
        for m in 2..=36 {
            for m0 in 2..=m {
                for m1 in 1..=m {
                    let Ok(a) = DimensionDropAlgebra::new(m0, m, m1) else {
                        continue;
                    };
                    if !a.is_valid() {
                        continue;
                    }
                    for x in 0..=3 * m {
                        let e = family_element(&a, &a, x, 0).unwrap();
                        assert_eq!(
                            dl_closed_form(&a, x).unwrap().holds,
                            dl_positive(&e, m).unwrap(),
                            "{a} x={x}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn closed_form_rejects_homomorphism_when_m0_is_one() {
        // with m0 = 1 the family element is x·δ0, the class of a homomorphism
        let a = alg(1, 4, 2);
        let e = family_element(&a, &a, 1, 0).unwrap();
        assert_eq!(e.coeffs, [1, 0, 0, 0]);
        assert!(dl_positive(&e, 4).unwrap());
        assert!(!dl_closed_form(&a, 1).unwrap().holds);
    }

    #[test]
    fn audit_scenario() {
        let r = audit_claims::<i64>().unwrap();
        assert_eq!(r.beta, (2, -1));
        assert!(r.cross_checks_pass());
        let row = |x| r.rows.iter().find(|w| w.x == x).unwrap();
        assert!(!row(1).closed_form.holds);
        assert!(row(2).closed_form.holds);
        assert!(row(5).closed_form.holds);
        assert_eq!(row(2).span_map, Some([0, 0, 2, 0]));
        assert_eq!(row(3).span_map, Some([0, 1, 0, 0]));
        assert_eq!(row(5).span_map, Some([0, 1, 2, 0]));
        assert!(r.rows.iter().all(|w| w.span_strict.is_none()));
        assert!(r.search_map.is_empty());
        assert_eq!(r.search_strict, (2..=11).collect::<Vec<_>>());
        assert_eq!(r, audit_claims::<i64>().unwrap());
        let r32 = audit_claims::<i32>().unwrap();
        assert_eq!(r32.search_strict.len(), r.search_strict.len());
    }

    fn setting() -> impl Strategy<Value = (A, A)> {
        prop::sample::select(vec![
            ((2, 12, 3), (2, 12, 3)),
            ((2, 12, 3), (2, 24, 3)),
            ((2, 18, 3), (2, 12, 3)),
            ((1, 6, 1), (1, 4, 1)),
            ((1, 10, 2), (1, 20, 2)),
            ((3, 12, 4), (3, 24, 4)),
        ])
        .prop_map(|(s, t)| (alg(s.0, s.1, s.2), alg(t.0, t.1, t.2)))
    }

    proptest! {
        #[test]
        fn witnesses_recombine_and_imply_js(
            (a, b) in setting(),
            c in prop::array::uniform4(-4i64..=8),
            strict in any::<bool>(),
        ) {
            let mode = if strict { EqualityMode::Strict } else { EqualityMode::Map };
            let e = KKElement::new(a, b, c).unwrap();
            let r = lift_report(&e, e.default_modulus(), mode).unwrap();
            if let Some(w) = r.span_witness {
                prop_assert!(w.iter().all(|v| *v >= 0));
                prop_assert!(kk_equal(&KKElement::new(a, b, w).unwrap(), &e, mode).unwrap());
                prop_assert!(r.js_positive);
                prop_assert!(r.dl_positive);
            }
        }

        #[test]
        fn dl_verdict_independent_of_modulus(
            (a, b) in setting(),
            c in prop::array::uniform4(-4i64..=8),
        ) {
            let e = KKElement::new(a, b, c).unwrap();
            let p = e.default_modulus();
            prop_assert_eq!(dl_positive(&e, p).unwrap(), dl_positive(&e, 2 * p).unwrap());
        }
    }
}
