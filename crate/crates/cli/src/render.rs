//! Report builders. Each returns the JSON object and the text table for one
//! run; both are derived from the same computed values.

use std::fmt::Write as _;

use kkdrop::coeff::{
    self, bockstein_mu, bockstein_nu, cone_generators, verify_bockstein_exactness, zmp_generators,
    zmp_members,
};
use kkdrop::kk::{gamma, kk_canonical, kk_group_info};
use kkdrop::lifting::{audit_claims, lift_report, search_counterexamples, DlWitness};
use kkdrop::triples::{induced_triple, validate_triple};
use kkdrop::{Algebra, BasicHom, Element, EqualityMode, Error, HomKind, Kk, Report, Triple};
use serde_json::{json, Value};

type Result<T> = std::result::Result<T, Error>;

pub struct Output {
    pub json: Value,
    pub text: String,
    /// Set when a runtime invariant failed; the report is still printed.
    pub inconsistency: Option<String>,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Self {
            json,
            text,
            inconsistency: None,
        }
    }
}

/// Key/value line with the key padded to a fixed column.
fn line(out: &mut String, key: &str, value: impl std::fmt::Display) {
    let _ = writeln!(out, "{key:<18}{value}");
}

fn heading(out: &mut String, title: &str) {
    if !out.is_empty() {
        out.push('\n');
    }
    let _ = writeln!(out, "{title}");
    let _ = writeln!(out, "{}", "-".repeat(title.len()));
}

fn pair(v: (i64, i64)) -> String {
    format!("({},{})", v.0, v.1)
}

fn tuple4(v: &[i64; 4]) -> String {
    format!("({},{},{},{})", v[0], v[1], v[2], v[3])
}

fn opt4(v: &Option<[i64; 4]>) -> String {
    v.as_ref().map_or_else(|| "none".to_string(), tuple4)
}

fn triple_json(t: &Triple) -> Value {
    json!({ "x": t.x, "phi": t.phi, "y": t.y, "p": t.p })
}

fn element_json(e: &Element) -> Value {
    json!([e.a, e.b, e.c])
}

pub fn ktheory(a: &Algebra, p: i64) -> Result<Output> {
    a.require_valid()?;
    a.require_divides(p)?;
    let s = a.k1_order()?;
    let gens = zmp_generators(a, p);
    let order = zmp_members(a, p)?.len();
    let mu = bockstein_mu(a, p, 1)?;
    let nu: Vec<i64> = gens
        .iter()
        .map(|g| bockstein_nu(a, p, *g))
        .collect::<Result<_>>()?;
    let cone = cone_generators(a, p)?;
    let (u, w) = (a.m() / a.m1(), a.m() / a.m0());

    let json = json!({
        "algebra": a.to_string(),
        "p": p,
        "k0": "Z",
        "k1_order": s,
        "zmp_order": order,
        "zmp_generators": gens.map(|g| [g.0, g.1]),
        "mu": [mu.0, mu.1],
        "nu": {
            "formula": format!("(b,c) -> ({u}c - {w}b)/{p} mod {s}"),
            "on_generators": gens.iter().zip(&nu).map(|(g, v)| json!({ "element": [g.0, g.1], "value": v })).collect::<Vec<_>>(),
        },
        "cone_generators": HomKind::ALL.iter().zip(&cone).map(|(k, g)| json!({ "class": k.name(), "element": element_json(g) })).collect::<Vec<_>>(),
    });

    let mut text = String::new();
    heading(
        &mut text,
        &format!("K-theory of {a} with coefficients, p = {p}"),
    );
    line(&mut text, "K0", "Z");
    line(&mut text, "K1", format!("Z/{s}"));
    line(
        &mut text,
        "K0(A; Z/p)",
        format!(
            "Z({},{p}), order {order}, generated by {} and {}",
            a.m(),
            pair(gens[0]),
            pair(gens[1])
        ),
    );
    heading(&mut text, "Bockstein maps");
    line(
        &mut text,
        "mu",
        format!(
            "k -> k{} mod {p}; mu(1) = {}",
            pair((a.m0(), a.m1())),
            pair(mu)
        ),
    );
    line(
        &mut text,
        "nu",
        format!("(b,c) -> ({u}c - {w}b)/{p} mod {s}"),
    );
    for (g, v) in gens.iter().zip(&nu) {
        line(
            &mut text,
            &format!("nu{}", pair(*g)),
            format!("{v} in Z/{s}"),
        );
    }
    heading(&mut text, "Positive cone generators");
    for (k, g) in HomKind::ALL.iter().zip(&cone) {
        line(&mut text, &format!("[{k}]"), g);
    }
    Ok(Output::ok(json, text))
}

pub fn exactness(a: &Algebra, p: i64) -> Result<Output> {
    let r = verify_bockstein_exactness(a, p)?;
    let json = json!({
        "algebra": a.to_string(),
        "p": p,
        "passed": r.passed(),
        "zmp_order": r.zmp_order,
        "k1_order": r.k1_order,
        "segments": r.segments.iter().map(|s| json!({ "name": s.name, "passed": s.passed, "witness": s.witness })).collect::<Vec<_>>(),
    });
    let mut text = String::new();
    heading(&mut text, &format!("Bockstein exactness for {a}, p = {p}"));
    for s in &r.segments {
        let verdict = if s.passed {
            "pass".to_string()
        } else {
            format!("FAIL {}", s.witness.as_deref().unwrap_or(""))
        };
        line(&mut text, s.name, verdict);
    }
    line(&mut text, "passed", r.passed());
    let mut out = Output::ok(json, text);
    if !r.passed() {
        out.inconsistency = Some(format!("exactness fails for {a} at p = {p}"));
    }
    Ok(out)
}

pub fn cone_decompose(a: &Algebra, p: i64, element: [i64; 3]) -> Result<Output> {
    let e = Element::new(*a, p, element[0], element[1], element[2])?;
    let coeffs = coeff::cone_decompose(&e)?;
    let json = json!({
        "algebra": a.to_string(),
        "p": p,
        "element": element_json(&e),
        "coeffs": coeffs,
    });
    let mut text = String::new();
    heading(&mut text, &format!("Cone decomposition in K0({a}; G_{p})"));
    line(&mut text, "element", e);
    line(&mut text, "coefficients", tuple4(&coeffs));
    for (k, c) in HomKind::ALL.iter().zip(coeffs) {
        line(&mut text, &format!("  [{k}]"), c);
    }
    Ok(Output::ok(json, text))
}

pub fn triple(
    a: &Algebra,
    b: &Algebra,
    p: i64,
    kind: Option<HomKind>,
    coeffs: Option<[i64; 4]>,
) -> Result<Output> {
    let (label, t) = match (kind, coeffs) {
        (Some(k), _) => (
            k.name().to_string(),
            induced_triple(&BasicHom::new(k, *a, *b)?, p)?,
        ),
        (None, Some(c)) => {
            let e = Kk::new(*a, *b, c)?;
            (e.to_string(), gamma(&e, p)?)
        }
        (None, None) => {
            return Err(Error::Mismatch(
                "either --kind or --coeffs is required".into(),
            ))
        }
    };
    let defect = validate_triple(&t)?;
    let mut j = triple_json(&t);
    j["valid"] = json!(defect.is_none());
    j["defect"] = json!(defect.as_ref().map(|d| d.to_string()));
    let mut text = String::new();
    heading(
        &mut text,
        &format!("Induced triple of {label}: {a} -> {b}, p = {p}"),
    );
    line(&mut text, "x", t.x);
    line(
        &mut text,
        "phi",
        format!(
            "[[{},{}],[{},{}]]",
            t.phi[0][0], t.phi[0][1], t.phi[1][0], t.phi[1][1]
        ),
    );
    line(&mut text, "y", t.y);
    line(&mut text, "valid", defect.is_none());
    if let Some(d) = &defect {
        line(&mut text, "defect", d);
    }
    let mut out = Output::ok(j, text);
    if kind.is_some() {
        if let Some(d) = defect {
            out.inconsistency = Some(format!("induced triple fails validation: {d}"));
        }
    }
    Ok(out)
}

pub fn kk_canon(a: &Algebra, b: &Algebra, coeffs: [i64; 4]) -> Result<Output> {
    let e = Kk::new(*a, *b, coeffs)?;
    let c = kk_canonical(&e)?;
    let info = kk_group_info(a, b)?;
    let expr = c.expression(*a, *b)?;
    let json = json!({
        "element": { "coeffs": coeffs },
        "p": e.default_modulus(),
        "x": c.x,
        "y_mod": c.y_mod,
        "d": c.d,
        "expression": { "k": c.k, "c0": c.c0, "c1": c.c1 },
        "group": {
            "free_rank": info.free_rank,
            "formula_torsion": [info.formula_torsion.0, info.formula_torsion.1],
            "hom_k1_order": info.hom_k1_order,
            "ext_order": info.ext_order,
            "enumerated_torsion_count": info.enumerated_torsion_count,
            "enumerated_torsion_any_y": info.census.map_classes_any_y,
            "strict_torsion_matrices": info.census.strict_matrices,
            "formula_matches_enumeration": info.formula_matches_enumeration,
        },
    });
    let mut text = String::new();
    heading(&mut text, &format!("Canonical form of {e} in KK({a}, {b})"));
    line(&mut text, "x", c.x);
    line(&mut text, "y_mod", c.y_mod);
    line(&mut text, "d", c.d);
    line(&mut text, "expression", expr);
    heading(&mut text, "Group structure");
    line(&mut text, "free_rank", info.free_rank);
    line(
        &mut text,
        "formula_torsion",
        format!(
            "Z/{} + Z/{}",
            info.formula_torsion.0, info.formula_torsion.1
        ),
    );
    line(&mut text, "hom_k1_order", info.hom_k1_order);
    line(&mut text, "ext_order", info.ext_order);
    line(&mut text, "torsion (y = 0)", info.enumerated_torsion_count);
    line(&mut text, "torsion (all y)", info.census.map_classes_any_y);
    line(
        &mut text,
        "formula_matches",
        info.formula_matches_enumeration,
    );
    Ok(Output::ok(json, text))
}

fn report_json(r: &Report) -> Value {
    json!({
        "element": { "coeffs": r.element.coeffs },
        "p": r.p,
        "mode": r.equality_mode.name(),
        "dl_positive": r.dl_positive,
        "js_positive": r.js_positive,
        "span_member": r.span_member,
        "span_witness": r.span_witness,
        "agreement": {
            "dl_vs_span": r.agreement.dl_vs_span,
            "js_vs_span": r.agreement.js_vs_span,
        },
    })
}

fn witness_text(w: &DlWitness<i64>) -> String {
    format!("[{}] maps to {}", w.generator_name(), w.image)
}

fn report_text(out: &mut String, r: &Report) {
    line(
        out,
        "element",
        format!("{} {}", r.element, tuple4(&r.element.coeffs)),
    );
    line(out, "p", r.p);
    line(out, "mode", r.equality_mode);
    line(out, "dl_positive", r.dl_positive);
    if let Some(w) = &r.dl_witness {
        line(out, "  failing", witness_text(w));
    }
    line(out, "js_positive", r.js_positive);
    let [v0, v1] = &r.js_images;
    line(
        out,
        "  images",
        format!("{}, {}", pair((v0.u, v0.v)), pair((v1.u, v1.v))),
    );
    line(out, "span_member", r.span_member);
    line(out, "span_witness", opt4(&r.span_witness));
    line(out, "dl_vs_span", r.agreement.dl_vs_span);
    line(out, "js_vs_span", r.agreement.js_vs_span);
}

/// A span witness is a sum of homomorphism classes, so it must pass both
/// positivity checks.
fn soundness(r: &Report) -> Option<String> {
    (r.span_member && !(r.dl_positive && r.js_positive)).then(|| {
        format!(
            "span witness {} for {} fails a positivity check",
            opt4(&r.span_witness),
            r.element
        )
    })
}

pub fn lift_check(
    a: &Algebra,
    b: &Algebra,
    p: i64,
    coeffs: [i64; 4],
    mode: EqualityMode,
) -> Result<Output> {
    let e = Kk::new(*a, *b, coeffs)?;
    let r = lift_report(&e, p, mode)?;
    let mut text = String::new();
    heading(&mut text, &format!("Lifting checks in KK({a}, {b})"));
    report_text(&mut text, &r);
    let mut out = Output::ok(report_json(&r), text);
    out.inconsistency = soundness(&r);
    Ok(out)
}

pub fn search(
    a: &Algebra,
    b: &Algebra,
    p: i64,
    x_max: i64,
    include_torsion: bool,
    mode: EqualityMode,
) -> Result<Output> {
    let found = search_counterexamples(a, b, p, x_max, include_torsion, mode)?;
    let json = json!({
        "source": a.to_string(),
        "target": b.to_string(),
        "p": p,
        "mode": mode.name(),
        "x_max": x_max,
        "include_torsion": include_torsion,
        "count": found.len(),
        "candidates": found.iter().map(|(f, r)| json!({ "x": f.x, "d": f.d, "report": report_json(r) })).collect::<Vec<_>>(),
    });
    let mut text = String::new();
    heading(
        &mut text,
        &format!("Order preserving family elements without span witness, {a} -> {b}"),
    );
    line(&mut text, "p", p);
    line(&mut text, "mode", mode);
    line(&mut text, "x_max", x_max);
    line(&mut text, "include_torsion", include_torsion);
    line(&mut text, "count", found.len());
    if !found.is_empty() {
        let _ = writeln!(
            text,
            "\n{:>4} {:>4}  {:<22} {:<6} js",
            "x", "d", "element", "dl"
        );
        for (f, r) in &found {
            let _ = writeln!(
                text,
                "{:>4} {:>4}  {:<22} {:<6} {}",
                f.x,
                f.d,
                r.element.to_string(),
                r.dl_positive,
                r.js_positive
            );
        }
    }
    Ok(Output::ok(json, text))
}

pub fn audit() -> Result<Output> {
    let r = audit_claims::<i64>()?;
    let rows: Vec<Value> = r
        .rows
        .iter()
        .map(|w| {
            let cf = &w.closed_form;
            json!({
                "x": w.x,
                "element": { "coeffs": w.element.coeffs },
                "closed_form": {
                    "holds": cf.holds,
                    "first": cf.first,
                    "second": cf.second,
                    "r": cf.r,
                    "s": cf.s,
                    "r_bound": cf.r_bound,
                    "s_bound": cf.s_bound,
                },
                "dl_positive": w.dl_positive,
                "js_liftable": w.js_liftable,
                "span": { "map": w.span_map, "strict": w.span_strict },
            })
        })
        .collect();
    let json = json!({
        "scenario": {
            "algebra": r.algebra.to_string(),
            "p": r.p,
            "beta": [r.beta.0, r.beta.1],
            "xs": r.rows.iter().map(|w| w.x).collect::<Vec<_>>(),
        },
        "rows": rows,
        "search": { "map": r.search_map, "strict": r.search_strict },
        "claims": r.claims.iter().map(|c| json!({
            "id": c.id,
            "statement": c.statement,
            "agrees": { "map": c.agrees_map, "strict": c.agrees_strict },
        })).collect::<Vec<_>>(),
        "cross_checks": {
            "witnesses_valid": r.witnesses_valid,
            "span_implies_js": r.span_implies_js,
            "passed": r.cross_checks_pass(),
        },
    });

    let mut text = String::new();
    heading(
        &mut text,
        &format!(
            "Audit: {} -> {}, p = {}, beta = {}",
            r.algebra,
            r.algebra,
            r.p,
            pair(r.beta)
        ),
    );
    let _ = writeln!(
        text,
        "{:>3}  {:<20} {:<16} {:<6} {:<6} {:<6} {:<11} span strict",
        "x", "element", "closed form", "R,S", "dl", "js", "span map"
    );
    for w in &r.rows {
        let cf = &w.closed_form;
        let _ = writeln!(
            text,
            "{:>3}  {:<20} {:<16} {:<6} {:<6} {:<6} {:<11} {}",
            w.x,
            w.element.to_string(),
            format!("{} ({},{})", cf.holds, cf.first, cf.second),
            format!("{},{}", cf.r, cf.s),
            w.dl_positive,
            w.js_liftable,
            opt4(&w.span_map),
            opt4(&w.span_strict),
        );
    }
    heading(&mut text, "Search over x < m, d = 0");
    line(&mut text, "map", format!("{:?}", r.search_map));
    line(&mut text, "strict", format!("{:?}", r.search_strict));
    heading(&mut text, "Reference claims");
    for c in &r.claims {
        line(&mut text, c.id, c.statement);
        line(
            &mut text,
            "  agrees",
            format!("map {}, strict {}", c.agrees_map, c.agrees_strict),
        );
    }
    heading(&mut text, "Cross-checks");
    line(&mut text, "witnesses_valid", r.witnesses_valid);
    line(&mut text, "span_implies_js", r.span_implies_js);

    let mut out = Output::ok(json, text);
    if !r.cross_checks_pass() {
        out.inconsistency = Some("audit cross-checks failed".into());
    }
    Ok(out)
}
