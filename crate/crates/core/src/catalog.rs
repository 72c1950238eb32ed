//! Named R-matrices, gauge matrices and relation lists.
//!
//! The `(q,h,h')` family is also available in the radical-free chart
//! `(q, η, ζ)`, where
//! `h = (q−1)η(1+ηζ)/(1+2ηζ)` and `h' = (q−1)ζ/(1+2ηζ)`,
//! so that `h/η + ηh' = q − 1` holds identically.

use std::collections::BTreeMap;
use std::sync::LazyLock;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{parse_expr, sym, Polynomial, RatFunc, Symbol};
use crate::freealg::NCPoly;
use crate::linalg::{conj_tensor_square, MatRF, Orientation};

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub name: String,
    pub params: Vec<Symbol>,
    pub matrix: MatRF,
    /// Polynomials required to vanish (e.g. the κ quadratic).
    pub constraints: Vec<Polynomial>,
    pub notes: String,
}

/// Chart expressions for the derived `(q,h,h')` quantities.
pub const CHART_H: &str = "(q-1)*eta*(1+eta*zeta)/(1+2*eta*zeta)";
pub const CHART_HP: &str = "(q-1)*zeta/(1+2*eta*zeta)";
pub const CHART_KAPPA1: &str = "(1+2*eta*zeta)/(eta*q*zeta+eta*zeta+q)";
pub const CHART_KAPPA2: &str = "(1+2*eta*zeta)/(eta*q*zeta+eta*zeta+1)";
pub const KAPPA_QUADRATIC: &str = "kappa^2*(q+h*hp) - kappa*(q+1) + 1";

struct Spec {
    name: &'static str,
    params: &'static [&'static str],
    rows: [[&'static str; 4]; 4],
    n: usize,
    constraints: &'static [&'static str],
    notes: &'static str,
}

const fn m4(
    name: &'static str,
    params: &'static [&'static str],
    rows: [[&'static str; 4]; 4],
    constraints: &'static [&'static str],
    notes: &'static str,
) -> Spec {
    Spec { name, params, rows, n: 4, constraints, notes }
}

const fn m2(name: &'static str, params: &'static [&'static str], r: [[&'static str; 2]; 2], notes: &'static str) -> Spec {
    Spec { name, params, rows: [[r[0][0], r[0][1], "", ""], [r[1][0], r[1][1], "", ""], ["", "", "", ""], ["", "", "", ""]], n: 2, constraints: &[], notes }
}

static SPECS: &[Spec] = &[
    m4(
        "kup_R",
        &["q", "h", "hp", "kappa"],
        [
            ["1", "-h*kappa", "h*kappa", "0"],
            ["0", "q*kappa", "1-q*kappa", "0"],
            ["0", "1-kappa", "kappa", "0"],
            ["0", "-hp*kappa", "hp*kappa", "1"],
        ],
        &[KAPPA_QUADRATIC],
        "Kupershmidt (q,h,h') RTT solution with free κ; YBE needs the κ quadratic",
    ),
    m2("kup_G", &["eta", "zeta"], [["1", "eta"], ["zeta", "1+eta*zeta"]], "gauge matrix of the (q,η,ζ) chart"),
    m2("kup_Ginv", &["eta", "zeta"], [["1+eta*zeta", "-eta"], ["-zeta", "1"]], "inverse of kup_G"),
    m4(
        "kup_Rhybrid",
        &["q", "h"],
        [["1", "-h", "h", "0"], ["0", "q", "1-q", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1"]],
        &[],
        "h'=0 member at κ=κ2=1",
    ),
    m2("kup_Ghybrid", &["q", "h"], [["1", "h/(q-1)"], ["0", "1"]], "gauge removing h at h'=0 (ζ=0, η=h/(q-1))"),
    m4(
        "kup_Rq1",
        &["q"],
        [["1", "0", "0", "0"], ["0", "q", "1-q", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1"]],
        &[],
        "upper-triangular one-parameter standard form",
    ),
    m4(
        "bhp_Rqh",
        &["q", "h"],
        [["1", "h", "-q*h", "h^2"], ["0", "q", "1-q^2", "q*h"], ["0", "0", "q", "-h"], ["0", "0", "0", "1"]],
        &[],
        "two-parameter superposition of standard and Jordanian deformations",
    ),
    m2("bhp_M", &["q", "h", "x"], [["x", "h/(q-1)"], ["0", "1"]], "gauge carrying bhp_Rqh to std_Rq (MinvRM), any x"),
    m4(
        "std_Rq",
        &["q"],
        [["1", "0", "0", "0"], ["0", "q", "1-q^2", "0"], ["0", "0", "q", "0"], ["0", "0", "0", "1"]],
        &[],
        "standard GL_q(2) R-matrix",
    ),
    m4(
        "pq_Rpq",
        &["p", "q"],
        [["p", "0", "0", "0"], ["0", "p*q", "p-q", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "p"]],
        &[],
        "two-parameter standard GL_pq(2)",
    ),
    m2("pq_G", &["eta"], [["1", "eta"], ["0", "1"]], "fundamental image of the q-exponential twist"),
    m4(
        "pq_Rpq_conj",
        &["p", "q", "eta"],
        [
            ["p", "p*(1-q)*eta", "(q-1)*eta", "(1-p)*(q-1)*eta^2"],
            ["0", "p*q", "p-q", "q*(p-1)*eta"],
            ["0", "0", "1", "(1-p)*eta"],
            ["0", "0", "0", "p"],
        ],
        &[],
        "pq_Rpq conjugated by pq_G (MinvRM)",
    ),
    m4(
        "jordanian_Rgh",
        &["g", "h"],
        [["1", "-h", "h", "g*h"], ["0", "1", "0", "-g"], ["0", "0", "1", "g"], ["0", "0", "0", "1"]],
        &[],
        "two-parameter Jordanian GL_gh(2)",
    ),
    m4(
        "jordanian_Rh",
        &["h"],
        [["1", "-h", "h", "h^2"], ["0", "1", "0", "-h"], ["0", "0", "1", "h"], ["0", "0", "0", "1"]],
        &[],
        "one-parameter Jordanian form, g=h",
    ),
    m4(
        "jordanian_Rh0",
        &["h"],
        [["1", "-h", "h", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1"]],
        &[],
        "one-parameter Jordanian form, g=0",
    ),
    m4(
        "hiet_S21",
        &["p", "q"],
        [["1", "0", "0", "0"], ["0", "p", "1-p*q", "0"], ["0", "0", "q", "0"], ["0", "0", "0", "1"]],
        &[],
        "Hietarinta S2,1",
    ),
    m4(
        "hiet_S22",
        &["p", "q"],
        [["1", "0", "0", "0"], ["0", "p", "1-p*q", "0"], ["0", "0", "q", "0"], ["0", "0", "0", "-p*q"]],
        &[],
        "Hietarinta S2,2",
    ),
    m4(
        "hiet_H13",
        &["g", "h"],
        [["1", "-h", "h", "g*h"], ["0", "1", "0", "-g"], ["0", "0", "1", "g"], ["0", "0", "0", "1"]],
        &[],
        "Hietarinta H1,3 at k=1, p=-h, q=-g",
    ),
    m4(
        "hiet_H23",
        &["x1", "x2", "x3"],
        [["1", "x1", "x2", "x3"], ["0", "1", "0", "x2"], ["0", "0", "1", "x1"], ["0", "0", "0", "1"]],
        &[],
        "Hietarinta H2,3 at k=1, p=x1, q=x2, s=x3",
    ),
    m4(
        "hiet_S01",
        &[],
        [["1", "0", "0", "1"], ["0", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1"]],
        &[],
        "Hietarinta S0,1",
    ),
    m4(
        "hiet_S02",
        &[],
        [["1", "0", "0", "1"], ["0", "-1", "0", "0"], ["0", "0", "-1", "0"], ["0", "0", "0", "1"]],
        &[],
        "Hietarinta S0,2",
    ),
    m4(
        "gl11_Rqh",
        &["q", "h"],
        [["1", "0", "0", "h"], ["0", "1", "1-q", "0"], ["0", "0", "q", "0"], ["0", "0", "0", "-q"]],
        &[],
        "hybrid GL_qh(1|1), Hietarinta H1,2 at p=1, k=h",
    ),
    m4(
        "gl11_R1h",
        &["h"],
        [["1", "0", "0", "h"], ["0", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "-1"]],
        &[],
        "gl11_Rqh at q=1",
    ),
    m2("gl11_M", &["x", "y"], [["x", "y"], ["0", "1/x"]], "upper-triangular unimodular gauge"),
    m4(
        "gl11_Rqh_transformed",
        &["q", "h", "x", "y"],
        [
            ["1", "0", "0", "h*x^4-(1+q)*(x*y)^2"],
            ["0", "1", "1-q", "-2*x*y"],
            ["0", "0", "q", "-2*q*x*y"],
            ["0", "0", "0", "-q"],
        ],
        &[],
        "gl11_Rqh conjugated by gl11_M (GRG)",
    ),
    m4(
        "gl11_Rqh_w",
        &["q", "x", "w"],
        [["1", "0", "0", "0"], ["0", "1", "1-q", "-2*x^2*w"], ["0", "0", "q", "-2*q*x^2*w"], ["0", "0", "0", "-q"]],
        &[],
        "gl11_Rqh_transformed with h=(1+q)w², y=xw, so h'=-2x²w",
    ),
];

/// Entries built from other entries rather than from a table.
const DERIVED: &[(&str, &str)] = &[
    ("kup_R_chart", "kup_R with h, h' in the (q,η,ζ) chart"),
    ("kup_Rprime", "displayed (G⊗G)R(G⁻¹⊗G⁻¹) with blocks κ/κ1, κ/κ2"),
    ("kup_Rprime1", "kup_Rprime at κ=κ1 (lower triangular)"),
    ("kup_Rprime2", "kup_Rprime at κ=κ2 (upper triangular)"),
];

static TABLE: LazyLock<BTreeMap<&'static str, CatalogEntry>> = LazyLock::new(|| {
    let mut out = BTreeMap::new();
    for s in SPECS {
        out.insert(s.name, build(s).unwrap_or_else(|e| panic!("catalog entry {}: {e}", s.name)));
    }
    for (name, notes) in DERIVED {
        out.insert(*name, derived(name, notes).unwrap_or_else(|e| panic!("catalog entry {name}: {e}")));
    }
    out
});

fn syms(names: &[&str]) -> Vec<Symbol> {
    names.iter().map(|n| sym(n)).collect()
}

fn build(s: &Spec) -> Result<CatalogEntry> {
    let params = syms(s.params);
    let rows: Vec<&[&str]> = s.rows[..s.n].iter().map(|r| &r[..s.n]).collect();
    let matrix = MatRF::parse(&rows, &params)?;
    let mut cparams = params.clone();
    cparams.extend(syms(&["q", "h", "hp", "kappa"]));
    let constraints =
        s.constraints.iter().map(|c| parse_expr(c, &cparams).map(|r| r.num().clone())).collect::<Result<_>>()?;
    Ok(CatalogEntry { name: s.name.into(), params, matrix, constraints, notes: s.notes.into() })
}

fn chart_params() -> Vec<Symbol> {
    syms(&["q", "eta", "zeta", "kappa"])
}

fn chart(expr: &str) -> RatFunc {
    parse_expr(expr, &chart_params()).expect("chart expression")
}

/// `{h ↦ CHART_H, hp ↦ CHART_HP}`.
pub fn chart_bindings() -> BTreeMap<Symbol, RatFunc> {
    [(sym("h"), chart(CHART_H)), (sym("hp"), chart(CHART_HP))].into_iter().collect()
}

fn rprime(kappa: &RatFunc) -> MatRF {
    let k1 = chart(CHART_KAPPA1);
    let k2 = chart(CHART_KAPPA2);
    let a = kappa / &k1;
    let b = kappa / &k2;
    let one = RatFunc::one();
    let z = RatFunc::zero;
    MatRF::from_rows(vec![
        vec![one.clone(), z(), z(), z()],
        vec![z(), a.clone(), &one - &a, z()],
        vec![z(), &one - &b, b.clone(), z()],
        vec![z(), z(), z(), one.clone()],
    ])
    .expect("square")
}

fn derived(name: &str, notes: &str) -> Result<CatalogEntry> {
    let base = build(SPECS.iter().find(|s| s.name == "kup_R").expect("kup_R"))?;
    let cb = chart_bindings();
    let (params, matrix, constraints) = match name {
        "kup_R_chart" => {
            let c = RatFunc::from_poly(base.constraints[0].clone()).substitute(&cb)?;
            (chart_params(), base.matrix.substitute(&cb)?, vec![c.num().clone()])
        }
        "kup_Rprime" => (chart_params(), rprime(&RatFunc::var(sym("kappa"))), vec![]),
        "kup_Rprime1" => (syms(&["q", "eta", "zeta"]), rprime(&chart(CHART_KAPPA1)), vec![]),
        "kup_Rprime2" => (syms(&["q", "eta", "zeta"]), rprime(&chart(CHART_KAPPA2)), vec![]),
        _ => return Err(Error::UnknownEntry(name.into())),
    };
    Ok(CatalogEntry { name: name.into(), params, matrix, constraints, notes: notes.into() })
}

pub fn names() -> Vec<&'static str> {
    TABLE.keys().copied().collect()
}

/// Looks up an entry and applies optional bindings. Constraints that become
/// identically zero are dropped; a constraint that becomes a nonzero
/// constant can never hold and is rejected.
pub fn get(name: &str, bindings: Option<&BTreeMap<Symbol, RatFunc>>) -> Result<CatalogEntry> {
    let entry = TABLE.get(name).ok_or_else(|| Error::UnknownEntry(name.into()))?.clone();
    let Some(b) = bindings else {
        return Ok(entry);
    };
    let matrix = entry.matrix.substitute(b)?;
    let mut constraints = Vec::new();
    for c in &entry.constraints {
        let v = RatFunc::from_poly(c.clone()).substitute(b)?;
        if v.is_zero() {
            continue;
        }
        if v.as_integer().is_some() {
            return Err(Error::ConstraintViolated(format!("{c} becomes {v}")));
        }
        constraints.push(v.num().clone());
    }
    let mut params = matrix.symbols();
    for c in &constraints {
        params.extend(c.symbols());
    }
    params.sort();
    params.dedup();
    Ok(CatalogEntry { matrix, constraints, params, ..entry })
}

pub fn matrix(name: &str) -> Result<MatRF> {
    get(name, None).map(|e| e.matrix)
}

/// Members of the `(q,h,h')` family in the `(q,η,ζ)` chart.
#[derive(Debug, Clone)]
pub struct KupershmidtFamily {
    /// RTT solution with free κ.
    pub r: MatRF,
    pub g: MatRF,
    pub r_prime: MatRF,
    pub kappa1: RatFunc,
    pub kappa2: RatFunc,
    pub h: RatFunc,
    pub hp: RatFunc,
    pub q_prime: RatFunc,
    /// κ quadratic expressed in the chart.
    pub constraint: Polynomial,
}

/// Builds the family with `q, η, ζ` optionally specialized.
pub fn kupershmidt_family(chart_subs: Option<&BTreeMap<Symbol, RatFunc>>) -> Result<KupershmidtFamily> {
    let empty = BTreeMap::new();
    let subs = chart_subs.unwrap_or(&empty);
    let s = |f: RatFunc| -> Result<RatFunc> {
        f.substitute(subs).map_err(|e| match e {
            Error::PoleAfterSubstitution => Error::DegenerateChart("pole after specialization".into()),
            e => e,
        })
    };
    if s(chart("1+2*eta*zeta"))?.is_zero() {
        return Err(Error::DegenerateChart("1+2ηζ vanishes".into()));
    }
    let h = s(chart(CHART_H))?;
    let hp = s(chart(CHART_HP))?;
    let kappa1 = s(chart(CHART_KAPPA1))?;
    let kappa2 = s(chart(CHART_KAPPA2))?;
    let q_prime = kappa2.checked_div(&kappa1)?;
    let r = get("kup_R_chart", None)?.matrix.try_map(|e| s(e.clone()))?;
    let g = matrix("kup_G")?.try_map(|e| s(e.clone()))?;
    let r_prime = conj_tensor_square(&r, &g, Orientation::Grg)?;
    let c = s(RatFunc::from_poly(get("kup_R_chart", None)?.constraints[0].clone()))?;
    Ok(KupershmidtFamily { r, g, r_prime, kappa1, kappa2, h, hp, q_prime, constraint: c.num().clone() })
}

/// The chart point `(q, η, ζ)` for numeric `(q, h, h')` on the branch
/// selected by `upper` (the sign in front of `λ = √((q−1)² − 4hh')`).
pub fn chart_point(q: Complex64, h: Complex64, hp: Complex64, upper: bool) -> Result<BTreeMap<Symbol, Complex64>> {
    let tiny = 1e-300;
    let (eta, zeta) = if hp.norm() <= tiny {
        if (q - 1.0).norm() <= tiny {
            return Err(Error::DegenerateChart("q = 1".into()));
        }
        (h / (q - 1.0), Complex64::new(0.0, 0.0))
    } else if h.norm() <= tiny {
        if (q - 1.0).norm() <= tiny {
            return Err(Error::DegenerateChart("q = 1".into()));
        }
        ((q - 1.0) / hp, -hp / (q - 1.0))
    } else {
        let lambda = ((q - 1.0) * (q - 1.0) - 4.0 * h * hp).sqrt();
        if lambda.norm() <= tiny {
            return Err(Error::DegenerateChart("λ = 0, ζ diverges".into()));
        }
        let sgn = if upper { 1.0 } else { -1.0 };
        (((q - 1.0) + sgn * lambda) / (2.0 * hp), -sgn * hp / lambda)
    };
    Ok([(sym("q"), q), (sym("eta"), eta), (sym("zeta"), zeta)].into_iter().collect())
}

/// Named relation lists in the generators `a, b, c, d`.
pub fn relations(name: &str) -> Result<Vec<NCPoly>> {
    let r = |pairs: &[(&str, &str)]| NCPoly::from_pairs(pairs);
    let qp = format!("({CHART_KAPPA2})/({CHART_KAPPA1})");
    let qp = qp.as_str();
    let qp1 = format!("({qp}) - 1");
    let qp1 = qp1.as_str();
    let neg_qp = format!("-({qp})");
    let neg_qp = neg_qp.as_str();
    let neg_qp1 = format!("-({qp1})");
    let neg_qp1 = neg_qp1.as_str();
    Ok(match name {
        "kup_relations" => vec![
            r(&[("1", "ca"), ("-1", "ac")])?,
            r(&[("1", "bd"), ("-1", "db")])?,
            r(&[("1", "cb"), ("-q", "bc"), ("h", "ac"), ("hp", "db")])?,
            r(&[("1", "ad"), ("-1", "da"), ("-(q-1)", "bc"), ("h", "ac"), ("hp", "db")])?,
            r(&[("q", "ba"), ("-1", "ab"), ("-h", "aa"), ("-hp", "bb"), ("h", "da"), ("-h", "bc")])?,
            r(&[("1", "cd"), ("-q", "dc"), ("h", "cc"), ("hp", "dd"), ("-hp", "da"), ("hp", "bc")])?,
        ],
        "kup_derived" => vec![r(&[("1", "ad"), ("-q", "bc"), ("h", "ac"), ("hp", "bd"), ("-1", "da"), ("1", "bc")])?],
        "kup_primed_relations" => vec![
            r(&[("1", "ca"), ("-1", "ac")])?,
            r(&[("1", "bd"), ("-1", "db")])?,
            r(&[("1", "cb"), (neg_qp, "bc")])?,
            r(&[("1", "ad"), ("-1", "da"), (neg_qp1, "bc")])?,
            r(&[(qp, "ba"), ("-1", "ab")])?,
            r(&[("1", "cd"), (neg_qp, "dc")])?,
        ],
        "kup_corrected_relations" => vec![
            r(&[("1", "ba"), ("-1/q", "ab"), ("-h/q", "aa"), ("h/q", "da"), ("-h/q^2", "cb"), ("-h^2/q^2", "ca")])?,
            r(&[("1", "bd"), ("-1", "db")])?,
            r(&[("1", "bc"), ("-1/q", "cb"), ("-h/q", "ca")])?,
            r(&[("1", "ad"), ("-1", "da"), ("-(1-1/q)", "cb"), ("h/q", "ca")])?,
            r(&[("1", "ac"), ("-1", "ca")])?,
            r(&[("1", "dc"), ("-1/q", "cd"), ("-h/q", "cc")])?,
        ],
        "gl11_relations" => vec![
            r(&[("1", "ba"), ("-1", "ab"), ("-h", "cd")])?,
            r(&[("1", "ca"), ("-1/q", "ac")])?,
            r(&[("1", "da"), ("-1", "ad"), ("1-1/q", "bc")])?,
            r(&[("1", "cb"), ("-1/q", "bc")])?,
            r(&[("1", "db"), ("1", "bd"), ("-h/q", "ac")])?,
            r(&[("1", "dc"), ("q", "cd")])?,
            r(&[("1", "cc")])?,
            r(&[("h", "aa"), ("-(q+1)", "bb"), ("-h", "dd")])?,
        ],
        "h23_case1_relations" => vec![
            r(&[("1", "cc")])?,
            r(&[("1", "ca")])?,
            r(&[("1", "ac")])?,
            r(&[("1", "dc")])?,
            r(&[("1", "cd")])?,
            r(&[("1", "da"), ("-1", "ad")])?,
            r(&[("1", "cb"), ("-1", "bc")])?,
            r(&[("1", "aa"), ("-1", "ad"), ("-1", "bc")])?,
            r(&[("1", "dd"), ("-1", "ad"), ("-1", "bc")])?,
            r(&[("1", "ab"), ("-1", "ba"), ("-(x1-x2)", "bc")])?,
            r(&[("1", "bd"), ("-1", "ba"), ("-(x1-x2)", "bc")])?,
            r(&[("1", "db"), ("-1", "bd"), ("-(x2-x1)", "bc")])?,
        ],
        "h23_case2_relations" => vec![
            r(&[("1", "cc")])?,
            r(&[("1", "ca")])?,
            r(&[("1", "ac")])?,
            r(&[("1", "dc")])?,
            r(&[("1", "cd")])?,
            r(&[("1", "da"), ("-1", "ad")])?,
            r(&[("1", "cb"), ("-1", "bc")])?,
            r(&[("1", "aa"), ("-1", "dd")])?,
            r(&[("1", "ab"), ("-1", "ba"), ("-h", "aa"), ("-h", "bc"), ("h", "ad")])?,
            r(&[("1", "db"), ("-1", "bd"), ("h", "aa"), ("h", "bc"), ("-h", "ad")])?,
        ],
        "s02_relations" => vec![
            r(&[("1", "cc")])?,
            r(&[("1", "ca")])?,
            r(&[("1", "ac")])?,
            r(&[("1", "dc")])?,
            r(&[("1", "cd")])?,
            r(&[("1", "da"), ("-1", "ad")])?,
            r(&[("1", "cb"), ("-1", "bc")])?,
            r(&[("1", "aa"), ("-1", "dd")])?,
            r(&[("1", "ab"), ("1", "ba")])?,
            r(&[("1", "db"), ("1", "bd")])?,
        ],
        _ => return Err(Error::UnknownEntry(name.into())),
    })
}

pub const RELATION_NAMES: &[&str] = &[
    "kup_relations",
    "kup_derived",
    "kup_primed_relations",
    "kup_corrected_relations",
    "gl11_relations",
    "h23_case1_relations",
    "h23_case2_relations",
    "s02_relations",
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{bindings, parse_expr_any};

    fn p(s: &str) -> RatFunc {
        parse_expr_any(s).unwrap()
    }

    #[test]
    fn every_entry_builds() {
        for n in names() {
            let e = get(n, None).unwrap();
            assert!(e.matrix.symbols().iter().all(|s| e.params.contains(s)), "{n}");
            assert!(e.constraints.iter().all(|c| !c.is_zero()));
        }
        for n in RELATION_NAMES {
            assert!(!relations(n).unwrap().is_empty());
        }
        assert!(matches!(get("nope", None), Err(Error::UnknownEntry(_))));
    }

    #[test]
    fn gl11_display() {
        let e = get("gl11_Rqh", None).unwrap();
        assert_eq!(e.matrix.get(0, 3), &p("h"));
        assert_eq!(e.matrix.get(1, 2), &p("1-q"));
        assert_eq!(e.matrix.get(3, 3), &p("-q"));
    }

    #[test]
    fn std_rq_at_classical_point() {
        let e = get("std_Rq", Some(&bindings([(sym("q"), RatFunc::one())]))).unwrap();
        assert!(e.matrix.is_identity());
    }

    #[test]
    fn jordanian_specializations() {
        let g = sym("g");
        let h = RatFunc::var(sym("h"));
        assert_eq!(get("jordanian_Rgh", Some(&bindings([(g, h)]))).unwrap().matrix, matrix("jordanian_Rh").unwrap());
        let zero = bindings([(g, RatFunc::zero())]);
        assert_eq!(get("jordanian_Rgh", Some(&zero)).unwrap().matrix, matrix("jordanian_Rh0").unwrap());
    }

    #[test]
    fn constraint_handling_under_bindings() {
        let e = get("kup_R", Some(&bindings([(sym("hp"), RatFunc::zero()), (sym("kappa"), RatFunc::one())]))).unwrap();
        assert!(e.constraints.is_empty());
        let bad = bindings([(sym("q"), p("2")), (sym("h"), p("0")), (sym("kappa"), p("2"))]);
        assert!(matches!(get("kup_R", Some(&bad)), Err(Error::ConstraintViolated(_))));
    }

    #[test]
    fn chart_identity_and_roots() {
        let f = kupershmidt_family(None).unwrap();
        let eta = p("eta");
        assert_eq!(&(&f.h / &eta) + &(&eta * &f.hp), p("q-1"));
        let kappa = sym("kappa");
        for root in [&f.kappa1, &f.kappa2] {
            let v = RatFunc::from_poly(f.constraint.clone()).subs(kappa, root).unwrap();
            assert!(v.is_zero());
        }
        assert_eq!(f.kappa1, p("1/(1+h/eta)").substitute(&chart_bindings()).unwrap());
        assert_eq!(f.kappa2, p("1/(1+eta*hp)").substitute(&chart_bindings()).unwrap());
        assert_eq!(&f.h * &f.hp, p("(q-1)^2*eta*zeta*(1+eta*zeta)/(1+2*eta*zeta)^2"));
    }

    #[test]
    fn q_prime_special_values() {
        let subs = bindings([(sym("zeta"), RatFunc::zero()), (sym("eta"), p("h/(q-1)"))]);
        assert_eq!(kupershmidt_family(Some(&subs)).unwrap().q_prime, p("q"));
        let subs = bindings([(sym("zeta"), p("-1/eta"))]);
        let f = kupershmidt_family(Some(&subs)).unwrap();
        assert!(f.h.is_zero());
        assert_eq!(f.q_prime, p("1/q"));
        let subs = bindings([(sym("q"), p("-1"))]);
        assert_eq!(kupershmidt_family(Some(&subs)).unwrap().q_prime, p("-1"));
        let subs = bindings([(sym("zeta"), p("-1/(2*eta)"))]);
        assert!(matches!(kupershmidt_family(Some(&subs)), Err(Error::DegenerateChart(_))));
    }

    #[test]
    fn numeric_chart_point_reproduces_h_and_hp() {
        let f = kupershmidt_family(None).unwrap();
        let c = |x: f64| Complex64::new(x, 0.0);
        for (q, h, hp) in [(3.0, 0.5, 0.25), (0.4, -1.0, 0.7), (2.0, 1.0, 0.0), (2.0, 0.0, 1.5)] {
            for upper in [true, false] {
                let pt = chart_point(c(q), c(h), c(hp), upper).unwrap();
                assert!((f.h.eval(&pt, 1e-12).unwrap() - c(h)).norm() < 1e-12);
                assert!((f.hp.eval(&pt, 1e-12).unwrap() - c(hp)).norm() < 1e-12);
            }
        }
        let pt = chart_point(c(2.0), c(1.0), c(0.0), true).unwrap();
        assert!((f.q_prime.eval(&pt, 1e-12).unwrap() - c(2.0)).norm() < 1e-12);
        let pt = chart_point(c(-1.0), c(0.3), c(0.2), false).unwrap();
        assert!((f.q_prime.eval(&pt, 1e-12).unwrap() - c(-1.0)).norm() < 1e-12);
    }
}
