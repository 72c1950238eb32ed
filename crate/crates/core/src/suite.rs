//! The full verification suite: one [`CheckResult`] per claim, each
//! aggregating several exact or numeric sub-checks.
//!
//! Symbolic checks run before numeric ones and a failing sub-check never
//! stops the remaining ones, so every report is complete.

use std::collections::BTreeMap;
use std::time::Instant;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::catalog::{self, chart_point, kupershmidt_family};
use crate::error::Result;
use crate::field::{bindings, parse_expr_any, sym, RatFunc, Symbol};
use crate::freealg::{
    ideal_component, in_span, normal_words, orient, quotient_dim, reduce, rtt_relations, rtt_solutions,
    spans_quotient, span_equal, GenOrder, NCPoly, Word,
};
use crate::limits::{limit_t0, substitute_path, LimitPath};
use crate::linalg::{conj_tensor_square, rref, MatRF, Orientation};
use crate::repcheck::run_trials;
use crate::ybe::{
    intertwiner_equations, is_triangular_r, residual_divisible, search_gauge, triangular_spectra_equal, ybe_residual,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub detail: String,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Absolute tolerance for the floating-point sub-checks.
    pub tol: f64,
    pub trials: usize,
    pub gauge_starts: usize,
    pub gauge_iters: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 20240607, tol: 1e-9, trials: 20, gauge_starts: 200, gauge_iters: 2000 }
    }
}

/// A named claim with its wall-time budget.
pub struct Check {
    pub name: &'static str,
    pub label: &'static str,
    pub budget_ms: u64,
    pub numeric: bool,
    run: fn(&SuiteConfig) -> Result<Outcome>,
}

/// Sub-check log; the check passes iff every gated line passed.
#[derive(Debug, Default)]
struct Outcome {
    lines: Vec<(bool, String)>,
}

impl Outcome {
    fn check(&mut self, ok: bool, what: impl Into<String>) {
        self.lines.push((ok, what.into()));
    }

    fn passed(&self) -> bool {
        self.lines.iter().all(|(ok, _)| *ok)
    }

    fn detail(&self) -> String {
        let parts: Vec<String> =
            self.lines.iter().map(|(ok, s)| format!("[{}] {s}", if *ok { "ok" } else { "FAIL" })).collect();
        parts.join(" | ")
    }
}

pub static CHECKS: &[Check] = &[
    Check { name: "c01_kappa_constraint", label: "κ-quadratic divisibility", budget_ms: 10_000, numeric: false, run: c01 },
    Check { name: "c02_g_conjugation", label: "G-conjugation to R'", budget_ms: 10_000, numeric: false, run: c02 },
    Check { name: "c03_rtt_spans", label: "RTT relations of the (q,h,h') family", budget_ms: 20_000, numeric: false, run: c03 },
    Check { name: "c04_q_prime", label: "q' specializations", budget_ms: 1_000, numeric: false, run: c04 },
    Check { name: "c05_bhp_triviality", label: "BHP h transformed away", budget_ms: 5_000, numeric: false, run: c05 },
    Check { name: "c06_bhp_map", label: "BHP generator map and coproduct", budget_ms: 10_000, numeric: true, run: c06 },
    Check { name: "c07_singular_limit", label: "contraction to R_gh", budget_ms: 5_000, numeric: false, run: c07 },
    Check { name: "c08_hietarinta", label: "seven triangular Hietarinta cases", budget_ms: 30_000, numeric: false, run: c08 },
    Check { name: "c09_gl11", label: "GL_qh(1|1) relations and transforms", budget_ms: 10_000, numeric: false, run: c09 },
    Check { name: "c10_non_removability", label: "non-removability of h in GL_qh(1|1)", budget_ms: 60_000, numeric: true, run: c10 },
];

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.name).collect()
}

pub fn find_check(name: &str) -> Option<&'static Check> {
    CHECKS.iter().find(|c| c.name == name)
}

/// Runs one check. Errors become `Status::Error`; exceeding the time budget
/// is a failure.
pub fn run_check(check: &Check, cfg: &SuiteConfig) -> CheckResult {
    let start = Instant::now();
    let out = (check.run)(cfg);
    let elapsed_ms = start.elapsed().as_millis() as u64;
    let (status, mut detail) = match out {
        Ok(o) => (if o.passed() { Status::Pass } else { Status::Fail }, o.detail()),
        Err(e) => (Status::Error, e.to_string()),
    };
    let mut status = status;
    if elapsed_ms > check.budget_ms && status == Status::Pass {
        status = Status::Fail;
        detail.push_str(&format!(" | [FAIL] took {elapsed_ms} ms, budget {} ms", check.budget_ms));
    }
    CheckResult { name: format!("{} ({})", check.name, check.label), status, detail, elapsed_ms }
}

/// Runs every check, symbolic ones first, on up to `jobs` threads.
/// Results are sorted by name.
pub fn verify_all(cfg: &SuiteConfig, jobs: usize) -> Vec<CheckResult> {
    let mut order: Vec<&Check> = CHECKS.iter().collect();
    order.sort_by_key(|c| c.numeric);
    let jobs = jobs.max(1);
    let mut results: Vec<CheckResult> = if jobs == 1 {
        order.iter().map(|c| run_check(c, cfg)).collect()
    } else {
        let next = std::sync::atomic::AtomicUsize::new(0);
        let slots = std::sync::Mutex::new(Vec::new());
        std::thread::scope(|s| {
            for _ in 0..jobs {
                s.spawn(|| loop {
                    let k = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                    let Some(c) = order.get(k) else { break };
                    let r = run_check(c, cfg);
                    slots.lock().expect("result lock").push(r);
                });
            }
        });
        slots.into_inner().expect("result lock")
    };
    results.sort_by(|a, b| a.name.cmp(&b.name));
    results
}

/// Exit code for a set of results: 0 all pass, 1 any fail, 2 any error.
pub fn exit_code(results: &[CheckResult]) -> i32 {
    if results.iter().any(|r| r.status == Status::Error) {
        2
    } else if results.iter().any(|r| r.status == Status::Fail) {
        1
    } else {
        0
    }
}

fn p(s: &str) -> RatFunc {
    parse_expr_any(s).expect("suite expression")
}

fn subs(pairs: &[(&str, &str)]) -> BTreeMap<Symbol, RatFunc> {
    bindings(pairs.iter().map(|(k, v)| (sym(k), p(v))))
}

fn at(m: &MatRF, pairs: &[(&str, &str)]) -> Result<MatRF> {
    m.substitute(&subs(pairs))
}

fn c01(_: &SuiteConfig) -> Result<Outcome> {
    let mut o = Outcome::default();
    let e = catalog::get("kup_R", None)?;
    let res = ybe_residual(&e.matrix)?;
    o.check(!res.is_zero(), format!("YBE residual with free κ is nonzero ({} nonzero entries)", res.support()));
    let div = residual_divisible(&e.matrix, &e.constraints[0], sym("kappa"))?;
    o.check(div, "every residual entry is divisible by κ²(q+hh')−κ(q+1)+1 in κ");
    let f = kupershmidt_family(None)?;
    for (name, k) in [("κ1", &f.kappa1), ("κ2", &f.kappa2)] {
        let r = f.r.map(|x| x.subs(sym("kappa"), k).expect("no pole"));
        o.check(ybe_residual(&r)?.is_zero(), format!("YBE holds exactly at κ={name} in the (q,η,ζ) chart"));
    }
    Ok(o)
}

fn c02(_: &SuiteConfig) -> Result<Outcome> {
    let mut o = Outcome::default();
    let r = catalog::matrix("kup_R_chart")?;
    let g = catalog::matrix("kup_G")?;
    let conj = conj_tensor_square(&r, &g, Orientation::Grg)?;
    o.check(conj == catalog::matrix("kup_Rprime")?, "(G⊗G)R(G⁻¹⊗G⁻¹) equals R' with blocks κ/κ1, κ/κ2");
    let f = kupershmidt_family(None)?;
    for (name, k, target, lower) in [("κ1", &f.kappa1, "kup_Rprime1", true), ("κ2", &f.kappa2, "kup_Rprime2", false)] {
        let spec = conj.map(|x| x.subs(sym("kappa"), k).expect("no pole"));
        let shape = if lower { spec.is_lower_triangular() } else { spec.is_upper_triangular() };
        o.check(
            spec == catalog::matrix(target)? && shape,
            format!("at κ={name} it is the {} triangular form", if lower { "lower" } else { "upper" }),
        );
    }
    Ok(o)
}

/// Whether `m` is a linear combination of `basis` (matrices of equal size).
fn in_matrix_span(m: &MatRF, basis: &[MatRF]) -> bool {
    let rows: Vec<Vec<RatFunc>> = basis.iter().map(|b| b.entries().to_vec()).collect();
    let rank = if rows.is_empty() { 0 } else { rref(rows.clone()).1.len() };
    let mut ext = rows;
    ext.push(m.entries().to_vec());
    rref(ext).1.len() == rank
}

fn c03(_: &SuiteConfig) -> Result<Outcome> {
    let mut o = Outcome::default();
    let kup = catalog::matrix("kup_R")?;
    let rels = catalog::relations("kup_relations")?;
    let f = kupershmidt_family(None)?;
    let chart_rels: Vec<NCPoly> =
        rels.iter().map(|r| r.substitute(&catalog::chart_bindings())).collect::<Result<_>>()?;
    for (name, k) in [("κ1", &f.kappa1), ("κ2", &f.kappa2)] {
        let r = f.r.map(|x| x.subs(sym("kappa"), k).expect("no pole"));
        o.check(span_equal(&rtt_relations(&r)?, &chart_rels), format!("RTT relations of R at κ={name} span the six stated relations"));
    }
    let generic = span_equal(&rtt_relations(&kup)?, &rels);
    o.check(true, format!("with κ free the spans agree: {generic} (informational)"));
    let primed = catalog::relations("kup_primed_relations")?;
    for name in ["kup_Rprime1", "kup_Rprime2"] {
        let ok = span_equal(&rtt_relations(&catalog::matrix(name)?)?, &primed);
        o.check(ok, format!("RTT relations of {name} span the primed relations with q'=κ2/κ1"));
    }
    for d in catalog::relations("kup_derived")? {
        o.check(in_span(&d, &rels), "ad − qbc + hac + h'bd − da + bc lies in the relation span");
    }
    let corrected = catalog::relations("kup_corrected_relations")?;
    let hybrid = catalog::matrix("kup_Rhybrid")?;
    let sols = rtt_solutions(&corrected)?;
    o.check(in_matrix_span(&hybrid, &sols), format!("corrected h'=0 system admits the h'=0 R-matrix ({}-dim solution space)", sols.len()));
    o.check(in_matrix_span(&MatRF::flip(2), &sols), "the flip P also solves it (scalar ambiguity R ↦ R + sP)");
    o.check(ybe_residual(&hybrid)?.is_zero(), "the h'=0 R-matrix satisfies YBE");
    o.check(span_equal(&rtt_relations(&hybrid)?, &corrected), "and its RTT relations reproduce the corrected system");
    Ok(o)
}

fn c04(_: &SuiteConfig) -> Result<Outcome> {
    let mut o = Outcome::default();
    let f = kupershmidt_family(Some(&subs(&[("zeta", "0"), ("eta", "h/(q-1)")])))?;
    o.check(f.hp.is_zero() && f.q_prime == p("q"), format!("h'=0 chart (ζ=0): q' = {}", f.q_prime));
    let f = kupershmidt_family(Some(&subs(&[("zeta", "-1/eta")])))?;
    o.check(f.h.is_zero() && f.q_prime == p("1/q"), format!("h=0 chart (ζ=−1/η): q' = {}", f.q_prime));
    let f = kupershmidt_family(Some(&subs(&[("q", "-1")])))?;
    o.check(f.q_prime == p("-1"), format!("q=−1: q' = {}", f.q_prime));
    let gen = kupershmidt_family(None)?;
    let c = |x: f64| Complex64::new(x, 0.0);
    for (q, h, hp, want) in [(3.0, 0.7, 0.0, 3.0), (3.0, 0.0, 0.4, 1.0 / 3.0), (-1.0, 0.3, 0.2, -1.0)] {
        let mut worst: f64 = 0.0;
        for upper in [true, false] {
            let pt = chart_point(c(q), c(h), c(hp), upper)?;
            worst = worst.max((gen.q_prime.eval(&pt, 1e-12)? - c(want)).norm());
        }
        o.check(worst < 1e-12, format!("numeric (q,h,h')=({q},{h},{hp}) gives q'={want} to {worst:.1e}"));
    }
    Ok(o)
}

fn c05(_: &SuiteConfig) -> Result<Outcome> {
    let mut o = Outcome::default();
    let m = catalog::matrix("bhp_M")?;
    let out = conj_tensor_square(&catalog::matrix("bhp_Rqh")?, &m, Orientation::MinvRm)?;
    o.check(out == catalog::matrix("std_Rq")?, "(M⁻¹⊗M⁻¹)R_qh(M⊗M) = R_q with y=h/(q−1), x symbolic");
    o.check(!out.symbols().contains(&sym("x")), "result is independent of x");
    Ok(o)
}

fn c06(cfg: &SuiteConfig) -> Result<Outcome> {
    let mut o = Outcome::default();
    let rep = run_trials(&[1, 2, 3], cfg.trials, cfg.seed)?;
    let tol = cfg.tol;
    o.check(rep.max_rep_residual < tol, format!("U_q(sl2) relations in reps: {:.2e}", rep.max_rep_residual));
    o.check(rep.max_relation_residual < tol, format!("deformed relations: {:.2e}", rep.max_relation_residual));
    o.check(rep.max_coproduct_residual < tol, format!("coproduct preservation: {:.2e}", rep.max_coproduct_residual));
    o.check(rep.max_antipode_residual < tol, format!("antipode axiom: {:.2e}", rep.max_antipode_residual));
    o.check(rep.max_generalized_residual < tol, format!("generalized J'+ map: {:.2e}", rep.max_generalized_residual));
    o.check(
        rep.min_violation_residual > 1e-3,
        format!("non-opposite q^(±J0/2) coefficients break it: min {:.2e} > 1e-3", rep.min_violation_residual),
    );
    o.check(true, format!("{} seeded trials over j ∈ {{1/2, 1, 3/2}}", rep.trials));
    Ok(o)
}

fn c07(_: &SuiteConfig) -> Result<Outcome> {
    let mut o = Outcome::default();
    let path = LimitPath::contraction();
    let lim = limit_t0(&substitute_path(&catalog::matrix("pq_Rpq_conj")?, &path)?, sym("t"))?;
    let rgh = catalog::matrix("jordanian_Rgh")?;
    let hg = subs(&[("h", "lambda4*eta0"), ("g", "-eta0/lambda4")]);
    o.check(lim == rgh.substitute(&hg)?, "t→0 limit of the conjugated R_pq is R_gh (h=λη0, g=−η0/λ)");
    o.check(ybe_residual(&rgh)?.is_zero(), "R_gh satisfies YBE");
    o.check(is_triangular_r(&rgh)?, "R_gh is triangular: R21·R = I");
    o.check(at(&rgh, &[("g", "h")])? == catalog::matrix("jordanian_Rh")?, "g→h gives the one-parameter Jordanian R_h");
    o.check(at(&rgh, &[("g", "0")])? == catalog::matrix("jordanian_Rh0")?, "g→0 gives the one-parameter form with g=0");
    Ok(o)
}

const HIETARINTA: &[&str] = &["hiet_S21", "hiet_S22", "hiet_H13", "hiet_H23", "hiet_S01", "hiet_S02", "gl11_Rqh"];

fn words(list: &[&str]) -> Vec<Word> {
    list.iter().map(|w| Word::parse(w).expect("letters")).collect()
}

/// Degree 0..=3 components of the stated PBW monomial sets.
fn pbw_pattern(case: u8, deg: usize) -> Vec<Word> {
    let lists: [&[&str]; 4] = if case == 1 {
        [&[""], &["b", "a", "d", "c"], &["bb", "ba", "aa", "ad"], &["bbb", "bba", "baa", "aaa"]]
    } else {
        [
            &[""],
            &["b", "a", "d", "c"],
            &["bb", "ba", "aa", "bd", "ad", "bc"],
            &["bbb", "bba", "baa", "aaa", "bbd", "bad", "aad", "bbc"],
        ]
    };
    words(lists[deg])
}

/// Normal words of the rewriting system closed up to `deg`: the degree-`deg`
/// words that are not leading words of the ideal component.
fn closed_normal_words(rels: &[NCPoly], deg: usize, order: &GenOrder) -> Result<Vec<Word>> {
    let rules = orient(&ideal_component(rels, deg, order), order)?;
    Ok(normal_words(&rules, deg, order))
}

fn pbw_report(o: &mut Outcome, case: u8, rels: &[NCPoly]) -> Result<()> {
    let mut spans = true;
    let mut dims = Vec::new();
    for deg in 0..=3 {
        let pat = pbw_pattern(case, deg);
        dims.push(quotient_dim(rels, deg));
        spans &= spans_quotient(rels, &pat, deg);
    }
    o.check(true, format!("case {case}: stated monomials span the algebra in degrees ≤ 3: {spans}, dims {dims:?} (informational)"));
    let mut witness = None;
    for order in GenOrder::all() {
        let mut all = true;
        for deg in 0..=3 {
            let pat = pbw_pattern(case, deg);
            all &= closed_normal_words(rels, deg, &order)?.iter().all(|w| pat.contains(w));
        }
        if all {
            witness = Some(order);
            break;
        }
    }
    let default = GenOrder::default();
    let n2: Vec<String> = closed_normal_words(rels, 2, &default)?.iter().map(|w| w.to_string()).collect();
    let msg = match witness {
        Some(ord) => format!("case {case}: normal words in degrees ≤ 3 lie in the PBW pattern under {ord}"),
        None => format!(
            "case {case}: no generator order puts the normal words of degree ≤ 3 inside the PBW pattern (degree 2 under {default}: {})",
            n2.join(",")
        ),
    };
    o.check(witness.is_some(), msg);
    Ok(())
}

fn c08(_: &SuiteConfig) -> Result<Outcome> {
    let mut o = Outcome::default();
    let mut not_tri = Vec::new();
    let mut not_ybe = Vec::new();
    let mut not_upper = Vec::new();
    for name in HIETARINTA {
        let m = catalog::matrix(name)?;
        if !ybe_residual(&m)?.is_zero() {
            not_ybe.push(*name);
        }
        if !is_triangular_r(&m)? {
            not_tri.push(*name);
        }
        if !m.is_upper_triangular() {
            not_upper.push(*name);
        }
    }
    o.check(not_ybe.is_empty(), format!("YBE holds for all seven; failures: {not_ybe:?}"));
    o.check(not_upper.is_empty(), format!("all seven are upper triangular matrices; failures: {not_upper:?}"));
    o.check(not_tri.is_empty(), format!("R21·R = I for all seven; failures: {not_tri:?}"));

    let h23 = catalog::matrix("hiet_H23")?;
    let case1 = catalog::relations("h23_case1_relations")?;
    let case2 = catalog::relations("h23_case2_relations")?;
    let cc = NCPoly::word(Word::parse("cc")?);
    o.check(span_equal(&rtt_relations(&h23)?, &case1), "H2,3 with x1+x2≠0: RTT relations are the case-1 list");
    let h23_2 = at(&h23, &[("x1", "h"), ("x2", "-h")])?;
    o.check(span_equal(&rtt_relations(&h23_2)?, &case2), "H2,3 with x1=−x2=h: RTT relations are the case-2 list");
    let h23_3 = at(&h23, &[("x1", "h"), ("x2", "-h"), ("x3", "-h^2")])?;
    let h13 = at(&catalog::matrix("hiet_H13")?, &[("h", "-h"), ("g", "h")])?;
    o.check(h23_3 == h13, "H2,3 with x1=−x2=h, x3=−h² coincides with H1,3");
    let s01 = rtt_relations(&catalog::matrix("hiet_S01")?)?;
    let case2_h0: Vec<NCPoly> = case2.iter().map(|r| r.substitute(&subs(&[("h", "0")]))).collect::<Result<_>>()?;
    o.check(span_equal(&s01, &case2_h0), "S0,1 relations are the case-2 list at h=0");
    let s02 = catalog::relations("s02_relations")?;
    o.check(span_equal(&rtt_relations(&catalog::matrix("hiet_S02")?)?, &s02), "S0,2 relations as stated");
    for (name, rels) in [("case 1", &case1), ("case 2", &case2), ("S0,2", &s02)] {
        o.check(in_span(&cc, rels), format!("{name}: c² = 0"));
    }

    let order = GenOrder::default();
    let rules = orient(&case1, &order)?;
    let cubic = NCPoly::from_pairs(&[("1", "aaa"), ("-1", "aad")])?;
    let reduced = reduce(&cubic, &rules, &order, 10_000)?;
    o.check(reduced.is_zero(), format!("case-1 rewriting under {order} sends a³ − a²d to 0"));

    pbw_report(&mut o, 1, &case1)?;
    pbw_report(&mut o, 2, &case2)?;
    Ok(o)
}

fn c09(_: &SuiteConfig) -> Result<Outcome> {
    let mut o = Outcome::default();
    let r = catalog::matrix("gl11_Rqh")?;
    o.check(
        span_equal(&rtt_relations(&r)?, &catalog::relations("gl11_relations")?),
        "RTT relations of R_qh(1|1) include ha² = (q+1)b² + hd²",
    );
    let t = conj_tensor_square(&r, &catalog::matrix("gl11_M")?, Orientation::Grg)?;
    o.check(t == catalog::matrix("gl11_Rqh_transformed")?, "general M=[[x,y],[0,1/x]] gives the displayed form");
    let corner = t.get(0, 3).subs(sym("y"), &RatFunc::zero())?;
    o.check(corner == p("h*x^4"), "with y=0 the h entry only rescales, so h and h' never vanish together");
    let w = at(&t, &[("h", "(1+q)*w^2"), ("y", "x*w")])?;
    o.check(w == catalog::matrix("gl11_Rqh_w")?, "rational chart h=(1+q)w², y=xw removes h and creates h'=−2x²w");
    Ok(o)
}

/// Whether `target` is a nonzero constant multiple of one of `eqs`.
fn has_multiple(eqs: &[crate::field::Polynomial], target: &str) -> bool {
    let t = p(target);
    eqs.iter().any(|e| {
        let ratio = RatFunc::from_poly(e.clone()).checked_div(&t);
        matches!(ratio, Ok(r) if r.symbols().is_empty() && !r.is_zero())
    })
}

fn c10(cfg: &SuiteConfig) -> Result<Outcome> {
    let mut o = Outcome::default();
    let gl = catalog::matrix("gl11_Rqh")?;
    let std = catalog::matrix("std_Rq")?;
    o.check(!triangular_spectra_equal(&gl, &std)?, "spectra {1,1,q,−q} and {1,q,q,1} differ, so R_qh(1|1) ≁ R_q");
    let gl0 = at(&gl, &[("h", "0")])?;
    let (_, eqs) = intertwiner_equations(&gl, &gl0)?;
    let cert = ["h*m21^2", "m12*m22", "h*m22^2 + (1+q)*m12^2"].iter().all(|t| has_multiple(&eqs, t));
    o.check(
        true,
        format!("exact certificate: intertwining equations contain hm21², m12m22, hm22²+(1+q)m12², forcing det M = 0: {cert} (informational)"),
    );
    let num = |m: &MatRF, pairs: &[(&str, &str)]| -> Result<nalgebra::Matrix4<f64>> { at(m, pairs)?.to_real4() };
    let src = num(&gl, &[("q", "2"), ("h", "1")])?;
    let dst = num(&gl, &[("q", "2"), ("h", "0")])?;
    let rep = search_gauge(&src, &dst, cfg.gauge_starts, cfg.gauge_iters, cfg.seed);
    o.check(
        rep.best_residual > 1e-2,
        format!(
            "gauge search R_qh(2,1) → R_q0(2) over {} starts: best residual {:.2e} > 1e-2",
            rep.starts, rep.best_residual
        ),
    );
    let bsrc = num(&catalog::matrix("bhp_Rqh")?, &[("q", "2"), ("h", "1")])?;
    let bdst = num(&std, &[("q", "2")])?;
    let brep = search_gauge(&bsrc, &bdst, cfg.gauge_starts, cfg.gauge_iters, cfg.seed);
    o.check(brep.best_residual < cfg.tol, format!("BHP control pair: best residual {:.2e} < {:.0e}", brep.best_residual, cfg.tol));
    o.check(true, "numeric search is evidence only, not proof");
    Ok(o)
}
