//! Worked examples for each module, end to end through the public API.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rtt_verify::catalog::{self, chart_point, kupershmidt_family};
use rtt_verify::field::{bindings, divmod_univar, parse_expr, parse_expr_any, sym};
use rtt_verify::freealg::{
    canonical_basis, in_span, normal_words, orient, reduce, rtt_relations, span_equal, GenOrder, NCPoly, Word,
};
use rtt_verify::limits::{limit_t0, substitute_path, LimitPath};
use rtt_verify::linalg::{conj_tensor_square, kron, r21, spectrum_diag};
use rtt_verify::repcheck::{build_rep, check_coproduct, GenMap};
use rtt_verify::ybe::{gauge_invariants, is_triangular_r, residual_divisible, search_gauge, ybe_residual};
use rtt_verify::{Error, MatRF, Orientation, RatFunc};

fn p(s: &str) -> RatFunc {
    parse_expr_any(s).unwrap()
}

fn m(name: &str) -> MatRF {
    catalog::matrix(name).unwrap()
}

fn diag(entries: &[&str]) -> Vec<RatFunc> {
    entries.iter().map(|e| p(e)).collect()
}

#[test]
fn parsing_and_cancellation() {
    let params = [sym("q"), sym("h"), sym("hp")];
    assert_eq!(parse_expr("(q-1)^2 - 4*h*hp", &params).unwrap(), p("q^2 - 2*q + 1 - 4*h*hp"));
    assert!(matches!(parse_expr("q + k", &params), Err(Error::UndeclaredSymbol { .. })));
    assert!(p("(q-1)/(q-1)").is_one());
    assert_eq!(p("1/(1+2*eta*zeta)").den(), p("1+2*eta*zeta").num());
    let f = kupershmidt_family(None).unwrap();
    let ratio = p("(1+h/eta)/(1+eta*hp)").substitute(&catalog::chart_bindings()).unwrap();
    assert_eq!(f.q_prime, ratio);
}

#[test]
fn substitution_errors_on_poles() {
    assert_eq!(p("1/(q-1)").substitute(&bindings([(sym("q"), RatFunc::one())])), Err(Error::PoleAfterSubstitution));
    assert_eq!(p("q").substitute(&bindings([(sym("q"), p("q"))])).unwrap(), p("q"));
}

#[test]
fn division_by_the_kappa_quadratic() {
    let k = sym("kappa");
    let g = p(catalog::KAPPA_QUADRATIC);
    let (quo, rem) = divmod_univar(g.num(), g.num(), k).unwrap();
    assert!(quo.is_one() && rem.is_zero());
    let (_, rem) = divmod_univar(p("kappa - 1").num(), g.num(), k).unwrap();
    assert!(!rem.is_zero());
    let (_, rem) = divmod_univar((&g * &p("q-1")).num(), g.num(), k).unwrap();
    assert!(rem.is_zero());
}

#[test]
fn numeric_chart_values() {
    let c = |x: f64| Complex64::new(x, 0.0);
    let f = kupershmidt_family(None).unwrap();
    let pt = chart_point(c(2.0), c(1.0), c(0.0), true).unwrap();
    assert!((f.q_prime.eval(&pt, 1e-12).unwrap() - c(2.0)).norm() < 1e-12);
    let pt: BTreeMap<_, _> = [(sym("q"), c(3.0))].into_iter().collect();
    assert_eq!(p("q").eval(&pt, 1e-12).unwrap(), c(3.0));
}

#[test]
fn matrix_basics() {
    let g = m("kup_G");
    assert!(g.matmul(&m("kup_Ginv")).unwrap().is_identity());
    assert_eq!(g.inverse().unwrap(), m("kup_Ginv"));
    assert!(MatRF::flip(2).matmul(&MatRF::flip(2)).unwrap().is_identity());
    let upper = MatRF::parse(&[&["x", "y"], &["0", "1"]], &[sym("x"), sym("y")]).unwrap();
    let expect = MatRF::parse(&[&["1/x", "-y/x"], &["0", "1"]], &[sym("x"), sym("y")]).unwrap();
    assert_eq!(upper.inverse().unwrap(), expect);
    let e = MatRF::parse(&[&["1", "eta"], &["0", "1"]], &[sym("eta")]).unwrap();
    assert_eq!(kron(&e, &e).get(0, 3), &p("eta^2"));
    assert!(kron(&MatRF::identity(2), &MatRF::identity(2)).is_identity());
}

#[test]
fn conjugation_examples() {
    assert_eq!(conj_tensor_square(&m("bhp_Rqh"), &m("bhp_M"), Orientation::MinvRm).unwrap(), m("std_Rq"));
    for o in [Orientation::Grg, Orientation::MinvRm] {
        assert_eq!(conj_tensor_square(&m("gl11_Rqh"), &MatRF::identity(2), o).unwrap(), m("gl11_Rqh"));
    }
    let r = m("kup_Rprime1");
    assert!(r.is_lower_triangular());
    assert!(r21(&r).unwrap().is_upper_triangular());
    assert_eq!(r21(&r21(&r).unwrap()).unwrap(), r);
    assert!(r21(&MatRF::identity(4)).unwrap().is_identity());
}

#[test]
fn spectra_examples() {
    assert_eq!(spectrum_diag(&m("gl11_Rqh")).unwrap(), diag(&["1", "1", "q", "-q"]));
    assert_eq!(spectrum_diag(&m("std_Rq")).unwrap(), diag(&["1", "q", "q", "1"]));
    assert_eq!(spectrum_diag(&MatRF::identity(4)).unwrap(), diag(&["1", "1", "1", "1"]));
}

#[test]
fn ybe_examples() {
    assert!(ybe_residual(&m("std_Rq")).unwrap().is_zero());
    assert!(ybe_residual(&m("pq_Rpq")).unwrap().is_zero());
    let at = bindings([(sym("kappa"), p("1")), (sym("q"), p("2")), (sym("h"), p("1")), (sym("hp"), p("1"))]);
    assert!(!ybe_residual(&m("kup_R").substitute(&at).unwrap()).unwrap().is_zero());
    assert!(is_triangular_r(&m("gl11_R1h")).unwrap());
    assert!(is_triangular_r(&MatRF::identity(4)).unwrap());
    assert!(!is_triangular_r(&m("std_Rq")).unwrap());
    let kup = catalog::get("kup_R", None).unwrap();
    assert!(residual_divisible(&kup.matrix, &kup.constraints[0], sym("kappa")).unwrap());
    assert!(!residual_divisible(&kup.matrix, p("kappa - 1").num(), sym("kappa")).unwrap());
    assert!(matches!(residual_divisible(&m("std_Rq"), p("kappa - 1").num(), sym("kappa")), Err(Error::NotInVariable(_))));
}

#[test]
fn traces_and_gauge_search_gate() {
    assert_eq!(gauge_invariants(&m("std_Rq"), 1).unwrap()[1], p("2 + 2*q"));
    assert_eq!(gauge_invariants(&m("gl11_Rqh"), 1).unwrap()[1], p("2"));
    let at = |name: &str, pairs: &[(&str, &str)]| {
        m(name).substitute(&bindings(pairs.iter().map(|(k, v)| (sym(k), p(v))))).unwrap().to_real4().unwrap()
    };
    let rep = search_gauge(&at("gl11_Rqh", &[("q", "2"), ("h", "1")]), &at("std_Rq", &[("q", "2")]), 10, 100, 1);
    assert!(!rep.spectra_match);
}

#[test]
fn rtt_relation_examples() {
    assert!(span_equal(&rtt_relations(&m("kup_R")).unwrap(), &catalog::relations("kup_relations").unwrap()));
    assert!(span_equal(&rtt_relations(&m("gl11_Rqh")).unwrap(), &catalog::relations("gl11_relations").unwrap()));
    let identity_rels = rtt_relations(&MatRF::identity(4)).unwrap();
    let ab = NCPoly::from_pairs(&[("1", "ab"), ("-1", "ba")]).unwrap();
    assert!(in_span(&ab, &identity_rels));
    let kup = catalog::relations("kup_relations").unwrap();
    assert!(!in_span(&ab, &kup));
    assert!(in_span(&NCPoly::zero(), &kup));
    assert!(span_equal(&kup, &kup));
}

#[test]
fn alternate_rule_heads_are_not_a_degree_lex_orientation() {
    let kup = catalog::relations("kup_relations").unwrap();
    let alt: Vec<Word> = ["ca", "bd", "cb", "ad", "ba", "cd"].iter().map(|w| Word::parse(w).unwrap()).collect();
    for order in GenOrder::all() {
        let rules = orient(&canonical_basis(&kup, &order), &order).unwrap();
        let heads: Vec<Word> = rules.iter().map(|r| r.lhs.clone()).collect();
        assert!(!alt.iter().all(|w| heads.contains(w)), "{order}");
        for r in &rules {
            assert!(r.rhs.terms().all(|(w, _)| order.cmp_words(w, &r.lhs).is_lt()));
        }
    }
    let order = GenOrder::default();
    let rules = orient(&canonical_basis(&kup, &order), &order).unwrap();
    let derived = &catalog::relations("kup_derived").unwrap()[0];
    assert!(reduce(derived, &rules, &order, 1000).unwrap().is_zero());
}

#[test]
fn rewriting_examples() {
    let order = GenOrder::default();
    assert!(orient(&[], &order).unwrap().is_empty());
    let case1 = rtt_relations(&m("hiet_H23")).unwrap();
    let rules = orient(&case1, &order).unwrap();
    let cc = Word::parse("cc").unwrap();
    assert!(rules.iter().any(|r| r.lhs == cc && r.rhs.is_zero()));
    let cubic = NCPoly::from_pairs(&[("1", "aaa"), ("-1", "aad")]).unwrap();
    assert!(reduce(&cubic, &rules, &order, 1000).unwrap().is_zero());
    let ba = NCPoly::word(Word::parse("ba").unwrap());
    let only_ab = NCPoly::from_pairs(&[("1", "ab"), ("-q", "cd")]).unwrap();
    let ab_rule = orient(&[only_ab], &order).unwrap();
    assert_eq!(reduce(&ba, &ab_rule, &order, 10).unwrap(), ba);
    assert_eq!(normal_words(&[], 1, &order).len(), 4);
}

#[test]
fn limit_examples() {
    let path = LimitPath::contraction();
    let on_path = substitute_path(&m("std_Rq"), &path).unwrap();
    assert_eq!(on_path.get(1, 2), &p("1 - (1 + lambda4*t)^2"));
    let lim = limit_t0(&substitute_path(&m("pq_Rpq_conj"), &path).unwrap(), sym("t")).unwrap();
    assert!(lim.symbols().iter().all(|s| ["lambda4", "eta0"].contains(&s.name())));
    assert!(ybe_residual(&lim).unwrap().is_zero());
}

#[test]
fn representation_examples() {
    let c = |x: f64| Complex64::new(x, 0.0);
    assert!(build_rep(2, c(0.3)).unwrap().relation_residual() < 1e-10);
    let i_pi_half = Complex64::new(0.0, std::f64::consts::FRAC_PI_2);
    assert!(matches!(build_rep(1, i_pi_half), Err(Error::DegenerateQ(2))));
    assert!(check_coproduct(1, 1, c(0.3), c(0.7)).unwrap() < 1e-10);
    assert!(check_coproduct(2, 2, c(0.3), c(0.0)).unwrap() < 1e-12);
    assert!(matches!(GenMap::bhp(c(0.0), c(0.5)), Err(Error::SingularMap)));
}
