//! Property tests for the algebraic invariants the checks rely on.

use std::collections::BTreeMap;

use num_complex::Complex64;
use proptest::prelude::*;
use rtt_verify::catalog;
use rtt_verify::field::{bindings, parse_expr_any, sym, EVAL_EPS};
use rtt_verify::freealg::{in_span, orient, reduce, rtt_relations, span_equal, GenOrder, NCPoly, Word};
use rtt_verify::limits::limit_t0;
use rtt_verify::linalg::{conj_tensor_square, kron};
use rtt_verify::ybe::{gauge_invariants, is_triangular_r, ybe_residual};
use rtt_verify::{MatRF, Orientation, RatFunc};

fn leaf() -> impl Strategy<Value = String> {
    prop_oneof![(-3i64..=3).prop_map(|n| format!("({n})")), prop::sample::select(vec!["x", "y", "z"]).prop_map(String::from)]
}

fn poly_expr() -> impl Strategy<Value = String> {
    leaf().prop_recursive(3, 12, 2, |inner| {
        (inner.clone(), prop::sample::select(vec!["+", "-", "*"]), inner).prop_map(|(a, op, b)| format!("({a}{op}{b})"))
    })
}

fn poly() -> impl Strategy<Value = RatFunc> {
    poly_expr().prop_map(|s| parse_expr_any(&s).unwrap())
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly(), poly()).prop_filter_map("zero denominator", |(n, d)| n.checked_div(&d).ok())
}

fn small_matrix(n: usize) -> impl Strategy<Value = MatRF> {
    prop::collection::vec(prop_oneof![(-2i64..=2).prop_map(RatFunc::int), leaf().prop_map(|s| parse_expr_any(&s).unwrap())], n * n)
        .prop_map(move |v| MatRF::from_fn(n, |i, j| v[n * i + j].clone()))
}

fn int_gauge() -> impl Strategy<Value = MatRF> {
    prop::array::uniform4(-3i64..=3)
        .prop_filter("singular", |m| m[0] * m[3] - m[1] * m[2] != 0)
        .prop_map(|m| MatRF::from_fn(2, |i, j| RatFunc::int(m[2 * i + j])))
}

fn point() -> BTreeMap<rtt_verify::Symbol, Complex64> {
    [("x", 0.37), ("y", -1.21), ("z", 2.05)].into_iter().map(|(n, v)| (sym(n), Complex64::new(v, 0.0))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a / &a).is_one());
            prop_assert_eq!(a.inv().unwrap().inv().unwrap(), a.clone());
        }
    }

    #[test]
    fn display_parse_round_trip(a in ratfunc()) {
        prop_assert_eq!(parse_expr_any(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn substitution_is_a_homomorphism(a in ratfunc(), b in ratfunc(), r in poly()) {
        let s = bindings([(sym("x"), r)]);
        if let (Ok(sa), Ok(sb), Ok(sab), Ok(spb)) =
            (a.substitute(&s), b.substitute(&s), (&a * &b).substitute(&s), (&a + &b).substitute(&s))
        {
            prop_assert_eq!(sab, &sa * &sb);
            prop_assert_eq!(spb, &sa + &sb);
        }
    }

    #[test]
    fn evaluation_agrees_with_arithmetic(a in ratfunc(), b in ratfunc()) {
        let pt = point();
        if let (Ok(va), Ok(vb), Ok(vab)) = (a.eval(&pt, EVAL_EPS), b.eval(&pt, EVAL_EPS), (&a * &b).eval(&pt, EVAL_EPS)) {
            let scale = 1.0 + va.norm() * vb.norm();
            prop_assert!((vab - va * vb).norm() <= 1e-9 * scale);
            let vs = (&a + &b).eval(&pt, EVAL_EPS).unwrap();
            prop_assert!((vs - va - vb).norm() <= 1e-9 * (1.0 + va.norm() + vb.norm()));
        }
    }

    #[test]
    fn kronecker_mixed_product(a in small_matrix(2), b in small_matrix(2), c in small_matrix(2), d in small_matrix(2)) {
        let lhs = kron(&a, &b).matmul(&kron(&c, &d)).unwrap();
        let rhs = kron(&a.matmul(&c).unwrap(), &b.matmul(&d).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_is_two_sided(m in small_matrix(3)) {
        match m.inverse() {
            Ok(inv) => {
                prop_assert!(m.matmul(&inv).unwrap().is_identity());
                prop_assert!(inv.matmul(&m).unwrap().is_identity());
            }
            Err(_) => prop_assert!(m.det().is_zero()),
        }
    }

    #[test]
    fn gauge_preserves_ybe_invariants_and_triangularity(m in int_gauge()) {
        for name in ["std_Rq", "jordanian_Rh", "gl11_Rqh"] {
            let r = catalog::matrix(name).unwrap();
            let g = conj_tensor_square(&r, &m, Orientation::Grg).unwrap();
            prop_assert!(ybe_residual(&g).unwrap().is_zero());
            prop_assert_eq!(gauge_invariants(&g, 3).unwrap(), gauge_invariants(&r, 3).unwrap());
            prop_assert_eq!(is_triangular_r(&g).unwrap(), is_triangular_r(&r).unwrap());
        }
    }

    #[test]
    fn span_membership_matches_rewriting(coeffs in prop::collection::vec(-2i64..=2, 12), noise in prop::collection::vec(-1i64..=1, 16)) {
        let rels = catalog::relations("h23_case1_relations").unwrap();
        let order = GenOrder::default();
        let rules = orient(&rtt_relations(&catalog::matrix("hiet_H23").unwrap()).unwrap(), &order).unwrap();
        let mut p = NCPoly::zero();
        for (r, c) in rels.iter().zip(&coeffs) {
            p = p.add(&r.scale(&RatFunc::int(*c)));
        }
        prop_assert!(in_span(&p, &rels));
        prop_assert!(reduce(&p, &rules, &order, 1000).unwrap().is_zero());
        for (w, c) in Word::all(2).into_iter().zip(&noise) {
            p.add_term(RatFunc::int(*c), w);
        }
        prop_assert_eq!(in_span(&p, &rels), reduce(&p, &rules, &order, 1000).unwrap().is_zero());
    }

    #[test]
    fn limit_commutes_with_products(a in small_matrix(2), b in small_matrix(2), k in 1i64..=3) {
        let t = sym("t");
        let lift = |m: &MatRF| m.map(|e| e * &parse_expr_any(&format!("1 + {k}*t")).unwrap());
        let (la, lb) = (lift(&a), lift(&b));
        let prod = limit_t0(&la.matmul(&lb).unwrap(), t).unwrap();
        prop_assert_eq!(prod, limit_t0(&la, t).unwrap().matmul(&limit_t0(&lb, t).unwrap()).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn rtt_span_does_not_depend_on_kappa(n in 2i64..=9, d in 2i64..=9) {
        prop_assume!(n != d);
        let kappa = RatFunc::int(n).checked_div(&RatFunc::int(d)).unwrap();
        let r = catalog::matrix("kup_R").unwrap().substitute(&bindings([(sym("kappa"), kappa)])).unwrap();
        prop_assert!(span_equal(&rtt_relations(&r).unwrap(), &catalog::relations("kup_relations").unwrap()));
    }
}
