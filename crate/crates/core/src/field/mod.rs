//! Exact arithmetic in the field of multivariate rational functions over ℤ.

mod gcd;
mod parse;
mod poly;
mod ratfunc;
mod symbol;

use std::collections::BTreeMap;

use num_complex::Complex64;

pub use gcd::{content_in, gcd};
pub use parse::{parse_expr, parse_expr_any};
pub use poly::{Monomial, Polynomial};
pub use ratfunc::RatFunc;
pub use symbol::{is_valid_name, sym, Symbol};

use crate::error::{Error, Result};

/// Default `|den|` threshold for [`eval_num`].
pub const EVAL_EPS: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn arith(op: ArithOp, f: &RatFunc, g: &RatFunc) -> Result<RatFunc> {
    Ok(match op {
        ArithOp::Add => f + g,
        ArithOp::Sub => f - g,
        ArithOp::Mul => f * g,
        ArithOp::Div => f.checked_div(g)?,
    })
}

pub fn substitute(f: &RatFunc, bindings: &BTreeMap<Symbol, RatFunc>) -> Result<RatFunc> {
    f.substitute(bindings)
}

/// Division with remainder in `v`, coefficients taken in the field of the
/// remaining symbols. Returns `(quotient, remainder)` with
/// `f = quotient·g + remainder` and `deg_v(remainder) < deg_v(g)`.
pub fn divmod_univar(f: &Polynomial, g: &Polynomial, v: Symbol) -> Result<(RatFunc, RatFunc)> {
    let vi = v.index();
    let dg = g.degree_in(vi) as usize;
    if dg == 0 {
        return Err(Error::NotInVariable(v.name().to_string()));
    }
    let gc: Vec<RatFunc> = g.coeffs_in(vi).into_iter().map(RatFunc::from_poly).collect();
    let mut rem: Vec<RatFunc> = f.coeffs_in(vi).into_iter().map(RatFunc::from_poly).collect();
    let lc_inv = gc[dg].inv()?;
    let mut quot = vec![RatFunc::zero(); rem.len().saturating_sub(dg).max(1)];
    while rem.len() > dg {
        let top = rem.len() - 1;
        let c = &rem[top] * &lc_inv;
        let shift = top - dg;
        if !c.is_zero() {
            for (k, gk) in gc.iter().enumerate() {
                rem[k + shift] = &rem[k + shift] - &(&c * gk);
            }
            quot[shift] = c;
        }
        rem.pop();
    }
    let var = RatFunc::var(v);
    let assemble = |cs: &[RatFunc]| {
        cs.iter().rev().fold(RatFunc::zero(), |acc, c| &(&acc * &var) + c)
    };
    Ok((assemble(&quot), assemble(&rem)))
}

/// Double-precision evaluation; fails when `|den| <= eps` at the point.
pub fn eval_num(f: &RatFunc, point: &BTreeMap<Symbol, Complex64>, eps: f64) -> Result<Complex64> {
    f.eval(point, eps)
}

/// Convenience constructor for binding maps.
pub fn bindings<I: IntoIterator<Item = (Symbol, RatFunc)>>(pairs: I) -> BTreeMap<Symbol, RatFunc> {
    pairs.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> RatFunc {
        parse_expr_any(text).unwrap()
    }

    #[test]
    fn parse_examples() {
        let params = [sym("q"), sym("h"), sym("hp"), sym("eta"), sym("zeta")];
        assert_eq!(parse_expr("q", &params).unwrap(), RatFunc::var(sym("q")));
        let disc = parse_expr("(q-1)^2 - 4*h*hp", &params).unwrap();
        assert!(disc.is_polynomial());
        assert_eq!(disc.to_string(), "q^2 - 4*h*hp - 2*q + 1");
        let f = parse_expr("1/(1+2*eta*zeta)", &params).unwrap();
        assert!(f.num().is_one());
        assert_eq!(f.den().to_string(), "2*eta*zeta + 1");
    }

    #[test]
    fn arith_examples() {
        let q1 = p("q-1");
        assert!(arith(ArithOp::Div, &q1, &q1).unwrap().is_one());
        let k1 = p("1/(1+h/eta)");
        let k2 = p("1/(1+eta*hp)");
        assert_eq!(arith(ArithOp::Div, &k2, &k1).unwrap(), p("(1+h/eta)/(1+eta*hp)"));
        assert_eq!(arith(ArithOp::Div, &q1, &RatFunc::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn substitute_examples() {
        let q = sym("q");
        let qv = RatFunc::var(q);
        assert_eq!(qv.substitute(&bindings([(q, qv.clone())])).unwrap(), qv);
        let pole = p("1/(q-1)");
        assert_eq!(pole.substitute(&bindings([(q, RatFunc::one())])), Err(Error::PoleAfterSubstitution));
        let f = p("(q^2 + h)/(h - 3)");
        let got = f.substitute(&bindings([(q, p("h/(q-1)")), (sym("h"), p("2*q"))])).unwrap();
        assert_eq!(got, p("(h^2/(q-1)^2 + 2*q)/(2*q-3)"));
    }

    #[test]
    fn divmod_examples() {
        let kappa = sym("kappa");
        let quad = p("kappa^2*(q+h*hp) - kappa*(q+1) + 1");
        let (qq, r) = divmod_univar(quad.num(), quad.num(), kappa).unwrap();
        assert!(qq.is_one() && r.is_zero());
        let lin = p("kappa - 1");
        let (_, r) = divmod_univar(lin.num(), quad.num(), kappa).unwrap();
        assert!(!r.is_zero());
        let mult = &quad * &p("q-1");
        let (qq, r) = divmod_univar(mult.num(), quad.num(), kappa).unwrap();
        assert!(r.is_zero());
        assert_eq!(qq, p("q-1"));
        assert!(matches!(divmod_univar(quad.num(), p("q").num(), kappa), Err(Error::NotInVariable(_))));
    }

    #[test]
    fn divmod_reconstructs() {
        let kappa = sym("kappa");
        let f = p("kappa^5*q - 3*kappa^2*h + kappa*hp - 7");
        let g = p("kappa^2*(q+h*hp) - kappa*(q+1) + 1");
        let (qq, r) = divmod_univar(f.num(), g.num(), kappa).unwrap();
        assert_eq!(&(&qq * &g) + &r, f);
        let rp = r.num().degree_in(kappa.index());
        assert!(rp < 2);
        assert!(!r.den().contains_var(kappa.index()));
    }

    #[test]
    fn eval_examples() {
        let mut pt = BTreeMap::new();
        pt.insert(sym("q"), Complex64::new(3.0, 0.0));
        assert_eq!(eval_num(&p("q"), &pt, EVAL_EPS).unwrap(), Complex64::new(3.0, 0.0));
        assert!(matches!(eval_num(&p("1/(q-3)"), &pt, 1e-12), Err(Error::NearZeroDenominator(_))));
        assert!(matches!(eval_num(&p("h"), &pt, 1e-12), Err(Error::UnboundSymbol(_))));
    }
}
