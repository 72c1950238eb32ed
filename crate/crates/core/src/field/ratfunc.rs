//! Canonical rational functions `num / den` over the integers.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::gcd::gcd;
use super::poly::{Monomial, Polynomial};
use super::symbol::Symbol;
use crate::error::{Error, Result};

/// A reduced fraction of polynomials.
///
/// Invariants: `den` is nonzero, `gcd(num, den) = 1`, the leading coefficient
/// of `den` is positive, and zero is stored as `0 / 1`. Two values are equal
/// exactly when their representations are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Polynomial,
    den: Polynomial,
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl RatFunc {
    pub fn zero() -> RatFunc {
        RatFunc { num: Polynomial::zero(), den: Polynomial::one() }
    }

    pub fn one() -> RatFunc {
        RatFunc { num: Polynomial::one(), den: Polynomial::one() }
    }

    pub fn int(c: i64) -> RatFunc {
        RatFunc::from_poly(Polynomial::constant(c))
    }

    pub fn var(s: Symbol) -> RatFunc {
        RatFunc::from_poly(Polynomial::var(s))
    }

    pub fn from_poly(p: Polynomial) -> RatFunc {
        RatFunc { num: p, den: Polynomial::one() }
    }

    /// Canonical fraction; fails when `den` is the zero polynomial.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc::reduce(num, den))
    }

    fn reduce(num: Polynomial, den: Polynomial) -> RatFunc {
        if num.is_zero() {
            return RatFunc::zero();
        }
        let (num, den) = if den.is_one() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
            }
        };
        if den.leading_coeff().is_some_and(|c| c.is_negative()) {
            RatFunc { num: num.neg(), den: den.neg() }
        } else {
            RatFunc { num, den }
        }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The value as an integer if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        let mut idx = self.num.var_indices();
        idx.extend(self.den.var_indices());
        idx.sort_unstable();
        idx.dedup();
        idx.into_iter().map(Symbol::from_index).collect()
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.num.contains_var(s.index()) || self.den.contains_var(s.index())
    }

    pub fn checked_div(&self, other: &RatFunc) -> Result<RatFunc> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.mul_ref(&other.inv_unchecked()))
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.inv_unchecked())
    }

    fn inv_unchecked(&self) -> RatFunc {
        let (num, den) = (self.den.clone(), self.num.clone());
        if den.leading_coeff().is_some_and(|c| c.is_negative()) {
            RatFunc { num: num.neg(), den: den.neg() }
        } else {
            RatFunc { num, den }
        }
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        RatFunc { num: self.num.pow(e), den: self.den.pow(e) }
    }

    fn add_ref(&self, other: &RatFunc, negate: bool) -> RatFunc {
        let on = if negate { other.num.neg() } else { other.num.clone() };
        if self.is_zero() {
            return RatFunc { num: on, den: other.den.clone() };
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            if self.den.is_one() {
                return RatFunc { num: self.num.add(&on), den: Polynomial::one() };
            }
            return RatFunc::reduce(self.num.add(&on), self.den.clone());
        }
        if self.den.is_one() {
            return RatFunc { num: self.num.mul(&other.den).add(&on), den: other.den.clone() };
        }
        if other.den.is_one() {
            return RatFunc { num: self.num.add(&on.mul(&self.den)), den: self.den.clone() };
        }
        let g = gcd(&self.den, &other.den);
        let (da, db) = if g.is_one() {
            (self.den.clone(), other.den.clone())
        } else {
            (self.den.div_exact(&g).unwrap(), other.den.div_exact(&g).unwrap())
        };
        let num = self.num.mul(&db).add(&on.mul(&da));
        let den = da.mul(&other.den);
        RatFunc::reduce(num, den)
    }

    fn mul_ref(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return RatFunc { num: self.num.mul(&other.num), den: Polynomial::one() };
        }
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let n1 = if g1.is_one() { self.num.clone() } else { self.num.div_exact(&g1).unwrap() };
        let d2 = if g1.is_one() { other.den.clone() } else { other.den.div_exact(&g1).unwrap() };
        let n2 = if g2.is_one() { other.num.clone() } else { other.num.div_exact(&g2).unwrap() };
        let d1 = if g2.is_one() { self.den.clone() } else { self.den.div_exact(&g2).unwrap() };
        let num = n1.mul(&n2);
        let den = d1.mul(&d2);
        if den.leading_coeff().is_some_and(|c| c.is_negative()) {
            RatFunc { num: num.neg(), den: den.neg() }
        } else {
            RatFunc { num, den }
        }
    }

    /// Simultaneous substitution of symbols by rational functions.
    pub fn substitute(&self, bindings: &BTreeMap<Symbol, RatFunc>) -> Result<RatFunc> {
        if bindings.is_empty() || !self.symbols().iter().any(|s| bindings.contains_key(s)) {
            return Ok(self.clone());
        }
        let num = substitute_poly(&self.num, bindings);
        let den = substitute_poly(&self.den, bindings);
        if den.is_zero() {
            return Err(Error::PoleAfterSubstitution);
        }
        Ok(num.mul_ref(&den.inv_unchecked()))
    }

    pub fn subs(&self, s: Symbol, value: &RatFunc) -> Result<RatFunc> {
        let mut b = BTreeMap::new();
        b.insert(s, value.clone());
        self.substitute(&b)
    }

    /// Floating-point evaluation; symbols missing from `point` are an error.
    pub fn eval(&self, point: &BTreeMap<Symbol, Complex64>, eps: f64) -> Result<Complex64> {
        for s in self.symbols() {
            if !point.contains_key(&s) {
                return Err(Error::UnboundSymbol(s.name().to_string()));
            }
        }
        let lookup = |i: usize| point[&Symbol::from_index(i)];
        let den: Complex64 = self.den.eval_with(lookup);
        if den.norm() <= eps {
            return Err(Error::NearZeroDenominator(den.norm()));
        }
        let num: Complex64 = self.num.eval_with(lookup);
        Ok(num / den)
    }
}

/// Substitutes into a polynomial over a common denominator, normalizing once.
fn substitute_poly(p: &Polynomial, bindings: &BTreeMap<Symbol, RatFunc>) -> RatFunc {
    // Per bound variable: the maximal exponent that occurs in `p`.
    let mut max_deg: BTreeMap<usize, u32> = BTreeMap::new();
    for s in bindings.keys() {
        let d = p.degree_in(s.index());
        if d > 0 {
            max_deg.insert(s.index(), d);
        }
    }
    let mut num_pows: BTreeMap<(usize, u32), Polynomial> = BTreeMap::new();
    let mut den_pows: BTreeMap<(usize, u32), Polynomial> = BTreeMap::new();
    let pow_of = |cache: &mut BTreeMap<(usize, u32), Polynomial>, base: &Polynomial, i: usize, e: u32| {
        cache.entry((i, e)).or_insert_with(|| base.pow(e)).clone()
    };

    let mut acc = Polynomial::zero();
    for (m, c) in p.terms() {
        let mut term = Polynomial::constant(c.clone());
        let mut rest = Monomial::one();
        for (i, e) in m.factors() {
            if !max_deg.contains_key(&i) {
                rest = rest.mul(&Monomial::var(i, e));
            }
        }
        for (&i, &d) in &max_deg {
            let b = &bindings[&Symbol::from_index(i)];
            let e = m.exp(i);
            if e > 0 {
                term = term.mul(&pow_of(&mut num_pows, &b.num, i, e));
            }
            if !b.den.is_one() && d > e {
                term = term.mul(&pow_of(&mut den_pows, &b.den, i, d - e));
            }
        }
        acc = acc.add(&term.mul_monomial(&rest));
    }
    let mut den = Polynomial::one();
    for (&i, &d) in &max_deg {
        let b = &bindings[&Symbol::from_index(i)];
        if !b.den.is_one() {
            den = den.mul(&b.den.pow(d));
        }
    }
    RatFunc::reduce(acc, den)
}

impl From<i64> for RatFunc {
    fn from(c: i64) -> Self {
        RatFunc::int(c)
    }
}

impl From<Symbol> for RatFunc {
    fn from(s: Symbol) -> Self {
        RatFunc::var(s)
    }
}

impl From<Polynomial> for RatFunc {
    fn from(p: Polynomial) -> Self {
        RatFunc::from_poly(p)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: &RatFunc) -> RatFunc {
                let f: fn(&RatFunc, &RatFunc) -> RatFunc = $body;
                f(self, rhs)
            }
        }
        impl $trait<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: &RatFunc) -> RatFunc {
                (&self).$method(rhs)
            }
        }
        impl $trait<RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| a.add_ref(b, false));
binop!(Sub, sub, |a, b| a.add_ref(b, true));
binop!(Mul, mul, |a, b| a.mul_ref(b));
// Panics on a zero divisor, like integer division; use `checked_div` otherwise.
binop!(Div, div, |a, b| a.checked_div(b).expect("division by zero rational function"));

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den }
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::one()
    }
}

fn needs_parens_as_denominator(p: &Polynomial) -> bool {
    match p.terms() {
        [(m, c)] => !(m.is_one() || (c.is_one() && m.degree() == 1)),
        _ => true,
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.len() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if needs_parens_as_denominator(&self.den) {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}
