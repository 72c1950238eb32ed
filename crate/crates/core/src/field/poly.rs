//! Sparse multivariate polynomials over the integers.
//!
//! Terms are kept sorted in descending graded-lexicographic order (total
//! degree first, ties broken by the exponent of the earliest symbol in the
//! global order), so the leading term is always `terms[0]`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::symbol::Symbol;

/// Exponent vector indexed by symbol position; trailing zeros are trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[u32; 8]>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(SmallVec::new())
    }

    pub fn var(index: usize, exp: u32) -> Monomial {
        if exp == 0 {
            return Monomial::one();
        }
        let mut v = SmallVec::from_elem(0, index + 1);
        v[index] = exp;
        Monomial(v)
    }

    fn trim(mut self) -> Monomial {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    pub fn exp(&self, index: usize) -> u32 {
        self.0.get(index).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// `(symbol index, exponent)` pairs with nonzero exponent.
    pub fn factors(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| (i, e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (long, short) = if self.0.len() >= other.0.len() { (self, other) } else { (other, self) };
        let mut v = long.0.clone();
        for (i, e) in short.0.iter().enumerate() {
            v[i] += e;
        }
        Monomial(v)
    }

    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.0.len() > self.0.len() && other.0[self.0.len()..].iter().any(|&e| e > 0) {
            return None;
        }
        let mut v = self.0.clone();
        for (i, &e) in other.0.iter().enumerate() {
            if i >= v.len() {
                break;
            }
            v[i] = v[i].checked_sub(e)?;
        }
        Some(Monomial(v).trim())
    }

    fn without(&self, index: usize) -> Monomial {
        let mut v = self.0.clone();
        if index < v.len() {
            v[index] = 0;
        }
        Monomial(v).trim()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let n = self.0.len().max(other.0.len());
            for i in 0..n {
                match self.exp(i).cmp(&other.exp(i)) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Polynomial with exact integer coefficients; the zero polynomial has no terms.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<(Monomial, BigInt)>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial { terms: Vec::new() }
    }

    pub fn one() -> Polynomial {
        Polynomial::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Polynomial {
        let c = c.into();
        if c.is_zero() {
            Polynomial::zero()
        } else {
            Polynomial { terms: vec![(Monomial::one(), c)] }
        }
    }

    pub fn var(s: Symbol) -> Polynomial {
        Polynomial { terms: vec![(Monomial::var(s.index(), 1), BigInt::one())] }
    }

    pub fn monomial(m: Monomial, c: BigInt) -> Polynomial {
        if c.is_zero() {
            Polynomial::zero()
        } else {
            Polynomial { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(terms: I) -> Polynomial {
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_default() += c;
        }
        Polynomial::from_map(acc)
    }

    fn from_map(acc: BTreeMap<Monomial, BigInt>) -> Polynomial {
        let terms = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Polynomial { terms }
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// The constant value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.first().map_or(0, |(m, _)| m.degree())
    }

    /// Indices of the symbols that occur, ascending.
    pub fn var_indices(&self) -> Vec<usize> {
        let mut seen: Vec<bool> = Vec::new();
        for (m, _) in &self.terms {
            if m.0.len() > seen.len() {
                seen.resize(m.0.len(), false);
            }
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    seen[i] = true;
                }
            }
        }
        seen.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        self.var_indices().into_iter().map(Symbol::from_index).collect()
    }

    pub fn contains_var(&self, index: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(index) > 0)
    }

    pub fn degree_in(&self, index: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(index)).max().unwrap_or(0)
    }

    /// Coefficients with respect to one variable, indexed by its exponent.
    pub fn coeffs_in(&self, index: usize) -> Vec<Polynomial> {
        let d = self.degree_in(index) as usize;
        let mut buckets: Vec<Vec<(Monomial, BigInt)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            buckets[m.exp(index) as usize].push((m.without(index), c.clone()));
        }
        // Removing one variable can reorder terms, so re-sort each bucket.
        buckets
            .into_iter()
            .map(|mut b| {
                b.sort_by(|x, y| y.0.cmp(&x.0));
                Polynomial { terms: b }
            })
            .collect()
    }

    pub fn from_coeffs_in(index: usize, coeffs: &[Polynomial]) -> Polynomial {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            let shift = Monomial::var(index, k as u32);
            for (m, a) in &c.terms {
                terms.push((m.mul(&shift), a.clone()));
            }
        }
        Polynomial::from_terms(terms)
    }

    /// Positive gcd of the integer coefficients (zero for the zero polynomial).
    pub fn int_content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    /// Exact division of every coefficient by an integer.
    pub fn div_int(&self, c: &BigInt) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(m, a)| (m.clone(), a / c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.clone())).collect() }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(m, a)| (m.clone(), -a)).collect() }
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp(mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), if negate_other { -cb } else { cb.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(
            other.terms[j..].iter().map(|(m, c)| (m.clone(), if negate_other { -c } else { c.clone() })),
        );
        Polynomial { terms: out }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.merge(other, true)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_monomial(m).scale(c);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_monomial(m).scale(c);
        }
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_default() += ca * cb;
            }
        }
        Polynomial::from_map(acc)
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut out = Polynomial::one();
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Polynomial::zero());
        }
        if let Some(c) = divisor.as_constant() {
            if self.terms.iter().all(|(_, a)| a.is_multiple_of(&c)) {
                return Some(Polynomial { terms: self.terms.iter().map(|(m, a)| (m.clone(), a / &c)).collect() });
            }
            return None;
        }
        if self == divisor {
            return Some(Polynomial::one());
        }
        let (dm, dc) = &divisor.terms[0];
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((rm, rc)) = rem.terms.first() {
            let m = rm.div(dm)?;
            let (c, r) = rc.div_rem(dc);
            if !r.is_zero() {
                return None;
            }
            rem = rem.sub(&divisor.mul_monomial(&m).scale(&c));
            quot.push((m, c));
        }
        Some(Polynomial { terms: quot })
    }

    /// Multiplies by -1 if needed so the leading coefficient is positive.
    pub fn normalize_sign(self) -> Polynomial {
        match self.leading_coeff() {
            Some(c) if c.is_negative() => self.neg(),
            _ => self,
        }
    }

    /// Evaluates with a caller-supplied value for each symbol index.
    pub fn eval_with<T, F>(&self, mut value: F) -> T
    where
        T: Clone + Zero + One + std::ops::Mul<Output = T> + std::ops::Add<Output = T> + From<f64>,
        F: FnMut(usize) -> T,
    {
        let mut cache: BTreeMap<usize, T> = BTreeMap::new();
        let mut sum = T::zero();
        for (m, c) in &self.terms {
            let mut term = T::from(bigint_to_f64(c));
            for (i, e) in m.factors() {
                let base = cache.entry(i).or_insert_with(|| value(i)).clone();
                let mut p = T::one();
                for _ in 0..e {
                    p = p * base.clone();
                }
                term = term * p;
            }
            sum = sum + term;
        }
        sum
    }
}

pub(crate) fn bigint_to_f64(c: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    c.to_f64().unwrap_or(if c.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}

fn fmt_monomial(m: &Monomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for (i, e) in m.factors() {
        if !first {
            f.write_str("*")?;
        }
        first = false;
        let s = Symbol::from_index(i);
        if e == 1 {
            write!(f, "{s}")?;
        } else {
            write!(f, "{s}^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let abs = c.abs();
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                fmt_monomial(m, f)?;
            } else {
                write!(f, "{abs}*")?;
                fmt_monomial(m, f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::symbol::sym;

    fn v(name: &str) -> Polynomial {
        Polynomial::var(sym(name))
    }

    #[test]
    fn graded_lex_order_puts_highest_degree_first() {
        let q = v("q");
        let h = v("h");
        let p = q.mul(&q).add(&h).add(&Polynomial::one()).add(&q.mul(&h));
        assert_eq!(p.to_string(), "q^2 + q*h + h + 1");
    }

    #[test]
    fn exact_division_detects_remainders() {
        let q = v("q");
        let one = Polynomial::one();
        let a = q.sub(&one);
        let b = q.add(&one);
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.add(&one).div_exact(&a), None);
    }

    #[test]
    fn coefficient_split_round_trips() {
        let q = v("q");
        let k = v("kappa");
        let p = k.pow(2).mul(&q).sub(&k.mul(&q.add(&Polynomial::one()))).add(&Polynomial::one());
        let idx = sym("kappa").index();
        let cs = p.coeffs_in(idx);
        assert_eq!(cs.len(), 3);
        assert_eq!(Polynomial::from_coeffs_in(idx, &cs), p);
    }
}
