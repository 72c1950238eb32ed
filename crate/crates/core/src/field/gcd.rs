//! Multivariate polynomial gcd over the integers.
//!
//! Recursive content / primitive-part scheme: a variable is chosen, both
//! inputs are split into content and primitive part with respect to it, and
//! the primitive parts are combined with a primitive pseudo-remainder
//! sequence whose coefficients live in the polynomial ring of the remaining
//! variables. Each recursion level removes one variable.

use num_integer::Integer;

use super::poly::Polynomial;

/// Greatest common divisor with positive leading coefficient.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.clone().normalize_sign();
    }
    if b.is_zero() {
        return a.clone().normalize_sign();
    }
    if a == b {
        return a.clone().normalize_sign();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::constant(a.int_content().gcd(&b.int_content()));
    }

    let va = a.var_indices();
    let vb = b.var_indices();

    // A variable present in only one argument: the gcd must divide each of
    // that argument's coefficients with respect to it.
    if let Some(&v) = va.iter().find(|v| !vb.contains(v)) {
        return gcd_with_coeffs(b, a, v);
    }
    if let Some(&v) = vb.iter().find(|v| !va.contains(v)) {
        return gcd_with_coeffs(a, b, v);
    }

    if a.len() <= b.len() {
        if b.div_exact(a).is_some() {
            return a.clone().normalize_sign();
        }
    } else if a.div_exact(b).is_some() {
        return b.clone().normalize_sign();
    }

    let v = *va.iter().min_by_key(|&&v| a.degree_in(v).max(b.degree_in(v))).expect("nonconstant");

    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let c = gcd(&ca, &cb);
    let g = primitive_prs(pa.coeffs_in(v), pb.coeffs_in(v));
    let g = Polynomial::from_coeffs_in(v, &g);
    c.mul(&g).normalize_sign()
}

fn gcd_with_coeffs(start: &Polynomial, other: &Polynomial, v: usize) -> Polynomial {
    let mut g = start.clone().normalize_sign();
    for c in other.coeffs_in(v) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Gcd of the coefficients of `p` viewed as a polynomial in variable `v`.
pub fn content_in(p: &Polynomial, v: usize) -> Polynomial {
    let mut g = Polynomial::zero();
    for c in p.coeffs_in(v) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_one() {
            break;
        }
    }
    g
}

type Univar = Vec<Polynomial>;

fn trim(mut p: Univar) -> Univar {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn primitive_part(p: Univar) -> Univar {
    let mut g = Polynomial::zero();
    for c in &p {
        if !c.is_zero() {
            g = gcd(&g, c);
            if g.is_one() {
                break;
            }
        }
    }
    if g.is_one() || g.is_zero() {
        return p;
    }
    p.into_iter().map(|c| c.div_exact(&g).expect("content divides")).collect()
}

/// Pseudo-remainder of `f` by `g` (both nonzero, coefficient vectors by degree).
pub(crate) fn pseudo_rem(mut f: Univar, g: &[Polynomial]) -> Univar {
    let dg = g.len() - 1;
    let lc = g.last().expect("nonzero divisor").clone();
    while f.len() > dg && !f.is_empty() {
        let df = f.len() - 1;
        let lead = f.last().unwrap().clone();
        let shift = df - dg;
        for c in f.iter_mut() {
            *c = c.mul(&lc);
        }
        for (k, gc) in g.iter().enumerate() {
            let t = gc.mul(&lead);
            f[k + shift] = f[k + shift].sub(&t);
        }
        f = trim(f);
    }
    f
}

/// Gcd of two polynomials primitive in the main variable.
fn primitive_prs(a: Univar, b: Univar) -> Univar {
    let (mut f, mut g) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    loop {
        if g.len() == 1 {
            return vec![Polynomial::one()];
        }
        let r = pseudo_rem(f, &g);
        if r.is_empty() {
            return g;
        }
        if r.len() == 1 {
            return vec![Polynomial::one()];
        }
        f = g;
        g = primitive_part(r);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::symbol::sym;
    use num_bigint::BigInt;

    fn v(name: &str) -> Polynomial {
        Polynomial::var(sym(name))
    }

    #[test]
    fn gcd_of_products_recovers_common_factor() {
        let q = v("q");
        let h = v("h");
        let eta = v("eta");
        let one = Polynomial::one();
        let common = q.sub(&one).mul(&eta.mul(&h).add(&one));
        let a = common.mul(&q.add(&h));
        let b = common.mul(&h.sub(&eta).mul(&q));
        assert_eq!(gcd(&a, &b), common.normalize_sign());
    }

    #[test]
    fn gcd_is_one_for_coprime_inputs() {
        let q = v("q");
        let h = v("h");
        let a = q.mul(&q).add(&h);
        let b = q.add(&h.mul(&h));
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn gcd_with_integer_contents() {
        let q = v("q");
        let six = Polynomial::constant(6);
        let four = Polynomial::constant(4);
        let a = q.mul(&six);
        let b = q.mul(&q).mul(&four);
        assert_eq!(gcd(&a, &b), q.scale(&BigInt::from(2)));
    }
}
