//! Numeric checks of a coalgebra-preserving generator map on finite
//! dimensional representations of `U_q(sl(2))`, `q = e^a`.
//!
//! Basis vectors are `e_m`, `m = j, j−1, …, −j`, with
//! `J0 e_m = 2m e_m`, `J+ e_m = √([j−m][j+m+1]) e_{m+1}` and
//! `J− e_m = √([j+m][j−m+1]) e_{m−1}`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

pub type CMat = DMatrix<Complex64>;

const DEGENERATE_EPS: f64 = 1e-10;

/// `[n]_q = q^{n−1} + q^{n−3} + … + q^{1−n}`.
pub fn q_number(n: i64, q: Complex64) -> Complex64 {
    if n == 0 {
        return Complex64::new(0.0, 0.0);
    }
    let m = n.abs();
    let s: Complex64 = (0..m).map(|k| q.powi((m - 1 - 2 * k) as i32)).sum();
    if n < 0 {
        -s
    } else {
        s
    }
}

/// Parses a spin such as `1/2`, `1`, `3/2` or `1.5`; returns `2j`.
pub fn parse_spin(s: &str) -> Result<u32> {
    let s = s.trim();
    let two_j = if let Some((n, d)) = s.split_once('/') {
        match (n.trim().parse::<i64>(), d.trim()) {
            (Ok(n), "2") => n,
            (Ok(n), "1") => 2 * n,
            _ => return Err(Error::InvalidSpin(-1)),
        }
    } else if let Ok(n) = s.parse::<i64>() {
        2 * n
    } else if let Ok(x) = s.parse::<f64>() {
        let t = 2.0 * x;
        if (t - t.round()).abs() > 1e-12 {
            return Err(Error::InvalidSpin(-1));
        }
        t.round() as i64
    } else {
        return Err(Error::InvalidSpin(-1));
    };
    u32::try_from(two_j).map_err(|_| Error::InvalidSpin(two_j))
}

#[derive(Debug, Clone)]
pub struct NumRep {
    pub two_j: u32,
    pub a: Complex64,
    pub j0: CMat,
    pub jplus: CMat,
    pub jminus: CMat,
    /// `q^{J0/2}`
    pub k: CMat,
    /// `q^{−J0/2}`
    pub kinv: CMat,
}

impl NumRep {
    pub fn dim(&self) -> usize {
        self.two_j as usize + 1
    }

    pub fn q(&self) -> Complex64 {
        self.a.exp()
    }

    pub fn identity(&self) -> CMat {
        CMat::identity(self.dim(), self.dim())
    }

    /// `[J0]_q = (q^{J0} − q^{−J0})/(q − q^{−1})`, diagonal.
    pub fn q_bracket_j0(&self) -> CMat {
        let d = self.dim();
        let q = self.q();
        CMat::from_fn(d, d, |r, c| {
            if r == c {
                q_number(self.two_j as i64 - 2 * r as i64, q)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// Max entry of the defining-relation residuals.
    pub fn relation_residual(&self) -> f64 {
        let c = |x: &CMat, y: &CMat| x * y - y * x;
        let r1 = c(&self.j0, &self.jplus) - &self.jplus * Complex64::from(2.0);
        let r2 = c(&self.j0, &self.jminus) + &self.jminus * Complex64::from(2.0);
        let r3 = c(&self.jplus, &self.jminus) - self.q_bracket_j0();
        [r1, r2, r3].iter().map(max_abs).fold(0.0, f64::max)
    }
}

pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn build_rep(two_j: u32, a: Complex64) -> Result<NumRep> {
    let q = a.exp();
    for n in 1..=two_j as i64 + 1 {
        if q_number(n, q).norm() < DEGENERATE_EPS {
            return Err(Error::DegenerateQ(n as u32));
        }
    }
    let d = two_j as usize + 1;
    let j2 = two_j as i64;
    // index r ↔ 2m = 2j − 2r
    let two_m = |r: usize| j2 - 2 * r as i64;
    let mut j0 = CMat::zeros(d, d);
    let mut k = CMat::zeros(d, d);
    let mut kinv = CMat::zeros(d, d);
    let mut jplus = CMat::zeros(d, d);
    let mut jminus = CMat::zeros(d, d);
    for r in 0..d {
        let tm = two_m(r);
        j0[(r, r)] = Complex64::from(tm as f64);
        k[(r, r)] = (a * (tm as f64 / 2.0)).exp();
        kinv[(r, r)] = (-a * (tm as f64 / 2.0)).exp();
        if r > 0 {
            // J+ e_m, m = tm/2, lands on index r−1; [j−m][j+m+1] in halves.
            let x = q_number((j2 - tm) / 2, q) * q_number((j2 + tm) / 2 + 1, q);
            jplus[(r - 1, r)] = x.sqrt();
            jminus[(r, r - 1)] = x.sqrt();
        }
    }
    Ok(NumRep { two_j, a, j0, jplus, jminus, k, kinv })
}

/// Coefficients of `J'_± = c1 J_± + c2p q^{J0/2} + c2m q^{−J0/2} + c3 J_∓`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenMap {
    pub minus: [Complex64; 4],
    pub plus: [Complex64; 4],
}

impl GenMap {
    /// `b1 = sinh a / a`, `b2 = −a₊/(2a²)`, `b3 = −a₊²/(4a²)`, `J'_+ = J_+`.
    pub fn bhp(a: Complex64, a_plus: Complex64) -> Result<GenMap> {
        if a.norm() < 1e-300 {
            return Err(Error::SingularMap);
        }
        let a2 = a * a;
        let b1 = a.sinh() / a;
        let b2 = -a_plus / (2.0 * a2);
        let b3 = -(a_plus * a_plus) / (4.0 * a2);
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Ok(GenMap { minus: [b1, b2, -b2, b3], plus: [one, zero, zero, zero] })
    }

    /// Same as [`GenMap::bhp`] with the `q^{−J0/2}` coefficient of `J'_−`
    /// replaced by `b2m`.
    pub fn with_minus_kinv(mut self, b2m: Complex64) -> GenMap {
        self.minus[2] = b2m;
        self
    }

    /// Adds `J'_+ = a1 J_+ + a2(q^{J0/2} − q^{−J0/2}) + a3 J_−`.
    pub fn with_plus(mut self, a1: Complex64, a2: Complex64, a3: Complex64) -> GenMap {
        self.plus = [a1, a2, -a2, a3];
        self
    }

    fn combine(c: &[Complex64; 4], same: &CMat, k: &CMat, kinv: &CMat, other: &CMat) -> CMat {
        same * c[0] + k * c[1] + kinv * c[2] + other * c[3]
    }
}

#[derive(Debug, Clone)]
pub struct MappedGenerators {
    pub j0p: CMat,
    pub jplusp: CMat,
    pub jminusp: CMat,
    pub a: Complex64,
    pub a_plus: Complex64,
}

pub fn apply_map(rep: &NumRep, map: &GenMap) -> MappedGenerators {
    MappedGenerators {
        j0p: rep.j0.clone(),
        jplusp: GenMap::combine(&map.plus, &rep.jplus, &rep.k, &rep.kinv, &rep.jminus),
        jminusp: GenMap::combine(&map.minus, &rep.jminus, &rep.k, &rep.kinv, &rep.jplus),
        a: rep.a,
        a_plus: Complex64::new(0.0, 0.0),
    }
}

pub fn bhp_map(rep: &NumRep, a_plus: Complex64) -> Result<MappedGenerators> {
    let mut m = apply_map(rep, &GenMap::bhp(rep.a, a_plus)?);
    m.a_plus = a_plus;
    Ok(m)
}

/// Residuals of the three deformed commutation relations.
pub fn deformed_relation_residuals(rep: &NumRep, m: &MappedGenerators) -> [f64; 3] {
    let a = m.a;
    let ap = m.a_plus;
    let c = |x: &CMat, y: &CMat| x * y - y * x;
    let two = Complex64::from(2.0);
    // sinh(aJ0/2) = (K − K⁻¹)/2, sinh(aJ0) = (K² − K⁻²)/2
    let sinh_half = (&rep.k - &rep.kinv) / two;
    let k2 = &rep.k * &rep.k;
    let kinv2 = &rep.kinv * &rep.kinv;
    let sinh_full = (k2 - kinv2) / two;
    let r1 = c(&m.j0p, &m.jplusp) - &m.jplusp * two;
    let r2 = c(&m.j0p, &m.jminusp) + &m.jminusp * two + sinh_half * (ap / a / (a / two)) + &m.jplusp * (ap * ap / (a * a));
    let r3 = c(&m.jplusp, &m.jminusp)
        - sinh_full / a
        - (&rep.kinv * &m.jplusp + &m.jplusp * &rep.k) * (ap / a * ((a.exp() - 1.0) / (2.0 * a)));
    [max_abs(&r1), max_abs(&r2), max_abs(&r3)]
}

fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// Max difference between the coproduct induced by the map and the
/// standard-form coproduct written in the new generators.
pub fn check_coproduct_with(two_j1: u32, two_j2: u32, a: Complex64, map: &GenMap) -> Result<f64> {
    let r1 = build_rep(two_j1, a)?;
    let r2 = build_rep(two_j2, a)?;
    let (i1, i2) = (r1.identity(), r2.identity());
    let delta_j0 = kron(&r1.j0, &i2) + kron(&i1, &r2.j0);
    let delta_k = kron(&r1.k, &r2.k);
    let delta_kinv = kron(&r1.kinv, &r2.kinv);
    let delta_jp = kron(&r1.k, &r2.jplus) + kron(&r1.jplus, &r2.kinv);
    let delta_jm = kron(&r1.k, &r2.jminus) + kron(&r1.jminus, &r2.kinv);

    let m1 = apply_map(&r1, map);
    let m2 = apply_map(&r2, map);

    let induced_m = GenMap::combine(&map.minus, &delta_jm, &delta_k, &delta_kinv, &delta_jp);
    let induced_p = GenMap::combine(&map.plus, &delta_jp, &delta_k, &delta_kinv, &delta_jm);
    let direct_m = kron(&r1.k, &m2.jminusp) + kron(&m1.jminusp, &r2.kinv);
    let direct_p = kron(&r1.k, &m2.jplusp) + kron(&m1.jplusp, &r2.kinv);
    let direct_0 = kron(&m1.j0p, &i2) + kron(&i1, &m2.j0p);

    Ok([max_abs(&(induced_m - direct_m)), max_abs(&(induced_p - direct_p)), max_abs(&(delta_j0 - direct_0))]
        .into_iter()
        .fold(0.0, f64::max))
}

pub fn check_coproduct(two_j1: u32, two_j2: u32, a: Complex64, a_plus: Complex64) -> Result<f64> {
    check_coproduct_with(two_j1, two_j2, a, &GenMap::bhp(a, a_plus)?)
}

/// `m∘(S⊗id)∘Δ(X) − ε(X)·1` for `X = J'_0, J'_±`, with `S` applied
/// linearly to the map's expression and `S(J_±) = −q^{−J0/2} J_± q^{J0/2}`.
pub fn antipode_residual(rep: &NumRep, map: &GenMap) -> f64 {
    let s_j = |x: &CMat| -(&rep.kinv * x * &rep.k);
    let s_of = |c: &[Complex64; 4], same: &CMat, other: &CMat| {
        s_j(same) * c[0] + &rep.kinv * c[1] + &rep.k * c[2] + s_j(other) * c[3]
    };
    let eps = |c: &[Complex64; 4]| c[1] + c[2];
    let m = apply_map(rep, map);
    let id = rep.identity();
    let res_m = &rep.kinv * &m.jminusp + s_of(&map.minus, &rep.jminus, &rep.jplus) * &rep.kinv - &id * eps(&map.minus);
    let res_p = &rep.kinv * &m.jplusp + s_of(&map.plus, &rep.jplus, &rep.jminus) * &rep.kinv - &id * eps(&map.plus);
    let res_0 = -&m.j0p + &m.j0p;
    [max_abs(&res_m), max_abs(&res_p), max_abs(&res_0)].into_iter().fold(0.0, f64::max)
}

#[derive(Debug, Clone, Serialize)]
pub struct TrialReport {
    pub trials: usize,
    pub max_rep_residual: f64,
    pub max_relation_residual: f64,
    pub max_coproduct_residual: f64,
    pub max_antipode_residual: f64,
    pub max_generalized_residual: f64,
    /// Smallest coproduct residual when the `q^{±J0/2}` coefficients are not opposite.
    pub min_violation_residual: f64,
}

/// Seeded random trials with `(a, a₊)` uniform in `[0.1, 1]²` for each spin.
pub fn run_trials(two_js: &[u32], trials: usize, seed: u64) -> Result<TrialReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep_max: f64 = 0.0;
    let mut rel_max: f64 = 0.0;
    let mut cop_max: f64 = 0.0;
    let mut ant_max: f64 = 0.0;
    let mut gen_max: f64 = 0.0;
    let mut viol_min = f64::INFINITY;
    let c = |x: f64| Complex64::new(x, 0.0);
    for &tj in two_js {
        for _ in 0..trials {
            let a = c(rng.random_range(0.1..1.0));
            let ap = c(rng.random_range(0.1..1.0));
            let rep = build_rep(tj, a)?;
            rep_max = rep_max.max(rep.relation_residual());
            let m = bhp_map(&rep, ap)?;
            rel_max = deformed_relation_residuals(&rep, &m).into_iter().fold(rel_max, f64::max);
            let map = GenMap::bhp(a, ap)?;
            cop_max = cop_max.max(check_coproduct_with(tj, tj, a, &map)?);
            cop_max = cop_max.max(check_coproduct_with(tj, 1, a, &map)?);
            ant_max = ant_max.max(antipode_residual(&rep, &map));
            let extra = map.with_plus(c(rng.random_range(0.5..1.5)), c(rng.random_range(-1.0..1.0)), c(rng.random_range(-1.0..1.0)));
            gen_max = gen_max.max(check_coproduct_with(tj, tj, a, &extra)?);
            let broken = map.with_minus_kinv(map.minus[1]);
            viol_min = viol_min.min(check_coproduct_with(tj, tj, a, &broken)?);
        }
    }
    Ok(TrialReport {
        trials: trials * two_js.len(),
        max_rep_residual: rep_max,
        max_relation_residual: rel_max,
        max_coproduct_residual: cop_max,
        max_antipode_residual: ant_max,
        max_generalized_residual: gen_max,
        min_violation_residual: viol_min,
    })
}
