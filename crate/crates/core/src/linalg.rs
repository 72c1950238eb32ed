//! Square matrices over [`RatFunc`].
//!
//! Kronecker products use row-major blocks with the first factor outermost:
//! `(A⊗B)[i·nB + k, j·nB + l] = A[i,j]·B[k,l]`. For a 4×4 R-matrix the basis
//! is therefore `e1⊗e1, e1⊗e2, e2⊗e1, e2⊗e2`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{parse_expr, RatFunc, Symbol};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatRF {
    n: usize,
    entries: Vec<RatFunc>,
}

/// Direction of a tensor-square similarity transformation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    /// `(M⊗M) R (M⁻¹⊗M⁻¹)`
    #[serde(rename = "GRG")]
    Grg,
    /// `(M⁻¹⊗M⁻¹) R (M⊗M)`
    #[serde(rename = "MinvRM")]
    MinvRm,
}

impl std::str::FromStr for Orientation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "GRG" => Ok(Orientation::Grg),
            "MinvRM" => Ok(Orientation::MinvRm),
            other => Err(Error::MalformedMatrix(format!("unknown orientation `{other}`"))),
        }
    }
}

impl MatRF {
    pub fn zeros(n: usize) -> MatRF {
        MatRF { n, entries: vec![RatFunc::zero(); n * n] }
    }

    pub fn identity(n: usize) -> MatRF {
        let mut m = MatRF::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = RatFunc::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<RatFunc>>) -> Result<MatRF> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("rows must form a square matrix".into()));
        }
        Ok(MatRF { n, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> RatFunc) -> MatRF {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        MatRF { n, entries }
    }

    /// Parses a row-major table of expressions over the given symbols.
    pub fn parse(rows: &[&[&str]], params: &[Symbol]) -> Result<MatRF> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|e| parse_expr(e, params)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        MatRF::from_rows(rows)
    }

    /// The flip `P(u⊗v) = v⊗u` on `ℂ^m ⊗ ℂ^m`.
    pub fn flip(m: usize) -> MatRF {
        let n = m * m;
        let mut p = MatRF::zeros(n);
        for i in 0..m {
            for j in 0..m {
                p.entries[(i * m + j) * n + (j * m + i)] = RatFunc::one();
            }
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RatFunc) {
        self.entries[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[RatFunc] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[RatFunc]> {
        self.entries.chunks(self.n)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RatFunc::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == MatRF::identity(self.n)
    }

    pub fn map(&self, f: impl FnMut(&RatFunc) -> RatFunc) -> MatRF {
        MatRF { n: self.n, entries: self.entries.iter().map(f).collect() }
    }

    pub fn try_map(&self, f: impl FnMut(&RatFunc) -> Result<RatFunc>) -> Result<MatRF> {
        Ok(MatRF { n: self.n, entries: self.entries.iter().map(f).collect::<Result<_>>()? })
    }

    pub fn transpose(&self) -> MatRF {
        MatRF::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &RatFunc) -> MatRF {
        self.map(|e| e * c)
    }

    pub fn add(&self, other: &MatRF) -> Result<MatRF> {
        self.check_same(other)?;
        Ok(MatRF { n: self.n, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &MatRF) -> Result<MatRF> {
        self.check_same(other)?;
        Ok(MatRF { n: self.n, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect() })
    }

    fn check_same(&self, other: &MatRF) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!("{}×{} vs {}×{}", self.n, self.n, other.n, other.n)));
        }
        Ok(())
    }

    pub fn matmul(&self, other: &MatRF) -> Result<MatRF> {
        self.check_same(other)?;
        let n = self.n;
        let mut out = MatRF::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * n + j;
                    out.entries[idx] = &out.entries[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn kron(&self, other: &MatRF) -> MatRF {
        let (na, nb) = (self.n, other.n);
        MatRF::from_fn(na * nb, |r, c| {
            let a = self.get(r / nb, c / nb);
            if a.is_zero() {
                return RatFunc::zero();
            }
            a * other.get(r % nb, c % nb)
        })
    }

    pub fn trace(&self) -> RatFunc {
        (0..self.n).fold(RatFunc::zero(), |acc, i| &acc + self.get(i, i))
    }

    pub fn pow(&self, e: u32) -> MatRF {
        let mut out = MatRF::identity(self.n);
        for _ in 0..e {
            out = out.matmul(self).expect("same dimension");
        }
        out
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn det(&self) -> RatFunc {
        let n = self.n;
        if n == 0 {
            return RatFunc::one();
        }
        let mut a = self.entries.clone();
        let mut prev = RatFunc::one();
        let mut sign = false;
        for k in 0..n - 1 {
            let Some(p) = (k..n).find(|&r| !a[r * n + k].is_zero()) else {
                return RatFunc::zero();
            };
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &(&a[k * n + k] * &a[i * n + j]) - &(&a[i * n + k] * &a[k * n + j]);
                    a[i * n + j] = v.checked_div(&prev).expect("Bareiss pivot is nonzero");
                }
                a[i * n + k] = RatFunc::zero();
            }
            prev = a[k * n + k].clone();
        }
        let d = a[n * n - 1].clone();
        if sign {
            -d
        } else {
            d
        }
    }

    /// Exact inverse by fraction-free Gauss–Jordan elimination on `[A | I]`.
    pub fn inverse(&self) -> Result<MatRF> {
        let n = self.n;
        let w = 2 * n;
        let mut a: Vec<RatFunc> = Vec::with_capacity(n * w);
        for i in 0..n {
            a.extend(self.entries[i * n..(i + 1) * n].iter().cloned());
            a.extend((0..n).map(|j| if i == j { RatFunc::one() } else { RatFunc::zero() }));
        }
        let mut prev = RatFunc::one();
        for k in 0..n {
            let p = (k..n).find(|&r| !a[r * w + k].is_zero()).ok_or(Error::SingularMatrix)?;
            if p != k {
                for j in 0..w {
                    a.swap(k * w + j, p * w + j);
                }
            }
            let pivot = a[k * w + k].clone();
            for i in 0..n {
                if i == k {
                    continue;
                }
                let f = a[i * w + k].clone();
                for j in 0..w {
                    if j == k {
                        continue;
                    }
                    let v = &(&pivot * &a[i * w + j]) - &(&f * &a[k * w + j]);
                    a[i * w + j] = v.checked_div(&prev).expect("Bareiss pivot is nonzero");
                }
                a[i * w + k] = RatFunc::zero();
            }
            prev = pivot;
        }
        let mut inv = MatRF::zeros(n);
        for i in 0..n {
            let d = &a[i * w + i];
            for j in 0..n {
                inv.entries[i * n + j] = a[i * w + n + j].checked_div(d)?;
            }
        }
        Ok(inv)
    }

    /// Tensor factor size `m` with `m² = n`.
    pub fn tensor_factor(&self) -> Result<usize> {
        let m = (self.n as f64).sqrt().round() as usize;
        if m * m != self.n {
            return Err(Error::DimensionMismatch(format!("{} is not a perfect square", self.n)));
        }
        Ok(m)
    }

    /// `P·R·P` with `P` the flip of the two tensor factors.
    pub fn r21(&self) -> Result<MatRF> {
        let m = self.tensor_factor()?;
        Ok(MatRF::from_fn(self.n, |r, c| {
            let (i, j) = (r / m, r % m);
            let (k, l) = (c / m, c % m);
            self.get(j * m + i, l * m + k).clone()
        }))
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j).is_zero()))
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<RatFunc> {
        (0..self.n).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        let mut out: Vec<Symbol> = self.entries.iter().flat_map(|e| e.symbols()).collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn substitute(&self, bindings: &BTreeMap<Symbol, RatFunc>) -> Result<MatRF> {
        self.try_map(|e| e.substitute(bindings))
    }

    pub fn eval(&self, point: &BTreeMap<Symbol, Complex64>) -> Result<nalgebra::DMatrix<Complex64>> {
        let mut out = nalgebra::DMatrix::zeros(self.n, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out[(i, j)] = self.get(i, j).eval(point, 1e-300)?;
            }
        }
        Ok(out)
    }

    /// Real 4×4 matrix; every entry must be a constant.
    pub fn to_real4(&self) -> Result<nalgebra::Matrix4<f64>> {
        if self.n != 4 {
            return Err(Error::DimensionMismatch(format!("expected 4×4, got {}×{}", self.n, self.n)));
        }
        if let Some(s) = self.symbols().first() {
            return Err(Error::UnboundSymbol(s.name().to_string()));
        }
        let empty = BTreeMap::new();
        let mut out = nalgebra::Matrix4::zeros();
        for i in 0..4 {
            for j in 0..4 {
                out[(i, j)] = self.get(i, j).eval(&empty, 0.0)?.re;
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            n: self.n,
            params: self.symbols().iter().map(|s| s.name().to_string()).collect(),
            entries: self.rows().map(|r| r.iter().map(|e| e.to_string()).collect()).collect(),
        }
    }

    pub fn from_json(json: &MatrixJson) -> Result<MatRF> {
        if json.entries.len() != json.n || json.entries.iter().any(|r| r.len() != json.n) {
            return Err(Error::MalformedMatrix(format!("entries do not form a {0}×{0} table", json.n)));
        }
        let params = json.params.iter().map(|p| Symbol::new(p)).collect::<Result<Vec<_>>>()?;
        let rows = json
            .entries
            .iter()
            .map(|r| r.iter().map(|e| parse_expr(e, &params)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        MatRF::from_rows(rows)
    }
}

impl Mul for &MatRF {
    type Output = MatRF;
    fn mul(self, rhs: &MatRF) -> MatRF {
        self.matmul(rhs).expect("matrix dimensions agree")
    }
}

/// Wire format: `{"n": int, "params": [names], "entries": [[expr, ...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub params: Vec<String>,
    pub entries: Vec<Vec<String>>,
}

pub fn matmul(a: &MatRF, b: &MatRF) -> Result<MatRF> {
    a.matmul(b)
}

pub fn inverse(a: &MatRF) -> Result<MatRF> {
    a.inverse()
}

pub fn kron(a: &MatRF, b: &MatRF) -> MatRF {
    a.kron(b)
}

pub fn r21(r: &MatRF) -> Result<MatRF> {
    r.r21()
}

/// Conjugates `r` by the tensor square of `m` in the given orientation.
pub fn conj_tensor_square(r: &MatRF, m: &MatRF, o: Orientation) -> Result<MatRF> {
    if r.dim() != m.dim() * m.dim() {
        return Err(Error::DimensionMismatch(format!(
            "R is {0}×{0} but M⊗M is {1}×{1}",
            r.dim(),
            m.dim() * m.dim()
        )));
    }
    let minv = m.inverse()?;
    let mm = m.kron(m);
    let mmi = minv.kron(&minv);
    match o {
        Orientation::Grg => mm.matmul(r)?.matmul(&mmi),
        Orientation::MinvRm => mmi.matmul(r)?.matmul(&mm),
    }
}

/// Diagonal of a triangular matrix, i.e. its eigenvalues with multiplicity.
pub fn spectrum_diag(r: &MatRF) -> Result<Vec<RatFunc>> {
    if r.is_upper_triangular() || r.is_lower_triangular() {
        Ok(r.diagonal())
    } else {
        Err(Error::NotTriangular)
    }
}

/// Reduced row echelon form of a dense row list; pivots are normalized to 1
/// and zero rows dropped. Returns the rows and their pivot columns.
pub fn rref(mut rows: Vec<Vec<RatFunc>>) -> (Vec<Vec<RatFunc>>, Vec<usize>) {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        if !inv.is_one() {
            rows[r] = rows[r].iter().map(|e| e * &inv).collect();
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (e, pe) in row.iter_mut().zip(&pivot_row) {
                if !pe.is_zero() {
                    *e = &*e - &(&f * pe);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Basis of `{v : A v = 0}` for `A` given by rows of width `ncols`.
pub fn nullspace(rows: Vec<Vec<RatFunc>>, ncols: usize) -> Vec<Vec<RatFunc>> {
    let (red, pivots) = rref(rows);
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![RatFunc::zero(); ncols];
            v[free] = RatFunc::one();
            for (row, &pc) in red.iter().zip(&pivots) {
                v[pc] = -row[free].clone();
            }
            v
        })
        .collect()
}

/// Multiset equality of two lists of exact values.
pub fn same_multiset(a: &[RatFunc], b: &[RatFunc]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    a.iter().all(|x| {
        if let Some(k) = (0..b.len()).find(|&k| !used[k] && b[k] == *x) {
            used[k] = true;
            true
        } else {
            false
        }
    })
}

impl fmt::Display for MatRF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        let width = cells.iter().map(|c| c.chars().count()).max().unwrap_or(1);
        for i in 0..self.n {
            f.write_str("[ ")?;
            for j in 0..self.n {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{:>width$}", cells[i * self.n + j])?;
            }
            f.write_str(" ]")?;
            if i + 1 < self.n {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MatRF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatRF {}×{}\n{}", self.n, self.n, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::sym;

    fn params() -> Vec<Symbol> {
        ["q", "h", "x", "y", "eta", "zeta"].iter().map(|n| sym(n)).collect()
    }

    fn m(rows: &[&[&str]]) -> MatRF {
        MatRF::parse(rows, &params()).unwrap()
    }

    #[test]
    fn g_times_displayed_inverse_is_identity() {
        let g = m(&[&["1", "eta"], &["zeta", "1+eta*zeta"]]);
        let ginv = m(&[&["1+eta*zeta", "-eta"], &["-zeta", "1"]]);
        assert!(g.matmul(&ginv).unwrap().is_identity());
        assert_eq!(g.inverse().unwrap(), ginv);
    }

    #[test]
    fn inverse_of_upper_triangular_m() {
        let mm = m(&[&["x", "y"], &["0", "1"]]);
        let expect = m(&[&["1/x", "-y/x"], &["0", "1"]]);
        assert_eq!(mm.inverse().unwrap(), expect);
        assert!(MatRF::identity(3).inverse().unwrap().is_identity());
        let singular = m(&[&["q", "h"], &["2*q", "2*h"]]);
        assert_eq!(singular.inverse(), Err(Error::SingularMatrix));
        assert!(singular.det().is_zero());
    }

    #[test]
    fn flip_is_an_involution() {
        let p = MatRF::flip(2);
        assert!(p.matmul(&p).unwrap().is_identity());
        assert!(MatRF::identity(4).r21().unwrap().is_identity());
    }

    #[test]
    fn kron_block_convention() {
        let g = m(&[&["1", "eta"], &["0", "1"]]);
        let gg = g.kron(&g);
        assert_eq!(gg.get(0, 3).to_string(), "eta^2");
        assert_eq!(gg.get(0, 1).to_string(), "eta");
        assert_eq!(gg.get(1, 3).to_string(), "eta");
        assert!(gg.get(1, 2).is_zero());
        assert!(MatRF::identity(2).kron(&MatRF::identity(2)).is_identity());
    }

    #[test]
    fn r21_matches_flip_conjugation() {
        let r = m(&[
            &["1", "h", "-q*h", "h^2"],
            &["0", "q", "1-q^2", "q*h"],
            &["0", "0", "q", "-h"],
            &["0", "0", "0", "1"],
        ]);
        let p = MatRF::flip(2);
        assert_eq!(r.r21().unwrap(), &(&p * &r) * &p);
        assert_eq!(r.r21().unwrap().r21().unwrap(), r);
        assert!(MatRF::identity(3).r21().is_err());
    }

    #[test]
    fn determinant_of_kron() {
        let a = m(&[&["q", "h"], &["x", "y"]]);
        let d = a.det();
        assert_eq!(a.kron(&a).det(), d.pow(4));
    }

    #[test]
    fn spectrum_of_triangular() {
        let rq = m(&[&["1", "0", "0", "0"], &["0", "q", "1-q^2", "0"], &["0", "0", "q", "0"], &["0", "0", "0", "1"]]);
        let s = spectrum_diag(&rq).unwrap();
        let expect: Vec<RatFunc> = ["1", "q", "q", "1"].iter().map(|e| parse_expr(e, &params()).unwrap()).collect();
        assert_eq!(s, expect);
        let full = m(&[&["1", "2"], &["3", "4"]]);
        assert_eq!(spectrum_diag(&full), Err(Error::NotTriangular));
    }

    #[test]
    fn nullspace_annihilates() {
        let a = vec![
            vec![parse_expr("q", &params()).unwrap(), RatFunc::one(), RatFunc::zero()],
            vec![RatFunc::int(2), RatFunc::zero(), parse_expr("h", &params()).unwrap()],
        ];
        let ns = nullspace(a.clone(), 3);
        assert_eq!(ns.len(), 1);
        for row in &a {
            let dot = row.iter().zip(&ns[0]).fold(RatFunc::zero(), |acc, (x, y)| &acc + &(x * y));
            assert!(dot.is_zero());
        }
        let (red, piv) = rref(vec![vec![RatFunc::int(2), RatFunc::int(4)], vec![RatFunc::int(1), RatFunc::int(2)]]);
        assert_eq!(piv, vec![0]);
        assert_eq!(red, vec![vec![RatFunc::one(), RatFunc::int(2)]]);
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let r = m(&[&["1/(1+2*eta*zeta)", "-eta"], &["q^2 - 4*h", "(q-1)/(q+1)"]]);
        let json = r.to_json();
        let text = serde_json::to_string(&json).unwrap();
        let back: MatrixJson = serde_json::from_str(&text).unwrap();
        let r2 = MatRF::from_json(&back).unwrap();
        assert_eq!(r2, r);
        assert_eq!(r2.to_json(), json);
    }
}
