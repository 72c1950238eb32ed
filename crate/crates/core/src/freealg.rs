//! Noncommutative polynomials in the entries `a, b, c, d` of `T = [[a,b],[c,d]]`.
//!
//! Relations are extracted from `R T1 T2 = T2 T1 R` and compared as linear
//! subspaces of the span of words (no Gröbner completion). Word order is
//! degree first, then lexicographic by a configurable generator order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::field::{parse_expr_any, RatFunc};
use crate::linalg::{nullspace, rref, MatRF};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    A,
    B,
    C,
    D,
}

impl Gen {
    pub const ALL: [Gen; 4] = [Gen::A, Gen::B, Gen::C, Gen::D];

    /// Entry `t_{ij}` of `T`.
    pub fn entry(i: usize, j: usize) -> Gen {
        Gen::ALL[2 * i + j]
    }

    pub fn name(self) -> char {
        match self {
            Gen::A => 'a',
            Gen::B => 'b',
            Gen::C => 'c',
            Gen::D => 'd',
        }
    }

    pub fn from_name(s: &str) -> Result<Gen> {
        match s {
            "a" => Ok(Gen::A),
            "b" => Ok(Gen::B),
            "c" => Ok(Gen::C),
            "d" => Ok(Gen::D),
            _ => Err(Error::UnknownGenerator(s.to_string())),
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(pub SmallVec<[Gen; 4]>);

impl Word {
    pub fn empty() -> Word {
        Word(SmallVec::new())
    }

    /// Builds a word from a letter string such as `"ba"`. Library use only;
    /// the JSON format takes explicit arrays.
    pub fn parse(s: &str) -> Result<Word> {
        s.chars().map(|c| Gen::from_name(&c.to_string())).collect::<Result<_>>().map(Word)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.0.clone();
        w.extend_from_slice(&other.0);
        Word(w)
    }

    /// Position of the leftmost occurrence of `sub`.
    pub fn find(&self, sub: &Word) -> Option<usize> {
        if sub.len() > self.len() {
            return None;
        }
        (0..=self.len() - sub.len()).find(|&i| self.0[i..i + sub.len()] == sub.0[..])
    }

    /// All words of length `deg`, in the natural `a<b<c<d` lexicographic order.
    pub fn all(deg: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..deg {
            out = out
                .into_iter()
                .flat_map(|w| Gen::ALL.map(|g| w.concat(&Word(SmallVec::from_slice(&[g])))))
                .collect();
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for g in &self.0 {
            write!(f, "{}", g.name())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Strict total order on the generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenOrder {
    rank: [u8; 4],
}

impl Default for GenOrder {
    fn default() -> Self {
        "d>a>b>c".parse().expect("valid order")
    }
}

impl std::str::FromStr for GenOrder {
    type Err = Error;

    /// Parses `"d>a>b>c"` (largest first).
    fn from_str(s: &str) -> Result<GenOrder> {
        let gens: Vec<Gen> = s.split('>').map(|t| Gen::from_name(t.trim())).collect::<Result<_>>()?;
        if gens.len() != 4 {
            return Err(Error::InvalidOrder(s.to_string()));
        }
        let mut rank = [u8::MAX; 4];
        for (k, g) in gens.iter().enumerate() {
            if rank[*g as usize] != u8::MAX {
                return Err(Error::InvalidOrder(s.to_string()));
            }
            rank[*g as usize] = (3 - k) as u8;
        }
        Ok(GenOrder { rank })
    }
}

impl fmt::Display for GenOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut gens = Gen::ALL;
        gens.sort_by_key(|g| std::cmp::Reverse(self.rank[*g as usize]));
        let names: Vec<String> = gens.iter().map(|g| g.name().to_string()).collect();
        f.write_str(&names.join(">"))
    }
}

impl GenOrder {
    /// All 24 generator orders.
    pub fn all() -> Vec<GenOrder> {
        let mut out = Vec::new();
        for p in permutations(&Gen::ALL) {
            let mut rank = [0u8; 4];
            for (k, g) in p.iter().enumerate() {
                rank[*g as usize] = (3 - k) as u8;
            }
            out.push(GenOrder { rank });
        }
        out
    }

    pub fn cmp_gen(&self, a: Gen, b: Gen) -> Ordering {
        self.rank[a as usize].cmp(&self.rank[b as usize])
    }

    /// Degree first, then lexicographic from the left.
    pub fn cmp_words(&self, a: &Word, b: &Word) -> Ordering {
        a.len().cmp(&b.len()).then_with(|| {
            for (x, y) in a.0.iter().zip(&b.0) {
                match self.cmp_gen(*x, *y) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

fn permutations(items: &[Gen]) -> Vec<Vec<Gen>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Finite linear combination of words with rational-function coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct NCPoly {
    terms: BTreeMap<Word, RatFunc>,
}

impl NCPoly {
    pub fn zero() -> NCPoly {
        NCPoly::default()
    }

    pub fn word(w: Word) -> NCPoly {
        NCPoly::term(RatFunc::one(), w)
    }

    pub fn term(c: RatFunc, w: Word) -> NCPoly {
        let mut p = NCPoly::zero();
        p.add_term(c, w);
        p
    }

    /// `Σ coeff·word` from `(coefficient expression, letters)` pairs.
    pub fn from_pairs(pairs: &[(&str, &str)]) -> Result<NCPoly> {
        let mut p = NCPoly::zero();
        for (c, w) in pairs {
            p.add_term(parse_expr_any(c)?, Word::parse(w)?);
        }
        Ok(p)
    }

    pub fn add_term(&mut self, c: RatFunc, w: Word) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &RatFunc)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> RatFunc {
        self.terms.get(w).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn add(&self, other: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(c.clone(), w.clone());
        }
        out
    }

    pub fn sub(&self, other: &NCPoly) -> NCPoly {
        self.add(&other.scale(&-RatFunc::one()))
    }

    pub fn scale(&self, c: &RatFunc) -> NCPoly {
        if c.is_zero() {
            return NCPoly::zero();
        }
        NCPoly { terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect() }
    }

    pub fn mul(&self, other: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(c1 * c2, w1.concat(w2));
            }
        }
        out
    }

    pub fn substitute(&self, bindings: &BTreeMap<crate::field::Symbol, RatFunc>) -> Result<NCPoly> {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(c.substitute(bindings)?, w.clone());
        }
        Ok(out)
    }

    /// Largest word under `order` with its coefficient.
    pub fn leading(&self, order: &GenOrder) -> Option<(&Word, &RatFunc)> {
        self.terms.iter().max_by(|x, y| order.cmp_words(x.0, y.0))
    }

    pub fn to_json(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(w, c)| TermJson { coeff: c.to_string(), word: w.0.iter().map(|g| g.name().to_string()).collect() })
            .collect()
    }

    pub fn from_json(terms: &[TermJson]) -> Result<NCPoly> {
        let mut p = NCPoly::zero();
        for t in terms {
            let w = t.word.iter().map(|s| Gen::from_name(s)).collect::<Result<_>>().map(Word)?;
            p.add_term(parse_expr_any(&t.coeff)?, w);
        }
        Ok(p)
    }
}

/// One term of the relation JSON format: `{"coeff": expr, "word": ["q", ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub word: Vec<String>,
}

pub fn relations_to_json(rels: &[NCPoly]) -> Vec<Vec<TermJson>> {
    rels.iter().map(NCPoly::to_json).collect()
}

pub fn relations_from_json(json: &[Vec<TermJson>]) -> Result<Vec<NCPoly>> {
    json.iter().map(|r| NCPoly::from_json(r)).collect()
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let s = c.to_string();
            let simple = c.is_polynomial() && c.num().len() == 1;
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) if simple => (true, rest.to_string()),
                _ => (false, s),
            };
            if k > 0 {
                f.write_str(if neg { " - " } else { " + " })?;
            } else if neg {
                f.write_str("-")?;
            }
            match (body.as_str(), w.is_empty()) {
                ("1", false) => write!(f, "{w}")?,
                (_, true) => write!(f, "{body}")?,
                _ if simple => write!(f, "{body}*{w}")?,
                _ => write!(f, "({body})*{w}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The 16 unreduced entries of `R T1 T2 − T2 T1 R`, row-major in `(ij, kl)`.
pub fn rtt_entries(r: &MatRF) -> Result<Vec<NCPoly>> {
    if r.dim() != 4 {
        return Err(Error::DimensionMismatch(format!("expected 4×4 R, got {0}×{0}", r.dim())));
    }
    let t = |i: usize, j: usize| Gen::entry(i, j);
    let mut out = Vec::with_capacity(16);
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    let mut p = NCPoly::zero();
                    for m in 0..2 {
                        for n in 0..2 {
                            // (T1 T2)[(mn),(kl)] = t_{mk} t_{nl}
                            let c = r.get(2 * i + j, 2 * m + n);
                            p.add_term(c.clone(), Word(SmallVec::from_slice(&[t(m, k), t(n, l)])));
                            // (T2 T1)[(ij),(mn)] = t_{jn} t_{im}
                            let c = r.get(2 * m + n, 2 * k + l);
                            p.add_term(-c.clone(), Word(SmallVec::from_slice(&[t(j, n), t(i, m)])));
                        }
                    }
                    out.push(p);
                }
            }
        }
    }
    Ok(out)
}

/// Canonical basis (reduced row echelon form, columns by decreasing word
/// order) of the span of `rels`.
pub fn canonical_basis(rels: &[NCPoly], order: &GenOrder) -> Vec<NCPoly> {
    let mut cols: Vec<Word> = rels.iter().flat_map(|p| p.terms.keys().cloned()).collect();
    cols.sort_by(|a, b| order.cmp_words(b, a));
    cols.dedup();
    if cols.is_empty() {
        return Vec::new();
    }
    let rows = rels.iter().map(|p| cols.iter().map(|w| p.coeff(w)).collect()).collect();
    let (red, _) = rref(rows);
    red.into_iter()
        .map(|row| {
            let mut p = NCPoly::zero();
            for (w, c) in cols.iter().zip(row) {
                p.add_term(c, w.clone());
            }
            p
        })
        .collect()
}

pub fn rtt_relations(r: &MatRF) -> Result<Vec<NCPoly>> {
    rtt_relations_with(r, &GenOrder::default())
}

pub fn rtt_relations_with(r: &MatRF, order: &GenOrder) -> Result<Vec<NCPoly>> {
    Ok(canonical_basis(&rtt_entries(r)?, order))
}

pub fn span_equal(a: &[NCPoly], b: &[NCPoly]) -> bool {
    let order = GenOrder::default();
    canonical_basis(a, &order) == canonical_basis(b, &order)
}

pub fn in_span(p: &NCPoly, rels: &[NCPoly]) -> bool {
    if p.is_zero() {
        return true;
    }
    let order = GenOrder::default();
    let base = canonical_basis(rels, &order);
    normal_form_linear(p, &base, &order).is_zero()
}

/// Remainder of `p` modulo the span of an RREF basis.
fn normal_form_linear(p: &NCPoly, basis: &[NCPoly], order: &GenOrder) -> NCPoly {
    let mut out = p.clone();
    for row in basis {
        let (lw, _) = row.leading(order).expect("nonzero basis row");
        let c = out.coeff(lw);
        if !c.is_zero() {
            out = out.sub(&row.scale(&c));
        }
    }
    out
}

/// `lhs → rhs` with every word of `rhs` smaller than `lhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: Word,
    pub rhs: NCPoly,
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} → {}", self.lhs, self.rhs)
    }
}

/// Orients each relation at its leading word. Relations are used as given;
/// pass a canonical basis to get an inter-reduced system.
pub fn orient(rels: &[NCPoly], order: &GenOrder) -> Result<Vec<RewriteRule>> {
    let mut rules: Vec<RewriteRule> = Vec::new();
    for p in rels {
        let Some((lw, lc)) = p.leading(order) else {
            continue;
        };
        if lc.is_zero() {
            return Err(Error::ZeroLeadingCoefficient);
        }
        if rules.iter().any(|r| r.lhs == *lw) {
            return Err(Error::DuplicateRuleHead(lw.to_string()));
        }
        let inv = -lc.inv()?;
        let mut rhs = p.scale(&inv);
        rhs.terms.remove(lw);
        rules.push(RewriteRule { lhs: lw.clone(), rhs });
    }
    Ok(rules)
}

/// Rewrites until no left-hand side occurs. Each step replaces the leftmost
/// occurrence in the largest reducible word.
pub fn reduce(p: &NCPoly, rules: &[RewriteRule], order: &GenOrder, max_steps: usize) -> Result<NCPoly> {
    let mut cur = p.clone();
    for _ in 0..max_steps {
        let mut target: Option<(Word, usize, usize)> = None;
        for w in cur.terms.keys() {
            let hit = rules
                .iter()
                .enumerate()
                .filter_map(|(k, r)| w.find(&r.lhs).map(|pos| (pos, k)))
                .min();
            if let Some((pos, k)) = hit {
                let better = match &target {
                    None => true,
                    Some((tw, _, _)) => order.cmp_words(w, tw) == Ordering::Greater,
                };
                if better {
                    target = Some((w.clone(), pos, k));
                }
            }
        }
        let Some((w, pos, k)) = target else {
            return Ok(cur);
        };
        let c = cur.terms.remove(&w).expect("present");
        let rule = &rules[k];
        let prefix = Word(SmallVec::from_slice(&w.0[..pos]));
        let suffix = Word(SmallVec::from_slice(&w.0[pos + rule.lhs.len()..]));
        let repl = NCPoly::word(prefix).mul(&rule.rhs).mul(&NCPoly::word(suffix)).scale(&c);
        cur = cur.add(&repl);
    }
    Err(Error::BudgetExhausted(max_steps))
}

/// Words of length `deg` containing no rule head, sorted increasingly.
pub fn normal_words(rules: &[RewriteRule], deg: usize, order: &GenOrder) -> Vec<Word> {
    let mut out: Vec<Word> =
        Word::all(deg).into_iter().filter(|w| rules.iter().all(|r| w.find(&r.lhs).is_none())).collect();
    out.sort_by(|a, b| order.cmp_words(a, b));
    out
}

/// Canonical basis of the degree-`deg` component of the two-sided ideal
/// generated by homogeneous quadratic `rels`: the span of `u·r·v` with
/// `|u| + |v| = deg − 2`.
pub fn ideal_component(rels: &[NCPoly], deg: usize, order: &GenOrder) -> Vec<NCPoly> {
    if deg < 2 {
        return Vec::new();
    }
    let mut gens = Vec::new();
    for left in 0..=deg - 2 {
        for u in Word::all(left) {
            for v in Word::all(deg - 2 - left) {
                for r in rels {
                    gens.push(NCPoly::word(u.clone()).mul(r).mul(&NCPoly::word(v.clone())));
                }
            }
        }
    }
    canonical_basis(&gens, order)
}

/// Dimension of the degree-`deg` component of the quotient algebra.
pub fn quotient_dim(rels: &[NCPoly], deg: usize) -> usize {
    let order = GenOrder::default();
    4usize.pow(deg as u32) - ideal_component(rels, deg, &order).len()
}

/// Whether `words` (all of length `deg`) span the degree-`deg` component
/// of the quotient by the ideal generated by `rels`.
pub fn spans_quotient(rels: &[NCPoly], words: &[Word], deg: usize) -> bool {
    let order = GenOrder::default();
    let mut gens = ideal_component(rels, deg, &order);
    gens.extend(words.iter().cloned().map(NCPoly::word));
    canonical_basis(&gens, &order).len() == 4usize.pow(deg as u32)
}

/// Matrices `R` for which every entry of `R T1 T2 − T2 T1 R` lies in the
/// span of `rels`; returned as a basis of the solution space.
pub fn rtt_solutions(rels: &[NCPoly]) -> Result<Vec<MatRF>> {
    let order = GenOrder::default();
    let base = canonical_basis(rels, &order);
    // Column k of the system is the reduced RTT image of the unit matrix E_k.
    let mut images: Vec<Vec<NCPoly>> = Vec::with_capacity(16);
    for k in 0..16 {
        let mut e = MatRF::zeros(4);
        e.set(k / 4, k % 4, RatFunc::one());
        images.push(rtt_entries(&e)?.iter().map(|p| normal_form_linear(p, &base, &order)).collect());
    }
    let mut rows = Vec::new();
    for entry in 0..16 {
        let mut words: Vec<&Word> = images.iter().flat_map(|img| img[entry].terms.keys()).collect();
        words.sort();
        words.dedup();
        for w in words {
            rows.push(images.iter().map(|img| img[entry].coeff(w)).collect());
        }
    }
    let basis = if rows.is_empty() {
        (0..16).map(|k| (0..16).map(|j| RatFunc::int((j == k) as i64)).collect()).collect()
    } else {
        nullspace(rows, 16)
    };
    Ok(basis.into_iter().map(|v| MatRF::from_fn(4, |i, j| v[4 * i + j].clone())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(pairs: &[(&str, &str)]) -> NCPoly {
        NCPoly::from_pairs(pairs).unwrap()
    }

    #[test]
    fn order_parsing_and_comparison() {
        let o = GenOrder::default();
        assert_eq!(o.to_string(), "d>a>b>c");
        assert_eq!(o.cmp_words(&Word::parse("da").unwrap(), &Word::parse("ad").unwrap()), Ordering::Greater);
        assert_eq!(o.cmp_words(&Word::parse("c").unwrap(), &Word::parse("aa").unwrap()), Ordering::Less);
        assert!("d>a>b".parse::<GenOrder>().is_err());
        assert!("d>a>a>c".parse::<GenOrder>().is_err());
        assert_eq!(GenOrder::all().len(), 24);
    }

    #[test]
    fn identity_gives_commutators() {
        let rels = rtt_relations(&MatRF::identity(4)).unwrap();
        assert_eq!(rels.len(), 6);
        assert!(in_span(&rel(&[("1", "ab"), ("-1", "ba")]), &rels));
        assert!(in_span(&rel(&[("1", "cd"), ("-1", "dc")]), &rels));
        assert!(!in_span(&rel(&[("1", "ab")]), &rels));
    }

    #[test]
    fn flip_gives_no_relations() {
        assert!(rtt_relations(&MatRF::flip(2)).unwrap().is_empty());
    }

    #[test]
    fn span_equality_is_basis_independent() {
        let r1 = rel(&[("1", "ab"), ("-q", "ba")]);
        let r2 = rel(&[("1", "cd"), ("1", "dc")]);
        let a = vec![r1.clone(), r2.clone()];
        let b = vec![r1.add(&r2), r2.scale(&parse_expr_any("h+1").unwrap())];
        assert!(span_equal(&a, &b));
        assert!(!span_equal(&a, &[r1]));
    }

    #[test]
    fn rewriting_terminates_and_reports_budget() {
        let order = GenOrder::default();
        let rules = orient(&[rel(&[("1", "ab"), ("-q", "ba")])], &order).unwrap();
        assert_eq!(rules[0].lhs, Word::parse("ab").unwrap());
        let p = rel(&[("1", "aab")]);
        let out = reduce(&p, &rules, &order, 10).unwrap();
        assert_eq!(out, rel(&[("q^2", "baa")]));
        assert_eq!(reduce(&p, &rules, &order, 1), Err(Error::BudgetExhausted(1)));
        let ba = rel(&[("1", "ba")]);
        assert_eq!(reduce(&ba, &rules, &order, 5).unwrap(), ba);
    }

    #[test]
    fn normal_words_without_rules() {
        let ws = normal_words(&[], 1, &GenOrder::default());
        let names: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
        assert_eq!(names, ["c", "b", "a", "d"]);
    }

    #[test]
    fn json_round_trip() {
        let p = rel(&[("q", "ba"), ("-1", "ab"), ("-h", "aa")]);
        let json = serde_json::to_string(&p.to_json()).unwrap();
        let back: Vec<TermJson> = serde_json::from_str(&json).unwrap();
        assert_eq!(NCPoly::from_json(&back).unwrap(), p);
        let bad: Vec<TermJson> = serde_json::from_str(r#"[{"coeff":"q","word":["ba"]}]"#).unwrap();
        assert!(NCPoly::from_json(&bad).is_err());
    }

    #[test]
    fn identity_solution_space() {
        let comm = rtt_relations(&MatRF::identity(4)).unwrap();
        let sols = rtt_solutions(&comm).unwrap();
        assert!(!sols.is_empty());
        for s in &sols {
            for e in rtt_entries(s).unwrap() {
                assert!(in_span(&e, &comm));
            }
        }
    }
}
