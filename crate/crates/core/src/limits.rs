//! Rational parameter paths in a limit variable `t` and exact `t → 0` limits.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{parse_expr, parse_expr_any, sym, RatFunc, Symbol};
use crate::linalg::MatRF;

#[derive(Debug, Clone, PartialEq)]
pub struct LimitPath {
    pub var: Symbol,
    pub assignments: BTreeMap<Symbol, RatFunc>,
}

impl LimitPath {
    pub fn new(var: Symbol, assignments: BTreeMap<Symbol, RatFunc>) -> Result<LimitPath> {
        if assignments.contains_key(&var) {
            return Err(Error::LimitVariableInSource(var.name().to_string()));
        }
        Ok(LimitPath { var, assignments })
    }

    /// `q = 1 + λt`, `p = 1 + t/λ`, `η = η0/t`: the two-parameter contraction
    /// with `h = λη0`, `g = −η0/λ`.
    pub fn contraction() -> LimitPath {
        let p = |s: &str| parse_expr_any(s).expect("path expression");
        let assignments = [
            (sym("q"), p("1 + lambda4*t")),
            (sym("p"), p("1 + t/lambda4")),
            (sym("eta"), p("eta0/t")),
        ]
        .into_iter()
        .collect();
        LimitPath { var: sym("t"), assignments }
    }

    pub fn to_json(&self) -> PathJson {
        PathJson {
            var: self.var.name().to_string(),
            assignments: self.assignments.iter().map(|(k, v)| (k.name().to_string(), v.to_string())).collect(),
            params: None,
        }
    }

    /// Reads the path format. With `params` present, expressions may use
    /// only those symbols and `var`; otherwise any identifier is accepted.
    pub fn from_json(json: &PathJson) -> Result<LimitPath> {
        let var = Symbol::new(&json.var)?;
        let scope: Option<Vec<Symbol>> = json
            .params
            .as_ref()
            .map(|ps| {
                let mut v = ps.iter().map(|p| Symbol::new(p)).collect::<Result<Vec<_>>>()?;
                v.push(var);
                Ok::<_, Error>(v)
            })
            .transpose()?;
        let mut assignments = BTreeMap::new();
        for (k, e) in &json.assignments {
            let value = match &scope {
                Some(s) => parse_expr(e, s)?,
                None => parse_expr_any(e)?,
            };
            assignments.insert(Symbol::new(k)?, value);
        }
        LimitPath::new(var, assignments)
    }
}

/// Wire format `{"var": "t", "assignments": {"q": "1+lambda4*t", ...}, "params": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathJson {
    pub var: String,
    pub assignments: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<Vec<String>>,
}

pub fn substitute_path(m: &MatRF, path: &LimitPath) -> Result<MatRF> {
    let untouched = m.symbols().contains(&path.var) && !path.assignments.contains_key(&path.var);
    if untouched {
        return Err(Error::LimitVariableInSource(path.var.name().to_string()));
    }
    m.substitute(&path.assignments)
}

/// Entrywise value at `t = 0` after cancellation.
pub fn limit_t0(m: &MatRF, t: Symbol) -> Result<MatRF> {
    let zero: BTreeMap<Symbol, RatFunc> = [(t, RatFunc::zero())].into_iter().collect();
    let n = m.dim();
    let mut out = MatRF::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let e = m.get(i, j);
            let den = RatFunc::from_poly(e.den().clone()).substitute(&zero)?;
            if den.is_zero() {
                return Err(Error::PoleAtZero { row: i, col: j });
            }
            let num = RatFunc::from_poly(e.num().clone()).substitute(&zero)?;
            out.set(i, j, num.checked_div(&den)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::field::bindings;

    fn p(s: &str) -> RatFunc {
        parse_expr_any(s).unwrap()
    }

    #[test]
    fn contraction_gives_two_parameter_jordanian() {
        let conj = catalog::matrix("pq_Rpq_conj").unwrap();
        let path = LimitPath::contraction();
        let on_path = substitute_path(&conj, &path).unwrap();
        assert!(on_path.symbols().contains(&sym("t")));
        let lim = limit_t0(&on_path, sym("t")).unwrap();
        let rgh = catalog::matrix("jordanian_Rgh").unwrap();
        let hg = bindings([(sym("h"), p("lambda4*eta0")), (sym("g"), p("-eta0/lambda4"))]);
        assert_eq!(lim, rgh.substitute(&hg).unwrap());
    }

    #[test]
    fn constant_matrix_is_its_own_limit() {
        let i = MatRF::identity(4);
        assert_eq!(limit_t0(&substitute_path(&i, &LimitPath::contraction()).unwrap(), sym("t")).unwrap(), i);
    }

    #[test]
    fn pole_reports_entry() {
        let mut m = MatRF::identity(2);
        m.set(1, 0, p("1/t + 1"));
        assert_eq!(limit_t0(&m, sym("t")), Err(Error::PoleAtZero { row: 1, col: 0 }));
        let mut m = MatRF::identity(2);
        m.set(0, 1, p("(t^2 + t)/t"));
        assert_eq!(limit_t0(&m, sym("t")).unwrap().get(0, 1), &RatFunc::one());
    }

    #[test]
    fn path_json_round_trip() {
        let path = LimitPath::contraction();
        let text = serde_json::to_string(&path.to_json()).unwrap();
        let back: PathJson = serde_json::from_str(&text).unwrap();
        assert_eq!(LimitPath::from_json(&back).unwrap(), path);
        let scoped = PathJson {
            var: "t".into(),
            assignments: [("q".to_string(), "1 + mystery*t".to_string())].into_iter().collect(),
            params: Some(vec!["lambda4".into()]),
        };
        assert!(matches!(LimitPath::from_json(&scoped), Err(Error::UndeclaredSymbol { .. })));
    }

    #[test]
    fn source_may_not_mention_t() {
        let mut m = MatRF::identity(2);
        m.set(0, 1, p("t"));
        assert!(matches!(substitute_path(&m, &LimitPath::contraction()), Err(Error::LimitVariableInSource(_))));
    }
}
