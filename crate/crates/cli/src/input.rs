//! Resolution of command-line operands: catalog names, JSON files and
//! inline JSON.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use rtt_verify::catalog::{self, RELATION_NAMES};
use rtt_verify::field::parse_expr_any;
use rtt_verify::freealg::{relations_from_json, rtt_relations, TermJson};
use rtt_verify::limits::PathJson;
use rtt_verify::{LimitPath, MatRF, MatrixJson, NCPoly, RatFunc, Symbol};

pub type Bindings = BTreeMap<Symbol, RatFunc>;

/// Parses `k=v` items; values are arbitrary expressions.
pub fn parse_params(items: &[String]) -> Result<Bindings> {
    let mut out = Bindings::new();
    for item in items.iter().filter(|s| !s.trim().is_empty()) {
        let (k, v) = item.split_once('=').with_context(|| format!("parameter `{item}` is not of the form k=v"))?;
        let s = Symbol::new(k.trim())?;
        let value = parse_expr_any(v.trim()).with_context(|| format!("parameter `{k}`"))?;
        out.insert(s, value);
    }
    Ok(out)
}

fn read_text(arg: &str) -> Result<String> {
    let t = arg.trim_start();
    if t.starts_with('[') || t.starts_with('{') {
        return Ok(arg.to_string());
    }
    fs::read_to_string(Path::new(arg)).with_context(|| format!("cannot read `{arg}`"))
}

/// A catalog entry (specialized by `params`, constraints enforced) or a
/// matrix JSON file, inline JSON included.
pub fn load_matrix(arg: &str, params: &Bindings) -> Result<MatRF> {
    if catalog::names().contains(&arg) {
        return Ok(catalog::get(arg, Some(params))?.matrix);
    }
    let text = read_text(arg)?;
    let json: MatrixJson = serde_json::from_str(&text).with_context(|| format!("`{arg}` is not a matrix JSON"))?;
    Ok(MatRF::from_json(&json)?.substitute(params)?)
}

/// A named relation list, `rtt:<catalog entry>`, or a JSON list of term lists.
pub fn load_relations(arg: &str, params: &Bindings) -> Result<Vec<NCPoly>> {
    let rels = if RELATION_NAMES.contains(&arg) {
        catalog::relations(arg)?
    } else if let Some(name) = arg.strip_prefix("rtt:") {
        rtt_relations(&load_matrix(name, &Bindings::new())?)?
    } else {
        let json: Vec<Vec<TermJson>> =
            serde_json::from_str(&read_text(arg)?).with_context(|| format!("`{arg}` is not a relation list"))?;
        relations_from_json(&json)?
    };
    Ok(rels.iter().map(|r| r.substitute(params)).collect::<rtt_verify::Result<_>>()?)
}

/// A single term list, inline or from a file.
pub fn load_poly(arg: &str) -> Result<NCPoly> {
    let json: Vec<TermJson> =
        serde_json::from_str(&read_text(arg)?).with_context(|| format!("`{arg}` is not a term list"))?;
    Ok(NCPoly::from_json(&json)?)
}

/// `contraction` or a path JSON file.
pub fn load_path(arg: &str) -> Result<LimitPath> {
    if arg == "contraction" {
        return Ok(LimitPath::contraction());
    }
    let json: PathJson = serde_json::from_str(&read_text(arg)?).with_context(|| format!("`{arg}` is not a path JSON"))?;
    Ok(LimitPath::from_json(&json)?)
}

/// `"1/2"`, `"3/2"`, `"1"` → `2j`.
pub fn parse_spin(s: &str) -> Result<u32> {
    match rtt_verify::repcheck::parse_spin(s) {
        Ok(v) => Ok(v),
        Err(e) => bail!("invalid spin `{s}`: {e}"),
    }
}
