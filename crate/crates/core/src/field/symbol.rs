//! Process-wide symbol registry.
//!
//! Symbols are interned once and never removed, so a `Symbol` is a plain
//! index plus a `'static` name. The registry is preseeded with the scalar
//! parameters used by the catalog so that canonical printing (which follows
//! symbol order) does not depend on which code path interned a name first.

use std::collections::HashMap;
use std::fmt;
use std::sync::{LazyLock, RwLock};

use crate::error::{Error, Result};

const PRESEEDED: &[&str] = &[
    "q", "h", "hp", "kappa", "eta", "zeta", "p", "g", "x", "y", "w", "t", "lambda4", "eta0",
    "x1", "x2", "x3", "lambda2", "s",
];

struct Registry {
    names: Vec<&'static str>,
    index: HashMap<&'static str, u32>,
}

static REGISTRY: LazyLock<RwLock<Registry>> = LazyLock::new(|| {
    let mut reg = Registry { names: Vec::new(), index: HashMap::new() };
    for name in PRESEEDED {
        reg.index.insert(name, reg.names.len() as u32);
        reg.names.push(name);
    }
    RwLock::new(reg)
});

/// A named scalar parameter with a fixed position in the global order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    index: u32,
    name: &'static str,
}

pub fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Symbol {
    /// Interns `name`, returning the existing symbol if already registered.
    pub fn new(name: &str) -> Result<Symbol> {
        if !is_valid_name(name) {
            return Err(Error::InvalidSymbolName(name.to_string()));
        }
        if let Some(s) = Symbol::lookup(name) {
            return Ok(s);
        }
        let mut reg = REGISTRY.write().expect("symbol registry poisoned");
        if let Some(&i) = reg.index.get(name) {
            return Ok(Symbol { index: i, name: reg.names[i as usize] });
        }
        let leaked: &'static str = Box::leak(name.to_string().into_boxed_str());
        let index = reg.names.len() as u32;
        reg.names.push(leaked);
        reg.index.insert(leaked, index);
        Ok(Symbol { index, name: leaked })
    }

    /// Returns the symbol only if it has already been interned.
    pub fn lookup(name: &str) -> Option<Symbol> {
        let reg = REGISTRY.read().expect("symbol registry poisoned");
        reg.index.get(name).map(|&i| Symbol { index: i, name: reg.names[i as usize] })
    }

    pub(crate) fn from_index(index: usize) -> Symbol {
        let reg = REGISTRY.read().expect("symbol registry poisoned");
        Symbol { index: index as u32, name: reg.names[index] }
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn index(&self) -> usize {
        self.index as usize
    }
}

/// Interns a name known to be valid; panics otherwise.
pub fn sym(name: &str) -> Symbol {
    Symbol::new(name).unwrap_or_else(|e| panic!("{e}"))
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name)
    }
}
