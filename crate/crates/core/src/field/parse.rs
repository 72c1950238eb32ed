//! Pratt parser for rational expressions over declared symbols.
//!
//! Grammar: integers, identifiers `[A-Za-z][A-Za-z0-9_]*`, binary `+ - * /`,
//! unary `-`, `^` with a nonnegative integer literal exponent, parentheses.
//! `^` binds tighter than unary minus, so `-q^2` is `-(q^2)`.

use std::collections::HashMap;

use num_bigint::BigInt;

use super::poly::Polynomial;
use super::ratfunc::RatFunc;
use super::symbol::Symbol;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
    LParen,
    RParen,
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push((Tok::Int(n), start));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_string()), start));
        } else if "+-*/^".contains(c) {
            out.push((Tok::Op(c), i));
            i += 1;
        } else if c == '(' {
            out.push((Tok::LParen, i));
            i += 1;
        } else if c == ')' {
            out.push((Tok::RParen, i));
            i += 1;
        } else {
            return Err(Error::Syntax { pos: i, msg: format!("unexpected character `{c}`") });
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

/// How identifiers are resolved to symbols.
enum Scope<'a> {
    Declared(HashMap<&'a str, Symbol>),
    Any,
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    scope: Scope<'a>,
}

const PREC_ADD: u8 = 1;
const PREC_MUL: u8 = 2;
const PREC_NEG: u8 = 3;
const PREC_POW: u8 = 4;

impl<'a> Parser<'a> {
    fn peek(&self) -> &(Tok, usize) {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self, min_prec: u8) -> Result<RatFunc> {
        let mut lhs = self.prefix()?;
        loop {
            let (tok, at) = self.peek().clone();
            let (op, prec) = match tok {
                Tok::Op(c @ ('+' | '-')) => (c, PREC_ADD),
                Tok::Op(c @ ('*' | '/')) => (c, PREC_MUL),
                Tok::Op('^') => ('^', PREC_POW),
                _ => break,
            };
            if prec < min_prec {
                break;
            }
            self.next();
            if op == '^' {
                let e = self.exponent()?;
                lhs = lhs.pow(e);
                continue;
            }
            let rhs = self.expr(prec + 1)?;
            lhs = match op {
                '+' => lhs + rhs,
                '-' => lhs - rhs,
                '*' => lhs * rhs,
                '/' => lhs.checked_div(&rhs).map_err(|_| Error::Syntax {
                    pos: at,
                    msg: "division by an identically zero expression".into(),
                })?,
                _ => unreachable!(),
            };
        }
        Ok(lhs)
    }

    fn prefix(&mut self) -> Result<RatFunc> {
        let (tok, at) = self.next();
        match tok {
            Tok::Int(n) => Ok(RatFunc::from_poly(Polynomial::constant(n))),
            Tok::Ident(name) => self.resolve(&name, at).map(RatFunc::var),
            Tok::Op('-') => Ok(-self.expr(PREC_NEG)?),
            Tok::LParen => {
                let inner = self.expr(0)?;
                match self.next() {
                    (Tok::RParen, _) => Ok(inner),
                    (_, p) => Err(Error::Syntax { pos: p, msg: "expected `)`".into() }),
                }
            }
            Tok::End => Err(Error::Syntax { pos: at, msg: "unexpected end of input".into() }),
            other => Err(Error::Syntax { pos: at, msg: format!("unexpected token {other:?}") }),
        }
    }

    fn exponent(&mut self) -> Result<u32> {
        let (tok, at) = self.next();
        let n = match tok {
            Tok::Int(n) => n,
            Tok::LParen => {
                let (inner, p) = self.next();
                let n = match inner {
                    Tok::Int(n) => n,
                    Tok::Op('-') => {
                        return Err(Error::Syntax { pos: p, msg: "negative exponents are not allowed".into() })
                    }
                    _ => return Err(Error::Syntax { pos: p, msg: "exponent must be an integer literal".into() }),
                };
                match self.next() {
                    (Tok::RParen, _) => n,
                    (_, p) => return Err(Error::Syntax { pos: p, msg: "expected `)`".into() }),
                }
            }
            Tok::Op('-') => {
                return Err(Error::Syntax { pos: at, msg: "negative exponents are not allowed".into() })
            }
            _ => return Err(Error::Syntax { pos: at, msg: "exponent must be an integer literal".into() }),
        };
        u32::try_from(n).map_err(|_| Error::Syntax { pos: at, msg: "exponent out of range".into() })
    }

    fn resolve(&self, name: &str, at: usize) -> Result<Symbol> {
        match &self.scope {
            Scope::Declared(map) => map
                .get(name)
                .copied()
                .ok_or_else(|| Error::UndeclaredSymbol { name: name.to_string(), pos: at }),
            Scope::Any => Symbol::new(name),
        }
    }
}

fn run(text: &str, scope: Scope<'_>) -> Result<RatFunc> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, scope };
    let value = p.expr(0)?;
    match p.peek() {
        (Tok::End, _) => Ok(value),
        (_, at) => Err(Error::Syntax { pos: *at, msg: "trailing input".into() }),
    }
}

/// Parses `text` allowing only the symbols in `params`.
pub fn parse_expr(text: &str, params: &[Symbol]) -> Result<RatFunc> {
    let map = params.iter().map(|s| (s.name(), *s)).collect();
    run(text, Scope::Declared(map))
}

/// Parses `text`, interning every identifier it meets.
pub fn parse_expr_any(text: &str) -> Result<RatFunc> {
    run(text, Scope::Any)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::symbol::sym;

    fn ps(names: &[&str]) -> Vec<Symbol> {
        names.iter().map(|n| sym(n)).collect()
    }

    #[test]
    fn precedence_and_associativity() {
        let p = ps(&["q", "h"]);
        assert_eq!(parse_expr("-q^2", &p).unwrap(), -(RatFunc::var(sym("q")).pow(2)));
        assert_eq!(parse_expr("2-1-1", &p).unwrap(), RatFunc::zero());
        assert_eq!(parse_expr("8/2/2", &p).unwrap(), RatFunc::int(2));
        assert_eq!(parse_expr("2*q^2^1", &p).unwrap(), parse_expr("2*(q^2)", &p).unwrap());
        assert_eq!(parse_expr("(q)^(3)", &p).unwrap(), RatFunc::var(sym("q")).pow(3));
    }

    #[test]
    fn errors_carry_positions() {
        let p = ps(&["q"]);
        match parse_expr("q + h", &p) {
            Err(Error::UndeclaredSymbol { name, pos }) => {
                assert_eq!(name, "h");
                assert_eq!(pos, 4);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_expr("q +", &p), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_expr("q^-1", &p), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_expr("q^q", &p), Err(Error::Syntax { .. })));
        assert!(matches!(parse_expr("1/(q-q)", &p), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(parse_expr("q)", &p), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(parse_expr("q $ 1", &p), Err(Error::Syntax { pos: 2, .. })));
    }
}
