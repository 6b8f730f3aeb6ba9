//! Recursive-descent parser for the text form of rational functions.
//!
//! Grammar: sums and differences of products and quotients of powers, with
//! integer literals, registered variable names, parentheses and integer
//! exponents (`x^3`, `x^-2`, `x^(-2)`).

use super::ratfunc::RatFunc;
use super::registry::VarRegistry;
use super::Rational;
use crate::error::{parse_err, Error, Result};
use num_bigint::BigInt;

const MAX_DEPTH: usize = 64;
const MAX_EXPONENT: i64 = 64;
const MAX_LITERAL_DIGITS: usize = 200;
const MAX_INPUT: usize = 1 << 16;
const MAX_DEGREE: i32 = 1024;

pub fn parse_ratfunc(text: &str) -> Result<RatFunc> {
    if text.len() > MAX_INPUT {
        return Err(parse_err(0, "input too long"));
    }
    let mut p = Parser { s: text.as_bytes(), pos: 0, depth: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(parse_err(p.pos, "unexpected trailing input"));
    }
    Ok(v)
}

fn bounded(v: RatFunc, at: usize) -> Result<RatFunc> {
    if v.total_degree() > MAX_DEGREE {
        return Err(parse_err(at, "degree bound exceeded"));
    }
    Ok(v)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    depth: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RatFunc> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(parse_err(self.pos, "nesting too deep"));
        }
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    let at = self.pos;
                    acc = bounded(acc.mul(&self.unary()?), at)?;
                }
                b'/' => {
                    let at = self.pos;
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = bounded(acc.div(&d).map_err(|_| parse_err(at, "division by zero"))?, at)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFunc> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.depth_guard(|p| p.unary()).map(|v| v.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.depth_guard(|p| p.unary())
            }
            _ => self.power(),
        }
    }

    fn depth_guard(&mut self, f: impl FnOnce(&mut Self) -> Result<RatFunc>) -> Result<RatFunc> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(parse_err(self.pos, "nesting too deep"));
        }
        let r = f(self);
        self.depth -= 1;
        r
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.pos;
        let e = self.exponent()?;
        if base.total_degree() as i64 * e.abs() > MAX_DEGREE as i64 {
            return Err(parse_err(at, "degree bound exceeded"));
        }
        base.pow(e as i32).map_err(|_| parse_err(at, "negative power of zero"))
    }

    fn exponent(&mut self) -> Result<i64> {
        let paren = self.peek() == Some(b'(');
        if paren {
            self.pos += 1;
        }
        let mut neg = false;
        match self.peek() {
            Some(b'-') => {
                neg = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(parse_err(self.pos, "expected integer exponent"));
        }
        let digits = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        let e: i64 = digits
            .parse()
            .ok()
            .filter(|e| *e <= MAX_EXPONENT)
            .ok_or_else(|| parse_err(start, format!("exponent exceeds {MAX_EXPONENT}")))?;
        if paren {
            if self.peek() != Some(b')') {
                return Err(parse_err(self.pos, "expected `)`"));
            }
            self.pos += 1;
        }
        Ok(if neg { -e } else { e })
    }

    fn atom(&mut self) -> Result<RatFunc> {
        let at = match self.peek() {
            None => return Err(parse_err(self.pos, "unexpected end of input")),
            Some(c) => c,
        };
        if at == b'(' {
            self.pos += 1;
            let v = self.expr()?;
            if self.peek() != Some(b')') {
                return Err(parse_err(self.pos, "expected `)`"));
            }
            self.pos += 1;
            return Ok(v);
        }
        if at.is_ascii_digit() {
            let start = self.pos;
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if self.pos - start > MAX_LITERAL_DIGITS {
                return Err(parse_err(start, "integer literal too long"));
            }
            let digits = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
            let n: BigInt = digits.parse().map_err(|_| parse_err(start, "bad integer literal"))?;
            return Ok(RatFunc::from_rational(Rational::from_integer(n)));
        }
        if at.is_ascii_alphabetic() || at == b'_' {
            let start = self.pos;
            while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
                self.pos += 1;
            }
            let name = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii identifier");
            if name == "q" {
                return Ok(RatFunc::var(super::registry::V).pow(2).expect("nonzero"));
            }
            return VarRegistry::standard()
                .index(name)
                .map(RatFunc::var)
                .ok_or_else(|| Error::UnknownVariable(name.to_string()));
        }
        Err(parse_err(self.pos, format!("unexpected character `{}`", at as char)))
    }
}
