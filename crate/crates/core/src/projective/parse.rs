//! Recursive-descent parser for integer polynomials in x0…xN.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := power ('*' power)*
//! power  := atom ('^' integer)?
//! atom   := integer | 'x' index | '(' expr ')'
//! ```

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub(crate) type Terms = BTreeMap<Vec<u32>, BigInt>;

pub(crate) fn add_into(acc: &mut Terms, exps: Vec<u32>, coef: BigInt) {
    if coef.is_zero() {
        return;
    }
    let entry = acc.entry(exps);
    match entry {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(coef);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += coef;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

pub(crate) fn mul_terms(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            add_into(&mut out, e, ca * cb);
        }
    }
    out
}

fn constant(num_vars: usize, c: BigInt) -> Terms {
    let mut t = Terms::new();
    add_into(&mut t, vec![0; num_vars], c);
    t
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    num_vars: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(&self.src[start..self.pos])
    }

    fn expr(&mut self) -> Result<Terms> {
        let mut acc = Terms::new();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            for (e, c) in t {
                add_into(&mut acc, e, if sign < 0 { -c } else { c });
            }
            sign = match self.peek() {
                Some(b'+') => 1,
                Some(b'-') => -1,
                _ => return Ok(acc),
            };
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Terms> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let rhs = self.power()?;
            acc = mul_terms(&acc, &rhs);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Terms> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let k: u32 = self
                .digits()?
                .parse()
                .map_err(|_| self.err("exponent too large"))?;
            let mut acc = constant(self.num_vars, BigInt::one());
            for _ in 0..k {
                acc = mul_terms(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Terms> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'x') | Some(b'X') => {
                self.pos += 1;
                let idx: usize = self
                    .digits()?
                    .parse()
                    .map_err(|_| self.err("bad variable index"))?;
                if idx >= self.num_vars {
                    return Err(self.err(&format!(
                        "variable x{idx} out of range for {} variables",
                        self.num_vars
                    )));
                }
                let mut e = vec![0; self.num_vars];
                e[idx] = 1;
                let mut t = Terms::new();
                t.insert(e, BigInt::one());
                Ok(t)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits()?;
                let v: BigInt = d.parse().expect("digits");
                Ok(constant(self.num_vars, v))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses `text` as a polynomial in `num_vars` variables.
pub(crate) fn parse_polynomial(text: &str, num_vars: usize) -> Result<Terms> {
    let mut p = Parser {
        src: text,
        bytes: text.as_bytes(),
        pos: 0,
        num_vars,
    };
    let t = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(t)
}
