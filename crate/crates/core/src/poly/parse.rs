//! Polynomial text grammar:
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | atom ['^' integer]
//! atom   := integer ['/' integer] | variable | '(' expr ')'
//! ```
//!
//! Variables are `t` (one variable) or `t1 .. tn`. Whitespace is ignored.

use num_bigint::BigInt;

use crate::error::{parse_error, Error, Result};
use crate::field::FieldSpec;
use crate::poly::{Monomial, MultiPoly, UniPoly};

pub fn parse_multi(text: &str, field: FieldSpec, nvars: usize) -> Result<MultiPoly> {
    parse_multi_at(text, field, nvars, 1, 1)
}

pub fn parse_uni(text: &str, field: FieldSpec) -> Result<UniPoly> {
    parse_multi(text, field, 1)?.to_uni()
}

/// Like [`parse_multi`], reporting positions relative to `line` and a
/// starting `column` in some larger document.
pub(crate) fn parse_multi_at(
    text: &str,
    field: FieldSpec,
    nvars: usize,
    line: usize,
    column: usize,
) -> Result<MultiPoly> {
    let mut parser = Parser { chars: text.chars().collect(), pos: 0, field, nvars, line, column };
    let p = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.chars.len() {
        return Err(parser.error(format!("unexpected `{}`", parser.chars[parser.pos])));
    }
    Ok(p)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    field: FieldSpec,
    nvars: usize,
    line: usize,
    column: usize,
}

impl Parser {
    fn error(&self, msg: impl Into<String>) -> Error {
        parse_error(self.line, self.column + self.pos, msg)
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let negate = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly> {
        if self.eat('-') {
            return Ok(-&self.factor()?);
        }
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.error("expected an exponent"));
            }
            let exp: u32 = digits.parse().map_err(|_| {
                parse_error(self.line, self.column + start, "exponent out of range")
            })?;
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let num: BigInt = self.digits().parse().expect("digits");
                let den: BigInt = if self.eat('/') {
                    self.skip_ws();
                    let d = self.digits();
                    if d.is_empty() {
                        return Err(self.error("expected a denominator"));
                    }
                    d.parse().expect("digits")
                } else {
                    BigInt::from(1)
                };
                let c = self.field.from_ratio(&num, &den).map_err(|e| {
                    parse_error(self.line, self.column + start, format!("invalid scalar: {e}"))
                })?;
                Ok(MultiPoly::constant(c, self.nvars))
            }
            Some('t') => {
                let start = self.pos;
                self.pos += 1;
                let digits = self.digits();
                let index = if digits.is_empty() {
                    if self.nvars != 1 {
                        return Err(parse_error(
                            self.line,
                            self.column + start,
                            format!("bare `t` needs exactly one variable, have {}", self.nvars),
                        ));
                    }
                    0
                } else {
                    let i: usize = digits.parse().unwrap_or(0);
                    if i == 0 || i > self.nvars {
                        return Err(parse_error(
                            self.line,
                            self.column + start,
                            format!("unknown variable `t{digits}` (have {} variables)", self.nvars),
                        ));
                    }
                    i - 1
                };
                Ok(MultiPoly::term(self.field.one(), Monomial::var(self.nvars, index)))
            }
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
