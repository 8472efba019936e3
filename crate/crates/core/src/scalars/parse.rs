//! Recursive-descent parser for scalar text.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := rational | 't' ['^' uint] | 'q' ['^' int] | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_traits::One;

use super::{Coeff, QLaurent, Rational, TPoly};
use crate::error::{Error, Result};

pub(crate) fn parse_scalar(text: &str) -> Result<QLaurent> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(Error::Parse("empty scalar".into()));
    }
    let mut p = Parser {
        chars: &chars,
        pos: 0,
        src: text,
    };
    let v = p.expr()?;
    if p.pos != chars.len() {
        return Err(p.error("trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    chars: &'a [char],
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in `{}`", self.pos, self.src))
    }

    fn peek(&self) -> Option<char> {
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

    fn expr(&mut self) -> Result<QLaurent> {
        let negate = self.eat('-');
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg_ref();
        }
        loop {
            if self.eat('+') {
                let t = self.term()?;
                acc.add_ref(&t);
            } else if self.eat('-') {
                let t = self.term()?;
                acc.add_ref(&t.neg_ref());
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<QLaurent> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            let f = self.factor()?;
            acc = acc.mul_ref(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<QLaurent> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(v)
            }
            Some('t') => {
                self.pos += 1;
                let e = if self.eat('^') { self.uint()? } else { 1 };
                Ok(QLaurent::t_pow(e))
            }
            Some('q') => {
                self.pos += 1;
                let e = if self.eat('^') {
                    let neg = self.eat('-');
                    let e = self.uint()? as i32;
                    if neg {
                        -e
                    } else {
                        e
                    }
                } else {
                    1
                };
                Ok(QLaurent::q_pow(e))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let d = if self.peek() == Some('/')
                    && self
                        .chars
                        .get(self.pos + 1)
                        .is_some_and(|c| c.is_ascii_digit())
                {
                    self.pos += 1;
                    self.integer()?
                } else {
                    BigInt::one()
                };
                if d == BigInt::from(0) {
                    return Err(self.error("zero denominator"));
                }
                Ok(QLaurent::from(TPoly::constant(Rational::new(n, d))))
            }
            _ => Err(self.error("expected a number, `t`, `q` or `(`")),
        }
    }

    fn digits(&mut self) -> Result<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn integer(&mut self) -> Result<BigInt> {
        let s = self.digits()?;
        s.parse().map_err(|_| self.error("bad integer"))
    }

    fn uint(&mut self) -> Result<u32> {
        let s = self.digits()?;
        s.parse().map_err(|_| self.error("exponent out of range"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    #[test]
    fn parses_products_and_groups() {
        let v = parse_scalar("(1/2)*(t - 1)*t").unwrap();
        assert_eq!(
            v.as_tpoly().unwrap(),
            TPoly::from_terms([(2, rat(1, 2)), (1, rat(-1, 2))])
        );
        assert_eq!(parse_scalar("q^-2*q^3").unwrap(), QLaurent::q_pow(1));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_scalar("").is_err());
        assert!(parse_scalar("1 +").is_err());
        assert!(parse_scalar("x").is_err());
        assert!(parse_scalar("(t").is_err());
    }
}
