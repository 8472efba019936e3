//! Exact coefficients.
//!
//! Three scalar kinds are used throughout the crate, each embedding into the
//! next:
//!
//! * [`Rational`]: arbitrary-precision rationals.
//! * [`TPoly`]: polynomials in the interpolation parameter `t` over the
//!   rationals.
//! * [`QLaurent`]: Laurent polynomials in the braiding parameter `q` whose
//!   coefficients are [`TPoly`] values.
//!
//! All three print lowest degree first with explicit signs, e.g.
//! `-1/2 + 1/2*t^2` or `t*q^-3 + q^2`, and parse back from the same text.

mod laurent;
mod parse;
mod tpoly;

pub use laurent::QLaurent;
pub use tpoly::TPoly;

use std::fmt::{self, Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always in lowest terms.
pub type Rational = BigRational;

/// `n / d` as a [`Rational`]. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a [`Rational`].
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let r = match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad rational `{text}`")))?;
            let d: BigInt = d
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad rational `{text}`")))?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{text}`")));
            }
            Rational::new(n, d)
        }
        None => Rational::from_integer(
            text.parse()
                .map_err(|_| Error::Parse(format!("bad rational `{text}`")))?,
        ),
    };
    Ok(r)
}

/// Values for the symbols `t` and `q`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment {
    pub t: Option<Rational>,
    pub q: Option<Rational>,
}

impl Assignment {
    pub fn t(t: Rational) -> Self {
        Self {
            t: Some(t),
            q: None,
        }
    }

    pub fn tq(t: Rational, q: Rational) -> Self {
        Self {
            t: Some(t),
            q: Some(q),
        }
    }

    pub fn q(q: Rational) -> Self {
        Self {
            t: None,
            q: Some(q),
        }
    }
}

/// Evaluates a scalar at an assignment of its symbols.
pub fn evaluate_scalar<S: Coeff>(s: &S, assignment: &Assignment) -> Result<Rational> {
    s.evaluate(assignment)
}

/// Coefficient ring of a [`Morphism`](crate::morphisms::Morphism).
///
/// Implementors must be able to represent powers of `t`, since composing
/// diagrams produces a factor `t` for every closed middle component.
pub trait Coeff:
    Clone + PartialEq + Eq + Debug + Display + FromStr<Err = Error> + Zero + One + Send + Sync + 'static
{
    fn from_rational(r: Rational) -> Self;

    /// `t^k`.
    fn t_pow(k: u32) -> Self;

    fn mul_ref(&self, other: &Self) -> Self;

    fn add_ref(&mut self, other: &Self);

    fn neg_ref(&self) -> Self;

    fn scale(&self, r: &Rational) -> Self;

    fn evaluate(&self, assignment: &Assignment) -> Result<Rational>;
}

/// One monomial `coeff * t^t_exp * q^q_exp`, used by the shared printer.
pub(crate) struct Monomial<'a> {
    pub coeff: &'a Rational,
    pub t_exp: u32,
    pub q_exp: i32,
}

pub(crate) fn write_monomials<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = Monomial<'a>>,
) -> fmt::Result {
    let mut first = true;
    for m in terms {
        let mut vars = Vec::new();
        match m.t_exp {
            0 => {}
            1 => vars.push("t".to_string()),
            k => vars.push(format!("t^{k}")),
        }
        match m.q_exp {
            0 => {}
            1 => vars.push("q".to_string()),
            e => vars.push(format!("q^{e}")),
        }
        let negative = m.coeff.is_negative();
        let abs = m.coeff.abs();
        let body = if vars.is_empty() {
            abs.to_string()
        } else if abs.is_one() {
            vars.join("*")
        } else {
            format!("{}*{}", abs, vars.join("*"))
        };
        match (first, negative) {
            (true, false) => write!(f, "{body}")?,
            (true, true) => write!(f, "-{body}")?,
            (false, false) => write!(f, " + {body}")?,
            (false, true) => write!(f, " - {body}")?,
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.t, &self.q) {
            (None, None) => write!(f, "{{}}"),
            (Some(t), None) => write!(f, "{{t={t}}}"),
            (None, Some(q)) => write!(f, "{{q={q}}}"),
            (Some(t), Some(q)) => write!(f, "{{t={t}, q={q}}}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_addition() {
        assert_eq!(rat(1, 2) + rat(1, 3), rat(5, 6));
    }

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
