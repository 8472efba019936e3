use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};

use super::tpoly::pow;
use super::{parse, write_monomials, Assignment, Coeff, Monomial, Rational, TPoly};
use crate::error::{Error, Result};

/// A Laurent polynomial in `q` with [`TPoly`] coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QLaurent {
    coeffs: BTreeMap<i32, TPoly>,
}

impl QLaurent {
    /// `q^e`.
    pub fn q_pow(e: i32) -> Self {
        Self::monomial(TPoly::one(), e)
    }

    pub fn monomial(c: TPoly, e: i32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        Self { coeffs }
    }

    pub fn coeff(&self, e: i32) -> TPoly {
        self.coeffs.get(&e).cloned().unwrap_or_else(TPoly::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &TPoly)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn add_term(&mut self, e: i32, c: &TPoly) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert_with(TPoly::zero);
        entry.add_ref(c);
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    /// The `q^0` part, when no other power of `q` occurs.
    pub fn as_tpoly(&self) -> Option<TPoly> {
        match self.coeffs.len() {
            0 => Some(TPoly::zero()),
            1 if self.coeffs.contains_key(&0) => Some(self.coeff(0)),
            _ => None,
        }
    }

    /// If this is a single monomial `q^e` (coefficient exactly one), returns `e`.
    pub fn as_q_power(&self) -> Option<i32> {
        match self.coeffs.iter().next() {
            Some((&e, c)) if self.coeffs.len() == 1 && c.is_one() => Some(e),
            _ => None,
        }
    }

    /// Substitutes `q = q0`, leaving `t` symbolic.
    pub fn specialize_q(&self, q0: &Rational) -> Result<TPoly> {
        let mut out = TPoly::zero();
        for (&e, c) in &self.coeffs {
            let factor = if e >= 0 {
                pow(q0, e as u32)
            } else if q0.is_zero() {
                return Err(Error::QNotInvertible);
            } else {
                pow(&(Rational::one() / q0), e.unsigned_abs())
            };
            out.add_ref(&c.scale(&factor));
        }
        Ok(out)
    }
}

impl Zero for QLaurent {
    fn zero() -> Self {
        Self {
            coeffs: BTreeMap::new(),
        }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for QLaurent {
    fn one() -> Self {
        Self::q_pow(0)
    }
}

impl Coeff for QLaurent {
    fn from_rational(r: Rational) -> Self {
        Self::monomial(TPoly::constant(r), 0)
    }

    fn t_pow(k: u32) -> Self {
        Self::monomial(TPoly::t_pow(k), 0)
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let mut out = QLaurent::zero();
        for (&ea, ca) in &self.coeffs {
            for (&eb, cb) in &other.coeffs {
                out.add_term(ea + eb, &ca.mul_ref(cb));
            }
        }
        out
    }

    fn add_ref(&mut self, other: &Self) {
        for (&e, c) in &other.coeffs {
            self.add_term(e, c);
        }
    }

    fn neg_ref(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, c.neg_ref())).collect(),
        }
    }

    fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return QLaurent::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, c.scale(r))).collect(),
        }
    }

    fn evaluate(&self, assignment: &Assignment) -> Result<Rational> {
        let poly = match self.as_tpoly() {
            Some(p) => p,
            None => {
                let q0 = assignment.q.as_ref().ok_or(Error::UnboundParameter("q"))?;
                self.specialize_q(q0)?
            }
        };
        poly.evaluate(assignment)
    }
}

impl From<TPoly> for QLaurent {
    fn from(p: TPoly) -> Self {
        Self::monomial(p, 0)
    }
}

impl Add for QLaurent {
    type Output = QLaurent;
    fn add(mut self, rhs: QLaurent) -> QLaurent {
        self.add_ref(&rhs);
        self
    }
}

impl<'a> Add<&'a QLaurent> for &'a QLaurent {
    type Output = QLaurent;
    fn add(self, rhs: &QLaurent) -> QLaurent {
        let mut out = self.clone();
        out.add_ref(rhs);
        out
    }
}

impl Sub for QLaurent {
    type Output = QLaurent;
    fn sub(mut self, rhs: QLaurent) -> QLaurent {
        self.add_ref(&rhs.neg_ref());
        self
    }
}

impl Mul for QLaurent {
    type Output = QLaurent;
    fn mul(self, rhs: QLaurent) -> QLaurent {
        self.mul_ref(&rhs)
    }
}

impl<'a> Mul<&'a QLaurent> for &'a QLaurent {
    type Output = QLaurent;
    fn mul(self, rhs: &QLaurent) -> QLaurent {
        self.mul_ref(rhs)
    }
}

impl Neg for QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        self.neg_ref()
    }
}

impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_monomials(
            f,
            self.coeffs.iter().flat_map(|(&qe, c)| {
                c.terms().map(move |(te, coeff)| Monomial {
                    coeff,
                    t_exp: te,
                    q_exp: qe,
                })
            }),
        )
    }
}

impl FromStr for QLaurent {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse::parse_scalar(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, rat};

    #[test]
    fn q_times_inverse_is_one() {
        assert_eq!(QLaurent::q_pow(1) * QLaurent::q_pow(-1), QLaurent::one());
    }

    #[test]
    fn evaluates_inverse_q() {
        let s = QLaurent::q_pow(-1);
        assert_eq!(s.evaluate(&Assignment::q(int(2))).unwrap(), rat(1, 2));
    }

    #[test]
    fn zero_q_with_negative_power_fails() {
        let s = QLaurent::q_pow(-3);
        assert_eq!(
            s.evaluate(&Assignment::q(int(0))),
            Err(Error::QNotInvertible)
        );
        assert_eq!(
            s.evaluate(&Assignment::default()),
            Err(Error::UnboundParameter("q"))
        );
    }

    #[test]
    fn display_orders_by_q_then_t() {
        let s = QLaurent::monomial(TPoly::t(), -3) + QLaurent::q_pow(2)
            - QLaurent::monomial(TPoly::constant(rat(1, 2)), 0);
        assert_eq!(s.to_string(), "t*q^-3 - 1/2 + q^2");
        assert_eq!(s.to_string().parse::<QLaurent>().unwrap(), s);
    }
}
