use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};

use super::{parse, write_monomials, Assignment, Coeff, Monomial, Rational};
use crate::error::{Error, Result};

/// A polynomial in `t` with rational coefficients.
///
/// Sparse: only nonzero coefficients are stored, so the zero polynomial has
/// empty support.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TPoly {
    coeffs: BTreeMap<u32, Rational>,
}

impl TPoly {
    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, exp: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        Self { coeffs }
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms(terms: impl IntoIterator<Item = (u32, Rational)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    /// Builds from integer coefficients listed lowest degree first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(e, &c)| (e as u32, super::int(c))),
        )
    }

    pub fn coeff(&self, exp: u32) -> Rational {
        self.coeffs
            .get(&exp)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.values().next_back()
    }

    /// The constant value, if this polynomial does not involve `t`.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.degree() {
            None => Some(Rational::zero()),
            Some(0) => Some(self.coeff(0)),
            Some(_) => None,
        }
    }

    /// Nonzero `(exponent, coefficient)` pairs, lowest degree first.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn add_term(&mut self, exp: u32, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    /// Value at `t = t0`, by Horner's rule over the sparse support.
    pub fn eval(&self, t0: &Rational) -> Rational {
        let mut acc = Rational::zero();
        let mut prev: Option<u32> = None;
        for (&e, c) in self.coeffs.iter().rev() {
            if let Some(p) = prev {
                acc *= pow(t0, p - e);
            }
            acc += c;
            prev = Some(e);
        }
        if let Some(p) = prev {
            acc *= pow(t0, p);
        }
        acc
    }

    /// Quotient and remainder of division by a nonzero polynomial.
    pub fn div_rem(&self, divisor: &TPoly) -> (TPoly, TPoly) {
        let d_deg = divisor.degree().expect("division by the zero polynomial");
        let d_lead = divisor.leading_coeff().unwrap().clone();
        let mut quotient = TPoly::zero();
        let mut rem = self.clone();
        while let Some(r_deg) = rem.degree() {
            if r_deg < d_deg {
                break;
            }
            let c = rem.leading_coeff().unwrap() / &d_lead;
            let shift = r_deg - d_deg;
            quotient.add_term(shift, &c);
            for (e, dc) in divisor.terms() {
                rem.add_term(e + shift, &-(&c * dc));
            }
        }
        (quotient, rem)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &TPoly) -> TPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Divides through by the leading coefficient.
    pub fn monic(&self) -> TPoly {
        match self.leading_coeff() {
            None => TPoly::zero(),
            Some(lead) => self.scale(&(Rational::one() / lead)),
        }
    }
}

pub(crate) fn pow(base: &Rational, exp: u32) -> Rational {
    num_traits::pow(base.clone(), exp as usize)
}

impl Zero for TPoly {
    fn zero() -> Self {
        Self {
            coeffs: BTreeMap::new(),
        }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for TPoly {
    fn one() -> Self {
        Self::constant(Rational::one())
    }
}

impl Coeff for TPoly {
    fn from_rational(r: Rational) -> Self {
        Self::constant(r)
    }

    fn t_pow(k: u32) -> Self {
        Self::monomial(Rational::one(), k)
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let mut out = TPoly::zero();
        for (&ea, ca) in &self.coeffs {
            for (&eb, cb) in &other.coeffs {
                out.add_term(ea + eb, &(ca * cb));
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
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }

    fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return TPoly::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, c * r)).collect(),
        }
    }

    fn evaluate(&self, assignment: &Assignment) -> Result<Rational> {
        if let Some(c) = self.as_constant() {
            return Ok(c);
        }
        let t0 = assignment.t.as_ref().ok_or(Error::UnboundParameter("t"))?;
        Ok(self.eval(t0))
    }
}

impl From<Rational> for TPoly {
    fn from(r: Rational) -> Self {
        Self::constant(r)
    }
}

impl Add for TPoly {
    type Output = TPoly;
    fn add(mut self, rhs: TPoly) -> TPoly {
        self.add_ref(&rhs);
        self
    }
}

impl<'a> Add<&'a TPoly> for &'a TPoly {
    type Output = TPoly;
    fn add(self, rhs: &TPoly) -> TPoly {
        let mut out = self.clone();
        out.add_ref(rhs);
        out
    }
}

impl Sub for TPoly {
    type Output = TPoly;
    fn sub(mut self, rhs: TPoly) -> TPoly {
        self.add_ref(&rhs.neg_ref());
        self
    }
}

impl<'a> Sub<&'a TPoly> for &'a TPoly {
    type Output = TPoly;
    fn sub(self, rhs: &TPoly) -> TPoly {
        let mut out = self.clone();
        out.add_ref(&rhs.neg_ref());
        out
    }
}

impl Mul for TPoly {
    type Output = TPoly;
    fn mul(self, rhs: TPoly) -> TPoly {
        self.mul_ref(&rhs)
    }
}

impl<'a> Mul<&'a TPoly> for &'a TPoly {
    type Output = TPoly;
    fn mul(self, rhs: &TPoly) -> TPoly {
        self.mul_ref(rhs)
    }
}

impl Neg for TPoly {
    type Output = TPoly;
    fn neg(self) -> TPoly {
        self.neg_ref()
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_monomials(
            f,
            self.coeffs.iter().map(|(&e, c)| Monomial {
                coeff: c,
                t_exp: e,
                q_exp: 0,
            }),
        )
    }
}

impl FromStr for TPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let l = parse::parse_scalar(s)?;
        l.as_tpoly()
            .ok_or_else(|| Error::Parse(format!("`{s}` involves q; expected a polynomial in t")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, rat};

    #[test]
    fn product_of_linear_factors() {
        let t = TPoly::t();
        let t_minus_one = &t - &TPoly::one();
        assert_eq!(&t * &t_minus_one, TPoly::from_ints(&[0, -1, 1]));
    }

    #[test]
    fn t_squared_minus_t_vanishes_at_zero() {
        let p = TPoly::from_ints(&[0, -1, 1]);
        assert_eq!(p.evaluate(&Assignment::t(int(0))).unwrap(), int(0));
    }

    #[test]
    fn half_binomial_at_three() {
        let p = TPoly::from_terms([(2, rat(1, 2)), (1, rat(-1, 2))]);
        assert_eq!(p.evaluate(&Assignment::t(int(3))).unwrap(), int(3));
    }

    #[test]
    fn unbound_t_is_an_error() {
        let p = TPoly::t();
        assert_eq!(
            p.evaluate(&Assignment::default()),
            Err(Error::UnboundParameter("t"))
        );
        // constants need no assignment
        assert_eq!(
            TPoly::constant(rat(2, 3))
                .evaluate(&Assignment::default())
                .unwrap(),
            rat(2, 3)
        );
    }

    #[test]
    fn display_is_lowest_degree_first() {
        let p = TPoly::from_terms([(2, rat(1, 2)), (0, rat(-1, 2))]);
        assert_eq!(p.to_string(), "-1/2 + 1/2*t^2");
        assert_eq!(TPoly::from_ints(&[0, -1, 1]).to_string(), "-t + t^2");
        assert_eq!(TPoly::zero().to_string(), "0");
        assert_eq!("-1/2 + 1/2*t^2".parse::<TPoly>().unwrap(), p);
    }

    #[test]
    fn division_and_gcd() {
        // (t-1)(t-2) and (t-1)(t+3)
        let a = TPoly::from_ints(&[2, -3, 1]);
        let b = TPoly::from_ints(&[-3, 2, 1]);
        assert_eq!(a.gcd(&b), TPoly::from_ints(&[-1, 1]));
        let (q, r) = a.div_rem(&TPoly::from_ints(&[-1, 1]));
        assert_eq!(q, TPoly::from_ints(&[-2, 1]));
        assert!(r.is_zero());
    }
}
