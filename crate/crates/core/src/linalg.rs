//! Exact Gaussian elimination over ℚ and ℚ(t).

use std::fmt;

use num_traits::{One, Zero};

use crate::scalars::{Coeff, Rational, TPoly};

/// The field operations elimination needs.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Panics on division by zero.
    fn div(&self, other: &Self) -> Self;
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
}

/// A rational function in `t`, kept as a reduced fraction with monic
/// denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: TPoly,
    den: TPoly,
}

impl RatFunc {
    pub fn new(num: TPoly, den: TPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::from_poly(TPoly::zero());
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lead = den.leading_coeff().unwrap().clone();
        let inv = <Rational as One>::one() / lead;
        Self {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn from_poly(p: TPoly) -> Self {
        Self {
            num: p,
            den: TPoly::one(),
        }
    }

    pub fn numerator(&self) -> &TPoly {
        &self.num
    }

    pub fn denominator(&self) -> &TPoly {
        &self.den
    }

    /// The polynomial this is, if the denominator is one.
    pub fn as_poly(&self) -> Option<&TPoly> {
        self.den.is_one().then_some(&self.num)
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        Self::from_poly(TPoly::zero())
    }
    fn one() -> Self {
        Self::from_poly(TPoly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        Self::new(
            &self.num * &other.den + &other.num * &self.den,
            &self.den * &other.den,
        )
    }
    fn sub(&self, other: &Self) -> Self {
        Self::new(
            &self.num * &other.den - &other.num * &self.den,
            &self.den * &other.den,
        )
    }
    fn mul(&self, other: &Self) -> Self {
        Self::new(&self.num * &other.num, &self.den * &other.den)
    }
    fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero");
        Self::new(&self.num * &other.den, &self.den * &other.num)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn row_reduce<F: Field>(rows: &mut Vec<Vec<F>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = F::one().div(&rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = x.mul(&inv);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in 0..ncols {
                    let delta = factor.mul(&rows[r][j]);
                    rows[i][j] = rows[i][j].sub(&delta);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank<F: Field>(rows: &[Vec<F>], ncols: usize) -> usize {
    let mut work = rows.to_vec();
    row_reduce(&mut work, ncols).len()
}

/// Basis of `{x : A x = 0}`, one vector per free column with that
/// coordinate set to one.
pub fn nullspace<F: Field>(rows: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut work = rows.to_vec();
    let pivots = row_reduce(&mut work, ncols);
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![F::zero(); ncols];
            v[free] = F::one();
            for (row, &p) in work.iter().zip(&pivots) {
                v[p] = F::zero().sub(&row[free]);
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, rat};

    #[test]
    fn rational_nullspace() {
        let rows = vec![vec![int(1), int(-1), int(0)], vec![int(2), int(-2), int(0)]];
        let ns = nullspace(&rows, 3);
        assert_eq!(
            ns,
            vec![vec![int(1), int(1), int(0)], vec![int(0), int(0), int(1)]]
        );
        assert_eq!(rank(&rows, 3), 1);
    }

    #[test]
    fn ratfunc_reduces() {
        let t = TPoly::t();
        let num = &t * &(&t - &TPoly::one());
        let den = (&t - &TPoly::one()).scale(&rat(2, 1));
        let r = RatFunc::new(num, den);
        assert_eq!(r.as_poly(), Some(&t.scale(&rat(1, 2))));
        let inv = RatFunc::one().div(&RatFunc::from_poly(TPoly::t()));
        assert_eq!(inv.to_string(), "(1)/(t)");
        assert!(inv.mul(&RatFunc::from_poly(TPoly::t())) == RatFunc::one());
    }

    #[test]
    fn generic_rank_drops_at_root() {
        // [[t, 1], [0, t]] has rank 2 over Q(t)
        let t = RatFunc::from_poly(TPoly::t());
        let rows = vec![vec![t.clone(), RatFunc::one()], vec![RatFunc::zero(), t]];
        assert_eq!(rank(&rows, 2), 2);
    }
}
