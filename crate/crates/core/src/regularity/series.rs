//! Truncated power series over the rationals and the Möbius values they
//! encode, plus the Euler–Poincaré residuals of candidate profiles.

use std::ops::{Mul, Neg};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Errors from series arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series with zero constant term has no inverse")]
    NotInvertible,
    #[error("sequence {name} needs {needed} entries, found {found}")]
    TooShort { name: &'static str, needed: usize, found: usize },
    #[error("sequence {name} has a zero entry at index {index}")]
    ZeroEntry { name: &'static str, index: usize },
    #[error("coefficient {index} produced the non-integral Möbius value {value}")]
    NonIntegral { index: usize, value: BigRational },
}

/// A power series truncated after `len() - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<BigRational>,
}

impl Series {
    /// Series with the given coefficients.
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        Series { coeffs }
    }

    /// `sum_n t^n / b[n]` truncated at `order`.
    pub fn reciprocal_weights(b: &[BigUint], order: usize, name: &'static str) -> Result<Self, SeriesError> {
        need(b, order + 1, name)?;
        let coeffs = b[..=order]
            .iter()
            .map(|x| BigRational::new(BigInt::one(), BigInt::from(x.clone())))
            .collect();
        Ok(Series { coeffs })
    }

    /// Coefficients from the constant term upwards.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Number of stored coefficients.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    /// Whether no coefficient is stored.
    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Multiplicative inverse to the same precision.
    pub fn inverse(&self) -> Result<Series, SeriesError> {
        let c0 = self.coeffs.first().filter(|c| !c.is_zero()).ok_or(SeriesError::NotInvertible)?;
        let inv0 = c0.recip();
        let mut out: Vec<BigRational> = Vec::with_capacity(self.len());
        out.push(inv0.clone());
        for n in 1..self.len() {
            let mut s = BigRational::zero();
            for k in 1..=n {
                s += &self.coeffs[k] * &out[n - k];
            }
            out.push(-s * &inv0);
        }
        Ok(Series { coeffs: out })
    }
}

impl Mul for &Series {
    type Output = Series;

    fn mul(self, rhs: &Series) -> Series {
        let len = self.len().min(rhs.len());
        let mut out = vec![BigRational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(len - i) {
                out[i + j] += a * b;
            }
        }
        Series { coeffs: out }
    }
}

impl Neg for Series {
    type Output = Series;

    fn neg(self) -> Series {
        Series { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

fn need(v: &[BigUint], needed: usize, name: &'static str) -> Result<(), SeriesError> {
    if v.len() < needed {
        return Err(SeriesError::TooShort { name, needed, found: v.len() });
    }
    if let Some(index) = v[..needed].iter().position(Zero::is_zero) {
        return Err(SeriesError::ZeroEntry { name, index });
    }
    Ok(())
}

fn integral(index: usize, value: BigRational) -> Result<BigInt, SeriesError> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(SeriesError::NonIntegral { index, value })
    }
}

/// Möbius values `mu(n)` of length-`n` intervals of a binomial poset, read
/// off the inverse of `sum t^n / B(n)`; entries `0..=order`.
pub fn mobius_from_series(b: &[BigUint], order: usize) -> Result<Vec<BigInt>, SeriesError> {
    let f = Series::reciprocal_weights(b, order, "B")?;
    let inv = f.inverse()?;
    inv.coeffs
        .into_iter()
        .enumerate()
        .map(|(n, c)| integral(n, c * BigRational::from_integer(BigInt::from(b[n].clone()))))
        .collect()
}

/// Möbius values `mu(0̂, y)` with `rank y = n` of a Sheffer poset for
/// `n = 1..=order`, read off `-(sum_{n>=1} t^n / D(n)) / (sum t^n / B(n))`.
/// Index 0 of the result holds 1, the value on the one-element interval.
pub fn sheffer_mobius_from_series(b: &[BigUint], d: &[BigUint], order: usize) -> Result<Vec<BigInt>, SeriesError> {
    need(b, order, "B")?;
    need(&d[1.min(d.len())..], order, "D")?;
    let mut b_ext = b[..order].to_vec();
    b_ext.push(BigUint::one());
    let g = Series::reciprocal_weights(&b_ext, order, "B")?.inverse()?;
    let mut dser = vec![BigRational::zero()];
    dser.extend(d[1..=order].iter().map(|x| BigRational::new(BigInt::one(), BigInt::from(x.clone()))));
    let h = -(&Series::new(dser) * &g);
    let mut out = vec![BigInt::one()];
    for n in 1..=order {
        out.push(integral(n, h.coeffs[n].clone() * BigRational::from_integer(BigInt::from(d[n].clone())))?);
    }
    Ok(out)
}

fn ratio(num: &BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num.clone()), BigInt::from(den))
}

/// `sum_{k=0}^{n} (-1)^k B(n) / (B(k) B(n-k))`, which vanishes for every
/// `n >= 1` exactly when the rank counts of an `n`-interval balance.
pub fn binomial_ep_residual(b: &[BigUint], n: usize) -> BigRational {
    let mut s = BigRational::zero();
    for k in 0..=n {
        let term = ratio(&b[n], &b[k] * &b[n - k]);
        if k % 2 == 0 {
            s += term;
        } else {
            s -= term;
        }
    }
    s
}

/// `1 + sum_{k=1}^{n} (-1)^k D(n) / (D(k) B(n-k))`, the Euler–Poincaré
/// residual of an interval `[0̂, y]` with `rank y = n`.
pub fn sheffer_ep_residual(b: &[BigUint], d: &[BigUint], n: usize) -> BigRational {
    let mut s = BigRational::one();
    for k in 1..=n {
        let term = ratio(&d[n], &d[k] * &b[n - k]);
        if k % 2 == 0 {
            s += term;
        } else {
            s -= term;
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regularity::rules;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn boolean_mobius_alternates() {
        let b = rules::factorial_sequence(6);
        assert_eq!(mobius_from_series(&b, 6).unwrap(), ints(&[1, -1, 1, -1, 1, -1, 1]));
    }

    #[test]
    fn chain_mobius_from_series() {
        let b: Vec<BigUint> = vec![BigUint::one(); 5];
        assert_eq!(mobius_from_series(&b, 4).unwrap(), ints(&[1, -1, 0, 0, 0]));
    }

    #[test]
    fn inverse_round_trips() {
        let f = Series::reciprocal_weights(&rules::factorial_sequence(5), 5, "B").unwrap();
        let prod = &f * &f.inverse().unwrap();
        assert!(prod.coeffs()[0].is_one());
        assert!(prod.coeffs()[1..].iter().all(Zero::is_zero));
        assert_eq!(Series::new(vec![BigRational::zero()]).inverse(), Err(SeriesError::NotInvertible));
    }

    #[test]
    fn residuals_vanish_on_boolean() {
        let b = rules::factorial_sequence(7);
        for n in 1..=7 {
            assert!(binomial_ep_residual(&b, n).is_zero());
            assert!(sheffer_ep_residual(&b, &b, n).is_zero());
        }
    }

    #[test]
    fn short_input_is_reported() {
        let b = rules::factorial_sequence(2);
        assert!(matches!(mobius_from_series(&b, 4), Err(SeriesError::TooShort { .. })));
    }
}
