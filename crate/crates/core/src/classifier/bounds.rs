//! Closed-form windows for the next odd-rank value.
//!
//! Write `x` for the quantity determined by the ranks already fixed, so that
//! the free odd-rank value `c` and the following even-rank ratio `r` satisfy
//! `x = (1/c)(1 - k/r)` with `k = 1` for atoms and `k = 2` for coatoms.
//! Requiring `L <= r < U` confines `c` to `[(1/x)(1 - k/L), (1/x)(1 - k/U))`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::ClassifierError;

/// A half-open rational interval `[lower, upper)`; `upper = None` is
/// unbounded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundInterval {
    #[serde(serialize_with = "crate::bigjson::rational")]
    pub lower: BigRational,
    #[serde(serialize_with = "crate::bigjson::opt_rational")]
    pub upper: Option<BigRational>,
}

impl BoundInterval {
    /// Whether `v` lies in the interval.
    pub fn contains(&self, v: &BigRational) -> bool {
        *v >= self.lower && self.upper.as_ref().map_or(true, |u| v < u)
    }

    /// Smallest integer in the interval that is at least `floor`.
    pub fn first_integer_from(&self, floor: &BigInt) -> BigInt {
        ceil(&self.lower).max(floor.clone())
    }

    /// Largest integer in the interval, if the interval is bounded.
    pub fn last_integer(&self) -> Option<BigInt> {
        self.upper.as_ref().map(|u| ceil(u) - BigInt::one())
    }
}

/// Smallest integer not below `v`.
pub(crate) fn ceil(v: &BigRational) -> BigInt {
    let (q, r) = v.numer().div_mod_floor(v.denom());
    if r.is_zero() {
        q
    } else {
        q + 1
    }
}

fn corollary(
    k: u32,
    x: &BigRational,
    l: &BigRational,
    u: Option<&BigRational>,
) -> Result<BoundInterval, ClassifierError> {
    let bad = || ClassifierError::BadBound { x: x.clone(), l: l.clone() };
    if !x.is_positive() || !l.is_positive() || u.is_some_and(|u| u < l) {
        return Err(bad());
    }
    let k = BigRational::from_integer(BigInt::from(k));
    let one = BigRational::one();
    let lower = (&one - &k / l) / x;
    let upper = match u {
        Some(u) => (&one - &k / u) / x,
        None => one / x,
    };
    Ok(BoundInterval { lower, upper: Some(upper) })
}

/// Window for an odd-rank atom value given `L <= A(next) < U`.
///
/// With `u = None` only positivity of the next value bounds the window
/// from above, so the upper end is `1/x`.
pub fn bound_corollary_a(
    x: &BigRational,
    l: &BigRational,
    u: Option<&BigRational>,
) -> Result<BoundInterval, ClassifierError> {
    corollary(1, x, l, u)
}

/// Window for an odd-rank coatom value given `L <= C(next) < U`.
pub fn bound_corollary_c(
    x: &BigRational,
    l: &BigRational,
    u: Option<&BigRational>,
) -> Result<BoundInterval, ClassifierError> {
    corollary(2, x, l, u)
}

/// The nested quantity `z` of a reference coatom function two odd steps
/// ahead: `(1/c1)(1/B(3) - (1/c2)(1/2 - (1/c3)(1 - 2/c4)))`.
pub fn second_form_reference(b3: &BigRational, c: [&BigRational; 4]) -> BigRational {
    let one = BigRational::one();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let two = BigRational::from_integer(BigInt::from(2));
    let inner = (&one / c[2]) * (&one - &two / c[3]);
    let mid = (&one / c[1]) * (half - inner);
    (&one / c[0]) * (b3.recip() - mid)
}

/// `y = 1/2 - c_even (1/B(3) - c_odd z)`, the value that plays the role of
/// `x` two ranks further up once `c_odd` and `c_even` have been chosen.
pub fn second_form_y(z: &BigRational, b3: &BigRational, c_odd: &BigRational, c_even: &BigRational) -> BigRational {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    half - c_even * (b3.recip() - c_odd * z)
}

/// Coatom window two ranks up, expressed through `z` and the chosen
/// `c_odd`, `c_even`.
pub fn bound_corollary_c_second(
    z: &BigRational,
    b3: &BigRational,
    c_odd: &BigRational,
    c_even: &BigRational,
    l: &BigRational,
    u: Option<&BigRational>,
) -> Result<BoundInterval, ClassifierError> {
    bound_corollary_c(&second_form_y(z, b3, c_odd, c_even), l, u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn ceiling() {
        assert_eq!(ceil(&q(9, 2)), BigInt::from(5));
        assert_eq!(ceil(&q(6, 1)), BigInt::from(6));
        assert_eq!(ceil(&q(-3, 2)), BigInt::from(-1));
    }

    #[test]
    fn interval_membership() {
        let b = bound_corollary_a(&q(1, 4), &q(2, 1), None).unwrap();
        assert_eq!(b.lower, q(2, 1));
        assert_eq!(b.upper, Some(q(4, 1)));
        assert!(b.contains(&q(3, 1)));
        assert!(!b.contains(&q(4, 1)));
        assert_eq!(b.last_integer(), Some(BigInt::from(3)));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(bound_corollary_a(&q(0, 1), &q(2, 1), None).is_err());
        assert!(bound_corollary_c(&q(1, 2), &q(3, 1), Some(&q(2, 1))).is_err());
    }
}
