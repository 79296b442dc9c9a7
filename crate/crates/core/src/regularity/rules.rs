//! Closed-form factorial sequences of the standard families.
//!
//! Each function returns the entries for ranks `0..=n`. Sequences of the
//! `D` kind carry the conventional `D(0) = 1` at index 0.

use num_bigint::BigUint;
use num_traits::One;

/// `B(k) = k!`, the Boolean algebras.
pub fn factorial_sequence(n: usize) -> Vec<BigUint> {
    let mut out = vec![BigUint::one()];
    for k in 1..=n {
        let next = &out[k - 1] * BigUint::from(k);
        out.push(next);
    }
    out
}

/// `B(0) = 1` and `B(k) = 2^(k-1)`, the butterfly posets.
pub fn butterfly_sequence(n: usize) -> Vec<BigUint> {
    (0..=n)
        .map(|k| if k == 0 { BigUint::one() } else { BigUint::one() << (k - 1) })
        .collect()
}

/// `D(1) = 1` and `D(k) = 2 (k-1)!` for `k >= 2`, the dual suspension of a
/// Boolean algebra.
pub fn sigma_star_sequence(n: usize) -> Vec<BigUint> {
    let f = factorial_sequence(n);
    (0..=n)
        .map(|k| if k <= 1 { BigUint::one() } else { &f[k - 1] * 2u32 })
        .collect()
}

/// `D(k) = 2^(k-1) (k-1)!` for `k >= 1`, the cubical lattices.
pub fn cubical_sequence(n: usize) -> Vec<BigUint> {
    let f = factorial_sequence(n);
    (0..=n)
        .map(|k| if k == 0 { BigUint::one() } else { (&f[k - 1]) << (k - 1) })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(v: Vec<BigUint>) -> Vec<u64> {
        v.into_iter().map(|x| u64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn first_terms() {
        assert_eq!(small(factorial_sequence(5)), vec![1, 1, 2, 6, 24, 120]);
        assert_eq!(small(butterfly_sequence(5)), vec![1, 1, 2, 4, 8, 16]);
        assert_eq!(small(sigma_star_sequence(5)), vec![1, 1, 2, 4, 12, 48]);
        assert_eq!(small(cubical_sequence(5)), vec![1, 1, 2, 8, 48, 384]);
    }
}
