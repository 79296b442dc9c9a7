//! Exact single-step arithmetic: solving an even rank and bounding an odd one.
//!
//! Sequences are passed as `vals[0..=n]`, where `vals` is `B` in binomial
//! mode and `D` (with `D(0) = 1`) in Sheffer mode.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::bounds::{bound_corollary_a, bound_corollary_c, BoundInterval};
use super::{rat, Annotation, BRule, ClassifierError, ConstraintSet, PruneReason, Rejection, SearchMode};

/// Arithmetic context of one search: mode, fixed `B` for Sheffer mode and
/// enabled constraints.
#[derive(Clone, Debug)]
pub(crate) struct Model {
    pub mode: SearchMode,
    pub constraints: ConstraintSet,
    fixed_b: Vec<BigUint>,
}

/// Shape of the window for a free odd-rank value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum WindowShape {
    /// Finitely many candidates `first..=last`; `upper` is the exclusive
    /// rational bound the corollary gives.
    Bounded {
        #[serde(serialize_with = "crate::bigjson::num")]
        first: BigInt,
        #[serde(serialize_with = "crate::bigjson::num")]
        last: BigInt,
        interval: BoundInterval,
    },
    /// Every value from `first` on survives the window test.
    Unbounded {
        #[serde(serialize_with = "crate::bigjson::num")]
        first: BigInt,
    },
    /// No value survives; `witness` explains why.
    Empty { witness: Rejection },
}

/// The window for the odd rank following a fixed even prefix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OddWindow {
    pub rank: usize,
    /// The quantity `x` with `x = (1/c)(1 - k/r)`.
    #[serde(serialize_with = "crate::bigjson::rational")]
    pub x: BigRational,
    #[serde(flatten)]
    pub shape: WindowShape,
}

/// An odd-rank value whose following even rank is accepted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OddCandidate {
    /// `A` or `C` at the odd rank.
    #[serde(serialize_with = "crate::bigjson::num")]
    pub ratio: BigUint,
    /// `B` or `D` at the odd rank.
    #[serde(serialize_with = "crate::bigjson::num")]
    pub value: BigUint,
    /// `B` or `D` at the next even rank.
    #[serde(serialize_with = "crate::bigjson::num")]
    pub next_value: BigUint,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub annotations: Vec<Annotation>,
}

fn signed_sum(terms: impl Iterator<Item = (usize, BigRational)>) -> BigRational {
    let mut s = BigRational::zero();
    for (k, t) in terms {
        if k % 2 == 0 {
            s += t;
        } else {
            s -= t;
        }
    }
    s
}

impl Model {
    pub fn new(mode: SearchMode, constraints: ConstraintSet, max_rank: usize) -> Self {
        let fixed_b = match mode {
            SearchMode::Binomial => Vec::new(),
            SearchMode::Sheffer(rule) => rule.values(max_rank + 4),
        };
        Model { mode, constraints, fixed_b }
    }

    /// `B(k)`: from the sequence itself in binomial mode.
    fn b<'a>(&'a self, vals: &'a [BigUint], k: usize) -> &'a BigUint {
        match self.mode {
            SearchMode::Binomial => &vals[k],
            SearchMode::Sheffer(_) => &self.fixed_b[k],
        }
    }

    /// Atom value `A(k) = B(k) / B(k-1)`.
    fn atom(&self, vals: &[BigUint], k: usize) -> BigUint {
        self.b(vals, k) / self.b(vals, k - 1)
    }

    fn kappa(&self) -> BigRational {
        match self.mode {
            SearchMode::Binomial => BigRational::one(),
            SearchMode::Sheffer(_) => BigRational::from_integer(BigInt::from(2)),
        }
    }

    fn term(&self, vals: &[BigUint], n: usize, k: usize) -> BigRational {
        BigRational::new(BigInt::one(), BigInt::from(&vals[k] * self.b(vals, n - k)))
    }

    /// Solves the Euler–Poincaré relation at even rank `n = vals.len()` and
    /// applies the enabled constraints.
    pub fn solve_even(&self, vals: &[BigUint]) -> Result<BigUint, Rejection> {
        let n = vals.len();
        let s = -signed_sum((1..n).map(|k| (k, self.term(vals, n, k))));
        if !s.is_positive() {
            return Err(Rejection { rank: n, value: None, reason: PruneReason::NonPositive { sum: s } });
        }
        let value = BigRational::from_integer(BigInt::from(2)) / &s;
        self.accept(vals, n, value)
    }

    fn accept(&self, vals: &[BigUint], n: usize, value: BigRational) -> Result<BigUint, Rejection> {
        let reject = |reason| Rejection { rank: n, value: Some(value.clone()), reason };
        if !value.is_integer() {
            return Err(reject(PruneReason::NonInteger));
        }
        let v = value.to_integer().to_biguint().expect("positive");
        if !(&v % &vals[n - 1]).is_zero() {
            return Err(reject(PruneReason::NonIntegralRatio));
        }
        let mut ext = vals.to_vec();
        ext.push(v.clone());
        self.check(&ext, n).map_err(reject)?;
        Ok(v)
    }

    /// Constraint checks for `vals[n]` given the earlier entries.
    pub fn check(&self, vals: &[BigUint], n: usize) -> Result<(), PruneReason> {
        let ratio = &vals[n] / &vals[n - 1];
        if self.constraints.monotonicity && n >= 2 {
            let minimum = match self.mode {
                SearchMode::Binomial => &vals[n - 1] / &vals[n - 2],
                SearchMode::Sheffer(_) => self.atom(vals, n - 1),
            };
            if ratio < minimum {
                let ratio = rat(&ratio);
                return Err(match self.mode {
                    SearchMode::Binomial => PruneReason::AtomMonotonicity { ratio, minimum },
                    SearchMode::Sheffer(_) => PruneReason::FactA { ratio, minimum },
                });
            }
        }
        if self.constraints.divisibility || self.constraints.rank_counts {
            for k in 1..n {
                let quotient = BigRational::new(BigInt::from(vals[n].clone()), BigInt::from(vals[n - k].clone()));
                let count = &quotient / rat(self.b(vals, k));
                if !count.is_integer() {
                    return Err(if self.constraints.divisibility {
                        PruneReason::FactB { k, quotient }
                    } else {
                        PruneReason::RankCount { k, count }
                    });
                }
            }
        }
        Ok(())
    }

    /// `x` for the odd rank `vals.len()` after the even prefix `vals`.
    pub fn lemma_x(&self, vals: &[BigUint]) -> BigRational {
        let odd = vals.len();
        let n = odd + 1;
        let from = match self.mode {
            SearchMode::Binomial => 2,
            SearchMode::Sheffer(_) => 1,
        };
        let r = -signed_sum((from..=n - 2).map(|k| (k, self.term(vals, n, k))));
        let last = rat(&vals[odd - 1]);
        match self.mode {
            SearchMode::Binomial => -r * last / BigRational::from_integer(BigInt::from(2)),
            SearchMode::Sheffer(_) => -r * last,
        }
    }

    /// Window for the free value at odd rank `vals.len()`.
    pub fn odd_window(&self, vals: &[BigUint]) -> OddWindow {
        let rank = vals.len();
        let x = self.lemma_x(vals);
        let kappa = self.kappa();
        let mono = self.constraints.monotonicity;
        let floor = if mono { BigInt::from(self.atom_floor(vals)) } else { BigInt::one() };
        // the even ratio that follows must be at least `l`
        let l = match self.mode {
            SearchMode::Binomial => rat(&(&vals[rank - 1] / &vals[rank - 2])),
            SearchMode::Sheffer(_) => rat(&self.atom(&self.fixed_b, rank)),
        };
        let empty = |ratio: BigRational, minimum: BigUint| {
            let reason = match self.mode {
                SearchMode::Binomial => PruneReason::AtomMonotonicity { ratio, minimum },
                SearchMode::Sheffer(_) => PruneReason::FactA { ratio, minimum },
            };
            WindowShape::Empty { witness: Rejection { rank: rank + 1, value: None, reason } }
        };
        let shape = if x.is_positive() {
            let interval = if mono {
                match self.mode {
                    SearchMode::Binomial => bound_corollary_a(&x, &l, None),
                    SearchMode::Sheffer(_) => bound_corollary_c(&x, &l, None),
                }
                .expect("x and L are positive")
            } else {
                BoundInterval { lower: BigRational::zero(), upper: Some(x.recip()) }
            };
            let first = interval.first_integer_from(&floor);
            let last = interval.last_integer().expect("bounded above");
            if first > last {
                WindowShape::Empty {
                    witness: Rejection {
                        rank,
                        value: None,
                        reason: PruneReason::BoundCorollary { lower: interval.lower, upper: interval.upper },
                    },
                }
            } else {
                WindowShape::Bounded { first, last, interval }
            }
        } else if !mono {
            WindowShape::Unbounded { first: floor }
        } else if x.is_zero() {
            if l > kappa {
                empty(kappa, l.to_integer().to_biguint().expect("positive"))
            } else {
                WindowShape::Unbounded { first: floor }
            }
        } else {
            // the next ratio kappa / (1 - x c) decreases in c
            let bound = (&kappa / &l - BigRational::one()) / -&x;
            if bound < BigRational::from_integer(floor.clone()) {
                let at_floor = &kappa / (BigRational::one() - &x * BigRational::from_integer(floor.clone()));
                empty(at_floor, l.to_integer().to_biguint().expect("positive"))
            } else {
                let last = bound.floor().to_integer();
                let interval = BoundInterval { lower: BigRational::from_integer(floor.clone()), upper: Some(BigRational::from_integer(&last + 1)) };
                WindowShape::Bounded { first: floor, last, interval }
            }
        };
        OddWindow { rank, x, shape }
    }

    /// Least value allowed at odd rank `vals.len()` by monotonicity.
    fn atom_floor(&self, vals: &[BigUint]) -> BigUint {
        let n = vals.len();
        match self.mode {
            SearchMode::Binomial => &vals[n - 1] / &vals[n - 2],
            SearchMode::Sheffer(_) => self.atom(&self.fixed_b, n - 1),
        }
    }

    /// Structural annotations for choosing `ratio` at odd rank `vals.len()`.
    pub fn annotate(&self, vals: &[BigUint], ratio: &BigUint) -> Vec<Annotation> {
        let rank = vals.len();
        let mut out = Vec::new();
        if rank < 5 {
            return out;
        }
        let ratios: Vec<BigUint> = (1..rank).map(|k| &vals[k] / &vals[k - 1]).collect();
        match self.mode {
            SearchMode::Binomial => {
                if ratios[1..].iter().all(|a| *a == BigUint::from(2u32)) && *ratio == BigUint::from(3u32) {
                    out.push(Annotation::ButterflyThreeAtoms);
                }
            }
            SearchMode::Sheffer(BRule::Factorial) => {
                let boolean = ratios.iter().enumerate().all(|(i, c)| *c == BigUint::from(i + 1));
                if boolean && *ratio == BigUint::from(rank + 1) {
                    out.push(Annotation::SpecialAtomFunction);
                }
            }
            SearchMode::Sheffer(BRule::Butterfly) => {
                if (ratio % 2u32).is_one() {
                    out.push(Annotation::OddCoatomCount);
                }
            }
        }
        out
    }

    /// Extends the even prefix `vals` by `ratio` at the odd rank and checks
    /// the odd value, returning the extended sequence.
    pub fn extend_odd(&self, vals: &[BigUint], ratio: &BigUint) -> (Vec<BigUint>, Result<(), Rejection>) {
        let rank = vals.len();
        let mut ext = vals.to_vec();
        ext.push(ratio * &vals[rank - 1]);
        let value = Some(rat(&ext[rank]));
        let res = self.check(&ext, rank).map_err(|reason| Rejection { rank, value, reason });
        (ext, res)
    }

    /// Candidates at odd rank `vals.len()` whose next even value is accepted.
    pub fn candidates(&self, vals: &[BigUint], cap: Option<u64>) -> Result<Vec<OddCandidate>, ClassifierError> {
        let window = self.odd_window(vals);
        let (first, last) = match window.shape {
            WindowShape::Empty { .. } => return Ok(Vec::new()),
            WindowShape::Bounded { first, last, .. } => (first, last),
            WindowShape::Unbounded { first } => match cap {
                Some(c) => (first, BigInt::from(c)),
                None => return Err(ClassifierError::CapRequired { rank: vals.len() }),
            },
        };
        let mut out = Vec::new();
        let mut c = first;
        while c <= last {
            let ratio = c.to_biguint().expect("positive");
            let (ext, odd) = self.extend_odd(vals, &ratio);
            if odd.is_ok() {
                if let Ok(next) = self.solve_even(&ext) {
                    out.push(OddCandidate {
                        annotations: self.annotate(vals, &ratio),
                        value: ext[vals.len()].clone(),
                        ratio,
                        next_value: next,
                    });
                }
            }
            c += 1;
        }
        Ok(out)
    }
}

fn check_prefix(vals: &[BigUint], min_len: usize, parity_even: bool) -> Result<(), ClassifierError> {
    if vals.len() < min_len {
        return Err(ClassifierError::InvalidPrefix(format!("need at least {min_len} entries")));
    }
    if (vals.len() % 2 == 0) != parity_even {
        return Err(ClassifierError::InvalidPrefix(format!(
            "prefix must end at an {} rank",
            if parity_even { "odd" } else { "even" }
        )));
    }
    if vals.iter().any(Zero::is_zero) {
        return Err(ClassifierError::InvalidPrefix("entries must be positive".into()));
    }
    Ok(())
}

/// Solves for `B(2m)` from `B(0..2m)` and applies every constraint.
pub fn solve_even_binomial(prefix: &[BigUint]) -> Result<Result<BigUint, Rejection>, ClassifierError> {
    check_prefix(prefix, 2, true)?;
    let model = Model::new(SearchMode::Binomial, ConstraintSet::default(), prefix.len());
    Ok(model.solve_even(prefix))
}

/// Solves for `D(2m)` from `D(1), ..., D(2m-1)` with the given `B`.
pub fn solve_even_sheffer(rule: BRule, d: &[BigUint]) -> Result<Result<BigUint, Rejection>, ClassifierError> {
    let vals = with_d0(d);
    check_prefix(&vals, 2, true)?;
    let model = Model::new(SearchMode::Sheffer(rule), ConstraintSet::default(), vals.len());
    Ok(model.solve_even(&vals))
}

fn with_d0(d: &[BigUint]) -> Vec<BigUint> {
    std::iter::once(BigUint::one()).chain(d.iter().cloned()).collect()
}

/// Atom values at rank `2m+1` after `B(0..=2m)` whose next even value is
/// accepted, with structural annotations.
pub fn admissible_odd_binomial(prefix: &[BigUint]) -> Result<Vec<OddCandidate>, ClassifierError> {
    check_prefix(prefix, 3, false)?;
    let model = Model::new(SearchMode::Binomial, ConstraintSet::default(), prefix.len());
    model.candidates(prefix, None)
}

/// Coatom values at rank `2m+1` after `D(1), ..., D(2m)`; `cap` bounds
/// windows that are otherwise unbounded.
pub fn admissible_odd_sheffer(
    rule: BRule,
    d: &[BigUint],
    constraints: ConstraintSet,
    cap: Option<u64>,
) -> Result<Vec<OddCandidate>, ClassifierError> {
    let vals = with_d0(d);
    check_prefix(&vals, 3, false)?;
    let model = Model::new(SearchMode::Sheffer(rule), constraints, vals.len());
    model.candidates(&vals, cap)
}

/// `x` for the odd rank after the binomial prefix `B(0..=2m)`.
pub fn binomial_lemma_x(prefix: &[BigUint]) -> Result<BigRational, ClassifierError> {
    check_prefix(prefix, 3, false)?;
    Ok(Model::new(SearchMode::Binomial, ConstraintSet::default(), prefix.len()).lemma_x(prefix))
}

/// `x` for the odd rank after the Sheffer prefix `D(1), ..., D(2m)`.
pub fn sheffer_lemma_x(rule: BRule, d: &[BigUint]) -> Result<BigRational, ClassifierError> {
    let vals = with_d0(d);
    check_prefix(&vals, 3, false)?;
    Ok(Model::new(SearchMode::Sheffer(rule), ConstraintSet::default(), vals.len()).lemma_x(&vals))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regularity::rules;

    fn big(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn hypothetical_prefix_gives_non_integer() {
        let r = solve_even_binomial(&big(&[1, 1, 2, 5])).unwrap().unwrap_err();
        assert_eq!(r.rank, 4);
        assert_eq!(r.value, Some(q(40, 3)));
        assert_eq!(r.reason, PruneReason::NonInteger);
    }

    #[test]
    fn factorial_and_butterfly_solve() {
        let f = rules::factorial_sequence(8);
        for m in 1..=4 {
            assert_eq!(solve_even_binomial(&f[..2 * m]).unwrap().unwrap(), f[2 * m]);
        }
        let b = rules::butterfly_sequence(8);
        for m in 1..=4 {
            assert_eq!(solve_even_binomial(&b[..2 * m]).unwrap().unwrap(), b[2 * m]);
        }
    }

    #[test]
    fn rank_three_candidates() {
        let c = admissible_odd_binomial(&big(&[1, 1, 2])).unwrap();
        let atoms: Vec<BigUint> = c.iter().map(|c| c.ratio.clone()).collect();
        assert_eq!(atoms, big(&[2, 3]));
        assert_eq!(binomial_lemma_x(&big(&[1, 1, 2])).unwrap(), q(1, 4));
    }

    #[test]
    fn butterfly_prefix_flags_three_atoms() {
        let c = admissible_odd_binomial(&big(&[1, 1, 2, 4, 8])).unwrap();
        let atoms: Vec<(u64, bool)> =
            c.iter().map(|c| (u64::try_from(c.ratio.clone()).unwrap(), c.annotations.is_empty())).collect();
        assert_eq!(atoms, vec![(2, true), (3, false)]);
        assert_eq!(c[1].next_value, BigUint::from(96u32));
    }

    #[test]
    fn boolean_prefix_single_candidate() {
        let c = admissible_odd_binomial(&big(&[1, 1, 2, 6, 24])).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].ratio, BigUint::from(5u32));
        assert_eq!(binomial_lemma_x(&big(&[1, 1, 2, 6, 24])).unwrap(), q(1, 6));
    }

    #[test]
    fn sheffer_rank_three_window() {
        let c = admissible_odd_sheffer(BRule::Factorial, &big(&[1, 2]), ConstraintSet::default(), None).unwrap();
        let vals: Vec<u64> = c.iter().map(|c| u64::try_from(c.ratio.clone()).unwrap()).collect();
        assert_eq!(vals, vec![2, 3, 4, 5]);
        assert_eq!(sheffer_lemma_x(BRule::Factorial, &big(&[1, 2])).unwrap(), q(1, 6));
    }

    #[test]
    fn sheffer_even_solves_for_known_families() {
        for (d, rule) in [
            (rules::factorial_sequence(8), BRule::Factorial),
            (rules::sigma_star_sequence(8), BRule::Factorial),
            (rules::cubical_sequence(8), BRule::Factorial),
        ] {
            for m in 1..=4 {
                assert_eq!(solve_even_sheffer(rule, &d[1..2 * m]).unwrap().unwrap(), d[2 * m]);
            }
        }
        let d = solve_even_sheffer(BRule::Factorial, &big(&[1, 2, 8])).unwrap().unwrap();
        assert_eq!(d, BigUint::from(48u32));
        let d = solve_even_sheffer(BRule::Factorial, &big(&[1, 2, 10])).unwrap().unwrap();
        assert_eq!(d, BigUint::from(120u32));
    }

    #[test]
    fn butterfly_sheffer_window_is_unbounded() {
        let d = big(&[1, 2]);
        let e = admissible_odd_sheffer(BRule::Butterfly, &d, ConstraintSet::default(), None).unwrap_err();
        assert_eq!(e, ClassifierError::CapRequired { rank: 3 });
        let c = admissible_odd_sheffer(BRule::Butterfly, &d, ConstraintSet::default(), Some(5)).unwrap();
        assert!(c.iter().all(|c| c.next_value == &c.value * 2u32));
    }

    #[test]
    fn prefix_shape_is_checked() {
        assert!(solve_even_binomial(&big(&[1, 1, 2])).is_err());
        assert!(admissible_odd_binomial(&big(&[1, 1])).is_err());
    }
}
