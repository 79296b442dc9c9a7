//! Factorial profiles, Eulerian checks and Euler–Poincaré arithmetic.
//!
//! A graded poset is *triangular* when the number of maximal chains of an
//! interval `[x, y]` depends only on `(rank x, rank y)`, *Sheffer* when it
//! depends only on the length for intervals above the minimum and only on
//! `rank y` for intervals starting at the minimum, and *binomial* when it
//! depends only on the length everywhere. The chain counts are recorded as
//! `B(n)` (any interval of length `n`) and `D(n)` (intervals `[0̂, y]` with
//! `rank y = n`).

mod eulerian;
mod report;
pub mod rules;
mod series;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::poset::{Poset, PosetError};

pub use eulerian::{even_rank_eulerian_suffices, is_eulerian, EulerianVerdict, EvenRankCheck, MobiusWitness};
pub use report::{analyze, AnalysisReport, ProfileKind};
pub use series::{
    binomial_ep_residual, mobius_from_series, sheffer_ep_residual, sheffer_mobius_from_series, Series,
    SeriesError,
};

/// An interval together with its number of maximal chains.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntervalCount {
    pub bottom: usize,
    pub top: usize,
    #[serde(serialize_with = "crate::bigjson::num")]
    pub chains: BigUint,
}

impl fmt::Display for IntervalCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}] has {} maximal chains", self.bottom, self.top, self.chains)
    }
}

/// Errors raised while extracting profiles.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RegularityError {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("not binomial: intervals of length {length} differ ({first}; {second})")]
    NotBinomial { length: usize, first: IntervalCount, second: IntervalCount },
    #[error("not Sheffer: intervals of length {length} differ ({first}; {second})")]
    NotSheffer { length: usize, first: IntervalCount, second: IntervalCount },
    #[error("not triangular: intervals from rank {lower_rank} to rank {upper_rank} differ ({first}; {second})")]
    NotTriangular { lower_rank: usize, upper_rank: usize, first: IntervalCount, second: IntervalCount },
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
}

/// The factorial function `B(0), ..., B(n)` of a binomial poset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorialProfile {
    #[serde(serialize_with = "crate::bigjson::nums")]
    values: Vec<BigUint>,
}

impl FactorialProfile {
    /// Validates `B(0) = B(1) = 1`, positivity and integrality of the atom
    /// function `B(n) / B(n-1)`.
    pub fn new(values: Vec<BigUint>) -> Result<Self, RegularityError> {
        check_factorial(&values)?;
        Ok(FactorialProfile { values })
    }

    /// `B(0), ..., B(n)`.
    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    /// Largest `n` for which `B(n)` is known.
    pub fn rank(&self) -> usize {
        self.values.len().saturating_sub(1)
    }

    /// `B(n)`.
    pub fn get(&self, n: usize) -> Option<&BigUint> {
        self.values.get(n)
    }

    /// The atom function `A(n) = B(n) / B(n-1)` for `n = 1..=rank`.
    pub fn atoms(&self) -> Vec<BigUint> {
        ratios(&self.values, 1)
    }
}

/// The pair `(B, D)` of a Sheffer poset of rank `N`: `B(0..N-1)` and
/// `D(1..N)`, stored with `D(0) = 1` at index 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShefferProfile {
    #[serde(serialize_with = "crate::bigjson::nums")]
    b: Vec<BigUint>,
    #[serde(serialize_with = "crate::bigjson::nums")]
    d: Vec<BigUint>,
}

impl ShefferProfile {
    /// Validates both sequences; `d[0]` must be 1 and `D(1) = 1`.
    pub fn new(b: Vec<BigUint>, d: Vec<BigUint>) -> Result<Self, RegularityError> {
        check_factorial(&b)?;
        if d.first().map_or(true, |x| !x.is_one()) || d.get(1).is_some_and(|x| !x.is_one()) {
            return Err(RegularityError::InvalidProfile("D(0) and D(1) must equal 1".into()));
        }
        if d.iter().any(Zero::is_zero) {
            return Err(RegularityError::InvalidProfile("D must be positive".into()));
        }
        if d.len() > b.len() + 1 {
            return Err(RegularityError::InvalidProfile(format!(
                "D is known to rank {} but B only to rank {}",
                d.len() - 1,
                b.len().saturating_sub(1)
            )));
        }
        Ok(ShefferProfile { b, d })
    }

    /// `B(0), ...`.
    pub fn b(&self) -> &[BigUint] {
        &self.b
    }

    /// `D(0) = 1, D(1), ..., D(N)`.
    pub fn d(&self) -> &[BigUint] {
        &self.d
    }

    /// Rank `N` of the poset the profile came from.
    pub fn rank(&self) -> usize {
        self.d.len().saturating_sub(1)
    }

    /// The atom function of the upper intervals, `A(n) = B(n) / B(n-1)`.
    pub fn atoms(&self) -> Vec<BigUint> {
        ratios(&self.b, 1)
    }

    /// The coatom function `C(n) = D(n) / D(n-1)` for `n = 1..=N`.
    pub fn coatoms(&self) -> Vec<BigUint> {
        ratios(&self.d, 1)
    }
}

/// The two-index chain counts `B(n, m)` of a triangular poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangularTable {
    entries: BTreeMap<(usize, usize), BigUint>,
    rank: usize,
}

impl TriangularTable {
    /// `B(n, m)` when an interval from rank `n` to rank `m` exists.
    pub fn get(&self, n: usize, m: usize) -> Option<&BigUint> {
        self.entries.get(&(n, m))
    }

    /// Rank of the underlying poset.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Rows of the table; `rows()[n][m - n]` is `B(n, m)`.
    pub fn rows(&self) -> Vec<Vec<Option<BigUint>>> {
        (0..=self.rank)
            .map(|n| (n..=self.rank).map(|m| self.get(n, m).cloned()).collect())
            .collect()
    }
}

fn ratios(v: &[BigUint], from: usize) -> Vec<BigUint> {
    (from..v.len()).map(|n| &v[n] / &v[n - 1]).collect()
}

fn check_factorial(values: &[BigUint]) -> Result<(), RegularityError> {
    for (n, v) in values.iter().enumerate().take(2) {
        if !v.is_one() {
            return Err(RegularityError::InvalidProfile(format!("B({n}) must equal 1, found {v}")));
        }
    }
    for n in 2..values.len() {
        if values[n].is_zero() || !(&values[n] % &values[n - 1]).is_zero() {
            return Err(RegularityError::InvalidProfile(format!(
                "B({}) = {} is not a positive multiple of B({}) = {}",
                n,
                values[n],
                n - 1,
                values[n - 1]
            )));
        }
    }
    Ok(())
}

/// Chain counts of every interval grouped by the ranks of its endpoints,
/// keeping a witness pair for the first disagreement in each group.
struct ChainCensus {
    rank: usize,
    first: BTreeMap<(usize, usize), IntervalCount>,
    conflict: BTreeMap<(usize, usize), IntervalCount>,
}

impl ChainCensus {
    fn new(p: &Poset) -> Result<Self, PosetError> {
        let rd = p.rank_data()?;
        let mut first: BTreeMap<(usize, usize), IntervalCount> = BTreeMap::new();
        let mut conflict = BTreeMap::new();
        for x in p.canonical_order() {
            let counts = p.chain_counts_from(x);
            for y in p.up_set(x).ones() {
                let key = (rd.rank(x), rd.rank(y));
                let here = IntervalCount { bottom: x, top: y, chains: counts[y].clone() };
                match first.get(&key) {
                    None => {
                        first.insert(key, here);
                    }
                    Some(f) if f.chains != here.chains => {
                        conflict.entry(key).or_insert(here);
                    }
                    Some(_) => {}
                }
            }
        }
        Ok(ChainCensus {
            rank: rd.max_rank(),
            first,
            conflict,
        })
    }

    fn triangular(&self) -> Result<TriangularTable, RegularityError> {
        if let Some((&(n, m), second)) = self.conflict.iter().next() {
            return Err(RegularityError::NotTriangular {
                lower_rank: n,
                upper_rank: m,
                first: self.first[&(n, m)].clone(),
                second: second.clone(),
            });
        }
        let entries = self.first.iter().map(|(&k, c)| (k, c.chains.clone())).collect();
        Ok(TriangularTable { entries, rank: self.rank })
    }

    /// Common count of all intervals of length `k` whose lower rank lies in
    /// `rows`, or a disagreeing pair.
    fn by_length(
        &self,
        k: usize,
        rows: impl Iterator<Item = usize>,
    ) -> Result<Option<&IntervalCount>, (IntervalCount, IntervalCount)> {
        let mut seen: Option<&IntervalCount> = None;
        for n in rows {
            if let Some(c) = self.conflict.get(&(n, n + k)) {
                return Err((self.first[&(n, n + k)].clone(), c.clone()));
            }
            if let Some(c) = self.first.get(&(n, n + k)) {
                match seen {
                    Some(s) if s.chains != c.chains => return Err((s.clone(), c.clone())),
                    Some(_) => {}
                    None => seen = Some(c),
                }
            }
        }
        Ok(seen)
    }

    fn binomial(&self) -> Result<FactorialProfile, RegularityError> {
        let mut values = Vec::with_capacity(self.rank + 1);
        for k in 0..=self.rank {
            match self.by_length(k, 0..=self.rank - k) {
                Ok(Some(c)) => values.push(c.chains.clone()),
                Ok(None) => unreachable!("every length up to the rank occurs"),
                Err((first, second)) => {
                    return Err(RegularityError::NotBinomial { length: k, first, second })
                }
            }
        }
        FactorialProfile::new(values)
    }

    fn sheffer(&self) -> Result<ShefferProfile, RegularityError> {
        let mut b = vec![BigUint::one()];
        for k in 1..self.rank {
            match self.by_length(k, 1..=self.rank - k) {
                Ok(Some(c)) => b.push(c.chains.clone()),
                Ok(None) => unreachable!("every length below the rank occurs above the minimum"),
                Err((first, second)) => return Err(RegularityError::NotSheffer { length: k, first, second }),
            }
        }
        let mut d = vec![BigUint::one()];
        for m in 1..=self.rank {
            if let Some(c) = self.conflict.get(&(0, m)) {
                return Err(RegularityError::NotSheffer {
                    length: m,
                    first: self.first[&(0, m)].clone(),
                    second: c.clone(),
                });
            }
            d.push(self.first[&(0, m)].chains.clone());
        }
        ShefferProfile::new(b, d)
    }
}

fn census(p: &Poset) -> Result<ChainCensus, RegularityError> {
    p.require_bounded()?;
    Ok(ChainCensus::new(p)?)
}

/// Extracts `B(0..=N)` from a bounded graded poset in which chain counts
/// depend only on interval length.
pub fn analyze_binomial(p: &Poset) -> Result<FactorialProfile, RegularityError> {
    census(p)?.binomial()
}

/// Extracts `(B, D)` from a bounded graded Sheffer poset.
pub fn analyze_sheffer(p: &Poset) -> Result<ShefferProfile, RegularityError> {
    census(p)?.sheffer()
}

/// Extracts the table `B(n, m)` from a graded triangular poset.
pub fn analyze_triangular(p: &Poset) -> Result<TriangularTable, RegularityError> {
    Ok(ChainCensus::new(p)?.triangular()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    fn diamond() -> Poset {
        Poset::from_cover_relations(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn diamond_is_binomial() {
        let b = analyze_binomial(&diamond()).unwrap();
        assert_eq!(b.values(), big(&[1, 1, 2]).as_slice());
        assert_eq!(b.atoms(), big(&[1, 2]));
    }

    #[test]
    fn profile_validation() {
        assert!(FactorialProfile::new(big(&[1, 1, 2, 6])).is_ok());
        assert!(FactorialProfile::new(big(&[1, 2])).is_err());
        assert!(FactorialProfile::new(big(&[1, 1, 2, 5])).is_err());
        assert!(ShefferProfile::new(big(&[1, 1]), big(&[1, 1, 2])).is_ok());
        assert!(ShefferProfile::new(big(&[1, 1]), big(&[1, 2, 2])).is_err());
    }

    #[test]
    fn chain_with_extra_branch_is_not_binomial() {
        // 0 < a < 1, 0 < b < c < 1 is not graded; use a graded non-regular one:
        // 0 < a, b < c (c covers both), 0 < d < e, top covers c and e
        let p = Poset::from_cover_relations(
            7,
            [(0, 1), (0, 2), (1, 3), (2, 3), (0, 4), (4, 5), (3, 6), (5, 6)],
        )
        .unwrap();
        match analyze_binomial(&p).unwrap_err() {
            RegularityError::NotBinomial { length, first, second } => {
                assert_eq!(length, 2);
                assert_ne!(first.chains, second.chains);
            }
            e => panic!("unexpected {e:?}"),
        }
        let t = analyze_triangular(&p).unwrap_err();
        assert!(matches!(t, RegularityError::NotTriangular { lower_rank: 0, upper_rank: 2, .. }));
    }
}
