//! Branch-and-bound classification of factorial sequences.
//!
//! The search walks the ranks upwards. At an odd rank the atom value
//! (binomial mode) or coatom value (Sheffer mode) is a free integer that is
//! enumerated within an exact rational window; at the following even rank
//! the Euler–Poincaré relation leaves a single admissible value, which is
//! solved for and tested against the enabled constraints. Every rejection is
//! kept in the tree together with its witness.
//!
//! Structural arguments that rule out branches the arithmetic leaves open are
//! not applied as pruning rules. They are attached as [`Annotation`]s, and the
//! corresponding statements are checked on concrete posets by the verifiers
//! in this module.

mod bounds;
mod enumerate;
mod search;
mod solve;
mod special;
mod structure;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::regularity::rules;

pub use bounds::{
    bound_corollary_a, bound_corollary_c, bound_corollary_c_second, second_form_reference, second_form_y,
    BoundInterval,
};
pub use enumerate::{enumerate_rank3_binomial, Rank3Class};
pub use search::{search_factorials, ClassificationTree, Leaf, NodeKind, NodeStatus, TreeNode};
pub use solve::{
    admissible_odd_binomial, admissible_odd_sheffer, binomial_lemma_x, sheffer_lemma_x, solve_even_binomial,
    solve_even_sheffer, OddCandidate, OddWindow, WindowShape,
};
pub use special::{no_special_atom_poset_check, RankCountWitness, SpecialAtomMethod, SpecialAtomVerdict};
pub use structure::{
    butterfly_factorization, coatom_pairing, three_atom_configurations, verify_structure, Factorization,
    FactorizationError, PairingFailure, StructureFamily, StructureVerdict, ThreeAtomCensus,
};

/// The fixed factorial function `B` used in Sheffer mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BRule {
    /// `B(n) = n!`.
    Factorial,
    /// `B(n) = 2^(n-1)`.
    Butterfly,
}

impl BRule {
    /// `B(0), ..., B(n)`.
    pub fn values(self, n: usize) -> Vec<BigUint> {
        match self {
            BRule::Factorial => rules::factorial_sequence(n),
            BRule::Butterfly => rules::butterfly_sequence(n),
        }
    }
}

impl fmt::Display for BRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BRule::Factorial => "factorial",
            BRule::Butterfly => "butterfly",
        })
    }
}

/// Which sequence is being classified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase", tag = "mode", content = "b_rule")]
pub enum SearchMode {
    /// The factorial function `B` of a binomial poset.
    Binomial,
    /// The function `D` of a Sheffer poset with the given `B`.
    Sheffer(BRule),
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchMode::Binomial => f.write_str("binomial"),
            SearchMode::Sheffer(r) => write!(f, "sheffer ({r})"),
        }
    }
}

/// Optional constraints. The even-rank Euler–Poincaré recurrence and
/// integrality of every value and ratio are always enforced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ConstraintSet {
    /// `A(n) >= A(n-1)` in binomial mode; `C(n) >= A(n-1)` in Sheffer mode.
    pub monotonicity: bool,
    /// `B(k)` divides `V(n) / V(n-k)` where `V` is the sequence searched.
    pub divisibility: bool,
    /// Every rank count `V(n) / (V(n-k) B(k))` is an integer.
    pub rank_counts: bool,
}

impl Default for ConstraintSet {
    fn default() -> Self {
        ConstraintSet { monotonicity: true, divisibility: true, rank_counts: true }
    }
}

impl ConstraintSet {
    /// Monotonicity only, without the divisibility families.
    pub fn without_divisibility() -> Self {
        ConstraintSet { monotonicity: true, divisibility: false, rank_counts: false }
    }
}

/// Why a value was rejected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum PruneReason {
    /// The Euler–Poincaré sum that determines the value is not positive.
    NonPositive {
        #[serde(serialize_with = "crate::bigjson::rational")]
        sum: BigRational,
    },
    /// The solved value is not an integer.
    NonInteger,
    /// The value is an integer but not a multiple of its predecessor.
    NonIntegralRatio,
    /// Binomial mode: the atom function decreases.
    AtomMonotonicity {
        #[serde(serialize_with = "crate::bigjson::rational")]
        ratio: BigRational,
        #[serde(serialize_with = "crate::bigjson::num")]
        minimum: BigUint,
    },
    /// Sheffer mode: `C(n) < A(n-1)`.
    FactA {
        #[serde(serialize_with = "crate::bigjson::rational")]
        ratio: BigRational,
        #[serde(serialize_with = "crate::bigjson::num")]
        minimum: BigUint,
    },
    /// `B(k)` does not divide `V(n) / V(n-k)`.
    FactB {
        k: usize,
        #[serde(serialize_with = "crate::bigjson::rational")]
        quotient: BigRational,
    },
    /// A rank count `V(n) / (V(n-k) B(k))` is not an integer.
    RankCount {
        k: usize,
        #[serde(serialize_with = "crate::bigjson::rational")]
        count: BigRational,
    },
    /// No integer lies in the window left by the bound corollary.
    BoundCorollary {
        #[serde(serialize_with = "crate::bigjson::rational")]
        lower: BigRational,
        #[serde(serialize_with = "crate::bigjson::opt_rational")]
        upper: Option<BigRational>,
    },
}

impl PruneReason {
    /// Short machine-friendly tag.
    pub fn tag(&self) -> &'static str {
        match self {
            PruneReason::NonPositive { .. } => "non_positive",
            PruneReason::NonInteger => "non_integer",
            PruneReason::NonIntegralRatio => "non_integral_ratio",
            PruneReason::AtomMonotonicity { .. } => "atom_monotonicity",
            PruneReason::FactA { .. } => "fact_a",
            PruneReason::FactB { .. } => "fact_b",
            PruneReason::RankCount { .. } => "rank_count",
            PruneReason::BoundCorollary { .. } => "bound_corollary",
        }
    }
}

impl fmt::Display for PruneReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PruneReason::NonPositive { sum } => write!(f, "determining sum {sum} is not positive"),
            PruneReason::NonInteger => f.write_str("value is not an integer"),
            PruneReason::NonIntegralRatio => f.write_str("value is not a multiple of its predecessor"),
            PruneReason::AtomMonotonicity { ratio, minimum } => {
                write!(f, "atom value {ratio} is below the previous {minimum}")
            }
            PruneReason::FactA { ratio, minimum } => write!(f, "coatom value {ratio} is below A = {minimum}"),
            PruneReason::FactB { k, quotient } => write!(f, "B({k}) does not divide: quotient {quotient}"),
            PruneReason::RankCount { k, count } => write!(f, "rank count for k = {k} is {count}"),
            PruneReason::BoundCorollary { lower, upper } => match upper {
                Some(u) => write!(f, "no integer in [{lower}, {u})"),
                None => write!(f, "no integer at or above {lower}"),
            },
        }
    }
}

/// A rejected value with its rank and, when defined, the solved value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rejection {
    pub rank: usize,
    #[serde(serialize_with = "crate::bigjson::opt_rational")]
    pub value: Option<BigRational>,
    #[serde(flatten)]
    pub reason: PruneReason,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Some(v) => write!(f, "rank {}: value {} rejected, {}", self.rank, v, self.reason),
            None => write!(f, "rank {}: no value, {}", self.rank, self.reason),
        }
    }
}

/// A branch the arithmetic admits but a structural argument excludes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Annotation {
    /// Three atoms after a butterfly prefix in binomial mode.
    ButterflyThreeAtoms,
    /// Coatom value `j + 2` after a Boolean prefix up to rank `j`.
    SpecialAtomFunction,
    /// An odd coatom value at an odd rank of at least five in butterfly mode.
    OddCoatomCount,
}

impl fmt::Display for Annotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Annotation::ButterflyThreeAtoms => "structurally excluded: three atoms above a butterfly prefix",
            Annotation::SpecialAtomFunction => "structurally excluded: no binomial poset with this atom function",
            Annotation::OddCoatomCount => "structurally excluded: coatoms pair up, so their number is even",
        })
    }
}

/// Errors from the classifier.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ClassifierError {
    #[error("odd rank {rank} admits infinitely many values; supply an odd cap")]
    CapRequired { rank: usize },
    #[error("maximum rank must be at least {minimum}, found {found}")]
    MaxRankTooSmall { minimum: usize, found: usize },
    #[error("invalid prefix: {0}")]
    InvalidPrefix(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("bound needs x > 0 and 0 < L <= U, found x = {x}, L = {l}")]
    BadBound { x: BigRational, l: BigRational },
    #[error(transparent)]
    Poset(#[from] crate::poset::PosetError),
    #[error(transparent)]
    Regularity(#[from] crate::regularity::RegularityError),
}

pub(crate) fn big(x: &BigUint) -> BigInt {
    BigInt::from(x.clone())
}

pub(crate) fn rat(x: &BigUint) -> BigRational {
    BigRational::from_integer(big(x))
}
