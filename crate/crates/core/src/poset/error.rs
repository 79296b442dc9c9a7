use std::fmt;

use thiserror::Error;

/// Two lower covers of one element that sit at different ranks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingWitness {
    pub element: usize,
    pub lower_a: usize,
    pub rank_a: usize,
    pub lower_b: usize,
    pub rank_b: usize,
}

impl fmt::Display for GradingWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "element {} covers {} (rank {}) and {} (rank {})",
            self.element, self.lower_a, self.rank_a, self.lower_b, self.rank_b
        )
    }
}

/// Errors raised while building or querying a poset.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("cover pair {pair:?} refers to an element outside 0..{size}")]
    IndexOutOfRange { pair: (usize, usize), size: usize },
    #[error("element {0} covers itself")]
    SelfLoop(usize),
    #[error("cover pair ({0}, {1}) is listed twice")]
    DuplicateCover(usize, usize),
    #[error("cover relation contains the cycle {cycle:?}")]
    CycleDetected { cycle: Vec<usize> },
    #[error("pair ({lower}, {upper}) is implied by the chain through {via}")]
    NotReduced { lower: usize, upper: usize, via: usize },
    #[error("poset is not graded: {0}")]
    NotGraded(GradingWitness),
    #[error("poset is not bounded: minima {minima:?}, maxima {maxima:?}")]
    NotBounded { minima: Vec<usize>, maxima: Vec<usize> },
    #[error("{lower} is not below {upper}")]
    NotComparable { lower: usize, upper: usize },
    #[error("expected {expected} entries, found {found}")]
    LabelCount { expected: usize, found: usize },
    #[error("set is not an order ideal: {below} is below {member} but missing")]
    NotAnIdeal { member: usize, below: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed poset document: {0}")]
    Parse(String),
}
