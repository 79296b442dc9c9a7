//! Graded posets and the factorial profiles of binomial and Sheffer posets.
//!
//! The crate is organised in layers:
//!
//! * [`poset`] stores finite posets as cover relations and answers order,
//!   rank, interval, Möbius and isomorphism queries.
//! * [`regularity`] extracts factorial profiles, checks the Eulerian property
//!   and evaluates the Euler–Poincaré residuals and generating-function
//!   Möbius series in exact arithmetic.
//! * [`constructions`] and [`cw`] build the standard families and the
//!   regular CW complexes whose face posets serve as examples.
//! * [`classifier`] runs the branch-and-bound search over factorial
//!   sequences and the structural verifiers that accompany it.
//! * [`cli`] drives everything from the command line.

pub mod poset;

pub use poset::{is_isomorphic, IntervalHandle, Poset, PosetError, RankData};
pub mod regularity;

mod bigjson;
pub mod constructions;
pub mod cw;
pub mod classifier;
pub mod verify;
pub mod cli;
