//! Binomial posets whose atom function is `1, 2, ..., j, j + 2`.
//!
//! Below rank `j + 1` such a poset has Boolean intervals only. In the model
//! checked here every element of rank at most `j - 1` is determined by its
//! set of atoms. A rank `j + 1` interval then has `j + 2` atoms and `j + 2`
//! coatoms, each coatom missing exactly two atoms, and every atom is missed
//! by exactly two coatoms. The missing pairs form a loopless 2-regular
//! multigraph on the atoms, so up to relabelling the candidates are indexed
//! by the cycle types of such multigraphs.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::Serialize;

use crate::poset::Poset;
use crate::regularity::{analyze_binomial, is_eulerian, rules};

use super::ClassifierError;

/// How the verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpecialAtomMethod {
    /// A rank count of the atom function is not an integer.
    RankCount,
    /// Every candidate poset was built and its factorial data computed.
    PosetSearch,
    /// Every candidate was tested on the element counts at ranks `j - 1`
    /// and `j - 2` of the top interval.
    LocalCounts,
}

/// A non-integral rank count `B(n) / (B(k) B(n - k))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankCountWitness {
    pub n: usize,
    pub k: usize,
    #[serde(serialize_with = "crate::bigjson::rational")]
    pub count: BigRational,
}

/// Outcome of the check for one `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialAtomVerdict {
    pub j: usize,
    /// `A(1), ..., A(j + 1)`.
    #[serde(serialize_with = "crate::bigjson::nums")]
    pub atom_function: Vec<BigUint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank_count_witness: Option<RankCountWitness>,
    /// Number of multigraph cycle types examined.
    pub searched: usize,
    /// Cycle types whose poset has the required factorial data.
    pub surviving: Vec<Vec<usize>>,
    pub method: SpecialAtomMethod,
}

impl SpecialAtomVerdict {
    /// Whether no poset with this atom function exists in the model.
    pub fn excluded(&self) -> bool {
        self.rank_count_witness.is_some() || self.surviving.is_empty()
    }
}

/// Largest `j` for which candidate posets are built in full.
const POSET_SEARCH_LIMIT: usize = 6;

fn factorials(j: usize) -> Vec<BigUint> {
    let mut b = rules::factorial_sequence(j);
    let last = &b[j] * BigUint::from(j + 2);
    b.push(last);
    b
}

fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in (2..=max.min(n)).rev() {
        for mut rest in partitions(n - p, p) {
            rest.insert(0, p);
            out.push(rest);
        }
    }
    out
}

/// The multigraph with the given cycle type; a 2-cycle is a doubled edge.
fn cycle_edges(cycles: &[usize]) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    let mut start = 0;
    for &len in cycles {
        for i in 0..len {
            edges.push((start + i, start + (i + 1) % len));
        }
        start += len;
    }
    edges
}

fn candidate_poset(j: usize, edges: &[(usize, usize)]) -> Result<Poset, ClassifierError> {
    let v = j + 2;
    let full = (1usize << v) - 1;
    let coatoms: Vec<usize> = edges.iter().map(|&(a, b)| full & !(1 << a) & !(1 << b)).collect();
    let mut index = vec![usize::MAX; 1 << v];
    let mut sets = Vec::new();
    for s in 0usize..(1 << v) {
        if (s.count_ones() as usize) < j && coatoms.iter().any(|&c| s & c == s) {
            index[s] = sets.len();
            sets.push(s);
        }
    }
    let first_coatom = sets.len();
    let top = first_coatom + coatoms.len();
    let mut covers = Vec::new();
    for &s in &sets {
        for x in 0..v {
            let t = s | (1 << x);
            if t != s && index[t] != usize::MAX {
                covers.push((index[s], index[t]));
            }
        }
        if s.count_ones() as usize == j - 1 {
            for (i, &c) in coatoms.iter().enumerate() {
                if s & c == s {
                    covers.push((index[s], first_coatom + i));
                }
            }
        }
    }
    for i in 0..coatoms.len() {
        covers.push((first_coatom + i, top));
    }
    Ok(Poset::from_cover_relations(top + 1, covers)?)
}

fn poset_survives(j: usize, edges: &[(usize, usize)], b: &[BigUint]) -> Result<bool, ClassifierError> {
    let p = candidate_poset(j, edges)?;
    Ok(analyze_binomial(&p).is_ok_and(|f| f.values() == b) && is_eulerian(&p)?.eulerian)
}

/// Element counts at ranks `j - 1` and `j - 2`: each rank `j - 1` element
/// lies below two coatoms and each rank `j - 2` element below three rank
/// `j - 1` elements.
fn local_counts_survive(j: usize, edges: &[(usize, usize)]) -> bool {
    let v = j + 2;
    let inside = |set: usize| edges.iter().filter(|&&(a, b)| set >> a & 1 == 1 && set >> b & 1 == 1).count();
    let triples: Vec<usize> = (0usize..1 << v).filter(|s| s.count_ones() == 3).collect();
    if triples.iter().any(|&t| !matches!(inside(t), 0 | 2)) {
        return false;
    }
    if j < 3 {
        return true;
    }
    (0usize..1 << v).filter(|s| s.count_ones() == 4 && inside(*s) > 0).all(|u| {
        triples.iter().filter(|&&t| t & u == t && inside(t) > 0).count() == 3
    })
}

/// Decides whether a binomial poset with atom function
/// `1, 2, ..., j, j + 2` can exist, by rank counts or by exhausting the
/// multigraph model.
pub fn no_special_atom_poset_check(j: usize) -> Result<SpecialAtomVerdict, ClassifierError> {
    if !(2..=12).contains(&j) {
        return Err(ClassifierError::InvalidParameter(format!("j must lie in 2..=12, found {j}")));
    }
    let b = factorials(j);
    let atom_function = (1..=j + 1).map(|n| &b[n] / &b[n - 1]).collect();
    let witness = (2..=j + 1).find_map(|n| {
        (1..n).find_map(|k| {
            let count = BigRational::new(BigInt::from(b[n].clone()), BigInt::from(&b[k] * &b[n - k]));
            (!count.is_integer()).then_some(RankCountWitness { n, k, count })
        })
    });
    let mut verdict = SpecialAtomVerdict {
        j,
        atom_function,
        rank_count_witness: None,
        searched: 0,
        surviving: Vec::new(),
        method: SpecialAtomMethod::RankCount,
    };
    if witness.is_some() {
        verdict.rank_count_witness = witness;
        return Ok(verdict);
    }
    verdict.method = if j <= POSET_SEARCH_LIMIT { SpecialAtomMethod::PosetSearch } else { SpecialAtomMethod::LocalCounts };
    for cycles in partitions(j + 2, j + 2) {
        verdict.searched += 1;
        let edges = cycle_edges(&cycles);
        let alive = match verdict.method {
            SpecialAtomMethod::PosetSearch => poset_survives(j, &edges, &b)?,
            _ => local_counts_survive(j, &edges),
        };
        if alive {
            verdict.surviving.push(cycles);
        }
    }
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn composite_j_plus_one_fails_rank_counts() {
        let v = no_special_atom_poset_check(3).unwrap();
        assert_eq!(v.method, SpecialAtomMethod::RankCount);
        assert_eq!(v.rank_count_witness, Some(RankCountWitness { n: 4, k: 2, count: q(15, 2) }));
        let v = no_special_atom_poset_check(5).unwrap();
        assert_eq!(v.rank_count_witness, Some(RankCountWitness { n: 6, k: 2, count: q(35, 2) }));
        for j in [7, 8, 9, 11] {
            assert!(no_special_atom_poset_check(j).unwrap().rank_count_witness.is_some(), "j = {j}");
        }
    }

    #[test]
    fn prime_j_plus_one_is_searched() {
        let v = no_special_atom_poset_check(4).unwrap();
        assert_eq!(v.method, SpecialAtomMethod::PosetSearch);
        assert_eq!(v.searched, 4);
        assert!(v.excluded());
        assert_eq!(no_special_atom_poset_check(6).unwrap().searched, 7);
        assert!(no_special_atom_poset_check(6).unwrap().excluded());
        let big = no_special_atom_poset_check(10).unwrap();
        assert_eq!(big.method, SpecialAtomMethod::LocalCounts);
        assert!(big.excluded());
    }

    #[test]
    fn rank_three_case_has_polygons() {
        let v = no_special_atom_poset_check(2).unwrap();
        assert_eq!(v.surviving, vec![vec![4], vec![2, 2]]);
    }

    #[test]
    fn local_counts_agree_with_posets() {
        for j in [2, 4, 6] {
            let b = factorials(j);
            for cycles in partitions(j + 2, j + 2) {
                let edges = cycle_edges(&cycles);
                let full = poset_survives(j, &edges, &b).unwrap();
                assert!(!full || local_counts_survive(j, &edges), "{cycles:?}");
            }
        }
    }
}
