//! Structural verification of concrete posets against the classification.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::constructions::{boolean_lattice, butterfly, butterfly_with_stem, cubical_lattice, sigma_star_boolean};
use crate::poset::{is_isomorphic, Poset, PosetError};
use crate::regularity::{analyze_binomial, analyze_sheffer, is_eulerian, rules};

use super::ClassifierError;

/// A family a poset can be identified with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureFamily {
    Boolean,
    Butterfly,
    SigmaStarBoolean,
    Cubical,
}

/// What the classification says about a given poset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum StructureVerdict {
    /// Isomorphic to the member of `family` with rank `rank`.
    Isomorphic { family: StructureFamily, rank: usize },
    /// Same factorial data as `family` without being isomorphic to it.
    ProfileOnly { family: StructureFamily, rank: usize, lattice: bool },
    /// A Sheffer poset with butterfly upper intervals that factors as a rank
    /// product with the butterfly with stem.
    ButterflyFactorized { rank: usize, quotient_size: usize, pairs: usize },
    NotEulerian,
    /// The classification makes no statement about this poset.
    NoClaim { reason: String },
    /// The poset disagrees with the classification.
    Contradiction { reason: String },
}

/// A factorization `P = rank_product(butterfly_with_stem(n), Q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub rank: usize,
    /// `Q`, re-indexed; `kept[i]` is the element of `P` it came from.
    pub quotient: Poset,
    pub kept: Vec<usize>,
    /// Twin pairs of `P` at ranks `3..n`.
    pub pairs: Vec<(usize, usize)>,
    /// Isomorphism from the rank product onto `P`.
    pub isomorphism: Vec<usize>,
}

/// Why a butterfly factorization fails.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FactorizationError {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("rank {0} is below 4")]
    RankTooSmall(usize),
    #[error("element {element} at rank {rank} lies in a twin class of size {class_size}")]
    NoPairing { element: usize, rank: usize, class_size: usize },
    #[error("the rank product with the butterfly with stem is not isomorphic to the poset")]
    NotIsomorphic,
}

/// A coatom whose lower covers are shared by an odd number of coatoms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairingFailure {
    pub coatom: usize,
    pub class_size: usize,
}

fn twin_classes(p: &Poset, members: &[usize]) -> Vec<Vec<usize>> {
    let mut classes: BTreeMap<(Vec<usize>, Vec<usize>), Vec<usize>> = BTreeMap::new();
    for &x in members {
        classes.entry((p.lower_covers(x).to_vec(), p.upper_covers(x).to_vec())).or_default().push(x);
    }
    classes.into_values().collect()
}

/// Pairs the coatoms of a bounded poset by their sets of lower covers.
pub fn coatom_pairing(p: &Poset) -> Result<Result<Vec<(usize, usize)>, PairingFailure>, PosetError> {
    let (_, top) = p.require_bounded()?;
    let mut classes: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for &c in p.lower_covers(top) {
        classes.entry(p.lower_covers(c).to_vec()).or_default().push(c);
    }
    let mut pairs = Vec::new();
    for class in classes.into_values() {
        if class.len() % 2 == 1 {
            return Ok(Err(PairingFailure { coatom: class[0], class_size: class.len() }));
        }
        pairs.extend(class.chunks(2).map(|c| (c[0], c[1])));
    }
    Ok(Ok(pairs))
}

/// Splits off the butterfly factor: elements at ranks `3..n` with equal
/// lower and upper covers are paired, one of each pair is dropped to form
/// `Q`, and the rank product is checked against `P` up to isomorphism.
pub fn butterfly_factorization(p: &Poset) -> Result<Factorization, FactorizationError> {
    p.require_bounded()?;
    let rd = p.rank_data()?;
    let n = rd.max_rank();
    if n < 4 {
        return Err(FactorizationError::RankTooSmall(n));
    }
    let mut pairs = Vec::new();
    let mut dropped = vec![false; p.size()];
    for r in 3..n {
        for class in twin_classes(p, rd.level(r)) {
            if class.len() % 2 == 1 {
                return Err(FactorizationError::NoPairing { element: class[0], rank: r, class_size: class.len() });
            }
            for c in class.chunks(2) {
                pairs.push((c[0], c[1]));
                dropped[c[1]] = true;
            }
        }
    }
    let kept: Vec<usize> = p.canonical_order().into_iter().filter(|&x| !dropped[x]).collect();
    let quotient = p.induced(&kept)?;
    let product = butterfly_with_stem(n)?.rank_product(&quotient)?;
    let isomorphism = is_isomorphic(&product, p).ok_or(FactorizationError::NotIsomorphic)?;
    Ok(Factorization { rank: n, quotient, kept, pairs, isomorphism })
}

fn identify(p: &Poset, family: StructureFamily, model: &Poset, rank: usize) -> StructureVerdict {
    if is_isomorphic(p, model).is_some() {
        StructureVerdict::Isomorphic { family, rank }
    } else {
        StructureVerdict::Contradiction {
            reason: format!("factorial data of the {family:?} family at rank {rank} but not isomorphic to it"),
        }
    }
}

fn prefix_matches(values: &[num_bigint::BigUint], expected: Vec<num_bigint::BigUint>) -> bool {
    values == &expected[..values.len().min(expected.len())]
}

/// Places a bounded, graded poset within the classification.
///
/// Eulerian binomial posets of rank at least 4 must be Boolean or
/// butterfly posets. Eulerian Sheffer posets with factorial upper intervals
/// are compared with the Boolean, dual-suspended Boolean and cubical
/// families; those with butterfly upper intervals are factorized.
pub fn verify_structure(p: &Poset) -> Result<StructureVerdict, ClassifierError> {
    p.require_bounded()?;
    let n = p.rank_data()?.max_rank();
    if !is_eulerian(p)?.eulerian {
        return Ok(StructureVerdict::NotEulerian);
    }
    if let Some(profile) = analyze_binomial(p).ok().filter(|_| n >= 4) {
        let b = profile.values();
        return Ok(if b == &rules::factorial_sequence(n)[..] {
            identify(p, StructureFamily::Boolean, &boolean_lattice(n), n)
        } else if b == &rules::butterfly_sequence(n)[..] {
            identify(p, StructureFamily::Butterfly, &butterfly(n), n)
        } else {
            let shown: Vec<String> = b.iter().map(ToString::to_string).collect();
            StructureVerdict::Contradiction {
                reason: format!("Eulerian binomial poset with B = [{}]", shown.join(", ")),
            }
        });
    }
    let Ok(profile) = analyze_sheffer(p) else {
        return Ok(StructureVerdict::NoClaim { reason: "neither binomial nor Sheffer".into() });
    };
    let (b, d) = (profile.b(), profile.d());
    if prefix_matches(b, rules::butterfly_sequence(n)) && !prefix_matches(b, rules::factorial_sequence(n)) {
        if n < 4 {
            return Ok(StructureVerdict::NoClaim { reason: format!("Sheffer poset of rank {n} below 4") });
        }
        return Ok(match butterfly_factorization(p) {
            Ok(f) => StructureVerdict::ButterflyFactorized { rank: n, quotient_size: f.quotient.size(), pairs: f.pairs.len() },
            Err(e) => StructureVerdict::Contradiction { reason: format!("butterfly upper intervals: {e}") },
        });
    }
    if !prefix_matches(b, rules::factorial_sequence(n)) {
        return Ok(StructureVerdict::NoClaim { reason: "Sheffer poset with other upper intervals".into() });
    }
    if n < 3 {
        return Ok(StructureVerdict::NoClaim { reason: format!("Sheffer poset of rank {n} below 3") });
    }
    let lattice = p.is_lattice()?.is_ok();
    Ok(if d == &rules::factorial_sequence(n)[..] {
        identify(p, StructureFamily::Boolean, &boolean_lattice(n), n)
    } else if d == &rules::sigma_star_sequence(n)[..] {
        identify(p, StructureFamily::SigmaStarBoolean, &sigma_star_boolean(n - 1), n)
    } else if d == &rules::cubical_sequence(n)[..] {
        if lattice {
            identify(p, StructureFamily::Cubical, &cubical_lattice(n - 1), n)
        } else {
            StructureVerdict::ProfileOnly { family: StructureFamily::Cubical, rank: n, lattice }
        }
    } else {
        StructureVerdict::NoClaim { reason: "Sheffer factorial data outside the three families".into() }
    })
}

/// Census of the bipartite graphs between three atoms and three rank-2
/// elements in which every vertex has degree 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ThreeAtomCensus {
    /// Number of such graphs.
    pub regular: usize,
    /// How many of them contain two rank-2 elements over the same two atoms.
    pub with_square: usize,
}

/// Exhausts the 3 by 3 incidence matrices with all row and column sums 2.
pub fn three_atom_configurations() -> ThreeAtomCensus {
    let mut census = ThreeAtomCensus { regular: 0, with_square: 0 };
    for bits in 0u32..(1 << 9) {
        let at = |i: usize, j: usize| bits >> (3 * i + j) & 1 == 1;
        let rows = (0..3).all(|i| (0..3).filter(|&j| at(i, j)).count() == 2);
        let cols = (0..3).all(|j| (0..3).filter(|&i| at(i, j)).count() == 2);
        if !(rows && cols) {
            continue;
        }
        census.regular += 1;
        let square = (0..3).any(|i1| {
            (i1 + 1..3).any(|i2| (0..3).any(|j1| (j1 + 1..3).any(|j2| at(i1, j1) && at(i1, j2) && at(i2, j1) && at(i2, j2))))
        });
        if square {
            census.with_square += 1;
        }
    }
    census
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{chain, deformed_cubical, doubled, glued_ngons, tree_interval};

    #[test]
    fn standard_families_are_identified() {
        let cases = [
            (boolean_lattice(4), StructureFamily::Boolean, 4),
            (butterfly(5), StructureFamily::Butterfly, 5),
            (sigma_star_boolean(3), StructureFamily::SigmaStarBoolean, 4),
            (cubical_lattice(3), StructureFamily::Cubical, 4),
        ];
        for (p, family, rank) in cases {
            assert_eq!(verify_structure(&p).unwrap(), StructureVerdict::Isomorphic { family, rank });
        }
    }

    #[test]
    fn deformed_cubical_matches_profile_only() {
        let p = deformed_cubical(4).unwrap();
        assert_eq!(
            verify_structure(&p).unwrap(),
            StructureVerdict::ProfileOnly { family: StructureFamily::Cubical, rank: 4, lattice: false }
        );
    }

    #[test]
    fn doubled_trees_factorize() {
        let p = doubled(&tree_interval(&[1, 3, 1], 4).unwrap()).unwrap();
        match verify_structure(&p).unwrap() {
            StructureVerdict::ButterflyFactorized { rank, pairs, .. } => {
                assert_eq!(rank, 4);
                assert_eq!(pairs, 1);
            }
            other => panic!("unexpected {other:?}"),
        }
        let f = butterfly_factorization(&p).unwrap();
        assert_eq!(f.quotient.rank_data().unwrap().level_sizes(), vec![1, 6, 6, 1, 1]);
    }

    #[test]
    fn stem_factors_through_a_chain() {
        let f = butterfly_factorization(&butterfly_with_stem(6).unwrap()).unwrap();
        assert!(is_isomorphic(&f.quotient, &chain(6)).is_some());
        let f = butterfly_factorization(&butterfly(5)).unwrap();
        assert_eq!(f.quotient.rank_data().unwrap().level_sizes(), vec![1, 2, 2, 1, 1, 1]);
    }

    #[test]
    fn odd_twin_class_has_no_pairing() {
        let covers = [(0, 1), (1, 2), (2, 3), (2, 4), (2, 5), (3, 6), (4, 6), (5, 6)];
        let p = Poset::from_cover_relations(7, covers).unwrap();
        assert_eq!(
            butterfly_factorization(&p).unwrap_err(),
            FactorizationError::NoPairing { element: 3, rank: 3, class_size: 3 }
        );
    }

    #[test]
    fn coatoms_of_doubled_tree_pair_up() {
        let p = doubled(&tree_interval(&[2, 2, 3, 1], 5).unwrap()).unwrap();
        let pairs = coatom_pairing(&p).unwrap().unwrap();
        assert_eq!(pairs.len(), 1);
        let odd = glued_ngons(&[3]).unwrap();
        assert_eq!(coatom_pairing(&odd).unwrap().unwrap_err().class_size, 1);
    }

    #[test]
    fn other_verdicts() {
        assert_eq!(verify_structure(&chain(3)).unwrap(), StructureVerdict::NotEulerian);
        assert!(matches!(verify_structure(&glued_ngons(&[3, 3]).unwrap()).unwrap(), StructureVerdict::NoClaim { .. }));
    }

    #[test]
    fn no_three_atom_configuration_has_a_square() {
        assert_eq!(three_atom_configurations(), ThreeAtomCensus { regular: 6, with_square: 0 });
    }
}
