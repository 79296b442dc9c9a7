use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use serde::Serialize;

use crate::poset::{Poset, PosetError};

/// An interval whose Möbius value is not `(-1)^length`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MobiusWitness {
    pub bottom: usize,
    pub top: usize,
    #[serde(serialize_with = "crate::bigjson::num")]
    pub mobius: BigInt,
    #[serde(serialize_with = "crate::bigjson::num")]
    pub expected: BigInt,
}

/// Outcome of the Eulerian check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerianVerdict {
    pub eulerian: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<MobiusWitness>,
}

/// Whether every interval `[x, y]` of a graded poset has
/// `mu(x, y) = (-1)^(rank y - rank x)`.
pub fn is_eulerian(p: &Poset) -> Result<EulerianVerdict, PosetError> {
    let rd = p.rank_data()?;
    for x in p.canonical_order() {
        let mu = p.mobius_from(x);
        let mut above: Vec<usize> = p.up_set(x).ones().collect();
        above.sort_by_key(|&y| (rd.rank(y), y));
        for y in above {
            let len = rd.rank(y) - rd.rank(x);
            let expected = BigInt::from(if len % 2 == 0 { 1 } else { -1 });
            if mu[y] != expected {
                return Ok(EulerianVerdict {
                    eulerian: false,
                    witness: Some(MobiusWitness { bottom: x, top: y, mobius: mu[y].clone(), expected }),
                });
            }
        }
    }
    Ok(EulerianVerdict { eulerian: true, witness: None })
}

/// Result of checking the Eulerian property through balanced even-length
/// intervals, alongside the direct Möbius check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvenRankCheck {
    /// Every interval of positive even length has as many elements of even
    /// rank as of odd rank.
    pub even_intervals_balanced: bool,
    /// First unbalanced even-length interval, if any.
    pub unbalanced: Option<(usize, usize)>,
    /// Verdict of the direct Möbius computation.
    pub direct: EulerianVerdict,
}

impl EvenRankCheck {
    /// Whether both methods agree.
    pub fn agrees(&self) -> bool {
        self.even_intervals_balanced == self.direct.eulerian
    }
}

/// Decides the Eulerian property from even-length intervals only and
/// cross-checks against [`is_eulerian`].
pub fn even_rank_eulerian_suffices(p: &Poset) -> Result<EvenRankCheck, PosetError> {
    let rd = p.rank_data()?;
    let mut even = FixedBitSet::with_capacity(p.size());
    for x in 0..p.size() {
        if rd.rank(x) % 2 == 0 {
            even.insert(x);
        }
    }
    let mut unbalanced = None;
    'outer: for x in p.canonical_order() {
        for y in p.up_set(x).ones() {
            let len = rd.rank(y) - rd.rank(x);
            if len == 0 || len % 2 == 1 {
                continue;
            }
            let mut inside = p.up_set(x).clone();
            inside.intersect_with(p.down_set(y));
            let total = inside.count_ones(..);
            let evens = inside.intersection(&even).count();
            if 2 * evens != total {
                unbalanced = Some((x, y));
                break 'outer;
            }
        }
    }
    Ok(EvenRankCheck {
        even_intervals_balanced: unbalanced.is_none(),
        unbalanced,
        direct: is_eulerian(p)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diamond_is_eulerian_chain_is_not() {
        let d = Poset::from_cover_relations(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert!(is_eulerian(&d).unwrap().eulerian);
        let c = Poset::from_cover_relations(3, [(0, 1), (1, 2)]).unwrap();
        let v = is_eulerian(&c).unwrap();
        assert!(!v.eulerian);
        let w = v.witness.unwrap();
        assert_eq!((w.bottom, w.top), (0, 2));
        assert_eq!(w.mobius, BigInt::from(0));
        let e = even_rank_eulerian_suffices(&c).unwrap();
        assert!(e.agrees());
        assert_eq!(e.unbalanced, Some((0, 2)));
    }
}
