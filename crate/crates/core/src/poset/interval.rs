use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};

use super::{Poset, PosetError};

/// A closed interval `[bottom, top]` of a parent poset.
///
/// Members are listed in the parent's canonical order and carry a local
/// index, so the interval can be materialised as a standalone poset.
#[derive(Clone, Debug)]
pub struct IntervalHandle<'a> {
    parent: &'a Poset,
    bottom: usize,
    top: usize,
    members: Vec<usize>,
    local: HashMap<usize, usize>,
}

impl<'a> IntervalHandle<'a> {
    pub(crate) fn new(parent: &'a Poset, bottom: usize, top: usize) -> Result<Self, PosetError> {
        if bottom >= parent.size() || top >= parent.size() {
            return Err(PosetError::IndexOutOfRange { pair: (bottom, top), size: parent.size() });
        }
        if !parent.leq(bottom, top) {
            return Err(PosetError::NotComparable { lower: bottom, upper: top });
        }
        let inside = parent.up_set(bottom).intersection(parent.down_set(top)).collect::<Vec<_>>();
        let mut members = Vec::with_capacity(inside.len());
        for x in parent.canonical_order() {
            if inside.binary_search(&x).is_ok() {
                members.push(x);
            }
        }
        let local = members.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        Ok(IntervalHandle { parent, bottom, top, members, local })
    }

    /// The poset this interval lives in.
    pub fn parent(&self) -> &'a Poset {
        self.parent
    }

    /// Least element of the interval.
    pub fn bottom(&self) -> usize {
        self.bottom
    }

    /// Greatest element of the interval.
    pub fn top(&self) -> usize {
        self.top
    }

    /// Parent indices of the members in canonical order.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.members.len()
    }

    /// Always false: an interval contains its endpoints.
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Local index of a parent element, if it lies in the interval.
    pub fn local_index(&self, x: usize) -> Option<usize> {
        self.local.get(&x).copied()
    }

    /// Parent element with the given local index.
    pub fn parent_index(&self, i: usize) -> usize {
        self.members[i]
    }

    /// Rank of the interval, i.e. the length of its longest chain.
    pub fn rank(&self) -> Result<usize, PosetError> {
        let rd = self.parent.rank_data()?;
        Ok(rd.rank(self.top) - rd.rank(self.bottom))
    }

    /// Number of members of each rank, measured from the bottom.
    pub fn rank_sizes(&self) -> Result<Vec<usize>, PosetError> {
        let rd = self.parent.rank_data()?;
        let base = rd.rank(self.bottom);
        let mut sizes = vec![0usize; rd.rank(self.top) - base + 1];
        for &x in &self.members {
            sizes[rd.rank(x) - base] += 1;
        }
        Ok(sizes)
    }

    /// Atoms of the interval in canonical order.
    pub fn atoms(&self) -> Vec<usize> {
        self.parent
            .upper_covers(self.bottom)
            .iter()
            .copied()
            .filter(|&x| self.parent.leq(x, self.top))
            .collect()
    }

    /// Coatoms of the interval in canonical order.
    pub fn coatoms(&self) -> Vec<usize> {
        self.parent
            .lower_covers(self.top)
            .iter()
            .copied()
            .filter(|&x| self.parent.leq(self.bottom, x))
            .collect()
    }

    /// Number of maximal chains from bottom to top.
    pub fn count_maximal_chains(&self) -> BigUint {
        self.parent.chain_counts_from(self.bottom).swap_remove(self.top)
    }

    /// Möbius value of the interval.
    pub fn mobius(&self) -> BigInt {
        self.parent.mobius_from(self.bottom).swap_remove(self.top)
    }

    /// Whether the interval has equally many elements of even and odd rank.
    pub fn euler_poincare_balanced(&self) -> Result<bool, PosetError> {
        let sizes = self.rank_sizes()?;
        let (mut even, mut odd) = (0usize, 0usize);
        for (r, &s) in sizes.iter().enumerate() {
            if r % 2 == 0 {
                even += s;
            } else {
                odd += s;
            }
        }
        Ok(even == odd)
    }

    /// The interval as a standalone poset on local indices.
    pub fn to_poset(&self) -> Poset {
        let covers = self
            .members
            .iter()
            .flat_map(|&x| {
                self.parent
                    .upper_covers(x)
                    .iter()
                    .filter_map(move |&y| self.local.get(&y).map(|&j| (self.local[&x], j)))
            })
            .collect::<Vec<_>>();
        let p = Poset::from_cover_relations(self.members.len(), covers)
            .expect("an interval of a valid poset is valid");
        match self.parent.labels() {
            Some(l) => p
                .with_labels(self.members.iter().map(|&x| l[x].clone()).collect())
                .expect("label count matches"),
            None => p,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_of_boolean_square() {
        // 0 < 1,2 < 3 with an extra element 4 above 3
        let p = Poset::from_cover_relations(5, [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)]).unwrap();
        let i = p.interval(0, 3).unwrap();
        assert_eq!(i.members(), &[0, 1, 2, 3]);
        assert_eq!(i.rank().unwrap(), 2);
        assert_eq!(i.atoms(), vec![1, 2]);
        assert_eq!(i.coatoms(), vec![1, 2]);
        assert_eq!(i.count_maximal_chains(), BigUint::from(2u32));
        assert!(i.euler_poincare_balanced().unwrap());
        let q = i.to_poset();
        assert_eq!(q.size(), 4);
        assert_eq!(q.bounds(), Some((0, 3)));
        assert!(p.interval(1, 2).is_err());
    }
}
