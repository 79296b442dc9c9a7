//! Finite posets given by their cover relations.
//!
//! A [`Poset`] is built from a list of cover pairs `(lower, upper)` over the
//! elements `0..size`. Construction validates that the pairs form the Hasse
//! diagram of a partial order: no cycles, no self loops, no duplicated pair and
//! no pair implied by a longer chain. Comparability queries are answered from
//! reachability bitsets.

mod error;
mod interval;
mod io;
mod iso;
mod lattice;
mod ops;

use std::collections::VecDeque;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

pub use error::{GradingWitness, PosetError};
pub use interval::IntervalHandle;
pub use io::{PosetJson, ReadOptions};
pub use iso::is_isomorphic;
pub use lattice::JoinFailure;

/// Rank information of a graded poset.
///
/// Every minimal element has rank 0 and every cover raises the rank by one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankData {
    ranks: Vec<usize>,
    levels: Vec<Vec<usize>>,
}

impl RankData {
    /// Rank of element `x`.
    pub fn rank(&self, x: usize) -> usize {
        self.ranks[x]
    }

    /// All ranks, indexed by element.
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Length of the longest chain, i.e. the largest rank present.
    pub fn max_rank(&self) -> usize {
        self.levels.len().saturating_sub(1)
    }

    /// Elements of rank `r` in increasing index order.
    pub fn level(&self, r: usize) -> &[usize] {
        self.levels.get(r).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Number of elements at each rank.
    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }
}

/// A finite poset stored as its Hasse diagram.
#[derive(Clone, Debug)]
pub struct Poset {
    size: usize,
    covers: Vec<(usize, usize)>,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
    topo: Vec<usize>,
    up: Vec<FixedBitSet>,
    down: OnceLock<Vec<FixedBitSet>>,
    grading: OnceLock<Result<RankData, PosetError>>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.covers == other.covers
    }
}

impl Eq for Poset {}

impl Poset {
    /// Builds a poset from cover pairs `(lower, upper)` on elements `0..size`.
    pub fn from_cover_relations(
        size: usize,
        covers: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, PosetError> {
        let mut list: Vec<(usize, usize)> = Vec::new();
        for (a, b) in covers {
            if a >= size || b >= size {
                return Err(PosetError::IndexOutOfRange { pair: (a, b), size });
            }
            if a == b {
                return Err(PosetError::SelfLoop(a));
            }
            list.push((a, b));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(PosetError::DuplicateCover(w[0].0, w[0].1));
        }

        let mut upper = vec![Vec::new(); size];
        let mut lower = vec![Vec::new(); size];
        for &(a, b) in &list {
            upper[a].push(b);
            lower[b].push(a);
        }
        for l in &mut lower {
            l.sort_unstable();
        }

        let topo = topological_order(size, &upper, &lower)
            .map_err(|cycle| PosetError::CycleDetected { cycle })?;

        let mut up = vec![FixedBitSet::with_capacity(size); size];
        for &x in topo.iter().rev() {
            let mut set = FixedBitSet::with_capacity(size);
            set.insert(x);
            for &y in &upper[x] {
                set.union_with(&up[y]);
            }
            up[x] = set;
        }

        for &(a, b) in &list {
            if let Some(&via) = upper[a].iter().find(|&&c| c != b && up[c].contains(b)) {
                return Err(PosetError::NotReduced { lower: a, upper: b, via });
            }
        }

        Ok(Poset {
            size,
            covers: list,
            upper,
            lower,
            labels: None,
            topo,
            up,
            down: OnceLock::new(),
            grading: OnceLock::new(),
        })
    }

    /// Builds a poset from an arbitrary acyclic relation by discarding every
    /// pair implied by a longer chain.
    pub fn from_relation_reduced(
        size: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, PosetError> {
        let mut upper = vec![Vec::new(); size];
        let mut lower = vec![Vec::new(); size];
        for (a, b) in pairs {
            if a >= size || b >= size {
                return Err(PosetError::IndexOutOfRange { pair: (a, b), size });
            }
            if a == b {
                return Err(PosetError::SelfLoop(a));
            }
            upper[a].push(b);
            lower[b].push(a);
        }
        for v in upper.iter_mut().chain(lower.iter_mut()) {
            v.sort_unstable();
            v.dedup();
        }
        let topo = topological_order(size, &upper, &lower)
            .map_err(|cycle| PosetError::CycleDetected { cycle })?;
        let mut up = vec![FixedBitSet::with_capacity(size); size];
        for &x in topo.iter().rev() {
            let mut set = FixedBitSet::with_capacity(size);
            set.insert(x);
            for &y in &upper[x] {
                set.union_with(&up[y]);
            }
            up[x] = set;
        }
        let mut reduced = Vec::new();
        for a in 0..size {
            for &b in &upper[a] {
                if !upper[a].iter().any(|&c| c != b && up[c].contains(b)) {
                    reduced.push((a, b));
                }
            }
        }
        Poset::from_cover_relations(size, reduced)
    }

    /// Attaches element labels, replacing any existing ones.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, PosetError> {
        if labels.len() != self.size {
            return Err(PosetError::LabelCount { expected: self.size, found: labels.len() });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Drops element labels.
    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    /// Number of elements.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Cover pairs in lexicographic order.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Elements covering `x`.
    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper[x]
    }

    /// Elements covered by `x`.
    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower[x]
    }

    /// Element labels, if any were attached.
    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of `x`, falling back to its index.
    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    /// A topological order of the elements.
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    /// Whether `x <= y`.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    /// Whether `y` covers `x`.
    pub fn is_cover(&self, x: usize, y: usize) -> bool {
        self.upper[x].binary_search(&y).is_ok()
    }

    /// The principal filter of `x` as a bitset.
    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.up[x]
    }

    /// The principal ideal of `x` as a bitset.
    pub fn down_set(&self, x: usize) -> &FixedBitSet {
        &self.down_sets()[x]
    }

    fn down_sets(&self) -> &[FixedBitSet] {
        self.down.get_or_init(|| {
            let mut down = vec![FixedBitSet::with_capacity(self.size); self.size];
            for &x in &self.topo {
                let mut set = FixedBitSet::with_capacity(self.size);
                set.insert(x);
                for &y in &self.lower[x] {
                    set.union_with(&down[y]);
                }
                down[x] = set;
            }
            down
        })
    }

    /// Minimal elements in increasing order.
    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.size).filter(|&x| self.lower[x].is_empty()).collect()
    }

    /// Maximal elements in increasing order.
    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.size).filter(|&x| self.upper[x].is_empty()).collect()
    }

    /// Rank data, or a witness that the poset is not graded.
    pub fn rank_data(&self) -> Result<&RankData, PosetError> {
        self.grading
            .get_or_init(|| self.compute_grading())
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Whether the poset is graded.
    pub fn is_graded(&self) -> bool {
        self.rank_data().is_ok()
    }

    fn compute_grading(&self) -> Result<RankData, PosetError> {
        let mut rank: Vec<Option<usize>> = vec![None; self.size];
        for &x in &self.topo {
            let lows = &self.lower[x];
            if lows.is_empty() {
                rank[x] = Some(0);
                continue;
            }
            let first = rank[lows[0]].expect("lower covers precede in topological order");
            for &y in &lows[1..] {
                let r = rank[y].expect("lower covers precede in topological order");
                if r != first {
                    return Err(PosetError::NotGraded(GradingWitness {
                        element: x,
                        lower_a: lows[0],
                        rank_a: first,
                        lower_b: y,
                        rank_b: r,
                    }));
                }
            }
            rank[x] = Some(first + 1);
        }
        let ranks: Vec<usize> = rank.into_iter().map(|r| r.unwrap_or(0)).collect();
        let max = ranks.iter().copied().max().unwrap_or(0);
        let mut levels = vec![Vec::new(); if self.size == 0 { 0 } else { max + 1 }];
        for (x, &r) in ranks.iter().enumerate() {
            levels[r].push(x);
        }
        Ok(RankData { ranks, levels })
    }

    /// Length of the longest chain ending at each element.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![0usize; self.size];
        for &x in &self.topo {
            h[x] = self.lower[x].iter().map(|&y| h[y] + 1).max().unwrap_or(0);
        }
        h
    }

    /// Elements sorted by `(rank, index)`; height replaces rank when the
    /// poset is not graded.
    pub fn canonical_order(&self) -> Vec<usize> {
        let key: Vec<usize> = match self.rank_data() {
            Ok(rd) => rd.ranks().to_vec(),
            Err(_) => self.heights(),
        };
        let mut order: Vec<usize> = (0..self.size).collect();
        order.sort_by_key(|&x| (key[x], x));
        order
    }

    /// The unique minimum and maximum, if both exist.
    pub fn bounds(&self) -> Option<(usize, usize)> {
        let mins = self.minimal_elements();
        let maxs = self.maximal_elements();
        (mins.len() == 1 && maxs.len() == 1).then(|| (mins[0], maxs[0]))
    }

    /// The unique minimum and maximum, or a witness listing the extremes.
    pub fn require_bounded(&self) -> Result<(usize, usize), PosetError> {
        self.bounds().ok_or_else(|| PosetError::NotBounded {
            minima: self.minimal_elements(),
            maxima: self.maximal_elements(),
        })
    }

    /// The interval `[x, y]`.
    pub fn interval(&self, x: usize, y: usize) -> Result<IntervalHandle<'_>, PosetError> {
        IntervalHandle::new(self, x, y)
    }

    /// The whole poset as an interval between its minimum and maximum.
    pub fn full_interval(&self) -> Result<IntervalHandle<'_>, PosetError> {
        let (lo, hi) = self.require_bounded()?;
        IntervalHandle::new(self, lo, hi)
    }

    /// Number of maximal chains of `[x, y]` for every `y >= x`, indexed by
    /// element; entries for elements not above `x` are zero.
    pub fn chain_counts_from(&self, x: usize) -> Vec<BigUint> {
        let mut count = vec![BigUint::zero(); self.size];
        count[x] = BigUint::one();
        let start = self.topo.iter().position(|&t| t == x).expect("element in order");
        for &y in &self.topo[start + 1..] {
            if !self.up[x].contains(y) {
                continue;
            }
            let mut c = BigUint::zero();
            for &z in &self.lower[y] {
                c += &count[z];
            }
            count[y] = c;
        }
        count
    }

    /// Möbius values `mu(x, y)` for every `y`, indexed by element; entries
    /// for elements not above `x` are zero.
    pub fn mobius_from(&self, x: usize) -> Vec<BigInt> {
        let mut mu = vec![BigInt::zero(); self.size];
        mu[x] = BigInt::one();
        let start = self.topo.iter().position(|&t| t == x).expect("element in order");
        let down = self.down_sets();
        for &y in &self.topo[start + 1..] {
            if !self.up[x].contains(y) {
                continue;
            }
            let mut s = BigInt::zero();
            for z in self.up[x].intersection(&down[y]) {
                if z != y {
                    s += &mu[z];
                }
            }
            mu[y] = -s;
        }
        mu
    }

    /// The Möbius function `mu(x, y)`; zero when `x` is not below `y`.
    pub fn mobius(&self, x: usize, y: usize) -> BigInt {
        if !self.leq(x, y) {
            return BigInt::zero();
        }
        self.mobius_from(x).swap_remove(y)
    }

    /// Applies a permutation: element `x` becomes `perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Poset, PosetError> {
        if perm.len() != self.size {
            return Err(PosetError::LabelCount { expected: self.size, found: perm.len() });
        }
        let mut seen = vec![false; self.size];
        for &p in perm {
            if p >= self.size || std::mem::replace(&mut seen[p], true) {
                return Err(PosetError::InvalidParameter(format!(
                    "relabelling is not a permutation of 0..{}",
                    self.size
                )));
            }
        }
        let covers = self.covers.iter().map(|&(a, b)| (perm[a], perm[b]));
        let p = Poset::from_cover_relations(self.size, covers)?;
        match &self.labels {
            Some(l) => {
                let mut out = vec![String::new(); self.size];
                for (x, s) in l.iter().enumerate() {
                    out[perm[x]] = s.clone();
                }
                p.with_labels(out)
            }
            None => Ok(p),
        }
    }

    /// The subposet induced on `elements`, re-indexed in the given order.
    pub fn induced(&self, elements: &[usize]) -> Result<Poset, PosetError> {
        let mut local = vec![usize::MAX; self.size];
        for (i, &x) in elements.iter().enumerate() {
            local[x] = i;
        }
        let mut pairs = Vec::new();
        for (i, &x) in elements.iter().enumerate() {
            for (j, &y) in elements.iter().enumerate() {
                if i != j && self.leq(x, y) {
                    pairs.push((i, j));
                }
            }
        }
        let p = Poset::from_relation_reduced(elements.len(), pairs)?;
        match &self.labels {
            Some(l) => p.with_labels(elements.iter().map(|&x| l[x].clone()).collect()),
            None => Ok(p),
        }
    }
}

fn topological_order(
    size: usize,
    upper: &[Vec<usize>],
    lower: &[Vec<usize>],
) -> Result<Vec<usize>, Vec<usize>> {
    let mut indeg: Vec<usize> = lower.iter().map(Vec::len).collect();
    let mut queue: VecDeque<usize> = (0..size).filter(|&x| indeg[x] == 0).collect();
    let mut order = Vec::with_capacity(size);
    while let Some(x) = queue.pop_front() {
        order.push(x);
        for &y in &upper[x] {
            indeg[y] -= 1;
            if indeg[y] == 0 {
                queue.push_back(y);
            }
        }
    }
    if order.len() == size {
        return Ok(order);
    }
    Err(find_cycle(size, upper, &indeg))
}

fn find_cycle(size: usize, upper: &[Vec<usize>], indeg: &[usize]) -> Vec<usize> {
    let stuck: Vec<bool> = (0..size).map(|x| indeg[x] > 0).collect();
    let start = (0..size).find(|&x| stuck[x]).expect("a cycle leaves a vertex unprocessed");
    let mut pos = vec![usize::MAX; size];
    let mut path = Vec::new();
    let mut x = start;
    loop {
        if pos[x] != usize::MAX {
            return path[pos[x]..].to_vec();
        }
        pos[x] = path.len();
        path.push(x);
        x = *upper[x].iter().find(|&&y| stuck[y]).expect("stuck vertex has a stuck successor");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> Poset {
        Poset::from_cover_relations(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn chain_is_graded_and_bounded() {
        let p = chain(4);
        let rd = p.rank_data().unwrap();
        assert_eq!(rd.ranks(), &[0, 1, 2, 3]);
        assert_eq!(p.bounds(), Some((0, 3)));
        assert!(p.leq(0, 3));
        assert!(!p.leq(3, 0));
    }

    #[test]
    fn cycle_is_rejected_with_cycle() {
        let err = Poset::from_cover_relations(3, [(0, 1), (1, 2), (2, 0)]).unwrap_err();
        match err {
            PosetError::CycleDetected { cycle } => {
                let mut c = cycle.clone();
                c.sort();
                assert_eq!(c, vec![0, 1, 2]);
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn implied_pair_is_rejected() {
        let err = Poset::from_cover_relations(3, [(0, 1), (1, 2), (0, 2)]).unwrap_err();
        assert_eq!(err, PosetError::NotReduced { lower: 0, upper: 2, via: 1 });
    }

    #[test]
    fn malformed_pairs_are_rejected() {
        assert!(matches!(
            Poset::from_cover_relations(2, [(0, 2)]),
            Err(PosetError::IndexOutOfRange { .. })
        ));
        assert_eq!(Poset::from_cover_relations(2, [(1, 1)]).unwrap_err(), PosetError::SelfLoop(1));
        assert_eq!(
            Poset::from_cover_relations(2, [(0, 1), (0, 1)]).unwrap_err(),
            PosetError::DuplicateCover(0, 1)
        );
    }

    #[test]
    fn pentagon_is_not_graded() {
        // 0 < a < b < 1 and 0 < c < 1
        let p = Poset::from_cover_relations(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).unwrap();
        match p.rank_data().unwrap_err() {
            PosetError::NotGraded(w) => {
                assert_eq!(w.element, 4);
                assert_ne!(w.rank_a, w.rank_b);
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn relation_reduction_drops_implied_pairs() {
        let p = Poset::from_relation_reduced(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(p.covers(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn chain_mobius_values() {
        let p = chain(4);
        assert_eq!(p.mobius(0, 0), BigInt::from(1));
        assert_eq!(p.mobius(0, 1), BigInt::from(-1));
        assert_eq!(p.mobius(0, 2), BigInt::from(0));
        assert_eq!(p.mobius(2, 1), BigInt::from(0));
    }

    #[test]
    fn diamond_chain_counts() {
        let p = Poset::from_cover_relations(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let c = p.chain_counts_from(0);
        assert_eq!(c[3], BigUint::from(2u32));
        assert_eq!(p.mobius(0, 3), BigInt::from(1));
    }

    #[test]
    fn relabel_preserves_structure() {
        let p = Poset::from_cover_relations(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let q = p.relabel(&[3, 1, 2, 0]).unwrap();
        assert_eq!(q.bounds(), Some((3, 0)));
        assert!(is_isomorphic(&p, &q).is_some());
    }
}
