//! Structural operations producing new posets from old ones.

use super::{Poset, PosetError};

fn labels_or_indices(p: &Poset) -> Vec<String> {
    (0..p.size()).map(|x| p.label(x)).collect()
}

impl Poset {
    /// The order dual.
    pub fn dual(&self) -> Poset {
        let covers = self.covers().iter().map(|&(a, b)| (b, a));
        let d = Poset::from_cover_relations(self.size(), covers).expect("dual of a valid poset");
        match self.labels() {
            Some(l) => d.with_labels(l.to_vec()).expect("label count matches"),
            None => d,
        }
    }

    /// Disjoint union; elements of `other` are shifted by `self.size()`.
    pub fn disjoint_union(&self, other: &Poset) -> Poset {
        let n = self.size();
        let covers = self
            .covers()
            .iter()
            .copied()
            .chain(other.covers().iter().map(|&(a, b)| (a + n, b + n)));
        let p = Poset::from_cover_relations(n + other.size(), covers).expect("disjoint union");
        if self.labels().is_none() && other.labels().is_none() {
            return p;
        }
        let mut labels = labels_or_indices(self);
        labels.extend(labels_or_indices(other));
        p.with_labels(labels).expect("label count matches")
    }

    /// Adds a new least element below every minimal element.
    pub fn adjoin_min(&self) -> Poset {
        let n = self.size();
        let covers = self
            .covers()
            .iter()
            .map(|&(a, b)| (a + 1, b + 1))
            .chain(self.minimal_elements().into_iter().map(|m| (0, m + 1)));
        let p = Poset::from_cover_relations(n + 1, covers).expect("adjoining a minimum");
        match self.labels() {
            Some(l) => {
                let mut labels = vec!["0̂".to_string()];
                labels.extend(l.iter().cloned());
                p.with_labels(labels).expect("label count matches")
            }
            None => p,
        }
    }

    /// Adds a new greatest element above every maximal element.
    pub fn adjoin_max(&self) -> Poset {
        let n = self.size();
        let covers = self
            .covers()
            .iter()
            .copied()
            .chain(self.maximal_elements().into_iter().map(|m| (m, n)));
        let p = Poset::from_cover_relations(n + 1, covers).expect("adjoining a maximum");
        match self.labels() {
            Some(l) => {
                let mut labels = l.to_vec();
                labels.push("1̂".to_string());
                p.with_labels(labels).expect("label count matches")
            }
            None => p,
        }
    }

    /// Removes the unique minimum.
    pub fn remove_min(&self) -> Result<Poset, PosetError> {
        let mins = self.minimal_elements();
        if mins.len() != 1 {
            return Err(PosetError::NotBounded { minima: mins, maxima: self.maximal_elements() });
        }
        let keep: Vec<usize> = (0..self.size()).filter(|&x| x != mins[0]).collect();
        self.induced(&keep)
    }

    /// Rank-selected product: pairs of equal rank ordered componentwise.
    ///
    /// Both factors must be graded with the same maximal rank.
    pub fn rank_product(&self, other: &Poset) -> Result<Poset, PosetError> {
        let rp = self.rank_data()?;
        let rq = other.rank_data()?;
        if rp.max_rank() != rq.max_rank() {
            return Err(PosetError::InvalidParameter(format!(
                "rank product needs equal ranks, found {} and {}",
                rp.max_rank(),
                rq.max_rank()
            )));
        }
        let mut index = vec![vec![usize::MAX; other.size()]; self.size()];
        let mut elems = Vec::new();
        for r in 0..=rp.max_rank() {
            for &p in rp.level(r) {
                for &q in rq.level(r) {
                    index[p][q] = elems.len();
                    elems.push((p, q));
                }
            }
        }
        let mut covers = Vec::new();
        for (i, &(p, q)) in elems.iter().enumerate() {
            for &p2 in self.upper_covers(p) {
                for &q2 in other.upper_covers(q) {
                    covers.push((i, index[p2][q2]));
                }
            }
        }
        let labels = elems.iter().map(|&(p, q)| format!("({},{})", self.label(p), other.label(q)));
        Poset::from_cover_relations(elems.len(), covers)?.with_labels(labels.collect())
    }

    /// Cartesian product ordered componentwise; `(p, q)` has index
    /// `p * other.size() + q`.
    pub fn cartesian_product(&self, other: &Poset) -> Poset {
        let m = other.size();
        let mut covers = Vec::new();
        for p in 0..self.size() {
            for q in 0..m {
                for &p2 in self.upper_covers(p) {
                    covers.push((p * m + q, p2 * m + q));
                }
                for &q2 in other.upper_covers(q) {
                    covers.push((p * m + q, p * m + q2));
                }
            }
        }
        let labels = (0..self.size())
            .flat_map(|p| (0..m).map(move |q| (p, q)))
            .map(|(p, q)| format!("({},{})", self.label(p), other.label(q)))
            .collect();
        Poset::from_cover_relations(self.size() * m, covers)
            .expect("product of valid posets")
            .with_labels(labels)
            .expect("label count matches")
    }

    /// Diamond product: remove both minima, take the Cartesian product and
    /// adjoin a new minimum.
    pub fn diamond_product(&self, other: &Poset) -> Result<Poset, PosetError> {
        let a = self.remove_min()?;
        let b = other.remove_min()?;
        Ok(a.cartesian_product(&b).adjoin_min())
    }

    /// Dual suspension: the minimum is kept and two new elements are placed
    /// between it and every former atom, raising all other ranks by one.
    pub fn dual_suspension(&self) -> Result<Poset, PosetError> {
        let mins = self.minimal_elements();
        if mins.len() != 1 {
            return Err(PosetError::NotBounded { minima: mins, maxima: self.maximal_elements() });
        }
        let bottom = mins[0];
        let n = self.size();
        let (a1, a2) = (n, n + 1);
        let mut covers = vec![(bottom, a1), (bottom, a2)];
        for &(x, y) in self.covers() {
            if x == bottom {
                covers.push((a1, y));
                covers.push((a2, y));
            } else {
                covers.push((x, y));
            }
        }
        let mut labels = labels_or_indices(self);
        labels.push("s1".into());
        labels.push("s2".into());
        Poset::from_cover_relations(n + 2, covers)?.with_labels(labels)
    }

    /// `k` copies of the proper part glued along a shared minimum and maximum.
    pub fn glue_copies(&self, k: usize) -> Result<Poset, PosetError> {
        let (bottom, top) = self.require_bounded()?;
        if k == 0 {
            return Err(PosetError::InvalidParameter("glue_copies needs k >= 1".into()));
        }
        if self.rank_data()?.max_rank() < 2 {
            return Err(PosetError::InvalidParameter(
                "glue_copies needs rank at least 2".into(),
            ));
        }
        let inner: Vec<usize> = (0..self.size()).filter(|&x| x != bottom && x != top).collect();
        let mut pos = vec![usize::MAX; self.size()];
        for (i, &x) in inner.iter().enumerate() {
            pos[x] = i;
        }
        let m = inner.len();
        let new_top = 1 + k * m;
        let place = |x: usize, copy: usize| -> usize {
            if x == bottom {
                0
            } else if x == top {
                new_top
            } else {
                1 + copy * m + pos[x]
            }
        };
        let mut covers = Vec::new();
        for copy in 0..k {
            for &(x, y) in self.covers() {
                covers.push((place(x, copy), place(y, copy)));
            }
        }
        covers.sort_unstable();
        covers.dedup();
        let mut labels = vec![self.label(bottom)];
        for copy in 0..k {
            labels.extend(inner.iter().map(|&x| format!("{}#{}", self.label(x), copy + 1)));
        }
        labels.push(self.label(top));
        Poset::from_cover_relations(new_top + 1, covers)?.with_labels(labels)
    }

    /// Keeps the order ideal `ideal` once and doubles every other element.
    ///
    /// Covers inside the ideal are kept, covers leaving it fan out to both
    /// copies, and covers between outside elements are repeated per copy.
    pub fn ideal_split(&self, ideal: &[usize]) -> Result<Poset, PosetError> {
        let n = self.size();
        let mut inside = vec![false; n];
        for &x in ideal {
            if x >= n {
                return Err(PosetError::IndexOutOfRange { pair: (x, x), size: n });
            }
            inside[x] = true;
        }
        for &x in ideal {
            if let Some(&y) = self.lower_covers(x).iter().find(|&&y| !inside[y]) {
                return Err(PosetError::NotAnIdeal { member: x, below: y });
            }
        }
        let mut first = vec![usize::MAX; n];
        let mut second = vec![usize::MAX; n];
        let mut labels = Vec::new();
        for x in 0..n {
            first[x] = labels.len();
            if inside[x] {
                labels.push(self.label(x));
            } else {
                labels.push(format!("{}'", self.label(x)));
            }
        }
        for x in (0..n).filter(|&x| !inside[x]) {
            second[x] = labels.len();
            labels.push(format!("{}''", self.label(x)));
        }
        let mut covers = Vec::new();
        for &(x, y) in self.covers() {
            match (inside[x], inside[y]) {
                (true, true) => covers.push((first[x], first[y])),
                (true, false) => {
                    covers.push((first[x], first[y]));
                    covers.push((first[x], second[y]));
                }
                (false, false) => {
                    covers.push((first[x], first[y]));
                    covers.push((second[x], second[y]));
                }
                (false, true) => unreachable!("ideal membership was checked"),
            }
        }
        Poset::from_cover_relations(labels.len(), covers)?.with_labels(labels)
    }
}
