use super::{Poset, PosetError};

/// Two elements without a least common upper bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinFailure {
    pub x: usize,
    pub y: usize,
    /// Minimal common upper bounds; empty when there is none at all.
    pub minimal_upper_bounds: Vec<usize>,
}

impl Poset {
    /// Checks whether a bounded poset is a lattice, returning a pair without
    /// a join on failure.
    pub fn is_lattice(&self) -> Result<Result<(), JoinFailure>, PosetError> {
        self.require_bounded()?;
        let order = self.canonical_order();
        for (i, &x) in order.iter().enumerate() {
            for &y in &order[i + 1..] {
                if self.leq(x, y) || self.leq(y, x) {
                    continue;
                }
                let mut common = self.up_set(x).clone();
                common.intersect_with(self.up_set(y));
                let minimal: Vec<usize> = common
                    .ones()
                    .filter(|&u| common.ones().all(|v| v == u || !self.leq(v, u)))
                    .collect();
                if minimal.len() != 1 {
                    return Ok(Err(JoinFailure { x, y, minimal_upper_bounds: minimal }));
                }
            }
        }
        Ok(Ok(()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bowtie_is_not_a_lattice() {
        // 0 < a, b < c, d < 1 with both a and b below both c and d
        let p = Poset::from_cover_relations(
            6,
            [(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 5), (4, 5)],
        )
        .unwrap();
        let f = p.is_lattice().unwrap().unwrap_err();
        assert_eq!((f.x, f.y), (1, 2));
        assert_eq!(f.minimal_upper_bounds, vec![3, 4]);
    }

    #[test]
    fn diamond_is_a_lattice() {
        let p = Poset::from_cover_relations(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert!(p.is_lattice().unwrap().is_ok());
    }
}
