//! Rank-3 Eulerian binomial posets with a given number of atoms.
//!
//! In such a poset every coatom covers two atoms and every atom lies below
//! two coatoms, so the poset is a 2-regular multigraph with the atoms as
//! vertices and the coatoms as edges.

use serde::Serialize;

use crate::constructions::glued_ngons;
use crate::poset::{is_isomorphic, Poset};
use crate::regularity::{analyze_binomial, is_eulerian};

use super::ClassifierError;

/// One isomorphism class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rank3Class {
    /// Polygon sizes of the matching glued polygons, descending.
    pub partition: Vec<usize>,
    /// Number of labelled multigraphs in the class.
    pub labelled: usize,
    #[serde(skip)]
    pub poset: Poset,
}

fn multigraphs(q: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(deg: &mut Vec<usize>, edges: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        let Some(v) = deg.iter().position(|&d| d < 2) else {
            out.push(edges.clone());
            return;
        };
        for u in v + 1..deg.len() {
            if deg[u] == 2 || edges.last().is_some_and(|&last| (v, u) < last) {
                continue;
            }
            deg[v] += 1;
            deg[u] += 1;
            edges.push((v, u));
            rec(deg, edges, out);
            edges.pop();
            deg[v] -= 1;
            deg[u] -= 1;
        }
    }
    let mut out = Vec::new();
    rec(&mut vec![0; q], &mut Vec::new(), &mut out);
    out
}

fn face_poset(q: usize, edges: &[(usize, usize)]) -> Poset {
    let top = 1 + q + edges.len();
    let mut covers = Vec::new();
    for v in 0..q {
        covers.push((0, 1 + v));
    }
    for (i, &(a, b)) in edges.iter().enumerate() {
        let e = 1 + q + i;
        covers.push((1 + a, e));
        covers.push((1 + b, e));
        covers.push((e, top));
    }
    Poset::from_cover_relations(top + 1, covers).expect("multigraph face poset")
}

fn cycle_type(q: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut seen = vec![false; q];
    let mut sizes = Vec::new();
    for s in 0..q {
        if seen[s] {
            continue;
        }
        let mut stack = vec![s];
        seen[s] = true;
        let mut size = 0;
        while let Some(v) = stack.pop() {
            size += 1;
            for &(a, b) in edges {
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        sizes.push(size);
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

/// Enumerates every loopless 2-regular multigraph on `q` labelled atoms,
/// builds its face poset, keeps one poset per isomorphism class and
/// identifies each class with glued polygons.
pub fn enumerate_rank3_binomial(q: usize) -> Result<Vec<Rank3Class>, ClassifierError> {
    if !(2..=8).contains(&q) {
        return Err(ClassifierError::InvalidParameter(format!("atom count must lie in 2..=8, found {q}")));
    }
    let mut classes: Vec<Rank3Class> = Vec::new();
    let mut keys: Vec<Vec<usize>> = Vec::new();
    for edges in multigraphs(q) {
        let poset = face_poset(q, &edges);
        let key = proper_part_components(&poset);
        let found = classes
            .iter_mut()
            .zip(&keys)
            .find(|(c, k)| **k == key && is_isomorphic(&c.poset, &poset).is_some());
        if let Some((c, _)) = found {
            c.labelled += 1;
            continue;
        }
        analyze_binomial(&poset)?;
        if !is_eulerian(&poset)?.eulerian {
            return Err(ClassifierError::InvalidParameter(format!("multigraph {edges:?} is not Eulerian")));
        }
        let partition = cycle_type(q, &edges);
        let glued = glued_ngons(&partition)?;
        if is_isomorphic(&glued, &poset).is_none() {
            return Err(ClassifierError::InvalidParameter(format!("class {partition:?} is not glued polygons")));
        }
        classes.push(Rank3Class { partition, labelled: 1, poset });
        keys.push(key);
    }
    classes.sort_by(|a, b| a.partition.cmp(&b.partition));
    Ok(classes)
}

/// Sizes of the connected components of the poset with its minimum and
/// maximum removed, an isomorphism invariant used to skip hopeless checks.
fn proper_part_components(p: &Poset) -> Vec<usize> {
    let (bottom, top) = p.bounds().expect("face posets are bounded");
    let mut seen = vec![false; p.size()];
    seen[bottom] = true;
    seen[top] = true;
    let mut sizes = Vec::new();
    for s in 0..p.size() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![s];
        let mut size = 0;
        while let Some(x) = stack.pop() {
            size += 1;
            for &y in p.upper_covers(x).iter().chain(p.lower_covers(x)) {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        sizes.push(size);
    }
    sizes.sort_unstable();
    sizes
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Partitions of `n` into parts of size at least 2.
    fn partitions(n: usize, max: usize) -> usize {
        if n == 0 {
            return 1;
        }
        (2..=max.min(n)).map(|p| partitions(n - p, p)).sum()
    }

    #[test]
    fn class_counts_match_partitions() {
        for q in 2..=8 {
            let classes = enumerate_rank3_binomial(q).unwrap();
            assert_eq!(classes.len(), partitions(q, q), "q = {q}");
        }
        assert_eq!(enumerate_rank3_binomial(4).unwrap().len(), 2);
        assert_eq!(enumerate_rank3_binomial(6).unwrap().len(), 4);
        assert_eq!(enumerate_rank3_binomial(8).unwrap().len(), 7);
    }

    #[test]
    fn labelled_counts() {
        // 2-regular loopless multigraphs on 4 labelled vertices: three
        // 4-cycles and three doubled matchings
        let classes = enumerate_rank3_binomial(4).unwrap();
        let counts: Vec<(Vec<usize>, usize)> = classes.iter().map(|c| (c.partition.clone(), c.labelled)).collect();
        assert_eq!(counts, vec![(vec![2, 2], 3), (vec![4], 3)]);
    }
}
