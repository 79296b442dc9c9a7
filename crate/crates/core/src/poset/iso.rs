//! Isomorphism testing by colour refinement with individualisation.
//!
//! Both posets are placed side by side and coloured jointly. Colours start
//! from height and cover degrees and are refined by the multisets of colours
//! of upper and lower covers until stable. When classes remain ambiguous one
//! element of the first poset is individualised against each candidate of the
//! second, and the search backtracks on failure.

use std::collections::BTreeMap;

use super::Poset;

struct Joint<'a> {
    p: &'a Poset,
    q: &'a Poset,
    split: usize,
}

impl Joint<'_> {
    fn len(&self) -> usize {
        self.split + self.q.size()
    }

    fn upper(&self, v: usize) -> &[usize] {
        if v < self.split {
            self.p.upper_covers(v)
        } else {
            self.q.upper_covers(v - self.split)
        }
    }

    fn lower(&self, v: usize) -> &[usize] {
        if v < self.split {
            self.p.lower_covers(v)
        } else {
            self.q.lower_covers(v - self.split)
        }
    }

    fn offset(&self, v: usize) -> usize {
        if v < self.split {
            0
        } else {
            self.split
        }
    }

    /// Refines `colors` to a stable partition; returns the number of classes.
    fn refine(&self, colors: &mut [usize]) -> usize {
        let mut classes = count_classes(colors);
        loop {
            let mut table: BTreeMap<(usize, Vec<usize>, Vec<usize>), usize> = BTreeMap::new();
            let mut sigs = Vec::with_capacity(self.len());
            for v in 0..self.len() {
                let off = self.offset(v);
                let mut up: Vec<usize> = self.upper(v).iter().map(|&u| colors[u + off]).collect();
                let mut down: Vec<usize> = self.lower(v).iter().map(|&u| colors[u + off]).collect();
                up.sort_unstable();
                down.sort_unstable();
                let sig = (colors[v], up, down);
                table.insert(sig.clone(), 0);
                sigs.push(sig);
            }
            for (i, val) in table.values_mut().enumerate() {
                *val = i;
            }
            for (v, sig) in sigs.into_iter().enumerate() {
                colors[v] = table[&sig];
            }
            let now = table.len();
            if now == classes {
                return now;
            }
            classes = now;
        }
    }

    fn balanced(&self, colors: &[usize]) -> bool {
        let mut count: BTreeMap<usize, isize> = BTreeMap::new();
        for (v, &c) in colors.iter().enumerate() {
            *count.entry(c).or_default() += if v < self.split { 1 } else { -1 };
        }
        count.values().all(|&d| d == 0)
    }

    fn search(&self, mut colors: Vec<usize>) -> Option<Vec<usize>> {
        self.refine(&mut colors);
        if !self.balanced(&colors) {
            return None;
        }
        let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (v, &c) in colors.iter().enumerate() {
            members.entry(c).or_default().push(v);
        }
        let ambiguous = members.values().filter(|m| m.len() > 2).min_by_key(|m| m.len());
        match ambiguous {
            None => {
                let mut map = vec![usize::MAX; self.split];
                for m in members.values() {
                    map[m[0]] = m[1] - self.split;
                }
                self.preserves_covers(&map).then_some(map)
            }
            Some(class) => {
                let pivot = class[0];
                let fresh = colors.iter().copied().max().unwrap_or(0) + 1;
                for &cand in class.iter().filter(|&&v| v >= self.split) {
                    let mut next = colors.clone();
                    next[pivot] = fresh;
                    next[cand] = fresh;
                    if let Some(map) = self.search(next) {
                        return Some(map);
                    }
                }
                None
            }
        }
    }

    fn preserves_covers(&self, map: &[usize]) -> bool {
        self.p.covers().iter().all(|&(a, b)| self.q.is_cover(map[a], map[b]))
    }
}

fn count_classes(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Returns an isomorphism `p -> q` as an index map, or `None`.
pub fn is_isomorphic(p: &Poset, q: &Poset) -> Option<Vec<usize>> {
    if p.size() != q.size() || p.covers().len() != q.covers().len() {
        return None;
    }
    if p.size() == 0 {
        return Some(Vec::new());
    }
    match (p.rank_data(), q.rank_data()) {
        (Ok(a), Ok(b)) if a.level_sizes() != b.level_sizes() => return None,
        (Ok(_), Err(_)) | (Err(_), Ok(_)) => return None,
        _ => {}
    }
    let joint = Joint { p, q, split: p.size() };
    let hp = p.heights();
    let hq = q.heights();
    let mut initial: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
    let keys: Vec<(usize, usize, usize)> = (0..joint.len())
        .map(|v| {
            let h = if v < joint.split { hp[v] } else { hq[v - joint.split] };
            (h, joint.upper(v).len(), joint.lower(v).len())
        })
        .collect();
    for k in &keys {
        initial.insert(*k, 0);
    }
    for (i, val) in initial.values_mut().enumerate() {
        *val = i;
    }
    let colors = keys.iter().map(|k| initial[k]).collect();
    joint.search(colors)
}
