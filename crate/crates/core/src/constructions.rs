//! Generators for the standard graded families.

use std::fmt;

use thiserror::Error;

use crate::poset::{Poset, PosetError};

/// Boolean algebra of subsets of an `n`-set; element `m` is the subset with
/// bitmask `m`.
pub fn boolean_lattice(n: usize) -> Poset {
    assert!(n < usize::BITS as usize - 1, "boolean lattice too large");
    let size = 1usize << n;
    let covers = (0..size).flat_map(|m| (0..n).filter(move |&i| m & (1 << i) == 0).map(move |i| (m, m | (1 << i))));
    let labels = (0..size)
        .map(|m| {
            let items: Vec<String> = (0..n).filter(|&i| m & (1 << i) != 0).map(|i| (i + 1).to_string()).collect();
            format!("{{{}}}", items.join(","))
        })
        .collect();
    Poset::from_cover_relations(size, covers)
        .expect("boolean lattice")
        .with_labels(labels)
        .expect("label count")
}

/// A chain with `n + 1` elements.
pub fn chain(n: usize) -> Poset {
    Poset::from_cover_relations(n + 1, (1..=n).map(|i| (i - 1, i))).expect("chain")
}

/// Butterfly poset of rank `n`: a minimum, two incomparable elements at each
/// rank `1..n`, and a maximum; every element covers everything one rank below.
pub fn butterfly(n: usize) -> Poset {
    assert!(n >= 1, "butterfly needs rank at least 1");
    let top = 2 * (n - 1) + 1;
    let at = |r: usize| -> Vec<usize> {
        if r == 0 {
            vec![0]
        } else if r == n {
            vec![top]
        } else {
            vec![2 * r - 1, 2 * r]
        }
    };
    let mut covers = Vec::new();
    for r in 1..=n {
        for &y in &at(r) {
            for &x in &at(r - 1) {
                covers.push((x, y));
            }
        }
    }
    let mut labels = vec!["0̂".to_string()];
    for r in 1..n {
        labels.push(format!("{r}a"));
        labels.push(format!("{r}b"));
    }
    labels.push("1̂".into());
    Poset::from_cover_relations(top + 1, covers)
        .expect("butterfly")
        .with_labels(labels)
        .expect("label count")
}

/// Face lattice of the `n`-cube with an adjoined minimum; rank `n + 1`.
///
/// A face is a word over `{0, 1, *}`; element `i < 3^n` is the word whose
/// base-3 digits are `0`, `1`, `2 = *`, and `3^n` is the minimum.
pub fn cubical_lattice(n: usize) -> Poset {
    let faces = 3usize.pow(n as u32);
    let bottom = faces;
    let mut covers = Vec::new();
    let digits = |w: usize| -> Vec<usize> { (0..n).map(|i| (w / 3usize.pow(i as u32)) % 3).collect() };
    for w in 0..faces {
        let d = digits(w);
        if d.iter().all(|&x| x != 2) {
            covers.push((bottom, w));
        }
        for i in 0..n {
            if d[i] != 2 {
                let up = w + (2 - d[i]) * 3usize.pow(i as u32);
                covers.push((w, up));
            }
        }
    }
    let mut labels: Vec<String> = (0..faces)
        .map(|w| digits(w).iter().map(|&x| ['0', '1', '*'][x]).collect())
        .collect();
    labels.push("0̂".into());
    Poset::from_cover_relations(faces + 1, covers)
        .expect("cubical lattice")
        .with_labels(labels)
        .expect("label count")
}

/// Face poset of a `q`-gon with adjoined minimum and maximum; rank 3.
pub fn ngon_face_poset(q: usize) -> Result<Poset, PosetError> {
    glued_ngons(&[q])
}

/// Polygons with `qs[i]` sides glued along a shared minimum and maximum.
pub fn glued_ngons(qs: &[usize]) -> Result<Poset, PosetError> {
    if qs.is_empty() || qs.iter().any(|&q| q < 2) {
        return Err(PosetError::InvalidParameter("polygons need at least two sides".into()));
    }
    let total: usize = qs.iter().sum();
    let top = 2 * total + 1;
    let mut covers = Vec::new();
    let mut labels = vec!["0̂".to_string()];
    let mut offset = 0;
    for &q in qs {
        for i in 0..q {
            let v = 1 + offset + i;
            let e = 1 + total + offset + i;
            let next = 1 + offset + (i + 1) % q;
            covers.push((0, v));
            covers.push((v, e));
            covers.push((next, e));
            covers.push((e, top));
        }
        offset += q;
    }
    for kind in ["v", "e"] {
        for (g, &q) in qs.iter().enumerate() {
            labels.extend((0..q).map(|i| format!("{kind}{}.{i}", g + 1)));
        }
    }
    labels.push("1̂".into());
    Poset::from_cover_relations(top + 1, covers)?.with_labels(labels)
}

/// Dual suspension of the Boolean algebra of rank `n`.
pub fn sigma_star_boolean(n: usize) -> Poset {
    boolean_lattice(n).dual_suspension().expect("boolean lattices are bounded")
}

/// A rank-`n` Sheffer poset with the factorial data of the cube of
/// dimension `n - 1` that is not a lattice for `n >= 3`.
///
/// The vertices of even parity are doubled and the odd ones removed; each
/// copy keeps the edges of its vertex.
pub fn deformed_cubical(n: usize) -> Result<Poset, PosetError> {
    if n < 2 {
        return Err(PosetError::InvalidParameter("deformed cubical poset needs rank at least 2".into()));
    }
    let c = cubical_lattice(n - 1);
    let rd = c.rank_data().expect("cubical lattices are graded");
    let bottom = rd.level(0)[0];
    let vertices = rd.level(1).to_vec();
    let even: Vec<usize> = vertices
        .iter()
        .copied()
        .filter(|&v| c.label(v).chars().filter(|&ch| ch == '1').count() % 2 == 0)
        .collect();
    let keep: Vec<usize> = (0..c.size()).filter(|x| !vertices.contains(x)).collect();
    let mut index = vec![usize::MAX; c.size()];
    for (i, &x) in keep.iter().enumerate() {
        index[x] = i;
    }
    let mut labels: Vec<String> = keep.iter().map(|&x| c.label(x)).collect();
    let mut covers: Vec<(usize, usize)> = c
        .covers()
        .iter()
        .filter(|&&(a, b)| index[a] != usize::MAX && index[b] != usize::MAX)
        .map(|&(a, b)| (index[a], index[b]))
        .collect();
    for &v in &even {
        for copy in ['a', 'b'] {
            let id = labels.len();
            labels.push(format!("{}{}", c.label(v), copy));
            covers.push((index[bottom], id));
            for &e in c.upper_covers(v) {
                covers.push((id, index[e]));
            }
        }
    }
    Poset::from_cover_relations(labels.len(), covers)?.with_labels(labels)
}

/// An upside-down tree of rank `n`: every element of rank `k >= 2` covers
/// `e[k - 2]` elements of rank `k - 1`, and every rank-1 element covers the
/// minimum.
pub fn tree_interval(e: &[usize], n: usize) -> Result<Poset, PosetError> {
    if n < 1 || e.len() + 1 != n {
        return Err(PosetError::InvalidParameter(format!(
            "a rank-{n} tree needs {} branching numbers, found {}",
            n.saturating_sub(1),
            e.len()
        )));
    }
    if e.iter().any(|&x| x == 0) {
        return Err(PosetError::InvalidParameter("branching numbers must be positive".into()));
    }
    let mut labels = vec!["1̂".to_string()];
    let mut covers = Vec::new();
    let mut frontier = vec![0usize];
    for k in (2..=n).rev() {
        let mut next = Vec::new();
        for &parent in &frontier {
            for j in 0..e[k - 2] {
                let id = labels.len();
                labels.push(format!("{}.{}", labels[parent].trim_start_matches("1̂"), j + 1));
                covers.push((id, parent));
                next.push(id);
            }
        }
        frontier = next;
    }
    let bottom = labels.len();
    labels.push("0̂".into());
    for &leaf in &frontier {
        covers.push((bottom, leaf));
    }
    Poset::from_cover_relations(labels.len(), covers)?.with_labels(labels)
}

/// A chain `0̂ < r1 < r2` followed by two incomparable elements at each rank
/// `3..n`, each covering both elements below, and a maximum at rank `n`.
pub fn butterfly_with_stem(n: usize) -> Result<Poset, PosetError> {
    if n < 3 {
        return Err(PosetError::InvalidParameter("butterfly with stem needs rank at least 3".into()));
    }
    let mut levels: Vec<Vec<usize>> = Vec::new();
    let mut labels = Vec::new();
    for r in 0..=n {
        let width = if (3..n).contains(&r) { 2 } else { 1 };
        let mut level = Vec::new();
        for j in 0..width {
            level.push(labels.len());
            labels.push(match (r, width) {
                (0, _) => "0̂".to_string(),
                (r, _) if r == n => "1̂".to_string(),
                (r, 1) => format!("{r}"),
                (r, _) => format!("{r}{}", ['a', 'b'][j]),
            });
        }
        levels.push(level);
    }
    let mut covers = Vec::new();
    for r in 1..=n {
        for &y in &levels[r] {
            for &x in &levels[r - 1] {
                covers.push((x, y));
            }
        }
    }
    Poset::from_cover_relations(labels.len(), covers)?.with_labels(labels)
}

/// Rank product of a poset with the butterfly of the same rank.
pub fn doubled(q: &Poset) -> Result<Poset, PosetError> {
    let n = q.rank_data()?.max_rank();
    butterfly(n.max(1)).rank_product(q)
}

/// A parsed family request such as `boolean 4` or `glued-ngons 3 3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Chain(usize),
    Boolean(usize),
    Butterfly(usize),
    Cubical(usize),
    Ngon(usize),
    GluedNgons(Vec<usize>),
    SigmaStar(usize),
    DeformedCubical(usize),
    TreeInterval(usize, Vec<usize>),
    ButterflyWithStem(usize),
    DoubledTree(usize, Vec<usize>),
}

/// Errors from parsing a family request.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("unknown family {name:?}; known families:\n{catalog}")]
    Unknown { name: String, catalog: String },
    #[error("family {name} expects {expected}")]
    BadArguments { name: &'static str, expected: &'static str },
    #[error(transparent)]
    Build(#[from] PosetError),
}

const CATALOG: &[(&str, &str)] = &[
    ("chain", "N"),
    ("boolean", "N"),
    ("butterfly", "N"),
    ("cubical", "N (cube dimension; rank N+1)"),
    ("ngon", "Q"),
    ("glued-ngons", "Q1 Q2 ..."),
    ("sigma-star", "N (dual suspension of the rank-N Boolean algebra)"),
    ("deformed-cubical", "N"),
    ("tree-interval", "N E2 ... EN"),
    ("butterfly-with-stem", "N"),
    ("doubled-tree", "N E2 ... EN"),
];

/// Human-readable list of the available families.
pub fn catalog() -> String {
    CATALOG.iter().map(|(n, a)| format!("  {n} {a}")).collect::<Vec<_>>().join("\n")
}

impl FamilySpec {
    /// Parses a family name followed by numeric arguments.
    pub fn parse(tokens: &[String]) -> Result<Self, FamilyError> {
        let (name, rest) = tokens.split_first().ok_or_else(|| FamilyError::Unknown {
            name: String::new(),
            catalog: catalog(),
        })?;
        let (key, expected) = *CATALOG.iter().find(|(n, _)| *n == name.as_str()).ok_or_else(|| {
            FamilyError::Unknown { name: name.clone(), catalog: catalog() }
        })?;
        let bad = || FamilyError::BadArguments { name: key, expected };
        let nums: Vec<usize> = rest.iter().map(|t| t.parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
        let one = || -> Result<usize, FamilyError> {
            match nums.as_slice() {
                [n] => Ok(*n),
                _ => Err(bad()),
            }
        };
        Ok(match key {
            "chain" => FamilySpec::Chain(one()?),
            "boolean" => FamilySpec::Boolean(one()?),
            "butterfly" => FamilySpec::Butterfly(one()?),
            "cubical" => FamilySpec::Cubical(one()?),
            "ngon" => FamilySpec::Ngon(one()?),
            "glued-ngons" if !nums.is_empty() => FamilySpec::GluedNgons(nums),
            "sigma-star" => FamilySpec::SigmaStar(one()?),
            "deformed-cubical" => FamilySpec::DeformedCubical(one()?),
            "tree-interval" if !nums.is_empty() => FamilySpec::TreeInterval(nums[0], nums[1..].to_vec()),
            "butterfly-with-stem" => FamilySpec::ButterflyWithStem(one()?),
            "doubled-tree" if !nums.is_empty() => FamilySpec::DoubledTree(nums[0], nums[1..].to_vec()),
            _ => return Err(bad()),
        })
    }

    /// Builds the requested poset.
    pub fn build(&self) -> Result<Poset, FamilyError> {
        let bounded = |n: usize, max: usize, name: &'static str| -> Result<(), FamilyError> {
            if n > max {
                return Err(FamilyError::BadArguments { name, expected: "a smaller size" });
            }
            Ok(())
        };
        Ok(match self {
            FamilySpec::Chain(n) => chain(*n),
            FamilySpec::Boolean(n) => {
                bounded(*n, 16, "boolean")?;
                boolean_lattice(*n)
            }
            FamilySpec::Butterfly(n) => {
                if *n == 0 {
                    return Err(FamilyError::BadArguments { name: "butterfly", expected: "N >= 1" });
                }
                butterfly(*n)
            }
            FamilySpec::Cubical(n) => {
                bounded(*n, 9, "cubical")?;
                cubical_lattice(*n)
            }
            FamilySpec::Ngon(q) => ngon_face_poset(*q)?,
            FamilySpec::GluedNgons(qs) => glued_ngons(qs)?,
            FamilySpec::SigmaStar(n) => {
                bounded(*n, 16, "sigma-star")?;
                sigma_star_boolean(*n)
            }
            FamilySpec::DeformedCubical(n) => {
                bounded(*n, 10, "deformed-cubical")?;
                deformed_cubical(*n)?
            }
            FamilySpec::TreeInterval(n, e) => tree_interval(e, *n)?,
            FamilySpec::ButterflyWithStem(n) => butterfly_with_stem(*n)?,
            FamilySpec::DoubledTree(n, e) => doubled(&tree_interval(e, *n)?)?,
        })
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        match self {
            FamilySpec::Chain(n) => write!(f, "chain {n}"),
            FamilySpec::Boolean(n) => write!(f, "boolean {n}"),
            FamilySpec::Butterfly(n) => write!(f, "butterfly {n}"),
            FamilySpec::Cubical(n) => write!(f, "cubical {n}"),
            FamilySpec::Ngon(q) => write!(f, "ngon {q}"),
            FamilySpec::GluedNgons(qs) => write!(f, "glued-ngons {}", join(qs)),
            FamilySpec::SigmaStar(n) => write!(f, "sigma-star {n}"),
            FamilySpec::DeformedCubical(n) => write!(f, "deformed-cubical {n}"),
            FamilySpec::TreeInterval(n, e) => write!(f, "tree-interval {n} {}", join(e)),
            FamilySpec::ButterflyWithStem(n) => write!(f, "butterfly-with-stem {n}"),
            FamilySpec::DoubledTree(n, e) => write!(f, "doubled-tree {n} {}", join(e)),
        }
    }
}
