//! Regular CW complexes given by cells and explicit incidences.
//!
//! A complex is a list of cells with dimensions and the pairs `(face, cell)`
//! where `face` is a codimension-one face of `cell`. Cells are identified by
//! their position; optional labels make it possible to refer to vertices by
//! name when gluing.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poset::{Poset, PosetError};

/// Errors from building or combining complexes.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("cell ids must be exactly 0..{count}; problem with id {id}")]
    BadCellId { id: usize, count: usize },
    #[error("incidence ({face}, {cell}) joins dimensions {face_dim} and {cell_dim}")]
    BadIncidence { face: usize, cell: usize, face_dim: usize, cell_dim: usize },
    #[error("incidence ({0}, {1}) refers to an unknown cell")]
    UnknownCell(usize, usize),
    #[error("cell {cell} of dimension {dim} has no boundary")]
    MissingBoundary { cell: usize, dim: usize },
    #[error("gluing pair ({0}, {1}) does not name two vertices")]
    BadGluing(usize, usize),
    #[error("no vertex labelled {0:?}")]
    UnknownLabel(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed complex document: {0}")]
    Parse(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// Wire format: `{"cells": [[id, dim], ...], "incidences": [[face, cell], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub cells: Vec<[usize; 2]>,
    pub incidences: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// A finite regular CW complex described combinatorially.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellComplex {
    dims: Vec<usize>,
    labels: Vec<String>,
    faces: Vec<Vec<usize>>,
    cofaces: Vec<Vec<usize>>,
}

impl CellComplex {
    /// Builds a complex from `(id, dim)` cells and `(face, cell)` incidences.
    pub fn new(cells: &[(usize, usize)], incidences: &[(usize, usize)]) -> Result<Self, ComplexError> {
        let count = cells.len();
        let mut dims = vec![usize::MAX; count];
        for &(id, dim) in cells {
            if id >= count || dims[id] != usize::MAX {
                return Err(ComplexError::BadCellId { id, count });
            }
            dims[id] = dim;
        }
        let mut faces = vec![Vec::new(); count];
        let mut cofaces = vec![Vec::new(); count];
        let unique: BTreeSet<(usize, usize)> = incidences.iter().copied().collect();
        for (f, c) in unique {
            if f >= count || c >= count {
                return Err(ComplexError::UnknownCell(f, c));
            }
            if dims[f] + 1 != dims[c] {
                return Err(ComplexError::BadIncidence { face: f, cell: c, face_dim: dims[f], cell_dim: dims[c] });
            }
            faces[c].push(f);
            cofaces[f].push(c);
        }
        if let Some(cell) = (0..count).find(|&c| dims[c] > 0 && faces[c].is_empty()) {
            return Err(ComplexError::MissingBoundary { cell, dim: dims[cell] });
        }
        let labels = (0..count).map(|c| c.to_string()).collect();
        Ok(CellComplex { dims, labels, faces, cofaces })
    }

    /// Attaches labels, one per cell.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, ComplexError> {
        if labels.len() != self.dims.len() {
            return Err(ComplexError::InvalidParameter(format!(
                "expected {} labels, found {}",
                self.dims.len(),
                labels.len()
            )));
        }
        self.labels = labels;
        Ok(self)
    }

    /// Prefixes every label.
    pub fn prefixed(mut self, prefix: &str) -> Self {
        for l in &mut self.labels {
            *l = format!("{prefix}{l}");
        }
        self
    }

    /// Number of cells.
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    /// Whether the complex has no cells.
    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// Dimension of a cell.
    pub fn dim(&self, cell: usize) -> usize {
        self.dims[cell]
    }

    /// Label of a cell.
    pub fn label(&self, cell: usize) -> &str {
        &self.labels[cell]
    }

    /// Codimension-one faces of a cell.
    pub fn faces(&self, cell: usize) -> &[usize] {
        &self.faces[cell]
    }

    /// Cells having `cell` as a codimension-one face.
    pub fn cofaces(&self, cell: usize) -> &[usize] {
        &self.cofaces[cell]
    }

    /// The vertex with the given label.
    pub fn vertex(&self, label: &str) -> Result<usize, ComplexError> {
        (0..self.len())
            .find(|&c| self.dims[c] == 0 && self.labels[c] == label)
            .ok_or_else(|| ComplexError::UnknownLabel(label.to_string()))
    }

    /// Cells of dimension `d` in id order.
    pub fn cells_of_dim(&self, d: usize) -> Vec<usize> {
        (0..self.len()).filter(|&c| self.dims[c] == d).collect()
    }

    /// Number of cells in each dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.dims.iter().copied().max().map_or(0, |d| d + 1);
        let mut f = vec![0; top];
        for &d in &self.dims {
            f[d] += 1;
        }
        f
    }

    /// Alternating sum of the f-vector.
    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().iter().enumerate().map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) }).sum()
    }

    /// Vertices of a cell, found by descending through faces.
    pub fn vertices_of(&self, cell: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        let mut stack = vec![cell];
        while let Some(c) = stack.pop() {
            if self.dims[c] == 0 {
                out.insert(c);
            }
            stack.extend(self.faces[c].iter().copied());
        }
        out
    }

    /// Number of 2-cells containing each vertex.
    pub fn two_cells_at_vertices(&self) -> BTreeMap<usize, usize> {
        let mut count: BTreeMap<usize, usize> = self.cells_of_dim(0).into_iter().map(|v| (v, 0)).collect();
        for t in self.cells_of_dim(2) {
            for v in self.vertices_of(t) {
                *count.entry(v).or_default() += 1;
            }
        }
        count
    }

    /// Whether every edge lies in exactly two 2-cells and the complex is
    /// two-dimensional.
    pub fn is_closed_surface(&self) -> bool {
        self.f_vector().len() == 3 && self.cells_of_dim(1).iter().all(|&e| self.cofaces[e].len() == 2)
    }

    /// The wire representation.
    pub fn to_json_value(&self) -> ComplexJson {
        let mut incidences: Vec<[usize; 2]> =
            (0..self.len()).flat_map(|c| self.faces[c].iter().map(move |&f| [f, c])).collect();
        incidences.sort_unstable();
        let default = (0..self.len()).all(|c| self.labels[c] == c.to_string());
        ComplexJson {
            cells: (0..self.len()).map(|c| [c, self.dims[c]]).collect(),
            incidences,
            labels: (!default).then(|| self.labels.clone()),
        }
    }

    /// Serialises to compact JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("complex serialises")
    }

    /// Parses the wire format.
    pub fn from_json(text: &str) -> Result<Self, ComplexError> {
        let doc: ComplexJson = serde_json::from_str(text).map_err(|e| ComplexError::Parse(e.to_string()))?;
        let cells: Vec<(usize, usize)> = doc.cells.iter().map(|&[a, b]| (a, b)).collect();
        let inc: Vec<(usize, usize)> = doc.incidences.iter().map(|&[a, b]| (a, b)).collect();
        let k = CellComplex::new(&cells, &inc)?;
        match doc.labels {
            Some(l) => k.with_labels(l),
            None => Ok(k),
        }
    }
}

/// Face poset of a complex: cells ordered by incidence, optionally with an
/// adjoined minimum (index `len()`) and maximum (index `len() + 1`).
pub fn face_poset(k: &CellComplex, bounded: bool) -> Result<Poset, ComplexError> {
    let n = k.len();
    let mut covers: Vec<(usize, usize)> =
        (0..n).flat_map(|c| k.faces(c).iter().map(move |&f| (f, c))).collect();
    let mut labels = k.labels.clone();
    if bounded {
        for v in k.cells_of_dim(0) {
            covers.push((n, v));
        }
        for c in (0..n).filter(|&c| k.cofaces(c).is_empty()) {
            covers.push((c, n + 1));
        }
        labels.push("0̂".into());
        labels.push("1̂".into());
    }
    Ok(Poset::from_cover_relations(labels.len(), covers)?.with_labels(labels)?)
}

/// Dual of the bounded face poset.
pub fn dual_face_poset(k: &CellComplex) -> Result<Poset, ComplexError> {
    Ok(face_poset(k, true)?.dual())
}

/// Identifies vertices `pairs[i].1` of `b` with vertices `pairs[i].0` of `a`.
///
/// Cells of `a` keep their ids; the remaining cells of `b` follow in order.
pub fn glue_complexes(a: &CellComplex, b: &CellComplex, pairs: &[(usize, usize)]) -> Result<CellComplex, ComplexError> {
    let mut target = vec![usize::MAX; b.len()];
    for &(va, vb) in pairs {
        if va >= a.len() || vb >= b.len() || a.dim(va) != 0 || b.dim(vb) != 0 || target[vb] != usize::MAX {
            return Err(ComplexError::BadGluing(va, vb));
        }
        target[vb] = va;
    }
    let mut dims = a.dims.clone();
    let mut labels = a.labels.clone();
    for c in 0..b.len() {
        if target[c] == usize::MAX {
            target[c] = dims.len();
            dims.push(b.dims[c]);
            labels.push(b.labels[c].clone());
        }
    }
    let mut inc: Vec<(usize, usize)> = (0..a.len()).flat_map(|c| a.faces[c].iter().map(move |&f| (f, c))).collect();
    inc.extend((0..b.len()).flat_map(|c| b.faces[c].iter().map(|&f| (target[f], target[c])).collect::<Vec<_>>()));
    let cells: Vec<(usize, usize)> = dims.iter().copied().enumerate().collect();
    CellComplex::new(&cells, &inc)?.with_labels(labels)
}

/// Disjoint union of complexes.
pub fn disjoint_union(a: &CellComplex, b: &CellComplex) -> Result<CellComplex, ComplexError> {
    glue_complexes(a, b, &[])
}

/// Incrementally assembles a complex from named vertices and vertex lists.
#[derive(Default)]
struct Builder {
    dims: Vec<usize>,
    labels: Vec<String>,
    inc: Vec<(usize, usize)>,
    edges: BTreeMap<(usize, usize), usize>,
}

impl Builder {
    fn cell(&mut self, dim: usize, label: String) -> usize {
        self.dims.push(dim);
        self.labels.push(label);
        self.dims.len() - 1
    }

    fn vertex(&mut self, label: impl Into<String>) -> usize {
        self.cell(0, label.into())
    }

    fn edge(&mut self, a: usize, b: usize) -> usize {
        let key = (a.min(b), a.max(b));
        if let Some(&e) = self.edges.get(&key) {
            return e;
        }
        let e = self.cell(1, format!("{}-{}", self.labels[key.0], self.labels[key.1]));
        self.inc.push((a, e));
        self.inc.push((b, e));
        self.edges.insert(key, e);
        e
    }

    /// A new edge even when one with the same endpoints exists.
    fn fresh_edge(&mut self, a: usize, b: usize) -> usize {
        let e = self.cell(1, format!("{}-{}", self.labels[a], self.labels[b]));
        self.inc.push((a, e));
        self.inc.push((b, e));
        e
    }

    /// A polygon on the given cyclic vertex sequence, reusing edges.
    fn face(&mut self, vs: &[usize]) -> usize {
        let es: Vec<usize> = (0..vs.len()).map(|i| self.edge(vs[i], vs[(i + 1) % vs.len()])).collect();
        self.face_with_edges(vs, &es)
    }

    /// A polygon with explicitly chosen boundary edges.
    fn face_with_edges(&mut self, vs: &[usize], es: &[usize]) -> usize {
        let name = vs.iter().map(|&v| self.labels[v].clone()).collect::<Vec<_>>().join(",");
        let f = self.cell(2, format!("({name})"));
        for &e in es {
            self.inc.push((e, f));
        }
        f
    }

    fn finish(self) -> CellComplex {
        let cells: Vec<(usize, usize)> = self.dims.iter().copied().enumerate().collect();
        CellComplex::new(&cells, &self.inc)
            .expect("builder produces valid complexes")
            .with_labels(self.labels)
            .expect("label count")
    }
}

/// A sphere made of an `n`-gonal antiprism band capped by two cones.
///
/// Vertices `u0..`, `l0..` form the two rings and `a`, `b` are the apexes.
/// Every ring vertex lies in five triangles and each apex in `n`.
pub fn antiprism_cap_complex(n: usize) -> Result<CellComplex, ComplexError> {
    if n < 2 {
        return Err(ComplexError::InvalidParameter("antiprism cap needs n >= 2".into()));
    }
    let mut k = Builder::default();
    let a = k.vertex("a");
    let b = k.vertex("b");
    let u: Vec<usize> = (0..n).map(|i| k.vertex(format!("u{i}"))).collect();
    let l: Vec<usize> = (0..n).map(|i| k.vertex(format!("l{i}"))).collect();
    let ring_u: Vec<usize> = (0..n).map(|i| k.fresh_edge(u[i], u[(i + 1) % n])).collect();
    let ring_l: Vec<usize> = (0..n).map(|i| k.fresh_edge(l[i], l[(i + 1) % n])).collect();
    for i in 0..n {
        let j = (i + 1) % n;
        let es = [k.edge(a, u[i]), ring_u[i], k.edge(u[j], a)];
        k.face_with_edges(&[a, u[i], u[j]], &es);
        let es = [ring_u[i], k.edge(u[j], l[j]), k.edge(l[j], u[i])];
        k.face_with_edges(&[u[i], u[j], l[j]], &es);
        let es = [ring_l[i], k.edge(l[j], u[i]), k.edge(u[i], l[i])];
        k.face_with_edges(&[l[i], l[j], u[i]], &es);
        let es = [k.edge(b, l[i]), ring_l[i], k.edge(l[j], b)];
        k.face_with_edges(&[b, l[i], l[j]], &es);
    }
    Ok(k.finish())
}

/// Boundary of the tetrahedron with vertices `z1..z4`.
pub fn tetra_boundary() -> CellComplex {
    let mut k = Builder::default();
    let z: Vec<usize> = (1..=4).map(|i| k.vertex(format!("z{i}"))).collect();
    for skip in (0..4).rev() {
        let tri: Vec<usize> = (0..4).filter(|&i| i != skip).map(|i| z[i]).collect();
        k.face(&tri);
    }
    k.finish()
}

/// Two triangles glued along their boundary, with vertices `w1, w2, w3`.
pub fn doubled_triangle() -> CellComplex {
    let mut k = Builder::default();
    let w: Vec<usize> = (1..=3).map(|i| k.vertex(format!("w{i}"))).collect();
    k.face(&w);
    k.face(&w);
    k.finish()
}

fn require(k: &CellComplex, label: &str) -> Result<usize, ComplexError> {
    k.vertex(label)
}

/// Two copies of the antiprism-cap complex with `n = 2` and a tetrahedron
/// boundary whose vertices are identified with the four apexes.
pub fn x2_x2_z_complex() -> Result<CellComplex, ComplexError> {
    let p = antiprism_cap_complex(2)?.prefixed("p.");
    let q = antiprism_cap_complex(2)?.prefixed("q.");
    let z = tetra_boundary().prefixed("z.");
    let pq = disjoint_union(&p, &q)?;
    let pairs = [("p.a", "z.z1"), ("p.b", "z.z2"), ("q.a", "z.z3"), ("q.b", "z.z4")]
        .iter()
        .map(|&(x, y)| Ok((require(&pq, x)?, require(&z, y)?)))
        .collect::<Result<Vec<_>, ComplexError>>()?;
    glue_complexes(&pq, &z, &pairs)
}

/// Antiprism-cap complexes for `n = 2` and `n = 3` glued at both apexes.
pub fn x2_x3_complex() -> Result<CellComplex, ComplexError> {
    let p = antiprism_cap_complex(2)?.prefixed("p.");
    let q = antiprism_cap_complex(3)?.prefixed("q.");
    let pairs = [(require(&p, "p.a")?, require(&q, "q.a")?), (require(&p, "p.b")?, require(&q, "q.b")?)];
    glue_complexes(&p, &q, &pairs)
}

/// Three tetrahedron boundaries `Z_1, Z_2, Z_3` and four doubled triangles
/// `W_1..W_4`; vertex `i` of `W_j` is identified with vertex `j` of
/// `Z_{perms[j][i]}`. With `None` every permutation is the identity.
pub fn zw_complex(perms: Option<[[usize; 3]; 4]>) -> Result<CellComplex, ComplexError> {
    let perms = perms.unwrap_or([[0, 1, 2]; 4]);
    for p in &perms {
        let mut s = *p;
        s.sort_unstable();
        if s != [0, 1, 2] {
            return Err(ComplexError::InvalidParameter(format!("{p:?} is not a permutation of 0..3")));
        }
    }
    let mut k = disjoint_union(&tetra_boundary().prefixed("Z1."), &tetra_boundary().prefixed("Z2."))?;
    k = disjoint_union(&k, &tetra_boundary().prefixed("Z3."))?;
    for (j, perm) in perms.iter().enumerate() {
        let w = doubled_triangle().prefixed(&format!("W{}.", j + 1));
        let pairs = (0..3)
            .map(|i| {
                Ok((
                    require(&k, &format!("Z{}.z{}", perm[i] + 1, j + 1))?,
                    require(&w, &format!("W{}.w{}", j + 1, i + 1))?,
                ))
            })
            .collect::<Result<Vec<_>, ComplexError>>()?;
        k = glue_complexes(&k, &w, &pairs)?;
    }
    Ok(k)
}

/// Named complexes available from the command line.
pub fn named_complex(name: &str) -> Result<CellComplex, ComplexError> {
    if let Some(n) = name.strip_prefix("antiprism-cap-") {
        let n = n.parse().map_err(|_| ComplexError::InvalidParameter(format!("bad size in {name:?}")))?;
        return antiprism_cap_complex(n);
    }
    match name {
        "tetra" => Ok(tetra_boundary()),
        "doubled-triangle" => Ok(doubled_triangle()),
        "x2-x2-z" => x2_x2_z_complex(),
        "x2-x3" => x2_x3_complex(),
        "zw" => zw_complex(None),
        _ => Err(ComplexError::InvalidParameter(format!(
            "unknown complex {name:?}; known: antiprism-cap-N, tetra, doubled-triangle, x2-x2-z, x2-x3, zw"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antiprism_cap_counts() {
        for n in 2..=6 {
            let k = antiprism_cap_complex(n).unwrap();
            assert_eq!(k.f_vector(), vec![2 * n + 2, 6 * n, 4 * n]);
            assert_eq!(k.euler_characteristic(), 2);
            assert!(k.is_closed_surface());
            let at = k.two_cells_at_vertices();
            for (v, c) in at {
                let want = if ["a", "b"].contains(&k.label(v)) { n } else { 5 };
                assert_eq!(c, want, "vertex {}", k.label(v));
            }
        }
    }

    #[test]
    fn small_spheres() {
        assert_eq!(tetra_boundary().f_vector(), vec![4, 6, 4]);
        assert_eq!(doubled_triangle().f_vector(), vec![3, 3, 2]);
        assert!(doubled_triangle().is_closed_surface());
    }

    #[test]
    fn glued_complex_counts() {
        assert_eq!(x2_x2_z_complex().unwrap().f_vector(), vec![12, 30, 20]);
        assert_eq!(x2_x3_complex().unwrap().f_vector(), vec![12, 30, 20]);
        assert_eq!(zw_complex(None).unwrap().f_vector(), vec![12, 30, 20]);
    }

    #[test]
    fn validation() {
        assert!(matches!(CellComplex::new(&[(0, 0), (0, 1)], &[]), Err(ComplexError::BadCellId { .. })));
        assert!(matches!(
            CellComplex::new(&[(0, 0), (1, 2)], &[(0, 1)]),
            Err(ComplexError::BadIncidence { .. })
        ));
        assert!(matches!(CellComplex::new(&[(0, 0), (1, 1)], &[]), Err(ComplexError::MissingBoundary { .. })));
    }

    #[test]
    fn json_round_trip() {
        let k = tetra_boundary();
        assert_eq!(CellComplex::from_json(&k.to_json()).unwrap(), k);
    }

    #[test]
    fn face_poset_of_tetrahedron_is_boolean_minus_top() {
        let p = face_poset(&tetra_boundary(), true).unwrap();
        assert_eq!(p.rank_data().unwrap().level_sizes(), vec![1, 4, 6, 4, 1]);
        let b = crate::constructions::boolean_lattice(4);
        assert!(crate::poset::is_isomorphic(&p, &b).is_some());
    }
}
