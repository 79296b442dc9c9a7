//! The classification tree.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use super::solve::{Model, OddWindow, WindowShape};
use super::{rat, Annotation, ClassifierError, ConstraintSet, Rejection, SearchMode};

/// How a node's value came about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    /// The fixed start `V(0) = V(1) = 1`.
    Root,
    /// A free odd-rank value taken from its window.
    Chosen,
    /// An even-rank value determined by the ranks below it.
    Forced,
}

/// Outcome of a node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum NodeStatus {
    /// Some descendant is a leaf.
    Internal,
    /// Reaches the maximum rank and extends one more step.
    Leaf,
    /// The node's own value is rejected.
    Pruned { rejection: Rejection },
    /// Below the maximum rank with no surviving descendant.
    Exhausted,
    /// Reaches the maximum rank but admits no extension.
    DeadEnd,
}

/// A node of the classification tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeNode {
    pub rank: usize,
    pub kind: NodeKind,
    /// `V(rank)`, or the rejected rational value.
    #[serde(serialize_with = "crate::bigjson::opt_rational")]
    pub value: Option<BigRational>,
    /// `V(rank) / V(rank - 1)`.
    #[serde(serialize_with = "crate::bigjson::opt_rational")]
    pub ratio: Option<BigRational>,
    #[serde(flatten)]
    pub status: NodeStatus,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub annotations: Vec<Annotation>,
    /// Window for the next odd rank, when the next rank is odd.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<OddWindow>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<TreeNode>,
}

impl TreeNode {
    fn has_leaf(&self) -> bool {
        matches!(self.status, NodeStatus::Leaf) || self.children.iter().any(TreeNode::has_leaf)
    }

    fn walk<'a>(&'a self, out: &mut Vec<&'a TreeNode>) {
        out.push(self);
        for c in &self.children {
            c.walk(out);
        }
    }
}

/// A surviving sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Leaf {
    /// `V(0), ..., V(max_rank)`.
    #[serde(serialize_with = "crate::bigjson::nums")]
    pub values: Vec<BigUint>,
    /// `V(n) / V(n-1)` for `n = 1, ..., max_rank`.
    #[serde(serialize_with = "crate::bigjson::nums")]
    pub ratios: Vec<BigUint>,
    /// Annotations met on the path from the root.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub annotations: Vec<Annotation>,
}

/// The complete search tree for one run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationTree {
    #[serde(flatten)]
    pub mode: SearchMode,
    pub max_rank: usize,
    pub constraints: ConstraintSet,
    pub odd_cap: Option<u64>,
    pub root: TreeNode,
}

struct Searcher {
    model: Model,
    max_rank: usize,
    cap: Option<u64>,
}

/// Runs the search up to `max_rank`.
///
/// `odd_cap` bounds odd-rank windows the arithmetic leaves unbounded; such a
/// window without a cap is an error.
pub fn search_factorials(
    mode: SearchMode,
    max_rank: usize,
    constraints: ConstraintSet,
    odd_cap: Option<u64>,
) -> Result<ClassificationTree, ClassifierError> {
    if max_rank < 4 {
        return Err(ClassifierError::MaxRankTooSmall { minimum: 4, found: max_rank });
    }
    let searcher = Searcher { model: Model::new(mode, constraints, max_rank), max_rank, cap: odd_cap };
    let root = searcher.node(NodeKind::Root, vec![BigUint::one(), BigUint::one()], Vec::new())?;
    Ok(ClassificationTree { mode, max_rank, constraints, odd_cap, root })
}

fn pruned(rank: usize, kind: NodeKind, prev: &BigUint, rejection: Rejection, annotations: Vec<Annotation>) -> TreeNode {
    let ratio = rejection.value.as_ref().map(|v| v / rat(prev));
    TreeNode {
        rank,
        kind,
        value: rejection.value.clone(),
        ratio,
        status: NodeStatus::Pruned { rejection },
        annotations,
        window: None,
        children: Vec::new(),
    }
}

impl Searcher {
    fn node(&self, kind: NodeKind, vals: Vec<BigUint>, annotations: Vec<Annotation>) -> Result<TreeNode, ClassifierError> {
        let rank = vals.len() - 1;
        let mut node = TreeNode {
            rank,
            kind,
            value: Some(rat(&vals[rank])),
            ratio: Some(rat(&(&vals[rank] / &vals[rank - 1]))),
            status: NodeStatus::Internal,
            annotations,
            window: None,
            children: Vec::new(),
        };
        if rank == self.max_rank {
            node.status = if self.extends(&vals)? { NodeStatus::Leaf } else { NodeStatus::DeadEnd };
            return Ok(node);
        }
        let next = rank + 1;
        if next % 2 == 0 {
            let child = match self.model.solve_even(&vals) {
                Ok(v) => {
                    let mut ext = vals.clone();
                    ext.push(v);
                    self.node(NodeKind::Forced, ext, Vec::new())?
                }
                Err(rej) => pruned(next, NodeKind::Forced, &vals[rank], rej, Vec::new()),
            };
            node.children.push(child);
        } else {
            let window = self.model.odd_window(&vals);
            let (range, witness) = match &window.shape {
                WindowShape::Empty { .. } => (None, None),
                WindowShape::Bounded { first, last, interval } => {
                    (Some((first.clone(), last.clone())), interval.upper.as_ref().map(|_| last + 1))
                }
                WindowShape::Unbounded { first } => match self.cap {
                    Some(c) => (Some((first.clone(), BigInt::from(c))), None),
                    None => return Err(ClassifierError::CapRequired { rank: next }),
                },
            };
            let values: Vec<BigUint> = match range {
                Some((first, last)) => num_iter_range(&first, &last),
                None => Vec::new(),
            };
            let children: Result<Vec<TreeNode>, ClassifierError> =
                values.par_iter().map(|c| self.odd_child(&vals, c)).collect();
            node.children = children?;
            if let Some(w) = witness.and_then(|w: BigInt| w.to_biguint()) {
                if let Some(child) = self.boundary_witness(&vals, &w) {
                    node.children.push(child);
                }
            }
            node.window = Some(window);
        }
        if !node.has_leaf() {
            node.status = NodeStatus::Exhausted;
        }
        Ok(node)
    }

    fn odd_child(&self, vals: &[BigUint], ratio: &BigUint) -> Result<TreeNode, ClassifierError> {
        let annotations = self.model.annotate(vals, ratio);
        let (ext, res) = self.model.extend_odd(vals, ratio);
        match res {
            Ok(()) => self.node(NodeKind::Chosen, ext, annotations),
            Err(rej) => Ok(pruned(vals.len(), NodeKind::Chosen, &vals[vals.len() - 1], rej, annotations)),
        }
    }

    /// The first value past the upper end of a window, recorded with the
    /// rejection that excludes it.
    fn boundary_witness(&self, vals: &[BigUint], ratio: &BigUint) -> Option<TreeNode> {
        let rank = vals.len();
        let (ext, res) = self.model.extend_odd(vals, ratio);
        let rejection = match res {
            Err(rej) => rej,
            Ok(()) => self.model.solve_even(&ext).err()?,
        };
        let mut node = pruned(rank, NodeKind::Chosen, &vals[rank - 1], rejection, self.model.annotate(vals, ratio));
        node.value = Some(rat(&ext[rank]));
        node.ratio = Some(rat(ratio));
        Some(node)
    }

    /// Whether a sequence that ends at the maximum rank extends by one
    /// more rank, and by one more odd-even pair when that rank is odd.
    fn extends(&self, vals: &[BigUint]) -> Result<bool, ClassifierError> {
        if vals.len() % 2 == 0 {
            Ok(self.model.solve_even(vals).is_ok())
        } else {
            Ok(!self.model.candidates(vals, self.cap)?.is_empty())
        }
    }
}

fn num_iter_range(first: &BigInt, last: &BigInt) -> Vec<BigUint> {
    let mut out = Vec::new();
    let mut c = first.clone();
    while &c <= last {
        out.extend(c.to_biguint());
        c += 1;
    }
    out
}

impl ClassificationTree {
    /// All nodes in depth-first order.
    pub fn nodes(&self) -> Vec<&TreeNode> {
        let mut out = Vec::new();
        self.root.walk(&mut out);
        out
    }

    /// The surviving sequences in tree order.
    pub fn leaves(&self) -> Vec<Leaf> {
        let mut out = Vec::new();
        let mut path = vec![BigUint::one()];
        collect_leaves(&self.root, &mut path, &mut Vec::new(), &mut out);
        out
    }

    /// Number of rejections by reason tag.
    pub fn prune_counts(&self) -> BTreeMap<&'static str, usize> {
        let mut out = BTreeMap::new();
        for n in self.nodes() {
            if let NodeStatus::Pruned { rejection } = &n.status {
                *out.entry(rejection.reason.tag()).or_insert(0) += 1;
            }
            if let Some(OddWindow { shape: WindowShape::Empty { witness }, .. }) = &n.window {
                *out.entry(witness.reason.tag()).or_insert(0) += 1;
            }
        }
        out
    }

    /// Number of nodes at the maximum rank without an extension.
    pub fn dead_ends(&self) -> usize {
        self.nodes().iter().filter(|n| n.status == NodeStatus::DeadEnd).count()
    }

    /// Pretty JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tree serializes")
    }

    /// Indented text rendering.
    pub fn render(&self) -> String {
        let (v, r) = match self.mode {
            SearchMode::Binomial => ("B", "A"),
            SearchMode::Sheffer(_) => ("D", "C"),
        };
        let mut out = String::new();
        let _ = writeln!(out, "{} up to rank {}", self.mode, self.max_rank);
        render_node(&self.root, 0, v, r, &mut out);
        let leaves = self.leaves();
        let _ = writeln!(out, "{} leaves", leaves.len());
        for leaf in &leaves {
            let ratios: Vec<String> = leaf.ratios.iter().map(ToString::to_string).collect();
            let _ = write!(out, "  {r} = [{}]", ratios.join(", "));
            for a in &leaf.annotations {
                let _ = write!(out, "  ({a})");
            }
            out.push('\n');
        }
        out
    }
}

fn collect_leaves(node: &TreeNode, path: &mut Vec<BigUint>, notes: &mut Vec<Annotation>, out: &mut Vec<Leaf>) {
    if matches!(node.status, NodeStatus::Pruned { .. }) {
        return;
    }
    let value = node.value.as_ref().expect("accepted nodes carry values").to_integer();
    path.push(value.to_biguint().expect("positive"));
    let mark = notes.len();
    notes.extend(node.annotations.iter().copied());
    if node.status == NodeStatus::Leaf {
        let ratios = path.windows(2).map(|w| &w[1] / &w[0]).collect();
        out.push(Leaf { values: path.clone(), ratios, annotations: notes.clone() });
    }
    for c in &node.children {
        collect_leaves(c, path, notes, out);
    }
    notes.truncate(mark);
    path.pop();
}

fn render_node(node: &TreeNode, depth: usize, v: &str, r: &str, out: &mut String) {
    let pad = "  ".repeat(depth);
    let show = |x: &Option<BigRational>| x.as_ref().map_or_else(|| "?".to_string(), ToString::to_string);
    let kind = match node.kind {
        NodeKind::Root => "root",
        NodeKind::Chosen => "chosen",
        NodeKind::Forced => "forced",
    };
    let _ = write!(
        out,
        "{pad}rank {}: {r} = {}, {v} = {} [{kind}]",
        node.rank,
        show(&node.ratio),
        show(&node.value)
    );
    match &node.status {
        NodeStatus::Internal => {}
        NodeStatus::Leaf => out.push_str(" leaf"),
        NodeStatus::Pruned { rejection } => {
            let _ = write!(out, " pruned at rank {}: {}", rejection.rank, rejection.reason);
        }
        NodeStatus::Exhausted => out.push_str(" exhausted"),
        NodeStatus::DeadEnd => out.push_str(" dead end"),
    }
    for a in &node.annotations {
        let _ = write!(out, " ({a})");
    }
    out.push('\n');
    if let Some(w) = &node.window {
        let _ = write!(out, "{pad}  window for rank {}: x = {}", w.rank, w.x);
        match &w.shape {
            WindowShape::Bounded { first, last, .. } => {
                let _ = writeln!(out, ", values {first}..={last}");
            }
            WindowShape::Unbounded { first } => {
                let _ = writeln!(out, ", values from {first}, capped");
            }
            WindowShape::Empty { witness } => {
                let _ = writeln!(out, ", empty: {}", witness.reason);
            }
        }
    }
    for c in &node.children {
        render_node(c, depth + 1, v, r, out);
    }
}
