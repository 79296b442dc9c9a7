//! JSON and Graphviz DOT serialisation of posets.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Poset, PosetError};

/// Wire format: `{"size": N, "covers": [[a, b], ...], "labels": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetJson {
    pub size: usize,
    pub covers: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// How strictly incoming cover lists are treated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReadOptions {
    /// Accept an arbitrary acyclic relation and reduce it to covers.
    pub reduce: bool,
}

impl Poset {
    /// The wire representation with covers in lexicographic order.
    pub fn to_json_value(&self) -> PosetJson {
        PosetJson {
            size: self.size(),
            covers: self.covers().iter().map(|&(a, b)| [a, b]).collect(),
            labels: self.labels().map(<[String]>::to_vec),
        }
    }

    /// Serialises to compact JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("poset serialises")
    }

    /// Parses the wire format, rejecting anything that is not a cover relation.
    pub fn from_json(text: &str) -> Result<Poset, PosetError> {
        Self::from_json_with(text, ReadOptions::default())
    }

    /// Parses the wire format with the given options.
    pub fn from_json_with(text: &str, opts: ReadOptions) -> Result<Poset, PosetError> {
        let doc: PosetJson =
            serde_json::from_str(text).map_err(|e| PosetError::Parse(e.to_string()))?;
        Self::from_json_value(doc, opts)
    }

    /// Builds a poset from a parsed document.
    pub fn from_json_value(doc: PosetJson, opts: ReadOptions) -> Result<Poset, PosetError> {
        let pairs = doc.covers.iter().map(|&[a, b]| (a, b));
        let p = if opts.reduce {
            Poset::from_relation_reduced(doc.size, pairs)?
        } else {
            Poset::from_cover_relations(doc.size, pairs)?
        };
        match doc.labels {
            Some(l) => p.with_labels(l),
            None => Ok(p),
        }
    }

    /// Graphviz rendering with one node per element, annotated with its rank,
    /// and elements of equal rank grouped on one row.
    pub fn to_dot(&self) -> String {
        let key = match self.rank_data() {
            Ok(rd) => rd.ranks().to_vec(),
            Err(_) => self.heights(),
        };
        let top = key.iter().copied().max().unwrap_or(0);
        let mut out = String::from("digraph poset {\n  rankdir=BT;\n  node [shape=box];\n");
        for r in 0..=top {
            let members: Vec<usize> = (0..self.size()).filter(|&x| key[x] == r).collect();
            if members.is_empty() {
                continue;
            }
            let _ = write!(out, "  {{ rank=same;");
            for x in members {
                let label = self.label(x).replace('"', "\\\"");
                let _ = write!(out, " n{x} [label=\"{label} (r{r})\"];");
            }
            out.push_str(" }\n");
        }
        for &(a, b) in self.covers() {
            let _ = writeln!(out, "  n{a} -> n{b};");
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let p = Poset::from_cover_relations(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let text = p.to_json();
        assert_eq!(text, r#"{"size":4,"covers":[[0,1],[0,2],[1,3],[2,3]]}"#);
        assert_eq!(Poset::from_json(&text).unwrap(), p);
    }

    #[test]
    fn json_reduce_option() {
        let text = r#"{"size":3,"covers":[[0,1],[1,2],[0,2]]}"#;
        assert!(matches!(Poset::from_json(text), Err(PosetError::NotReduced { .. })));
        let p = Poset::from_json_with(text, ReadOptions { reduce: true }).unwrap();
        assert_eq!(p.covers(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn dot_has_one_edge_per_cover() {
        let p = Poset::from_cover_relations(3, [(0, 1), (0, 2)]).unwrap();
        let dot = p.to_dot();
        assert_eq!(dot.matches("->").count(), 2);
        assert!(dot.contains("rank=same; n1 [label=\"1 (r1)\"]; n2"));
    }
}
