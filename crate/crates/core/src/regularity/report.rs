use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use serde::Serialize;

use super::{
    binomial_ep_residual, is_eulerian, sheffer_ep_residual, ChainCensus, EulerianVerdict, RegularityError,
};
use crate::poset::Poset;

/// The strongest regularity class a poset belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileKind {
    Binomial,
    Sheffer,
    Triangular,
    None,
}

/// Everything `analyze` learns about a poset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub size: usize,
    pub covers: usize,
    pub graded: bool,
    pub bounded: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level_sizes: Option<Vec<usize>>,
    pub kind: ProfileKind,
    #[serde(rename = "B", serialize_with = "crate::bigjson::opt_nums", skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<BigUint>>,
    #[serde(rename = "A", serialize_with = "crate::bigjson::opt_nums", skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<BigUint>>,
    #[serde(rename = "D", serialize_with = "crate::bigjson::opt_nums", skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<BigUint>>,
    #[serde(rename = "C", serialize_with = "crate::bigjson::opt_nums", skip_serializing_if = "Option::is_none")]
    pub c: Option<Vec<BigUint>>,
    /// Euler–Poincaré residual per rank `1..=N`, as exact rationals.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residuals: Option<Vec<String>>,
    /// Möbius value of `[0̂, y]` per rank `0..=N`.
    #[serde(serialize_with = "crate::bigjson::opt_nums", skip_serializing_if = "Option::is_none")]
    pub mobius: Option<Vec<BigInt>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eulerian: Option<EulerianVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lattice: Option<bool>,
    /// Why the next stronger class fails, when it does.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// Classifies a poset and collects its profile, residuals and Eulerian status.
pub fn analyze(p: &Poset) -> AnalysisReport {
    let mut report = AnalysisReport {
        size: p.size(),
        covers: p.covers().len(),
        graded: false,
        bounded: p.bounds().is_some(),
        rank: None,
        level_sizes: None,
        kind: ProfileKind::None,
        b: None,
        a: None,
        d: None,
        c: None,
        residuals: None,
        mobius: None,
        eulerian: None,
        lattice: None,
        notes: Vec::new(),
    };
    let rd = match p.rank_data() {
        Ok(rd) => rd,
        Err(e) => {
            report.notes.push(e.to_string());
            return report;
        }
    };
    report.graded = true;
    report.rank = Some(rd.max_rank());
    report.level_sizes = Some(rd.level_sizes());
    report.eulerian = is_eulerian(p).ok();
    if let Some((bottom, _)) = p.bounds() {
        report.lattice = p.is_lattice().ok().map(|r| r.is_ok());
        let mu = p.mobius_from(bottom);
        let mut by_rank: Vec<Option<BigInt>> = vec![None; rd.max_rank() + 1];
        let mut uniform = true;
        for y in 0..p.size() {
            let slot = by_rank[rd.rank(y)].get_or_insert_with(|| mu[y].clone());
            uniform &= *slot == mu[y];
        }
        if uniform {
            report.mobius = Some(by_rank.into_iter().flatten().collect());
        }
    } else {
        report.notes.push("not bounded".into());
    }

    let census = match ChainCensus::new(p) {
        Ok(c) => c,
        Err(e) => {
            report.notes.push(e.to_string());
            return report;
        }
    };
    if report.bounded {
        match census.binomial() {
            Ok(b) => {
                let n = b.rank();
                report.kind = ProfileKind::Binomial;
                report.a = Some(b.atoms());
                report.residuals = Some((1..=n).map(|k| binomial_ep_residual(b.values(), k).to_string()).collect());
                report.b = Some(b.values().to_vec());
                return report;
            }
            Err(e) => report.notes.push(e.to_string()),
        }
        match census.sheffer() {
            Ok(s) => {
                let n = s.rank();
                report.kind = ProfileKind::Sheffer;
                report.a = Some(s.atoms());
                report.c = Some(s.coatoms());
                report.residuals =
                    Some((1..=n).map(|k| sheffer_ep_residual(s.b(), s.d(), k).to_string()).collect());
                report.b = Some(s.b().to_vec());
                report.d = Some(s.d().to_vec());
                return report;
            }
            Err(e) => report.notes.push(e.to_string()),
        }
    }
    match census.triangular() {
        Ok(_) => report.kind = ProfileKind::Triangular,
        Err(RegularityError::NotTriangular { lower_rank, upper_rank, first, second }) => report.notes.push(format!(
            "not triangular: ranks {lower_rank}..{upper_rank} ({first}; {second})"
        )),
        Err(e) => report.notes.push(e.to_string()),
    }
    report
}

impl AnalysisReport {
    /// Deterministic pretty JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    /// Human-readable table with one row per rank.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "elements: {}  covers: {}", self.size, self.covers);
        let _ = writeln!(
            out,
            "graded: {}  bounded: {}  rank: {}",
            self.graded,
            self.bounded,
            self.rank.map_or("-".to_string(), |r| r.to_string())
        );
        let _ = writeln!(out, "class: {:?}", self.kind);
        if let Some(e) = &self.eulerian {
            match &e.witness {
                None => out.push_str("eulerian: yes\n"),
                Some(w) => {
                    let _ = writeln!(
                        out,
                        "eulerian: no (mu({}, {}) = {}, expected {})",
                        w.bottom, w.top, w.mobius, w.expected
                    );
                }
            }
        }
        if let Some(l) = self.lattice {
            let _ = writeln!(out, "lattice: {}", if l { "yes" } else { "no" });
        }
        if let Some(rank) = self.rank {
            let cell = |v: &Option<Vec<BigUint>>, i: usize| -> String {
                v.as_ref().and_then(|v| v.get(i)).map_or("-".into(), ToString::to_string)
            };
            let ratio = |v: &Option<Vec<BigUint>>, i: usize| -> String {
                if i == 0 {
                    "-".into()
                } else {
                    v.as_ref().and_then(|v| v.get(i - 1)).map_or("-".into(), ToString::to_string)
                }
            };
            let rows: Vec<[String; 8]> = (0..=rank)
                .map(|n| {
                    [
                        n.to_string(),
                        self.level_sizes.as_ref().map_or("-".into(), |l| l[n].to_string()),
                        cell(&self.b, n),
                        ratio(&self.a, n),
                        if n == 0 { "-".into() } else { cell(&self.d, n) },
                        ratio(&self.c, n),
                        self.mobius.as_ref().map_or("-".into(), |m| m[n].to_string()),
                        if n == 0 {
                            "-".into()
                        } else {
                            self.residuals.as_ref().and_then(|r| r.get(n - 1)).cloned().unwrap_or("-".into())
                        },
                    ]
                })
                .collect();
            let head = ["rank", "size", "B", "A", "D", "C", "mu", "EP residual"];
            let mut width = head.map(str::len);
            for r in &rows {
                for (w, c) in width.iter_mut().zip(r) {
                    *w = (*w).max(c.len());
                }
            }
            let line = |cells: &[String]| -> String {
                let parts: Vec<String> =
                    cells.iter().zip(width).map(|(c, w)| format!("{c:>w$}")).collect();
                parts.join("  ").trim_end().to_string()
            };
            let _ = writeln!(out, "{}", line(&head.map(String::from)));
            for r in &rows {
                let _ = writeln!(out, "{}", line(r));
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        out
    }
}
