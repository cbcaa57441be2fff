//! Golden tables of affine classes and orbit-wise comparison with atlases.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;
use ucycle_core::search::{AtlasEntry, Verdict};
use ucycle_core::text::parse_list;
use ucycle_core::{canonicalize_affine, IndexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TableId {
    Obs1,
    Obs2,
    Obs3,
}

impl TableId {
    pub const ALL: [TableId; 3] = [TableId::Obs1, TableId::Obs2, TableId::Obs3];

    pub fn name(self) -> &'static str {
        match self {
            TableId::Obs1 => "obs1",
            TableId::Obs2 => "obs2",
            TableId::Obs3 => "obs3",
        }
    }

    /// The checked-in table text.
    pub fn source(self) -> &'static str {
        match self {
            TableId::Obs1 => include_str!("../data/obs1.txt"),
            TableId::Obs2 => include_str!("../data/obs2.txt"),
            TableId::Obs3 => include_str!("../data/obs3.txt"),
        }
    }

    pub fn load(self) -> GoldenTable {
        GoldenTable::parse(self.source()).expect("checked-in golden tables parse")
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TableId {
    type Err = GoldenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TableId::ALL.into_iter().find(|t| t.name() == s).ok_or_else(|| GoldenError::UnknownTable(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GoldenError {
    #[error("unknown table {0:?} (expected obs1, obs2 or obs3)")]
    UnknownTable(String),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing header `{0}`")]
    MissingHeader(&'static str),
    #[error("rows are not strictly increasing at line {0}")]
    Unsorted(usize),
    #[error("row {row} has an index at or above q^n = {modulus}")]
    OutOfRange { row: usize, modulus: u64 },
}

/// One representative per affine class, for fixed `q`, `n` and verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenTable {
    pub tag: String,
    pub q: u32,
    pub n: u32,
    pub verdict: Verdict,
    pub rows: Vec<IndexSet>,
}

impl GoldenTable {
    /// Format: `# golden table <tag>`, `# q=<q> n=<n> verdict=<v>`, then one
    /// comma-separated set per line in increasing lexicographic order.
    pub fn parse(text: &str) -> Result<Self, GoldenError> {
        let (mut tag, mut q, mut n, mut verdict) = (None, None, None, None);
        let mut rows: Vec<IndexSet> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.trim();
            let syntax = |msg: String| GoldenError::Syntax { line, msg };
            if body.is_empty() {
                continue;
            }
            if let Some(comment) = body.strip_prefix('#') {
                let comment = comment.trim();
                if let Some(t) = comment.strip_prefix("golden table") {
                    tag = Some(t.trim().to_string());
                    continue;
                }
                for field in comment.split_whitespace() {
                    let Some((key, value)) = field.split_once('=') else { continue };
                    match key {
                        "q" => q = Some(value.parse::<u32>().map_err(|e| syntax(e.to_string()))?),
                        "n" => n = Some(value.parse::<u32>().map_err(|e| syntax(e.to_string()))?),
                        "verdict" => verdict = Some(value.parse::<Verdict>().map_err(|e| syntax(e.to_string()))?),
                        _ => {}
                    }
                }
                continue;
            }
            let values = parse_list(body).map_err(|e| syntax(e.to_string()))?;
            let set = IndexSet::from_integers(values).map_err(|e| syntax(e.to_string()))?;
            if rows.last().is_some_and(|prev| prev.elements() >= set.elements()) {
                return Err(GoldenError::Unsorted(line));
            }
            rows.push(set);
        }
        let q = q.ok_or(GoldenError::MissingHeader("q"))?;
        let n = n.ok_or(GoldenError::MissingHeader("n"))?;
        let modulus = ucycle_core::checked_pow(q as u64, n).ok_or(GoldenError::MissingHeader("q^n in range"))?;
        if let Some(row) = rows.iter().position(|r| r.greatest() >= modulus) {
            return Err(GoldenError::OutOfRange { row: row + 1, modulus });
        }
        Ok(Self {
            tag: tag.ok_or(GoldenError::MissingHeader("golden table"))?,
            q,
            n,
            verdict: verdict.ok_or(GoldenError::MissingHeader("verdict"))?,
            rows,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("# golden table {}\n# q={} n={} verdict={}\n", self.tag, self.q, self.n, self.verdict);
        for r in &self.rows {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out
    }

    pub fn modulus(&self) -> u64 {
        (self.q as u64).pow(self.n)
    }
}

/// Orbit-wise comparison of an atlas against a golden table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchReport {
    pub table: String,
    pub verdict: Verdict,
    /// Canonical forms present on both sides.
    pub matched: Vec<String>,
    /// Golden classes the atlas does not report with the table's verdict.
    pub missing: Vec<String>,
    /// Atlas classes with the table's verdict that the table lacks.
    pub extra: Vec<String>,
    /// Golden rows whose class was already given by an earlier row.
    pub duplicate_rows: Vec<String>,
}

impl MatchReport {
    pub fn is_match(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty() && self.duplicate_rows.is_empty()
    }
}

/// Canonicalizes both sides under `s -> k s + b` mod `q^n` and compares the
/// classes carrying the table's verdict.
pub fn diff_golden(atlas: &[AtlasEntry], table: &GoldenTable) -> MatchReport {
    let modulus = table.modulus();
    let canon = |s: &IndexSet| canonicalize_affine(s, modulus).canonical;
    let mut golden = BTreeSet::new();
    let mut duplicate_rows = Vec::new();
    for row in &table.rows {
        if !golden.insert(canon(row)) {
            duplicate_rows.push(row.to_string());
        }
    }
    let ours: BTreeSet<IndexSet> =
        atlas.iter().filter(|e| e.verdict == table.verdict).map(|e| canon(&e.canonical)).collect();
    let fmt = |it: &mut dyn Iterator<Item = &IndexSet>| it.map(|s| s.to_string()).collect::<Vec<_>>();
    MatchReport {
        table: table.tag.clone(),
        verdict: table.verdict,
        matched: fmt(&mut golden.intersection(&ours)),
        missing: fmt(&mut golden.difference(&ours)),
        extra: fmt(&mut ours.difference(&golden)),
        duplicate_rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_parse_and_round_trip() {
        for id in TableId::ALL {
            let t = id.load();
            assert_eq!(t.tag, id.name());
            assert_eq!(t.to_text(), id.source());
        }
        assert_eq!(TableId::Obs2.load().rows.len(), 9);
        assert_eq!(TableId::Obs3.load().rows.len(), 224);
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(matches!(
            GoldenTable::parse("# golden table x\n# q=2 n=2 verdict=valid\n0,1\n0,1\n"),
            Err(GoldenError::Unsorted(4))
        ));
        assert!(matches!(GoldenTable::parse("0,1\n"), Err(GoldenError::MissingHeader(_))));
        assert!(matches!(
            GoldenTable::parse("# golden table x\n# q=2 n=2 verdict=valid\n0,7\n"),
            Err(GoldenError::OutOfRange { .. })
        ));
        assert!("obs4".parse::<TableId>().is_err());
    }

    #[test]
    fn diff_detects_deleted_row() {
        let table = TableId::Obs2.load();
        let mut atlas: Vec<AtlasEntry> =
            table.rows.iter().map(|r| AtlasEntry { canonical: r.clone(), verdict: Verdict::Valid }).collect();
        assert!(diff_golden(&atlas, &table).is_match());
        atlas.remove(3);
        let r = diff_golden(&atlas, &table);
        assert_eq!(r.missing.len(), 1);
        assert!(r.extra.is_empty());
    }
}
