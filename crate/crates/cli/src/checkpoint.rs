//! Append-only record of decided atlas classes, used to resume long runs.
//!
//! The first line identifies the run (`# checkpoint q=<q> n=<n> size=<k>`);
//! every further line is one atlas line, `<set>\t<verdict>`. A torn final
//! line (no trailing newline) is ignored on load.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{self, Write};
use std::path::Path;
use std::sync::Mutex;

use thiserror::Error;
use ucycle_core::search::{format_atlas_line, parse_atlas_tsv, AtlasParseError, Verdict};
use ucycle_core::IndexSet;

#[derive(Debug, Error)]
pub enum CheckpointError {
    #[error("checkpoint header missing or malformed")]
    Header,
    #[error("checkpoint is for q={q} n={n} size={size}, not this run")]
    Mismatch { q: u32, n: u32, size: u32 },
    #[error("class {0} is recorded twice with different verdicts")]
    Conflict(String),
    #[error(transparent)]
    Parse(#[from] AtlasParseError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunKey {
    pub q: u32,
    pub n: u32,
    pub size: u32,
}

impl RunKey {
    pub fn header(&self) -> String {
        format!("# checkpoint q={} n={} size={}", self.q, self.n, self.size)
    }
}

/// Parses checkpoint text into its key and decided classes.
pub fn parse_checkpoint(text: &str) -> Result<(RunKey, BTreeMap<IndexSet, Verdict>), CheckpointError> {
    let first = text.lines().next().ok_or(CheckpointError::Header)?;
    let key = parse_header(first).ok_or(CheckpointError::Header)?;
    // Only newline-terminated lines were fully written.
    let complete = match text.rfind('\n') {
        Some(end) => &text[..=end],
        None => "",
    };
    let mut done = BTreeMap::new();
    for entry in parse_atlas_tsv(complete)? {
        if let Some(prev) = done.insert(entry.canonical.clone(), entry.verdict) {
            if prev != entry.verdict {
                return Err(CheckpointError::Conflict(entry.canonical.to_string()));
            }
        }
    }
    Ok((key, done))
}

fn parse_header(line: &str) -> Option<RunKey> {
    let rest = line.strip_prefix("# checkpoint")?;
    let (mut q, mut n, mut size) = (None, None, None);
    for field in rest.split_whitespace() {
        let (k, v) = field.split_once('=')?;
        let v: u32 = v.parse().ok()?;
        match k {
            "q" => q = Some(v),
            "n" => n = Some(v),
            "size" => size = Some(v),
            _ => return None,
        }
    }
    Some(RunKey { q: q?, n: n?, size: size? })
}

/// An open checkpoint file. Appends are serialized through a mutex and
/// flushed per line.
pub struct Checkpoint {
    file: Mutex<File>,
}

impl Checkpoint {
    /// Opens (creating if needed) the checkpoint for `key` and returns the
    /// classes already decided.
    pub fn open(path: &Path, key: RunKey) -> Result<(Self, BTreeMap<IndexSet, Verdict>), CheckpointError> {
        let done = if path.exists() {
            let text = std::fs::read_to_string(path)?;
            let (found, done) = parse_checkpoint(&text)?;
            if found != key {
                return Err(CheckpointError::Mismatch { q: found.q, n: found.n, size: found.size });
            }
            if !text.ends_with('\n') {
                // Drop a torn tail so the next append starts on a fresh line.
                let keep = text.rfind('\n').map_or(0, |e| e + 1);
                std::fs::write(path, &text[..keep])?;
            }
            done
        } else {
            std::fs::write(path, key.header() + "\n")?;
            BTreeMap::new()
        };
        let file = OpenOptions::new().append(true).open(path)?;
        Ok((Self { file: Mutex::new(file) }, done))
    }

    pub fn record(&self, set: &IndexSet, verdict: Verdict) -> io::Result<()> {
        let mut f = self.file.lock().unwrap_or_else(|e| e.into_inner());
        writeln!(f, "{}", format_atlas_line(set, verdict))?;
        f.flush()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torn_tail_ignored() {
        let text = "# checkpoint q=2 n=3 size=3\n0,1,2\tvalid\n0,1,3\tinv";
        let (key, done) = parse_checkpoint(text).unwrap();
        assert_eq!(key, RunKey { q: 2, n: 3, size: 3 });
        assert_eq!(done.len(), 1);
        assert!(parse_checkpoint("0,1,2\tvalid\n").is_err());
        assert!(matches!(
            parse_checkpoint("# checkpoint q=2 n=3 size=3\n0,1,2\tvalid\n0,1,2\tinvalid\n"),
            Err(CheckpointError::Conflict(_))
        ));
    }

    #[test]
    fn reopen_resumes() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ck.tsv");
        let key = RunKey { q: 2, n: 3, size: 3 };
        let (ck, done) = Checkpoint::open(&path, key).unwrap();
        assert!(done.is_empty());
        ck.record(&IndexSet::contiguous(3), Verdict::Valid).unwrap();
        drop(ck);
        let (_, done) = Checkpoint::open(&path, key).unwrap();
        assert_eq!(done.get(&IndexSet::contiguous(3)), Some(&Verdict::Valid));
        assert!(matches!(
            Checkpoint::open(&path, RunKey { q: 3, n: 3, size: 3 }),
            Err(CheckpointError::Mismatch { .. })
        ));
    }
}
