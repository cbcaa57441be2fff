use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

use super::field::{Elem, FieldCtx};
use super::GaloisError;

#[derive(Debug, Error)]
pub enum FieldTableError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing field `{0}`")]
    Missing(&'static str),
    #[error("table does not match its modulus")]
    Inconsistent,
    #[error(transparent)]
    Field(#[from] GaloisError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

const HEADER: &str = "# ucycle field table";

/// Serializes `p`, `m`, the modulus and the exp table, one `key=value` per
/// line.
pub fn field_to_text(ctx: &FieldCtx) -> String {
    let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
    format!("{HEADER}\np={}\nm={}\nmodulus={}\nexp={}\n", ctx.p(), ctx.m(), join(ctx.modulus()), join(ctx.exp_table()))
}

/// Parses and validates a table: the stored powers must be exactly the
/// successive products by `x` modulo the stated primitive modulus.
pub fn field_from_text(text: &str) -> Result<FieldCtx, FieldTableError> {
    let (mut p, mut m, mut modulus, mut exp) = (None, None, None, None);
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let syntax = |msg: &str| FieldTableError::Syntax { line: idx + 1, msg: msg.to_string() };
        let (key, value) = line.split_once('=').ok_or_else(|| syntax("expected key=value"))?;
        let list = || -> Result<Vec<u32>, FieldTableError> {
            value.split(',').map(|t| t.trim().parse::<u32>().map_err(|e| syntax(&e.to_string()))).collect()
        };
        match key.trim() {
            "p" => p = Some(value.trim().parse::<u32>().map_err(|e| syntax(&e.to_string()))?),
            "m" => m = Some(value.trim().parse::<u32>().map_err(|e| syntax(&e.to_string()))?),
            "modulus" => modulus = Some(list()?),
            "exp" => exp = Some(list()?),
            other => return Err(syntax(&format!("unknown key `{other}`"))),
        }
    }
    let p = p.ok_or(FieldTableError::Missing("p"))?;
    let m = m.ok_or(FieldTableError::Missing("m"))?;
    let modulus = modulus.ok_or(FieldTableError::Missing("modulus"))?;
    let exp: Vec<Elem> = exp.ok_or(FieldTableError::Missing("exp"))?;
    // Size and modulus shape checks come from the constructor.
    let fresh = FieldCtx::with_modulus(p, m, &modulus)?;
    if fresh.exp_table() != exp.as_slice() {
        return Err(FieldTableError::Inconsistent);
    }
    Ok(fresh)
}

/// On-disk cache of field tables keyed by `(p, m, modulus)`.
#[derive(Debug, Clone)]
pub struct FieldCache {
    dir: PathBuf,
}

impl FieldCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, p: u32, m: u32, modulus_code: u32) -> PathBuf {
        self.dir.join(format!("gf-{p}-{m}-{modulus_code}.txt"))
    }

    /// Default field for `(p, m)`: loaded if a valid table is cached,
    /// otherwise built and written. A corrupt cache file is rebuilt.
    pub fn get(&self, p: u32, m: u32) -> Result<FieldCtx, FieldTableError> {
        let ctx = FieldCtx::build(p, m)?;
        let path = self.path_for(p, m, ctx.modulus_code());
        if let Ok(text) = fs::read_to_string(&path) {
            if let Ok(cached) = field_from_text(&text) {
                if cached.modulus() == ctx.modulus() {
                    return Ok(cached);
                }
            }
        }
        fs::create_dir_all(&self.dir)?;
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, field_to_text(&ctx))?;
        fs::rename(&tmp, &path)?;
        Ok(ctx)
    }
}
