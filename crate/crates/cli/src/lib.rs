//! The `ucycle` command-line front end.
//!
//! Every subcommand delegates to `ucycle-core` and passes what it generated
//! through the coverage verifier (or the decomposition checker) before it is
//! printed or written. Exit codes: 0 verified success, 1 a failed check or
//! runtime error, 2 usage error, 3 search budget exhausted.

pub mod checkpoint;
pub mod golden;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use ucycle_core::approx::{janson_bound, random_block_length, type1_construct, type2_random, ApproxError};
use ucycle_core::decomp::{chi_from_decomposition, decompose_equal_with, DecompError, DEFAULT_BUDGET};
use ucycle_core::galois::{
    build_reduced_cycle_in, classify_in, exceptional_triple, extension_field, prime_power, two_element_ordinary,
    ExceptionalVerdict, FieldCache, FieldCtx, GaloisError, Subfield,
};
use ucycle_core::lift::{double_ap3, splice_ap_cycle, splice_ap_cycle_from_seed};
use ucycle_core::search::{atlas_with, decide_valid_with, parse_atlas_tsv, Budget, SearchError, Verdict};
use ucycle_core::text::{format_cycle, parse_cycle, parse_list};
use ucycle_core::verify::coverage;
use ucycle_core::{verify_cover, CycleParams, CyclicString, IndexSet};

use checkpoint::{Checkpoint, RunKey};
use golden::{diff_golden, TableId};

pub const SCHEMA: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "ucycle", version, about = "Generalized de Bruijn cycles: search, construction and verification")]
pub struct Cli {
    #[command(flatten)]
    pub config: ConfigArgs,
    #[command(subcommand)]
    pub command: Command,
}

/// Options shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct ConfigArgs {
    /// Emit a JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized steps; recorded in every output.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Search node limit.
    #[arg(long, global = true, env = "UCYCLE_BUDGET_NODES", value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_nodes: Option<u64>,
    /// Search wall-clock limit in seconds.
    #[arg(long, global = true, env = "UCYCLE_BUDGET_SECS", value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_secs: Option<u64>,
    /// Directory for cached field tables.
    #[arg(long, global = true, env = "UCYCLE_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether an index set admits an I-cycle.
    Search {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = parse_set)]
        set: SetArg,
        /// Write the witness cycle here when the set is valid.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide every affine class of `size`-subsets of Z_{q^n}.
    Atlas {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        size: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Append-only record of decided classes; an existing file resumes.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Build an AP(n, q)-cycle by lifting and splicing a de Bruijn cycle.
    GenAp {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: u32,
        /// De Bruijn cycle of order n-1 to lift (default: built internally).
        #[arg(long)]
        seed_cycle: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Double the alphabet of an AP(3, d)-cycle.
    DoubleAp3 {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a reduced I*-cycle from a finite-field sequence.
    GenReduced {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = parse_set)]
        set: SetArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify an index set as ordinary or exceptional.
    Classify {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = parse_set)]
        set: SetArg,
    },
    /// Decompose the complete loop digraph on n vertices into closed trails
    /// of length d.
    Decompose {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// Also print the {0, n^2/d}-cycle read off the trails.
        #[arg(long)]
        emit_chi: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Approximate cycles (type 1: complete, type 2: random).
    Approx {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = parse_set)]
        set: SetArg,
        #[arg(long = "type", value_parser = clap::value_parser!(u8).range(1..=2))]
        kind: u8,
        /// Length of the random string (type 2).
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate exp(-min(mu^2/(8 Delta), mu/2, mu/(6 delta))).
    Janson {
        #[arg(long)]
        mu: f64,
        #[arg(long = "Delta")]
        big_delta: f64,
        #[arg(long)]
        delta: f64,
    },
    /// Check a cycle file against an index set.
    Verify {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = parse_set)]
        set: SetArg,
        #[arg(long)]
        reduced: bool,
    },
    /// Compare an atlas file with a golden table, orbit by orbit.
    DiffGolden {
        #[arg(long)]
        atlas: PathBuf,
        #[arg(long)]
        table: TableId,
    },
}

/// A comma-separated index list such as `0,1,3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetArg(pub Vec<u64>);

fn parse_set(s: &str) -> Result<SetArg, String> {
    parse_list(s).map(SetArg).map_err(|e| e.to_string())
}

/// Settings resolved from flags and environment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub json: bool,
    pub seed: u64,
    pub budget: Budget,
    pub cache_dir: Option<PathBuf>,
}

impl From<&ConfigArgs> for RunConfig {
    fn from(a: &ConfigArgs) -> Self {
        RunConfig {
            json: a.json,
            seed: a.seed,
            budget: Budget {
                max_nodes: a.budget_nodes.unwrap_or(u64::MAX),
                max_time: a.budget_secs.map(Duration::from_secs),
            },
            cache_dir: a.cache_dir.clone(),
        }
    }
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A bad argument value detected after parsing.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

/// What a command produced: its exit code and its report.
struct Report {
    code: i32,
    text: String,
    doc: Value,
}

impl Report {
    fn ok(text: String, doc: Value) -> Self {
        Report { code: EXIT_OK, text, doc }
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: rendered, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: rendered }
            };
        }
    };
    let config = RunConfig::from(&cli.config);
    match execute(&cli.command, &config) {
        Ok(report) => {
            let stdout = if config.json {
                let mut doc = report.doc;
                if let Value::Object(map) = &mut doc {
                    map.insert("schema".into(), json!(SCHEMA));
                    map.insert("seed".into(), json!(config.seed));
                }
                doc.to_string() + "\n"
            } else {
                report.text
            };
            Outcome { code: report.code, stdout, stderr: String::new() }
        }
        Err(e) => {
            let code = exit_code_for(&e);
            Outcome { code, stdout: String::new(), stderr: format!("error: {e:#}\n") }
        }
    }
}

fn exit_code_for(e: &anyhow::Error) -> i32 {
    for cause in e.chain() {
        if cause.is::<Usage>() {
            return EXIT_USAGE;
        }
        if let Some(SearchError::Inconclusive { .. }) = cause.downcast_ref::<SearchError>() {
            return EXIT_INCONCLUSIVE;
        }
        if let Some(DecompError::ResourceLimit { .. }) = cause.downcast_ref::<DecompError>() {
            return EXIT_INCONCLUSIVE;
        }
    }
    EXIT_FAILURE
}

fn execute(cmd: &Command, cfg: &RunConfig) -> Result<Report> {
    match cmd {
        Command::Search { q, n, set, out } => cmd_search(cfg, *q, *n, &set.0, out.as_deref()),
        Command::Atlas { q, n, size, out, checkpoint } => {
            cmd_atlas(cfg, *q, *n, *size, out.as_deref(), checkpoint.as_deref())
        }
        Command::GenAp { q, n, seed_cycle, out } => cmd_gen_ap(*q, *n, seed_cycle.as_deref(), out.as_deref()),
        Command::DoubleAp3 { file, q, d, out } => cmd_double(file, *q, *d, out.as_deref()),
        Command::GenReduced { q, n, set, out } => cmd_gen_reduced(cfg, *q, *n, &set.0, out.as_deref()),
        Command::Classify { q, n, set } => cmd_classify(cfg, *q, *n, &set.0),
        Command::Decompose { n, d, emit_chi, out } => cmd_decompose(cfg, *n, *d, *emit_chi, out.as_deref()),
        Command::Approx { q, n, set, kind, m, out } => cmd_approx(cfg, *q, *n, &set.0, *kind, *m, out.as_deref()),
        Command::Janson { mu, big_delta, delta } => {
            let b = janson_bound(*mu, *big_delta, *delta).map_err(|e| usage(e.to_string()))?;
            Ok(Report::ok(
                format!("{b}\n"),
                json!({"command": "janson", "mu": mu, "Delta": big_delta, "delta": delta, "bound": b}),
            ))
        }
        Command::Verify { file, q, n, set, reduced } => cmd_verify(file, *q, *n, &set.0, *reduced),
        Command::DiffGolden { atlas, table } => cmd_diff(atlas, *table),
    }
}

fn params_and_set(q: u32, n: u32, set: &[u64], reduced: bool) -> Result<(CycleParams, IndexSet)> {
    let params = if reduced { CycleParams::reduced(q, n) } else { CycleParams::unreduced(q, n) }
        .map_err(|e| usage(e.to_string()))?;
    let index_set = IndexSet::new(set.iter().copied(), params.modulus()).map_err(|e| usage(e.to_string()))?;
    if index_set.len() != n as usize {
        return Err(usage(format!("--set has {} elements, expected n = {n}", index_set.len())));
    }
    Ok((params, index_set))
}

/// Writes `text` atomically-ish: to a sibling temp file, then renamed.
fn write_artifact(path: &Path, text: &str) -> Result<()> {
    let tmp = path.with_extension("partial");
    fs::write(&tmp, text).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("renaming to {}", path.display()))?;
    Ok(())
}

fn write_cycle(out: Option<&Path>, chi: &CyclicString) -> Result<()> {
    if let Some(path) = out {
        write_artifact(path, &(format_cycle(chi) + "\n"))?;
    }
    Ok(())
}

fn require_complete(chi: &CyclicString, params: &CycleParams, set: &IndexSet, reduced: bool) -> Result<()> {
    let report = verify_cover(chi, params, set, reduced)?;
    if !report.complete {
        bail!("internal check failed: {} words missing", report.missing_count());
    }
    Ok(())
}

fn cmd_search(cfg: &RunConfig, q: u32, n: u32, set: &[u64], out: Option<&Path>) -> Result<Report> {
    let (params, index_set) = params_and_set(q, n, set, false)?;
    let cert = decide_valid_with(q, n, &index_set, cfg.budget)?;
    let witness = cert.witness.as_ref().map(format_cycle);
    if let Some(chi) = &cert.witness {
        require_complete(chi, &params, &index_set, false)?;
        write_cycle(out, chi)?;
    }
    let mut text = format!("{}\n", cert.verdict);
    if let Some(w) = &witness {
        text.push_str(&format!("witness {w}\n"));
    }
    Ok(Report::ok(
        text,
        json!({
            "command": "search", "q": q, "n": n, "set": index_set.elements(),
            "verdict": cert.verdict, "witness": witness, "refutation": cert.refutation,
            "nodes": cert.nodes_explored, "elapsed_ms": cert.elapsed.as_millis() as u64,
        }),
    ))
}

fn cmd_atlas(cfg: &RunConfig, q: u32, n: u32, size: u32, out: Option<&Path>, ck: Option<&Path>) -> Result<Report> {
    if size != n {
        return Err(usage(format!("--size must equal n = {n}")));
    }
    CycleParams::unreduced(q, n).map_err(|e| usage(e.to_string()))?;
    let key = RunKey { q, n, size };
    let (ck, done) = match ck {
        Some(path) => {
            let (c, d) = Checkpoint::open(path, key)?;
            (Some(c), d)
        }
        None => (None, Default::default()),
    };
    let atlas = atlas_with(q, n, size, cfg.budget, &done, |set, verdict| {
        if let Some(c) = &ck {
            // A failed append only costs a recomputation on resume.
            let _ = c.record(set, verdict);
        }
    })?;
    let tsv = format!("# atlas q={q} n={n} size={size}\n{}", atlas.to_tsv());
    if let Some(path) = out {
        write_artifact(path, &tsv)?;
    }
    let summary =
        format!("classes {} valid {} invalid {}\n", atlas.classes.len(), atlas.valid_count(), atlas.invalid_count());
    let text = if out.is_some() { summary } else { tsv };
    Ok(Report::ok(
        text,
        json!({
            "command": "atlas", "q": q, "n": n, "size": size,
            "classes": atlas.classes.iter().map(|c| json!({"set": c.canonical.to_string(), "verdict": c.verdict})).collect::<Vec<_>>(),
            "valid": atlas.valid_count(), "invalid": atlas.invalid_count(),
        }),
    ))
}

fn ap_set(n: u32, d: u64, modulus: u64) -> Result<IndexSet> {
    Ok(IndexSet::arithmetic(n, d, modulus)?)
}

fn cmd_gen_ap(q: u32, n: u32, seed_cycle: Option<&str>, out: Option<&Path>) -> Result<Report> {
    let params = CycleParams::unreduced(q, n).map_err(|e| usage(e.to_string()))?;
    let chi = match seed_cycle {
        Some(text) => splice_ap_cycle_from_seed(&parse_cycle(text, q).map_err(|e| usage(e.to_string()))?, n)?,
        None => splice_ap_cycle(q, n)?,
    };
    let set = ap_set(n, q as u64, params.modulus())?;
    require_complete(&chi, &params, &set, false)?;
    write_cycle(out, &chi)?;
    let s = format_cycle(&chi);
    Ok(Report::ok(
        format!("{s}\n"),
        json!({"command": "gen-ap", "q": q, "n": n, "set": set.elements(), "cycle": s, "verified": true}),
    ))
}

fn cmd_double(file: &Path, q: u32, d: u64, out: Option<&Path>) -> Result<Report> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let chi = parse_cycle(&text, q).context("parsing input cycle")?;
    let params = CycleParams::unreduced(q, 3).map_err(|e| usage(e.to_string()))?;
    let set = ap_set(3, d, params.modulus()).map_err(|e| usage(e.to_string()))?;
    let before = verify_cover(&chi, &params, &set, false)?;
    if !before.complete {
        bail!("input is not an AP(3, {d})-cycle: {} words missing", before.missing_count());
    }
    let doubled = double_ap3(&chi, d)?;
    let (q2, d2) = (2 * q, 8 * d);
    let params2 = CycleParams::unreduced(q2, 3)?;
    let set2 = ap_set(3, d2, params2.modulus())?;
    require_complete(&doubled, &params2, &set2, false)?;
    write_cycle(out, &doubled)?;
    let s = format_cycle(&doubled);
    Ok(Report::ok(
        format!("{s}\n"),
        json!({"command": "double-ap3", "q": q2, "d": d2, "length": doubled.len(), "cycle": s, "verified": true}),
    ))
}

fn field_for(cfg: &RunConfig, q: u32, n: u32) -> Result<(FieldCtx, Subfield)> {
    let Some(dir) = &cfg.cache_dir else {
        return extension_field(q, n).map_err(|e| usage(e.to_string()));
    };
    let (p, k) = prime_power(q as u64).ok_or_else(|| usage(GaloisError::NotPrimePower(q).to_string()))?;
    let m = k.checked_mul(n).ok_or_else(|| usage("field too large"))?;
    let ctx = FieldCache::new(dir).get(p, m)?;
    let sub = Subfield::new(&ctx, q)?;
    Ok((ctx, sub))
}

fn cmd_gen_reduced(cfg: &RunConfig, q: u32, n: u32, set: &[u64], out: Option<&Path>) -> Result<Report> {
    let (params, index_set) = params_and_set(q, n, set, true)?;
    let (ctx, sub) = field_for(cfg, q, n)?;
    let seq = build_reduced_cycle_in(&ctx, &sub, &index_set)?;
    require_complete(&seq.chi, &params, &index_set, true)?;
    write_cycle(out, &seq.chi)?;
    let s = format_cycle(&seq.chi);
    Ok(Report::ok(
        format!("{s}\n"),
        json!({
            "command": "gen-reduced", "q": q, "n": n, "set": index_set.elements(), "cycle": s,
            "generator_exp": seq.generator_exp, "basis": seq.basis, "v": seq.v, "verified": true,
        }),
    ))
}

fn cmd_classify(cfg: &RunConfig, q: u32, n: u32, set: &[u64]) -> Result<Report> {
    let (_, index_set) = params_and_set(q, n, set, true)?;
    let (ctx, sub) = field_for(cfg, q, n)?;
    let verdict = classify_in(&ctx, &sub, &index_set)?;
    let name = if verdict.is_exceptional() { "exceptional" } else { "ordinary" };
    let mut text = format!("{name}\n");
    match &verdict {
        ExceptionalVerdict::Ordinary(w) => {
            text.push_str(&format!("generator x^{} minimal polynomial {:?}\n", w.generator_exp, w.min_poly))
        }
        ExceptionalVerdict::Exceptional(w) => {
            text.push_str(&format!("dependencies for {} generators\n", w.dependencies.len()))
        }
    }
    let mut doc = json!({"command": "classify", "q": q, "n": n, "set": index_set.elements(), "verdict": name, "witness": verdict});
    let e = index_set.elements();
    if n == 2 {
        let ordinary = two_element_ordinary(e[0], e[1], q);
        doc["pair_criterion_ordinary"] = json!(ordinary);
        text.push_str(&format!("pair criterion: {}\n", if ordinary { "ordinary" } else { "exceptional" }));
    }
    if n == 3 {
        let t = exceptional_triple(e[0], e[1], e[2], q)?;
        doc["triple_criterion"] = json!(t);
        text.push_str(&format!(
            "triple criterion: {} (for-all reading {}, for-some reading {})\n",
            if t.exceptional { "exceptional" } else { "ordinary" },
            t.for_all_reading,
            t.for_some_reading
        ));
    }
    Ok(Report::ok(text, doc))
}

fn cmd_decompose(cfg: &RunConfig, n: usize, d: usize, emit_chi: bool, out: Option<&Path>) -> Result<Report> {
    let budget = if cfg.budget.max_nodes == u64::MAX { DEFAULT_BUDGET } else { cfg.budget.max_nodes };
    let dec = match decompose_equal_with(n, d, budget) {
        Ok(dec) => dec,
        Err(DecompError::Impossible(reason)) => {
            return Ok(Report {
                code: EXIT_FAILURE,
                text: format!("impossible ({reason:?})\n"),
                doc: json!({"command": "decompose", "n": n, "d": d, "status": "impossible", "reason": reason}),
            })
        }
        Err(e @ DecompError::NotDivisor { .. }) => return Err(usage(e.to_string())),
        Err(e) => return Err(e.into()),
    };
    dec.verify()?;
    if let Some(path) = out {
        write_artifact(path, &(dec.to_json() + "\n"))?;
    }
    let chi = if emit_chi {
        let q = u32::try_from(n).map_err(|_| usage("n too large"))?;
        Some(format_cycle(&chi_from_decomposition(q, n * n / d, &dec)?))
    } else {
        None
    };
    let mut text = format!("route {:?}\n", dec.route);
    for t in &dec.trails {
        let vs: Vec<String> = t.vertices().iter().map(|v| v.to_string()).collect();
        text.push_str(&vs.join(" "));
        text.push('\n');
    }
    if let Some(c) = &chi {
        text.push_str(&format!("chi {c}\n"));
    }
    let mut doc = serde_json::to_value(&dec)?;
    doc["command"] = json!("decompose");
    doc["status"] = json!("verified");
    if let Some(c) = chi {
        doc["chi"] = json!(c);
    }
    Ok(Report::ok(text, doc))
}

fn cmd_approx(
    cfg: &RunConfig,
    q: u32,
    n: u32,
    set: &[u64],
    kind: u8,
    m: Option<u64>,
    out: Option<&Path>,
) -> Result<Report> {
    let index_set = IndexSet::from_integers(set.iter().copied()).map_err(|e| usage(e.to_string()))?;
    if index_set.len() != n as usize {
        return Err(usage(format!("--set has {} elements, expected n = {n}", index_set.len())));
    }
    let usage_or = |e: ApproxError| match e {
        ApproxError::SetSize { .. } | ApproxError::TooLarge | ApproxError::EmptyLength => usage(e.to_string()),
        other => anyhow!(other),
    };
    if kind == 1 {
        let r = type1_construct(q, n, &index_set, cfg.seed).map_err(usage_or)?;
        let report = coverage(&r.chi, &index_set, false)?;
        if !report.complete {
            bail!("internal check failed: type 1 string misses {} words", report.missing_count());
        }
        write_cycle(out, &r.chi)?;
        let s = format_cycle(&r.chi);
        Ok(Report::ok(
            format!("{s}\nlength {} missing_before_patch {}\n", r.len(), r.missing_before_patch),
            json!({
                "command": "approx", "type": 1, "q": q, "n": n, "set": index_set.elements(), "cycle": s,
                "length": r.len(), "blocks": r.blocks, "missing_before_patch": r.missing_before_patch,
                "verified": true,
            }),
        ))
    } else {
        let m = m.unwrap_or_else(|| random_block_length(q, n));
        let (chi, missing) = type2_random(q, n, &index_set, m, cfg.seed).map_err(usage_or)?;
        write_cycle(out, &chi)?;
        let s = format_cycle(&chi);
        Ok(Report::ok(
            format!("{s}\nlength {m} missing {missing}\n"),
            json!({"command": "approx", "type": 2, "q": q, "n": n, "set": index_set.elements(), "cycle": s, "length": m, "missing": missing}),
        ))
    }
}

fn cmd_verify(file: &Path, q: u32, n: u32, set: &[u64], reduced: bool) -> Result<Report> {
    let (params, index_set) = params_and_set(q, n, set, reduced)?;
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let chi = parse_cycle(&text, q).context("parsing cycle")?;
    let report = verify_cover(&chi, &params, &index_set, reduced)?;
    let doc = report.to_document(8);
    let text = if report.complete {
        "complete\n".to_string()
    } else {
        format!("incomplete: {} words missing\n", report.missing_count())
    };
    let mut value = serde_json::to_value(&doc)?;
    value["command"] = json!("verify");
    Ok(Report { code: if report.complete { EXIT_OK } else { EXIT_FAILURE }, text, doc: value })
}

fn cmd_diff(atlas: &Path, table: TableId) -> Result<Report> {
    let text = fs::read_to_string(atlas).with_context(|| format!("reading {}", atlas.display()))?;
    let entries = parse_atlas_tsv(&text).context("malformed atlas file")?;
    let golden = table.load();
    let modulus = golden.modulus();
    if let Some(bad) = entries.iter().find(|e| e.canonical.greatest() >= modulus) {
        bail!("atlas row {} is outside Z_{modulus}", bad.canonical);
    }
    let report = diff_golden(&entries, &golden);
    let mut text = format!(
        "{}: matched {} missing {} extra {}\n",
        table,
        report.matched.len(),
        report.missing.len(),
        report.extra.len()
    );
    for m in &report.missing {
        text.push_str(&format!("missing {m}\n"));
    }
    for e in &report.extra {
        text.push_str(&format!("extra {e}\n"));
    }
    let code = if report.is_match() { EXIT_OK } else { EXIT_FAILURE };
    let mut doc = serde_json::to_value(&report)?;
    doc["command"] = json!("diff-golden");
    doc["match"] = json!(report.is_match());
    Ok(Report { code, text, doc })
}

/// Verdict type re-exported for the acceptance harness.
pub type AtlasVerdict = Verdict;
