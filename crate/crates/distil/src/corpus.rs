//! Source-tree ingestion and the three pre-training corpora.
//!
//! Every output file is JSON lines. Records are produced in parallel and
//! written by a single writer in input order, and every random draw is
//! seeded from the record's input index, so a fixed input and seed give a
//! byte-identical file regardless of the thread count.

use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};

use distil_core::noise::{
    corrupt_dae, corrupt_dae_with, corrupt_distilled, corrupt_distilled_units, distilled_units,
    mlm_mask, python_sentences, record_seed, NoiseError, NoiseSpec,
};
use distil_core::token::tokenize;
use distil_core::{DistilledCode, LanguageId, MorphemeRegistry};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use walkdir::WalkDir;

use crate::frontend::{extract_file, language_of, parse, strip_noncode, SourceFunction};
use crate::pipeline::{distill, PipelineError};

/// Joins the distilled and source halves of MLM and DAE sequences.
pub const SEPARATOR: &str = "<sep>";

/// Files read and parsed per parallel batch.
const CHUNK: usize = 256;

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("write failed: {0}")]
    Write(#[from] io::Error),
    #[error(transparent)]
    Noise(#[from] NoiseError),
    #[error("line {line}: {message}")]
    MalformedRecord { line: usize, message: String },
}

// ---- ingestion

#[derive(Debug, Clone, Default)]
pub struct IngestFilter {
    /// Languages to keep; empty keeps all four.
    pub languages: Vec<LanguageId>,
}

impl IngestFilter {
    fn accepts(&self, l: LanguageId) -> bool {
        self.languages.is_empty() || self.languages.contains(&l)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IngestStats {
    pub files: usize,
    pub functions: usize,
    /// Skipped files or functions by cause.
    pub skipped: BTreeMap<&'static str, usize>,
    /// Unreadable roots or files, with the reason.
    pub io_failures: Vec<(PathBuf, String)>,
}

impl IngestStats {
    pub fn skips(&self) -> usize {
        self.skipped.values().sum()
    }

    fn skip(&mut self, cause: &'static str) {
        *self.skipped.entry(cause).or_default() += 1;
    }
}

/// Stable id of a function: hex SHA-256 prefix of its language and
/// normalized token sequence.
pub fn function_id(f: &SourceFunction) -> String {
    hex(&fingerprint(f)[..16])
}

fn fingerprint(f: &SourceFunction) -> [u8; 32] {
    let mut h = Sha256::new();
    h.update(f.language.as_str());
    for t in &f.tokens {
        h.update([0u8]);
        h.update(&t.text);
    }
    h.finalize().into()
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

enum FileOutcome {
    Functions(Vec<SourceFunction>, usize),
    Malformed,
    Unreadable(String),
}

fn process_file(path: &Path, language: LanguageId) -> FileOutcome {
    let source = match fs::read_to_string(path) {
        Ok(s) => s,
        Err(e) => return FileOutcome::Unreadable(e.to_string()),
    };
    if source.trim().is_empty() {
        return FileOutcome::Functions(Vec::new(), 0);
    }
    let Ok((tree, functions)) = extract_file(path, &source, language) else {
        return FileOutcome::Malformed;
    };
    if tree.has_error {
        return FileOutcome::Malformed;
    }
    let mut failed = 0;
    let clean = functions
        .iter()
        .filter_map(|f| {
            let s = strip_noncode(f).ok();
            failed += usize::from(s.is_none());
            s
        })
        .collect();
    FileOutcome::Functions(clean, failed)
}

/// Candidate files under `roots` in a deterministic order.
fn discover(
    roots: &[PathBuf],
    filter: &IngestFilter,
    stats: &mut IngestStats,
) -> Vec<(PathBuf, LanguageId)> {
    let mut files = Vec::new();
    for root in roots {
        for entry in WalkDir::new(root).sort_by_file_name() {
            match entry {
                Ok(e) if e.file_type().is_file() => {
                    if let Some(l) = language_of(e.path()).filter(|l| filter.accepts(*l)) {
                        files.push((e.into_path(), l));
                    }
                }
                Ok(_) => {}
                Err(e) => {
                    let path = e.path().map_or_else(|| root.clone(), Path::to_path_buf);
                    stats.io_failures.push((path, e.to_string()));
                }
            }
        }
    }
    files
}

/// Walk `roots`, hand deduplicated, stripped functions to `sink` one batch
/// at a time. Malformed files and unreadable paths are counted, not fatal.
pub fn ingest_each<E>(
    roots: &[PathBuf],
    filter: &IngestFilter,
    mut sink: impl FnMut(Vec<SourceFunction>) -> Result<(), E>,
) -> Result<IngestStats, E> {
    let mut stats = IngestStats::default();
    let files = discover(roots, filter, &mut stats);
    let mut seen = HashSet::new();
    for chunk in files.chunks(CHUNK) {
        let outcomes: Vec<FileOutcome> =
            chunk.par_iter().map(|(p, l)| process_file(p, *l)).collect();
        let mut batch = Vec::new();
        for ((path, _), outcome) in chunk.iter().zip(outcomes) {
            match outcome {
                FileOutcome::Functions(fns, failed) => {
                    stats.files += 1;
                    for _ in 0..failed {
                        stats.skip("strip-failure");
                    }
                    for f in fns {
                        if seen.insert(fingerprint(&f)) {
                            batch.push(f);
                        } else {
                            stats.skip("duplicate");
                        }
                    }
                }
                FileOutcome::Malformed => stats.skip("parse-error"),
                FileOutcome::Unreadable(why) => {
                    stats.skip("unreadable");
                    stats.io_failures.push((path.clone(), why));
                }
            }
        }
        stats.functions += batch.len();
        if !batch.is_empty() {
            sink(batch)?;
        }
    }
    Ok(stats)
}

/// [`ingest_each`] collected into one vector.
pub fn ingest(roots: &[PathBuf], filter: &IngestFilter) -> (Vec<SourceFunction>, IngestStats) {
    let mut all = Vec::new();
    let stats = ingest_each(roots, filter, |batch| {
        all.extend(batch);
        Ok::<_, std::convert::Infallible>(())
    })
    .unwrap_or_else(|never| match never {});
    (all, stats)
}

// ---- records

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Valid,
    Test,
}

/// 96/2/2 by the id's hash modulo 100.
pub fn split_of(id: &str) -> Split {
    let bucket = u64::from_str_radix(id.get(..16).unwrap_or(id), 16).unwrap_or_else(|_| {
        u64::from_le_bytes(Sha256::digest(id)[..8].try_into().unwrap_or_default())
    }) % 100;
    match bucket {
        0..96 => Split::Train,
        96..98 => Split::Valid,
        _ => Split::Test,
    }
}

mod language_name {
    use distil_core::LanguageId;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(l: &LanguageId, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(l.as_str())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<LanguageId, D::Error> {
        let name = String::deserialize(d)?;
        name.parse().map_err(D::Error::custom)
    }
}

/// Distilled code and the source it came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranslationPair {
    pub id: String,
    #[serde(with = "language_name")]
    pub source_language: LanguageId,
    pub lang_token: String,
    pub distilled: String,
    pub target: String,
    pub split: Split,
    pub registry_hits: usize,
    pub fallback_calls: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MlmAnswer {
    pub position: usize,
    pub token: String,
}

/// Distilled units, separator and source tokens with some tokens masked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MlmSample {
    pub id: String,
    #[serde(with = "language_name")]
    pub source_language: LanguageId,
    pub split: Split,
    pub tokens: Vec<String>,
    pub answers: Vec<MlmAnswer>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DaeSample {
    pub id: String,
    #[serde(with = "language_name")]
    pub source_language: LanguageId,
    pub split: Split,
    pub input: Vec<String>,
    pub target: Vec<String>,
}

// ---- emission

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Task {
    /// Distilled-to-source pairs with the distilled side corrupted.
    Mpg(NoiseSpec),
    Mlm {
        mask_ratio: f64,
        seed: u64,
    },
    Dae(NoiseSpec),
}

impl Task {
    fn validate(&self) -> Result<(), NoiseError> {
        match self {
            Task::Mpg(spec) | Task::Dae(spec) => spec.validate(),
            Task::Mlm { mask_ratio, .. } if !(0.0..=1.0).contains(mask_ratio) => {
                Err(NoiseError::InvalidRatio {
                    name: "mask_ratio",
                    value: *mask_ratio,
                })
            }
            Task::Mlm { .. } => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EmitStats {
    pub records_in: usize,
    pub records_out: usize,
    pub skipped: BTreeMap<&'static str, usize>,
}

impl EmitStats {
    pub fn skips(&self) -> usize {
        self.skipped.values().sum()
    }
}

fn cause(e: &PipelineError) -> &'static str {
    use crate::frontend::FrontendError;
    use distil_core::distill::DistillError;
    match e {
        PipelineError::Frontend(FrontendError::UnsupportedLanguage(_)) => "unsupported-language",
        PipelineError::Frontend(FrontendError::ParseFailure(_)) => "parse-failure",
        PipelineError::Frontend(FrontendError::ReparseFailure { .. }) => "strip-failure",
        PipelineError::Distill(DistillError::SyntaxErrors) => "syntax-errors",
        PipelineError::Distill(DistillError::NoFunction) => "no-function",
        PipelineError::Distill(DistillError::Unlowerable) => "unlowerable",
        PipelineError::Distill(DistillError::Untemplated(_)) => "untemplated",
        PipelineError::Decompile(_) => "decompile",
    }
}

fn source_texts(f: &SourceFunction) -> Vec<String> {
    f.tokens.iter().map(|t| t.text.clone()).collect()
}

/// Writes records for successive batches of functions.
pub struct Emitter<'r, W: Write> {
    task: Task,
    registry: &'r MorphemeRegistry,
    out: W,
    next: u64,
    stats: EmitStats,
}

impl<'r, W: Write> Emitter<'r, W> {
    pub fn new(task: Task, registry: &'r MorphemeRegistry, out: W) -> Result<Self, CorpusError> {
        task.validate()?;
        Ok(Emitter {
            task,
            registry,
            out,
            next: 0,
            stats: EmitStats::default(),
        })
    }

    pub fn stats(&self) -> &EmitStats {
        &self.stats
    }

    /// Emit one batch; record seeds continue from the previous batch.
    pub fn emit(&mut self, functions: &[SourceFunction]) -> Result<(), CorpusError> {
        let base = self.next;
        let (task, registry) = (self.task, self.registry);
        let records: Vec<Result<String, RecordError>> = functions
            .par_iter()
            .enumerate()
            .map(|(i, f)| record(task, registry, f, base + i as u64))
            .collect();
        self.next += functions.len() as u64;
        for r in records {
            self.stats.records_in += 1;
            match r {
                Ok(text) => {
                    self.out.write_all(text.as_bytes())?;
                    self.out.write_all(b"\n")?;
                    self.stats.records_out += 1;
                }
                Err(e) => {
                    let cause = match &e {
                        RecordError::Pipeline(p) => cause(p),
                        RecordError::Noise => "noise",
                        RecordError::Unserializable => "unserializable",
                    };
                    if let RecordError::Pipeline(p) = &e {
                        log::debug!("skipping record {}: {p}", self.stats.records_in - 1);
                    }
                    *self.stats.skipped.entry(cause).or_default() += 1;
                }
            }
        }
        Ok(())
    }

    pub fn finish(mut self) -> Result<(W, EmitStats), CorpusError> {
        self.out.flush()?;
        Ok((self.out, self.stats))
    }
}

fn record(
    task: Task,
    registry: &MorphemeRegistry,
    f: &SourceFunction,
    index: u64,
) -> Result<String, RecordError> {
    let d = distill(f, registry)?;
    let canonical = d.code.canonicalize();
    let id = function_id(f);
    let split = split_of(&id);
    let json = match task {
        Task::Mpg(spec) => {
            let noisy =
                corrupt_distilled(&canonical, &spec.with_seed(record_seed(spec.seed, index)))?;
            serde_json::to_string(&TranslationPair {
                id,
                source_language: f.language,
                lang_token: f.language.lang_token().into(),
                distilled: noisy.to_text(),
                target: f.body.clone(),
                split,
                registry_hits: d.report.registry_hits,
                fallback_calls: d.report.fallback_calls,
            })
        }
        Task::Mlm { mask_ratio, seed } => {
            let seed = record_seed(seed, index);
            let (units, _) = distilled_units(&canonical);
            let (mut tokens, answers) = mlm_mask(&units, mask_ratio, record_seed(seed, 0))?;
            let (source, more) = mlm_mask(&source_texts(f), mask_ratio, record_seed(seed, 1))?;
            let offset = tokens.len() + 1;
            let answers = answers
                .into_iter()
                .chain(more.into_iter().map(|(p, t)| (p + offset, t)))
                .map(|(position, token)| MlmAnswer { position, token })
                .collect();
            tokens.push(SEPARATOR.into());
            tokens.extend(source);
            serde_json::to_string(&MlmSample {
                id,
                source_language: f.language,
                split,
                tokens,
                answers,
            })
        }
        Task::Dae(spec) => {
            let seed = record_seed(spec.seed, index);
            let noisy = corrupt_distilled_units(&canonical, &spec.with_seed(record_seed(seed, 0)))?;
            let source = source_texts(f);
            let plain = vec![false; source.len()];
            let source_spec = spec.with_seed(record_seed(seed, 1));
            let noisy_source = if f.language == LanguageId::Python {
                corrupt_dae_with(&source, &plain, &python_sentences(&f.tokens), &source_spec)?
            } else {
                corrupt_dae(&source, &plain, &source_spec)?
            };
            let (mut target, _) = distilled_units(&canonical);
            target.push(SEPARATOR.into());
            target.extend(source);
            let mut input = noisy.tokens;
            input.push(SEPARATOR.into());
            input.extend(noisy_source.tokens);
            serde_json::to_string(&DaeSample {
                id,
                source_language: f.language,
                split,
                input,
                target,
            })
        }
    };
    json.map_err(|_| RecordError::Unserializable)
}

enum RecordError {
    Pipeline(PipelineError),
    Noise,
    Unserializable,
}

impl From<PipelineError> for RecordError {
    fn from(e: PipelineError) -> Self {
        RecordError::Pipeline(e)
    }
}

impl From<NoiseError> for RecordError {
    fn from(_: NoiseError) -> Self {
        RecordError::Noise
    }
}

fn emit_all<W: Write>(
    task: Task,
    functions: &[SourceFunction],
    registry: &MorphemeRegistry,
    out: W,
) -> Result<EmitStats, CorpusError> {
    let mut e = Emitter::new(task, registry, out)?;
    e.emit(functions)?;
    Ok(e.finish()?.1)
}

pub fn emit_mpg<W: Write>(
    functions: &[SourceFunction],
    registry: &MorphemeRegistry,
    noise: &NoiseSpec,
    out: W,
) -> Result<EmitStats, CorpusError> {
    emit_all(Task::Mpg(*noise), functions, registry, out)
}

pub fn emit_mlm<W: Write>(
    functions: &[SourceFunction],
    registry: &MorphemeRegistry,
    mask_ratio: f64,
    seed: u64,
    out: W,
) -> Result<EmitStats, CorpusError> {
    emit_all(Task::Mlm { mask_ratio, seed }, functions, registry, out)
}

pub fn emit_dae<W: Write>(
    functions: &[SourceFunction],
    registry: &MorphemeRegistry,
    spec: &NoiseSpec,
    out: W,
) -> Result<EmitStats, CorpusError> {
    emit_all(Task::Dae(*spec), functions, registry, out)
}

// ---- statistics

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct LanguageStats {
    pub functions: usize,
    pub source_tokens: usize,
    pub distilled_tokens: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct RatioSummary {
    pub min: f64,
    pub median: f64,
    pub mean: f64,
    pub max: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct CorpusStats {
    pub records: usize,
    pub per_language: BTreeMap<String, LanguageStats>,
    /// Distilled units over source tokens, one value per record with a
    /// non-empty source.
    pub length_ratio: Option<RatioSummary>,
    pub registry_hits: usize,
    pub fallback_calls: usize,
    /// Unified call sites over all call sites.
    pub registry_hit_rate: Option<f64>,
}

fn summarize(mut v: Vec<f64>) -> Option<RatioSummary> {
    if v.is_empty() {
        return None;
    }
    v.sort_by(f64::total_cmp);
    let n = v.len();
    let median = if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    };
    Some(RatioSummary {
        min: v[0],
        median,
        mean: v.iter().sum::<f64>() / n as f64,
        max: v[n - 1],
    })
}

/// Counts over a pair file. Source tokens come from reparsing each target.
pub fn stats<R: BufRead>(pairs: R) -> Result<CorpusStats, CorpusError> {
    let mut s = CorpusStats::default();
    let mut ratios = Vec::new();
    for (i, line) in pairs.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let malformed = |message: String| CorpusError::MalformedRecord {
            line: i + 1,
            message,
        };
        let p: TranslationPair =
            serde_json::from_str(&line).map_err(|e| malformed(e.to_string()))?;
        if p.lang_token != p.source_language.lang_token() {
            return Err(malformed(format!(
                "{} does not match {}",
                p.lang_token, p.source_language
            )));
        }
        let d = DistilledCode::parse(&p.distilled).map_err(|e| malformed(e.to_string()))?;
        let source_tokens = parse(&p.target, p.source_language).map_or(0, |t| tokenize(&t).len());
        let distilled_tokens = distilled_units(&d).0.len();
        let l = s
            .per_language
            .entry(p.source_language.as_str().into())
            .or_default();
        l.functions += 1;
        l.source_tokens += source_tokens;
        l.distilled_tokens += distilled_tokens;
        if source_tokens > 0 {
            ratios.push(distilled_tokens as f64 / source_tokens as f64);
        }
        s.records += 1;
        s.registry_hits += p.registry_hits;
        s.fallback_calls += p.fallback_calls;
    }
    s.length_ratio = summarize(ratios);
    let calls = s.registry_hits + s.fallback_calls;
    s.registry_hit_rate = (calls > 0).then(|| s.registry_hits as f64 / calls as f64);
    Ok(s)
}
