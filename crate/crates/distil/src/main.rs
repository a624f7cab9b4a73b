use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use distil::corpus::{ingest_each, CorpusError, Emitter, IngestFilter, Task};
use distil::eval::{ca_at, evaluate, load_problems, EvalError, RunnerConfig};
use distil::frontend::{extract_file, language_of, parse, strip_noncode, SourceFunction};
use distil::pipeline::distill;
use distil_core::decompile::decompile;
use distil_core::metrics::{corpus_bleu, retrieval_metrics};
use distil_core::noise::{
    corrupt_dae, corrupt_dae_with, delete_keywords, delete_symbols, obfuscate, python_sentences,
    record_seed, shuffle_lines, shuffle_tokens, NoiseSpec,
};
use distil_core::token::{join_tokens, tokenize};
use distil_core::{DistilledCode, LanguageId, MorphemeRegistry};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

/// Distilled-code compiler: distillation, decompilation, corpora and
/// evaluation.
#[derive(Parser)]
#[command(name = "distil", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Morpheme registry file; the built-in tables when omitted.
    #[arg(long, global = true)]
    registry: Option<PathBuf>,
    /// Seed for every stochastic step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads; all cores when omitted.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Output file; standard output when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Source language, overriding the file extension.
    #[arg(long, global = true)]
    language: Option<LanguageId>,
    /// More log output (repeatable).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
}

#[derive(Subcommand)]
enum Command {
    /// Distill every function of the given source files.
    Distill { inputs: Vec<PathBuf> },
    /// Render distilled code from a record file as source.
    Decompile {
        /// JSON lines with a `distilled` field, or plain distilled text per line.
        input: PathBuf,
        #[arg(long)]
        target: LanguageId,
    },
    /// Build a training corpus from source trees.
    Pairs {
        roots: Vec<PathBuf>,
        #[arg(long, value_enum)]
        task: PairTask,
        #[command(flatten)]
        noise: NoiseArgs,
        /// Token mask ratio for the MLM task.
        #[arg(long, default_value_t = 0.15)]
        mlm_ratio: f64,
        /// Languages to ingest (repeatable); all when omitted.
        #[arg(long = "only")]
        only: Vec<LanguageId>,
    },
    /// Apply one noise transform to every function of a source file.
    Corrupt {
        input: PathBuf,
        #[arg(long, value_enum)]
        transform: Transform,
        #[command(flatten)]
        noise: NoiseArgs,
    },
    /// Evaluation metrics.
    #[command(subcommand)]
    Eval(Eval),
}

#[derive(Clone, Copy, ValueEnum)]
enum PairTask {
    Mpg,
    Mlm,
    Dae,
}

#[derive(Clone, Copy, ValueEnum)]
enum Transform {
    Obf,
    ShuffleLines,
    ShuffleTokens,
    DelKeywords,
    DelSymbols,
    Dae,
}

#[derive(Args)]
struct NoiseArgs {
    #[arg(long, default_value_t = 0.3)]
    mask_ratio: f64,
    #[arg(long, default_value_t = 0.3)]
    dropout_ratio: f64,
    #[arg(long, default_value_t = 0.2)]
    permute_ratio: f64,
    #[arg(long, default_value_t = 0.5)]
    bow_mask_ratio: f64,
    #[arg(long, default_value_t = 0.5)]
    bow_dropout_ratio: f64,
    #[arg(long, default_value_t = 0.0)]
    bow_permute_ratio: f64,
}

impl NoiseArgs {
    fn spec(&self, seed: u64) -> NoiseSpec {
        NoiseSpec {
            mask_ratio: self.mask_ratio,
            dropout_ratio: self.dropout_ratio,
            permute_ratio: self.permute_ratio,
            bow_mask_ratio: self.bow_mask_ratio,
            bow_dropout_ratio: self.bow_dropout_ratio,
            bow_permute_ratio: self.bow_permute_ratio,
            seed,
        }
    }
}

#[derive(Subcommand)]
enum Eval {
    /// Corpus BLEU of hypothesis lines against reference lines.
    Bleu {
        #[arg(long)]
        hypotheses: PathBuf,
        #[arg(long)]
        references: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
    },
    /// Computational accuracy of ranked candidates.
    Ca {
        /// One directory per problem with reference files and N.in / N.out.
        #[arg(long)]
        problems: PathBuf,
        /// TOML compile/run templates.
        #[arg(long)]
        runner: PathBuf,
        /// `<problem>/<rank>.<ext>` candidate files; the references when omitted.
        #[arg(long)]
        candidates: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// P@k, MAP and MRR from JSON score and relevance matrices.
    Retrieval {
        #[arg(long)]
        scores: PathBuf,
        #[arg(long)]
        relevance: PathBuf,
        #[arg(long, default_value_t = 10)]
        k: usize,
    },
}

#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct Usage(String);

#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct Unprocessable(String);

const OK: u8 = 0;
const USAGE: u8 = 1;
const PARSE: u8 = 2;
const IO: u8 = 3;

fn exit_code(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if cause.is::<Usage>() {
            return USAGE;
        }
        if cause.is::<io::Error>() {
            return IO;
        }
        if let Some(c) = cause.downcast_ref::<CorpusError>() {
            if matches!(c, CorpusError::Io { .. } | CorpusError::Write(_)) {
                return IO;
            }
        }
        if let Some(c) = cause.downcast_ref::<EvalError>() {
            return match c {
                EvalError::Io { .. } | EvalError::RunnerFailure { .. } => IO,
                EvalError::Config(_)
                | EvalError::TooFewCandidates { .. }
                | EvalError::ShapeMismatch { .. } => USAGE,
                EvalError::NoTestCases(_) => PARSE,
            };
        }
    }
    PARSE
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { OK });
        }
    };
    let level = match cli.global.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let g = &cli.global;
    if let Some(n) = g.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Usage(e.to_string()))?;
    }
    let registry = match &g.registry {
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            MorphemeRegistry::parse(&text).map_err(|e| Usage(format!("{}: {e}", p.display())))?
        }
        None => MorphemeRegistry::builtin(),
    };
    let mut out = output(g.out.as_deref())?;
    let code = match &cli.command {
        Command::Distill { inputs } => cmd_distill(g, &registry, inputs, &mut out)?,
        Command::Decompile { input, target } => cmd_decompile(&registry, input, *target, &mut out)?,
        Command::Pairs {
            roots,
            task,
            noise,
            mlm_ratio,
            only,
        } => {
            let task = match task {
                PairTask::Mpg => Task::Mpg(noise.spec(g.seed)),
                PairTask::Dae => Task::Dae(noise.spec(g.seed)),
                PairTask::Mlm => Task::Mlm {
                    mask_ratio: *mlm_ratio,
                    seed: g.seed,
                },
            };
            cmd_pairs(&registry, roots, only, task, &mut out)?
        }
        Command::Corrupt {
            input,
            transform,
            noise,
        } => cmd_corrupt(g, input, *transform, &noise.spec(g.seed), &mut out)?,
        Command::Eval(e) => cmd_eval(g, e, &mut out)?,
    };
    out.flush()?;
    Ok(code)
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_json(out: &mut dyn Write, v: &impl Serialize) -> Result<()> {
    serde_json::to_writer(&mut *out, v)?;
    out.write_all(b"\n")?;
    Ok(())
}

fn resolve_language(g: &Global, path: &Path) -> Result<LanguageId> {
    g.language.or_else(|| language_of(path)).ok_or_else(|| {
        Usage(format!(
            "{}: unknown extension, pass --language",
            path.display()
        ))
        .into()
    })
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Functions of one file, stripped; a file with syntax errors is an error.
fn functions_of(path: &Path, language: LanguageId) -> Result<Vec<SourceFunction>> {
    let text = read(path)?;
    let (tree, fns) = extract_file(path, &text, language)
        .map_err(|e| Unprocessable(format!("{}: {e}", path.display())))?;
    if tree.has_error {
        return Err(Unprocessable(format!("{}: syntax errors", path.display())).into());
    }
    fns.iter()
        .map(|f| {
            strip_noncode(f).map_err(|e| Unprocessable(format!("{}: {e}", path.display())).into())
        })
        .collect()
}

fn cmd_distill(
    g: &Global,
    registry: &MorphemeRegistry,
    inputs: &[PathBuf],
    out: &mut dyn Write,
) -> Result<u8> {
    let languages = inputs
        .iter()
        .map(|p| resolve_language(g, p))
        .collect::<Result<Vec<_>>>()?;
    let results: Vec<Result<Vec<serde_json::Value>>> = inputs
        .par_iter()
        .zip(&languages)
        .map(|(path, &language)| {
            let fns = functions_of(path, language)?;
            fns.iter()
                .map(|f| {
                    let d = distill(f, registry).map_err(|e| {
                        Unprocessable(format!("{}: {}: {e}", path.display(), f.name))
                    })?;
                    Ok(json!({
                        "file": path.display().to_string(),
                        "name": f.name,
                        "language": language.as_str(),
                        "distilled": d.code.canonicalize().to_text(),
                        "registry_hits": d.report.registry_hits,
                        "fallback_calls": d.report.fallback_calls,
                    }))
                })
                .collect()
        })
        .collect();
    let mut code = OK;
    for r in results {
        match r {
            Ok(records) => {
                for rec in records {
                    write_json(out, &rec)?;
                }
            }
            Err(e) => {
                eprintln!("error: {e:#}");
                code = code.max(exit_code(&e));
            }
        }
    }
    Ok(code)
}

fn cmd_decompile(
    registry: &MorphemeRegistry,
    input: &Path,
    target: LanguageId,
    out: &mut dyn Write,
) -> Result<u8> {
    let reader =
        BufReader::new(File::open(input).with_context(|| format!("opening {}", input.display()))?);
    let mut code = OK;
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let (id, text) = if line.trim_start().starts_with('{') {
            let v: serde_json::Value = serde_json::from_str(&line)
                .map_err(|e| Unprocessable(format!("line {}: {e}", i + 1)))?;
            let text = v["distilled"]
                .as_str()
                .ok_or_else(|| Unprocessable(format!("line {}: no `distilled` field", i + 1)))?
                .to_owned();
            (v.get("id").cloned(), text)
        } else {
            (None, line)
        };
        let rendered = DistilledCode::parse(&text)
            .map_err(anyhow::Error::from)
            .and_then(|d| Ok(decompile(&d, target, registry)?));
        match rendered {
            Ok(src) => write_json(
                out,
                &json!({"id": id, "language": target.as_str(), "code": src}),
            )?,
            Err(e) => {
                eprintln!("error: line {}: {e}", i + 1);
                code = PARSE;
            }
        }
    }
    Ok(code)
}

fn cmd_pairs(
    registry: &MorphemeRegistry,
    roots: &[PathBuf],
    only: &[LanguageId],
    task: Task,
    out: &mut dyn Write,
) -> Result<u8> {
    if roots.is_empty() {
        return Err(Usage("no input roots".into()).into());
    }
    let filter = IngestFilter {
        languages: only.to_vec(),
    };
    let mut emitter = Emitter::new(task, registry, out).map_err(|e| Usage(e.to_string()))?;
    let ingested = ingest_each(roots, &filter, |batch| emitter.emit(&batch))?;
    let (_, emitted) = emitter.finish()?;
    for (path, why) in &ingested.io_failures {
        eprintln!("warning: {}: {why}", path.display());
    }
    log::info!(
        "{} files, {} functions, ingest skips {:?}",
        ingested.files,
        ingested.functions,
        ingested.skipped
    );
    log::info!(
        "{} records in, {} out, skips {:?}",
        emitted.records_in,
        emitted.records_out,
        emitted.skipped
    );
    Ok(if ingested.io_failures.is_empty() {
        OK
    } else {
        IO
    })
}

fn cmd_corrupt(
    g: &Global,
    input: &Path,
    transform: Transform,
    spec: &NoiseSpec,
    out: &mut dyn Write,
) -> Result<u8> {
    spec.validate().map_err(|e| Usage(e.to_string()))?;
    let language = resolve_language(g, input)?;
    for (i, f) in functions_of(input, language)?.iter().enumerate() {
        let seed = record_seed(g.seed, i as u64);
        let texts: Vec<String> = f.tokens.iter().map(|t| t.text.clone()).collect();
        let mut record = json!({"name": f.name, "language": language.as_str()});
        let output = match transform {
            Transform::Obf => {
                let tree = parse(&f.body, language)?;
                let node = tree
                    .function_node()
                    .ok_or_else(|| anyhow!("{}: lost function", f.name))?;
                let (tokens, renames) = obfuscate(&tree, node);
                let map: BTreeMap<&str, &str> = renames.iter().collect();
                record["renames"] = json!(map);
                join_tokens(&tokens, language)
            }
            Transform::ShuffleLines => shuffle_lines(&f.body, seed),
            Transform::ShuffleTokens => shuffle_tokens(&f.tokens, seed).join(" "),
            Transform::DelKeywords => join_tokens(&delete_keywords(&f.tokens), language),
            Transform::DelSymbols => delete_symbols(&f.tokens).join(" "),
            Transform::Dae => {
                let plain = vec![false; texts.len()];
                let spec = spec.with_seed(seed);
                let c = if language == LanguageId::Python {
                    corrupt_dae_with(&texts, &plain, &python_sentences(&f.tokens), &spec)?
                } else {
                    corrupt_dae(&texts, &plain, &spec)?
                };
                c.tokens.join(" ")
            }
        };
        record["output"] = json!(output);
        write_json(out, &record)?;
    }
    Ok(OK)
}

fn tokens_of(line: &str, language: Option<LanguageId>) -> Vec<String> {
    if let Some(tree) = language.and_then(|l| parse(line, l).ok()) {
        return tokenize(&tree).into_iter().map(|t| t.text).collect();
    }
    line.split_whitespace().map(str::to_owned).collect()
}

fn cmd_eval(g: &Global, e: &Eval, out: &mut dyn Write) -> Result<u8> {
    match e {
        Eval::Bleu {
            hypotheses,
            references,
            max_n,
        } => {
            let hyp: Vec<Vec<String>> = read(hypotheses)?
                .lines()
                .map(|l| tokens_of(l, g.language))
                .collect();
            let refs: Vec<Vec<String>> = read(references)?
                .lines()
                .map(|l| tokens_of(l, g.language))
                .collect();
            let score =
                corpus_bleu(&hyp, &refs, *max_n).map_err(|e| Unprocessable(e.to_string()))?;
            write_json(out, &json!({"bleu": score, "segments": hyp.len()}))?;
        }
        Eval::Ca {
            problems,
            runner,
            candidates,
            n,
        } => {
            let language = g
                .language
                .ok_or_else(|| Usage("eval ca needs --language".into()))?;
            let runner = RunnerConfig::load(runner)?;
            let problems = load_problems(problems)?;
            let lists: Vec<Vec<String>> = match candidates {
                Some(dir) => problems
                    .iter()
                    .map(|p| ranked_candidates(&dir.join(&p.id), language))
                    .collect::<Result<_>>()?,
                None => problems
                    .iter()
                    .map(|p| {
                        p.references
                            .get(&language)
                            .map(|r| vec![r.clone(); *n])
                            .ok_or_else(|| {
                                Usage(format!("{} has no {language} reference", p.id)).into()
                            })
                    })
                    .collect::<Result<_>>()?,
            };
            let verdicts = evaluate(&lists, language, &problems, &runner, *n)?;
            let per_n: Vec<f64> = (1..=*n).map(|k| ca_at(&verdicts, k)).collect();
            let detail: BTreeMap<&str, Vec<String>> = problems
                .iter()
                .zip(&verdicts)
                .map(|(p, v)| (p.id.as_str(), v.iter().map(|x| format!("{x:?}")).collect()))
                .collect();
            write_json(
                out,
                &json!({"ca": per_n[*n - 1], "ca_at": per_n, "verdicts": detail}),
            )?;
        }
        Eval::Retrieval {
            scores,
            relevance,
            k,
        } => {
            let s: Vec<Vec<f64>> =
                serde_json::from_str(&read(scores)?).map_err(|e| Unprocessable(e.to_string()))?;
            let r: Vec<Vec<bool>> = serde_json::from_str(&read(relevance)?)
                .map_err(|e| Unprocessable(e.to_string()))?;
            let m = retrieval_metrics(&s, &r, *k).map_err(|e| Unprocessable(e.to_string()))?;
            write_json(
                out,
                &json!({"precision_at_k": m.precision_at_k, "map": m.map, "mrr": m.mrr, "k": k}),
            )?;
        }
    }
    Ok(OK)
}

/// `1.<ext>`, `2.<ext>`, ... in rank order.
fn ranked_candidates(dir: &Path, language: LanguageId) -> Result<Vec<String>> {
    let mut ranked = Vec::new();
    for entry in fs::read_dir(dir).with_context(|| format!("reading {}", dir.display()))? {
        let path = entry?.path();
        if language_of(&path) != Some(language) {
            continue;
        }
        if let Some(rank) = path
            .file_stem()
            .and_then(|s| s.to_str())
            .and_then(|s| s.parse::<u32>().ok())
        {
            ranked.push((rank, read(&path)?));
        }
    }
    ranked.sort_by_key(|(r, _)| *r);
    Ok(ranked.into_iter().map(|(_, s)| s).collect())
}
