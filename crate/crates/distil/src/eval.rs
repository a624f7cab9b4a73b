//! Execution-based evaluation: problems with test cases, a configurable
//! compile/run harness and CA@N.

use std::collections::BTreeMap;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::{Child, Command, Stdio};
use std::time::Duration;

use distil_core::LanguageId;
use rayon::prelude::*;
use serde::Deserialize;
use wait_timeout::ChildExt;

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("runner config: {0}")]
    Config(String),
    #[error("problem `{0}` has no test cases")]
    NoTestCases(String),
    #[error("no {language} toolchain: {reason}")]
    RunnerFailure {
        language: LanguageId,
        reason: String,
    },
    #[error("problem `{problem}` has {have} candidates, fewer than {n}")]
    TooFewCandidates {
        problem: String,
        have: usize,
        n: usize,
    },
    #[error("{problems} problems but {candidates} candidate lists")]
    ShapeMismatch { problems: usize, candidates: usize },
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> EvalError + '_ {
    move |source| EvalError::Io {
        path: path.to_owned(),
        source,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestCase {
    pub input: String,
    pub expected: String,
}

/// One directory: `reference.<ext>` per language and `N.in` / `N.out`
/// pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalProblem {
    pub id: String,
    pub references: BTreeMap<LanguageId, String>,
    pub cases: Vec<TestCase>,
}

impl EvalProblem {
    pub fn load(dir: &Path) -> Result<EvalProblem, EvalError> {
        let id = dir
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        let mut references = BTreeMap::new();
        let mut inputs = Vec::new();
        for entry in fs::read_dir(dir).map_err(io_err(dir))? {
            let path = entry.map_err(io_err(dir))?.path();
            let (Some(stem), Some(ext)) = (
                path.file_stem().and_then(|s| s.to_str()),
                path.extension().and_then(|s| s.to_str()),
            ) else {
                continue;
            };
            if stem == "reference" {
                if let Some(l) = LanguageId::from_extension(ext) {
                    references.insert(l, fs::read_to_string(&path).map_err(io_err(&path))?);
                }
            } else if ext == "in" {
                inputs.push((stem.parse::<u64>().ok(), stem.to_owned(), path.clone()));
            }
        }
        inputs.sort();
        let mut cases = Vec::new();
        for (_, _, input) in inputs {
            let output = input.with_extension("out");
            if !output.exists() {
                continue;
            }
            cases.push(TestCase {
                input: fs::read_to_string(&input).map_err(io_err(&input))?,
                expected: fs::read_to_string(&output).map_err(io_err(&output))?,
            });
        }
        if cases.is_empty() {
            return Err(EvalError::NoTestCases(id));
        }
        Ok(EvalProblem {
            id,
            references,
            cases,
        })
    }
}

/// Every problem directory under `root`, sorted by name.
pub fn load_problems(root: &Path) -> Result<Vec<EvalProblem>, EvalError> {
    let mut dirs = Vec::new();
    for entry in fs::read_dir(root).map_err(io_err(root))? {
        let path = entry.map_err(io_err(root))?.path();
        if path.is_dir() {
            dirs.push(path);
        }
    }
    dirs.sort();
    dirs.iter().map(|d| EvalProblem::load(d)).collect()
}

/// Shell command templates for one language. `{src}`, `{exe}` and `{dir}`
/// expand to the source file, an output path and the scratch directory.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct CommandTemplate {
    pub compile: Option<String>,
    pub run: String,
    /// Source file name inside the scratch directory; defaults to
    /// `main.<ext>`.
    pub file: Option<String>,
    /// Program whose absence means the toolchain is missing; defaults to
    /// the first word of the compile or run command.
    pub probe: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct RunnerConfig {
    pub timeout_secs: f64,
    /// Keyed by language name (`cpp`, `java`, `csharp`, `python`).
    pub languages: BTreeMap<String, CommandTemplate>,
}

impl RunnerConfig {
    pub fn parse(text: &str) -> Result<RunnerConfig, EvalError> {
        let mut c: RunnerConfig =
            toml::from_str(text).map_err(|e| EvalError::Config(e.to_string()))?;
        c.validate()?;
        // Aliases such as `py` or `cs` become canonical names.
        c.languages = c
            .languages
            .into_iter()
            .map(|(k, v)| {
                (
                    k.parse::<LanguageId>().map_or(k, |l| l.as_str().to_owned()),
                    v,
                )
            })
            .collect();
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<RunnerConfig, EvalError> {
        RunnerConfig::parse(&fs::read_to_string(path).map_err(io_err(path))?)
    }

    fn validate(&self) -> Result<(), EvalError> {
        if !(self.timeout_secs > 0.0 && self.timeout_secs.is_finite()) {
            return Err(EvalError::Config(format!(
                "timeout {} is not positive",
                self.timeout_secs
            )));
        }
        for (name, t) in &self.languages {
            name.parse::<LanguageId>()
                .map_err(|e| EvalError::Config(e.to_string()))?;
            let uses_src =
                t.run.contains("{src}") || t.compile.as_ref().is_some_and(|c| c.contains("{src}"));
            if !uses_src {
                return Err(EvalError::Config(format!(
                    "{name}: no command mentions {{src}}"
                )));
            }
        }
        Ok(())
    }

    fn template(&self, language: LanguageId) -> Result<&CommandTemplate, EvalError> {
        self.languages
            .get(language.as_str())
            .ok_or_else(|| EvalError::RunnerFailure {
                language,
                reason: "no command template".into(),
            })
    }

    fn timeout(&self) -> Duration {
        Duration::from_secs_f64(self.timeout_secs)
    }

    /// Fail with `RunnerFailure` when the language's toolchain is absent.
    pub fn check_toolchain(&self, language: LanguageId) -> Result<(), EvalError> {
        let t = self.template(language)?;
        let program = t
            .probe
            .as_deref()
            .or_else(|| {
                t.compile
                    .as_deref()
                    .unwrap_or(&t.run)
                    .split_whitespace()
                    .next()
            })
            .unwrap_or_default();
        if find_program(program).is_some() {
            Ok(())
        } else {
            Err(EvalError::RunnerFailure {
                language,
                reason: format!("`{program}` not found"),
            })
        }
    }
}

fn find_program(name: &str) -> Option<PathBuf> {
    if name.is_empty() {
        return None;
    }
    if name.contains('/') {
        return Path::new(name).is_file().then(|| name.into());
    }
    std::env::split_paths(&std::env::var_os("PATH")?)
        .map(|d| d.join(name))
        .find(|p| p.is_file())
}

/// Trailing whitespace on each line and trailing blank lines are ignored.
pub fn outputs_match(actual: &str, expected: &str) -> bool {
    fn norm(s: &str) -> Vec<&str> {
        let mut lines: Vec<&str> = s.lines().map(str::trim_end).collect();
        while lines.last().is_some_and(|l| l.is_empty()) {
            lines.pop();
        }
        lines
    }
    norm(actual) == norm(expected)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    CompileError,
    RuntimeError,
    WrongAnswer,
    Timeout,
}

enum Finished {
    Exited { success: bool, stdout: String },
    TimedOut,
}

fn shell(command: &str) -> Command {
    let mut c = Command::new("sh");
    c.arg("-c").arg(command);
    #[cfg(unix)]
    {
        use std::os::unix::process::CommandExt;
        c.process_group(0);
    }
    c
}

fn kill(child: &mut Child) {
    #[cfg(unix)]
    {
        // The shell's children share its process group.
        let _ = Command::new("kill")
            .args(["-KILL", "--", &format!("-{}", child.id())])
            .stderr(Stdio::null())
            .status();
    }
    let _ = child.kill();
    let _ = child.wait();
}

fn execute(
    mut command: Command,
    dir: &Path,
    input: &str,
    timeout: Duration,
) -> Result<Finished, std::io::Error> {
    let mut child = command
        .current_dir(dir)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()?;
    let mut stdin = child.stdin.take();
    let input = input.to_owned();
    let writer = std::thread::spawn(move || {
        if let Some(s) = stdin.as_mut() {
            let _ = s.write_all(input.as_bytes());
        }
    });
    let mut stdout = child.stdout.take();
    let reader = std::thread::spawn(move || {
        let mut buf = Vec::new();
        if let Some(s) = stdout.as_mut() {
            let _ = s.read_to_end(&mut buf);
        }
        buf
    });
    let status = child.wait_timeout(timeout)?;
    let Some(status) = status else {
        kill(&mut child);
        let _ = writer.join();
        let _ = reader.join();
        return Ok(Finished::TimedOut);
    };
    let _ = writer.join();
    let out = reader.join().unwrap_or_default();
    Ok(Finished::Exited {
        success: status.success(),
        stdout: String::from_utf8_lossy(&out).into_owned(),
    })
}

fn expand(template: &str, src: &Path, exe: &Path, dir: &Path) -> String {
    template
        .replace("{src}", &src.to_string_lossy())
        .replace("{exe}", &exe.to_string_lossy())
        .replace("{dir}", &dir.to_string_lossy())
}

/// Compile and run one candidate against every case of `problem` in a
/// fresh scratch directory.
pub fn run_candidate(
    source: &str,
    language: LanguageId,
    problem: &EvalProblem,
    runner: &RunnerConfig,
) -> Result<Verdict, EvalError> {
    let t = runner.template(language)?;
    let scratch = tempfile::tempdir().map_err(io_err(Path::new("tempdir")))?;
    let dir = scratch.path();
    let src = dir.join(
        t.file
            .clone()
            .unwrap_or_else(|| format!("main.{}", language.extension())),
    );
    let exe = dir.join("main.bin");
    fs::write(&src, source).map_err(io_err(&src))?;
    let infra = |e: std::io::Error| EvalError::RunnerFailure {
        language,
        reason: e.to_string(),
    };
    if let Some(compile) = &t.compile {
        match execute(
            shell(&expand(compile, &src, &exe, dir)),
            dir,
            "",
            runner.timeout(),
        )
        .map_err(infra)?
        {
            Finished::Exited { success: true, .. } => {}
            Finished::Exited { .. } => return Ok(Verdict::CompileError),
            Finished::TimedOut => return Ok(Verdict::Timeout),
        }
    }
    let run = expand(&t.run, &src, &exe, dir);
    for case in &problem.cases {
        match execute(shell(&run), dir, &case.input, runner.timeout()).map_err(infra)? {
            Finished::TimedOut => return Ok(Verdict::Timeout),
            Finished::Exited { success: false, .. } => return Ok(Verdict::RuntimeError),
            Finished::Exited { stdout, .. } if !outputs_match(&stdout, &case.expected) => {
                return Ok(Verdict::WrongAnswer)
            }
            Finished::Exited { .. } => {}
        }
    }
    Ok(Verdict::Pass)
}

/// Verdicts for the first `n` candidates of every problem. Problems run
/// in parallel; a missing toolchain aborts with `RunnerFailure`.
pub fn evaluate(
    candidates: &[Vec<String>],
    language: LanguageId,
    problems: &[EvalProblem],
    runner: &RunnerConfig,
    n: usize,
) -> Result<Vec<Vec<Verdict>>, EvalError> {
    if candidates.len() != problems.len() {
        return Err(EvalError::ShapeMismatch {
            problems: problems.len(),
            candidates: candidates.len(),
        });
    }
    for (p, c) in problems.iter().zip(candidates) {
        if c.len() < n {
            return Err(EvalError::TooFewCandidates {
                problem: p.id.clone(),
                have: c.len(),
                n,
            });
        }
    }
    runner.check_toolchain(language)?;
    problems
        .par_iter()
        .zip(candidates)
        .map(|(p, c)| {
            c[..n]
                .iter()
                .map(|src| run_candidate(src, language, p, runner))
                .collect()
        })
        .collect()
}

/// Fraction of problems with a passing candidate among the first `n`.
pub fn ca_at(verdicts: &[Vec<Verdict>], n: usize) -> f64 {
    if verdicts.is_empty() {
        return 0.0;
    }
    let passed = verdicts
        .iter()
        .filter(|v| v.iter().take(n).any(|&x| x == Verdict::Pass))
        .count();
    passed as f64 / verdicts.len() as f64
}

/// CA@N for candidate lists ordered by preference.
pub fn compute_ca(
    candidates: &[Vec<String>],
    language: LanguageId,
    problems: &[EvalProblem],
    runner: &RunnerConfig,
    n: usize,
) -> Result<f64, EvalError> {
    Ok(ca_at(
        &evaluate(candidates, language, problems, runner, n)?,
        n,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comparison_ignores_trailing_space_only() {
        assert!(outputs_match("1 \n2\n\n\n", "1\n2"));
        assert!(outputs_match("a\r\n", "a\n"));
        assert!(!outputs_match(" 1\n", "1\n"));
        assert!(!outputs_match("1.0\n", "1\n"));
        assert!(!outputs_match("1\n\n2", "1\n2"));
    }

    #[test]
    fn config_needs_source_and_positive_timeout() {
        let ok = "timeout_secs = 2\n[languages.python]\nrun = \"python3 {src}\"\n";
        assert!(RunnerConfig::parse(ok).is_ok());
        let no_src = "timeout_secs = 2\n[languages.python]\nrun = \"python3 x.py\"\n";
        assert!(matches!(
            RunnerConfig::parse(no_src),
            Err(EvalError::Config(_))
        ));
        let zero = "timeout_secs = 0\n[languages.python]\nrun = \"python3 {src}\"\n";
        assert!(matches!(
            RunnerConfig::parse(zero),
            Err(EvalError::Config(_))
        ));
        let bad_lang = "timeout_secs = 1\n[languages.rust]\nrun = \"{src}\"\n";
        assert!(matches!(
            RunnerConfig::parse(bad_lang),
            Err(EvalError::Config(_))
        ));
    }

    #[test]
    fn ca_takes_prefixes() {
        use Verdict::*;
        let v = vec![
            vec![WrongAnswer, Pass],
            vec![Pass, Timeout],
            vec![Timeout, CompileError],
        ];
        assert_eq!(ca_at(&v, 1), 1.0 / 3.0);
        assert_eq!(ca_at(&v, 2), 2.0 / 3.0);
    }

    #[test]
    fn placeholders_expand() {
        let s = expand(
            "g++ {src} -o {exe} && cd {dir}",
            Path::new("/t/a.cpp"),
            Path::new("/t/a"),
            Path::new("/t"),
        );
        assert_eq!(s, "g++ /t/a.cpp -o /t/a && cd /t");
    }
}
