mod common;

use std::path::PathBuf;

use distil::eval::{
    ca_at, compute_ca, evaluate, load_problems, EvalError, EvalProblem, RunnerConfig, Verdict,
};
use distil_core::LanguageId;

fn suite() -> PathBuf {
    common::fixtures().join("ca")
}

fn setup() -> (Vec<EvalProblem>, RunnerConfig) {
    let problems = load_problems(&suite().join("problems")).unwrap();
    let runner = RunnerConfig::load(&suite().join("runner.toml")).unwrap();
    (problems, runner)
}

fn available(runner: &RunnerConfig, language: LanguageId) -> bool {
    match runner.check_toolchain(language) {
        Ok(()) => true,
        Err(e) => {
            eprintln!("warning: skipping, {e}");
            false
        }
    }
}

fn references(problems: &[EvalProblem], language: LanguageId) -> Vec<Vec<String>> {
    problems
        .iter()
        .map(|p| vec![p.references[&language].clone()])
        .collect()
}

/// References, with the broken versions first where one exists.
fn with_broken(problems: &[EvalProblem]) -> Vec<Vec<String>> {
    problems
        .iter()
        .map(|p| {
            let good = p.references[&LanguageId::Python].clone();
            match std::fs::read_to_string(suite().join("broken").join(format!("{}.py", p.id))) {
                Ok(bad) => vec![bad, good],
                Err(_) => vec![good.clone(), good],
            }
        })
        .collect()
}

#[test]
fn suite_shape() {
    let (problems, _) = setup();
    assert_eq!(problems.len(), 10);
    assert!(problems.iter().all(|p| !p.cases.is_empty()));
}

#[test]
fn references_score_one() {
    let (problems, runner) = setup();
    if !available(&runner, LanguageId::Python) {
        return;
    }
    let ca = compute_ca(
        &references(&problems, LanguageId::Python),
        LanguageId::Python,
        &problems,
        &runner,
        1,
    )
    .unwrap();
    assert_eq!(ca, 1.0);
}

#[test]
fn broken_candidates_and_monotone_n() {
    let (problems, runner) = setup();
    if !available(&runner, LanguageId::Python) {
        return;
    }
    let v = evaluate(
        &with_broken(&problems),
        LanguageId::Python,
        &problems,
        &runner,
        2,
    )
    .unwrap();
    assert_eq!(ca_at(&v, 1), 0.6);
    assert_eq!(ca_at(&v, 2), 1.0);
    let firsts: Vec<Verdict> = v.iter().map(|c| c[0]).collect();
    for kind in [
        Verdict::WrongAnswer,
        Verdict::CompileError,
        Verdict::RuntimeError,
        Verdict::Timeout,
    ] {
        assert_eq!(firsts.iter().filter(|&&x| x == kind).count(), 1, "{kind:?}");
    }
}

#[test]
fn empty_programs_score_zero() {
    let (problems, runner) = setup();
    if !available(&runner, LanguageId::Python) {
        return;
    }
    let empty = vec![vec![String::new()]; problems.len()];
    assert_eq!(
        compute_ca(&empty, LanguageId::Python, &problems, &runner, 1).unwrap(),
        0.0
    );
}

#[test]
fn cpp_references_compile_and_pass() {
    let (problems, runner) = setup();
    if !available(&runner, LanguageId::Cpp) {
        return;
    }
    let with_cpp: Vec<EvalProblem> = problems
        .into_iter()
        .filter(|p| p.references.contains_key(&LanguageId::Cpp))
        .collect();
    assert_eq!(with_cpp.len(), 2);
    let ca = compute_ca(
        &references(&with_cpp, LanguageId::Cpp),
        LanguageId::Cpp,
        &with_cpp,
        &runner,
        1,
    )
    .unwrap();
    assert_eq!(ca, 1.0);
}

#[test]
fn missing_toolchain_is_an_infrastructure_failure() {
    let (problems, _) = setup();
    let runner = RunnerConfig::parse(
        "timeout_secs = 1\n[languages.java]\nrun = \"no-such-jvm-here {src}\"\n",
    )
    .unwrap();
    let c = vec![vec![String::new()]; problems.len()];
    assert!(matches!(
        compute_ca(&c, LanguageId::Java, &problems, &runner, 1),
        Err(EvalError::RunnerFailure {
            language: LanguageId::Java,
            ..
        })
    ));
    // No template at all is the same kind of failure.
    assert!(matches!(
        compute_ca(&c, LanguageId::CSharp, &problems, &runner, 1),
        Err(EvalError::RunnerFailure { .. })
    ));
}

#[test]
fn too_few_candidates() {
    let (problems, runner) = setup();
    let c = vec![vec![String::new()]; problems.len()];
    assert!(matches!(
        compute_ca(&c, LanguageId::Python, &problems, &runner, 2),
        Err(EvalError::TooFewCandidates { .. })
    ));
}
