//! Source function to distilled code: prune, lower, unify, fuzz, reassemble.

mod fuzz;
mod lower;
pub mod prune;
mod reassemble;
mod unify;

use alloc::string::String;
use alloc::vec::Vec;

use crate::distilled::{DistilledCode, DistilledError};
use crate::ir::Function;
use crate::registry::MorphemeRegistry;
use crate::syntax::{SyntaxNode, SyntaxTree};

pub use fuzz::fuzz_names;
pub use prune::{prune, prune_list};
pub use reassemble::reassemble;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DistillError {
    #[error("source has syntax errors")]
    SyntaxErrors,
    #[error("no function definition found")]
    NoFunction,
    #[error("function node could not be lowered")]
    Unlowerable,
    #[error("reassembled output is invalid: {0}")]
    Untemplated(#[from] DistilledError),
}

/// Bookkeeping collected while unifying one function.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DistillReport {
    /// Call sites rewritten by a registry rule.
    pub registry_hits: usize,
    /// Call sites left to the bag-of-words fallback.
    pub fallback_calls: usize,
    /// Nodes with no template, emitted as `opaque`.
    pub opaque_nodes: usize,
    /// Subwords of identifiers absorbed by a rule, a type mapping or a
    /// lowering rewrite (`System`, `out`, `range`, loop labels, ...).
    pub consumed: Vec<String>,
}

impl DistillReport {
    pub fn hit_rate(&self) -> Option<f64> {
        let total = self.registry_hits + self.fallback_calls;
        (total > 0).then(|| self.registry_hits as f64 / total as f64)
    }
}

/// Lower a function node of a pruned tree and unify its morphemes.
pub fn unify(
    pruned: &SyntaxTree,
    node: &SyntaxNode,
    registry: &MorphemeRegistry,
) -> Result<(Function, DistillReport), DistillError> {
    let (mut f, dropped) = lower::lower_function(pruned, node).ok_or(DistillError::Unlowerable)?;
    let mut report = unify::unify_function(&mut f, pruned.language, registry);
    report.consumed.extend(dropped);
    Ok((f, report))
}

/// Result of distilling one function.
#[derive(Debug, Clone, PartialEq)]
pub struct Distilled {
    pub code: DistilledCode,
    pub report: DistillReport,
}

/// Full pipeline on a tree holding one function (the first one found).
pub fn distill_tree(tree: &SyntaxTree, registry: &MorphemeRegistry) -> Result<Distilled, DistillError> {
    if tree.has_error {
        return Err(DistillError::SyntaxErrors);
    }
    let pruned = prune(tree);
    let node = pruned.function_node().ok_or(DistillError::NoFunction)?;
    let (f, report) = unify(&pruned, node, registry)?;
    let f = fuzz_names(f);
    let code = reassemble(&f, Some(tree.language));
    code.validate()?;
    Ok(Distilled { code, report })
}
