//! End-to-end distillation and the distilled-level round trip.

use distil_core::decompile::{decompile, DecompileError};
use distil_core::distill::{distill_tree, DistillError, Distilled};
use distil_core::{DistilledCode, LanguageId, MorphemeRegistry};

use crate::frontend::{parse, strip_noncode, FrontendError, SourceFunction};

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error(transparent)]
    Frontend(#[from] FrontendError),
    #[error(transparent)]
    Distill(#[from] DistillError),
    #[error(transparent)]
    Decompile(#[from] DecompileError),
}

/// Strip, parse and distill one function.
pub fn distill(
    f: &SourceFunction,
    registry: &MorphemeRegistry,
) -> Result<Distilled, PipelineError> {
    let clean = strip_noncode(f)?;
    let tree = parse(&clean.body, clean.language)?;
    Ok(distill_tree(&tree, registry)?)
}

/// Distill the first function in `source`.
pub fn distill_text(
    source: &str,
    language: LanguageId,
    registry: &MorphemeRegistry,
) -> Result<Distilled, PipelineError> {
    let f = SourceFunction::from_text(source, language)?;
    distill(&f, registry)
}

#[derive(Debug)]
pub struct RoundTrip {
    pub original: DistilledCode,
    pub decompiled: Option<String>,
    pub redistilled: Option<DistilledCode>,
    /// Decompiled output parsed without error nodes.
    pub reparses: bool,
    pub error: Option<PipelineError>,
}

impl RoundTrip {
    pub fn passed(&self) -> bool {
        self.reparses
            && self
                .redistilled
                .as_ref()
                .is_some_and(|r| r.tokens == self.original.tokens)
    }
}

/// Distill `f`, decompile to `target`, distill again and compare canonical
/// forms. Errors after the first distillation are reported, not returned.
pub fn round_trip_check(
    f: &SourceFunction,
    target: LanguageId,
    registry: &MorphemeRegistry,
) -> Result<RoundTrip, PipelineError> {
    let original = distill(f, registry)?.code.canonicalize();
    let mut report = RoundTrip {
        original,
        decompiled: None,
        redistilled: None,
        reparses: false,
        error: None,
    };
    let text = match decompile(&report.original, target, registry) {
        Ok(t) => t,
        Err(e) => {
            report.error = Some(e.into());
            return Ok(report);
        }
    };
    report.reparses = parse(&text, target).is_ok_and(|t| !t.has_error);
    report.decompiled = Some(text);
    match distill_text(
        report.decompiled.as_deref().unwrap_or_default(),
        target,
        registry,
    ) {
        Ok(d) => report.redistilled = Some(d.code.canonicalize()),
        Err(e) => report.error = Some(e),
    }
    Ok(report)
}
