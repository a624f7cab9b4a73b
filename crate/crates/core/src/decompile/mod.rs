//! Rule-based rendering of distilled code into target-language source.
//!
//! The decompiler inverts the distiller on the covered morpheme subset:
//! unified operators and builtins are looked up in the registry's target
//! column, name bags are joined in the target's naming style, and the
//! control templates are printed in target syntax. Whole functions are
//! wrapped in the smallest unit the target compiles (a class for Java and
//! C#, includes for C++, imports for Python).

mod names;
mod print;

use alloc::string::String;

pub use names::{is_reserved, render_name, NameStyle, Role};

use crate::distilled::parse::{parse_fragment, Fragment};
use crate::distilled::{DistilledCode, DistilledError};
use crate::ir::{Expr, Function, Name};
use crate::lang::LanguageId;
use crate::registry::{MorphemeRegistry, Unrenderable};
use print::Printer;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecompileError {
    #[error("`{morpheme}` has no {target} form")]
    UnrenderableMorpheme { morpheme: String, target: LanguageId },
    #[error("malformed distilled code: {0}")]
    MalformedDistilled(#[from] DistilledError),
}

impl From<Unrenderable> for DecompileError {
    fn from(u: Unrenderable) -> Self {
        DecompileError::UnrenderableMorpheme {
            morpheme: u.morpheme,
            target: u.target,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderContext {
    pub target: LanguageId,
    pub name_style: NameStyle,
    pub indent: String,
}

impl RenderContext {
    pub fn new(target: LanguageId) -> Self {
        RenderContext {
            target,
            name_style: NameStyle::for_target(target),
            indent: "    ".into(),
        }
    }
}

/// Render a distilled record for `target`.
///
/// A function record becomes a complete compilation unit; a bare statement
/// or expression snippet is rendered on its own, without a wrapper.
pub fn decompile(d: &DistilledCode, target: LanguageId, registry: &MorphemeRegistry) -> Result<String, DecompileError> {
    let ctx = RenderContext::new(target);
    match parse_fragment(&d.canonicalize())? {
        Fragment::Function(f) => {
            let body = decompile_function(&f, &ctx, registry)?;
            Ok(wrap(&body, target))
        }
        Fragment::Stmts(stmts) => Printer::new(&ctx, registry).stmts_text(&stmts),
        Fragment::Expr(e @ (Expr::Call { .. } | Expr::Builtin { .. })) => {
            Printer::new(&ctx, registry).stmts_text(&[crate::ir::Stmt::Expr(e)])
        }
        Fragment::Expr(e) => Printer::new(&ctx, registry).expr_text(&e),
    }
}

/// Render one function, without the compilation-unit wrapper, indented for
/// placement inside it.
pub fn decompile_function(f: &Function, ctx: &RenderContext, registry: &MorphemeRegistry) -> Result<String, DecompileError> {
    Printer::new(ctx, registry).function_text(f)
}

/// Wrap a rendered function in the target's minimal compilation unit.
pub fn wrap(function: &str, target: LanguageId) -> String {
    let mut out = String::new();
    match target {
        LanguageId::Java => {
            out.push_str("import java.util.*;\n\nclass Main {\n    static Random rand = new Random();\n\n");
            out.push_str(function);
            out.push_str("}\n");
        }
        LanguageId::CSharp => {
            out.push_str("using System;\nusing System.Collections.Generic;\n\npublic class Program {\n");
            out.push_str("    static Random rand = new Random();\n\n");
            out.push_str(function);
            out.push_str("}\n");
        }
        LanguageId::Cpp => {
            out.push_str("#include <bits/stdc++.h>\nusing namespace std;\n\n");
            out.push_str(function);
        }
        LanguageId::Python => {
            out.push_str("import math\nimport queue\nimport random\nfrom collections import deque\n\n\n");
            out.push_str(function);
        }
    }
    out
}

/// Output file name for a function: its bag rendered as a value name.
pub fn file_name(f: &Function, target: LanguageId) -> String {
    let stem = match &f.name {
        Name::Bag(w) => render_name(w, target, Role::Value),
        Name::Raw(s) => s.clone(),
    };
    alloc::format!("{stem}.{}", target.extension())
}

/// Indent level of a function inside its wrapper.
pub(crate) fn function_indent(target: LanguageId) -> usize {
    match target {
        LanguageId::Java | LanguageId::CSharp => 1,
        LanguageId::Cpp | LanguageId::Python => 0,
    }
}
