//! Lowering of pruned per-language syntax trees into the typed IR.
//!
//! Lowering is purely syntactic: names stay raw, surface type names are
//! kept as written (`TypeRef::User` for identifier types, `TypeRef::Prim`
//! for keyword types) and library calls stay calls. Morpheme unification
//! happens afterwards on the IR. The control-flow rewrites that need the
//! syntax (switch to if-chains, counting loops to ranges, compound
//! assignments) happen here.

mod cpp;
mod csharp;
mod java;
mod python;

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::ir::{Expr, Function, Name, OpaqueItem, Stmt, TypeRef};
use crate::lang::LanguageId;
use crate::literal::normalize_literal;
use crate::segment::segment;
use crate::syntax::{SyntaxNode, SyntaxTree};

pub(crate) struct Lowerer<'a> {
    src: &'a str,
    lang: LanguageId,
    /// Python names bound so far, one set per function scope.
    scopes: Vec<BTreeSet<String>>,
    /// Words of identifiers the lowering itself discards (labels, `range`).
    pub(crate) dropped: Vec<String>,
}

/// Lower one function-definition node.
pub(crate) fn lower_function(tree: &SyntaxTree, node: &SyntaxNode) -> Option<(Function, Vec<String>)> {
    let mut l = Lowerer {
        src: &tree.source,
        lang: tree.language,
        scopes: Vec::new(),
        dropped: Vec::new(),
    };
    let f = l.function(node)?;
    Some((f, l.dropped))
}

impl<'a> Lowerer<'a> {
    fn text(&self, n: &SyntaxNode) -> &'a str {
        &self.src[n.span.clone()]
    }

    fn function(&mut self, n: &SyntaxNode) -> Option<Function> {
        match self.lang {
            LanguageId::Java => self.java_function(n),
            LanguageId::CSharp => self.cs_function(n),
            LanguageId::Cpp => self.cpp_function(n),
            LanguageId::Python => self.py_function(n),
        }
    }

    fn stmt(&mut self, n: &SyntaxNode, out: &mut Vec<Stmt>) {
        match self.lang {
            LanguageId::Java => self.java_stmt(n, out),
            LanguageId::CSharp => self.cs_stmt(n, out),
            LanguageId::Cpp => self.cpp_stmt(n, out),
            LanguageId::Python => self.py_stmt(n, out),
        }
    }

    fn expr(&mut self, n: &SyntaxNode) -> Expr {
        match self.lang {
            LanguageId::Java => self.java_expr(n),
            LanguageId::CSharp => self.cs_expr(n),
            LanguageId::Cpp => self.cpp_expr(n),
            LanguageId::Python => self.py_expr(n),
        }
    }

    /// Statements of a block node, or of a single statement used as a body.
    fn body(&mut self, n: &SyntaxNode) -> Vec<Stmt> {
        let mut out = Vec::new();
        self.stmt(n, &mut out);
        out
    }

    fn block_children(&mut self, n: &SyntaxNode, out: &mut Vec<Stmt>) {
        for c in n.named_children() {
            self.stmt(c, out);
        }
    }

    fn drop_ident(&mut self, n: &SyntaxNode) {
        let t = self.text(n);
        self.dropped.extend(segment(t));
    }

    fn name(&self, n: &SyntaxNode) -> Name {
        Name::Raw(self.text(n).to_string())
    }

    fn name_expr(&self, n: &SyntaxNode) -> Expr {
        Expr::Name(self.name(n))
    }

    fn literal(&mut self, n: &SyntaxNode) -> Expr {
        let text = self.text(n);
        // The C++ grammar folds a leading minus into the number.
        if let Some(abs) = text.strip_prefix('-') {
            if let Some(l) = normalize_literal(abs.trim_start(), self.lang) {
                return Expr::unary("-", Expr::Lit(l));
            }
        }
        match normalize_literal(text, self.lang) {
            Some(l) => Expr::Lit(l),
            None => self.opaque_expr(n),
        }
    }

    fn is_stmt_kind(kind: &str) -> bool {
        kind.ends_with("_statement")
            || kind.ends_with("_declaration")
            || matches!(kind, "block" | "compound_statement" | "declaration" | "function_definition")
    }

    fn opaque_items(&mut self, n: &SyntaxNode) -> Vec<OpaqueItem> {
        let mut items = Vec::new();
        for c in n.named_children() {
            if Self::is_stmt_kind(c.kind) {
                items.push(OpaqueItem::Block(self.body(c)));
            } else {
                items.push(OpaqueItem::Expr(self.expr(c)));
            }
        }
        items
    }

    fn opaque_expr(&mut self, n: &SyntaxNode) -> Expr {
        if n.is_leaf() {
            return Expr::Opaque {
                kind: n.kind.to_string(),
                items: Vec::new(),
            };
        }
        Expr::Opaque {
            kind: n.kind.to_string(),
            items: self.opaque_items(n),
        }
    }

    fn opaque_stmt(&mut self, n: &SyntaxNode) -> Stmt {
        if n.kind.starts_with("preproc_") {
            let text = self.text(n).trim_end();
            return Stmt::Opaque {
                kind: "preproc".into(),
                items: alloc::vec![OpaqueItem::Expr(Expr::Lit(quote_verbatim(text)))],
            };
        }
        Stmt::Opaque {
            kind: n.kind.to_string(),
            items: self.opaque_items(n),
        }
    }

    /// Fallback for leaves not covered by a language's expression table.
    fn leaf_expr(&mut self, n: &SyntaxNode) -> Expr {
        if n.kind.contains("identifier") {
            self.name_expr(n)
        } else {
            self.opaque_expr(n)
        }
    }
}

/// Quote arbitrary text as a distilled string literal.
fn quote_verbatim(text: &str) -> String {
    let mut s = String::from("\"");
    for c in text.chars() {
        match c {
            '"' => s.push_str("\\\""),
            '\\' => s.push_str("\\\\"),
            '\n' => s.push_str("\\n"),
            '\r' => {}
            c => s.push(c),
        }
    }
    s.push('"');
    s
}

/// `x op= v` as a plain assignment.
fn compound_assign(target: Expr, op: &str, value: Expr) -> Stmt {
    let value = match op.strip_suffix('=') {
        Some(bin) if !bin.is_empty() && op != "==" => Expr::binary(bin, target.clone(), value),
        _ => value,
    };
    Stmt::Assign { target, value }
}

/// `x++` / `x--` as a plain assignment.
fn inc_dec(target: Expr, op: &str) -> Stmt {
    let bin = if op == "++" { "+" } else { "-" };
    Stmt::Assign {
        value: Expr::binary(bin, target.clone(), Expr::lit("1")),
        target,
    }
}

fn int_lit(e: &Expr) -> Option<i64> {
    match e {
        Expr::Lit(s) => s.parse().ok(),
        Expr::Unary { op, operand } if op == "-" => int_lit(operand).map(|v| -v),
        _ => None,
    }
}

fn int_expr(v: i64) -> Expr {
    if v < 0 {
        Expr::unary("-", Expr::Lit(format!("{}", -v)))
    } else {
        Expr::Lit(format!("{v}"))
    }
}

/// `e + k`, folding literals and cancelling a trailing `- k`.
fn add_const(e: Expr, k: i64) -> Expr {
    if let Some(v) = int_lit(&e) {
        return int_expr(v + k);
    }
    if let Expr::Binary { op, lhs, rhs } = &e {
        if let Some(r) = int_lit(rhs) {
            let delta = if op == "+" { r } else if op == "-" { -r } else { 0 };
            if (op == "+" || op == "-") && delta + k == 0 {
                return (**lhs).clone();
            }
        }
    }
    if k >= 0 {
        Expr::binary("+", e, Expr::Lit(format!("{k}")))
    } else {
        Expr::binary("-", e, Expr::Lit(format!("{}", -k)))
    }
}

/// Step of a loop update statement on `var`: `Some(k)` for `var += k`
/// forms with an integer literal, `Err(e)` for a non-literal positive step.
enum Step {
    Const(i64),
    Expr(Expr),
}

fn loop_step(update: &Stmt, var: &Name) -> Option<Step> {
    let Stmt::Assign { target, value } = update else { return None };
    if !matches!(target, Expr::Name(n) if n == var) {
        return None;
    }
    let Expr::Binary { op, lhs, rhs } = value else { return None };
    if !matches!(&**lhs, Expr::Name(n) if n == var) {
        return None;
    }
    match (op.as_str(), int_lit(rhs)) {
        ("+", Some(k)) => Some(Step::Const(k)),
        ("-", Some(k)) => Some(Step::Const(-k)),
        ("+", None) => Some(Step::Expr((**rhs).clone())),
        _ => None,
    }
}

fn is_counter_type(t: &TypeRef) -> bool {
    matches!(t, TypeRef::Prim(p) if matches!(p.as_str(), "int" | "long" | "short" | "var" | "byte"))
        || matches!(t, TypeRef::User(Name::Raw(n)) if n == "var")
}

/// Build a C-style `for`, recognizing counting loops as ranges.
fn make_for(init: Vec<Stmt>, cond: Option<Expr>, update: Vec<Stmt>, body: Vec<Stmt>) -> Stmt {
    if let ([Stmt::Decl { ty, name, init: Some(start) }], Some(Expr::Binary { op, lhs, rhs }), [upd]) =
        (init.as_slice(), &cond, update.as_slice())
    {
        let is_var = matches!(&**lhs, Expr::Name(n) if n == name);
        if is_var && is_counter_type(ty) {
            let range = match (op.as_str(), loop_step(upd, name)) {
                ("<", Some(Step::Const(k))) if k > 0 => Some(((**rhs).clone(), k)),
                ("<=", Some(Step::Const(k))) if k > 0 => Some((add_const((**rhs).clone(), 1), k)),
                (">", Some(Step::Const(k))) if k < 0 => Some(((**rhs).clone(), k)),
                (">=", Some(Step::Const(k))) if k < 0 => Some((add_const((**rhs).clone(), -1), k)),
                _ => None,
            };
            if let Some((end, k)) = range {
                return Stmt::ForRange {
                    var: name.clone(),
                    start: start.clone(),
                    end,
                    step: (k != 1).then(|| int_expr(k)),
                    body,
                };
            }
            if let ("<", Some(Step::Expr(step))) = (op.as_str(), loop_step(upd, name)) {
                return Stmt::ForRange {
                    var: name.clone(),
                    start: start.clone(),
                    end: (**rhs).clone(),
                    step: Some(step),
                    body,
                };
            }
        }
    }
    Stmt::For {
        init,
        cond,
        update,
        body,
    }
}

/// One arm of a C-family `switch`: its labels (`None` is `default`) and body.
struct SwitchArm {
    labels: Vec<Option<Expr>>,
    body: Vec<Stmt>,
}

/// Rewrite a switch into an if/elif/else chain with `==` guards.
fn switch_chain(subject: Expr, arms: Vec<SwitchArm>) -> Vec<Stmt> {
    // Merge empty fall-through arms into the next one.
    let mut merged: Vec<SwitchArm> = Vec::new();
    let mut pending: Vec<Option<Expr>> = Vec::new();
    for mut arm in arms {
        pending.append(&mut arm.labels);
        if arm.body.is_empty() {
            continue;
        }
        // Fall-through past a non-empty arm is not modelled; the arm stands alone.
        if matches!(arm.body.last(), Some(Stmt::Break)) {
            arm.body.pop();
        }
        merged.push(SwitchArm {
            labels: core::mem::take(&mut pending),
            body: arm.body,
        });
    }
    if !pending.is_empty() {
        merged.push(SwitchArm {
            labels: pending,
            body: Vec::new(),
        });
    }
    let mut branches = Vec::new();
    let mut otherwise = None;
    for arm in merged {
        if arm.labels.iter().any(Option::is_none) {
            otherwise = Some(arm.body);
            continue;
        }
        let guard = arm
            .labels
            .into_iter()
            .flatten()
            .map(|l| Expr::binary("==", subject.clone(), l))
            .reduce(|a, b| Expr::binary("||", a, b));
        if let Some(g) = guard {
            branches.push((g, arm.body));
        }
    }
    if branches.is_empty() {
        return otherwise.unwrap_or_default();
    }
    alloc::vec![Stmt::If { branches, otherwise }]
}

/// Fold `if` + `else if` nesting into one chain.
fn if_chain(cond: Expr, then: Vec<Stmt>, otherwise: Option<Vec<Stmt>>) -> Stmt {
    let mut branches = alloc::vec![(cond, then)];
    let otherwise = match otherwise {
        Some(mut stmts) if stmts.len() == 1 && matches!(stmts[0], Stmt::If { .. }) => match stmts.pop() {
            Some(Stmt::If {
                branches: more,
                otherwise,
            }) => {
                branches.extend(more);
                otherwise
            }
            _ => None,
        },
        other => other,
    };
    Stmt::If { branches, otherwise }
}

fn boxed(e: Expr) -> Box<Expr> {
    Box::new(e)
}
