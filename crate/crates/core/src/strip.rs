//! Removal of comments, docstrings and dead code.
//!
//! Dead code is limited to statements that follow an unconditional jump in
//! the same block and `if` branches guarded by a literal `false` or `0`.
//! [`strip_edits`] plans one round of non-overlapping text edits; callers
//! reparse and repeat until no edit remains, which makes the result a
//! fixpoint and stripping idempotent.

use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Range;

use crate::lang::LanguageId;
use crate::syntax::{is_comment_kind, SyntaxNode, SyntaxTree};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edit {
    pub span: Range<usize>,
    pub replacement: String,
}

impl Edit {
    fn delete(span: Range<usize>) -> Edit {
        Edit {
            span,
            replacement: String::new(),
        }
    }
}

/// Apply sorted, non-overlapping edits.
pub fn apply_edits(source: &str, edits: &[Edit]) -> String {
    let mut out = String::with_capacity(source.len());
    let mut at = 0;
    for e in edits {
        out.push_str(&source[at..e.span.start]);
        out.push_str(&e.replacement);
        at = e.span.end;
    }
    out.push_str(&source[at..]);
    out
}

/// One round of edits for the whole tree, sorted by position.
pub fn strip_edits(tree: &SyntaxTree) -> Vec<Edit> {
    let mut s = Stripper { tree, out: Vec::new() };
    s.walk(&tree.root);
    s.out.sort_by_key(|e| e.span.start);
    for e in &mut s.out {
        widen(&tree.source, e);
    }
    s.out
}

fn is_blank(text: &str) -> bool {
    text.chars().all(|c| matches!(c, ' ' | '\t' | '\r'))
}

/// A deletion that ends its line also takes the whitespace before it, and
/// the whole line when nothing else is left on it.
fn widen(source: &str, e: &mut Edit) {
    if !(e.replacement.is_empty() || e.replacement == " ") {
        return;
    }
    let eol = source[e.span.end..].find('\n').map_or(source.len(), |i| e.span.end + i);
    if !is_blank(&source[e.span.end..eol]) {
        return;
    }
    let line_start = source[..e.span.start].rfind('\n').map_or(0, |i| i + 1);
    e.replacement.clear();
    if is_blank(&source[line_start..e.span.start]) && eol < source.len() {
        e.span = line_start..eol + 1;
    } else {
        let start = source[..e.span.start].trim_end_matches([' ', '\t']).len();
        e.span = start..eol;
    }
}

struct Stripper<'a> {
    tree: &'a SyntaxTree,
    out: Vec<Edit>,
}

fn is_block(kind: &str) -> bool {
    matches!(kind, "block" | "compound_statement" | "constructor_body")
}

fn is_jump(n: &SyntaxNode) -> bool {
    match n.kind {
        "return_statement" | "break_statement" | "continue_statement" | "throw_statement" | "raise_statement" => true,
        "expression_statement" => n.named_children().next().is_some_and(|c| c.kind == "throw_expression"),
        _ => false,
    }
}

impl Stripper<'_> {
    fn py(&self) -> bool {
        self.tree.language == LanguageId::Python
    }

    fn text(&self, n: &SyntaxNode) -> &str {
        self.tree.text(n)
    }

    fn column(&self, pos: usize) -> usize {
        pos - self.tree.source[..pos].rfind('\n').map_or(0, |i| i + 1)
    }

    fn walk(&mut self, n: &SyntaxNode) {
        if is_comment_kind(n.kind) {
            let fill = if self.py() { "" } else { " " };
            self.out.push(Edit {
                span: n.span.clone(),
                replacement: fill.into(),
            });
            return;
        }
        if n.kind == "if_statement" && self.is_false(n) {
            let replacement = self.dead_if(n);
            self.out.push(replacement);
            return;
        }
        if n.kind == "elif_clause" && self.is_false(n) {
            self.out.push(Edit::delete(n.span.clone()));
            return;
        }
        if is_block(n.kind) {
            self.block(n);
            return;
        }
        for c in &n.children {
            self.walk(c);
        }
    }

    /// Statements of a block that never run or carry no code.
    fn block(&mut self, n: &SyntaxNode) {
        let stmts: Vec<&SyntaxNode> = n.named_children().filter(|c| !is_comment_kind(c.kind)).collect();
        let mut dead = Vec::new();
        let mut after_jump = false;
        for s in &stmts {
            let removable = (after_jump && s.kind != "labeled_statement")
                || self.is_docstring(s)
                || (s.kind == "if_statement" && self.is_false(s) && self.alternative(s).is_none());
            if removable {
                dead.push(s.span.clone());
            }
            after_jump |= is_jump(s);
        }
        let mut first = true;
        for span in &dead {
            // A Python block cannot be empty.
            let keep_pass = self.py() && first && dead.len() == stmts.len();
            first = false;
            self.out.push(Edit {
                span: span.clone(),
                replacement: if keep_pass { "pass".into() } else { String::new() },
            });
        }
        for c in &n.children {
            if !dead.contains(&c.span) {
                self.walk(c);
            }
        }
    }

    fn is_docstring(&self, s: &SyntaxNode) -> bool {
        if !self.py() || s.kind != "expression_statement" {
            return false;
        }
        let mut named = s.named_children();
        matches!(
            (named.next(), named.next()),
            (Some(c), None) if c.kind == "string" || c.kind == "concatenated_string"
        )
    }

    fn is_false(&self, n: &SyntaxNode) -> bool {
        let Some(mut c) = n.child_by_field("condition") else { return false };
        loop {
            match c.kind {
                "parenthesized_expression" | "condition_clause" => match c.named_children().next() {
                    Some(inner) if c.named_children().count() == 1 => c = inner,
                    _ => return false,
                },
                _ => break,
            }
        }
        matches!(self.text(c).trim(), "false" | "False" | "0")
    }

    /// The statement or clause that runs when the condition is false.
    fn alternative<'n>(&self, n: &'n SyntaxNode) -> Option<&'n SyntaxNode> {
        let alt = n.child_by_field("alternative")?;
        if alt.kind == "else_clause" && !self.py() {
            return alt.named_children().find(|c| !is_comment_kind(c.kind));
        }
        Some(alt)
    }

    fn dead_if(&self, n: &SyntaxNode) -> Edit {
        let Some(alt) = self.alternative(n) else {
            let fill = if self.py() { "pass" } else { "{}" };
            return Edit {
                span: n.span.clone(),
                replacement: fill.into(),
            };
        };
        if !self.py() {
            return Edit {
                span: n.span.clone(),
                replacement: self.text(alt).into(),
            };
        }
        if alt.kind == "elif_clause" {
            // `if False: ... elif c:` becomes `if c:`.
            return Edit::delete(n.span.start..alt.span.start + 2);
        }
        let Some(body) = alt.child_by_field("body") else {
            return Edit {
                span: n.span.clone(),
                replacement: "pass".into(),
            };
        };
        let shift = self.column(body.span.start).saturating_sub(self.column(n.span.start));
        let mut text = String::new();
        for (i, line) in self.text(body).split('\n').enumerate() {
            if i > 0 {
                text.push('\n');
                let indent = line.len() - line.trim_start_matches(' ').len();
                text.push_str(&line[indent.min(shift)..]);
            } else {
                text.push_str(line);
            }
        }
        Edit {
            span: n.span.clone(),
            replacement: text,
        }
    }
}
