//! Leaf tokenization of syntax trees.

use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Range;

use crate::lang::LanguageId;
use crate::syntax::{is_comment_kind, SyntaxNode, SyntaxTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Identifier,
    Keyword,
    Symbol,
    Literal,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub text: String,
    pub kind: TokenKind,
    pub span: Range<usize>,
    /// Zero-based line of the first byte.
    pub line: u32,
    /// Zero-based byte column of the first byte.
    pub column: u32,
}

/// Nodes that become a single token even though the grammar gives them children.
fn is_atomic(kind: &str) -> bool {
    matches!(
        kind,
        "string_literal"
            | "string"
            | "character_literal"
            | "char_literal"
            | "raw_string_literal"
            | "verbatim_string_literal"
            | "interpolated_string_expression"
            | "text_block"
            | "system_lib_string"
            | "boolean_literal"
            | "null"
    ) || kind.starts_with("preproc_")
}

fn is_identifier_kind(kind: &str) -> bool {
    matches!(
        kind,
        "identifier"
            | "type_identifier"
            | "field_identifier"
            | "namespace_identifier"
            | "property_identifier"
            | "statement_identifier"
    )
}

fn is_literal_kind(kind: &str) -> bool {
    matches!(
        kind,
        "number_literal"
            | "integer"
            | "float"
            | "decimal_integer_literal"
            | "hex_integer_literal"
            | "octal_integer_literal"
            | "binary_integer_literal"
            | "decimal_floating_point_literal"
            | "hex_floating_point_literal"
            | "integer_literal"
            | "real_literal"
            | "true"
            | "false"
            | "null_literal"
            | "none"
            | "nullptr"
    )
}

fn classify(node: &SyntaxNode, text: &str) -> TokenKind {
    if is_comment_kind(node.kind) {
        return TokenKind::Other;
    }
    if is_literal_kind(node.kind) || (is_atomic(node.kind) && !node.kind.starts_with("preproc_")) {
        return TokenKind::Literal;
    }
    if node.is_named && is_identifier_kind(node.kind) {
        return TokenKind::Identifier;
    }
    let first = text.chars().next();
    match first {
        Some(c) if c.is_alphabetic() || c == '_' => TokenKind::Keyword,
        Some(c) if c.is_ascii_punctuation() && !node.is_named => TokenKind::Symbol,
        Some(c) if c.is_ascii_punctuation() => TokenKind::Symbol,
        _ => TokenKind::Other,
    }
}

struct LineIndex {
    starts: Vec<usize>,
}

impl LineIndex {
    fn new(source: &str) -> Self {
        let mut starts = alloc::vec![0];
        starts.extend(source.bytes().enumerate().filter(|(_, b)| *b == b'\n').map(|(i, _)| i + 1));
        LineIndex { starts }
    }

    fn locate(&self, offset: usize) -> (u32, u32) {
        let line = match self.starts.binary_search(&offset) {
            Ok(l) => l,
            Err(l) => l - 1,
        };
        (line as u32, (offset - self.starts[line]) as u32)
    }
}

/// Leaf tokens of `node` in source order.
pub fn tokenize_node(tree: &SyntaxTree, node: &SyntaxNode) -> Vec<Token> {
    let index = LineIndex::new(&tree.source);
    let mut out = Vec::new();
    collect(tree, node, &index, &mut out);
    out
}

/// Leaf tokens of the whole tree.
pub fn tokenize(tree: &SyntaxTree) -> Vec<Token> {
    tokenize_node(tree, &tree.root)
}

fn collect(tree: &SyntaxTree, node: &SyntaxNode, index: &LineIndex, out: &mut Vec<Token>) {
    if node.span.is_empty() {
        return;
    }
    if node.is_leaf() || is_atomic(node.kind) || is_comment_kind(node.kind) {
        let text = tree.text(node);
        // Preprocessor directives keep their trailing newline out of the token text.
        let text = if node.kind.starts_with("preproc_") { text.trim_end() } else { text };
        let (line, column) = index.locate(node.span.start);
        out.push(Token {
            text: text.into(),
            kind: classify(node, text),
            span: node.span.clone(),
            line,
            column,
        });
        return;
    }
    for child in &node.children {
        collect(tree, child, index, out);
    }
}

/// Join tokens back into parseable text.
///
/// Whitespace-insensitive languages are joined with single spaces (line
/// comments and preprocessor directives are followed by a newline). Python
/// is re-laid-out from the original token positions: a synthetic
/// indent/dedent stack is rebuilt from first-token columns and each logical
/// line is emitted at `4 * depth` spaces, with bracketed continuation lines
/// folded into their logical line.
pub fn join_tokens(tokens: &[Token], language: LanguageId) -> String {
    match language {
        LanguageId::Python => join_python(tokens),
        _ => join_spaced(tokens),
    }
}

fn join_spaced(tokens: &[Token]) -> String {
    let mut out = String::new();
    for (i, tok) in tokens.iter().enumerate() {
        if i > 0 && !out.ends_with('\n') {
            out.push(' ');
        }
        out.push_str(&tok.text);
        if tok.text.starts_with("//") || tok.text.starts_with('#') {
            out.push('\n');
        }
    }
    out
}

fn join_python(tokens: &[Token]) -> String {
    let mut out = String::new();
    let mut indents: Vec<u32> = Vec::new();
    let mut depth = 0i32;
    let mut current_line: Option<u32> = None;
    for tok in tokens {
        let new_line = current_line.is_none_or(|l| tok.line != l) && depth == 0;
        if new_line {
            if current_line.is_some() {
                out.push('\n');
            }
            while indents.last().is_some_and(|&c| c > tok.column) {
                indents.pop();
            }
            if indents.last() != Some(&tok.column) {
                indents.push(tok.column);
            }
            for _ in 1..indents.len() {
                out.push_str("    ");
            }
        } else if current_line.is_some() {
            out.push(' ');
        }
        out.push_str(&tok.text);
        // Track the line the token ends on so multi-line strings don't split a line.
        current_line = Some(tok.line + tok.text.matches('\n').count() as u32);
        match tok.text.as_str() {
            "(" | "[" | "{" if tok.kind == TokenKind::Symbol => depth += 1,
            ")" | "]" | "}" if tok.kind == TokenKind::Symbol => depth -= 1,
            _ => {}
        }
    }
    out
}
