//! Owned, span-annotated syntax trees.
//!
//! Trees are produced by a grammar adapter (the `distil` crate binds
//! tree-sitter) and consumed by every transform in this crate. Node kinds and
//! field names are the grammar's own `'static` strings.

use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Range;

use crate::lang::LanguageId;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxNode {
    pub kind: &'static str,
    /// Grammar field under which this node hangs off its parent.
    pub field: Option<&'static str>,
    pub span: Range<usize>,
    /// Grammar-named nodes vs anonymous tokens such as `(` or `return`.
    pub is_named: bool,
    /// Error or missing node inserted by the parser's recovery.
    pub is_error: bool,
    pub children: Vec<SyntaxNode>,
}

impl SyntaxNode {
    pub fn leaf(kind: &'static str, span: Range<usize>, is_named: bool) -> Self {
        SyntaxNode {
            kind,
            field: None,
            span,
            is_named,
            is_error: false,
            children: Vec::new(),
        }
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn text<'s>(&self, source: &'s str) -> &'s str {
        &source[self.span.clone()]
    }

    pub fn child_by_field(&self, field: &str) -> Option<&SyntaxNode> {
        self.children.iter().find(|c| c.field == Some(field))
    }

    pub fn children_by_field<'a>(&'a self, field: &'a str) -> impl Iterator<Item = &'a SyntaxNode> + 'a {
        self.children.iter().filter(move |c| c.field == Some(field))
    }

    pub fn named_children(&self) -> impl Iterator<Item = &SyntaxNode> {
        self.children.iter().filter(|c| c.is_named)
    }

    pub fn first_named_child(&self, kind: &str) -> Option<&SyntaxNode> {
        self.children.iter().find(|c| c.is_named && c.kind == kind)
    }

    pub fn has_anonymous(&self, text: &str, source: &str) -> bool {
        self.children.iter().any(|c| !c.is_named && c.text(source) == text)
    }

    /// Pre-order traversal including `self`.
    pub fn preorder(&self) -> Preorder<'_> {
        Preorder { stack: alloc::vec![self] }
    }

    pub fn contains_error(&self) -> bool {
        self.preorder().any(|n| n.is_error)
    }

    pub fn find_first(&self, mut pred: impl FnMut(&SyntaxNode) -> bool) -> Option<&SyntaxNode> {
        self.preorder().find(|n| pred(n))
    }
}

pub struct Preorder<'a> {
    stack: Vec<&'a SyntaxNode>,
}

impl<'a> Iterator for Preorder<'a> {
    type Item = &'a SyntaxNode;

    fn next(&mut self) -> Option<Self::Item> {
        let node = self.stack.pop()?;
        self.stack.extend(node.children.iter().rev());
        Some(node)
    }
}

/// A parsed source text together with its root node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxTree {
    pub language: LanguageId,
    pub source: String,
    pub root: SyntaxNode,
    pub has_error: bool,
}

impl SyntaxTree {
    pub fn new(language: LanguageId, source: String, root: SyntaxNode) -> Self {
        let has_error = root.contains_error();
        SyntaxTree {
            language,
            source,
            root,
            has_error,
        }
    }

    pub fn text(&self, node: &SyntaxNode) -> &str {
        node.text(&self.source)
    }

    /// Named node kinds in pre-order; the basis for isomorphism checks.
    pub fn named_kinds(&self) -> Vec<&'static str> {
        self.root
            .preorder()
            .filter(|n| n.is_named)
            .map(|n| n.kind)
            .collect()
    }

    /// The first function-like definition in the tree, if any.
    pub fn function_node(&self) -> Option<&SyntaxNode> {
        self.root.find_first(|n| is_function_kind(self.language, n.kind))
    }
}

/// Node kinds that introduce a function or method definition.
pub fn is_function_kind(language: LanguageId, kind: &str) -> bool {
    match language {
        LanguageId::Java => matches!(kind, "method_declaration" | "constructor_declaration"),
        LanguageId::CSharp => matches!(
            kind,
            "method_declaration" | "constructor_declaration" | "local_function_statement"
        ),
        LanguageId::Cpp | LanguageId::Python => kind == "function_definition",
    }
}

/// Node kinds that are comments in the given language.
pub fn is_comment_kind(kind: &str) -> bool {
    matches!(kind, "comment" | "line_comment" | "block_comment")
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn tiny() -> SyntaxTree {
        // "a+b"
        let mut root = SyntaxNode::leaf("binary", 0..3, true);
        root.children = vec![
            SyntaxNode::leaf("identifier", 0..1, true),
            SyntaxNode::leaf("+", 1..2, false),
            SyntaxNode::leaf("identifier", 2..3, true),
        ];
        SyntaxTree::new(LanguageId::Java, "a+b".into(), root)
    }

    #[test]
    fn preorder_visits_parent_first() {
        let tree = tiny();
        let kinds: Vec<_> = tree.root.preorder().map(|n| n.kind).collect();
        assert_eq!(kinds, ["binary", "identifier", "+", "identifier"]);
        assert_eq!(tree.named_kinds(), ["binary", "identifier", "identifier"]);
        assert!(!tree.has_error);
    }

    #[test]
    fn error_flag_propagates() {
        let mut tree = tiny();
        tree.root.children[1].is_error = true;
        let tree = SyntaxTree::new(tree.language, tree.source, tree.root);
        assert!(tree.has_error);
    }
}
