//! Removal of language-specific node kinds that carry no logic.

use alloc::vec::Vec;

use crate::lang::LanguageId;
use crate::syntax::{is_comment_kind, SyntaxNode, SyntaxTree};

/// Node kinds dropped with their whole subtree.
pub fn prune_list(language: LanguageId) -> &'static [&'static str] {
    match language {
        LanguageId::Java => &[
            "modifiers",
            "marker_annotation",
            "annotation",
            "type_arguments",
            "type_parameters",
            "throws",
        ],
        LanguageId::CSharp => &[
            "modifier",
            "parameter_modifier",
            "attribute_list",
            "type_argument_list",
            "type_parameter_list",
            "type_parameter_constraints_clause",
        ],
        LanguageId::Cpp => &[
            "storage_class_specifier",
            "type_qualifier",
            "virtual_specifier",
            "virtual",
            "explicit_function_specifier",
            "attribute_specifier",
            "attribute_declaration",
            "ms_declspec_modifier",
            "noexcept",
            "access_specifier",
            "template_argument_list",
            "template_parameter_list",
        ],
        LanguageId::Python => &["decorator", "async", "type_parameter"],
    }
}

/// Generic arguments that carry meaning: the target type of a C++ cast and
/// the element type of a Python `list[T]` array annotation.
fn keeps_type_args(node: &SyntaxNode, source: &str) -> bool {
    match node.kind {
        "template_function" => node
            .child_by_field("name")
            .is_some_and(|n| n.text(source).ends_with("_cast")),
        "generic_type" => node
            .named_children()
            .next()
            .is_some_and(|n| n.kind == "identifier" && n.text(source) == "list"),
        _ => false,
    }
}

/// Drop modifiers, annotations, qualifiers and generic arguments; keep
/// identifiers, literals, type names, control keywords and operators.
/// Child order is preserved.
pub fn prune(tree: &SyntaxTree) -> SyntaxTree {
    let list = prune_list(tree.language);
    let root = prune_node(&tree.root, list, &tree.source, tree.language);
    SyntaxTree::new(tree.language, tree.source.clone(), root)
}

fn prune_node(node: &SyntaxNode, list: &[&str], source: &str, lang: LanguageId) -> SyntaxNode {
    // `std::vector` and friends collapse to their last segment.
    if lang == LanguageId::Cpp && matches!(node.kind, "qualified_identifier" | "nested_namespace_specifier") {
        if let Some(name) = node.child_by_field("name") {
            let mut inner = prune_node(name, list, source, lang);
            inner.field = node.field;
            return inner;
        }
    }
    if lang == LanguageId::Python && node.kind == "decorated_definition" {
        if let Some(def) = node.child_by_field("definition") {
            let mut inner = prune_node(def, list, source, lang);
            inner.field = node.field;
            return inner;
        }
    }
    let keep_args = keeps_type_args(node, source);
    let children: Vec<SyntaxNode> = node
        .children
        .iter()
        .filter(|c| !is_comment_kind(c.kind))
        .filter(|c| !list.contains(&c.kind) || (keep_args && matches!(c.kind, "template_argument_list" | "type_parameter")))
        .map(|c| prune_node(c, list, source, lang))
        .collect();
    SyntaxNode {
        kind: node.kind,
        field: node.field,
        span: node.span.clone(),
        is_named: node.is_named,
        is_error: node.is_error,
        children,
    }
}
