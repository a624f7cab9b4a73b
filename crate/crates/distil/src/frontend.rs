//! Tree-sitter grammar adapters and function-level preprocessing.

use std::ops::Range;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use distil_core::strip::{apply_edits, strip_edits};
use distil_core::syntax::is_function_kind;
use distil_core::token::{tokenize_node, Token};
use distil_core::{LanguageId, SyntaxNode, SyntaxTree};
use tree_sitter::{Node, Parser};

#[derive(Debug, thiserror::Error)]
pub enum FrontendError {
    #[error(transparent)]
    UnsupportedLanguage(#[from] distil_core::lang::UnsupportedLanguage),
    #[error("no {0} tree could be produced")]
    ParseFailure(LanguageId),
    #[error("stripping `{name}` produced unparseable text")]
    ReparseFailure { name: String },
}

fn grammar(language: LanguageId) -> tree_sitter::Language {
    match language {
        LanguageId::Cpp => tree_sitter_cpp::LANGUAGE.into(),
        LanguageId::Java => tree_sitter_java::LANGUAGE.into(),
        LanguageId::CSharp => tree_sitter_c_sharp::LANGUAGE.into(),
        LanguageId::Python => tree_sitter_python::LANGUAGE.into(),
    }
}

/// Node-kind and field names of one grammar with `'static` lifetime.
struct Names {
    kinds: Vec<&'static str>,
    fields: Vec<Option<&'static str>>,
}

fn leak(s: &str) -> &'static str {
    Box::leak(s.to_owned().into_boxed_str())
}

fn names(language: LanguageId) -> &'static Names {
    static TABLES: [OnceLock<Names>; 4] = [const { OnceLock::new() }; 4];
    TABLES[language.registry_column()].get_or_init(|| {
        let g = grammar(language);
        let kinds = (0..g.node_kind_count())
            .map(|id| leak(g.node_kind_for_id(id as u16).unwrap_or("")))
            .collect();
        let fields = (0..=g.field_count())
            .map(|id| g.field_name_for_id(id as u16).map(leak))
            .collect();
        Names { kinds, fields }
    })
}

fn convert(node: Node<'_>, field: Option<&'static str>, names: &Names) -> SyntaxNode {
    let kind = names
        .kinds
        .get(node.kind_id() as usize)
        .copied()
        .unwrap_or("ERROR");
    let mut out = SyntaxNode::leaf(kind, node.byte_range(), node.is_named());
    out.field = field;
    out.is_error = node.is_error() || node.is_missing();
    let mut cursor = node.walk();
    if cursor.goto_first_child() {
        loop {
            let field = cursor
                .field_id()
                .and_then(|id| names.fields.get(id.get() as usize).copied().flatten());
            out.children.push(convert(cursor.node(), field, names));
            if !cursor.goto_next_sibling() {
                break;
            }
        }
    }
    out
}

/// Parse `source`; grammar error nodes set the tree's error flag.
pub fn parse(source: &str, language: LanguageId) -> Result<SyntaxTree, FrontendError> {
    if source.trim().is_empty() {
        return Err(FrontendError::ParseFailure(language));
    }
    let mut parser = Parser::new();
    parser
        .set_language(&grammar(language))
        .map_err(|_| FrontendError::ParseFailure(language))?;
    let tree = parser
        .parse(source, None)
        .ok_or(FrontendError::ParseFailure(language))?;
    let root = convert(tree.root_node(), None, names(language));
    Ok(SyntaxTree::new(language, source.to_owned(), root))
}

/// Where a function came from.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Origin {
    pub path: Option<PathBuf>,
    pub span: Range<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceFunction {
    pub language: LanguageId,
    pub name: String,
    /// The function's own source text, dedented to column 0.
    pub body: String,
    pub origin: Origin,
    pub tokens: Vec<Token>,
}

impl SourceFunction {
    /// Parse a single function given as text.
    pub fn from_text(body: &str, language: LanguageId) -> Result<SourceFunction, FrontendError> {
        let tree = parse(body, language)?;
        extract_functions(&tree)
            .into_iter()
            .next()
            .ok_or(FrontendError::ParseFailure(language))
    }

    pub fn tree(&self) -> Result<SyntaxTree, FrontendError> {
        parse(&self.body, self.language)
    }
}

fn function_name(tree: &SyntaxTree, n: &SyntaxNode) -> String {
    let mut cur = n;
    while let Some(next) = cur
        .child_by_field("name")
        .or_else(|| cur.child_by_field("declarator"))
    {
        cur = next;
    }
    if cur.kind == "operator_name" || cur.children.is_empty() {
        return tree.text(cur).to_owned();
    }
    cur.preorder()
        .find(|c| c.kind.ends_with("identifier"))
        .map(|c| tree.text(c).to_owned())
        .unwrap_or_default()
}

/// Remove `column` leading spaces from every line after the first.
fn dedent(text: &str, column: usize) -> String {
    let mut out = String::with_capacity(text.len());
    for (i, line) in text.split('\n').enumerate() {
        if i > 0 {
            out.push('\n');
            let indent = line.len() - line.trim_start_matches([' ', '\t']).len();
            out.push_str(&line[indent.min(column)..]);
        } else {
            out.push_str(line);
        }
    }
    out
}

fn collect<'a>(tree: &SyntaxTree, n: &'a SyntaxNode, out: &mut Vec<&'a SyntaxNode>) {
    if is_function_kind(tree.language, n.kind) {
        out.push(n);
        return;
    }
    for c in &n.children {
        collect(tree, c, out);
    }
}

/// One function per top-level or member definition. Nested functions stay
/// inside their enclosing function; definitions containing syntax errors,
/// or that do not reparse cleanly on their own, are dropped.
pub fn extract_functions(tree: &SyntaxTree) -> Vec<SourceFunction> {
    let mut nodes = Vec::new();
    collect(tree, &tree.root, &mut nodes);
    nodes
        .into_iter()
        .filter(|n| !n.contains_error())
        .filter_map(|n| {
            let line_start = tree.source[..n.span.start].rfind('\n').map_or(0, |i| i + 1);
            let column = n.span.start - line_start;
            let body = dedent(tree.text(n), column);
            let own = parse(&body, tree.language).ok()?;
            if own.has_error {
                return None;
            }
            let node = own.function_node()?;
            let tokens = tokenize_node(&own, node);
            Some(SourceFunction {
                language: tree.language,
                name: function_name(tree, n),
                body,
                origin: Origin {
                    path: None,
                    span: n.span.clone(),
                },
                tokens,
            })
        })
        .collect()
}

/// Parse a file and extract its functions, recording the path as origin.
pub fn extract_file(
    path: &Path,
    source: &str,
    language: LanguageId,
) -> Result<(SyntaxTree, Vec<SourceFunction>), FrontendError> {
    let tree = parse(source, language)?;
    let mut fns = extract_functions(&tree);
    for f in &mut fns {
        f.origin.path = Some(path.to_owned());
    }
    Ok((tree, fns))
}

/// Remove comments, docstrings and dead code, repeating until nothing
/// changes.
pub fn strip_noncode(f: &SourceFunction) -> Result<SourceFunction, FrontendError> {
    let mut body = f.body.clone();
    let mut tree = parse(&body, f.language)?;
    loop {
        let edits = strip_edits(&tree);
        if edits.is_empty() {
            break;
        }
        body = apply_edits(&body, &edits);
        tree = parse(&body, f.language)?;
        if tree.has_error {
            return Err(FrontendError::ReparseFailure {
                name: f.name.clone(),
            });
        }
    }
    let node = tree
        .function_node()
        .ok_or_else(|| FrontendError::ReparseFailure {
            name: f.name.clone(),
        })?;
    let tokens = tokenize_node(&tree, node);
    Ok(SourceFunction {
        body,
        tokens,
        ..f.clone()
    })
}

/// Leaf tokens of the function in source order.
pub fn tokenize(f: &SourceFunction) -> &[Token] {
    &f.tokens
}

/// Language from a path's extension.
pub fn language_of(path: &Path) -> Option<LanguageId> {
    path.extension()
        .and_then(|e| e.to_str())
        .and_then(LanguageId::from_extension)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dedent_keeps_first_line() {
        assert_eq!(
            dedent("def f():\n        return 1", 4),
            "def f():\n    return 1"
        );
    }

    #[test]
    fn cpp_name_through_declarators() {
        let tree = parse("int *f(int a) { return 0; }", LanguageId::Cpp).unwrap();
        assert_eq!(extract_functions(&tree)[0].name, "f");
    }

    #[test]
    fn empty_source_fails() {
        assert!(matches!(
            parse("  ", LanguageId::Java),
            Err(FrontendError::ParseFailure(_))
        ));
    }
}
