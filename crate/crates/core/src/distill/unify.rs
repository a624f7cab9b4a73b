//! Morpheme unification and type resolution on the lowered IR.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::DistillReport;
use crate::ir::{walk_expr, walk_function, walk_stmt, Expr, Function, Name, Stmt, TypeRef, VisitMut};
use crate::lang::LanguageId;
use crate::registry::MorphemeRegistry;
use crate::segment::segment;
use crate::vocab;

struct Unifier<'r> {
    reg: &'r MorphemeRegistry,
    lang: LanguageId,
    report: DistillReport,
}

pub(super) fn unify_function(f: &mut Function, lang: LanguageId, reg: &MorphemeRegistry) -> DistillReport {
    let mut u = Unifier {
        reg,
        lang,
        report: DistillReport::default(),
    };
    u.visit_function(f);
    u.report
}

/// Subwords of every raw name in an expression, type names included.
fn expr_words(e: &Expr, out: &mut Vec<String>) {
    match e {
        Expr::Name(n) => out.extend(n.words()),
        Expr::Member { object, name } => {
            expr_words(object, out);
            out.extend(name.words());
        }
        Expr::KwArg { name, value } => {
            out.extend(name.words());
            expr_words(value, out);
        }
        Expr::TypeCall { ty, args } => {
            type_words(ty, out);
            args.iter().for_each(|a| expr_words(a, out));
        }
        Expr::NewArray { ty, dims } => {
            type_words(ty, out);
            dims.iter().for_each(|a| expr_words(a, out));
        }
        other => {
            let mut c = other.clone();
            c.for_each_child_mut(&mut |child| expr_words(child, out));
        }
    }
}

fn type_words(t: &TypeRef, out: &mut Vec<String>) {
    match t {
        TypeRef::User(n) => out.extend(n.words()),
        TypeRef::Array(inner) => type_words(inner, out),
        TypeRef::Prim(_) => {}
    }
}

/// `before` minus `after`, as multisets.
fn multiset_minus(mut before: Vec<String>, after: &[String]) -> Vec<String> {
    for w in after {
        if let Some(i) = before.iter().position(|b| b == w) {
            before.swap_remove(i);
        }
    }
    before.sort();
    before
}

/// Surface type names outside the tables that mean the same unified type.
fn type_alias(lang: LanguageId, key: &str) -> Option<&'static str> {
    use LanguageId::*;
    Some(match (lang, key) {
        (_, "var" | "auto") => "var",
        (Java, "Integer" | "Short" | "Byte") | (CSharp, "Int32" | "Int16") => "int",
        (Java, "Long") | (CSharp, "Int64") => "long",
        (Java, "Double") | (CSharp, "Double") => "double",
        (Java, "Float") | (CSharp, "Single") => "float",
        (Java, "Boolean") | (CSharp, "Boolean") => "bool",
        (Java, "Character") | (CSharp, "Char") => "char",
        (CSharp, "String") | (Cpp, "string") => "string",
        (Java, "List<>" | "ArrayList<>") => "vector<>",
        (Java, "Map<>") | (Cpp, "unordered_map<>") => "map<>",
        (Java, "Set<>") | (Cpp, "unordered_set<>") => "set<>",
        (Java, "ArrayDeque<>" | "ArrayDeque") => "deque<>",
        (Java, "LinkedList<>" | "LinkedList") => "queue<>",
        (Cpp, "int32_t" | "size_t") => "int",
        (Cpp, "int64_t") => "long",
        (Python, "list" | "List<>" | "list<>") => "vector<>",
        (Python, "dict" | "Dict<>" | "dict<>") => "map<>",
        (Python, "set" | "Set<>" | "set<>") => "set<>",
        (Python, "deque" | "deque<>") => "deque<>",
        (Python, "Queue" | "Queue<>") => "queue<>",
        _ => return None,
    })
}

/// Closest scalar word for a keyword type outside the vocabulary
/// (`long long`, `unsigned int`, `decimal`, ...).
fn scalar_word(p: &str) -> &'static str {
    let has = |w: &str| p.split_whitespace().any(|x| x == w);
    if has("bool") {
        "bool"
    } else if p.contains("char") {
        "char"
    } else if has("double") || p == "decimal" {
        "double"
    } else if has("float") {
        "float"
    } else if has("long") || p == "ulong" || p == "nint" || p == "nuint" {
        "long"
    } else if has("short") || p == "ushort" {
        "short"
    } else if p == "sbyte" {
        "byte"
    } else if has("int") || has("unsigned") || has("signed") || p == "uint" {
        "int"
    } else if p == "void" {
        "void"
    } else {
        "var"
    }
}

impl Unifier<'_> {
    fn consume(&mut self, words: Vec<String>) {
        self.report.consumed.extend(words);
    }

    fn resolve_type(&mut self, t: &mut TypeRef) {
        match t {
            TypeRef::Array(inner) => self.resolve_type(inner),
            TypeRef::Prim(p) => {
                let word = match self.reg.unify_type(self.lang, p) {
                    Some(u) => u.to_string(),
                    None if vocab::is_type_word(p) => return,
                    None => scalar_word(p).to_string(),
                };
                *p = word;
            }
            TypeRef::User(Name::Raw(key)) => {
                let generic = alloc::format!("{key}<>");
                let unified = self
                    .reg
                    .unify_type(self.lang, key)
                    .or_else(|| type_alias(self.lang, key))
                    .or_else(|| (!key.ends_with("<>")).then(|| self.reg.unify_type(self.lang, &generic)).flatten());
                match unified {
                    Some(u) => {
                        let u = u.to_string();
                        let words = segment(key);
                        self.consume(words);
                        *t = TypeRef::Prim(u);
                    }
                    None => {
                        if let Some(base) = key.strip_suffix("<>") {
                            *key = base.to_string();
                        }
                    }
                }
            }
            TypeRef::User(Name::Bag(_)) => {}
        }
    }

    /// Python spells casts, empty containers and constructors as calls.
    /// A CapWords callee is taken to be a class.
    fn python_type_call(&mut self, e: &Expr) -> Option<Expr> {
        if self.lang != LanguageId::Python {
            return None;
        }
        let Expr::Call { callee, args } = e else { return None };
        let Expr::Name(Name::Raw(n)) = &**callee else { return None };
        let ty = match self.reg.unify_type(self.lang, n).or_else(|| type_alias(self.lang, n)) {
            Some(u) => TypeRef::Prim(u.to_string()),
            None if is_class_name(n) => TypeRef::User(Name::Raw(n.clone())),
            None => return None,
        };
        Some(Expr::TypeCall { ty, args: args.clone() })
    }

    /// C# spells library methods in PascalCase; a few table cells do not.
    fn csharp_lowercase_method(&self, e: &Expr) -> Option<Expr> {
        if self.lang != LanguageId::CSharp {
            return None;
        }
        let lowered = e.with_method_case(false)?;
        self.reg.unify_expr(self.lang, &lowered).filter(|u| *u != lowered)
    }

    fn rewrite(&mut self, e: &mut Expr) {
        let was_call = matches!(e, Expr::Call { .. });
        let rewritten = if let Some(c) = self.reg.container_for_init(self.lang, e) {
            Some(Expr::TypeCall {
                ty: TypeRef::Prim(c.to_string()),
                args: Vec::new(),
            })
        } else if let Some(u) = self.reg.unify_expr(self.lang, e).filter(|u| u != e) {
            Some(u)
        } else if let Some(u) = self.csharp_lowercase_method(e) {
            Some(u)
        } else {
            self.python_type_call(e)
        };
        if let Some(new) = rewritten {
            let mut before = Vec::new();
            expr_words(e, &mut before);
            let mut after = Vec::new();
            expr_words(&new, &mut after);
            let gone = multiset_minus(before, &after);
            self.consume(gone);
            let user_ctor = matches!(new, Expr::TypeCall { ty: TypeRef::User(_), .. });
            if (was_call && !user_ctor) || matches!(new, Expr::Builtin { .. }) {
                self.report.registry_hits += 1;
            }
            *e = new;
        }
        if let Expr::Call { callee, .. } = e {
            self.report.fallback_calls += 1;
            if let Some(path) = callee.name_path() {
                let words: Vec<String> = path.iter().flat_map(|n| n.words()).collect();
                if path.len() > 1 {
                    **callee = Expr::Name(Name::Bag(words));
                }
            }
        }
        if matches!(e, Expr::Opaque { .. }) {
            self.report.opaque_nodes += 1;
        }
    }
}

fn is_class_name(n: &str) -> bool {
    n.starts_with(|c: char| c.is_ascii_uppercase()) && (n.len() == 1 || n.chars().any(|c| c.is_ascii_lowercase()))
}

fn is_argless_ctor(e: &Expr) -> bool {
    matches!(e, Expr::TypeCall { args, ty } if args.is_empty() && !matches!(ty, TypeRef::Prim(p) if !p.ends_with("<>")))
}

impl VisitMut for Unifier<'_> {
    fn visit_expr(&mut self, e: &mut Expr) {
        self.rewrite(e);
        walk_expr(self, e);
    }

    fn visit_type(&mut self, t: &mut TypeRef) {
        self.resolve_type(t);
    }

    fn visit_stmt(&mut self, s: &mut Stmt) {
        walk_stmt(self, s);
        match s {
            Stmt::Decl { ty, init, .. } => {
                let Some(value) = init else { return };
                let Expr::TypeCall { ty: made, .. } = &*value else { return };
                if !is_argless_ctor(value) {
                    return;
                }
                if ty.is_prim("var") && made.is_container() {
                    *ty = made.clone();
                    *init = None;
                } else if ty.is_container() || made == ty {
                    *init = None;
                }
            }
            Stmt::Opaque { .. } => self.report.opaque_nodes += 1,
            _ => {}
        }
    }

    fn visit_function(&mut self, f: &mut Function) {
        walk_function(self, f);
    }
}
