//! Morpheme unification tables.
//!
//! The registry is line-oriented text, one rule per line, with tab-separated
//! columns `category unified cpp java csharp python`. A `-` cell marks a
//! morpheme the language lacks, `#` starts a comment line, and the letters
//! `a`, `b`, `c` are argument slots. Cells are parsed into structural
//! patterns, so `Math.pow(a,b)` matches a call whose callee path is
//! `Math.pow` regardless of spacing or nesting.

pub mod pattern;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::ir::{Expr, OpaqueItem};
use crate::lang::LanguageId;
pub use pattern::CellPattern;
use pattern::{parse_expr_cell, parse_type_cell, slots};

/// The rules shipped with the crate.
pub const DEFAULT_REGISTRY: &str = include_str!("../../data/morphemes.tsv");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Category {
    Operator,
    DataType,
    Builtin,
    Control,
}

impl Category {
    pub fn as_str(self) -> &'static str {
        match self {
            Category::Operator => "operator",
            Category::DataType => "data_type",
            Category::Builtin => "builtin",
            Category::Control => "control",
        }
    }

    pub fn parse(s: &str) -> Option<Category> {
        Some(match s {
            "operator" => Category::Operator,
            "data_type" => Category::DataType,
            "builtin" => Category::Builtin,
            "control" => Category::Control,
            _ => return None,
        })
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RegistryError {
    #[error("line {line}: duplicate rule for ({language}, {category}, {surface})")]
    DuplicateRule {
        line: usize,
        language: LanguageId,
        category: Category,
        surface: String,
    },
    #[error("line {line}: slots of `{surface}` do not match unified form `{unified}`")]
    SlotMismatch {
        line: usize,
        surface: String,
        unified: String,
    },
    #[error("line {line}: {reason}")]
    MalformedRow { line: usize, reason: String },
}

/// The target has no counterpart for a unified morpheme.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("`{morpheme}` has no {target} form")]
pub struct Unrenderable {
    pub morpheme: String,
    pub target: LanguageId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub text: String,
    pub pattern: CellPattern,
}

impl Cell {
    /// Declared type of a `T a` cell as written, without generic marker:
    /// `std::map<> a` gives `std::map`.
    pub fn type_display(&self) -> Option<&str> {
        match self.pattern {
            CellPattern::Type(_) => {
                let t = self.text.trim();
                let t = t[..t.rfind(char::is_whitespace)?].trim_end();
                Some(t.strip_suffix("<>").unwrap_or(t))
            }
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub line: usize,
    pub category: Category,
    pub unified_text: String,
    pub unified: CellPattern,
    /// Indexed by [`LanguageId::registry_column`].
    pub cells: [Option<Cell>; 4],
}

impl Row {
    pub fn cell(&self, lang: LanguageId) -> Option<&Cell> {
        self.cells[lang.registry_column()].as_ref()
    }

    /// Unified type word of a data-type row.
    pub fn unified_type(&self) -> Option<&str> {
        match &self.unified {
            CellPattern::Type(t) => Some(t),
            _ => None,
        }
    }
}

/// One (language, category, surface) → unified correspondence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MorphemeRule<'a> {
    pub language: LanguageId,
    pub category: Category,
    pub surface: &'a str,
    pub unified: &'a str,
    pub arity: usize,
}

#[derive(Debug, Clone)]
pub struct MorphemeRegistry {
    rows: Vec<Row>,
    forward: BTreeMap<(LanguageId, Category, String), usize>,
    reverse: BTreeMap<String, usize>,
}

fn shape(p: &CellPattern) -> String {
    format!("{p:?}")
}

impl MorphemeRegistry {
    pub fn parse(text: &str) -> Result<Self, RegistryError> {
        let mut reg = MorphemeRegistry {
            rows: Vec::new(),
            forward: BTreeMap::new(),
            reverse: BTreeMap::new(),
        };
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            if raw.trim().is_empty() || raw.trim_start().starts_with('#') {
                continue;
            }
            let row = parse_row(line, raw)?;
            let idx = reg.rows.len();
            for lang in LanguageId::ALL {
                let Some(cell) = row.cell(lang) else { continue };
                let key = (lang, row.category, shape(&cell.pattern));
                if reg.forward.insert(key, idx).is_some() {
                    return Err(RegistryError::DuplicateRule {
                        line,
                        language: lang,
                        category: row.category,
                        surface: cell.text.clone(),
                    });
                }
            }
            if reg.reverse.insert(shape(&row.unified), idx).is_some() {
                return Err(RegistryError::DuplicateRule {
                    line,
                    language: LanguageId::Cpp,
                    category: row.category,
                    surface: row.unified_text.clone(),
                });
            }
            reg.rows.push(row);
        }
        Ok(reg)
    }

    /// The rules shipped with the crate.
    pub fn builtin() -> Self {
        Self::parse(DEFAULT_REGISTRY).expect("shipped registry is valid")
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    /// Number of table rows (unified forms).
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Every present (language, surface) cell as a rule.
    pub fn rules(&self) -> impl Iterator<Item = MorphemeRule<'_>> {
        self.rows.iter().flat_map(|row| {
            LanguageId::ALL.into_iter().filter_map(move |lang| {
                row.cell(lang).map(|cell| MorphemeRule {
                    language: lang,
                    category: row.category,
                    surface: &cell.text,
                    unified: &row.unified_text,
                    arity: slots(&row.unified).len(),
                })
            })
        })
    }

    /// Textual forward lookup: `surface` is a cell-syntax pattern in
    /// `language`, `args` bind its slots to text.
    pub fn lookup(
        &self,
        language: LanguageId,
        category: Category,
        surface: &str,
        args: &[(char, &str)],
    ) -> Option<String> {
        let pattern = parse_cell(category, surface, Some(language)).ok()?;
        let idx = *self.forward.get(&(language, category, shape(&pattern)))?;
        Some(instantiate_text(&self.rows[idx].unified_text, args))
    }

    /// Textual reverse lookup: `unified` is a unified-form pattern.
    pub fn reverse_lookup(&self, unified: &str, target: LanguageId, args: &[(char, &str)]) -> Option<String> {
        let row = self.rows.iter().find(|r| {
            parse_cell(r.category, unified, None)
                .map(|p| p == r.unified)
                .unwrap_or(false)
        })?;
        Some(instantiate_text(&row.cell(target)?.text, args))
    }

    /// Structural forward match of one expression node against the
    /// operator and builtin rules of `language`, in file order.
    pub fn unify_expr(&self, language: LanguageId, e: &Expr) -> Option<Expr> {
        for row in &self.rows {
            let (Some(cell), CellPattern::Expr(unified)) = (row.cell(language), &row.unified) else {
                continue;
            };
            let CellPattern::Expr(pat) = &cell.pattern else { continue };
            let mut binds = Binds::default();
            if match_expr(pat, e, &mut binds) {
                // Identity rows (`a+b`) must not shadow a longer pattern.
                let u = instantiate(unified, &binds);
                if u != *e {
                    return Some(u);
                }
            }
        }
        None
    }

    /// Unified type word for a surface type key (`HashMap<>`, `string`, ...).
    pub fn unify_type(&self, language: LanguageId, key: &str) -> Option<&str> {
        self.rows.iter().find_map(|row| match &row.cell(language)?.pattern {
            CellPattern::Type(k) if k == key => row.unified_type(),
            _ => None,
        })
    }

    /// Unified container type created by an initializer expression such as
    /// Python's `[]` or `set()`.
    pub fn container_for_init(&self, language: LanguageId, e: &Expr) -> Option<&str> {
        self.rows.iter().find_map(|row| match &row.cell(language)?.pattern {
            CellPattern::Init(init) if init == e => row.unified_type(),
            _ => None,
        })
    }

    /// Structural reverse match of a unified expression node, instantiating
    /// the target's surface pattern. `Ok(None)` when no rule applies.
    pub fn surface_expr(&self, target: LanguageId, e: &Expr) -> Result<Option<Expr>, Unrenderable> {
        for row in &self.rows {
            let CellPattern::Expr(unified) = &row.unified else { continue };
            let mut binds = Binds::default();
            if !match_expr(unified, e, &mut binds) {
                continue;
            }
            return match row.cell(target).map(|c| &c.pattern) {
                Some(CellPattern::Expr(surface)) => Ok(Some(instantiate(surface, &binds))),
                _ => Err(Unrenderable {
                    morpheme: row.unified_text.clone(),
                    target,
                }),
            };
        }
        Ok(None)
    }

    /// Target cell for a unified type word. `Ok(None)` when the type is not
    /// in the tables.
    pub fn surface_type(&self, target: LanguageId, unified: &str) -> Result<Option<&Cell>, Unrenderable> {
        let Some(row) = self.rows.iter().find(|r| r.unified_type() == Some(unified)) else {
            return Ok(None);
        };
        match row.cell(target) {
            Some(c) => Ok(Some(c)),
            None => Err(Unrenderable {
                morpheme: row.unified_text.clone(),
                target,
            }),
        }
    }
}

impl Default for MorphemeRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

fn parse_cell(category: Category, text: &str, lang: Option<LanguageId>) -> Result<CellPattern, String> {
    match category {
        Category::DataType => parse_type_cell(text, lang),
        _ => parse_expr_cell(text, lang).map(CellPattern::Expr),
    }
}

fn parse_row(line: usize, raw: &str) -> Result<Row, RegistryError> {
    let malformed = |reason: String| RegistryError::MalformedRow { line, reason };
    let cols: Vec<&str> = raw.split('\t').map(str::trim).collect();
    if cols.len() != 6 {
        return Err(malformed(format!("expected 6 tab-separated columns, found {}", cols.len())));
    }
    let category = Category::parse(cols[0]).ok_or_else(|| malformed(format!("unknown category `{}`", cols[0])))?;
    let unified = parse_cell(category, cols[1], None).map_err(|e| malformed(format!("`{}`: {e}", cols[1])))?;
    let want = slots(&unified);
    let mut cells: [Option<Cell>; 4] = Default::default();
    for lang in LanguageId::ALL {
        let text = cols[2 + lang.registry_column()];
        if text == "-" {
            continue;
        }
        if text.is_empty() {
            return Err(malformed(format!("empty {lang} cell")));
        }
        let pattern = parse_cell(category, text, Some(lang)).map_err(|e| malformed(format!("`{text}`: {e}")))?;
        if slots(&pattern) != want {
            return Err(RegistryError::SlotMismatch {
                line,
                surface: text.to_string(),
                unified: cols[1].to_string(),
            });
        }
        cells[lang.registry_column()] = Some(Cell {
            text: text.to_string(),
            pattern,
        });
    }
    Ok(Row {
        line,
        category,
        unified_text: cols[1].to_string(),
        unified,
        cells,
    })
}

#[derive(Default)]
struct Binds([Option<Expr>; 3]);

fn match_expr(pat: &Expr, e: &Expr, binds: &mut Binds) -> bool {
    use Expr::*;
    match (pat, e) {
        (Slot(c), _) => {
            if matches!(e, KwArg { .. }) {
                return false;
            }
            let slot = &mut binds.0[(*c as u8 - b'a') as usize];
            match slot {
                Some(bound) => bound == e,
                None => {
                    *slot = Some(e.clone());
                    true
                }
            }
        }
        (Name(a), Name(b)) => a == b,
        (Lit(a), Lit(b)) => a == b,
        (Binary { op: o1, lhs: l1, rhs: r1 }, Binary { op: o2, lhs: l2, rhs: r2 }) => {
            o1 == o2 && match_expr(l1, l2, binds) && match_expr(r1, r2, binds)
        }
        (Unary { op: o1, operand: a }, Unary { op: o2, operand: b }) => o1 == o2 && match_expr(a, b, binds),
        (Call { callee: c1, args: a1 }, Call { callee: c2, args: a2 }) => {
            match_expr(c1, c2, binds) && match_all(a1, a2, binds)
        }
        (Builtin { name: n1, args: a1 }, Builtin { name: n2, args: a2 }) => n1 == n2 && match_all(a1, a2, binds),
        (TypeCall { ty: t1, args: a1 }, TypeCall { ty: t2, args: a2 }) => t1 == t2 && match_all(a1, a2, binds),
        (Member { object: o1, name: n1 }, Member { object: o2, name: n2 }) => n1 == n2 && match_expr(o1, o2, binds),
        (Index { object: o1, index: i1 }, Index { object: o2, index: i2 }) => {
            match_expr(o1, o2, binds) && match_expr(i1, i2, binds)
        }
        (List(a), List(b)) => match_all(a, b, binds),
        (Dict(a), Dict(b)) => {
            a.len() == b.len()
                && a.iter()
                    .zip(b)
                    .all(|((k1, v1), (k2, v2))| match_expr(k1, k2, binds) && match_expr(v1, v2, binds))
        }
        (KwArg { name: n1, value: v1 }, KwArg { name: n2, value: v2 }) => n1 == n2 && match_expr(v1, v2, binds),
        _ => false,
    }
}

fn match_all(pats: &[Expr], es: &[Expr], binds: &mut Binds) -> bool {
    pats.len() == es.len() && pats.iter().zip(es).all(|(p, e)| match_expr(p, e, binds))
}

fn instantiate(pat: &Expr, binds: &Binds) -> Expr {
    if let Expr::Slot(c) = pat {
        return binds.0[(*c as u8 - b'a') as usize].clone().unwrap_or_else(|| pat.clone());
    }
    let mut out = pat.clone();
    out.for_each_child_mut(&mut |child| *child = instantiate(child, binds));
    if let Expr::Opaque { items, .. } = &mut out {
        for item in items {
            if let OpaqueItem::Expr(e) = item {
                *e = instantiate(e, binds);
            }
        }
    }
    out
}

/// Replace standalone slot letters in cell text by argument text.
/// Arguments that are not plain names or numbers are parenthesized.
pub fn instantiate_text(text: &str, args: &[(char, &str)]) -> String {
    let mut out = String::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut quote: Option<char> = None;
    while i < chars.len() {
        let c = chars[i];
        if let Some(q) = quote {
            out.push(c);
            if c == '\\' && i + 1 < chars.len() {
                out.push(chars[i + 1]);
                i += 1;
            } else if c == q {
                quote = None;
            }
            i += 1;
            continue;
        }
        if c == '"' || c == '\'' {
            quote = Some(c);
            out.push(c);
            i += 1;
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            let after_dot = start > 0 && chars[start - 1] == '.';
            let arg = (word.len() == 1 && !after_dot)
                .then(|| args.iter().find(|(s, _)| word.starts_with(*s)))
                .flatten();
            match arg {
                Some((_, value)) if is_simple(value) => out.push_str(value),
                Some((_, value)) => {
                    out.push('(');
                    out.push_str(value);
                    out.push(')');
                }
                None => out.push_str(&word),
            }
            continue;
        }
        out.push(c);
        i += 1;
    }
    out
}

fn is_simple(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '.')
}
