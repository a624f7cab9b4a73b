//! Parser for registry cell patterns.
//!
//! Cells are tiny expressions in a C-like surface syntax (Python cells may
//! use `and`/`or`/`not`). They parse into the same [`Expr`] shapes that
//! lowering produces, with the letters `a`, `b`, `c` as slots.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::ir::{Expr, Name, TypeRef};
use crate::lang::LanguageId;
use crate::literal::normalize_literal;
use crate::vocab;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CellPattern {
    Expr(Expr),
    /// `T a`: a declaration of type `T`; holds the surface type key (last
    /// path segment, plus `<>` when generic).
    Type(String),
    /// `a=init`: a declaration spelled as an initializing assignment.
    Init(Expr),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(String),
    Str(String),
    Punct(&'static str),
}

const PUNCTS: &[&str] = &[
    "**", "//", "&&", "||", "<<", ">>", "<=", ">=", "==", "!=", "<>", "::", "+", "-", "*", "/", "%", "!", "<", ">", "(",
    ")", "[", "]", "{", "}", ",", ".", "=", "~", "&", "|", "^", "?", ":",
];

fn lex(text: &str) -> Result<Vec<Tok>, String> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Tok::Ident(text[start..i].into()));
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'.') {
                i += 1;
            }
            out.push(Tok::Num(text[start..i].into()));
        } else if c == '\'' || c == '"' {
            let start = i;
            i += 1;
            while i < bytes.len() && bytes[i] as char != c {
                if bytes[i] == b'\\' {
                    i += 1;
                }
                i += 1;
            }
            i += 1;
            if i > bytes.len() {
                return Err("unterminated string".into());
            }
            out.push(Tok::Str(text[start..i].into()));
        } else if let Some(p) = PUNCTS.iter().find(|p| text[i..].starts_with(**p)) {
            out.push(Tok::Punct(p));
            i += p.len();
        } else {
            return Err(alloc::format!("unexpected character {c:?}"));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    /// `None` parses unified-form cells.
    lang: Option<LanguageId>,
}

fn binary_prec(op: &str) -> Option<(u8, bool)> {
    // (precedence, right associative)
    Some(match op {
        "||" | "or" => (1, false),
        "&&" | "and" => (2, false),
        "|" => (3, false),
        "^" => (4, false),
        "&" => (5, false),
        "==" | "!=" => (6, false),
        "<" | "<=" | ">" | ">=" => (7, false),
        "<<" | ">>" => (8, false),
        "+" | "-" => (9, false),
        "*" | "/" | "%" | "//" => (10, false),
        "**" => (12, true),
        _ => return None,
    })
}

fn slot_of(name: &str) -> Option<char> {
    match name {
        "a" => Some('a'),
        "b" => Some('b'),
        "c" => Some('c'),
        _ => None,
    }
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn eat(&mut self, p: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Punct(q)) if *q == p) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, p: &str) -> Result<(), String> {
        if self.eat(p) {
            Ok(())
        } else {
            Err(alloc::format!("expected `{p}`"))
        }
    }

    fn is_python(&self) -> bool {
        self.lang == Some(LanguageId::Python)
    }

    fn peek_binary(&self) -> Option<String> {
        match self.peek()? {
            Tok::Punct(p) if binary_prec(p).is_some() => Some((*p).to_string()),
            Tok::Ident(w) if self.is_python() && (w == "and" || w == "or") => Some(w.clone()),
            _ => None,
        }
    }

    fn expr(&mut self, min_prec: u8) -> Result<Expr, String> {
        let mut lhs = self.unary()?;
        while let Some(op) = self.peek_binary() {
            let (prec, right) = binary_prec(&op).unwrap_or((0, false));
            if prec < min_prec {
                break;
            }
            self.pos += 1;
            let rhs = self.expr(if right { prec } else { prec + 1 })?;
            lhs = Expr::binary(&op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, String> {
        match self.peek() {
            Some(Tok::Punct(p)) if matches!(*p, "!" | "-" | "~") => {
                let op = *p;
                self.pos += 1;
                Ok(Expr::unary(op, self.expr(11)?))
            }
            Some(Tok::Ident(w)) if self.is_python() && w == "not" => {
                self.pos += 1;
                Ok(Expr::unary("not", self.expr(11)?))
            }
            _ => self.postfix(),
        }
    }

    fn args(&mut self) -> Result<Vec<Expr>, String> {
        let mut args = Vec::new();
        if self.eat(")") {
            return Ok(args);
        }
        loop {
            if let (Some(Tok::Ident(n)), Some(Tok::Punct("="))) = (self.peek(), self.peek_at(1)) {
                let name = Name::Raw(n.clone());
                self.pos += 2;
                let value = self.expr(1)?;
                args.push(Expr::KwArg {
                    name,
                    value: Box::new(value),
                });
            } else {
                args.push(self.expr(1)?);
            }
            if self.eat(")") {
                return Ok(args);
            }
            self.expect(",")?;
        }
    }

    fn postfix(&mut self) -> Result<Expr, String> {
        let mut e = self.primary()?;
        loop {
            if self.eat("(") {
                let args = self.args()?;
                e = match e {
                    Expr::Name(Name::Raw(n)) if self.lang.is_none() && vocab::is_builtin(&n) => {
                        Expr::Builtin { name: n, args }
                    }
                    Expr::Name(Name::Raw(n)) if vocab::SCALAR_TYPES.contains(&n.as_str()) => Expr::TypeCall {
                        ty: TypeRef::Prim(n),
                        args,
                    },
                    callee => Expr::call(callee, args),
                };
            } else if self.eat(".") {
                match self.next() {
                    Some(Tok::Ident(n)) => e = Expr::member(e, n),
                    _ => return Err("expected member name".into()),
                }
            } else if self.eat("[") {
                let index = self.expr(1)?;
                self.expect("]")?;
                e = Expr::Index {
                    object: Box::new(e),
                    index: Box::new(index),
                };
            } else {
                return Ok(e);
            }
        }
    }

    fn qualified_ident(&mut self, first: String) -> String {
        let mut last = first;
        while matches!(self.peek(), Some(Tok::Punct("::"))) {
            match self.peek_at(1) {
                Some(Tok::Ident(n)) => {
                    last = n.clone();
                    self.pos += 2;
                }
                _ => break,
            }
        }
        last
    }

    fn primary(&mut self) -> Result<Expr, String> {
        match self.next() {
            Some(Tok::Ident(n)) => {
                let n = self.qualified_ident(n);
                Ok(match slot_of(&n) {
                    Some(s) => Expr::Slot(s),
                    None => Expr::Name(Name::Raw(n)),
                })
            }
            Some(Tok::Num(n)) => normalize_literal(&n, self.lang.unwrap_or(LanguageId::Cpp))
                .map(Expr::Lit)
                .ok_or_else(|| alloc::format!("bad number {n}")),
            Some(Tok::Str(s)) => normalize_literal(&s, self.lang.unwrap_or(LanguageId::Python))
                .map(Expr::Lit)
                .ok_or_else(|| alloc::format!("bad string {s}")),
            Some(Tok::Punct("(")) => {
                let e = self.expr(1)?;
                self.expect(")")?;
                Ok(e)
            }
            Some(Tok::Punct("[")) => {
                let mut items = Vec::new();
                if !self.eat("]") {
                    loop {
                        items.push(self.expr(1)?);
                        if self.eat("]") {
                            break;
                        }
                        self.expect(",")?;
                    }
                }
                Ok(Expr::List(items))
            }
            Some(Tok::Punct("{")) => {
                self.expect("}")?;
                Ok(Expr::Dict(Vec::new()))
            }
            other => Err(alloc::format!("unexpected token {other:?}")),
        }
    }

    fn done(&self) -> Result<(), String> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            Err(alloc::format!("trailing tokens at {}", self.pos))
        }
    }
}

/// Parse an expression cell. `lang` is `None` for the unified column.
pub fn parse_expr_cell(text: &str, lang: Option<LanguageId>) -> Result<Expr, String> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        lang,
    };
    let e = p.expr(1)?;
    p.done()?;
    Ok(e)
}

/// Parse a data-type cell: `T a` or `a=init`.
pub fn parse_type_cell(text: &str, lang: Option<LanguageId>) -> Result<CellPattern, String> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        lang,
    };
    if matches!(p.peek_at(1), Some(Tok::Punct("="))) {
        match p.next() {
            Some(Tok::Ident(n)) if slot_of(&n).is_some() => {}
            _ => return Err("initializer form must assign a slot".into()),
        }
        p.pos += 1;
        let init = p.expr(1)?;
        p.done()?;
        return Ok(CellPattern::Init(init));
    }
    let first = match p.next() {
        Some(Tok::Ident(n)) => n,
        _ => return Err("expected a type name".into()),
    };
    let mut key = p.qualified_ident(first);
    if p.eat("<>") {
        key.push_str("<>");
    }
    match p.next() {
        Some(Tok::Ident(n)) if slot_of(&n).is_some() => {}
        _ => return Err("expected a slot after the type".into()),
    }
    p.done()?;
    Ok(CellPattern::Type(key))
}

/// Slots used by a pattern, sorted and deduplicated.
pub fn slots(p: &CellPattern) -> Vec<char> {
    let mut out = Vec::new();
    match p {
        CellPattern::Type(_) | CellPattern::Init(_) => out.push('a'),
        CellPattern::Expr(e) => collect_slots(e, &mut out),
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn collect_slots(e: &Expr, out: &mut Vec<char>) {
    if let Expr::Slot(c) = e {
        out.push(*c);
    }
    let mut e = e.clone();
    e.for_each_child_mut(&mut |c| collect_slots(c, out));
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn python_operators() {
        let e = parse_expr_cell("a and b", Some(LanguageId::Python)).unwrap();
        assert_eq!(e, Expr::binary("and", Expr::Slot('a'), Expr::Slot('b')));
        let e = parse_expr_cell("not a", Some(LanguageId::Python)).unwrap();
        assert_eq!(e, Expr::unary("not", Expr::Slot('a')));
        let e = parse_expr_cell("a**b", Some(LanguageId::Python)).unwrap();
        assert_eq!(e, Expr::binary("**", Expr::Slot('a'), Expr::Slot('b')));
    }

    #[test]
    fn calls_and_members() {
        let e = parse_expr_cell("Math.pow(a,b)", Some(LanguageId::Java)).unwrap();
        assert_eq!(
            e,
            Expr::call(Expr::member(Expr::name("Math"), "pow"), vec![Expr::Slot('a'), Expr::Slot('b')])
        );
        let e = parse_expr_cell("pow(a,b)", None).unwrap();
        assert_eq!(
            e,
            Expr::Builtin {
                name: "pow".into(),
                args: vec![Expr::Slot('a'), Expr::Slot('b')]
            }
        );
        let e = parse_expr_cell("print(a, end='')", Some(LanguageId::Python)).unwrap();
        assert_eq!(
            e,
            Expr::call(
                Expr::name("print"),
                vec![
                    Expr::Slot('a'),
                    Expr::KwArg {
                        name: Name::raw("end"),
                        value: Box::new(Expr::lit("\"\""))
                    }
                ]
            )
        );
    }

    #[test]
    fn casts_and_streams() {
        let e = parse_expr_cell("int(a/b)", Some(LanguageId::Cpp)).unwrap();
        assert!(matches!(e, Expr::TypeCall { ty: TypeRef::Prim(ref t), .. } if t == "int"));
        let e = parse_expr_cell("cout<<a<<endl", Some(LanguageId::Cpp)).unwrap();
        assert_eq!(
            e,
            Expr::binary("<<", Expr::binary("<<", Expr::name("cout"), Expr::Slot('a')), Expr::name("endl"))
        );
        let e = parse_expr_cell("rand()%(b-a)+a", Some(LanguageId::Cpp)).unwrap();
        assert_eq!(slots(&CellPattern::Expr(e)), vec!['a', 'b']);
    }

    #[test]
    fn type_cells() {
        assert_eq!(
            parse_type_cell("std::string a", Some(LanguageId::Cpp)).unwrap(),
            CellPattern::Type("string".into())
        );
        assert_eq!(
            parse_type_cell("HashMap<> a", Some(LanguageId::Java)).unwrap(),
            CellPattern::Type("HashMap<>".into())
        );
        assert_eq!(
            parse_type_cell("a=queue.Queue()", Some(LanguageId::Python)).unwrap(),
            CellPattern::Init(Expr::call(Expr::member(Expr::name("queue"), "Queue"), vec![]))
        );
        assert_eq!(
            parse_type_cell("a={}", Some(LanguageId::Python)).unwrap(),
            CellPattern::Init(Expr::Dict(vec![]))
        );
    }
}
