//! Printing the unified, fuzzed IR through the distilled template grammar.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::distilled::{Delim, DistilledCode, DistilledToken as T, Sep, StructMark};
use crate::ir::{binary_prec, Expr, Function, Name, OpaqueItem, Stmt, TypeRef, PREC_POSTFIX, PREC_TERNARY, PREC_UNARY};
use crate::lang::LanguageId;
use crate::vocab;

const UNARY_OPS: &[&str] = &["!", "-", "~", "+"];

struct Emitter {
    out: Vec<T>,
}

fn quote(s: &str) -> String {
    let mut q = String::from("\"");
    for c in s.chars() {
        if c == '"' || c == '\\' {
            q.push('\\');
        }
        q.push(c);
    }
    q.push('"');
    q
}

/// Binding strength of an expression as printed.
fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Ternary { .. } => PREC_TERNARY,
        Expr::Binary { op, .. } => binary_prec(op).unwrap_or(PREC_POSTFIX),
        Expr::Unary { op, .. } if UNARY_OPS.contains(&op.as_str()) => PREC_UNARY,
        _ => PREC_POSTFIX,
    }
}

impl Emitter {
    fn kw(&mut self, k: &str) {
        self.out.push(T::kw(k));
    }

    fn mark(&mut self, m: StructMark) {
        self.out.push(T::StructMark(m));
    }

    fn open(&mut self, d: Delim) {
        self.mark(StructMark::Open(d));
    }

    fn close(&mut self, d: Delim) {
        self.mark(StructMark::Close(d));
    }

    fn comma(&mut self) {
        self.mark(StructMark::Sep(Sep::Comma));
    }

    fn semi(&mut self) {
        self.mark(StructMark::Sep(Sep::Semi));
    }

    fn bag(&mut self, n: &Name) {
        self.out.push(T::NameBag(n.words()));
    }

    fn ty(&mut self, t: &TypeRef) {
        match t {
            TypeRef::Prim(p) if vocab::is_type_word(p) => self.out.push(T::TypeRef(p.clone())),
            TypeRef::Prim(_) => self.out.push(T::TypeRef("var".into())),
            TypeRef::User(n) => self.bag(n),
            TypeRef::Array(inner) => {
                self.ty(inner);
                self.open(Delim::Bracket);
                self.close(Delim::Bracket);
            }
        }
    }

    fn block(&mut self, body: &[Stmt]) {
        self.open(Delim::Brace);
        for s in body {
            self.stmt(s);
        }
        self.close(Delim::Brace);
    }

    fn function(&mut self, f: &Function) {
        self.kw("func");
        if let Some(r) = &f.ret {
            self.ty(r);
        }
        self.bag(&f.name);
        self.open(Delim::Paren);
        for (i, p) in f.params.iter().enumerate() {
            if i > 0 {
                self.comma();
            }
            self.kw("param");
            self.ty(&p.ty);
            self.bag(&p.name);
        }
        self.close(Delim::Paren);
        self.block(&f.body);
    }

    /// Declaration, assignment or expression without the trailing `;`.
    fn simple(&mut self, s: &Stmt) {
        match s {
            Stmt::Decl { ty, name, init } => {
                self.kw("decl");
                self.ty(ty);
                self.bag(name);
                if let Some(e) = init {
                    self.kw("assign");
                    self.expr(e, 0);
                }
            }
            Stmt::Assign { target, value } => {
                self.expr(target, 0);
                self.kw("assign");
                self.expr(value, 0);
            }
            Stmt::Expr(e) => self.expr(e, 0),
            other => self.opaque_stmt_items("stmt", core::slice::from_ref(other)),
        }
    }

    fn opaque_stmt_items(&mut self, kind: &str, body: &[Stmt]) {
        self.kw("opaque");
        self.out.push(T::Literal(quote(kind)));
        self.open(Delim::Paren);
        self.block(body);
        self.close(Delim::Paren);
    }

    fn stmt(&mut self, s: &Stmt) {
        match s {
            Stmt::Decl { .. } | Stmt::Assign { .. } | Stmt::Expr(_) => {
                self.simple(s);
                self.semi();
            }
            Stmt::If { branches, otherwise } => {
                for (i, (c, b)) in branches.iter().enumerate() {
                    self.kw(if i == 0 { "if" } else { "elif" });
                    self.open(Delim::Paren);
                    self.expr(c, 0);
                    self.close(Delim::Paren);
                    self.block(b);
                }
                if let Some(b) = otherwise {
                    self.kw("else");
                    self.block(b);
                }
            }
            Stmt::While { cond, body } => {
                self.kw("while");
                self.open(Delim::Paren);
                self.expr(cond, 0);
                self.close(Delim::Paren);
                self.block(body);
            }
            Stmt::ForRange {
                var,
                start,
                end,
                step,
                body,
            } => {
                self.kw("for");
                self.bag(var);
                self.kw("in");
                self.kw("range");
                self.open(Delim::Paren);
                self.expr(start, 0);
                self.comma();
                self.expr(end, 0);
                if let Some(k) = step {
                    self.comma();
                    self.expr(k, 0);
                }
                self.close(Delim::Paren);
                self.block(body);
            }
            Stmt::ForEach { var, iter, body } => {
                self.kw("for");
                self.bag(var);
                self.kw("in");
                self.expr(iter, 0);
                self.block(body);
            }
            Stmt::For {
                init,
                cond,
                update,
                body,
            } => {
                self.kw("for");
                self.open(Delim::Paren);
                self.simple_list(init);
                self.semi();
                if let Some(c) = cond {
                    self.expr(c, 0);
                }
                self.semi();
                self.simple_list(update);
                self.close(Delim::Paren);
                self.block(body);
            }
            Stmt::Return(e) => {
                self.kw("return");
                if let Some(e) = e {
                    self.expr(e, 0);
                }
                self.semi();
            }
            Stmt::Break => {
                self.kw("break");
                self.semi();
            }
            Stmt::Continue => {
                self.kw("continue");
                self.semi();
            }
            Stmt::Func(f) => self.function(f),
            Stmt::Opaque { kind, items } => {
                self.opaque(kind, items);
                self.semi();
            }
        }
    }

    fn simple_list(&mut self, stmts: &[Stmt]) {
        for (i, s) in stmts.iter().enumerate() {
            if i > 0 {
                self.comma();
            }
            self.simple(s);
        }
    }

    fn opaque(&mut self, kind: &str, items: &[OpaqueItem]) {
        self.kw("opaque");
        self.out.push(T::Literal(quote(kind)));
        self.open(Delim::Paren);
        for (i, item) in items.iter().enumerate() {
            if i > 0 {
                self.comma();
            }
            match item {
                OpaqueItem::Expr(e) => self.expr(e, 0),
                OpaqueItem::Block(b) => self.block(b),
            }
        }
        self.close(Delim::Paren);
    }

    fn opaque_exprs(&mut self, kind: &str, items: &[&Expr]) {
        self.kw("opaque");
        self.out.push(T::Literal(quote(kind)));
        self.open(Delim::Paren);
        for (i, e) in items.iter().enumerate() {
            if i > 0 {
                self.comma();
            }
            self.expr(e, 0);
        }
        self.close(Delim::Paren);
    }

    fn args(&mut self, args: &[Expr]) {
        self.open(Delim::Paren);
        for (i, a) in args.iter().enumerate() {
            if i > 0 {
                self.comma();
            }
            self.expr(a, 0);
        }
        self.close(Delim::Paren);
    }

    /// Print `e`, parenthesized when it binds looser than `min`.
    fn expr(&mut self, e: &Expr, min: u8) {
        if prec(e) < min {
            self.open(Delim::Paren);
            self.expr(e, 0);
            self.close(Delim::Paren);
            return;
        }
        match e {
            Expr::Name(n) => self.bag(n),
            Expr::Lit(l) => self.out.push(T::Literal(l.clone())),
            Expr::Binary { op, lhs, rhs } => match binary_prec(op) {
                Some(p) => {
                    self.expr(lhs, p);
                    self.kw(op);
                    self.expr(rhs, p + 1);
                }
                None => self.opaque_exprs(op, &[lhs, rhs]),
            },
            Expr::Unary { op, operand } => {
                if UNARY_OPS.contains(&op.as_str()) {
                    self.kw(op);
                    self.expr(operand, PREC_UNARY);
                } else {
                    self.opaque_exprs(op, &[operand]);
                }
            }
            Expr::Ternary { cond, then, otherwise } => {
                self.expr(cond, PREC_TERNARY + 1);
                self.kw("?");
                self.expr(then, 0);
                self.kw(":");
                self.expr(otherwise, PREC_TERNARY);
            }
            Expr::Call { callee, args } => {
                self.kw("call");
                match &**callee {
                    Expr::Name(n) => self.bag(n),
                    Expr::Member { .. } | Expr::Index { .. } => self.expr(callee, PREC_POSTFIX),
                    other => {
                        self.open(Delim::Paren);
                        self.expr(other, 0);
                        self.close(Delim::Paren);
                    }
                }
                self.args(args);
            }
            Expr::Builtin { name, args } => {
                self.kw(name);
                self.args(args);
            }
            Expr::TypeCall { ty, args } => match ty {
                TypeRef::Array(_) => {
                    let items: Vec<&Expr> = args.iter().collect();
                    self.opaque_exprs("cast", &items);
                }
                _ => {
                    self.ty(ty);
                    self.args(args);
                }
            },
            Expr::Member { object, name } => {
                self.postfix_object(object);
                self.kw(".");
                self.bag(name);
            }
            Expr::Index { object, index } => {
                self.postfix_object(object);
                self.open(Delim::Bracket);
                self.expr(index, 0);
                self.close(Delim::Bracket);
            }
            Expr::List(items) => {
                self.open(Delim::Bracket);
                for (i, it) in items.iter().enumerate() {
                    if i > 0 {
                        self.comma();
                    }
                    self.expr(it, 0);
                }
                self.close(Delim::Bracket);
            }
            Expr::Dict(pairs) => {
                let items: Vec<&Expr> = pairs.iter().flat_map(|(k, v)| [k, v]).collect();
                self.opaque_exprs("dict", &items);
            }
            Expr::NewArray { ty, dims } => {
                self.kw("new");
                let mut base = ty;
                let mut layers = 0;
                while let TypeRef::Array(inner) = base {
                    base = inner;
                    layers += 1;
                }
                self.ty(base);
                for d in dims {
                    self.open(Delim::Bracket);
                    self.expr(d, 0);
                    self.close(Delim::Bracket);
                }
                for _ in 0..layers {
                    self.open(Delim::Bracket);
                    self.close(Delim::Bracket);
                }
            }
            Expr::KwArg { name, value } => {
                self.bag(name);
                self.kw("assign");
                self.expr(value, 0);
            }
            Expr::Slot(c) => self.opaque_exprs(&c.to_string(), &[]),
            Expr::Opaque { kind, items } => self.opaque(kind, items),
        }
    }

    /// Objects of `.` and `[]`: a call, a bag or anything wrapped in parens.
    fn postfix_object(&mut self, object: &Expr) {
        match object {
            Expr::Name(_) | Expr::Member { .. } | Expr::Index { .. } | Expr::Call { .. } => {
                self.expr(object, PREC_POSTFIX)
            }
            _ => {
                self.open(Delim::Paren);
                self.expr(object, 0);
                self.close(Delim::Paren);
            }
        }
    }
}

/// Serialize a fuzzed function through the template grammar.
pub fn reassemble(f: &Function, source_language: Option<LanguageId>) -> DistilledCode {
    let mut e = Emitter { out: Vec::new() };
    e.function(f);
    DistilledCode::new(e.out, source_language)
}
