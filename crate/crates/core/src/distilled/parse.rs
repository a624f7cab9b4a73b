//! Distilled tokens back to the typed intermediate form.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{Delim, DistilledCode, DistilledError, DistilledToken as T, Sep, StructMark};
use crate::ir::{binary_prec, Expr, Function, Name, OpaqueItem, Param, Stmt, TypeRef, PREC_TERNARY};
use crate::vocab;

const LPAREN: StructMark = StructMark::Open(Delim::Paren);
const RPAREN: StructMark = StructMark::Close(Delim::Paren);
const LBRACE: StructMark = StructMark::Open(Delim::Brace);
const RBRACE: StructMark = StructMark::Close(Delim::Brace);
const LBRACKET: StructMark = StructMark::Open(Delim::Bracket);
const RBRACKET: StructMark = StructMark::Close(Delim::Bracket);
const COMMA: StructMark = StructMark::Sep(Sep::Comma);
const SEMI: StructMark = StructMark::Sep(Sep::Semi);

/// Parse a distilled function record.
pub fn parse_function(d: &DistilledCode) -> Result<Function, DistilledError> {
    let mut p = Parser { toks: &d.tokens, pos: 0 };
    let f = p.function()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing tokens after function"));
    }
    Ok(f)
}

/// A distilled snippet: a whole function, a statement sequence, or one
/// expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fragment {
    Function(Function),
    Stmts(Vec<Stmt>),
    Expr(Expr),
}

/// Parse a record that may be a function or a bare snippet.
pub fn parse_fragment(d: &DistilledCode) -> Result<Fragment, DistilledError> {
    if d.tokens.first().is_some_and(|t| t.is_kw("func")) {
        return parse_function(d).map(Fragment::Function);
    }
    let mut p = Parser { toks: &d.tokens, pos: 0 };
    if let Ok(e) = p.expr(0) {
        if p.pos == p.toks.len() {
            return Ok(Fragment::Expr(e));
        }
    }
    let mut p = Parser { toks: &d.tokens, pos: 0 };
    let mut out = Vec::new();
    while p.pos < p.toks.len() {
        out.push(p.stmt()?);
    }
    Ok(Fragment::Stmts(out))
}

struct Parser<'a> {
    toks: &'a [T],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, reason: &str) -> DistilledError {
        DistilledError::Syntax {
            pos: self.pos,
            reason: reason.to_string(),
        }
    }

    fn peek(&self) -> Option<&'a T> {
        self.toks.get(self.pos)
    }

    fn peek_at(&self, k: usize) -> Option<&'a T> {
        self.toks.get(self.pos + k)
    }

    fn bump(&mut self) -> Option<&'a T> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    fn at_mark(&self, m: StructMark) -> bool {
        self.peek().is_some_and(|t| t.is_mark(m))
    }

    fn at_kw(&self, k: &str) -> bool {
        self.peek().is_some_and(|t| t.is_kw(k))
    }

    fn eat_mark(&mut self, m: StructMark) -> bool {
        if self.at_mark(m) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_kw(&mut self, k: &str) -> bool {
        if self.at_kw(k) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_mark(&mut self, m: StructMark) -> Result<(), DistilledError> {
        if self.eat_mark(m) {
            Ok(())
        } else {
            Err(self.err(&alloc::format!("expected `{}`", m.as_str())))
        }
    }

    fn expect_kw(&mut self, k: &str) -> Result<(), DistilledError> {
        if self.eat_kw(k) {
            Ok(())
        } else {
            Err(self.err(&alloc::format!("expected `{k}`")))
        }
    }

    fn bag(&mut self) -> Result<Name, DistilledError> {
        match self.bump() {
            Some(T::NameBag(w)) => Ok(Name::Bag(w.clone())),
            _ => {
                self.pos -= 1;
                Err(self.err("expected a name bag"))
            }
        }
    }

    fn is_type_start(&self) -> bool {
        matches!(self.peek(), Some(T::TypeRef(_)))
            || (matches!(self.peek(), Some(T::NameBag(_)))
                && (matches!(self.peek_at(1), Some(T::NameBag(_)))
                    || (self.peek_at(1).is_some_and(|t| t.is_mark(LBRACKET))
                        && self.peek_at(2).is_some_and(|t| t.is_mark(RBRACKET)))))
    }

    fn base_type(&mut self) -> Result<TypeRef, DistilledError> {
        match self.bump() {
            Some(T::TypeRef(t)) => Ok(TypeRef::Prim(t.clone())),
            Some(T::NameBag(w)) => Ok(TypeRef::User(Name::Bag(w.clone()))),
            _ => {
                self.pos -= 1;
                Err(self.err("expected a type"))
            }
        }
    }

    fn array_suffix(&mut self, mut ty: TypeRef) -> TypeRef {
        while self.at_mark(LBRACKET) && self.peek_at(1).is_some_and(|t| t.is_mark(RBRACKET)) {
            self.pos += 2;
            ty = TypeRef::Array(Box::new(ty));
        }
        ty
    }

    fn ty(&mut self) -> Result<TypeRef, DistilledError> {
        let base = self.base_type()?;
        Ok(self.array_suffix(base))
    }

    fn function(&mut self) -> Result<Function, DistilledError> {
        self.expect_kw("func")?;
        let ret = if self.is_type_start() { Some(self.ty()?) } else { None };
        let name = self.bag()?;
        self.expect_mark(LPAREN)?;
        let mut params = Vec::new();
        if !self.eat_mark(RPAREN) {
            loop {
                self.expect_kw("param")?;
                let ty = self.ty()?;
                let name = self.bag()?;
                params.push(Param { ty, name });
                if self.eat_mark(RPAREN) {
                    break;
                }
                self.expect_mark(COMMA)?;
            }
        }
        let body = self.block()?;
        Ok(Function {
            name,
            ret,
            params,
            body,
        })
    }

    fn block(&mut self) -> Result<Vec<Stmt>, DistilledError> {
        self.expect_mark(LBRACE)?;
        let mut out = Vec::new();
        while !self.eat_mark(RBRACE) {
            if self.peek().is_none() {
                return Err(self.err("unterminated block"));
            }
            out.push(self.stmt()?);
        }
        Ok(out)
    }

    fn stmt(&mut self) -> Result<Stmt, DistilledError> {
        let Some(tok) = self.peek() else {
            return Err(self.err("expected a statement"));
        };
        if let T::UnifiedKeyword(k) = tok {
            match k.as_str() {
                "func" => return self.function().map(Stmt::Func),
                "if" => return self.if_stmt(),
                "while" => {
                    self.pos += 1;
                    let cond = self.paren_expr()?;
                    let body = self.block()?;
                    return Ok(Stmt::While { cond, body });
                }
                "for" => return self.for_stmt(),
                "return" => {
                    self.pos += 1;
                    let value = if self.at_mark(SEMI) { None } else { Some(self.expr(0)?) };
                    self.expect_mark(SEMI)?;
                    return Ok(Stmt::Return(value));
                }
                "break" | "continue" => {
                    self.pos += 1;
                    self.expect_mark(SEMI)?;
                    return Ok(if k == "break" { Stmt::Break } else { Stmt::Continue });
                }
                _ => {}
            }
        }
        let s = self.simple()?;
        self.expect_mark(SEMI)?;
        Ok(match s {
            Stmt::Expr(Expr::Opaque { kind, items }) => Stmt::Opaque { kind, items },
            s => s,
        })
    }

    /// Declaration, assignment or expression statement, without its `;`.
    fn simple(&mut self) -> Result<Stmt, DistilledError> {
        if self.eat_kw("decl") {
            let ty = self.ty()?;
            let name = self.bag()?;
            let init = if self.eat_kw("assign") { Some(self.expr(0)?) } else { None };
            return Ok(Stmt::Decl { ty, name, init });
        }
        let e = self.expr(0)?;
        if self.eat_kw("assign") {
            let value = self.expr(0)?;
            return Ok(Stmt::Assign { target: e, value });
        }
        Ok(Stmt::Expr(e))
    }

    fn paren_expr(&mut self) -> Result<Expr, DistilledError> {
        self.expect_mark(LPAREN)?;
        let e = self.expr(0)?;
        self.expect_mark(RPAREN)?;
        Ok(e)
    }

    fn if_stmt(&mut self) -> Result<Stmt, DistilledError> {
        self.expect_kw("if")?;
        let mut branches = Vec::new();
        let cond = self.paren_expr()?;
        branches.push((cond, self.block()?));
        while self.eat_kw("elif") {
            let cond = self.paren_expr()?;
            branches.push((cond, self.block()?));
        }
        let otherwise = if self.eat_kw("else") { Some(self.block()?) } else { None };
        Ok(Stmt::If {
            branches,
            otherwise,
        })
    }

    fn for_stmt(&mut self) -> Result<Stmt, DistilledError> {
        self.expect_kw("for")?;
        if self.eat_mark(LPAREN) {
            let init = self.simple_list(SEMI)?;
            let cond = if self.at_mark(SEMI) { None } else { Some(self.expr(0)?) };
            self.expect_mark(SEMI)?;
            let update = self.simple_list(RPAREN)?;
            let body = self.block()?;
            return Ok(Stmt::For {
                init,
                cond,
                update,
                body,
            });
        }
        let var = self.bag()?;
        self.expect_kw("in")?;
        if self.eat_kw("range") {
            self.expect_mark(LPAREN)?;
            let start = self.expr(0)?;
            self.expect_mark(COMMA)?;
            let end = self.expr(0)?;
            let step = if self.eat_mark(COMMA) { Some(self.expr(0)?) } else { None };
            self.expect_mark(RPAREN)?;
            let body = self.block()?;
            return Ok(Stmt::ForRange {
                var,
                start,
                end,
                step,
                body,
            });
        }
        let iter = self.expr(0)?;
        let body = self.block()?;
        Ok(Stmt::ForEach { var, iter, body })
    }

    fn simple_list(&mut self, end: StructMark) -> Result<Vec<Stmt>, DistilledError> {
        let mut out = Vec::new();
        if self.eat_mark(end) {
            return Ok(out);
        }
        loop {
            out.push(self.simple()?);
            if self.eat_mark(end) {
                return Ok(out);
            }
            self.expect_mark(COMMA)?;
        }
    }

    fn peek_binary(&self) -> Option<(&'a str, u8)> {
        match self.peek()? {
            T::UnifiedKeyword(k) => binary_prec(k).map(|p| (k.as_str(), p)),
            _ => None,
        }
    }

    fn expr(&mut self, min_prec: u8) -> Result<Expr, DistilledError> {
        let mut lhs = self.unary()?;
        loop {
            if self.at_kw("?") && min_prec <= PREC_TERNARY {
                self.pos += 1;
                let then = self.expr(0)?;
                self.expect_kw(":")?;
                let otherwise = self.expr(PREC_TERNARY)?;
                lhs = Expr::Ternary {
                    cond: Box::new(lhs),
                    then: Box::new(then),
                    otherwise: Box::new(otherwise),
                };
                continue;
            }
            let Some((op, prec)) = self.peek_binary() else { break };
            if prec < min_prec {
                break;
            }
            self.pos += 1;
            let rhs = self.expr(prec + 1)?;
            lhs = Expr::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, DistilledError> {
        if let Some(T::UnifiedKeyword(k)) = self.peek() {
            if matches!(k.as_str(), "!" | "-" | "~" | "+") {
                self.pos += 1;
                let operand = self.unary()?;
                return Ok(Expr::unary(k, operand));
            }
        }
        let e = self.primary()?;
        self.postfix(e)
    }

    fn postfix(&mut self, mut e: Expr) -> Result<Expr, DistilledError> {
        loop {
            if self.at_kw(".") {
                self.pos += 1;
                let name = self.bag()?;
                e = Expr::Member {
                    object: Box::new(e),
                    name,
                };
            } else if self.at_mark(LBRACKET) {
                self.pos += 1;
                let index = self.expr(0)?;
                self.expect_mark(RBRACKET)?;
                e = Expr::Index {
                    object: Box::new(e),
                    index: Box::new(index),
                };
            } else {
                return Ok(e);
            }
        }
    }

    fn args(&mut self) -> Result<Vec<Expr>, DistilledError> {
        self.expect_mark(LPAREN)?;
        let mut out = Vec::new();
        if self.eat_mark(RPAREN) {
            return Ok(out);
        }
        loop {
            if matches!(self.peek(), Some(T::NameBag(_))) && self.peek_at(1).is_some_and(|t| t.is_kw("assign")) {
                let name = self.bag()?;
                self.pos += 1;
                let value = self.expr(0)?;
                out.push(Expr::KwArg {
                    name,
                    value: Box::new(value),
                });
            } else {
                out.push(self.expr(0)?);
            }
            if self.eat_mark(RPAREN) {
                return Ok(out);
            }
            self.expect_mark(COMMA)?;
        }
    }

    fn opaque(&mut self) -> Result<(String, Vec<OpaqueItem>), DistilledError> {
        self.expect_kw("opaque")?;
        let kind = match self.bump() {
            Some(T::Literal(l)) => l.trim_matches('"').to_string(),
            _ => return Err(self.err("expected opaque kind literal")),
        };
        self.expect_mark(LPAREN)?;
        let mut items = Vec::new();
        if !self.eat_mark(RPAREN) {
            loop {
                if self.at_mark(LBRACE) {
                    items.push(OpaqueItem::Block(self.block()?));
                } else {
                    items.push(OpaqueItem::Expr(self.expr(0)?));
                }
                if self.eat_mark(RPAREN) {
                    break;
                }
                self.expect_mark(COMMA)?;
            }
        }
        Ok((kind, items))
    }

    fn primary(&mut self) -> Result<Expr, DistilledError> {
        let Some(tok) = self.peek() else {
            return Err(self.err("expected an expression"));
        };
        match tok {
            T::NameBag(w) => {
                self.pos += 1;
                if self.at_mark(LPAREN) {
                    let args = self.args()?;
                    return Ok(Expr::TypeCall {
                        ty: TypeRef::User(Name::Bag(w.clone())),
                        args,
                    });
                }
                Ok(Expr::Name(Name::Bag(w.clone())))
            }
            T::Literal(l) => {
                self.pos += 1;
                Ok(Expr::Lit(l.clone()))
            }
            T::TypeRef(t) => {
                self.pos += 1;
                let args = self.args()?;
                Ok(Expr::TypeCall {
                    ty: TypeRef::Prim(t.clone()),
                    args,
                })
            }
            T::StructMark(m) if *m == LPAREN => {
                self.pos += 1;
                let e = self.expr(0)?;
                self.expect_mark(RPAREN)?;
                Ok(e)
            }
            T::StructMark(m) if *m == LBRACKET => {
                self.pos += 1;
                let mut items = Vec::new();
                if !self.eat_mark(RBRACKET) {
                    loop {
                        items.push(self.expr(0)?);
                        if self.eat_mark(RBRACKET) {
                            break;
                        }
                        self.expect_mark(COMMA)?;
                    }
                }
                Ok(Expr::List(items))
            }
            T::UnifiedKeyword(k) if vocab::is_builtin(k) => {
                self.pos += 1;
                let args = self.args()?;
                Ok(Expr::Builtin { name: k.clone(), args })
            }
            T::UnifiedKeyword(k) if k == "call" => {
                self.pos += 1;
                let head = self.primary_no_call()?;
                let callee = self.postfix(head)?;
                let args = self.args()?;
                Ok(Expr::call(callee, args))
            }
            T::UnifiedKeyword(k) if k == "new" => {
                self.pos += 1;
                let mut ty = self.base_type()?;
                let mut dims = Vec::new();
                while self.at_mark(LBRACKET) {
                    if self.peek_at(1).is_some_and(|t| t.is_mark(RBRACKET)) {
                        self.pos += 2;
                        ty = TypeRef::Array(Box::new(ty));
                    } else {
                        self.pos += 1;
                        dims.push(self.expr(0)?);
                        self.expect_mark(RBRACKET)?;
                    }
                }
                Ok(Expr::NewArray { ty, dims })
            }
            T::UnifiedKeyword(k) if k == "opaque" => {
                let (kind, items) = self.opaque()?;
                Ok(Expr::Opaque { kind, items })
            }
            _ => Err(self.err("expected an expression")),
        }
    }

    /// Callee head after `call`: a bag, or a parenthesized expression.
    fn primary_no_call(&mut self) -> Result<Expr, DistilledError> {
        match self.peek() {
            Some(T::NameBag(w)) => {
                self.pos += 1;
                Ok(Expr::Name(Name::Bag(w.clone())))
            }
            _ => self.primary(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Function {
        parse_function(&DistilledCode::parse(text).unwrap()).unwrap()
    }

    #[test]
    fn parses_templates() {
        let f = parse(
            "func int {add} ( param int {a} , param int {b} ) { decl int {s} assign {a} + {b} * 2 ; \
             if ( {s} > 0 ) { return {s} ; } elif ( {s} == 0 ) { break ; } else { continue ; } \
             for {i} in range ( 0 , {n} ) { call {foo} ( {i} ) ; } return ; }",
        );
        assert_eq!(f.params.len(), 2);
        assert_eq!(f.body.len(), 4);
        match &f.body[0] {
            Stmt::Decl { init: Some(Expr::Binary { op, .. }), .. } => assert_eq!(op, "+"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn method_call_on_expression() {
        let f = parse("func {f} ( ) { call {a} [ 0 ] . {add} ( 1 ) ; }");
        match &f.body[0] {
            Stmt::Expr(Expr::Call { callee, .. }) => assert!(matches!(**callee, Expr::Member { .. })),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn ternary_and_precedence() {
        let f = parse("func {f} ( ) { return {a} < {b} ? {a} : {b} - 1 ; }");
        match &f.body[0] {
            Stmt::Return(Some(Expr::Ternary { otherwise, .. })) => {
                assert!(matches!(**otherwise, Expr::Binary { .. }))
            }
            other => panic!("{other:?}"),
        }
    }
}
