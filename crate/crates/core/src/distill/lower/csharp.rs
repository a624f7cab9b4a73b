use alloc::boxed::Box;
use alloc::vec::Vec;

use super::{boxed, compound_assign, if_chain, inc_dec, make_for, switch_chain, Lowerer, SwitchArm};
use crate::ir::{Expr, Function, Name, Param, Stmt, TypeRef};
use crate::syntax::SyntaxNode;

impl Lowerer<'_> {
    pub(super) fn cs_function(&mut self, n: &SyntaxNode) -> Option<Function> {
        let name = self.name(n.child_by_field("name")?);
        let ret = match n.child_by_field("returns").or_else(|| n.child_by_field("type")) {
            Some(t) if self.text(t) == "void" => None,
            Some(t) => Some(self.cs_type(t)),
            None => None,
        };
        let mut params = Vec::new();
        if let Some(ps) = n.child_by_field("parameters") {
            let mut loose_ty = None;
            for p in &ps.children {
                match (p.kind, p.field) {
                    ("parameter", _) => {
                        let Some(pname) = p.child_by_field("name") else { continue };
                        let ty = match p.child_by_field("type") {
                            Some(t) => self.cs_type(t),
                            None => TypeRef::prim("var"),
                        };
                        params.push(Param {
                            ty,
                            name: self.name(pname),
                        });
                    }
                    // `params T[] xs` hangs its parts directly off the list.
                    (_, Some("type")) => loose_ty = Some(self.cs_type(p)),
                    (_, Some("name")) => params.push(Param {
                        ty: loose_ty.take().unwrap_or_else(|| TypeRef::prim("var")),
                        name: self.name(p),
                    }),
                    _ => {}
                }
            }
        }
        let body = match n.child_by_field("body") {
            Some(b) if b.kind == "arrow_expression_clause" => match b.named_children().next() {
                Some(e) => {
                    let e = self.cs_expr(e);
                    alloc::vec![if ret.is_some() { Stmt::Return(Some(e)) } else { Stmt::Expr(e) }]
                }
                None => Vec::new(),
            },
            Some(b) => self.body(b),
            None => Vec::new(),
        };
        Some(Function {
            name,
            ret,
            params,
            body,
        })
    }

    pub(super) fn cs_type(&mut self, n: &SyntaxNode) -> TypeRef {
        match n.kind {
            "predefined_type" => TypeRef::Prim(self.text(n).into()),
            "implicit_type" => TypeRef::prim("var"),
            "identifier" => TypeRef::User(self.name(n)),
            "generic_name" => match n.named_children().find(|c| c.kind == "identifier") {
                Some(id) => TypeRef::User(Name::Raw(alloc::format!("{}<>", self.text(id)))),
                None => TypeRef::prim("var"),
            },
            "qualified_name" => match n.child_by_field("name").or_else(|| n.named_children().last()) {
                Some(last) => self.cs_type(last),
                None => TypeRef::prim("var"),
            },
            "nullable_type" | "pointer_type" | "ref_type" => match n.named_children().next() {
                Some(inner) => self.cs_type(inner),
                None => TypeRef::prim("var"),
            },
            "array_type" => {
                let elem = match n.child_by_field("type") {
                    Some(t) => self.cs_type(t),
                    None => TypeRef::prim("var"),
                };
                TypeRef::Array(Box::new(elem))
            }
            _ => TypeRef::User(Name::Raw(self.text(n).into())),
        }
    }

    fn cs_declaration(&mut self, n: &SyntaxNode, out: &mut Vec<Stmt>) {
        let base = match n.child_by_field("type") {
            Some(t) => self.cs_type(t),
            None => TypeRef::prim("var"),
        };
        for d in n.named_children().filter(|c| c.kind == "variable_declarator") {
            let Some(name) = d.child_by_field("name") else { continue };
            let init = d
                .named_children()
                .filter(|c| c.field.is_none() && c.kind != "bracketed_argument_list")
                .last()
                .map(|v| self.cs_expr(v));
            out.push(Stmt::Decl {
                ty: base.clone(),
                name: self.name(name),
                init,
            });
        }
    }

    fn cs_simple(&mut self, n: &SyntaxNode, out: &mut Vec<Stmt>) {
        match n.kind {
            "assignment_expression" => {
                let (Some(l), Some(r)) = (n.child_by_field("left"), n.child_by_field("right")) else {
                    out.push(Stmt::Expr(self.opaque_expr(n)));
                    return;
                };
                let op = n.child_by_field("operator").map(|o| self.text(o)).unwrap_or("=");
                let target = self.cs_expr(l);
                let value = self.cs_expr(r);
                out.push(compound_assign(target, op, value));
            }
            "postfix_unary_expression" | "prefix_unary_expression"
                if n.children.iter().any(|c| !c.is_named && matches!(self.text(c), "++" | "--")) =>
            {
                let op = n.children.iter().find(|c| !c.is_named).map(|c| self.text(c)).unwrap_or("++");
                match n.named_children().next() {
                    Some(o) => {
                        let target = self.cs_expr(o);
                        out.push(inc_dec(target, op));
                    }
                    None => out.push(Stmt::Expr(self.opaque_expr(n))),
                }
            }
            "variable_declaration" => self.cs_declaration(n, out),
            _ => {
                let e = self.cs_expr(n);
                out.push(Stmt::Expr(e));
            }
        }
    }

    fn cs_cond(&mut self, n: Option<&SyntaxNode>) -> Expr {
        match n {
            Some(c) => self.cs_expr(c),
            None => Expr::lit("true"),
        }
    }

    pub(super) fn cs_stmt(&mut self, n: &SyntaxNode, out: &mut Vec<Stmt>) {
        match n.kind {
            "block" => self.block_children(n, out),
            "local_declaration_statement" => {
                for c in n.named_children().filter(|c| c.kind == "variable_declaration") {
                    self.cs_declaration(c, out);
                }
            }
            "expression_statement" => {
                if let Some(e) = n.named_children().next() {
                    self.cs_simple(e, out);
                }
            }
            "if_statement" => {
                let cond = self.cs_cond(n.child_by_field("condition"));
                let then = n.child_by_field("consequence").map(|c| self.body(c)).unwrap_or_default();
                let otherwise = n.child_by_field("alternative").map(|a| self.body(a));
                out.push(if_chain(cond, then, otherwise));
            }
            "while_statement" => {
                let cond = self.cs_cond(n.child_by_field("condition"));
                let body = n.child_by_field("body").map(|b| self.body(b)).unwrap_or_default();
                out.push(Stmt::While { cond, body });
            }
            "for_statement" => {
                let mut init = Vec::new();
                for i in n.children_by_field("initializer") {
                    self.cs_simple(i, &mut init);
                }
                let cond = n.child_by_field("condition").map(|c| self.cs_expr(c));
                let mut update = Vec::new();
                for u in n.children_by_field("update") {
                    self.cs_simple(u, &mut update);
                }
                let body = n.child_by_field("body").map(|b| self.body(b)).unwrap_or_default();
                out.push(make_for(init, cond, update, body));
            }
            "foreach_statement" => {
                let (Some(left), Some(right)) = (n.child_by_field("left"), n.child_by_field("right")) else {
                    out.push(self.opaque_stmt(n));
                    return;
                };
                if left.kind != "identifier" {
                    out.push(self.opaque_stmt(n));
                    return;
                }
                let var = self.name(left);
                let iter = self.cs_expr(right);
                let body = n.child_by_field("body").map(|b| self.body(b)).unwrap_or_default();
                out.push(Stmt::ForEach { var, iter, body });
            }
            "return_statement" => {
                let value = n.named_children().next().map(|e| self.cs_expr(e));
                out.push(Stmt::Return(value));
            }
            "break_statement" => out.push(Stmt::Break),
            "continue_statement" => out.push(Stmt::Continue),
            "labeled_statement" => {
                for c in n.named_children() {
                    if c.kind == "identifier" {
                        self.drop_ident(c);
                    } else {
                        self.cs_stmt(c, out);
                    }
                }
            }
            "switch_statement" => {
                let subject = self.cs_cond(n.child_by_field("value"));
                let Some(body) = n.child_by_field("body") else {
                    out.push(self.opaque_stmt(n));
                    return;
                };
                let mut arms = Vec::new();
                for section in body.named_children().filter(|c| c.kind == "switch_section") {
                    let mut labels = Vec::new();
                    let mut stmts = Vec::new();
                    let mut in_labels = true;
                    for c in &section.children {
                        if !c.is_named {
                            if self.text(c) == "default" {
                                labels.push(None);
                            }
                            continue;
                        }
                        if in_labels && (c.kind == "constant_pattern" || c.kind.ends_with("_pattern")) {
                            let e = match c.named_children().next() {
                                Some(v) if c.kind == "constant_pattern" => self.cs_expr(v),
                                _ => self.opaque_expr(c),
                            };
                            labels.push(Some(e));
                        } else {
                            in_labels = false;
                            self.cs_stmt(c, &mut stmts);
                        }
                    }
                    arms.push(SwitchArm { labels, body: stmts });
                }
                out.extend(switch_chain(subject, arms));
            }
            "local_function_statement" => {
                if let Some(f) = self.cs_function(n) {
                    out.push(Stmt::Func(f));
                }
            }
            "empty_statement" => {}
            _ => out.push(self.opaque_stmt(n)),
        }
    }

    fn cs_args(&mut self, n: Option<&SyntaxNode>) -> Vec<Expr> {
        let Some(list) = n else { return Vec::new() };
        let mut out = Vec::new();
        for a in list.named_children() {
            let value = a.named_children().filter(|c| c.field != Some("name")).last();
            let e = match value {
                Some(v) => self.cs_expr(v),
                None => self.cs_expr(a),
            };
            match a.child_by_field("name") {
                Some(name) => out.push(Expr::KwArg {
                    name: self.name(name),
                    value: boxed(e),
                }),
                None => out.push(e),
            }
        }
        out
    }

    pub(super) fn cs_expr(&mut self, n: &SyntaxNode) -> Expr {
        match n.kind {
            "identifier" => self.name_expr(n),
            "this" | "this_expression" => self.opaque_expr(n),
            "integer_literal" | "real_literal" | "string_literal" | "character_literal" | "boolean_literal"
            | "null_literal" | "verbatim_string_literal" | "raw_string_literal" => self.literal(n),
            "parenthesized_expression" => match n.named_children().next() {
                Some(inner) => self.cs_expr(inner),
                None => self.opaque_expr(n),
            },
            "binary_expression" => {
                let (Some(l), Some(op), Some(r)) = (
                    n.child_by_field("left"),
                    n.child_by_field("operator"),
                    n.child_by_field("right"),
                ) else {
                    return self.opaque_expr(n);
                };
                let op = self.text(op);
                if op == "??" {
                    return self.opaque_expr(n);
                }
                Expr::binary(op, self.cs_expr(l), self.cs_expr(r))
            }
            "prefix_unary_expression" => {
                let op = n.children.iter().find(|c| !c.is_named).map(|c| self.text(c));
                match (op, n.named_children().next()) {
                    (Some(op), Some(o)) if matches!(op, "-" | "+" | "!" | "~") => Expr::unary(op, self.cs_expr(o)),
                    _ => self.opaque_expr(n),
                }
            }
            "conditional_expression" => {
                let (Some(c), Some(t), Some(e)) = (
                    n.child_by_field("condition"),
                    n.child_by_field("consequence"),
                    n.child_by_field("alternative"),
                ) else {
                    return self.opaque_expr(n);
                };
                Expr::Ternary {
                    cond: boxed(self.cs_expr(c)),
                    then: boxed(self.cs_expr(t)),
                    otherwise: boxed(self.cs_expr(e)),
                }
            }
            "invocation_expression" => {
                let Some(f) = n.child_by_field("function") else {
                    return self.opaque_expr(n);
                };
                let callee = self.cs_expr(f);
                let args = self.cs_args(n.child_by_field("arguments"));
                Expr::call(callee, args)
            }
            "member_access_expression" => {
                let (Some(o), Some(name)) = (n.child_by_field("expression"), n.child_by_field("name")) else {
                    return self.opaque_expr(n);
                };
                if o.kind == "this" || self.text(o) == "this" {
                    return self.name_expr(name);
                }
                if name.kind != "identifier" {
                    return self.opaque_expr(n);
                }
                Expr::Member {
                    object: boxed(self.cs_expr(o)),
                    name: self.name(name),
                }
            }
            "element_access_expression" => {
                let (Some(o), Some(sub)) = (n.child_by_field("expression"), n.child_by_field("subscript")) else {
                    return self.opaque_expr(n);
                };
                let idx: Vec<&SyntaxNode> = sub.named_children().collect();
                if idx.len() != 1 {
                    return self.opaque_expr(n);
                }
                let index = match idx[0].named_children().next() {
                    Some(v) if idx[0].kind == "argument" => self.cs_expr(v),
                    _ => self.cs_expr(idx[0]),
                };
                Expr::Index {
                    object: boxed(self.cs_expr(o)),
                    index: boxed(index),
                }
            }
            "object_creation_expression" => {
                let Some(t) = n.child_by_field("type") else {
                    return self.opaque_expr(n);
                };
                if n.child_by_field("initializer").is_some() {
                    return self.opaque_expr(n);
                }
                let ty = self.cs_type(t);
                let args = self.cs_args(n.child_by_field("arguments"));
                Expr::TypeCall { ty, args }
            }
            "array_creation_expression" => {
                if let Some(init) = n.named_children().find(|c| c.kind == "initializer_expression") {
                    return self.cs_expr(init);
                }
                let Some(t) = n.child_by_field("type") else {
                    return self.opaque_expr(n);
                };
                let elem = match t.child_by_field("type") {
                    Some(e) => self.cs_type(e),
                    None => return self.opaque_expr(n),
                };
                let dims: Vec<Expr> = match t.child_by_field("rank") {
                    Some(r) => r.named_children().map(|d| self.cs_expr(d)).collect(),
                    None => Vec::new(),
                };
                if dims.len() != 1 {
                    return self.opaque_expr(n);
                }
                Expr::NewArray { ty: elem, dims }
            }
            "implicit_array_creation_expression" => match n.named_children().find(|c| c.kind == "initializer_expression") {
                Some(init) => self.cs_expr(init),
                None => self.opaque_expr(n),
            },
            "initializer_expression" => Expr::List(n.named_children().map(|c| self.cs_expr(c)).collect()),
            // `f(b * a)` parses as declaring a pointer `a`.
            "declaration_expression" => {
                let (Some(t), Some(name)) = (n.child_by_field("type"), n.child_by_field("name")) else {
                    return self.opaque_expr(n);
                };
                match t.named_children().next() {
                    Some(elem) if t.kind == "pointer_type" && elem.kind == "identifier" => {
                        Expr::binary("*", self.name_expr(elem), self.name_expr(name))
                    }
                    _ => self.opaque_expr(n),
                }
            }
            "cast_expression" => {
                let (Some(t), Some(v)) = (n.child_by_field("type"), n.child_by_field("value")) else {
                    return self.opaque_expr(n);
                };
                let ty = self.cs_type(t);
                Expr::TypeCall {
                    ty,
                    args: alloc::vec![self.cs_expr(v)],
                }
            }
            "predefined_type" => Expr::Name(Name::Raw(self.text(n).into())),
            "generic_name" => match n.named_children().find(|c| c.kind == "identifier") {
                Some(id) => self.name_expr(id),
                None => self.opaque_expr(n),
            },
            _ if n.is_leaf() => self.leaf_expr(n),
            _ => self.opaque_expr(n),
        }
    }
}
