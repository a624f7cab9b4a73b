use alloc::boxed::Box;
use alloc::vec::Vec;

use super::{boxed, compound_assign, if_chain, inc_dec, make_for, switch_chain, Lowerer, SwitchArm};
use crate::ir::{Expr, Function, Name, Param, Stmt, TypeRef};
use crate::syntax::SyntaxNode;

impl Lowerer<'_> {
    pub(super) fn java_function(&mut self, n: &SyntaxNode) -> Option<Function> {
        let name = self.name(n.child_by_field("name")?);
        let ret = match n.child_by_field("type") {
            Some(t) if t.kind != "void_type" => Some(self.java_type(t)),
            _ => None,
        };
        let mut params = Vec::new();
        if let Some(ps) = n.child_by_field("parameters") {
            for p in ps.named_children() {
                let Some(pname) = p.child_by_field("name").or_else(|| p.find_first(|c| c.kind == "identifier"))
                else {
                    continue;
                };
                let mut ty = match p.child_by_field("type").or_else(|| p.named_children().next()) {
                    Some(t) => self.java_type(t),
                    None => TypeRef::prim("var"),
                };
                if p.kind == "spread_parameter" {
                    ty = TypeRef::Array(Box::new(ty));
                }
                if let Some(d) = p.child_by_field("dimensions") {
                    ty = wrap_dims(ty, d);
                }
                params.push(Param {
                    ty,
                    name: self.name(pname),
                });
            }
        }
        let body = match n.child_by_field("body") {
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

    pub(super) fn java_type(&mut self, n: &SyntaxNode) -> TypeRef {
        match n.kind {
            "integral_type" | "floating_point_type" | "boolean_type" | "void_type" => {
                TypeRef::Prim(self.text(n).into())
            }
            "type_identifier" | "identifier" => TypeRef::User(self.name(n)),
            "generic_type" => {
                let base = n.named_children().find(|c| c.kind != "type_arguments");
                match base.map(|b| self.java_type(b)) {
                    Some(TypeRef::User(Name::Raw(s))) => TypeRef::User(Name::Raw(alloc::format!("{s}<>"))),
                    Some(t) => t,
                    None => TypeRef::prim("var"),
                }
            }
            "scoped_type_identifier" => match n.named_children().last() {
                Some(last) => self.java_type(last),
                None => TypeRef::prim("var"),
            },
            "array_type" => {
                let elem = match n.child_by_field("element") {
                    Some(e) => self.java_type(e),
                    None => TypeRef::prim("var"),
                };
                match n.child_by_field("dimensions") {
                    Some(d) => wrap_dims(elem, d),
                    None => TypeRef::Array(Box::new(elem)),
                }
            }
            _ => TypeRef::User(Name::Raw(self.text(n).into())),
        }
    }

    fn java_declarators(&mut self, n: &SyntaxNode, out: &mut Vec<Stmt>) {
        let base = match n.child_by_field("type") {
            Some(t) => self.java_type(t),
            None => TypeRef::prim("var"),
        };
        for d in n.children_by_field("declarator") {
            let Some(name) = d.child_by_field("name") else { continue };
            let ty = match d.child_by_field("dimensions") {
                Some(dims) => wrap_dims(base.clone(), dims),
                None => base.clone(),
            };
            let init = d.child_by_field("value").map(|v| self.java_expr(v));
            out.push(Stmt::Decl {
                ty,
                name: self.name(name),
                init,
            });
        }
    }

    fn java_simple(&mut self, n: &SyntaxNode, out: &mut Vec<Stmt>) {
        match n.kind {
            "assignment_expression" => {
                let (Some(l), Some(r)) = (n.child_by_field("left"), n.child_by_field("right")) else {
                    out.push(Stmt::Expr(self.opaque_expr(n)));
                    return;
                };
                let op = n.child_by_field("operator").map(|o| self.text(o)).unwrap_or("=");
                let target = self.java_expr(l);
                let value = self.java_expr(r);
                out.push(compound_assign(target, op, value));
            }
            "update_expression" => {
                let operand = n.named_children().next();
                let op = n.children.iter().find(|c| !c.is_named).map(|c| self.text(c));
                match (operand, op) {
                    (Some(o), Some(op)) => {
                        let target = self.java_expr(o);
                        out.push(inc_dec(target, op));
                    }
                    _ => out.push(Stmt::Expr(self.opaque_expr(n))),
                }
            }
            "local_variable_declaration" => self.java_declarators(n, out),
            _ => {
                let e = self.java_expr(n);
                out.push(Stmt::Expr(e));
            }
        }
    }

    fn java_cond(&mut self, n: Option<&SyntaxNode>) -> Expr {
        match n {
            Some(c) if c.kind == "parenthesized_expression" => match c.named_children().next() {
                Some(inner) => self.java_expr(inner),
                None => Expr::lit("true"),
            },
            Some(c) => self.java_expr(c),
            None => Expr::lit("true"),
        }
    }

    pub(super) fn java_stmt(&mut self, n: &SyntaxNode, out: &mut Vec<Stmt>) {
        match n.kind {
            "block" => self.block_children(n, out),
            "local_variable_declaration" => self.java_declarators(n, out),
            "expression_statement" => {
                if let Some(e) = n.named_children().next() {
                    self.java_simple(e, out);
                }
            }
            "if_statement" => {
                let cond = self.java_cond(n.child_by_field("condition"));
                let then = n.child_by_field("consequence").map(|c| self.body(c)).unwrap_or_default();
                let otherwise = n.child_by_field("alternative").map(|a| self.body(a));
                out.push(if_chain(cond, then, otherwise));
            }
            "while_statement" => {
                let cond = self.java_cond(n.child_by_field("condition"));
                let body = n.child_by_field("body").map(|b| self.body(b)).unwrap_or_default();
                out.push(Stmt::While { cond, body });
            }
            "for_statement" => {
                let mut init = Vec::new();
                for i in n.children_by_field("init") {
                    self.java_simple(i, &mut init);
                }
                let cond = n.child_by_field("condition").map(|c| self.java_expr(c));
                let mut update = Vec::new();
                for u in n.children_by_field("update") {
                    self.java_simple(u, &mut update);
                }
                let body = n.child_by_field("body").map(|b| self.body(b)).unwrap_or_default();
                out.push(make_for(init, cond, update, body));
            }
            "enhanced_for_statement" => {
                let (Some(name), Some(value)) = (n.child_by_field("name"), n.child_by_field("value")) else {
                    out.push(self.opaque_stmt(n));
                    return;
                };
                let var = self.name(name);
                let iter = self.java_expr(value);
                let body = n.child_by_field("body").map(|b| self.body(b)).unwrap_or_default();
                out.push(Stmt::ForEach { var, iter, body });
            }
            "return_statement" => {
                let value = n.named_children().next().map(|e| self.java_expr(e));
                out.push(Stmt::Return(value));
            }
            "break_statement" | "continue_statement" => {
                if let Some(label) = n.named_children().next() {
                    self.drop_ident(label);
                }
                out.push(if n.kind == "break_statement" { Stmt::Break } else { Stmt::Continue });
            }
            "labeled_statement" => {
                for c in n.named_children() {
                    if c.kind == "identifier" {
                        self.drop_ident(c);
                    } else {
                        self.java_stmt(c, out);
                    }
                }
            }
            "switch_expression" | "switch_statement" => {
                let subject = self.java_cond(n.child_by_field("condition"));
                let Some(block) = n.child_by_field("body") else {
                    out.push(self.opaque_stmt(n));
                    return;
                };
                let mut arms = Vec::new();
                for group in block.named_children() {
                    let mut labels = Vec::new();
                    let mut body = Vec::new();
                    for c in group.named_children() {
                        if c.kind == "switch_label" {
                            let exprs: Vec<&SyntaxNode> = c.named_children().collect();
                            if exprs.is_empty() {
                                labels.push(None);
                            }
                            for e in exprs {
                                labels.push(Some(self.java_expr(e)));
                            }
                        } else if group.kind == "switch_rule" && c.kind != "block" && !c.kind.ends_with("_statement") {
                            let e = self.java_expr(c);
                            body.push(Stmt::Expr(e));
                        } else {
                            self.java_stmt(c, &mut body);
                        }
                    }
                    arms.push(SwitchArm { labels, body });
                }
                out.extend(switch_chain(subject, arms));
            }
            "local_class_declaration" | "class_declaration" => out.push(self.opaque_stmt(n)),
            ";" | "empty_statement" => {}
            _ => out.push(self.opaque_stmt(n)),
        }
    }

    fn java_args(&mut self, n: Option<&SyntaxNode>) -> Vec<Expr> {
        match n {
            Some(a) => a.named_children().map(|c| self.java_expr(c)).collect::<Vec<_>>(),
            None => Vec::new(),
        }
    }

    pub(super) fn java_expr(&mut self, n: &SyntaxNode) -> Expr {
        match n.kind {
            "identifier" | "type_identifier" => self.name_expr(n),
            "this" => self.opaque_expr(n),
            "decimal_integer_literal"
            | "hex_integer_literal"
            | "octal_integer_literal"
            | "binary_integer_literal"
            | "decimal_floating_point_literal"
            | "hex_floating_point_literal"
            | "string_literal"
            | "character_literal"
            | "true"
            | "false"
            | "null_literal" => self.literal(n),
            "parenthesized_expression" => match n.named_children().next() {
                Some(inner) => self.java_expr(inner),
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
                Expr::binary(op, self.java_expr(l), self.java_expr(r))
            }
            "unary_expression" => {
                let (Some(op), Some(o)) = (n.child_by_field("operator"), n.child_by_field("operand")) else {
                    return self.opaque_expr(n);
                };
                let op = self.text(op);
                Expr::unary(op, self.java_expr(o))
            }
            "ternary_expression" => {
                let (Some(c), Some(t), Some(e)) = (
                    n.child_by_field("condition"),
                    n.child_by_field("consequence"),
                    n.child_by_field("alternative"),
                ) else {
                    return self.opaque_expr(n);
                };
                Expr::Ternary {
                    cond: boxed(self.java_expr(c)),
                    then: boxed(self.java_expr(t)),
                    otherwise: boxed(self.java_expr(e)),
                }
            }
            "method_invocation" => {
                let Some(name) = n.child_by_field("name") else {
                    return self.opaque_expr(n);
                };
                let args = self.java_args(n.child_by_field("arguments"));
                let callee = match n.child_by_field("object") {
                    None => self.name_expr(name),
                    Some(o) if o.kind == "this" => self.name_expr(name),
                    Some(o) => Expr::Member {
                        object: boxed(self.java_expr(o)),
                        name: self.name(name),
                    },
                };
                Expr::call(callee, args)
            }
            "field_access" => {
                let (Some(o), Some(f)) = (n.child_by_field("object"), n.child_by_field("field")) else {
                    return self.opaque_expr(n);
                };
                if o.kind == "this" {
                    return self.name_expr(f);
                }
                Expr::Member {
                    object: boxed(self.java_expr(o)),
                    name: self.name(f),
                }
            }
            "array_access" => {
                let (Some(a), Some(i)) = (n.child_by_field("array"), n.child_by_field("index")) else {
                    return self.opaque_expr(n);
                };
                Expr::Index {
                    object: boxed(self.java_expr(a)),
                    index: boxed(self.java_expr(i)),
                }
            }
            "object_creation_expression" => {
                if n.named_children().any(|c| c.kind == "class_body") {
                    return self.opaque_expr(n);
                }
                let Some(t) = n.child_by_field("type") else {
                    return self.opaque_expr(n);
                };
                let ty = self.java_type(t);
                let args = self.java_args(n.child_by_field("arguments"));
                Expr::TypeCall { ty, args }
            }
            "array_creation_expression" => {
                if let Some(v) = n.child_by_field("value") {
                    return self.java_expr(v);
                }
                let Some(t) = n.child_by_field("type") else {
                    return self.opaque_expr(n);
                };
                let mut ty = self.java_type(t);
                let mut dims = Vec::new();
                for d in n.children_by_field("dimensions") {
                    if d.kind == "dimensions_expr" {
                        if let Some(e) = d.named_children().next() {
                            dims.push(self.java_expr(e));
                        }
                    } else {
                        ty = wrap_dims(ty, d);
                    }
                }
                Expr::NewArray { ty, dims }
            }
            "array_initializer" => Expr::List(n.named_children().map(|c| self.java_expr(c)).collect()),
            "cast_expression" => {
                let (Some(t), Some(v)) = (n.child_by_field("type"), n.child_by_field("value")) else {
                    return self.opaque_expr(n);
                };
                let ty = self.java_type(t);
                Expr::TypeCall {
                    ty,
                    args: alloc::vec![self.java_expr(v)],
                }
            }
            _ if n.is_leaf() => self.leaf_expr(n),
            _ => self.opaque_expr(n),
        }
    }
}

/// Wrap `ty` in one array layer per `[]` pair of a `dimensions` node.
fn wrap_dims(mut ty: TypeRef, dims: &SyntaxNode) -> TypeRef {
    let count = dims.children.iter().filter(|c| c.kind == "[").count().max(1);
    for _ in 0..count {
        ty = TypeRef::Array(Box::new(ty));
    }
    ty
}
