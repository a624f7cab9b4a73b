use alloc::boxed::Box;
use alloc::vec::Vec;

use super::{boxed, compound_assign, if_chain, inc_dec, make_for, switch_chain, Lowerer, SwitchArm};
use crate::ir::{binary_prec, Expr, Function, Name, Param, Stmt, TypeRef};
use crate::syntax::SyntaxNode;

/// Walk through reference, pointer and array declarators to the declared name.
/// Array layers are returned innermost last, as their size expressions.
fn unwrap_declarator<'n>(mut d: &'n SyntaxNode, sizes: &mut Vec<Option<&'n SyntaxNode>>) -> Option<&'n SyntaxNode> {
    loop {
        match d.kind {
            "identifier" | "field_identifier" | "destructor_name" | "operator_name" => return Some(d),
            "array_declarator" => {
                sizes.push(d.child_by_field("size"));
                d = d.child_by_field("declarator")?;
            }
            "init_declarator" | "pointer_declarator" | "function_declarator" => d = d.child_by_field("declarator")?,
            "reference_declarator" | "parenthesized_declarator" => d = d.named_children().next()?,
            _ => return None,
        }
    }
}

impl Lowerer<'_> {
    pub(super) fn cpp_function(&mut self, n: &SyntaxNode) -> Option<Function> {
        let mut decl = n.child_by_field("declarator")?;
        while decl.kind != "function_declarator" {
            decl = match decl.kind {
                "pointer_declarator" => decl.child_by_field("declarator")?,
                "reference_declarator" => decl.named_children().next()?,
                _ => return None,
            };
        }
        let mut sizes = Vec::new();
        let name = unwrap_declarator(decl.child_by_field("declarator")?, &mut sizes)?;
        let name = self.name(name);
        let ret = match n.child_by_field("type") {
            Some(t) if self.text(t) == "void" => None,
            Some(t) => Some(self.cpp_type(t)),
            None => None,
        };
        let mut params = Vec::new();
        if let Some(ps) = decl.child_by_field("parameters") {
            for p in ps.named_children() {
                let Some(d) = p.child_by_field("declarator") else { continue };
                let mut sizes = Vec::new();
                let Some(pname) = unwrap_declarator(d, &mut sizes) else { continue };
                let mut ty = match p.child_by_field("type") {
                    Some(t) => self.cpp_type(t),
                    None => TypeRef::prim("var"),
                };
                for _ in &sizes {
                    ty = TypeRef::Array(Box::new(ty));
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

    pub(super) fn cpp_type(&mut self, n: &SyntaxNode) -> TypeRef {
        match n.kind {
            "primitive_type" => TypeRef::Prim(self.text(n).into()),
            "sized_type_specifier" => {
                let words: Vec<&str> = self.text(n).split_whitespace().collect();
                TypeRef::Prim(words.join(" "))
            }
            "placeholder_type_specifier" | "auto" => TypeRef::prim("var"),
            "type_identifier" | "namespace_identifier" => TypeRef::User(self.name(n)),
            "template_type" => match n.child_by_field("name") {
                Some(base) => TypeRef::User(Name::Raw(alloc::format!("{}<>", self.text(base)))),
                None => TypeRef::prim("var"),
            },
            "qualified_identifier" => match n.child_by_field("name") {
                Some(base) => self.cpp_type(base),
                None => TypeRef::prim("var"),
            },
            "type_descriptor" => match n.child_by_field("type") {
                Some(t) => self.cpp_type(t),
                None => TypeRef::prim("var"),
            },
            _ => TypeRef::User(Name::Raw(self.text(n).into())),
        }
    }

    fn cpp_declaration(&mut self, n: &SyntaxNode, out: &mut Vec<Stmt>) {
        let base = match n.child_by_field("type") {
            Some(t) => self.cpp_type(t),
            None => TypeRef::prim("var"),
        };
        for d in n.children_by_field("declarator") {
            let mut sizes = Vec::new();
            let Some(name) = unwrap_declarator(d, &mut sizes) else {
                out.push(self.opaque_stmt(n));
                return;
            };
            let mut ty = base.clone();
            for _ in &sizes {
                ty = TypeRef::Array(Box::new(ty));
            }
            let init = match d.child_by_field("value") {
                Some(v) if v.kind == "argument_list" => Some(Expr::TypeCall {
                    ty: base.clone(),
                    args: self.cpp_args(Some(v)),
                }),
                Some(v) => Some(self.cpp_expr(v)),
                // `T a[n][m];` allocates; sizes were collected innermost first.
                None if !sizes.is_empty() && sizes.iter().all(Option::is_some) => {
                    let dims = sizes.iter().rev().flatten().map(|s| self.cpp_expr(s)).collect();
                    Some(Expr::NewArray { ty: base.clone(), dims })
                }
                None => None,
            };
            out.push(Stmt::Decl {
                ty,
                name: self.name(name),
                init,
            });
        }
    }

    fn cpp_simple(&mut self, n: &SyntaxNode, out: &mut Vec<Stmt>) {
        match n.kind {
            "assignment_expression" => {
                let (Some(l), Some(r)) = (n.child_by_field("left"), n.child_by_field("right")) else {
                    out.push(Stmt::Expr(self.opaque_expr(n)));
                    return;
                };
                let op = n.child_by_field("operator").map(|o| self.text(o)).unwrap_or("=");
                let target = self.cpp_expr(l);
                let value = self.cpp_expr(r);
                out.push(compound_assign(target, op, value));
            }
            "update_expression" => {
                let (Some(a), Some(op)) = (n.child_by_field("argument"), n.child_by_field("operator")) else {
                    out.push(Stmt::Expr(self.opaque_expr(n)));
                    return;
                };
                let op = self.text(op);
                let target = self.cpp_expr(a);
                out.push(inc_dec(target, op));
            }
            "comma_expression" => {
                for c in n.named_children() {
                    self.cpp_simple(c, out);
                }
            }
            "declaration" => self.cpp_declaration(n, out),
            _ => {
                let e = self.cpp_expr(n);
                out.push(Stmt::Expr(e));
            }
        }
    }

    fn cpp_cond(&mut self, n: Option<&SyntaxNode>) -> Expr {
        match n {
            Some(c) if c.kind == "condition_clause" => match c.child_by_field("value") {
                Some(v) if c.named_children().count() == 1 => self.cpp_expr(v),
                _ => self.opaque_expr(c),
            },
            Some(c) if c.kind == "parenthesized_expression" => match c.named_children().next() {
                Some(inner) => self.cpp_expr(inner),
                None => Expr::lit("true"),
            },
            Some(c) => self.cpp_expr(c),
            None => Expr::lit("true"),
        }
    }

    pub(super) fn cpp_stmt(&mut self, n: &SyntaxNode, out: &mut Vec<Stmt>) {
        match n.kind {
            "compound_statement" => self.block_children(n, out),
            "declaration" => self.cpp_declaration(n, out),
            "expression_statement" => {
                if let Some(e) = n.named_children().next() {
                    self.cpp_simple(e, out);
                }
            }
            "if_statement" => {
                let cond = self.cpp_cond(n.child_by_field("condition"));
                let then = n.child_by_field("consequence").map(|c| self.body(c)).unwrap_or_default();
                let otherwise = n.child_by_field("alternative").map(|a| {
                    let mut stmts = Vec::new();
                    for c in a.named_children() {
                        self.cpp_stmt(c, &mut stmts);
                    }
                    stmts
                });
                out.push(if_chain(cond, then, otherwise));
            }
            "while_statement" => {
                let cond = self.cpp_cond(n.child_by_field("condition"));
                let body = n.child_by_field("body").map(|b| self.body(b)).unwrap_or_default();
                out.push(Stmt::While { cond, body });
            }
            "for_statement" => {
                let mut init = Vec::new();
                for i in n.children_by_field("initializer") {
                    self.cpp_simple(i, &mut init);
                }
                let cond = n.child_by_field("condition").map(|c| self.cpp_cond(Some(c)));
                let mut update = Vec::new();
                for u in n.children_by_field("update") {
                    self.cpp_simple(u, &mut update);
                }
                let body = n.child_by_field("body").map(|b| self.body(b)).unwrap_or_default();
                out.push(make_for(init, cond, update, body));
            }
            "for_range_loop" => {
                let mut sizes = Vec::new();
                let var = n.child_by_field("declarator").and_then(|d| unwrap_declarator(d, &mut sizes));
                let (Some(var), Some(right)) = (var, n.child_by_field("right")) else {
                    out.push(self.opaque_stmt(n));
                    return;
                };
                let var = self.name(var);
                let iter = self.cpp_expr(right);
                let body = n.child_by_field("body").map(|b| self.body(b)).unwrap_or_default();
                out.push(Stmt::ForEach { var, iter, body });
            }
            "return_statement" => {
                let value = n.named_children().next().map(|e| self.cpp_expr(e));
                out.push(Stmt::Return(value));
            }
            "break_statement" => out.push(Stmt::Break),
            "continue_statement" => out.push(Stmt::Continue),
            "labeled_statement" => {
                for c in n.named_children() {
                    if c.field == Some("label") {
                        self.drop_ident(c);
                    } else {
                        self.cpp_stmt(c, out);
                    }
                }
            }
            "switch_statement" => {
                let subject = self.cpp_cond(n.child_by_field("condition"));
                let Some(body) = n.child_by_field("body") else {
                    out.push(self.opaque_stmt(n));
                    return;
                };
                let mut arms = Vec::new();
                for case in body.named_children() {
                    if case.kind != "case_statement" {
                        continue;
                    }
                    let label = case.child_by_field("value").map(|v| self.cpp_expr(v));
                    let mut stmts = Vec::new();
                    for c in case.named_children().filter(|c| c.field != Some("value")) {
                        self.cpp_stmt(c, &mut stmts);
                    }
                    arms.push(SwitchArm {
                        labels: alloc::vec![label],
                        body: stmts,
                    });
                }
                out.extend(switch_chain(subject, arms));
            }
            "function_definition" => {
                if let Some(f) = self.cpp_function(n) {
                    out.push(Stmt::Func(f));
                }
            }
            ";" => {}
            _ => out.push(self.opaque_stmt(n)),
        }
    }

    fn cpp_args(&mut self, n: Option<&SyntaxNode>) -> Vec<Expr> {
        match n {
            Some(a) => a.named_children().map(|c| self.cpp_expr(c)).collect(),
            None => Vec::new(),
        }
    }

    fn cpp_cast_type(&mut self, tf: &SyntaxNode) -> Option<TypeRef> {
        let name = tf.child_by_field("name")?;
        if !self.text(name).ends_with("_cast") {
            return None;
        }
        let args = tf.child_by_field("arguments")?;
        let t = args.named_children().next()?;
        self.drop_ident(name);
        Some(self.cpp_type(t))
    }

    pub(super) fn cpp_expr(&mut self, n: &SyntaxNode) -> Expr {
        match n.kind {
            "identifier" | "field_identifier" | "type_identifier" | "namespace_identifier" => self.name_expr(n),
            "this" => self.opaque_expr(n),
            "number_literal" | "string_literal" | "char_literal" | "raw_string_literal" | "true" | "false" | "null"
            | "nullptr" => self.literal(n),
            "parenthesized_expression" => match n.named_children().next() {
                Some(inner) => self.cpp_expr(inner),
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
                let op = match self.text(op) {
                    "and" => "&&",
                    "or" => "||",
                    o => o,
                };
                // `(a * (b)) + c * d` reads as a cast of `+c`; regroup by precedence.
                if let Some((head, inner, arg)) = self.misread_cast(l) {
                    if binary_prec(op) > binary_prec(inner) {
                        let rhs = Expr::binary(op, self.cpp_expr(arg), self.cpp_expr(r));
                        return Expr::binary(inner, head, rhs);
                    }
                }
                Expr::binary(op, self.cpp_expr(l), self.cpp_expr(r))
            }
            "unary_expression" => {
                let (Some(op), Some(a)) = (n.child_by_field("operator"), n.child_by_field("argument")) else {
                    return self.opaque_expr(n);
                };
                let op = match self.text(op) {
                    "not" => "!",
                    o => o,
                };
                Expr::unary(op, self.cpp_expr(a))
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
                    cond: boxed(self.cpp_expr(c)),
                    then: boxed(self.cpp_expr(t)),
                    otherwise: boxed(self.cpp_expr(e)),
                }
            }
            "call_expression" => {
                let Some(f) = n.child_by_field("function") else {
                    return self.opaque_expr(n);
                };
                let args = self.cpp_args(n.child_by_field("arguments"));
                match f.kind {
                    "primitive_type" | "sized_type_specifier" | "template_type" => Expr::TypeCall {
                        ty: self.cpp_type(f),
                        args,
                    },
                    "template_function" => match self.cpp_cast_type(f) {
                        Some(ty) => Expr::TypeCall { ty, args },
                        None => match f.child_by_field("name") {
                            Some(name) => Expr::call(self.cpp_expr(name), args),
                            None => self.opaque_expr(n),
                        },
                    },
                    _ => Expr::call(self.cpp_expr(f), args),
                }
            }
            "field_expression" => {
                let (Some(a), Some(f)) = (n.child_by_field("argument"), n.child_by_field("field")) else {
                    return self.opaque_expr(n);
                };
                if a.kind == "this" {
                    return self.name_expr(f);
                }
                if !f.kind.contains("identifier") {
                    return self.opaque_expr(n);
                }
                Expr::Member {
                    object: boxed(self.cpp_expr(a)),
                    name: self.name(f),
                }
            }
            "subscript_expression" => {
                let Some(a) = n.child_by_field("argument") else {
                    return self.opaque_expr(n);
                };
                let index = match n.child_by_field("indices").or_else(|| n.child_by_field("index")) {
                    Some(i) if i.kind == "subscript_argument_list" => {
                        let items: Vec<&SyntaxNode> = i.named_children().collect();
                        if items.len() != 1 {
                            return self.opaque_expr(n);
                        }
                        self.cpp_expr(items[0])
                    }
                    Some(i) => self.cpp_expr(i),
                    None => return self.opaque_expr(n),
                };
                Expr::Index {
                    object: boxed(self.cpp_expr(a)),
                    index: boxed(index),
                }
            }
            "new_expression" => {
                let Some(t) = n.child_by_field("type") else {
                    return self.opaque_expr(n);
                };
                let ty = self.cpp_type(t);
                match n.child_by_field("declarator") {
                    Some(d) => match d.child_by_field("length") {
                        Some(len) if d.named_children().count() == 1 => Expr::NewArray {
                            ty,
                            dims: alloc::vec![self.cpp_expr(len)],
                        },
                        _ => self.opaque_expr(n),
                    },
                    None => {
                        let args = self.cpp_args(n.child_by_field("arguments"));
                        Expr::TypeCall { ty, args }
                    }
                }
            }
            "cast_expression" => {
                if let Some((head, op, arg)) = self.misread_cast(n) {
                    return Expr::binary(op, head, self.cpp_expr(arg));
                }
                let (Some(t), Some(v)) = (n.child_by_field("type"), n.child_by_field("value")) else {
                    return self.opaque_expr(n);
                };
                let ty = self.cpp_type(t);
                Expr::TypeCall {
                    ty,
                    args: alloc::vec![self.cpp_expr(v)],
                }
            }
            "compound_literal_expression" => {
                let (Some(t), Some(v)) = (n.child_by_field("type"), n.child_by_field("value")) else {
                    return self.opaque_expr(n);
                };
                let ty = self.cpp_type(t);
                Expr::TypeCall {
                    ty,
                    args: v.named_children().map(|c| self.cpp_expr(c)).collect(),
                }
            }
            "initializer_list" => Expr::List(n.named_children().map(|c| self.cpp_expr(c)).collect()),
            _ if n.is_leaf() => self.leaf_expr(n),
            _ => self.opaque_expr(n),
        }
    }

    /// The grammar reads `(a * (b * c)) + d` as a cast to a function
    /// pointer type applied to `+d`. Returns the product, the operator and
    /// its right operand.
    fn misread_cast<'n>(&mut self, n: &'n SyntaxNode) -> Option<(Expr, &'static str, &'n SyntaxNode)> {
        if n.kind != "cast_expression" {
            return None;
        }
        let t = n.child_by_field("type")?;
        let v = n.child_by_field("value")?;
        let op = match v.kind {
            "unary_expression" | "pointer_expression" => match self.text(v.child_by_field("operator")?) {
                "+" => "+",
                "-" => "-",
                "*" => "*",
                "&" => "&",
                _ => return None,
            },
            _ => return None,
        };
        let arg = v.child_by_field("argument")?;
        let base = t.child_by_field("type").filter(|b| b.kind == "type_identifier")?;
        let head = self.abstract_product(self.name_expr(base), t.child_by_field("declarator")?)?;
        Some((head, op, arg))
    }

    fn abstract_product(&mut self, lhs: Expr, d: &SyntaxNode) -> Option<Expr> {
        let op = match d.kind {
            "abstract_pointer_declarator" => "*",
            "abstract_reference_declarator" => "&",
            _ => return None,
        };
        let f = d.child_by_field("declarator").or_else(|| d.named_children().next())?;
        if f.kind != "abstract_function_declarator" || f.child_by_field("declarator").is_some() {
            return None;
        }
        let params: Vec<&SyntaxNode> = f.child_by_field("parameters")?.named_children().collect();
        let [p] = params[..] else { return None };
        let rhs = self.param_product(p)?;
        Some(Expr::binary(op, lhs, rhs))
    }

    fn param_product(&mut self, p: &SyntaxNode) -> Option<Expr> {
        if p.kind != "parameter_declaration" {
            return None;
        }
        let t = p.child_by_field("type").filter(|t| t.kind == "type_identifier")?;
        let lhs = self.name_expr(t);
        let Some(d) = p.child_by_field("declarator") else {
            return Some(lhs);
        };
        let op = match d.kind {
            "pointer_declarator" => "*",
            "reference_declarator" => "&",
            _ => return self.abstract_product(lhs, d),
        };
        let inner = d.child_by_field("declarator").or_else(|| d.named_children().next())?;
        if inner.kind != "identifier" {
            return None;
        }
        Some(Expr::binary(op, lhs, self.name_expr(inner)))
    }
}
