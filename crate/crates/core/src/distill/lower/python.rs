use alloc::collections::BTreeSet;
use alloc::string::ToString;
use alloc::vec::Vec;

use super::{boxed, compound_assign, if_chain, Lowerer};
use crate::ir::{Expr, Function, Name, Param, Stmt, TypeRef};
use crate::syntax::SyntaxNode;

impl Lowerer<'_> {
    fn py_bind(&mut self, name: &str) -> bool {
        match self.scopes.last_mut() {
            Some(s) => s.insert(name.to_string()),
            None => false,
        }
    }

    pub(super) fn py_function(&mut self, n: &SyntaxNode) -> Option<Function> {
        let name = self.name(n.child_by_field("name")?);
        let ret = match n.child_by_field("return_type").map(|t| self.py_type(t)) {
            Some(t) if t.is_prim("void") => None,
            Some(t) => Some(t),
            // Unannotated functions that return a value get `var`.
            None => returns_value(n).then(|| TypeRef::prim("var")),
        };
        self.scopes.push(BTreeSet::new());
        let mut params = Vec::new();
        if let Some(ps) = n.child_by_field("parameters") {
            for p in ps.named_children() {
                let (pname, ty) = match p.kind {
                    "identifier" => (Some(p), None),
                    "typed_parameter" => (p.named_children().find(|c| c.kind == "identifier"), p.child_by_field("type")),
                    "default_parameter" | "typed_default_parameter" => (p.child_by_field("name"), p.child_by_field("type")),
                    _ => (None, None),
                };
                let Some(pname) = pname else {
                    // Splat parameters have no counterpart in the template grammar.
                    for id in p.preorder().filter(|c| c.kind == "identifier") {
                        self.drop_ident(id);
                    }
                    continue;
                };
                let text = self.text(pname);
                self.py_bind(text);
                if params.is_empty() && (text == "self" || text == "cls") {
                    self.drop_ident(pname);
                    continue;
                }
                let ty = match ty {
                    Some(t) => self.py_type(t),
                    None => TypeRef::prim("var"),
                };
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
        self.scopes.pop();
        Some(Function {
            name,
            ret,
            params,
            body,
        })
    }

    pub(super) fn py_type(&mut self, n: &SyntaxNode) -> TypeRef {
        match n.kind {
            "type" => match n.named_children().next() {
                Some(inner) => self.py_type(inner),
                None => TypeRef::prim("var"),
            },
            "identifier" => TypeRef::User(self.name(n)),
            "generic_type" => match n.named_children().find(|c| c.kind == "identifier") {
                // Builtin `list[T]` stands for a fixed array of T; `List[T]` for a vector.
                Some(base) if self.text(base) == "list" => {
                    self.drop_ident(base);
                    let elem = n
                        .named_children()
                        .find(|c| c.kind == "type_parameter")
                        .and_then(|tp| tp.named_children().next());
                    match elem {
                        Some(e) => TypeRef::Array(alloc::boxed::Box::new(self.py_type(e))),
                        None => TypeRef::User(Name::Raw("list<>".into())),
                    }
                }
                Some(base) => TypeRef::User(Name::Raw(alloc::format!("{}<>", self.text(base)))),
                None => TypeRef::prim("var"),
            },
            "attribute" => match n.child_by_field("attribute") {
                Some(a) => self.py_type(a),
                None => TypeRef::prim("var"),
            },
            "subscript" => match n.child_by_field("value") {
                Some(base) => TypeRef::User(Name::Raw(alloc::format!("{}<>", self.text(base)))),
                None => TypeRef::prim("var"),
            },
            "none" => TypeRef::prim("void"),
            _ => TypeRef::User(Name::Raw(self.text(n).into())),
        }
    }

    fn py_assignment(&mut self, n: &SyntaxNode, out: &mut Vec<Stmt>) {
        let (Some(l), Some(r)) = (n.child_by_field("left"), n.child_by_field("right")) else {
            // Bare annotation `x: int` declares without a value.
            if let (Some(l), Some(t)) = (n.child_by_field("left"), n.child_by_field("type")) {
                if l.kind == "identifier" {
                    self.py_bind(self.text(l));
                    let ty = self.py_type(t);
                    out.push(Stmt::Decl {
                        ty,
                        name: self.name(l),
                        init: None,
                    });
                    return;
                }
            }
            out.push(self.opaque_stmt(n));
            return;
        };
        if matches!(r.kind, "assignment" | "augmented_assignment" | "yield")
            || !matches!(l.kind, "identifier" | "attribute" | "subscript")
        {
            out.push(self.opaque_stmt(n));
            return;
        }
        let value = self.py_expr(r);
        if l.kind == "identifier" {
            let fresh = self.py_bind(self.text(l));
            let annotated = n.child_by_field("type");
            if fresh || annotated.is_some() {
                let ty = match annotated {
                    Some(t) => self.py_type(t),
                    None => TypeRef::prim("var"),
                };
                out.push(Stmt::Decl {
                    ty,
                    name: self.name(l),
                    init: Some(value),
                });
                return;
            }
        }
        let target = self.py_expr(l);
        out.push(Stmt::Assign { target, value });
    }

    fn py_simple(&mut self, n: &SyntaxNode, out: &mut Vec<Stmt>) {
        match n.kind {
            "assignment" => self.py_assignment(n, out),
            "augmented_assignment" => {
                let (Some(l), Some(op), Some(r)) = (
                    n.child_by_field("left"),
                    n.child_by_field("operator"),
                    n.child_by_field("right"),
                ) else {
                    out.push(self.opaque_stmt(n));
                    return;
                };
                let op = self.text(op);
                let target = self.py_expr(l);
                let value = self.py_expr(r);
                out.push(compound_assign(target, op, value));
            }
            _ => {
                let e = self.py_expr(n);
                out.push(Stmt::Expr(e));
            }
        }
    }

    pub(super) fn py_stmt(&mut self, n: &SyntaxNode, out: &mut Vec<Stmt>) {
        match n.kind {
            "block" | "module" => self.block_children(n, out),
            "expression_statement" => {
                let children: Vec<&SyntaxNode> = n.named_children().collect();
                match children.as_slice() {
                    [one] => self.py_simple(one, out),
                    _ => out.push(self.opaque_stmt(n)),
                }
            }
            "if_statement" => {
                let cond = self.py_cond(n.child_by_field("condition"));
                let then = n.child_by_field("consequence").map(|c| self.body(c)).unwrap_or_default();
                let mut branches = alloc::vec![(cond, then)];
                let mut otherwise = None;
                for alt in n.children_by_field("alternative") {
                    match alt.kind {
                        "elif_clause" => {
                            let c = self.py_cond(alt.child_by_field("condition"));
                            let b = alt.child_by_field("consequence").map(|b| self.body(b)).unwrap_or_default();
                            branches.push((c, b));
                        }
                        _ => {
                            otherwise = alt.child_by_field("body").map(|b| self.body(b));
                        }
                    }
                }
                // Reuse the C-family folding for `else:` holding a lone `if`.
                let first = branches.remove(0);
                match if_chain(first.0, first.1, otherwise) {
                    Stmt::If {
                        branches: mut head,
                        otherwise,
                    } => {
                        let tail = head.split_off(1);
                        head.extend(branches);
                        head.extend(tail);
                        out.push(Stmt::If { branches: head, otherwise });
                    }
                    s => out.push(s),
                }
            }
            "while_statement" => {
                if n.child_by_field("alternative").is_some() {
                    out.push(self.opaque_stmt(n));
                    return;
                }
                let cond = self.py_cond(n.child_by_field("condition"));
                let body = n.child_by_field("body").map(|b| self.body(b)).unwrap_or_default();
                out.push(Stmt::While { cond, body });
            }
            "for_statement" => self.py_for(n, out),
            "return_statement" => {
                let value = n.named_children().next().map(|e| self.py_expr(e));
                out.push(Stmt::Return(value));
            }
            "break_statement" => out.push(Stmt::Break),
            "continue_statement" => out.push(Stmt::Continue),
            "pass_statement" => {}
            "function_definition" => {
                if let Some(name) = n.child_by_field("name") {
                    self.py_bind(self.text(name));
                }
                if let Some(f) = self.py_function(n) {
                    out.push(Stmt::Func(f));
                }
            }
            _ => out.push(self.opaque_stmt(n)),
        }
    }

    fn py_cond(&mut self, n: Option<&SyntaxNode>) -> Expr {
        match n {
            Some(c) => self.py_expr(c),
            None => Expr::lit("true"),
        }
    }

    fn py_for(&mut self, n: &SyntaxNode, out: &mut Vec<Stmt>) {
        let (Some(left), Some(right)) = (n.child_by_field("left"), n.child_by_field("right")) else {
            out.push(self.opaque_stmt(n));
            return;
        };
        if left.kind != "identifier" || n.child_by_field("alternative").is_some() {
            out.push(self.opaque_stmt(n));
            return;
        }
        self.py_bind(self.text(left));
        let var = self.name(left);
        let range_args = match (right.kind, right.child_by_field("function"), right.child_by_field("arguments")) {
            ("call", Some(f), Some(a)) if self.text(f) == "range" && a.kind == "argument_list" => {
                let args: Vec<&SyntaxNode> = a.named_children().collect();
                if (1..=3).contains(&args.len()) && args.iter().all(|a| a.kind != "keyword_argument") {
                    self.drop_ident(f);
                    Some(args)
                } else {
                    None
                }
            }
            _ => None,
        };
        let body_node = n.child_by_field("body");
        match range_args {
            Some(args) => {
                let mut exprs: Vec<Expr> = args.into_iter().map(|a| self.py_expr(a)).collect();
                let (start, end, step) = match exprs.len() {
                    1 => (Expr::lit("0"), exprs.remove(0), None),
                    2 => {
                        let end = exprs.pop().unwrap_or_else(|| Expr::lit("0"));
                        (exprs.remove(0), end, None)
                    }
                    _ => {
                        let step = exprs.pop();
                        let end = exprs.pop().unwrap_or_else(|| Expr::lit("0"));
                        (exprs.remove(0), end, step.filter(|s| *s != Expr::lit("1")))
                    }
                };
                let body = body_node.map(|b| self.body(b)).unwrap_or_default();
                out.push(Stmt::ForRange {
                    var,
                    start,
                    end,
                    step,
                    body,
                });
            }
            None => {
                let iter = self.py_expr(right);
                let body = body_node.map(|b| self.body(b)).unwrap_or_default();
                out.push(Stmt::ForEach { var, iter, body });
            }
        }
    }

    fn py_args(&mut self, n: Option<&SyntaxNode>) -> Option<Vec<Expr>> {
        let Some(list) = n else { return Some(Vec::new()) };
        if list.kind != "argument_list" {
            return None;
        }
        let mut out = Vec::new();
        for a in list.named_children() {
            match a.kind {
                "keyword_argument" => {
                    let (Some(name), Some(value)) = (a.child_by_field("name"), a.child_by_field("value")) else {
                        return None;
                    };
                    out.push(Expr::KwArg {
                        name: self.name(name),
                        value: boxed(self.py_expr(value)),
                    });
                }
                "list_splat" | "dictionary_splat" => return None,
                _ => out.push(self.py_expr(a)),
            }
        }
        Some(out)
    }

    fn is_self(&self, n: &SyntaxNode) -> bool {
        n.kind == "identifier" && self.text(n) == "self"
    }

    pub(super) fn py_expr(&mut self, n: &SyntaxNode) -> Expr {
        match n.kind {
            "identifier" => self.name_expr(n),
            "integer" | "float" | "string" | "true" | "false" | "none" => self.literal(n),
            "parenthesized_expression" => match n.named_children().next() {
                Some(inner) => self.py_expr(inner),
                None => self.opaque_expr(n),
            },
            "binary_operator" | "boolean_operator" => {
                let (Some(l), Some(op), Some(r)) = (
                    n.child_by_field("left"),
                    n.child_by_field("operator"),
                    n.child_by_field("right"),
                ) else {
                    return self.opaque_expr(n);
                };
                let op = self.text(op);
                if op == "@" {
                    return self.opaque_expr(n);
                }
                if let Some(e) = self.py_array_fill(op, l, r) {
                    return e;
                }
                Expr::binary(op, self.py_expr(l), self.py_expr(r))
            }
            "not_operator" => match n.child_by_field("argument") {
                Some(a) => Expr::unary("not", self.py_expr(a)),
                None => self.opaque_expr(n),
            },
            "unary_operator" => {
                let (Some(op), Some(a)) = (n.child_by_field("operator"), n.child_by_field("argument")) else {
                    return self.opaque_expr(n);
                };
                let op = self.text(op);
                Expr::unary(op, self.py_expr(a))
            }
            "comparison_operator" => self.py_comparison(n),
            "conditional_expression" => {
                let parts: Vec<&SyntaxNode> = n.named_children().collect();
                let [then, cond, otherwise] = parts.as_slice() else {
                    return self.opaque_expr(n);
                };
                Expr::Ternary {
                    cond: boxed(self.py_expr(cond)),
                    then: boxed(self.py_expr(then)),
                    otherwise: boxed(self.py_expr(otherwise)),
                }
            }
            "call" => {
                let Some(f) = n.child_by_field("function") else {
                    return self.opaque_expr(n);
                };
                let Some(args) = self.py_args(n.child_by_field("arguments")) else {
                    return self.opaque_expr(n);
                };
                let callee = self.py_expr(f);
                Expr::call(callee, args)
            }
            "attribute" => {
                let (Some(o), Some(a)) = (n.child_by_field("object"), n.child_by_field("attribute")) else {
                    return self.opaque_expr(n);
                };
                if self.is_self(o) {
                    self.drop_ident(o);
                    return self.name_expr(a);
                }
                Expr::Member {
                    object: boxed(self.py_expr(o)),
                    name: self.name(a),
                }
            }
            "subscript" => {
                let Some(v) = n.child_by_field("value") else {
                    return self.opaque_expr(n);
                };
                let subs: Vec<&SyntaxNode> = n.children_by_field("subscript").collect();
                match subs.as_slice() {
                    [s] if s.kind != "slice" => Expr::Index {
                        object: boxed(self.py_expr(v)),
                        index: boxed(self.py_expr(s)),
                    },
                    _ => self.opaque_expr(n),
                }
            }
            "list" => {
                if n.named_children().any(|c| c.kind == "list_splat") {
                    return self.opaque_expr(n);
                }
                Expr::List(n.named_children().map(|c| self.py_expr(c)).collect())
            }
            "dictionary" => {
                let mut pairs = Vec::new();
                for p in n.named_children() {
                    let (Some(k), Some(v)) = (p.child_by_field("key"), p.child_by_field("value")) else {
                        return self.opaque_expr(n);
                    };
                    pairs.push((self.py_expr(k), self.py_expr(v)));
                }
                Expr::Dict(pairs)
            }
            _ if n.is_leaf() => self.leaf_expr(n),
            _ => self.opaque_expr(n),
        }
    }

    /// `[0] * n` and friends: a fresh array of the default value's type.
    fn py_array_fill(&mut self, op: &str, l: &SyntaxNode, r: &SyntaxNode) -> Option<Expr> {
        if op != "*" || l.kind != "list" {
            return None;
        }
        let items: Vec<&SyntaxNode> = l.named_children().collect();
        let [fill] = items.as_slice() else { return None };
        let ty = match (fill.kind, self.text(fill)) {
            ("integer", "0") => "int",
            ("float", "0.0") => "float",
            ("false", _) => "bool",
            ("string", "\"\"" | "''") => "string",
            _ => return None,
        };
        Some(Expr::NewArray {
            ty: TypeRef::prim(ty),
            dims: alloc::vec![self.py_expr(r)],
        })
    }

    /// `a < b <= c` as `a < b && b <= c`; `is` compares as `==`.
    fn py_comparison(&mut self, n: &SyntaxNode) -> Expr {
        let operands: Vec<&SyntaxNode> = n.named_children().collect();
        let ops: Vec<&SyntaxNode> = n.children_by_field("operators").collect();
        if operands.len() < 2 || ops.len() != operands.len() - 1 {
            return self.opaque_expr(n);
        }
        let mut acc: Option<Expr> = None;
        for (i, op) in ops.iter().enumerate() {
            let op = match self.text(op).split_whitespace().collect::<Vec<_>>().as_slice() {
                ["is"] => "==",
                ["is", "not"] => "!=",
                ["not", "in"] => return self.opaque_expr(n),
                [o] => *o,
                _ => return self.opaque_expr(n),
            };
            let cmp = Expr::binary(op, self.py_expr(operands[i]), self.py_expr(operands[i + 1]));
            acc = Some(match acc {
                Some(prev) => Expr::binary("and", prev, cmp),
                None => cmp,
            });
        }
        acc.unwrap_or_else(|| Expr::lit("true"))
    }
}

fn returns_value(n: &SyntaxNode) -> bool {
    let Some(body) = n.child_by_field("body") else { return false };
    let mut stack: Vec<&SyntaxNode> = body.children.iter().collect();
    while let Some(c) = stack.pop() {
        match c.kind {
            "function_definition" | "lambda" | "class_definition" => {}
            "return_statement" if c.named_children().next().is_some() => return true,
            _ => stack.extend(c.children.iter()),
        }
    }
    false
}
