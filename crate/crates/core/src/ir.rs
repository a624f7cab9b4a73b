//! Typed intermediate form between a pruned syntax tree and distilled code.
//!
//! Lowering produces it with raw surface names, unification rewrites
//! morphemes in place, fuzzing turns names into bags, and reassembly prints
//! it through the template grammar. The distilled parser produces it back
//! (with bag names) for the decompiler.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

use crate::segment::segment;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Name {
    Raw(String),
    Bag(Vec<String>),
}

impl Name {
    pub fn raw(s: impl Into<String>) -> Name {
        Name::Raw(s.into())
    }

    /// Subwords of the name: the segmentation of a raw name, or the bag itself.
    pub fn words(&self) -> Vec<String> {
        match self {
            Name::Raw(s) => segment(s),
            Name::Bag(w) => w.clone(),
        }
    }

    pub fn as_raw(&self) -> Option<&str> {
        match self {
            Name::Raw(s) => Some(s),
            Name::Bag(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TypeRef {
    /// A word of the unified type vocabulary, e.g. `int` or `vector<>`.
    Prim(String),
    User(Name),
    Array(Box<TypeRef>),
}

impl TypeRef {
    pub fn prim(s: &str) -> TypeRef {
        TypeRef::Prim(s.into())
    }

    pub fn is_prim(&self, s: &str) -> bool {
        matches!(self, TypeRef::Prim(p) if p == s)
    }

    pub fn is_container(&self) -> bool {
        matches!(self, TypeRef::Prim(p) if p.ends_with("<>"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Param {
    pub ty: TypeRef,
    pub name: Name,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Function {
    pub name: Name,
    pub ret: Option<TypeRef>,
    pub params: Vec<Param>,
    pub body: Vec<Stmt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum OpaqueItem {
    Expr(Expr),
    Block(Vec<Stmt>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Stmt {
    Decl {
        ty: TypeRef,
        name: Name,
        init: Option<Expr>,
    },
    Expr(Expr),
    Assign {
        target: Expr,
        value: Expr,
    },
    If {
        branches: Vec<(Expr, Vec<Stmt>)>,
        otherwise: Option<Vec<Stmt>>,
    },
    While {
        cond: Expr,
        body: Vec<Stmt>,
    },
    ForRange {
        var: Name,
        start: Expr,
        end: Expr,
        step: Option<Expr>,
        body: Vec<Stmt>,
    },
    ForEach {
        var: Name,
        iter: Expr,
        body: Vec<Stmt>,
    },
    For {
        init: Vec<Stmt>,
        cond: Option<Expr>,
        update: Vec<Stmt>,
        body: Vec<Stmt>,
    },
    Return(Option<Expr>),
    Break,
    Continue,
    Func(Function),
    Opaque {
        kind: String,
        items: Vec<OpaqueItem>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Name(Name),
    Lit(String),
    Binary {
        op: String,
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
    Unary {
        op: String,
        operand: Box<Expr>,
    },
    Ternary {
        cond: Box<Expr>,
        then: Box<Expr>,
        otherwise: Box<Expr>,
    },
    /// Call of a user or library function; the callee is a name path or an
    /// arbitrary expression.
    Call {
        callee: Box<Expr>,
        args: Vec<Expr>,
    },
    /// Call of a unified builtin such as `pow` or `println`.
    Builtin {
        name: String,
        args: Vec<Expr>,
    },
    /// Cast or constructor call of a type.
    TypeCall {
        ty: TypeRef,
        args: Vec<Expr>,
    },
    Member {
        object: Box<Expr>,
        name: Name,
    },
    Index {
        object: Box<Expr>,
        index: Box<Expr>,
    },
    List(Vec<Expr>),
    Dict(Vec<(Expr, Expr)>),
    NewArray {
        ty: TypeRef,
        dims: Vec<Expr>,
    },
    KwArg {
        name: Name,
        value: Box<Expr>,
    },
    /// Pattern slot; only appears inside registry patterns.
    Slot(char),
    Opaque {
        kind: String,
        items: Vec<OpaqueItem>,
    },
}

impl Expr {
    pub fn name(s: impl Into<String>) -> Expr {
        Expr::Name(Name::Raw(s.into()))
    }

    pub fn lit(s: impl Into<String>) -> Expr {
        Expr::Lit(s.into())
    }

    pub fn binary(op: &str, lhs: Expr, rhs: Expr) -> Expr {
        Expr::Binary {
            op: op.into(),
            lhs: Box::new(lhs),
            rhs: Box::new(rhs),
        }
    }

    pub fn unary(op: &str, operand: Expr) -> Expr {
        Expr::Unary {
            op: op.into(),
            operand: Box::new(operand),
        }
    }

    pub fn member(object: Expr, name: impl Into<String>) -> Expr {
        Expr::Member {
            object: Box::new(object),
            name: Name::Raw(name.into()),
        }
    }

    pub fn call(callee: Expr, args: Vec<Expr>) -> Expr {
        Expr::Call {
            callee: Box::new(callee),
            args,
        }
    }

    /// A method call with the first letter of the method name upper- or
    /// lowercased, if that changes anything (`Math.Pow` / `Math.pow`).
    pub fn with_method_case(&self, upper: bool) -> Option<Expr> {
        let Expr::Call { callee, args } = self else { return None };
        let Expr::Member { object, name: Name::Raw(n) } = &**callee else { return None };
        let mut cs = n.chars();
        let first = cs.next()?;
        let first = if upper { first.to_ascii_uppercase() } else { first.to_ascii_lowercase() };
        let renamed = alloc::format!("{first}{}", cs.as_str());
        (renamed != *n).then(|| Expr::call(Expr::member((**object).clone(), renamed), args.clone()))
    }

    /// Segments of a dotted name path (`a.b.c`), if the expression is one.
    pub fn name_path(&self) -> Option<Vec<&Name>> {
        match self {
            Expr::Name(n) => Some(alloc::vec![n]),
            Expr::Member { object, name } => {
                let mut p = object.name_path()?;
                p.push(name);
                Some(p)
            }
            _ => None,
        }
    }

    /// Apply `f` to every direct sub-expression.
    pub fn for_each_child_mut(&mut self, f: &mut impl FnMut(&mut Expr)) {
        match self {
            Expr::Name(_) | Expr::Lit(_) | Expr::Slot(_) => {}
            Expr::Binary { lhs, rhs, .. } => {
                f(lhs);
                f(rhs);
            }
            Expr::Unary { operand, .. } => f(operand),
            Expr::Ternary {
                cond,
                then,
                otherwise,
            } => {
                f(cond);
                f(then);
                f(otherwise);
            }
            Expr::Call { callee, args } => {
                f(callee);
                args.iter_mut().for_each(f);
            }
            Expr::Builtin { args, .. } | Expr::TypeCall { args, .. } | Expr::List(args) => {
                args.iter_mut().for_each(f)
            }
            Expr::NewArray { dims, .. } => dims.iter_mut().for_each(f),
            Expr::Member { object, .. } => f(object),
            Expr::Index { object, index } => {
                f(object);
                f(index);
            }
            Expr::Dict(items) => {
                for (k, v) in items {
                    f(k);
                    f(v);
                }
            }
            Expr::KwArg { value, .. } => f(value),
            Expr::Opaque { items, .. } => {
                for item in items {
                    match item {
                        OpaqueItem::Expr(e) => f(e),
                        OpaqueItem::Block(_) => {}
                    }
                }
            }
        }
    }
}

/// Mutable traversal over every node of a function body.
pub trait VisitMut {
    fn visit_expr(&mut self, e: &mut Expr) {
        walk_expr(self, e);
    }

    fn visit_stmt(&mut self, s: &mut Stmt) {
        walk_stmt(self, s);
    }

    fn visit_type(&mut self, _t: &mut TypeRef) {}

    fn visit_name(&mut self, _n: &mut Name) {}

    fn visit_function(&mut self, f: &mut Function) {
        walk_function(self, f);
    }
}

pub fn walk_function<V: VisitMut + ?Sized>(v: &mut V, f: &mut Function) {
    v.visit_name(&mut f.name);
    if let Some(t) = &mut f.ret {
        v.visit_type(t);
    }
    for p in &mut f.params {
        v.visit_type(&mut p.ty);
        v.visit_name(&mut p.name);
    }
    walk_block(v, &mut f.body);
}

pub fn walk_block<V: VisitMut + ?Sized>(v: &mut V, body: &mut [Stmt]) {
    for s in body {
        v.visit_stmt(s);
    }
}

pub fn walk_stmt<V: VisitMut + ?Sized>(v: &mut V, s: &mut Stmt) {
    match s {
        Stmt::Decl { ty, name, init } => {
            v.visit_type(ty);
            v.visit_name(name);
            if let Some(e) = init {
                v.visit_expr(e);
            }
        }
        Stmt::Expr(e) => v.visit_expr(e),
        Stmt::Assign { target, value } => {
            v.visit_expr(target);
            v.visit_expr(value);
        }
        Stmt::If {
            branches,
            otherwise,
        } => {
            for (c, b) in branches {
                v.visit_expr(c);
                walk_block(v, b);
            }
            if let Some(b) = otherwise {
                walk_block(v, b);
            }
        }
        Stmt::While { cond, body } => {
            v.visit_expr(cond);
            walk_block(v, body);
        }
        Stmt::ForRange {
            var,
            start,
            end,
            step,
            body,
        } => {
            v.visit_name(var);
            v.visit_expr(start);
            v.visit_expr(end);
            if let Some(e) = step {
                v.visit_expr(e);
            }
            walk_block(v, body);
        }
        Stmt::ForEach { var, iter, body } => {
            v.visit_name(var);
            v.visit_expr(iter);
            walk_block(v, body);
        }
        Stmt::For {
            init,
            cond,
            update,
            body,
        } => {
            walk_block(v, init);
            if let Some(c) = cond {
                v.visit_expr(c);
            }
            walk_block(v, update);
            walk_block(v, body);
        }
        Stmt::Return(e) => {
            if let Some(e) = e {
                v.visit_expr(e);
            }
        }
        Stmt::Break | Stmt::Continue => {}
        Stmt::Func(f) => v.visit_function(f),
        Stmt::Opaque { items, .. } => walk_opaque(v, items),
    }
}

fn walk_opaque<V: VisitMut + ?Sized>(v: &mut V, items: &mut [OpaqueItem]) {
    for item in items {
        match item {
            OpaqueItem::Expr(e) => v.visit_expr(e),
            OpaqueItem::Block(b) => walk_block(v, b),
        }
    }
}

pub fn walk_expr<V: VisitMut + ?Sized>(v: &mut V, e: &mut Expr) {
    match e {
        Expr::Name(n) => v.visit_name(n),
        Expr::Member { object, name } => {
            v.visit_expr(object);
            v.visit_name(name);
        }
        Expr::KwArg { name, value } => {
            v.visit_name(name);
            v.visit_expr(value);
        }
        Expr::TypeCall { ty, args } => {
            v.visit_type(ty);
            args.iter_mut().for_each(|a| v.visit_expr(a));
        }
        Expr::NewArray { ty, dims } => {
            v.visit_type(ty);
            dims.iter_mut().for_each(|a| v.visit_expr(a));
        }
        Expr::Opaque { items, .. } => walk_opaque(v, items),
        other => other.for_each_child_mut(&mut |c| v.visit_expr(c)),
    }
}

/// Binding strength of a unified binary operator; higher binds tighter.
pub fn binary_prec(op: &str) -> Option<u8> {
    Some(match op {
        "||" => 2,
        "&&" => 3,
        "|" => 4,
        "^" => 5,
        "&" => 6,
        "==" | "!=" => 7,
        "<" | "<=" | ">" | ">=" | "in" => 8,
        "<<" | ">>" => 9,
        "+" | "-" => 10,
        "*" | "/" | "%" => 11,
        _ => return None,
    })
}

/// Ternary binds loosest, then binary operators, then unary, then postfix.
pub const PREC_TERNARY: u8 = 1;
pub const PREC_UNARY: u8 = 12;
pub const PREC_POSTFIX: u8 = 13;
