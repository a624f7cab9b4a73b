//! Per-target printing of the intermediate form.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::names::{render_name, Role};
use super::{function_indent, DecompileError, RenderContext};
use crate::distilled::MASK;
use crate::ir::{binary_prec, Expr, Function, Name, Param, Stmt, TypeRef, PREC_POSTFIX, PREC_TERNARY, PREC_UNARY};
use crate::lang::LanguageId::{self, CSharp, Cpp, Java, Python};
use crate::registry::{CellPattern, MorphemeRegistry};

type R<T> = Result<T, DecompileError>;

// Python binding strengths; the C family uses `ir::binary_prec`.
const PY_NOT: u8 = 4;
const PY_CMP: u8 = 5;
const PY_POW: u8 = 13;
const PY_POSTFIX: u8 = 14;

fn py_binary_prec(op: &str) -> Option<u8> {
    Some(match op {
        "or" => 2,
        "and" => 3,
        "==" | "!=" | "<" | "<=" | ">" | ">=" | "in" => PY_CMP,
        "|" => 6,
        "^" => 7,
        "&" => 8,
        "<<" | ">>" => 9,
        "+" | "-" => 10,
        "*" | "/" | "//" | "%" => 11,
        "**" => PY_POW,
        _ => return None,
    })
}

/// Element type and number of `[]` layers.
fn peel(t: &TypeRef) -> (&TypeRef, usize) {
    match t {
        TypeRef::Array(inner) => {
            let (base, k) = peel(inner);
            (base, k + 1)
        }
        other => (other, 0),
    }
}

pub(super) struct Printer<'a> {
    ctx: &'a RenderContext,
    reg: &'a MorphemeRegistry,
    t: LanguageId,
    out: String,
    level: usize,
    depth: usize,
}

impl<'a> Printer<'a> {
    pub(super) fn new(ctx: &'a RenderContext, reg: &'a MorphemeRegistry) -> Self {
        Printer {
            ctx,
            reg,
            t: ctx.target,
            out: String::new(),
            level: 0,
            depth: 0,
        }
    }

    pub(super) fn function_text(mut self, f: &Function) -> R<String> {
        self.level = function_indent(self.t);
        self.function(f)?;
        Ok(self.out)
    }

    pub(super) fn stmts_text(mut self, body: &[Stmt]) -> R<String> {
        for s in body {
            self.stmt(s)?;
        }
        Ok(self.out.trim_end().to_string())
    }

    pub(super) fn expr_text(self, e: &Expr) -> R<String> {
        self.expr(e, 0)
    }

    fn fail(&self, what: &str) -> DecompileError {
        DecompileError::UnrenderableMorpheme {
            morpheme: what.to_string(),
            target: self.t,
        }
    }

    fn py(&self) -> bool {
        self.t == Python
    }

    fn line(&mut self, text: &str) {
        for _ in 0..self.level {
            self.out.push_str(&self.ctx.indent);
        }
        self.out.push_str(text);
        self.out.push('\n');
    }

    fn name(&self, n: &Name, role: Role) -> R<String> {
        match n {
            Name::Raw(s) => Ok(s.clone()),
            Name::Bag(w) if w.iter().any(|x| x == MASK) => Err(self.fail(MASK)),
            Name::Bag(w) => Ok(render_name(w, self.t, role)),
        }
    }

    // ---- types

    fn prim(&self, p: &str) -> R<String> {
        if p == "var" {
            return match self.t {
                Cpp => Ok("auto".into()),
                Python => Err(self.fail(p)),
                _ => Ok("var".into()),
            };
        }
        if let Some(cell) = self.reg.surface_type(self.t, p)? {
            if let Some(d) = cell.type_display() {
                return Ok(if p.ends_with("<>") { format!("{d}<>") } else { d.to_string() });
            }
            // Python containers are declared by their initializer.
            return Ok(match p {
                "vector<>" => "list",
                "map<>" => "dict",
                "set<>" => "set",
                "queue<>" => "queue.Queue",
                "deque<>" => "deque",
                _ => return Err(self.fail(p)),
            }
            .into());
        }
        match (self.t, p) {
            (Python, "void") => Ok("None".into()),
            (Python, _) | (Cpp, "byte") => Err(self.fail(p)),
            (_, "double" | "long" | "short" | "void" | "byte") => Ok(p.into()),
            _ => Err(self.fail(p)),
        }
    }

    fn ty(&self, t: &TypeRef) -> R<String> {
        match t {
            TypeRef::Prim(p) => self.prim(p),
            TypeRef::User(n) => self.name(n, Role::Type),
            TypeRef::Array(inner) => match self.t {
                Java | CSharp => Ok(format!("{}[]", self.ty(inner)?)),
                Python => match self.annotation(inner)? {
                    Some(a) => Ok(format!("list[{a}]")),
                    None => Err(self.fail("var[]")),
                },
                Cpp => Err(self.fail("[]")),
            },
        }
    }

    /// Python annotation; `None` for an inferred type.
    fn annotation(&self, t: &TypeRef) -> R<Option<String>> {
        if t.is_prim("var") {
            return Ok(None);
        }
        self.ty(t).map(Some)
    }

    /// `T name` with C-style array declarators for C++.
    fn declarator(&self, t: &TypeRef, name: &str) -> R<String> {
        if self.t == Cpp {
            let (base, k) = peel(t);
            return Ok(format!("{} {name}{}", self.ty(base)?, "[]".repeat(k)));
        }
        Ok(format!("{} {name}", self.ty(t)?))
    }

    /// Class instantiated for an empty container declaration.
    fn ctor(&self, p: &str) -> R<String> {
        match (self.t, p) {
            (Java, "queue<>") => Ok("LinkedList<>".into()),
            (Java, "deque<>") => Ok("ArrayDeque<>".into()),
            _ => self.prim(p),
        }
    }

    fn py_container(&self, p: &str, args: &[Expr]) -> R<String> {
        let Some(cell) = self.reg.surface_type(Python, p)? else {
            return Err(self.fail(p));
        };
        let CellPattern::Init(init) = &cell.pattern else {
            return Err(self.fail(p));
        };
        match init {
            _ if args.is_empty() => self.node(init, 0),
            Expr::Call { callee, .. } => self.node(
                &Expr::Call {
                    callee: callee.clone(),
                    args: args.to_vec(),
                },
                0,
            ),
            Expr::List(_) => Ok(format!("list({})", self.args(args)?)),
            Expr::Dict(_) => Ok(format!("dict({})", self.args(args)?)),
            _ => Err(self.fail(p)),
        }
    }

    // ---- functions and statements

    fn param(&self, p: &Param) -> R<String> {
        let name = self.name(&p.name, Role::Value)?;
        if self.py() {
            return Ok(match self.annotation(&p.ty)? {
                Some(a) => format!("{name}: {a}"),
                None => name,
            });
        }
        self.declarator(&p.ty, &name)
    }

    fn function(&mut self, f: &Function) -> R<()> {
        let name = self.name(&f.name, Role::Value)?;
        let params = f.params.iter().map(|p| self.param(p)).collect::<R<Vec<_>>>()?.join(", ");
        let nested = self.depth > 0;
        if self.py() {
            let ret = match &f.ret {
                None => " -> None".to_string(),
                Some(t) => match self.annotation(t)? {
                    Some(a) => format!(" -> {a}"),
                    None => String::new(),
                },
            };
            self.line(&format!("def {name}({params}){ret}:"));
            self.depth += 1;
            self.suite(&f.body)?;
            self.depth -= 1;
            return Ok(());
        }
        if nested && self.t != CSharp {
            return Err(self.fail("nested function"));
        }
        let ret = match &f.ret {
            None => "void".to_string(),
            Some(t) => self.ty(t)?,
        };
        let mods = match (self.t, nested) {
            (Java, false) => "static ",
            (CSharp, false) => "public static ",
            _ => "",
        };
        self.line(&format!("{mods}{ret} {name}({params}) {{"));
        self.depth += 1;
        self.block(&f.body)?;
        self.depth -= 1;
        self.line("}");
        Ok(())
    }

    fn block(&mut self, body: &[Stmt]) -> R<()> {
        self.level += 1;
        for s in body {
            self.stmt(s)?;
        }
        self.level -= 1;
        Ok(())
    }

    fn suite(&mut self, body: &[Stmt]) -> R<()> {
        if body.is_empty() {
            self.level += 1;
            self.line("pass");
            self.level -= 1;
            return Ok(());
        }
        self.block(body)
    }

    /// Header line, then the body as a braced block or an indented suite.
    fn compound(&mut self, head: &str, body: &[Stmt]) -> R<()> {
        if self.py() {
            self.line(&format!("{head}:"));
            return self.suite(body);
        }
        self.line(&format!("{head} {{"));
        self.block(body)?;
        self.line("}");
        Ok(())
    }

    fn stmt(&mut self, s: &Stmt) -> R<()> {
        match s {
            Stmt::Decl { .. } | Stmt::Expr(_) | Stmt::Assign { .. } => {
                let text = self.simple(s)?;
                let end = if self.py() { "" } else { ";" };
                self.line(&format!("{text}{end}"));
            }
            Stmt::If { branches, otherwise } => self.if_stmt(branches, otherwise.as_deref())?,
            Stmt::While { cond, body } => {
                let c = self.expr(cond, 0)?;
                let head = if self.py() { format!("while {c}") } else { format!("while ({c})") };
                self.compound(&head, body)?;
            }
            Stmt::ForRange {
                var,
                start,
                end,
                step,
                body,
            } => {
                let head = self.range_head(var, start, end, step.as_ref())?;
                self.compound(&head, body)?;
            }
            Stmt::ForEach { var, iter, body } => {
                let v = self.name(var, Role::Value)?;
                let it = self.expr(iter, 0)?;
                let head = match self.t {
                    Java => format!("for (var {v} : {it})"),
                    CSharp => format!("foreach (var {v} in {it})"),
                    Cpp => format!("for (auto {v} : {it})"),
                    Python => format!("for {v} in {it}"),
                };
                self.compound(&head, body)?;
            }
            Stmt::For {
                init,
                cond,
                update,
                body,
            } => {
                if self.py() {
                    return Err(self.fail("for"));
                }
                let init = self.for_init(init)?;
                let cond = match cond {
                    Some(c) => self.expr(c, 0)?,
                    None => String::new(),
                };
                let update = update.iter().map(|u| self.simple(u)).collect::<R<Vec<_>>>()?.join(", ");
                if update.contains('{') {
                    return Err(self.fail("for"));
                }
                self.compound(&format!("for ({init}; {cond}; {update})"), body)?;
            }
            Stmt::Return(value) => {
                let end = if self.py() { "" } else { ";" };
                match value {
                    Some(v) => {
                        let v = self.expr(v, 0)?;
                        self.line(&format!("return {v}{end}"));
                    }
                    None => self.line(&format!("return{end}")),
                }
            }
            Stmt::Break => self.line(if self.py() { "break" } else { "break;" }),
            Stmt::Continue => self.line(if self.py() { "continue" } else { "continue;" }),
            Stmt::Func(f) => self.function(f)?,
            Stmt::Opaque { kind, .. } => return Err(self.fail(kind)),
        }
        Ok(())
    }

    fn if_stmt(&mut self, branches: &[(Expr, Vec<Stmt>)], otherwise: Option<&[Stmt]>) -> R<()> {
        for (i, (cond, body)) in branches.iter().enumerate() {
            let c = self.expr(cond, 0)?;
            if self.py() {
                let kw = if i == 0 { "if" } else { "elif" };
                self.line(&format!("{kw} {c}:"));
                self.suite(body)?;
            } else {
                let head = if i == 0 {
                    format!("if ({c}) {{")
                } else {
                    format!("}} else if ({c}) {{")
                };
                self.line(&head);
                self.block(body)?;
            }
        }
        if let Some(body) = otherwise {
            if self.py() {
                self.line("else:");
                self.suite(body)?;
            } else {
                self.line("} else {");
                self.block(body)?;
            }
        }
        if !self.py() {
            self.line("}");
        }
        Ok(())
    }

    /// Loop header whose update and condition re-lower to the same range.
    fn range_head(&self, var: &Name, start: &Expr, end: &Expr, step: Option<&Expr>) -> R<String> {
        let v = self.name(var, Role::Value)?;
        let s = self.expr(start, 0)?;
        if self.py() {
            let mut args = alloc::vec![s, self.expr(end, 0)?];
            if let Some(k) = step {
                args.push(self.expr(k, 0)?);
            }
            return Ok(format!("for {v} in range({})", args.join(", ")));
        }
        let rel = binary_prec("<").unwrap_or(0) + 1;
        let e = self.expr(end, rel)?;
        let (cond, update) = match step {
            None => (format!("{v} < {e}"), format!("{v}++")),
            Some(Expr::Unary { op, operand }) if op == "-" && matches!(&**operand, Expr::Lit(k) if k.parse::<u64>().is_ok()) => {
                let Expr::Lit(k) = &**operand else { unreachable!() };
                let update = if k == "1" { format!("{v}--") } else { format!("{v} -= {k}") };
                (format!("{v} > {e}"), update)
            }
            Some(k) => (format!("{v} < {e}"), format!("{v} += {}", self.expr(k, 0)?)),
        };
        Ok(format!("for (int {v} = {s}; {cond}; {update})"))
    }

    fn for_init(&self, init: &[Stmt]) -> R<String> {
        let decls: Vec<_> = init
            .iter()
            .filter_map(|s| match s {
                Stmt::Decl { ty, name, init } => Some((ty, name, init)),
                _ => None,
            })
            .collect();
        if decls.len() > 1 {
            // One declaration statement with several declarators.
            if decls.len() != init.len() || decls.iter().any(|d| d.0 != decls[0].0) || matches!(decls[0].0, TypeRef::Array(_)) {
                return Err(self.fail("for"));
            }
            let mut parts = Vec::new();
            for (i, (ty, name, value)) in decls.iter().enumerate() {
                let n = self.name(name, Role::Value)?;
                let head = if i == 0 { self.declarator(ty, &n)? } else { n };
                parts.push(match value {
                    Some(v) => format!("{head} = {}", self.expr(v, 0)?),
                    None => head,
                });
            }
            return Ok(parts.join(", "));
        }
        if !decls.is_empty() && init.len() > 1 {
            return Err(self.fail("for"));
        }
        Ok(init.iter().map(|s| self.simple(s)).collect::<R<Vec<_>>>()?.join(", "))
    }

    /// Declaration, assignment or expression statement, without terminator.
    fn simple(&self, s: &Stmt) -> R<String> {
        match s {
            Stmt::Decl { ty, name, init } => self.decl(ty, name, init.as_ref()),
            Stmt::Expr(e) => self.expr(e, 0),
            Stmt::Assign { target, value } => Ok(format!("{} = {}", self.expr(target, 0)?, self.expr(value, 0)?)),
            _ => Err(self.fail("stmt")),
        }
    }

    fn decl(&self, ty: &TypeRef, name: &Name, init: Option<&Expr>) -> R<String> {
        let n = self.name(name, Role::Value)?;
        match self.t {
            Python => {
                if let (TypeRef::Prim(p), None) = (ty, init) {
                    if ty.is_container() {
                        return Ok(format!("{n} = {}", self.py_container(p, &[])?));
                    }
                }
                Ok(match (self.annotation(ty)?, init) {
                    (None, Some(v)) => format!("{n} = {}", self.expr(v, 0)?),
                    (None, None) => return Err(self.fail("var")),
                    (Some(a), Some(v)) => format!("{n}: {a} = {}", self.expr(v, 0)?),
                    (Some(a), None) => format!("{n}: {a}"),
                })
            }
            Cpp => {
                let (base, k) = peel(ty);
                if let Some(Expr::NewArray { ty: elem, dims }) = init {
                    if k > 0 && k == dims.len() && elem == base {
                        let dims = dims
                            .iter()
                            .map(|d| Ok(format!("[{}]", self.expr(d, 0)?)))
                            .collect::<R<Vec<_>>>()?
                            .concat();
                        return Ok(format!("{} {n}{dims}", self.ty(base)?));
                    }
                }
                let head = self.declarator(ty, &n)?;
                Ok(match init {
                    None => head,
                    Some(v) => format!("{head} = {}", self.decl_init(ty, v)?),
                })
            }
            Java | CSharp => {
                let t = self.ty(ty)?;
                Ok(match (ty, init) {
                    (TypeRef::Prim(p), None) if ty.is_container() => format!("{t} {n} = new {}()", self.ctor(p)?),
                    (_, None) => format!("{t} {n}"),
                    (_, Some(v)) => format!("{t} {n} = {}", self.decl_init(ty, v)?),
                })
            }
        }
    }

    /// Initializer of a C-family declaration; array literals use bare braces.
    fn decl_init(&self, ty: &TypeRef, v: &Expr) -> R<String> {
        match v {
            Expr::List(items) if matches!(ty, TypeRef::Array(_)) || self.t == Cpp => {
                Ok(format!("{{{}}}", self.args(items)?))
            }
            _ => self.expr(v, 0),
        }
    }

    // ---- expressions

    fn args(&self, args: &[Expr]) -> R<String> {
        Ok(args.iter().map(|a| self.expr(a, 0)).collect::<R<Vec<_>>>()?.join(", "))
    }

    fn postfix(&self) -> u8 {
        if self.py() {
            PY_POSTFIX
        } else {
            PREC_POSTFIX
        }
    }

    fn bin_prec(&self, op: &str) -> Option<u8> {
        if self.py() {
            py_binary_prec(op)
        } else if op == "in" {
            None
        } else {
            binary_prec(op)
        }
    }

    fn prec(&self, e: &Expr) -> u8 {
        match e {
            Expr::Ternary { .. } => PREC_TERNARY,
            Expr::Binary { op, .. } => self.bin_prec(op).unwrap_or(0),
            Expr::Unary { op, .. } if op == "not" => PY_NOT,
            Expr::Unary { .. } => PREC_UNARY,
            Expr::TypeCall { ty: TypeRef::Prim(p), .. } if !p.ends_with("<>") && matches!(self.t, Java | CSharp) => {
                PREC_UNARY
            }
            Expr::NewArray { .. } if self.py() => 11,
            Expr::NewArray { .. } => PREC_UNARY,
            Expr::KwArg { .. } => 0,
            _ => self.postfix(),
        }
    }

    /// Render `e`, first replacing a unified morpheme by its target form.
    fn expr(&self, e: &Expr, min: u8) -> R<String> {
        match self.reg.surface_expr(self.t, e)? {
            Some(surface) if self.t == LanguageId::CSharp => {
                let surface = surface.with_method_case(true).unwrap_or(surface);
                self.node(&surface, min)
            }
            Some(surface) => self.node(&surface, min),
            None => self.node(e, min),
        }
    }

    fn node(&self, e: &Expr, min: u8) -> R<String> {
        let text = self.node_inner(e)?;
        if self.prec(e) < min {
            Ok(format!("({text})"))
        } else {
            Ok(text)
        }
    }

    fn literal(&self, l: &str) -> R<String> {
        Ok(match (l, self.t) {
            ("true", Python) => "True".into(),
            ("false", Python) => "False".into(),
            ("null", Python) => "None".into(),
            ("null", Cpp) => "nullptr".into(),
            (s, Python) if s.starts_with('\'') => return Err(self.fail("char")),
            (s, _) => s.into(),
        })
    }

    fn node_inner(&self, e: &Expr) -> R<String> {
        let post = self.postfix();
        Ok(match e {
            Expr::Name(n) => self.name(n, Role::Value)?,
            Expr::Lit(l) => self.literal(l)?,
            Expr::Binary { op, lhs, rhs } => {
                let p = self.bin_prec(op).ok_or_else(|| self.fail(op))?;
                let (lmin, rmin) = if op == "**" {
                    (p + 1, p)
                } else if self.py() && p == PY_CMP {
                    (p + 1, p + 1)
                } else {
                    (p, p + 1)
                };
                let l = self.expr(lhs, lmin)?;
                let r = self.expr(rhs, rmin)?;
                if op == "**" {
                    format!("{l}**{r}")
                } else {
                    format!("{l} {op} {r}")
                }
            }
            Expr::Unary { op, operand } => match op.as_str() {
                "not" if self.py() => format!("not {}", self.expr(operand, PY_NOT)?),
                "-" | "+" | "~" => format!("{op}{}", self.expr(operand, PREC_UNARY + 1)?),
                "!" if !self.py() => format!("!{}", self.expr(operand, PREC_UNARY + 1)?),
                _ => return Err(self.fail(op)),
            },
            Expr::Ternary { cond, then, otherwise } => {
                let c = self.expr(cond, PREC_TERNARY + 1)?;
                let a = self.expr(then, PREC_TERNARY + 1)?;
                let b = self.expr(otherwise, PREC_TERNARY)?;
                if self.py() {
                    format!("{a} if {c} else {b}")
                } else {
                    format!("{c} ? {a} : {b}")
                }
            }
            Expr::Call { callee, args } => {
                let c = match &**callee {
                    Expr::Name(n) => self.name(n, Role::Value)?,
                    other => self.expr(other, post)?,
                };
                format!("{c}({})", self.args(args)?)
            }
            Expr::Builtin { name, .. } => return Err(self.fail(name)),
            Expr::TypeCall { ty, args } => self.type_call(ty, args)?,
            Expr::Member { object, name } => {
                format!("{}.{}", self.expr(object, post)?, self.name(name, Role::Value)?)
            }
            Expr::Index { object, index } => format!("{}[{}]", self.expr(object, post)?, self.expr(index, 0)?),
            Expr::List(items) => {
                let a = self.args(items)?;
                match self.t {
                    Python => format!("[{a}]"),
                    Cpp => format!("{{{a}}}"),
                    Java => format!("new Object[]{{{a}}}"),
                    CSharp => format!("new[] {{{a}}}"),
                }
            }
            Expr::Dict(items) if self.py() => {
                let parts = items
                    .iter()
                    .map(|(k, v)| Ok(format!("{}: {}", self.expr(k, 0)?, self.expr(v, 0)?)))
                    .collect::<R<Vec<_>>>()?;
                format!("{{{}}}", parts.join(", "))
            }
            Expr::Dict(_) => return Err(self.fail("dict")),
            Expr::NewArray { ty, dims } => self.new_array(ty, dims)?,
            Expr::KwArg { name, value } => {
                let n = self.name(name, Role::Value)?;
                let v = self.expr(value, 0)?;
                match self.t {
                    Python => format!("{n}={v}"),
                    CSharp => format!("{n}: {v}"),
                    _ => return Err(self.fail("keyword argument")),
                }
            }
            Expr::Slot(_) => return Err(self.fail("slot")),
            Expr::Opaque { kind, .. } => return Err(self.fail(kind)),
        })
    }

    fn type_call(&self, ty: &TypeRef, args: &[Expr]) -> R<String> {
        let a = self.args(args)?;
        Ok(match ty {
            TypeRef::User(n) => {
                let n = self.name(n, Role::Type)?;
                match self.t {
                    Java | CSharp => format!("new {n}({a})"),
                    Cpp => format!("{n}{{{a}}}"),
                    Python => format!("{n}({a})"),
                }
            }
            TypeRef::Array(_) => return Err(self.fail("array cast")),
            TypeRef::Prim(p) if p.ends_with("<>") => match self.t {
                Java | CSharp => format!("new {}({a})", self.ctor(p)?),
                Cpp => format!("{}{{{a}}}", self.prim(p)?),
                Python => self.py_container(p, args)?,
            },
            TypeRef::Prim(p) => match self.t {
                Python if matches!(p.as_str(), "int" | "float" | "string" | "bool") => format!("{}({a})", self.prim(p)?),
                Python => return Err(self.fail(p)),
                _ if args.len() != 1 => return Err(self.fail("cast")),
                Cpp => format!("static_cast<{}>({a})", self.prim(p)?),
                _ => format!("({}) ({a})", self.prim(p)?),
            },
        })
    }

    fn new_array(&self, ty: &TypeRef, dims: &[Expr]) -> R<String> {
        let (base, k) = peel(ty);
        let single = dims.len() == 1 && k == 0;
        match self.t {
            Python if single => {
                let fill = match base {
                    TypeRef::Prim(p) => match p.as_str() {
                        "int" => "0",
                        "float" => "0.0",
                        "bool" => "False",
                        "string" => "\"\"",
                        _ => return Err(self.fail(p)),
                    },
                    _ => return Err(self.fail("new")),
                };
                Ok(format!("[{fill}] * {}", self.expr(&dims[0], 12)?))
            }
            Java => {
                let d = dims
                    .iter()
                    .map(|d| Ok(format!("[{}]", self.expr(d, 0)?)))
                    .collect::<R<Vec<_>>>()?
                    .concat();
                Ok(format!("new {}{d}{}", self.ty(base)?, "[]".repeat(k)))
            }
            CSharp | Cpp if single => Ok(format!("new {}[{}]", self.ty(base)?, self.expr(&dims[0], 0)?)),
            _ => Err(self.fail("new")),
        }
    }
}
