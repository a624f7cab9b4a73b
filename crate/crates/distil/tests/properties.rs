mod common;

use std::collections::BTreeSet;

use distil::frontend::{extract_functions, parse, strip_noncode, SourceFunction};
use distil::pipeline::{distill, distill_text, round_trip_check};
use distil_core::decompile::decompile;
use distil_core::distill::prune;
use distil_core::segment::segment;
use distil_core::token::join_tokens;
use distil_core::vocab;
use distil_core::{
    DistilledCode, DistilledToken, LanguageId, MorphemeRegistry, SyntaxNode, SyntaxTree,
};
use proptest::prelude::*;

use LanguageId::{CSharp, Cpp, Java, Python};

fn corpus() -> Vec<SourceFunction> {
    common::quadruples()
        .into_values()
        .flatten()
        .map(|(l, text)| SourceFunction::from_text(&text, l).unwrap())
        .collect()
}

fn named_kinds(tree: &SyntaxTree) -> Vec<&'static str> {
    let f = tree.function_node().unwrap();
    f.preorder()
        .filter(|n| n.is_named)
        .map(|n| n.kind)
        .collect()
}

#[test]
fn joined_tokens_reparse_to_the_same_shape() {
    for f in corpus() {
        let clean = strip_noncode(&f).unwrap();
        let joined = join_tokens(&clean.tokens, f.language);
        let a = clean.tree().unwrap();
        let b = parse(&joined, f.language).unwrap();
        assert!(!b.has_error, "{}:\n{joined}", f.name);
        assert_eq!(named_kinds(&a), named_kinds(&b), "{}", f.name);
    }
}

#[test]
fn extracted_functions_are_error_free() {
    let src = "class A {\n  int ok() { return 1; }\n  int bad( { return }\n  int fine(int x) { return x; }\n}\n";
    let tree = parse(src, Java).unwrap();
    assert!(tree.has_error);
    for f in extract_functions(&tree) {
        assert!(!f.tree().unwrap().has_error, "{}", f.name);
    }
}

fn is_identifier(n: &SyntaxNode) -> bool {
    n.kind.ends_with("identifier") && n.named_children().next().is_none()
}

/// Subwords of the identifiers left after pruning.
fn pruned_words(f: &SourceFunction) -> BTreeSet<String> {
    let clean = strip_noncode(f).unwrap();
    let pruned = prune(&clean.tree().unwrap());
    let node = pruned.function_node().unwrap();
    node.preorder()
        .filter(|n| is_identifier(n))
        .flat_map(|n| segment(pruned.text(n)))
        .collect()
}

#[test]
fn corpus_invariants() {
    let reg = MorphemeRegistry::builtin();
    for f in corpus() {
        let d = distill(&f, &reg).unwrap();
        let code = &d.code;
        assert!(code.is_balanced(), "{}", f.name);
        for t in &code.tokens {
            match t {
                DistilledToken::UnifiedKeyword(k) => assert!(vocab::is_keyword(k), "{k}"),
                DistilledToken::TypeRef(t) => assert!(vocab::is_type_word(t), "{t}"),
                _ => {}
            }
        }
        let c = code.canonicalize();
        assert_eq!(c.canonicalize(), c);
        assert_eq!(
            DistilledCode::parse(&code.to_text())
                .unwrap()
                .canonicalize()
                .tokens,
            c.tokens
        );

        // Bag words plus words absorbed by rules are exactly the pruned
        // identifiers' subwords.
        let mut kept: BTreeSet<String> = code.bag_words().into_iter().map(String::from).collect();
        let absorbed: BTreeSet<String> =
            d.report.consumed.iter().flat_map(|w| segment(w)).collect();
        kept.extend(absorbed);
        assert_eq!(kept, pruned_words(&f), "{}.{}", f.name, f.language);

        let strip_once = strip_noncode(&f).unwrap();
        assert_eq!(strip_noncode(&strip_once).unwrap(), strip_once);

        for target in LanguageId::ALL {
            if let Ok(a) = decompile(code, target, &reg) {
                assert_eq!(decompile(&c, target, &reg).unwrap(), a);
            }
        }
    }
}

// ---- generated programs

#[derive(Debug, Clone)]
enum Expr {
    Var(usize),
    Int(u8),
    Bin(Box<Expr>, &'static str, Box<Expr>),
}

#[derive(Debug, Clone)]
enum Stmt {
    Assign(usize, Expr),
    Print(Expr),
    If(Expr, Vec<Stmt>, Option<Vec<Stmt>>),
    While(Expr, Vec<Stmt>),
    Note,
}

const VARS: [&str; 3] = ["a", "b", "total"];

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0..3usize).prop_map(Expr::Var),
        (0..100u8).prop_map(Expr::Int)
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        (
            inner.clone(),
            prop::sample::select(vec!["+", "-", "*", "%"]),
            inner,
        )
            .prop_map(|(a, op, b)| Expr::Bin(Box::new(a), op, Box::new(b)))
    })
}

fn cond() -> impl Strategy<Value = Expr> {
    (
        expr(),
        prop::sample::select(vec!["<", ">", "==", "!=", "<=", ">="]),
        expr(),
    )
        .prop_map(|(a, op, b)| Expr::Bin(Box::new(a), op, Box::new(b)))
}

fn stmts() -> impl Strategy<Value = Vec<Stmt>> {
    let simple = prop_oneof![
        3 => ((0..3usize), expr()).prop_map(|(v, e)| Stmt::Assign(v, e)),
        1 => expr().prop_map(Stmt::Print),
        1 => Just(Stmt::Note),
    ];
    let stmt = simple.prop_recursive(2, 16, 3, |inner| {
        let block = prop::collection::vec(inner, 1..3);
        prop_oneof![
            (cond(), block.clone(), prop::option::of(block.clone()))
                .prop_map(|(c, t, e)| Stmt::If(c, t, e)),
            (cond(), block).prop_map(|(c, b)| Stmt::While(c, b)),
        ]
    });
    prop::collection::vec(stmt, 1..5)
}

fn render_expr(e: &Expr, top: bool) -> String {
    match e {
        Expr::Var(i) => VARS[*i].into(),
        Expr::Int(n) => n.to_string(),
        Expr::Bin(a, op, b) => {
            let s = format!("{} {op} {}", render_expr(a, false), render_expr(b, false));
            if top {
                s
            } else {
                format!("({s})")
            }
        }
    }
}

fn render_block(body: &[Stmt], lang: LanguageId, depth: usize, out: &mut String) {
    let pad = "    ".repeat(depth);
    let py = lang == Python;
    for s in body {
        match s {
            Stmt::Assign(v, e) => {
                let end = if py { "" } else { ";" };
                out.push_str(&format!(
                    "{pad}{} = {}{end}\n",
                    VARS[*v],
                    render_expr(e, true)
                ));
            }
            Stmt::Print(e) => {
                let e = render_expr(e, true);
                let line = match lang {
                    Cpp => format!("cout << ({e}) << endl;"),
                    Java => format!("System.out.println({e});"),
                    CSharp => format!("Console.WriteLine({e});"),
                    Python => format!("print({e})"),
                };
                out.push_str(&format!("{pad}{line}\n"));
            }
            Stmt::Note => {
                let mark = if py { "#" } else { "//" };
                out.push_str(&format!("{pad}{mark} keep going\n"));
            }
            Stmt::If(c, then, alt) => {
                let c = render_expr(c, true);
                if py {
                    out.push_str(&format!("{pad}if {c}:\n"));
                } else {
                    out.push_str(&format!("{pad}if ({c}) {{\n"));
                }
                render_block(then, lang, depth + 1, out);
                if let Some(alt) = alt {
                    out.push_str(&if py {
                        format!("{pad}else:\n")
                    } else {
                        format!("{pad}}} else {{\n")
                    });
                    render_block(alt, lang, depth + 1, out);
                }
                if !py {
                    out.push_str(&format!("{pad}}}\n"));
                }
            }
            Stmt::While(c, body) => {
                let c = render_expr(c, true);
                if py {
                    out.push_str(&format!("{pad}while {c}:\n"));
                } else {
                    out.push_str(&format!("{pad}while ({c}) {{\n"));
                }
                render_block(body, lang, depth + 1, out);
                if !py {
                    out.push_str(&format!("{pad}}}\n"));
                }
            }
        }
    }
}

/// A comment-only block is empty once stripped; give it a statement.
fn padded(body: &[Stmt]) -> Vec<Stmt> {
    let mut body = body.to_vec();
    for s in &mut body {
        match s {
            Stmt::If(_, t, e) => {
                *t = padded(t);
                if let Some(e) = e {
                    *e = padded(e);
                }
            }
            Stmt::While(_, b) => *b = padded(b),
            _ => {}
        }
    }
    if body.iter().all(|s| matches!(s, Stmt::Note)) {
        body.push(Stmt::Assign(2, Expr::Int(0)));
    }
    body
}

fn render(body: &[Stmt], lang: LanguageId) -> String {
    let mut out = match lang {
        Cpp | Java => "int runningTotal(int a, int b) {\n    int total = 0;\n".to_string(),
        CSharp => "int RunningTotal(int a, int b) {\n    int total = 0;\n".to_string(),
        Python => "def running_total(a: int, b: int) -> int:\n    total: int = 0\n".to_string(),
    };
    render_block(&padded(body), lang, 1, &mut out);
    out.push_str(if lang == Python {
        "    return total\n"
    } else {
        "    return total;\n}\n"
    });
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generated_programs_converge_and_round_trip(body in stmts()) {
        let reg = MorphemeRegistry::builtin();
        let mut canon: Vec<(LanguageId, DistilledCode)> = Vec::new();
        for lang in LanguageId::ALL {
            let text = render(&body, lang);
            let f = SourceFunction::from_text(&text, lang).unwrap();
            let once = strip_noncode(&f).unwrap();
            prop_assert_eq!(strip_noncode(&once).unwrap(), once.clone());
            let d = distill_text(&text, lang, &reg).unwrap().code.canonicalize();
            prop_assert!(!d.bag_words().contains(&"keep"));
            for target in LanguageId::ALL {
                let r = round_trip_check(&f, target, &reg).unwrap();
                prop_assert!(r.passed(), "{} -> {}\n{}\n{:?}", lang, target, text, r);
            }
            canon.push((lang, d));
        }
        for (lang, d) in &canon[1..] {
            prop_assert_eq!(&d.tokens, &canon[0].1.tokens, "{} vs {}", lang, canon[0].0);
        }
    }
}
