mod common;

use distil::frontend::{strip_noncode, SourceFunction};
use distil::pipeline::distill;
use distil_core::noise::obfuscate;
use distil_core::token::join_tokens;
use distil_core::{LanguageId, MorphemeRegistry, TokenKind};

fn fixture(name: &str) -> String {
    std::fs::read_to_string(common::fixtures().join("two_sum").join(name)).unwrap()
}

fn two_sum() -> SourceFunction {
    SourceFunction::from_text(&fixture("two_sum.java"), LanguageId::Java).unwrap()
}

#[test]
fn token_count_matches_hand_count() {
    let f = two_sum();
    // 88 code tokens and the comment.
    assert_eq!(f.tokens.len(), 89);
    assert_eq!(
        f.tokens.iter().filter(|t| t.text.starts_with("//")).count(),
        1
    );
    assert_eq!(strip_noncode(&f).unwrap().tokens.len(), 88);
    let kinds = |k| f.tokens.iter().filter(|t| t.kind == k).count();
    assert_eq!(kinds(TokenKind::Literal), 3);
}

#[test]
fn distills_to_golden() {
    let d = distill(&two_sum(), &MorphemeRegistry::builtin()).unwrap();
    assert_eq!(
        d.code.canonicalize().to_text(),
        fixture("two_sum.distilled").trim_end()
    );
}

#[test]
fn obfuscates_to_golden() {
    let f = strip_noncode(&two_sum()).unwrap();
    let tree = f.tree().unwrap();
    let (tokens, map) = obfuscate(&tree, tree.function_node().unwrap());
    assert_eq!(
        join_tokens(&tokens, LanguageId::Java),
        fixture("two_sum.obf").trim_end()
    );
    assert_eq!(map.get("twoSum"), Some("FUNC_0"));
    assert_eq!(map.get("nums"), Some("VAR_0"));
    assert_eq!(map.original("VAR_3"), Some("j"));
}
