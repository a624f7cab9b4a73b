use std::collections::BTreeMap;

use distil_core::distilled::{Delim, Sep, StructMark, MASK};
use distil_core::metrics::{bleu, rank, retrieval_metrics};
use distil_core::noise::{
    corrupt_dae, corrupt_distilled, delete_symbols, mlm_mask, shuffle_lines, shuffle_tokens, shuffle_windows,
    Fate, NoiseSpec, STRUCTURAL_SYMBOLS,
};
use distil_core::registry::instantiate_text;
use distil_core::{DistilledCode, DistilledToken, MorphemeRegistry, Token, TokenKind};
use proptest::prelude::*;

fn sorted<T: Ord + Clone>(v: &[T]) -> Vec<T> {
    let mut v = v.to_vec();
    v.sort();
    v
}

fn words() -> impl Strategy<Value = Vec<String>> {
    prop::collection::vec("[a-e]{1,2}", 0..40)
}

fn token(text: &str) -> Token {
    let kind = if STRUCTURAL_SYMBOLS.contains(&text) || "+-*=<>".contains(text) {
        TokenKind::Symbol
    } else if text.starts_with(|c: char| c.is_ascii_digit()) {
        TokenKind::Literal
    } else {
        TokenKind::Identifier
    };
    Token {
        text: text.into(),
        kind,
        span: 0..0,
        line: 0,
        column: 0,
    }
}

fn code_tokens() -> impl Strategy<Value = Vec<Token>> {
    let pool = vec!["x", "y", "f", "1", "2", "(", ")", "[", "]", "{", "}", ",", ".", ";", "+", "=", "<"];
    prop::collection::vec(prop::sample::select(pool), 0..60)
        .prop_map(|v| v.into_iter().map(token).collect())
}

// ---- metrics

proptest! {
    #[test]
    fn bleu_of_self_is_100(h in prop::collection::vec("[a-e]{1,2}", 4..30)) {
        prop_assert!((bleu(&h, &h, 4).unwrap() - 100.0).abs() < 1e-9);
    }

    #[test]
    fn bleu_is_in_range(h in words(), r in prop::collection::vec("[a-e]{1,2}", 1..30)) {
        let b = bleu(&h, &r, 4).unwrap();
        prop_assert!((0.0..=100.0 + 1e-9).contains(&b), "{b}");
    }

    #[test]
    fn bleu_ignores_consistent_renaming(h in words(), r in prop::collection::vec("[a-e]{1,2}", 1..30)) {
        let rename = |v: &[String]| -> Vec<String> { v.iter().map(|w| format!("{w}_{}", w.len())).collect() };
        let a = bleu(&h, &r, 4).unwrap();
        let b = bleu(&rename(&h), &rename(&r), 4).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn retrieval_ignores_increasing_transforms(
        rows in prop::collection::vec(prop::collection::vec((0..20u8, any::<bool>()), 1..8), 1..5),
        scale in 0.1f64..10.0,
        shift in -5.0f64..5.0,
        k in 1usize..5,
    ) {
        let mut sims: Vec<Vec<f64>> = rows.iter().map(|r| r.iter().map(|&(s, _)| s as f64).collect()).collect();
        let mut rel: Vec<Vec<bool>> = rows.iter().map(|r| r.iter().map(|&(_, b)| b).collect()).collect();
        for r in &mut rel {
            r[0] = true;
        }
        let a = retrieval_metrics(&sims, &rel, k).unwrap();
        for row in &mut sims {
            for s in row.iter_mut() {
                *s = (*s * scale + shift).exp();
            }
        }
        let b = retrieval_metrics(&sims, &rel, k).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn ties_rank_in_index_order(scores in prop::collection::vec(0..4u8, 0..20)) {
        let s: Vec<f64> = scores.iter().map(|&x| x as f64).collect();
        let order = rank(&s);
        prop_assert_eq!(sorted(&order), (0..s.len()).collect::<Vec<_>>());
        for w in order.windows(2) {
            prop_assert!(s[w[0]] > s[w[1]] || (s[w[0]] == s[w[1]] && w[0] < w[1]));
        }
    }
}

// ---- shuffles and deletions

proptest! {
    #[test]
    fn shuffles_preserve_multisets(toks in code_tokens(), seed: u64, window in 1usize..8) {
        let texts: Vec<String> = toks.iter().map(|t| t.text.clone()).collect();
        let shuffled = shuffle_tokens(&toks, seed);
        prop_assert_eq!(sorted(&shuffled), sorted(&texts));
        prop_assert_eq!(&shuffled, &shuffle_tokens(&toks, seed));
        let w = shuffle_windows(&texts, window, seed);
        for (a, b) in w.chunks(window).zip(texts.chunks(window)) {
            prop_assert_eq!(sorted(a), sorted(b));
        }
        let text = texts.join(" ").replace(';', ";\n");
        let lines: Vec<&str> = text.split('\n').collect();
        let out = shuffle_lines(&text, seed);
        prop_assert_eq!(sorted(&out.split('\n').collect::<Vec<_>>()), sorted(&lines));
    }

    #[test]
    fn delete_symbols_blanks_exactly_the_structural_nine(toks in code_tokens()) {
        let out = delete_symbols(&toks);
        prop_assert_eq!(out.len(), toks.len());
        for (t, o) in toks.iter().zip(&out) {
            if STRUCTURAL_SYMBOLS.contains(&t.text.as_str()) {
                prop_assert_eq!(o, " ");
            } else {
                prop_assert_eq!(o, &t.text);
            }
        }
    }
}

// ---- denoising noise

fn spec() -> impl Strategy<Value = NoiseSpec> {
    (0.0..=1.0f64, 0.0..=1.0f64, 0.0..=1.0f64, 0.0..=1.0f64, 0.0..=1.0f64, 0.0..=1.0f64, any::<u64>()).prop_map(
        |(m, d, p, bm, bd, bp, seed)| NoiseSpec {
            mask_ratio: m,
            dropout_ratio: d,
            permute_ratio: p,
            bow_mask_ratio: bm,
            bow_dropout_ratio: bd,
            bow_permute_ratio: bp,
            seed,
        },
    )
}

fn bag() -> impl Strategy<Value = DistilledToken> {
    prop::collection::vec("[a-z]{1,5}", 1..4).prop_map(DistilledToken::NameBag)
}

fn operand() -> impl Strategy<Value = DistilledToken> {
    prop_oneof![bag(), (0..100u32).prop_map(|n| DistilledToken::Literal(n.to_string()))]
}

fn mark(m: StructMark) -> DistilledToken {
    DistilledToken::StructMark(m)
}

/// `func int {..} ( ) { ... }` with assignments and `if` blocks.
fn distilled() -> impl Strategy<Value = DistilledCode> {
    let assign = (bag(), operand(), prop::sample::select(vec!["+", "-", "*"]), operand()).prop_map(|(n, a, op, b)| {
        vec![n, DistilledToken::kw("assign"), a, DistilledToken::kw(op), b, mark(StructMark::Sep(Sep::Semi))]
    });
    let stmt = assign.prop_recursive(2, 12, 3, |inner| {
        (operand(), operand(), prop::collection::vec(inner, 1..3)).prop_map(|(a, b, body)| {
            let mut v = vec![
                DistilledToken::kw("if"),
                mark(StructMark::Open(Delim::Paren)),
                a,
                DistilledToken::kw("<"),
                b,
                mark(StructMark::Close(Delim::Paren)),
                mark(StructMark::Open(Delim::Brace)),
            ];
            v.extend(body.into_iter().flatten());
            v.push(mark(StructMark::Close(Delim::Brace)));
            v
        })
    });
    (bag(), prop::collection::vec(stmt, 1..5)).prop_map(|(name, body)| {
        let mut t = vec![
            DistilledToken::kw("func"),
            DistilledToken::TypeRef("int".into()),
            name,
            mark(StructMark::Open(Delim::Paren)),
            mark(StructMark::Close(Delim::Paren)),
            mark(StructMark::Open(Delim::Brace)),
        ];
        t.extend(body.into_iter().flatten());
        t.push(mark(StructMark::Close(Delim::Brace)));
        DistilledCode::new(t, None)
    })
}

proptest! {
    #[test]
    fn zero_spec_is_identity(toks in words(), seed: u64) {
        let bow: Vec<bool> = toks.iter().map(|t| t.len() == 1).collect();
        let c = corrupt_dae(&toks, &bow, &NoiseSpec::zero(seed)).unwrap();
        prop_assert_eq!(c.tokens, toks);
    }

    #[test]
    fn dae_is_deterministic_and_accounts_for_every_token(toks in words(), spec in spec()) {
        let bow: Vec<bool> = toks.iter().map(|t| t.len() == 1).collect();
        let a = corrupt_dae(&toks, &bow, &spec).unwrap();
        prop_assert_eq!(&a, &corrupt_dae(&toks, &bow, &spec).unwrap());
        prop_assert_eq!(sorted(&a.order), (0..toks.len()).collect::<Vec<_>>());
        let mut out = Vec::new();
        for (&i, f) in a.order.iter().zip(&a.fates) {
            match f {
                Fate::Kept => out.push(toks[i].clone()),
                Fate::Masked => out.push(MASK.to_string()),
                Fate::Dropped => {}
            }
        }
        prop_assert_eq!(out, a.tokens);
    }

    #[test]
    fn corrupted_distilled_code_validates(d in distilled(), spec in spec()) {
        d.validate().unwrap();
        let c = corrupt_distilled(&d, &spec).unwrap();
        prop_assert!(c.validate().is_ok(), "{}", c);
        prop_assert_eq!(corrupt_distilled(&d, &NoiseSpec::zero(spec.seed)).unwrap(), d);
    }

    #[test]
    fn canonicalize_is_idempotent(d in distilled()) {
        let c = d.canonicalize();
        prop_assert_eq!(c.canonicalize(), c.clone());
        prop_assert_eq!(DistilledCode::parse(&d.to_text()).unwrap().canonicalize(), c);
    }

    #[test]
    fn mlm_answers_align(toks in words(), ratio in 0.0..=1.0f64, seed: u64) {
        let (masked, answers) = mlm_mask(&toks, ratio, seed).unwrap();
        prop_assert_eq!(masked.len(), toks.len());
        let at: BTreeMap<usize, String> = answers.into_iter().collect();
        for (i, (m, t)) in masked.iter().zip(&toks).enumerate() {
            match at.get(&i) {
                Some(a) => {
                    prop_assert_eq!(m, MASK);
                    prop_assert_eq!(a, t);
                }
                None => prop_assert_eq!(m, t),
            }
        }
    }
}

// ---- registry

proptest! {
    #[test]
    fn every_rule_round_trips_with_bound_slots(a in "[a-z]{1,3}", b in "[a-z]{1,3}", c in "[a-z]{1,3}") {
        let reg = MorphemeRegistry::builtin();
        let args = [('a', a.as_str()), ('b', b.as_str()), ('c', c.as_str())];
        for rule in reg.rules() {
            let forward = reg.lookup(rule.language, rule.category, rule.surface, &args);
            let want = instantiate_text(rule.unified, &args);
            prop_assert_eq!(forward.as_deref(), Some(want.as_str()), "{}", rule.surface);
            prop_assert_eq!(forward, reg.lookup(rule.language, rule.category, rule.surface, &args));
            let back = reg.reverse_lookup(rule.unified, rule.language, &args);
            prop_assert_eq!(back, Some(instantiate_text(rule.surface, &args)));
        }
    }
}

#[test]
fn identity_rows_map_to_themselves() {
    let reg = MorphemeRegistry::builtin();
    let mut identities = 0;
    for row in reg.rows() {
        let cells: Vec<_> = row.cells.iter().flatten().collect();
        if cells.len() == 4 && cells.iter().all(|c| c.text == row.unified_text) {
            identities += 1;
        }
    }
    assert!(identities >= 7, "{identities}");
}
