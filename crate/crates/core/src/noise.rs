//! Seeded corruptions: identifier obfuscation, shuffles, deletions, and the
//! mask / dropout / statement-permutation noise of denoising pre-training.
//!
//! Every operation is a pure function of its input and a 64-bit seed. The
//! generator is ChaCha8 seeded with [`rand::SeedableRng::seed_from_u64`], so
//! outputs are reproducible across platforms.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::ops::Range;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::distilled::{DistilledCode, DistilledToken, MASK};
use crate::lang::LanguageId;
use crate::syntax::{SyntaxNode, SyntaxTree};
use crate::token::{tokenize_node, Token, TokenKind};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed for record `index` of a corpus generated with `base`.
pub fn record_seed(base: u64, index: u64) -> u64 {
    splitmix(base ^ splitmix(index))
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NoiseError {
    #[error("{name} = {value} is outside [0, 1]")]
    InvalidRatio { name: &'static str, value: f64 },
    #[error("{tokens} tokens but {flags} region flags")]
    FlagMismatch { tokens: usize, flags: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    pub mask_ratio: f64,
    pub dropout_ratio: f64,
    pub permute_ratio: f64,
    pub bow_mask_ratio: f64,
    pub bow_dropout_ratio: f64,
    pub bow_permute_ratio: f64,
    pub seed: u64,
}

impl Default for NoiseSpec {
    fn default() -> Self {
        NoiseSpec {
            mask_ratio: 0.3,
            dropout_ratio: 0.3,
            permute_ratio: 0.2,
            bow_mask_ratio: 0.5,
            bow_dropout_ratio: 0.5,
            bow_permute_ratio: 0.0,
            seed: 0,
        }
    }
}

impl NoiseSpec {
    /// All ratios zero: corruption is the identity.
    pub fn zero(seed: u64) -> Self {
        NoiseSpec {
            mask_ratio: 0.0,
            dropout_ratio: 0.0,
            permute_ratio: 0.0,
            bow_mask_ratio: 0.0,
            bow_dropout_ratio: 0.0,
            bow_permute_ratio: 0.0,
            seed,
        }
    }

    pub fn is_zero(&self) -> bool {
        *self == NoiseSpec::zero(self.seed)
    }

    pub fn with_seed(self, seed: u64) -> Self {
        NoiseSpec { seed, ..self }
    }

    pub fn validate(&self) -> Result<(), NoiseError> {
        let ratios = [
            ("mask_ratio", self.mask_ratio),
            ("dropout_ratio", self.dropout_ratio),
            ("permute_ratio", self.permute_ratio),
            ("bow_mask_ratio", self.bow_mask_ratio),
            ("bow_dropout_ratio", self.bow_dropout_ratio),
            ("bow_permute_ratio", self.bow_permute_ratio),
        ];
        for (name, value) in ratios {
            if !(0.0..=1.0).contains(&value) {
                return Err(NoiseError::InvalidRatio { name, value });
            }
        }
        Ok(())
    }
}

// ---- obfuscation

/// Bijection from user identifiers to `FUNC_i` / `VAR_i`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RenameMap {
    forward: BTreeMap<String, String>,
    backward: BTreeMap<String, String>,
    funcs: usize,
    vars: usize,
}

impl RenameMap {
    fn assign(&mut self, name: &str, func: bool) -> String {
        if let Some(r) = self.forward.get(name) {
            return r.clone();
        }
        let r = if func {
            self.funcs += 1;
            format!("FUNC_{}", self.funcs - 1)
        } else {
            self.vars += 1;
            format!("VAR_{}", self.vars - 1)
        };
        self.forward.insert(name.into(), r.clone());
        self.backward.insert(r.clone(), name.into());
        r
    }

    pub fn get(&self, original: &str) -> Option<&str> {
        self.forward.get(original).map(String::as_str)
    }

    pub fn original(&self, replacement: &str) -> Option<&str> {
        self.backward.get(replacement).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.forward.iter().map(|(a, b)| (a.as_str(), b.as_str()))
    }

    /// Undo the renaming on a token list.
    pub fn restore(&self, tokens: &[Token]) -> Vec<Token> {
        tokens
            .iter()
            .map(|t| match (t.kind, self.original(&t.text)) {
                (TokenKind::Identifier, Some(o)) => Token {
                    text: o.into(),
                    ..t.clone()
                },
                _ => t.clone(),
            })
            .collect()
    }
}

/// Library and builtin names that obfuscation leaves alone.
fn is_library_name(language: LanguageId, name: &str) -> bool {
    let list: &[&str] = match language {
        LanguageId::Java => &[
            "System", "Math", "Character", "Integer", "Long", "Double", "Float", "Boolean", "Short", "Byte", "String",
            "Arrays", "Collections", "Objects", "List", "Map", "Set", "Collectors", "Stream", "IntStream", "main",
        ],
        LanguageId::CSharp => &[
            "Console", "Math", "Char", "String", "Convert", "Array", "Enumerable", "Int32", "Int64", "Double",
            "Boolean", "List", "Dictionary", "HashSet", "Queue", "Stack", "Random", "Environment", "StringBuilder",
            "Tuple", "Main", "nameof",
        ],
        LanguageId::Cpp => &[
            "std", "cout", "cin", "cerr", "endl", "printf", "scanf", "puts", "sqrt", "pow", "log", "floor", "ceil", "abs",
            "fabs", "min", "max", "swap", "sort", "reverse", "rand", "srand", "islower", "isupper", "tolower", "toupper",
            "isdigit", "isalpha", "memset", "strlen", "to_string", "stoi", "make_pair", "exit", "getline", "main",
            "accumulate", "lower_bound", "upper_bound", "fill",
        ],
        LanguageId::Python => &[
            "print", "len", "range", "int", "str", "float", "bool", "list", "dict", "set", "tuple", "min", "max", "abs",
            "sum", "sorted", "reversed", "enumerate", "zip", "map", "filter", "input", "open", "math", "random", "self",
            "cls", "super", "isinstance", "ord", "chr", "any", "all", "round", "pow", "divmod", "sys", "collections",
            "deque", "heapq", "queue", "object", "Exception", "ValueError", "__name__", "__init__",
        ],
    };
    list.contains(&name)
}

struct Leaf<'a> {
    node: &'a SyntaxNode,
    parent: Option<&'a SyntaxNode>,
}

fn leaves<'a>(n: &'a SyntaxNode, parent: Option<&'a SyntaxNode>, out: &mut Vec<Leaf<'a>>) {
    if n.span.is_empty() {
        return;
    }
    if n.children.is_empty() {
        out.push(Leaf { node: n, parent });
        return;
    }
    for c in &n.children {
        leaves(c, Some(n), out);
    }
}

/// Replace user identifiers of the function at `node` by `FUNC_i` (names
/// that are called or defined as functions) and `VAR_i` (everything else).
///
/// Member names after `.`, type names, keyword-argument names and library
/// names are kept, so the result still means the same program.
pub fn obfuscate(tree: &SyntaxTree, node: &SyntaxNode) -> (Vec<Token>, RenameMap) {
    let mut ls = Vec::new();
    leaves(node, None, &mut ls);
    let text = |n: &SyntaxNode| tree.text(n);
    let mut renames: BTreeMap<usize, bool> = BTreeMap::new();
    for (i, leaf) in ls.iter().enumerate() {
        let n = leaf.node;
        if n.kind != "identifier" || n.field == Some("type") {
            continue;
        }
        let parent = leaf.parent.map(|p| p.kind).unwrap_or("");
        if matches!(parent, "generic_name" | "qualified_name" | "keyword_argument" | "scoped_identifier")
            && !(parent == "keyword_argument" && n.field != Some("name"))
        {
            continue;
        }
        let prev = i.checked_sub(1).map(|j| text(ls[j].node));
        let next = ls.get(i + 1).map(|l| text(l.node));
        if matches!(prev, Some("." | "->" | "::")) || next == Some("::") {
            continue;
        }
        if is_library_name(tree.language, text(n)) {
            continue;
        }
        renames.insert(n.span.start, next == Some("("));
    }
    let mut map = RenameMap::default();
    let mut out = tokenize_node(tree, node);
    for t in &mut out {
        if let Some(&func) = renames.get(&t.span.start) {
            if t.kind == TokenKind::Identifier {
                let func = func || map.get(&t.text).is_some_and(|r| r.starts_with("FUNC_"));
                t.text = map.assign(&t.text, func);
            }
        }
    }
    (out, map)
}

// ---- shuffles and deletions

/// The lines of `text` in a seeded random order.
pub fn shuffle_lines(text: &str, seed: u64) -> String {
    let mut lines: Vec<&str> = text.split('\n').collect();
    lines.shuffle(&mut rng(seed));
    lines.join("\n")
}

/// The token texts in a seeded random order.
pub fn shuffle_tokens(tokens: &[Token], seed: u64) -> Vec<String> {
    let mut texts: Vec<String> = tokens.iter().map(|t| t.text.clone()).collect();
    texts.shuffle(&mut rng(seed));
    texts
}

/// Shuffle within consecutive windows of `window` tokens.
pub fn shuffle_windows(tokens: &[String], window: usize, seed: u64) -> Vec<String> {
    let mut out = tokens.to_vec();
    let mut r = rng(seed);
    for chunk in out.chunks_mut(window.max(1)) {
        chunk.shuffle(&mut r);
    }
    out
}

pub fn delete_keywords(tokens: &[Token]) -> Vec<Token> {
    tokens.iter().filter(|t| t.kind != TokenKind::Keyword).cloned().collect()
}

/// Structural symbols replaced by blank spaces.
pub const STRUCTURAL_SYMBOLS: [&str; 9] = ["(", ")", "[", "]", "{", "}", ",", ".", ";"];

pub fn delete_symbols(tokens: &[Token]) -> Vec<String> {
    tokens
        .iter()
        .map(|t| {
            if t.kind == TokenKind::Symbol && STRUCTURAL_SYMBOLS.contains(&t.text.as_str()) {
                " ".to_string()
            } else {
                t.text.clone()
            }
        })
        .collect()
}

// ---- denoising corruption

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fate {
    Kept,
    Masked,
    Dropped,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corruption {
    pub tokens: Vec<String>,
    /// One entry per input token, in permuted order.
    pub fates: Vec<Fate>,
    /// Input index of each fate entry.
    pub order: Vec<usize>,
}

/// A statement that may swap with its neighbour in the same block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub span: Range<usize>,
    pub block: usize,
}

/// Sentences of brace-delimited code: runs that end in `;` outside
/// brackets and contain no braces. Every brace opens a new block id.
pub fn statement_spans(tokens: &[String]) -> Vec<Sentence> {
    let mut out = Vec::new();
    let mut start = 0;
    let mut depth = 0i32;
    let mut block = 0;
    let mut braces = false;
    for (i, t) in tokens.iter().enumerate() {
        match t.as_str() {
            "(" | "[" => depth += 1,
            ")" | "]" => depth -= 1,
            "{" | "}" => {
                braces = true;
                if depth == 0 {
                    start = i + 1;
                    braces = false;
                    block += 1;
                }
            }
            ";" if depth == 0 => {
                if !braces && start < i {
                    out.push(Sentence { span: start..i + 1, block });
                }
                start = i + 1;
                braces = false;
            }
            _ => {}
        }
    }
    out
}

/// Sentences of Python source: simple logical lines, grouped into blocks
/// by indentation. Lines ending in `:` open a block and never move.
pub fn python_sentences(tokens: &[Token]) -> Vec<Sentence> {
    let mut lines: Vec<(Range<usize>, u32)> = Vec::new();
    let mut depth = 0i32;
    let mut line = None;
    for (i, t) in tokens.iter().enumerate() {
        if depth == 0 && line != Some(t.line) {
            lines.push((i..i, t.column));
        }
        line = Some(t.line);
        match t.text.as_str() {
            "(" | "[" | "{" => depth += 1,
            ")" | "]" | "}" => depth -= 1,
            _ => {}
        }
        if let Some(l) = lines.last_mut() {
            l.0.end = i + 1;
        }
    }
    let mut out = Vec::new();
    let mut stack: Vec<(u32, usize)> = Vec::new();
    let mut next_block = 0;
    for (span, column) in lines {
        while stack.last().is_some_and(|&(c, _)| c > column) {
            stack.pop();
        }
        if stack.last().is_none_or(|&(c, _)| c != column) {
            stack.push((column, next_block));
            next_block += 1;
        }
        let block = stack.last().map_or(0, |&(_, b)| b);
        if tokens[span.end - 1].text != ":" {
            out.push(Sentence { span, block });
        } else {
            // A header splits its block in two.
            if let Some(top) = stack.last_mut() {
                top.1 = next_block;
                next_block += 1;
            }
        }
    }
    out
}

/// Permutation of `0..n` that swaps adjacent sentences of one block with
/// probability `p` each.
fn permute(n: usize, sentences: &[Sentence], p: f64, r: &mut ChaCha8Rng) -> Vec<usize> {
    let mut pieces: Vec<(Vec<usize>, Option<usize>)> = Vec::new();
    let mut at = 0;
    for s in sentences {
        if s.span.start > at {
            pieces.push(((at..s.span.start).collect(), None));
        }
        pieces.push((s.span.clone().collect(), Some(s.block)));
        at = s.span.end;
    }
    if at < n {
        pieces.push(((at..n).collect(), None));
    }
    if p > 0.0 {
        for i in 0..pieces.len().saturating_sub(1) {
            if pieces[i].1.is_some() && pieces[i].1 == pieces[i + 1].1 && r.random::<f64>() < p {
                pieces.swap(i, i + 1);
            }
        }
    }
    pieces.into_iter().flat_map(|(p, _)| p).collect()
}

fn fate(r: &mut ChaCha8Rng, mask: f64, drop: f64) -> Fate {
    if mask == 0.0 && drop == 0.0 {
        return Fate::Kept;
    }
    let u = r.random::<f64>();
    if u < mask {
        Fate::Masked
    } else if u < mask + drop.min(1.0 - mask) {
        Fate::Dropped
    } else {
        Fate::Kept
    }
}

/// Mask, drop and permute `tokens`; `is_bow` marks name-bag words, which
/// use the bag ratios. Statements are found with [`statement_spans`].
pub fn corrupt_dae(tokens: &[String], is_bow: &[bool], spec: &NoiseSpec) -> Result<Corruption, NoiseError> {
    corrupt_dae_with(tokens, is_bow, &statement_spans(tokens), spec)
}

/// [`corrupt_dae`] with caller-supplied sentences (sorted,
/// non-overlapping), e.g. from [`python_sentences`].
pub fn corrupt_dae_with(
    tokens: &[String],
    is_bow: &[bool],
    statements: &[Sentence],
    spec: &NoiseSpec,
) -> Result<Corruption, NoiseError> {
    spec.validate()?;
    if tokens.len() != is_bow.len() {
        return Err(NoiseError::FlagMismatch {
            tokens: tokens.len(),
            flags: is_bow.len(),
        });
    }
    let mut r = rng(spec.seed);
    let mut order = permute(tokens.len(), statements, spec.permute_ratio, &mut r);
    if spec.bow_permute_ratio > 0.0 {
        // Adjacent words of one bag swap with the bag permutation ratio.
        for i in 0..order.len().saturating_sub(1) {
            if is_bow[order[i]] && is_bow[order[i + 1]] && r.random::<f64>() < spec.bow_permute_ratio {
                order.swap(i, i + 1);
            }
        }
    }
    let mut out = Vec::with_capacity(tokens.len());
    let mut fates = Vec::with_capacity(tokens.len());
    for &i in &order {
        let f = if is_bow[i] {
            fate(&mut r, spec.bow_mask_ratio, spec.bow_dropout_ratio)
        } else {
            fate(&mut r, spec.mask_ratio, spec.dropout_ratio)
        };
        match f {
            Fate::Kept => out.push(tokens[i].clone()),
            Fate::Masked => out.push(MASK.into()),
            Fate::Dropped => {}
        }
        fates.push(f);
    }
    Ok(Corruption {
        tokens: out,
        fates,
        order,
    })
}

/// Word units of distilled code for sequence-level noise: bags are opened
/// into `{`, their words, and `}`, with only the words flagged as bag text.
pub fn distilled_units(d: &DistilledCode) -> (Vec<String>, Vec<bool>) {
    let mut toks = Vec::new();
    let mut bow = Vec::new();
    for t in &d.tokens {
        match t {
            DistilledToken::NameBag(words) => {
                toks.push("{".to_string());
                bow.push(false);
                for w in words {
                    toks.push(w.clone());
                    bow.push(true);
                }
                toks.push("}".to_string());
                bow.push(false);
            }
            other => {
                toks.push(other.to_string());
                bow.push(false);
            }
        }
    }
    (toks, bow)
}

/// [`corrupt_dae`] over the word units of distilled code. Statements are
/// found on the distilled structure, so bag braces never open a block.
pub fn corrupt_distilled_units(d: &DistilledCode, spec: &NoiseSpec) -> Result<Corruption, NoiseError> {
    let (units, bow) = distilled_units(d);
    let mut scan = Vec::with_capacity(units.len());
    for t in &d.tokens {
        match t {
            DistilledToken::NameBag(words) => scan.extend(core::iter::repeat_n(String::from("w"), words.len() + 2)),
            DistilledToken::StructMark(m) => scan.push(m.as_str().to_string()),
            _ => scan.push(String::from("w")),
        }
    }
    corrupt_dae_with(&units, &bow, &statement_spans(&scan), spec)
}

/// Corrupt distilled code while keeping it well formed: bag order is
/// randomized, structural marks are never touched, masked tokens become
/// the mask sentinel, and a bag that loses every word keeps one mask.
/// The all-zero spec returns `d` unchanged.
pub fn corrupt_distilled(d: &DistilledCode, spec: &NoiseSpec) -> Result<DistilledCode, NoiseError> {
    spec.validate()?;
    if spec.is_zero() {
        return Ok(d.clone());
    }
    let mut r = rng(spec.seed);
    let spans = distilled_statements(&d.tokens);
    let order = permute(d.tokens.len(), &spans, spec.permute_ratio, &mut r);
    let mut out = Vec::with_capacity(d.tokens.len());
    for i in order {
        match &d.tokens[i] {
            DistilledToken::StructMark(m) => out.push(DistilledToken::StructMark(*m)),
            DistilledToken::NameBag(words) => {
                let mut words = words.clone();
                words.shuffle(&mut r);
                let mut kept = Vec::new();
                for w in words {
                    match fate(&mut r, spec.bow_mask_ratio, spec.bow_dropout_ratio) {
                        Fate::Kept => kept.push(w),
                        Fate::Masked => kept.push(MASK.into()),
                        Fate::Dropped => {}
                    }
                }
                if kept.is_empty() {
                    kept.push(MASK.into());
                }
                out.push(DistilledToken::NameBag(kept));
            }
            other => match fate(&mut r, spec.mask_ratio, spec.dropout_ratio) {
                Fate::Kept => out.push(other.clone()),
                Fate::Masked => out.push(DistilledToken::Mask),
                Fate::Dropped => {}
            },
        }
    }
    Ok(DistilledCode::new(out, d.source_language))
}

fn distilled_statements(tokens: &[DistilledToken]) -> Vec<Sentence> {
    let texts: Vec<String> = tokens
        .iter()
        .map(|t| match t {
            DistilledToken::StructMark(m) => m.as_str().to_string(),
            // Bags print with braces; keep them out of the brace scan.
            _ => String::from("w"),
        })
        .collect();
    statement_spans(&texts)
}

/// Masked-language-model sample: each token is replaced by the mask
/// sentinel with probability `ratio`. Returns the masked sequence and the
/// `(position, original)` answers.
pub fn mlm_mask(tokens: &[String], ratio: f64, seed: u64) -> Result<(Vec<String>, Vec<(usize, String)>), NoiseError> {
    if !(0.0..=1.0).contains(&ratio) {
        return Err(NoiseError::InvalidRatio {
            name: "mask_ratio",
            value: ratio,
        });
    }
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(tokens.len());
    let mut answers = Vec::new();
    for (i, t) in tokens.iter().enumerate() {
        if ratio > 0.0 && r.random::<f64>() < ratio {
            out.push(MASK.to_string());
            answers.push((i, t.clone()));
        } else {
            out.push(t.clone());
        }
    }
    Ok((out, answers))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn s(v: &[&str]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn zero_spec_is_identity() {
        let toks = s(&["a", "=", "1", ";", "b", "=", "2", ";"]);
        let c = corrupt_dae(&toks, &[false; 8], &NoiseSpec::zero(3)).unwrap();
        assert_eq!(c.tokens, toks);
    }

    #[test]
    fn full_dropout_empties_plain_region() {
        let toks = s(&["x", "y", "z"]);
        let spec = NoiseSpec {
            dropout_ratio: 1.0,
            ..NoiseSpec::zero(1)
        };
        let c = corrupt_dae(&toks, &[false, true, false], &spec).unwrap();
        assert_eq!(c.tokens, s(&["y"]));
    }

    #[test]
    fn statement_spans_skip_headers() {
        let toks = s(&["for", "(", "a", ";", "b", ";", "c", ")", "{", "x", ";", "y", ";", "}"]);
        let spans: Vec<_> = statement_spans(&toks).into_iter().map(|s| s.span).collect();
        assert_eq!(spans, vec![9..11, 11..13]);
    }

    #[test]
    fn rename_map_is_dense() {
        let mut m = RenameMap::default();
        assert_eq!(m.assign("f", true), "FUNC_0");
        assert_eq!(m.assign("a", false), "VAR_0");
        assert_eq!(m.assign("b", false), "VAR_1");
        assert_eq!(m.assign("a", false), "VAR_0");
        assert_eq!(m.original("VAR_1"), Some("b"));
    }

    #[test]
    fn record_seeds_differ() {
        assert_ne!(record_seed(7, 0), record_seed(7, 1));
        assert_eq!(record_seed(7, 5), record_seed(7, 5));
    }
}
