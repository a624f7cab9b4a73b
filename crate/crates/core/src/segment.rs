//! Identifier segmentation into lowercase subwords.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Class {
    Lower,
    Upper,
    Digit,
    Other,
}

fn class(c: char) -> Class {
    if c.is_ascii_digit() {
        Class::Digit
    } else if c.is_lowercase() {
        Class::Lower
    } else if c.is_uppercase() {
        Class::Upper
    } else if c.is_alphabetic() {
        Class::Lower
    } else {
        Class::Other
    }
}

/// Split an identifier on `_` (and any other non-alphanumeric), on
/// lower→upper transitions and on letter/digit boundaries, then lowercase.
///
/// `getMaxValue` → `[get, max, value]`, `two_sum2` → `[two, sum, 2]`.
pub fn segment(ident: &str) -> Vec<String> {
    let mut words = Vec::new();
    let mut cur = String::new();
    let mut prev = Class::Other;
    for c in ident.chars() {
        let cl = class(c);
        let boundary = match (prev, cl) {
            (_, Class::Other) => true,
            (Class::Lower, Class::Upper) => true,
            (Class::Digit, Class::Lower | Class::Upper) => true,
            (Class::Lower | Class::Upper, Class::Digit) => true,
            _ => false,
        };
        if boundary && !cur.is_empty() {
            words.push(core::mem::take(&mut cur));
        }
        if cl != Class::Other {
            cur.extend(c.to_lowercase());
        }
        prev = cl;
    }
    if !cur.is_empty() {
        words.push(cur);
    }
    words
}

/// Segment a dotted or qualified path into one flat word list.
pub fn segment_path<'a>(parts: impl IntoIterator<Item = &'a str>) -> Vec<String> {
    parts.into_iter().flat_map(segment).collect()
}

/// True when `word` is a valid bag subword: non-empty lowercase alphanumerics
/// of a single class.
pub fn is_subword(word: &str) -> bool {
    !word.is_empty()
        && (word.chars().all(|c| c.is_ascii_digit())
            || word.chars().all(|c| c.is_alphabetic() && !c.is_uppercase()))
}

pub fn join_words(words: &[String]) -> String {
    let mut s = String::new();
    for (i, w) in words.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        s.push_str(w);
    }
    s
}

pub fn words_of(s: &str) -> Vec<String> {
    s.split_whitespace().map(ToString::to_string).collect()
}
