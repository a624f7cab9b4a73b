//! Distilled code: tokens, text serialization and canonical form.
//!
//! Tokens are separated by single spaces. A name bag prints as `{w1 w2}`
//! (no inner padding), block braces as standalone `{` and `}`, and string
//! literals keep their quotes so they may contain spaces.

pub mod parse;

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::lang::LanguageId;
use crate::segment::is_subword;
use crate::vocab;

/// Sentinel used by masking corruptions.
pub const MASK: &str = "<mask>";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Delim {
    Brace,
    Paren,
    Bracket,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sep {
    Comma,
    Semi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StructMark {
    Open(Delim),
    Close(Delim),
    Sep(Sep),
}

impl StructMark {
    pub fn as_str(self) -> &'static str {
        match self {
            StructMark::Open(Delim::Brace) => "{",
            StructMark::Open(Delim::Paren) => "(",
            StructMark::Open(Delim::Bracket) => "[",
            StructMark::Close(Delim::Brace) => "}",
            StructMark::Close(Delim::Paren) => ")",
            StructMark::Close(Delim::Bracket) => "]",
            StructMark::Sep(Sep::Comma) => ",",
            StructMark::Sep(Sep::Semi) => ";",
        }
    }

    pub fn parse(s: &str) -> Option<StructMark> {
        Some(match s {
            "{" => StructMark::Open(Delim::Brace),
            "(" => StructMark::Open(Delim::Paren),
            "[" => StructMark::Open(Delim::Bracket),
            "}" => StructMark::Close(Delim::Brace),
            ")" => StructMark::Close(Delim::Paren),
            "]" => StructMark::Close(Delim::Bracket),
            "," => StructMark::Sep(Sep::Comma),
            ";" => StructMark::Sep(Sep::Semi),
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DistilledToken {
    UnifiedKeyword(String),
    TypeRef(String),
    NameBag(Vec<String>),
    Literal(String),
    StructMark(StructMark),
    Mask,
}

impl DistilledToken {
    pub fn kw(s: &str) -> Self {
        DistilledToken::UnifiedKeyword(s.into())
    }

    pub fn is_kw(&self, s: &str) -> bool {
        matches!(self, DistilledToken::UnifiedKeyword(k) if k == s)
    }

    pub fn is_mark(&self, m: StructMark) -> bool {
        matches!(self, DistilledToken::StructMark(x) if *x == m)
    }
}

impl fmt::Display for DistilledToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistilledToken::UnifiedKeyword(s) | DistilledToken::TypeRef(s) | DistilledToken::Literal(s) => f.write_str(s),
            DistilledToken::NameBag(words) => {
                f.write_str("{")?;
                for (i, w) in words.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    f.write_str(w)?;
                }
                f.write_str("}")
            }
            DistilledToken::StructMark(m) => f.write_str(m.as_str()),
            DistilledToken::Mask => f.write_str(MASK),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DistilledError {
    #[error("offset {offset}: {reason}")]
    Lex { offset: usize, reason: String },
    #[error("unbalanced structural marks")]
    Unbalanced,
    #[error("`{0}` is not in the distilled vocabulary")]
    UnknownKeyword(String),
    #[error("invalid name bag `{0}`")]
    BadBag(String),
    #[error("token {pos}: {reason}")]
    Syntax { pos: usize, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DistilledCode {
    pub tokens: Vec<DistilledToken>,
    /// Provenance only; not serialized.
    pub source_language: Option<LanguageId>,
}

impl DistilledCode {
    pub fn new(tokens: Vec<DistilledToken>, source_language: Option<LanguageId>) -> Self {
        DistilledCode {
            tokens,
            source_language,
        }
    }

    /// Parse serialized distilled text and check its invariants.
    pub fn parse(text: &str) -> Result<Self, DistilledError> {
        let d = DistilledCode::new(lex(text)?, None);
        d.validate()?;
        Ok(d)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Sort every name bag's subwords; everything else is untouched.
    pub fn canonicalize(&self) -> DistilledCode {
        let tokens = self
            .tokens
            .iter()
            .map(|t| match t {
                DistilledToken::NameBag(w) => {
                    let mut w = w.clone();
                    w.sort();
                    DistilledToken::NameBag(w)
                }
                other => other.clone(),
            })
            .collect();
        DistilledCode::new(tokens, self.source_language)
    }

    pub fn is_balanced(&self) -> bool {
        let mut stack = Vec::new();
        for t in &self.tokens {
            match t {
                DistilledToken::StructMark(StructMark::Open(d)) => stack.push(*d),
                DistilledToken::StructMark(StructMark::Close(d)) => {
                    if stack.pop() != Some(*d) {
                        return false;
                    }
                }
                _ => {}
            }
        }
        stack.is_empty()
    }

    /// Balance, vocabulary closure and bag well-formedness.
    pub fn validate(&self) -> Result<(), DistilledError> {
        if !self.is_balanced() {
            return Err(DistilledError::Unbalanced);
        }
        for t in &self.tokens {
            match t {
                DistilledToken::UnifiedKeyword(k) if !vocab::is_keyword(k) => {
                    return Err(DistilledError::UnknownKeyword(k.clone()))
                }
                DistilledToken::TypeRef(k) if !vocab::is_type_word(k) => {
                    return Err(DistilledError::UnknownKeyword(k.clone()))
                }
                DistilledToken::NameBag(w) if w.is_empty() || !w.iter().all(|w| is_subword(w) || w == MASK) => {
                    return Err(DistilledError::BadBag(t.to_string()))
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// All bag subwords, in order.
    pub fn bag_words(&self) -> Vec<&str> {
        self.tokens
            .iter()
            .filter_map(|t| match t {
                DistilledToken::NameBag(w) => Some(w.iter().map(String::as_str)),
                _ => None,
            })
            .flatten()
            .collect()
    }
}

impl fmt::Display for DistilledCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.tokens.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

fn is_literal_word(w: &str) -> bool {
    matches!(w, "true" | "false" | "null")
        || w.starts_with(|c: char| c.is_ascii_digit())
        || (w.starts_with('.') && w.len() > 1 && w[1..].starts_with(|c: char| c.is_ascii_digit()))
}

/// Classify one whitespace-free word.
pub fn classify_word(w: &str) -> Result<DistilledToken, DistilledError> {
    if w == MASK {
        return Ok(DistilledToken::Mask);
    }
    if let Some(m) = StructMark::parse(w) {
        return Ok(DistilledToken::StructMark(m));
    }
    if vocab::is_type_word(w) {
        return Ok(DistilledToken::TypeRef(w.into()));
    }
    if vocab::is_keyword(w) {
        return Ok(DistilledToken::UnifiedKeyword(w.into()));
    }
    if is_literal_word(w) {
        return Ok(DistilledToken::Literal(w.into()));
    }
    Err(DistilledError::UnknownKeyword(w.into()))
}

/// Split serialized distilled text into tokens.
pub fn lex(text: &str) -> Result<Vec<DistilledToken>, DistilledError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if c == b'"' || c == b'\'' {
            i += 1;
            while i < bytes.len() && bytes[i] != c {
                if bytes[i] == b'\\' {
                    i += 1;
                }
                i += 1;
            }
            if i >= bytes.len() {
                return Err(DistilledError::Lex {
                    offset: start,
                    reason: "unterminated literal".into(),
                });
            }
            i += 1;
            out.push(DistilledToken::Literal(text[start..i].into()));
            continue;
        }
        if c == b'{' && i + 1 < bytes.len() && !bytes[i + 1].is_ascii_whitespace() && bytes[i + 1] != b'}' {
            let end = text[i..].find('}').map(|e| i + e).ok_or_else(|| DistilledError::Lex {
                offset: start,
                reason: "unterminated name bag".into(),
            })?;
            let words: Vec<String> = text[i + 1..end].split_whitespace().map(ToString::to_string).collect();
            out.push(DistilledToken::NameBag(words));
            i = end + 1;
            continue;
        }
        if let Some(m) = c.is_ascii().then(|| StructMark::parse(&text[i..i + 1])).flatten() {
            out.push(DistilledToken::StructMark(m));
            i += 1;
            continue;
        }
        while i < bytes.len() && !bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        out.push(classify_word(&text[start..i])?);
    }
    Ok(out)
}
