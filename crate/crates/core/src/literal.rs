//! Literal normalization shared by lowering and registry patterns.

use alloc::string::String;

use crate::lang::LanguageId;

/// Normalize a literal's source text to its distilled spelling.
///
/// Strings are re-quoted with double quotes, numeric suffixes and digit
/// separators are dropped, and `True`/`None`/`nullptr` map to
/// `true`/`null`. Returns `None` for literals without a portable spelling
/// (raw, verbatim, prefixed, formatted or multi-line strings, complex numbers).
pub fn normalize_literal(text: &str, language: LanguageId) -> Option<String> {
    match text {
        "true" | "True" => return Some("true".into()),
        "false" | "False" => return Some("false".into()),
        "null" | "None" | "nullptr" => return Some("null".into()),
        _ => {}
    }
    let first = text.chars().next()?;
    if first == '"' || (first == '\'' && language == LanguageId::Python) {
        return normalize_string(text);
    }
    if first == '\'' {
        return (text.len() >= 3 && text.ends_with('\'')).then(|| text.into());
    }
    if first.is_ascii_digit() || (first == '.' && text.len() > 1) {
        return normalize_number(text);
    }
    None
}

fn normalize_string(text: &str) -> Option<String> {
    let quote = text.chars().next()?;
    if text.len() < 2 || !text.ends_with(quote) || text.starts_with("\"\"\"") || text.starts_with("'''") {
        return None;
    }
    let inner = &text[1..text.len() - 1];
    if inner.contains('\n') {
        return None;
    }
    let mut out = String::from("\"");
    let mut chars = inner.chars();
    while let Some(c) = chars.next() {
        match c {
            '\\' => {
                let next = chars.next()?;
                if next == '\'' {
                    out.push('\'');
                } else {
                    out.push('\\');
                    out.push(next);
                }
            }
            '"' => out.push_str("\\\""),
            c => out.push(c),
        }
    }
    out.push('"');
    Some(out)
}

fn normalize_number(text: &str) -> Option<String> {
    let cleaned: String = text.chars().filter(|&c| c != '_' && c != '\'').collect();
    let lower = cleaned.to_ascii_lowercase();
    if lower.ends_with('j') {
        return None;
    }
    let is_hex = lower.starts_with("0x");
    let suffixes: &[char] = if is_hex {
        &['u', 'l']
    } else {
        &['f', 'd', 'l', 'u', 'm']
    };
    let trimmed = lower.trim_end_matches(suffixes);
    if trimmed.is_empty() {
        return None;
    }
    Some(trimmed.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(s: &str) -> Option<String> {
        normalize_literal(s, LanguageId::Python)
    }

    fn c(s: &str) -> Option<String> {
        normalize_literal(s, LanguageId::Java)
    }

    #[test]
    fn strings_are_double_quoted() {
        assert_eq!(n("'abc'").as_deref(), Some("\"abc\""));
        assert_eq!(n("\"abc\"").as_deref(), Some("\"abc\""));
        assert_eq!(n("''").as_deref(), Some("\"\""));
        assert_eq!(n("'say \"hi\"'").as_deref(), Some("\"say \\\"hi\\\"\""));
        assert_eq!(n("'it\\'s'").as_deref(), Some("\"it's\""));
        assert_eq!(n("'''doc'''"), None);
    }

    #[test]
    fn chars_stay_chars() {
        assert_eq!(c("'a'").as_deref(), Some("'a'"));
        assert_eq!(c("'\\n'").as_deref(), Some("'\\n'"));
        assert_eq!(n("'a'").as_deref(), Some("\"a\""));
    }

    #[test]
    fn numbers_drop_suffixes() {
        assert_eq!(n("10L").as_deref(), Some("10"));
        assert_eq!(n("1.5f").as_deref(), Some("1.5"));
        assert_eq!(n("0xFFL").as_deref(), Some("0xff"));
        assert_eq!(n("1_000").as_deref(), Some("1000"));
        assert_eq!(n("2.5m").as_deref(), Some("2.5"));
        assert_eq!(n("1e3").as_deref(), Some("1e3"));
        assert_eq!(n("3j"), None);
    }

    #[test]
    fn keywords() {
        assert_eq!(n("True").as_deref(), Some("true"));
        assert_eq!(n("None").as_deref(), Some("null"));
        assert_eq!(n("nullptr").as_deref(), Some("null"));
    }
}
