//! Rendering name bags as target-language identifiers.

use alloc::string::String;
use alloc::vec::Vec;

use crate::lang::LanguageId;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NameStyle {
    Camel,
    Snake,
}

impl NameStyle {
    pub fn for_target(target: LanguageId) -> NameStyle {
        match target {
            LanguageId::Java | LanguageId::CSharp => NameStyle::Camel,
            LanguageId::Cpp | LanguageId::Python => NameStyle::Snake,
        }
    }
}

/// Whether a name denotes a value (variable, function) or a user type.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Value,
    Type,
}

const JAVA_RESERVED: &[&str] = &[
    "abstract", "assert", "boolean", "break", "byte", "case", "catch", "char", "class", "const", "continue",
    "default", "do", "double", "else", "enum", "extends", "final", "finally", "float", "for", "goto", "if",
    "implements", "import", "instanceof", "int", "interface", "long", "native", "new", "package", "private",
    "protected", "public", "return", "short", "static", "strictfp", "super", "switch", "synchronized", "this",
    "throw", "throws", "transient", "try", "void", "volatile", "while", "true", "false", "null", "var", "record",
    "yield", "Math", "System", "Character", "String", "Integer", "Long", "Double", "Float", "Boolean", "Short",
    "Byte", "Vector", "List", "ArrayList", "HashMap", "Map", "HashSet", "Set", "Queue", "Deque", "ArrayDeque",
    "LinkedList", "Object", "rand",
];

const CSHARP_RESERVED: &[&str] = &[
    "abstract", "as", "base", "bool", "break", "byte", "case", "catch", "char", "checked", "class", "const",
    "continue", "decimal", "default", "delegate", "do", "double", "else", "enum", "event", "explicit", "extern",
    "false", "finally", "fixed", "float", "for", "foreach", "goto", "if", "implicit", "in", "int", "interface",
    "internal", "is", "lock", "long", "namespace", "new", "null", "object", "operator", "out", "override",
    "params", "private", "protected", "public", "readonly", "ref", "return", "sbyte", "sealed", "short", "sizeof",
    "stackalloc", "static", "string", "struct", "switch", "this", "throw", "true", "try", "typeof", "uint",
    "ulong", "unchecked", "unsafe", "ushort", "using", "virtual", "void", "volatile", "while", "var", "dynamic",
    "Math", "Console", "Char", "String", "Int32", "Int64", "Int16", "Double", "Single", "Boolean", "List",
    "Dictionary", "HashSet", "Queue", "Random", "Object", "rand",
];

const CPP_RESERVED: &[&str] = &[
    "alignas", "alignof", "and", "and_eq", "asm", "auto", "bitand", "bitor", "bool", "break", "case", "catch",
    "char", "class", "compl", "const", "constexpr", "const_cast", "continue", "decltype", "default", "delete", "do",
    "double", "dynamic_cast", "else", "enum", "explicit", "export", "extern", "false", "float", "for", "friend",
    "goto", "if", "inline", "int", "long", "mutable", "namespace", "new", "noexcept", "not", "not_eq", "nullptr",
    "operator", "or", "or_eq", "private", "protected", "public", "register", "reinterpret_cast", "return", "short",
    "signed", "sizeof", "static", "static_assert", "static_cast", "struct", "switch", "template", "this",
    "thread_local", "throw", "true", "try", "typedef", "typeid", "typename", "union", "unsigned", "using",
    "virtual", "void", "volatile", "wchar_t", "while", "xor", "xor_eq", "std", "cout", "cin", "endl", "string",
    "vector", "map", "set", "queue", "deque", "unordered_map", "unordered_set", "pow", "sqrt", "log", "floor",
    "rand", "islower", "tolower", "main", "int32_t", "int64_t", "size_t",
];

const PYTHON_RESERVED: &[&str] = &[
    "False", "None", "True", "and", "as", "assert", "async", "await", "break", "class", "continue", "def", "del",
    "elif", "else", "except", "finally", "for", "from", "global", "if", "import", "in", "is", "lambda", "nonlocal",
    "not", "or", "pass", "raise", "return", "try", "while", "with", "yield", "self", "cls", "print", "len", "int",
    "str", "float", "bool", "list", "dict", "set", "range", "math", "random", "queue", "deque", "Queue", "List",
    "Dict", "Set", "type", "object",
];

pub fn is_reserved(target: LanguageId, word: &str) -> bool {
    let list = match target {
        LanguageId::Java => JAVA_RESERVED,
        LanguageId::CSharp => CSHARP_RESERVED,
        LanguageId::Cpp => CPP_RESERVED,
        LanguageId::Python => PYTHON_RESERVED,
    };
    list.contains(&word)
}

fn is_digits(w: &str) -> bool {
    w.chars().all(|c| c.is_ascii_digit())
}

fn capitalize(w: &str) -> Option<String> {
    let mut cs = w.chars();
    let first = cs.next()?;
    let up: String = first.to_uppercase().collect();
    // Scripts without case cannot mark a word boundary by capitalization.
    if up.chars().eq(core::iter::once(first)) {
        return None;
    }
    Some(up + cs.as_str())
}

/// Join bag words into one identifier that segments back to the same words.
pub fn render_name(words: &[String], target: LanguageId, role: Role) -> String {
    let mut order: Vec<&str> = words.iter().map(String::as_str).collect();
    if let Some(i) = order.iter().position(|w| !is_digits(w)) {
        let w = order.remove(i);
        order.insert(0, w);
    }
    let style = match role {
        Role::Type => NameStyle::Camel,
        Role::Value => NameStyle::for_target(target),
    };
    let mut out = String::new();
    let mut prev: Option<&str> = None;
    let mut prev_cap = false;
    for (i, w) in order.iter().enumerate() {
        let cap = role == Role::Type || (style == NameStyle::Camel && i > 0);
        let piece = if cap && !is_digits(w) { capitalize(w) } else { None };
        let sep = match prev {
            None => false,
            Some(p) => match style {
                NameStyle::Snake => true,
                NameStyle::Camel => {
                    (is_digits(p) && is_digits(w))
                        || (!is_digits(w) && piece.is_none())
                        // `XY` would read back as one acronym.
                        || (prev_cap && p.chars().count() == 1 && piece.is_some())
                }
            },
        };
        if sep {
            out.push('_');
        }
        match &piece {
            Some(p) => out.push_str(p),
            None => out.push_str(w),
        }
        prev_cap = piece.is_some();
        prev = Some(w);
    }
    if out.is_empty() || out.starts_with(|c: char| c.is_ascii_digit()) {
        out.insert(0, '_');
    }
    if is_reserved(target, &out) {
        out.push('_');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::segment::segment;
    use alloc::string::ToString;

    fn w(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn styles() {
        let bag = w(&["get", "max", "value"]);
        assert_eq!(render_name(&bag, LanguageId::Java, Role::Value), "getMaxValue");
        assert_eq!(render_name(&bag, LanguageId::Python, Role::Value), "get_max_value");
        assert_eq!(render_name(&bag, LanguageId::Cpp, Role::Type), "GetMaxValue");
        assert_eq!(render_name(&bag, LanguageId::CSharp, Role::Type), "GetMaxValue");
    }

    #[test]
    fn digits_and_reserved() {
        assert_eq!(render_name(&w(&["2", "sum", "two"]), LanguageId::Java, Role::Value), "sum2Two");
        assert_eq!(render_name(&w(&["1", "2"]), LanguageId::Java, Role::Value), "_1_2");
        assert_eq!(render_name(&w(&["class"]), LanguageId::Python, Role::Value), "class_");
        assert_eq!(render_name(&w(&["string"]), LanguageId::Java, Role::Type), "String_");
    }

    #[test]
    fn segments_back() {
        for bag in [w(&["a", "1", "2"]), w(&["x", "y"]), w(&["3"]), w(&["né", "été"])] {
            for t in LanguageId::ALL {
                for role in [Role::Value, Role::Type] {
                    let name = render_name(&bag, t, role);
                    let mut back = segment(&name);
                    back.sort();
                    let mut want = bag.clone();
                    want.sort();
                    assert_eq!(back, want, "{name}");
                }
            }
        }
    }
}
