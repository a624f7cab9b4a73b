//! The closed distilled vocabulary.

/// Structural template keywords.
pub const STRUCTURAL: &[&str] = &[
    "func", "param", "decl", "if", "elif", "else", "while", "for", "return", "break", "continue", "call", "assign",
    "in", "range", "new", "opaque",
];

/// Operators and punctuation-like keywords that appear inside expressions.
pub const OPERATORS: &[&str] = &[
    "+", "-", "*", "/", "%", "<", "<=", ">", ">=", "==", "!=", "&&", "||", "!", "&", "|", "^", "~", "<<", ">>", "?",
    ":", ".",
];

/// Heads of unified builtin calls.
pub const BUILTINS: &[&str] = &[
    "pow", "sqrt", "log", "floor", "rand", "print", "println", "islower", "tolower", "replace", "length",
];

/// Scalar type words.
pub const SCALAR_TYPES: &[&str] = &[
    "int", "float", "string", "bool", "char", "double", "long", "short", "byte", "void", "var",
];

/// Container type words; generic arguments are not kept.
pub const CONTAINER_TYPES: &[&str] = &["vector<>", "map<>", "set<>", "queue<>", "deque<>"];

pub fn is_keyword(word: &str) -> bool {
    STRUCTURAL.contains(&word) || OPERATORS.contains(&word) || BUILTINS.contains(&word)
}

pub fn is_type_word(word: &str) -> bool {
    SCALAR_TYPES.contains(&word) || CONTAINER_TYPES.contains(&word)
}

pub fn is_builtin(word: &str) -> bool {
    BUILTINS.contains(&word)
}
