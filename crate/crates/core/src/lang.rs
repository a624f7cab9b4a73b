use core::fmt;
use core::str::FromStr;

use thiserror::Error;

/// The closed set of source languages the compiler understands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LanguageId {
    Cpp,
    Java,
    CSharp,
    Python,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unsupported language `{0}`")]
pub struct UnsupportedLanguage(pub alloc::string::String);

impl LanguageId {
    pub const ALL: [LanguageId; 4] = [
        LanguageId::Cpp,
        LanguageId::Java,
        LanguageId::CSharp,
        LanguageId::Python,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LanguageId::Cpp => "cpp",
            LanguageId::Java => "java",
            LanguageId::CSharp => "csharp",
            LanguageId::Python => "python",
        }
    }

    /// Decoder switch token used in translation pairs, e.g. `<java>`.
    pub fn lang_token(self) -> &'static str {
        match self {
            LanguageId::Cpp => "<cpp>",
            LanguageId::Java => "<java>",
            LanguageId::CSharp => "<csharp>",
            LanguageId::Python => "<python>",
        }
    }

    pub fn from_lang_token(token: &str) -> Option<LanguageId> {
        LanguageId::ALL.into_iter().find(|l| l.lang_token() == token)
    }

    /// Canonical file extension used when writing source files.
    pub fn extension(self) -> &'static str {
        match self {
            LanguageId::Cpp => "cpp",
            LanguageId::Java => "java",
            LanguageId::CSharp => "cs",
            LanguageId::Python => "py",
        }
    }

    pub fn from_extension(ext: &str) -> Option<LanguageId> {
        match ext {
            "py" => Some(LanguageId::Python),
            "java" => Some(LanguageId::Java),
            "cs" => Some(LanguageId::CSharp),
            "cpp" | "cc" | "hpp" | "cxx" | "hh" => Some(LanguageId::Cpp),
            _ => None,
        }
    }

    /// Column index of this language in the registry file.
    pub fn registry_column(self) -> usize {
        match self {
            LanguageId::Cpp => 0,
            LanguageId::Java => 1,
            LanguageId::CSharp => 2,
            LanguageId::Python => 3,
        }
    }
}

impl fmt::Display for LanguageId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LanguageId {
    type Err = UnsupportedLanguage;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cpp" | "c++" => Ok(LanguageId::Cpp),
            "java" => Ok(LanguageId::Java),
            "csharp" | "cs" | "c#" => Ok(LanguageId::CSharp),
            "python" | "py" => Ok(LanguageId::Python),
            other => Err(UnsupportedLanguage(other.into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_names_and_tokens() {
        for lang in LanguageId::ALL {
            assert_eq!(lang.as_str().parse::<LanguageId>().unwrap(), lang);
            assert_eq!(LanguageId::from_lang_token(lang.lang_token()), Some(lang));
            assert_eq!(LanguageId::from_extension(lang.extension()), Some(lang));
        }
    }

    #[test]
    fn rejects_unknown() {
        assert!("rust".parse::<LanguageId>().is_err());
        assert_eq!(LanguageId::from_extension("rs"), None);
    }
}
