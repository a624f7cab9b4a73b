#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use distil::frontend::language_of;
use distil_core::LanguageId;

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

/// Golden quadruples: name -> sources in C++, Java, C#, Python order.
pub fn quadruples() -> BTreeMap<String, Vec<(LanguageId, String)>> {
    let mut out: BTreeMap<String, Vec<(LanguageId, String)>> = BTreeMap::new();
    for entry in std::fs::read_dir(fixtures().join("quadruples")).unwrap() {
        let path = entry.unwrap().path();
        let lang = language_of(&path).unwrap();
        let stem = path.file_stem().unwrap().to_string_lossy().into_owned();
        let text = std::fs::read_to_string(&path).unwrap();
        out.entry(stem).or_default().push((lang, text));
    }
    for v in out.values_mut() {
        v.sort_by_key(|(l, _)| *l);
    }
    out
}
