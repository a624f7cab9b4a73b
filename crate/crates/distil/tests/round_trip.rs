mod common;

use distil::frontend::SourceFunction;
use distil::pipeline::round_trip_check;
use distil_core::{LanguageId, MorphemeRegistry};

#[test]
fn every_fixture_round_trips_to_every_target() {
    let reg = MorphemeRegistry::builtin();
    let mut failures = Vec::new();
    let mut checked = 0;
    for (name, sources) in common::quadruples() {
        for (lang, text) in &sources {
            let f = SourceFunction::from_text(text, *lang).unwrap();
            for target in LanguageId::ALL {
                let r = round_trip_check(&f, target, &reg).unwrap();
                checked += 1;
                if !r.passed() {
                    failures.push(format!(
                        "{name}.{lang} -> {target}: reparses={} error={:?}\n{}\n  want {}\n  got  {}",
                        r.reparses,
                        r.error,
                        r.decompiled.unwrap_or_default(),
                        r.original,
                        r.redistilled.map(|d| d.to_string()).unwrap_or_default()
                    ));
                }
            }
        }
    }
    assert_eq!(checked, 42 * 16);
    assert!(
        failures.is_empty(),
        "{} failures:\n{}",
        failures.len(),
        failures.join("\n")
    );
}
