mod common;

use distil::pipeline::distill_text;
use distil_core::MorphemeRegistry;

#[test]
fn quadruples_converge() {
    let reg = MorphemeRegistry::builtin();
    let quads = common::quadruples();
    assert!(quads.len() >= 40);
    let mut failures = Vec::new();
    for (name, sources) in &quads {
        assert_eq!(sources.len(), 4, "{name}");
        let codes: Vec<String> = sources
            .iter()
            .map(|(l, s)| match distill_text(s, *l, &reg) {
                Ok(d) => d.code.canonicalize().to_string(),
                Err(e) => format!("error: {e}"),
            })
            .collect();
        if codes.iter().any(|c| *c != codes[0]) {
            let detail: Vec<String> = sources
                .iter()
                .zip(&codes)
                .map(|((l, _), c)| format!("  {l}: {c}"))
                .collect();
            failures.push(format!("{name}\n{}", detail.join("\n")));
        }
    }
    assert!(
        failures.is_empty(),
        "{} diverging:\n{}",
        failures.len(),
        failures.join("\n")
    );
}
