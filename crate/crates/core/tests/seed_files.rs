use std::path::Path;

use proptest::prelude::*;

use scd_core::chains::{builtin_seed, verify_problem1, Atom, Predicate, SeedClass, Term};
use scd_core::crystal::{verify_axioms, Crystal};
use scd_core::seedlang::{parse, parse_seed, shipped_seed_text, SeedFile};

fn fixture(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name);
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn malformed_fixtures_report_positions() {
    let cases = [
        ("offset_not_permutation.seed", 3, 38, "not a permutation"),
        ("index_out_of_range.seed", 3, 10, "outside e1..e3"),
        ("zero_modulus.seed", 3, 26, "below 1"),
        ("missing_colon.seed", 3, 9, "expected `:`"),
        ("no_classes.seed", 3, 1, "at least one class"),
    ];
    for (name, line, column, needle) in cases {
        let err = parse(&fixture(name)).unwrap_err();
        assert_eq!((err.line, err.column), (line, column), "{name}: {err}");
        assert!(err.message.contains(needle), "{name}: {err}");
    }
}

#[test]
fn shipped_files_round_trip_byte_for_byte() {
    for n in 2..=4 {
        let file = parse(shipped_seed_text(n).unwrap()).unwrap();
        let text = file.render();
        assert_eq!(parse(&text).unwrap().render(), text);
        assert_eq!(file.to_seedspec().unwrap(), builtin_seed(n).unwrap());
    }
}

#[test]
fn user_seed_drives_a_crystal() {
    let spec = parse_seed(shipped_seed_text(3).unwrap()).unwrap();
    let c = Crystal::with_seed(spec.clone()).unwrap();
    assert!(verify_problem1(&spec, 15).passed());
    assert!(verify_axioms(&c.build(15).unwrap()).passed());
}

fn term(n: usize) -> impl Strategy<Value = Term> {
    prop_oneof![
        (1..=n).prop_map(Term::Entry),
        (1..=n, 1..=n).prop_map(|(i, j)| Term::Diff(i, j)),
    ]
}

fn atom(n: usize) -> impl Strategy<Value = Atom> {
    (term(n), 0i64..9, 1i64..6, 0u8..3).prop_map(|(t, v, m, kind)| match kind {
        0 => Atom::equals(t, v),
        1 => Atom::congruent(t, v, m),
        _ => Atom::not_congruent(t, v, m),
    })
}

fn seed_file() -> impl Strategy<Value = SeedFile> {
    (1usize..=5).prop_flat_map(|n| {
        let pred = move || proptest::collection::vec(atom(n), 1..4).prop_map(Predicate::new);
        let class = (pred(), Just((0..n as u32).collect::<Vec<_>>()).prop_shuffle());
        (Just(n), pred(), proptest::collection::vec(class, 1..5)).prop_map(|(n, initial, classes)| SeedFile {
            n,
            initial,
            classes: classes
                .into_iter()
                .enumerate()
                .map(|(i, (predicate, offset))| SeedClass { name: format!("c{i}"), predicate, offset })
                .collect(),
        })
    })
}

proptest! {
    #[test]
    fn render_then_parse_is_identity(file in seed_file()) {
        let text = file.render();
        prop_assert_eq!(parse(&text).unwrap(), file);
    }
}
