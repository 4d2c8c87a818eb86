use std::path::PathBuf;

use decomp_core::ingest::{
    boolean, divisors, truncated_naturals, CategorySpec, MonoidSpec, PosetSpec,
};
use decomp_core::interval::{factorisation_intervals, Registry};
use decomp_core::io;

fn corpus(name: &str) -> String {
    io::read_file(
        &PathBuf::from(env!("CARGO_MANIFEST_DIR"))
            .join("../../corpus")
            .join(name),
    )
    .unwrap()
}

#[test]
fn corpus_files_round_trip() {
    for name in [
        "b2", "b3", "chain3", "d6", "d10", "d12", "d30", "d60", "vee",
    ] {
        let spec = io::parse_poset(&corpus(&format!("{name}.poset")), name).unwrap();
        let text = io::write_poset(&spec);
        assert_eq!(
            io::write_poset(&io::parse_poset(&text, name).unwrap()),
            text
        );
        let p = spec.validate().unwrap();
        let x = decomp_core::ingest::poset_nerve(&p, p.height() + 3).unwrap();
        let again = io::parse_sset(&io::write_sset(&x), name).unwrap();
        assert_eq!(io::write_sset(&again), io::write_sset(&x));
    }
    let m = io::parse_monoid(&corpus("naturals6.monoid"), "m").unwrap();
    let text = io::write_monoid(&m);
    assert_eq!(
        io::write_monoid(&io::parse_monoid(&text, "m").unwrap()),
        text
    );
    assert_eq!(
        m.validate().unwrap().longest_nonidentity_string(),
        truncated_naturals(6)
            .validate()
            .unwrap()
            .longest_nonidentity_string()
    );
    for c in ["arrow", "square"] {
        let spec = io::parse_category(&corpus(&format!("{c}.cat")), c).unwrap();
        let text = io::write_category(&spec);
        assert_eq!(
            io::write_category(&io::parse_category(&text, c).unwrap()),
            text
        );
    }
}

#[test]
fn divisor_posets_agree_with_files() {
    let file = io::parse_poset(&corpus("d12.poset"), "d12")
        .unwrap()
        .validate()
        .unwrap();
    let built = divisors(12).validate().unwrap();
    assert_eq!(file.elements().len(), built.elements().len());
    assert_eq!(file.height(), built.height());
    assert_eq!(boolean(3).validate().unwrap().height(), 3);
}

#[test]
fn planted_objects_are_rejected_or_flagged() {
    let broken = io::parse_sset(&corpus("broken.sset"), "broken").unwrap();
    assert!(!broken.validate().is_valid());
    let spine = io::parse_sset(&corpus("spine.sset"), "spine").unwrap();
    assert!(!decomp_core::axioms::check_segal(&spine).passed());
}

#[test]
fn bad_inputs_are_rejected() {
    let cycle = PosetSpec {
        elements: vec!["a".into(), "b".into()],
        le: vec![("a".into(), "b".into()), ("b".into(), "a".into())],
    };
    assert!(cycle
        .validate()
        .unwrap_err()
        .to_string()
        .contains("antisymmetry"));

    // {e, x} with x·x = x has a non-unit idempotent
    let idem = MonoidSpec {
        elements: vec!["e".into(), "x".into()],
        unit: "e".into(),
        table: vec![vec![Some(0), Some(1)], vec![Some(1), Some(1)]],
    };
    assert!(idem.validate().is_err());

    // Z/2 has an invertible non-unit
    let z2 = MonoidSpec {
        elements: vec!["e".into(), "x".into()],
        unit: "e".into(),
        table: vec![vec![Some(0), Some(1)], vec![Some(1), Some(0)]],
    };
    assert!(z2.validate().is_err());

    let missing = CategorySpec {
        objects: vec!["a".into()],
        identities: vec![("a".into(), "1".into())],
        arrows: vec![("1".into(), "a".into(), "a".into())],
        composites: vec![],
    };
    assert!(missing.validate().is_err());
}

#[test]
fn registry_from_corpus_closes_and_reloads() {
    let p = io::parse_poset(&corpus("d30.poset"), "d30")
        .unwrap()
        .validate()
        .unwrap();
    let x = decomp_core::ingest::poset_nerve(&p, p.height() + 3).unwrap();
    let mut r = Registry::new();
    for (i, _) in factorisation_intervals(&x).unwrap() {
        r.insert(&i).unwrap();
    }
    // trivial, chain of length 1, square, cube
    assert_eq!(r.len(), 4);
    assert_eq!(r.close().unwrap(), 0);
    let dir = tempfile::tempdir().unwrap();
    r.save(dir.path()).unwrap();
    let back = Registry::load(dir.path()).unwrap();
    assert_eq!(back.len(), 4);
    assert!(back.entries().all(|(_, e)| e.mobius));
}
