use std::sync::OnceLock;

use latcover::catalog::*;
use latcover::enumerate::*;
use latcover::lattice::{density_sum, is_cover, Subgroup};
use latcover::ratmat::Rat;
use num_traits::One;

fn enumeration() -> &'static Enumeration {
    static E: OnceLock<Enumeration> = OnceLock::new();
    E.get_or_init(|| enumerate_minimal_coverings(SearchConfig::default()).unwrap())
}

fn catalog() -> Catalog {
    Catalog::from_enumeration(enumeration()).unwrap()
}

fn failing(report: &LemmaReport) -> Vec<String> {
    report.failures().iter().map(|c| c.name.clone()).collect()
}

#[test]
fn every_minimal_tuple_covers_with_density_above_one() {
    for t in &enumeration().minimal {
        assert!(is_cover(&t.slots), "{t}");
        assert!(density_sum(&t.nonzero()).unwrap() > Rat::one(), "{t}");
    }
    for t in &enumeration().raw {
        assert!(t.is_cover(), "{t}");
    }
}

#[test]
fn minimal_tuples_are_pairwise_incomparable() {
    let m = &enumeration().minimal;
    for (i, a) in m.iter().enumerate() {
        for (j, b) in m.iter().enumerate() {
            assert!(i == j || !precedes(a, b), "{a} <= {b}");
        }
    }
}

#[test]
fn every_raw_solution_lies_above_a_minimal_one() {
    let m = &enumeration().minimal;
    for t in &enumeration().raw {
        assert!(m.iter().any(|k| precedes(k, t)), "{t}");
    }
}

#[test]
fn entries_are_removal_and_replacement_minimal() {
    for e in &catalog().entries {
        assert!(removal_minimal(e), "{e}");
        assert!(replacement_minimal(e, &[2, 3, 5, 7]), "{e}");
    }
}

#[test]
fn thread_count_does_not_change_the_result() {
    let par = enumerate_minimal_coverings(SearchConfig {
        threads: 4,
        parallel_depth: 3,
    })
    .unwrap();
    assert_eq!(par.raw, enumeration().raw);
    assert_eq!(par.minimal, enumeration().minimal);
}

#[test]
fn serialized_catalog_roundtrips() {
    let c = catalog();
    let text = c.serialize();
    assert!(text.contains("# raw=6131\n"));
    assert_eq!(Catalog::parse(&text).unwrap(), c);
    assert_eq!(Catalog::parse(&text).unwrap().serialize(), text);
}

#[test]
fn full_catalog_passes_every_check() {
    let r = verify_lemma_counts(&catalog());
    assert!(r.passed(), "{:?}", failing(&r));
}

#[test]
fn dropping_an_entry_fails_its_count() {
    let mut c = catalog();
    let i = c.entries.iter().position(|e| e.len() == 5).unwrap();
    c.entries.remove(i);
    assert_eq!(
        failing(&verify_lemma_counts(&c)),
        ["length5: count", "total: 54"]
    );
}

#[test]
fn adding_a_dominated_entry_breaks_incomparability() {
    let mut c = catalog();
    let mut lattices = c.entries[0].lattices().to_vec();
    lattices.push(Subgroup::from_hermite(5, 0, 1));
    c.entries.push(CatalogEntry::new(lattices).unwrap());
    let f = failing(&verify_lemma_counts(&c));
    assert!(
        f.contains(&"catalog: pairwise incomparable".to_string()),
        "{f:?}"
    );
    assert!(f.contains(&"length4: count".to_string()), "{f:?}");
}

#[test]
fn replacing_a_length4_entry_fails_the_explicit_check() {
    let mut c = catalog();
    let i = c.entries.iter().position(|e| e.len() == 4).unwrap();
    // swap a length-4 entry for a second copy of a length-6 one
    c.entries[i] = c5_6();
    let f = failing(&verify_lemma_counts(&c));
    for name in [
        "length4: count",
        "length4: explicit entries",
        "length6: count",
    ] {
        assert!(f.contains(&name.to_string()), "{f:?}");
    }
}

#[test]
fn parse_rejects_malformed_lines() {
    let good = catalog().serialize();
    let bad = good.replacen("len=3 | 1,0;0,2", "len=3 | 1,0;0,0", 1);
    assert!(matches!(
        Catalog::parse(&bad),
        Err(CatalogError::Parse { .. })
    ));
    let short = good.replacen("len=3 |", "len=4 |", 1);
    assert!(matches!(
        Catalog::parse(&short),
        Err(CatalogError::Parse { .. })
    ));
    let uncovered = "len=2 | 1,0;0,2 | 2,0;0,1\n";
    assert!(matches!(
        Catalog::parse(uncovered),
        Err(CatalogError::Parse { line: 1, .. })
    ));
}
