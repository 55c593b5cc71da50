//! Identities of the event algebra checked by direct enumeration.

use num_bigint::BigInt;
use quartet_core::closed_forms::{
    agreeing_unordered_cf, cf_a_restricted, cf_abc, inclusion_exclusion_a,
};
use quartet_core::events::{
    count_agreeing_unordered, count_full, count_full_direct, count_restricted, EventExpr,
};

fn p01s23() -> EventExpr {
    EventExpr::and([EventExpr::p(0, 1), EventExpr::s(2, 3)])
}

#[test]
fn triple_intersections_are_equinumerous() {
    let triples = [
        EventExpr::and([EventExpr::p(2, 3), EventExpr::s(0, 1), EventExpr::s(2, 3)]),
        EventExpr::and([EventExpr::p(0, 1), EventExpr::s(0, 1), EventExpr::s(2, 3)]),
        EventExpr::and([EventExpr::p(0, 1), EventExpr::p(2, 3), EventExpr::s(2, 3)]),
        EventExpr::and([EventExpr::p(0, 1), EventExpr::p(2, 3), EventExpr::s(0, 1)]),
    ];
    for n in 3..=4 {
        let counts: Vec<u64> = triples
            .iter()
            .map(|e| count_restricted(e, n).unwrap())
            .collect();
        assert!(counts.windows(2).all(|w| w[0] == w[1]), "n={n}: {counts:?}");
        let full: Vec<u64> = triples
            .iter()
            .map(|e| count_full_direct(e, n).unwrap())
            .collect();
        assert!(full.windows(2).all(|w| w[0] == w[1]), "n={n}: {full:?}");
    }
}

/// |A| by inclusion-exclusion over its four two-atom pieces, each term counted by brute force.
#[test]
fn inclusion_exclusion_of_a_by_enumeration() {
    let pieces = [
        [EventExpr::p(0, 1), EventExpr::s(0, 1)],
        [EventExpr::p(0, 1), EventExpr::s(2, 3)],
        [EventExpr::p(2, 3), EventExpr::s(0, 1)],
        [EventExpr::p(2, 3), EventExpr::s(2, 3)],
    ];
    for n in 2..=4 {
        let mut ie: i64 = 0;
        for subset in 1u32..16 {
            let atoms = (0..4)
                .filter(|i| subset >> i & 1 == 1)
                .flat_map(|i| pieces[i].clone());
            let c = count_restricted(&EventExpr::and(atoms), n).unwrap() as i64;
            ie += if subset.count_ones() % 2 == 1 { c } else { -c };
        }
        let direct = count_restricted(&EventExpr::event_a(), n).unwrap();
        assert_eq!(ie, direct as i64, "n={n}");
        assert_eq!(
            BigInt::from(direct),
            inclusion_exclusion_a(n).unwrap(),
            "n={n}"
        );
        assert_eq!(BigInt::from(direct), cf_a_restricted(n).unwrap(), "n={n}");
    }
}

#[test]
fn full_count_is_translation_multiple() {
    let exprs = [
        p01s23(),
        EventExpr::event_a(),
        EventExpr::event_abc(),
        EventExpr::p(0, 1),
    ];
    for n in 2..=4 {
        for e in &exprs {
            assert_eq!(
                count_full_direct(e, n).unwrap(),
                count_full(e, n).unwrap(),
                "{e} n={n}"
            );
        }
    }
}

#[test]
fn a_b_c_are_disjoint_and_equal() {
    let (a, b, c) = (
        EventExpr::event_a(),
        EventExpr::event_b(),
        EventExpr::event_c(),
    );
    for n in 2..=4 {
        let sizes: Vec<u64> = [&a, &b, &c]
            .iter()
            .map(|e| count_full_direct(e, n).unwrap())
            .collect();
        assert!(sizes.windows(2).all(|w| w[0] == w[1]), "n={n}: {sizes:?}");
        for (x, y) in [(&a, &b), (&a, &c), (&b, &c)] {
            let both = EventExpr::and([x.clone(), y.clone()]);
            assert_eq!(count_full_direct(&both, n).unwrap(), 0, "n={n}");
        }
        assert_eq!(
            count_full_direct(&EventExpr::event_abc(), n).unwrap(),
            3 * sizes[0]
        );
    }
}

#[test]
fn union_is_24_times_unordered() {
    for n in 2..=4 {
        let union = count_full_direct(&EventExpr::event_abc(), n).unwrap();
        let unordered = count_agreeing_unordered(n).unwrap();
        assert_eq!(union, 24 * unordered, "n={n}");
        assert_eq!(BigInt::from(union), cf_abc(n).unwrap(), "n={n}");
        assert_eq!(
            BigInt::from(unordered),
            agreeing_unordered_cf(n).unwrap(),
            "n={n}"
        );
    }
    for n in 5..=6 {
        let union = count_full(&EventExpr::event_abc(), n).unwrap();
        assert_eq!(BigInt::from(union), cf_abc(n).unwrap(), "n={n}");
        assert_eq!(union, 24 * count_agreeing_unordered(n).unwrap(), "n={n}");
    }
}
