//! Brute force, per-case sums and closed forms must agree exactly.
//!
//! The oracle here works on rendered strings and a hand-written event test,
//! sharing nothing with the library's bit-twiddling enumerator.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use quartet_core::closed_forms::{
    closed_form, inclusion_exclusion_a, sum_form, term_count, CaseId, EventCaseId, Intersection,
};
use quartet_core::events::count_restricted;

fn bits(v: u64, n: u32) -> Vec<u8> {
    (0..n).rev().map(|i| ((v >> i) & 1) as u8).collect()
}

fn common_prefix(a: &[u8], b: &[u8]) -> u32 {
    a.iter().zip(b).take_while(|(x, y)| x == y).count() as u32
}

fn common_suffix(a: &[u8], b: &[u8]) -> u32 {
    a.iter()
        .rev()
        .zip(b.iter().rev())
        .take_while(|(x, y)| x == y)
        .count() as u32
}

const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

struct Oracle {
    lp: [u32; 6],
    ls: [u32; 6],
}

impl Oracle {
    fn new(x: &[Vec<u8>; 4]) -> Self {
        Oracle {
            lp: PAIRS.map(|(i, j)| common_prefix(&x[i], &x[j])),
            ls: PAIRS.map(|(i, j)| common_suffix(&x[i], &x[j])),
        }
    }

    fn p(&self, k: usize) -> bool {
        self.lp.iter().all(|&o| self.lp[k] >= o)
    }

    fn s(&self, k: usize) -> bool {
        self.ls.iter().all(|&o| self.ls[k] >= o)
    }

    /// (holds, ℓ, k) for the intersection's own stratification.
    fn check(&self, e: Intersection) -> (bool, u32, u32) {
        // pair 0 is (0,1), pair 5 is (2,3)
        match e {
            Intersection::P01S23 => (self.p(0) && self.s(5), self.lp[0], self.ls[5]),
            Intersection::P01S01 => (self.p(0) && self.s(0), self.lp[0], self.ls[0]),
            Intersection::P01P23S01 => {
                (self.p(0) && self.p(5) && self.s(0), self.lp[0], self.ls[0])
            }
            Intersection::All4 => (
                self.p(0) && self.p(5) && self.s(0) && self.s(5),
                self.lp[0],
                self.ls[0],
            ),
        }
    }
}

/// Restricted counts per (ℓ, k) for every intersection.
fn stratified(n: u32) -> BTreeMap<Intersection, BTreeMap<(u32, u32), u64>> {
    let size = 1u64 << n;
    let mut out: BTreeMap<Intersection, BTreeMap<(u32, u32), u64>> = BTreeMap::new();
    for x1 in 1..size {
        for x2 in 1..size {
            for x3 in 1..size {
                if x1 == x2 || x1 == x3 || x2 == x3 {
                    continue;
                }
                let o = Oracle::new(&[bits(0, n), bits(x1, n), bits(x2, n), bits(x3, n)]);
                for e in Intersection::ALL {
                    let (holds, l, k) = o.check(e);
                    if holds {
                        *out.entry(e).or_default().entry((l, k)).or_default() += 1;
                    }
                }
            }
        }
    }
    out
}

#[test]
fn three_way_per_event_and_case() {
    for n in 2..=5u32 {
        let strata = stratified(n);
        for e in Intersection::ALL {
            let bins = strata.get(&e).cloned().unwrap_or_default();
            let mut per_case: BTreeMap<CaseId, u64> = BTreeMap::new();
            for (&(l, k), &c) in &bins {
                let case = e
                    .classify(n, l, k)
                    .unwrap_or_else(|| panic!("{e} n={n}: stratum ({l},{k}) in no case"));
                *per_case.entry(case).or_default() += c;
                let id = EventCaseId::new(e, case).unwrap();
                assert_eq!(
                    term_count(id, n, l, k).unwrap(),
                    BigInt::from(c),
                    "{id} n={n} ℓ={l} k={k}"
                );
            }
            let total: u64 = bins.values().sum();
            for &case in e.cases() {
                let id = EventCaseId::new(e, case).unwrap();
                let brute = BigInt::from(per_case.get(&case).copied().unwrap_or(0));
                assert_eq!(sum_form(id, n).unwrap(), brute, "{id} n={n}");
                assert_eq!(closed_form(id, n).unwrap(), brute, "{id} n={n}");
            }
            let id = EventCaseId::total(e);
            assert_eq!(sum_form(id, n).unwrap(), BigInt::from(total), "{id} n={n}");
            assert_eq!(
                closed_form(id, n).unwrap(),
                BigInt::from(total),
                "{id} n={n}"
            );
            assert_eq!(
                count_restricted(&e.canonical().expr(), n).unwrap(),
                total,
                "{id} n={n}"
            );
        }
    }
}

#[test]
fn totals_at_six() {
    let strata = stratified(6);
    for e in Intersection::ALL {
        let total: u64 = strata[&e].values().sum();
        assert_eq!(
            closed_form(EventCaseId::total(e), 6).unwrap(),
            BigInt::from(total),
            "{e}"
        );
        assert_eq!(
            count_restricted(&e.canonical().expr(), 6).unwrap(),
            total,
            "{e}"
        );
    }
}

/// Frozen brute-force totals (x0 = 0^n), computed by the string oracle above.
#[test]
fn frozen_totals() {
    let expected: [(u32, [u64; 4], u64); 4] = [
        (3, [6, 2, 2, 2], 10),
        (4, [100, 40, 28, 16], 184),
        (5, [1034, 582, 270, 102], 2254),
        (6, [9072, 6516, 2304, 684], 22644),
    ];
    for (n, per_event, a) in expected {
        for (e, v) in Intersection::ALL.into_iter().zip(per_event) {
            assert_eq!(
                closed_form(EventCaseId::total(e), n).unwrap(),
                BigInt::from(v),
                "{e} n={n}"
            );
        }
        assert_eq!(inclusion_exclusion_a(n).unwrap(), BigInt::from(a));
    }
}
