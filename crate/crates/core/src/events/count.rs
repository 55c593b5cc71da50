//! Exhaustive counting over ordered and unordered quartets.
//!
//! Every enumerator splits its search space on the outermost free label and
//! sums the per-chunk counts, so results do not depend on scheduling.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;
use thiserror::Error;

use super::{AtomMask, EventExpr};
use crate::bitlabel::Label;
use crate::topology::{agree_raw, Quartet};

/// Largest `n` for tuples with `x0 = 0^n`.
pub const RESTRICTED_MAX_N: u32 = 8;
/// Largest `n` for direct enumeration of all ordered tuples.
pub const FULL_DIRECT_MAX_N: u32 = 4;
/// Default largest `n` for the unordered agreement scan.
pub const UNORDERED_MAX_N: u32 = 7;
/// Largest `n` accepted by [`count_agreeing_unordered_extended`].
pub const UNORDERED_EXTENDED_MAX_N: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("n = {n} outside the enumeration range 2..={max}")]
    OutOfRange { n: u32, max: u32 },
}

fn check(n: u32, max: u32) -> Result<(), CountError> {
    if (2..=max).contains(&n) {
        Ok(())
    } else {
        Err(CountError::OutOfRange { n, max })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMethod {
    BruteRestricted,
    BruteFull,
    Summation,
    ClosedForm,
}

impl fmt::Display for CountMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CountMethod::BruteRestricted => "brute_restricted",
            CountMethod::BruteFull => "brute_full",
            CountMethod::Summation => "summation",
            CountMethod::ClosedForm => "closed_form",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub n: u32,
    pub expr: String,
    pub method: CountMethod,
    pub value: BigUint,
}

/// Calls `f` on every `(x1, x2, x3)` below `size` that is nonzero and pairwise
/// distinct, for a fixed `x1`.
#[inline]
fn for_each_restricted(size: u64, x1: u64, mut f: impl FnMut([u64; 4])) {
    for x2 in 1..size {
        if x2 == x1 {
            continue;
        }
        for x3 in 1..size {
            if x3 == x1 || x3 == x2 {
                continue;
            }
            f([0, x1, x2, x3]);
        }
    }
}

/// Ordered tuples `(0^n, x1, x2, x3)` of distinct labels satisfying `expr`.
pub fn count_restricted(expr: &EventExpr, n: u32) -> Result<u64, CountError> {
    check(n, RESTRICTED_MAX_N)?;
    let table = expr.truth_table();
    let size = 1u64 << n;
    Ok((1..size)
        .into_par_iter()
        .map(|x1| {
            let mut c = 0u64;
            for_each_restricted(size, x1, |x| {
                c += table.get(AtomMask::from_raw(n, &x)) as u64
            });
            c
        })
        .sum())
}

/// Like [`count_restricted`], but histogrammed by `key` of each satisfying tuple.
pub fn count_restricted_binned<K, F>(
    expr: &EventExpr,
    n: u32,
    key: F,
) -> Result<BTreeMap<K, u64>, CountError>
where
    K: Ord + Send,
    F: Fn(&Quartet) -> K + Sync,
{
    check(n, RESTRICTED_MAX_N)?;
    let table = expr.truth_table();
    let size = 1u64 << n;
    let merge = |mut a: BTreeMap<K, u64>, b: BTreeMap<K, u64>| {
        for (k, v) in b {
            *a.entry(k).or_insert(0) += v;
        }
        a
    };
    Ok((1..size)
        .into_par_iter()
        .map(|x1| {
            let mut bins = BTreeMap::new();
            for_each_restricted(size, x1, |x| {
                if table.get(AtomMask::from_raw(n, &x)) {
                    let q =
                        Quartet::new(x.map(|v| Label::from_raw(n, v))).expect("distinct labels");
                    *bins.entry(key(&q)).or_insert(0) += 1;
                }
            });
            bins
        })
        .reduce(BTreeMap::new, merge))
}

/// All ordered distinct tuples satisfying `expr`, as `2^n` times the
/// restricted count (common prefix and suffix lengths are unchanged by
/// XOR-ing every label with `x0`).
pub fn count_full(expr: &EventExpr, n: u32) -> Result<u64, CountError> {
    Ok(count_restricted(expr, n)? << n)
}

/// All ordered distinct tuples satisfying `expr`, enumerated directly.
pub fn count_full_direct(expr: &EventExpr, n: u32) -> Result<u64, CountError> {
    check(n, FULL_DIRECT_MAX_N)?;
    let table = expr.truth_table();
    let size = 1u64 << n;
    Ok((0..size)
        .into_par_iter()
        .map(|x0| {
            let mut c = 0u64;
            for x1 in 0..size {
                if x1 == x0 {
                    continue;
                }
                for x2 in 0..size {
                    if x2 == x0 || x2 == x1 {
                        continue;
                    }
                    for x3 in 0..size {
                        if x3 == x0 || x3 == x1 || x3 == x2 {
                            continue;
                        }
                        c += table.get(AtomMask::from_raw(n, &[x0, x1, x2, x3])) as u64;
                    }
                }
            }
            c
        })
        .sum())
}

fn agreeing_subsets(n: u32) -> u64 {
    let size = 1u64 << n;
    (0..size)
        .into_par_iter()
        .map(|a| {
            let mut c = 0u64;
            for b in (a + 1)..size {
                for cc in (b + 1)..size {
                    for d in (cc + 1)..size {
                        c += agree_raw(n, &[a, b, cc, d]) as u64;
                    }
                }
            }
            c
        })
        .sum()
}

/// Number of 4-subsets of `{0,1}^n` on which the prefix and suffix trees
/// induce the same topology. Limited to `n <= 7`.
pub fn count_agreeing_unordered(n: u32) -> Result<u64, CountError> {
    check(n, UNORDERED_MAX_N)?;
    Ok(agreeing_subsets(n))
}

/// [`count_agreeing_unordered`] with the limit raised to `n <= 8`
/// (about 1.7e8 subsets).
pub fn count_agreeing_unordered_extended(n: u32) -> Result<u64, CountError> {
    check(n, UNORDERED_EXTENDED_MAX_N)?;
    Ok(agreeing_subsets(n))
}

/// Over the 24 reorderings of `q`, how many fall in A, in B and in C.
pub fn orbit_classify(q: &Quartet) -> (u32, u32, u32) {
    let events = [
        EventExpr::event_a(),
        EventExpr::event_b(),
        EventExpr::event_c(),
    ]
    .map(|e| e.truth_table());
    let mut counts = [0u32; 3];
    for perm in permutations4() {
        let m = AtomMask::of(&q.permuted(perm));
        for (c, t) in counts.iter_mut().zip(&events) {
            *c += t.get(m) as u32;
        }
    }
    (counts[0], counts[1], counts[2])
}

/// The 24 permutations of `0..4` in lexicographic order.
pub fn permutations4() -> impl Iterator<Item = [usize; 4]> {
    (0..24usize).map(|mut r| {
        let mut pool = vec![0usize, 1, 2, 3];
        let mut out = [0usize; 4];
        for (k, slot) in out.iter_mut().enumerate() {
            let f = [6, 2, 1, 1][k];
            *slot = pool.remove(r / f);
            r %= f;
        }
        out
    })
}
