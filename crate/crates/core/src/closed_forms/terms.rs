//! Per-`(ℓ, k)` counts of tuples with `x0 = 0^n`.
//!
//! `ℓ` is always `lcp(x0, x1)`. `k` is `lcs(x2, x3)` for `P01 ∩ S23` and
//! `lcs(x0, x1)` for the other three intersections. Case 1 leaves a buffer
//! bit after the prefix and before the suffix (`ℓ + k + 2 <= n`), case 2
//! shares one buffer bit (`ℓ + k + 1 = n`), and case 3 (only reachable for
//! `P01 ∩ S23`) has the prefix and suffix touching or overlapping.

use num_bigint::BigInt;

use super::{CaseId, Intersection};

fn p2(e: u32) -> BigInt {
    BigInt::from(1) << e as usize
}

/// `2^e - c`
fn p2m(e: u32, c: i64) -> BigInt {
    p2(e) - c
}

pub(super) fn in_region(event: Intersection, case: CaseId, n: u32, l: u32, k: u32) -> bool {
    if l < 1 || k < 1 {
        return false;
    }
    match case {
        CaseId::Case1 => l + k + 2 <= n,
        CaseId::Case2 => l + k + 1 == n,
        CaseId::Case3 => event == Intersection::P01S23 && l < n && k < n && l + k >= n,
        CaseId::Total => false,
    }
}

/// Caller has checked `in_region`.
pub(super) fn term(event: Intersection, case: CaseId, n: u32, l: u32, k: u32) -> BigInt {
    use Intersection::*;
    match case {
        CaseId::Case1 => {
            let free = p2(3 * (n - l - k - 2));
            let prefixes = match event {
                P01S23 | P01S01 => p2m(l + 1, 2) * p2m(l + 1, 3),
                P01P23S01 | All4 => p2m(l + 1, 2),
            };
            let suffixes = match event {
                P01S23 | P01S01 | P01P23S01 => p2m(k + 1, 2) * p2m(k + 1, 3),
                All4 => p2m(k + 1, 2),
            };
            free * prefixes * suffixes
        }
        CaseId::Case2 => match event {
            P01S23 => {
                let a = p2m(k, 1);
                let b = p2m(l, 1);
                2 * &a * &a * &b * &b
            }
            P01S01 => {
                let shorter_suffix = p2m(l + 1, 2) * p2m(l + 1, 3) * p2m(k, 1) * p2m(k, 2);
                let b = p2m(l, 1);
                let full_suffix = &b * &b * p2m(k + 1, 2);
                shorter_suffix + full_suffix
            }
            P01P23S01 => {
                let a = p2m(k, 1);
                p2m(l + 1, 2) * &a * &a
            }
            All4 => p2m(l + 1, 2) * p2m(k, 1),
        },
        CaseId::Case3 => {
            debug_assert_eq!(event, P01S23);
            // Overlap bits of x2, x3 all zero, or not.
            let zero_overlap =
                2 * p2(n - l - 1) * p2m(n - l, 2) * p2m(n - k - 1, 1) * p2(n - k - 1);
            let nonzero_overlap =
                2 * p2m(k + l - n, 1) * p2(n - l - 1) * p2(n - l) * p2(n - k - 1) * p2(n - k - 1);
            zero_overlap + nonzero_overlap
        }
        CaseId::Total => unreachable!("total has no single term"),
    }
}

/// All `(ℓ, k)` in the case's region for this `n`.
pub(super) fn region(
    event: Intersection,
    case: CaseId,
    n: u32,
) -> impl Iterator<Item = (u32, u32)> {
    (1..n)
        .flat_map(move |l| (1..n).map(move |k| (l, k)))
        .filter(move |&(l, k)| in_region(event, case, n, l, k))
}
