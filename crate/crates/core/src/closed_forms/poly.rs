//! Polynomials in `n` and `2^n` with rational coefficients, and the
//! coefficient tables of every count formula.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{CaseId, EventCaseId, Intersection};

/// `num/den · n^n_pow · 2^(exp_mult·n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Term {
    pub num: i64,
    pub den: i64,
    pub n_pow: u32,
    pub exp_mult: u32,
}

const fn t(num: i64, den: i64, n_pow: u32, exp_mult: u32) -> Term {
    Term {
        num,
        den,
        n_pow,
        exp_mult,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn new(terms: impl Into<Vec<Term>>) -> Self {
        Polynomial {
            terms: terms.into(),
        }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn eval(&self, n: u32) -> BigRational {
        let mut acc = BigRational::zero();
        let nn = BigInt::from(n);
        for term in &self.terms {
            let mut v = BigInt::from(term.num) << (term.exp_mult as usize * n as usize);
            for _ in 0..term.n_pow {
                v *= &nn;
            }
            acc += BigRational::new(v, BigInt::from(term.den));
        }
        acc
    }

    /// Copy with the coefficient of term `index` shifted by `delta_num/delta_den`.
    pub fn perturbed(&self, index: usize, delta_num: i64, delta_den: i64) -> Polynomial {
        let mut out = self.clone();
        let tm = &mut out.terms[index];
        tm.num = tm.num * delta_den + delta_num * tm.den;
        tm.den *= delta_den;
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, tm) in self.terms.iter().enumerate() {
            let sign = if tm.num < 0 {
                "-"
            } else if k > 0 {
                "+"
            } else {
                ""
            };
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{sign}{}", tm.num.abs())?;
            if tm.den != 1 {
                write!(f, "/{}", tm.den)?;
            }
            if tm.n_pow == 1 {
                f.write_str("·n")?;
            }
            if tm.exp_mult > 0 {
                write!(f, "·2^({}n)", tm.exp_mult)?;
            }
        }
        Ok(())
    }
}

/// Every formula that has a coefficient table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FormulaId {
    /// Per-event, per-case count with `x0 = 0^n`.
    Case(EventCaseId),
    /// Ordered tuples with `x0 = 0^n` in A.
    ARestricted,
    /// All ordered tuples in A.
    AFull,
    /// All ordered tuples in A ∪ B ∪ C.
    Abc,
    /// `24 · C(2^n, 4)`.
    TotalTimes24,
    /// `24 ·` quartet distance.
    DistanceTimes24,
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormulaId::Case(id) => write!(f, "{id}"),
            FormulaId::ARestricted => f.write_str("A/restricted"),
            FormulaId::AFull => f.write_str("A/full"),
            FormulaId::Abc => f.write_str("AuBuC/full"),
            FormulaId::TotalTimes24 => f.write_str("total_unordered*24"),
            FormulaId::DistanceTimes24 => f.write_str("distance*24"),
        }
    }
}

// P01 ∩ S23
const P01S23_CASE1: &[Term] = &[
    t(16, 441, 0, 3),
    t(-1, 1, 1, 2),
    t(5, 1, 0, 2),
    t(-25, 3, 1, 1),
    t(95, 9, 0, 1),
    t(-36, 7, 1, 0),
    t(-764, 49, 0, 0),
];
const P01S23_CASE2: &[Term] = &[
    t(1, 2, 1, 2),
    t(-8, 3, 0, 2),
    t(4, 1, 1, 1),
    t(-4, 1, 0, 1),
    t(2, 1, 1, 0),
    t(20, 3, 0, 0),
];
const P01S23_CASE3: &[Term] = &[
    t(1, 2, 1, 2),
    t(-7, 3, 0, 2),
    t(2, 1, 1, 1),
    t(1, 1, 0, 1),
    t(4, 3, 0, 0),
];
const P01S23_TOTAL: &[Term] = &[
    t(16, 441, 0, 3),
    t(-7, 3, 1, 1),
    t(68, 9, 0, 1),
    t(-22, 7, 1, 0),
    t(-372, 49, 0, 0),
];

// P01 ∩ S01
const P01S01_CASE1: &[Term] = &[
    t(5, 1, 0, 2),
    t(-764, 49, 0, 0),
    t(95, 9, 0, 1),
    t(-25, 3, 1, 1),
    t(-1, 1, 1, 2),
    t(-36, 7, 1, 0),
    t(16, 441, 0, 3),
];
const P01S01_CASE2: &[Term] = &[
    t(28, 1, 0, 0),
    t(10, 1, 1, 0),
    t(-22, 1, 0, 1),
    t(-6, 1, 0, 2),
    t(1, 1, 1, 2),
    t(13, 1, 1, 1),
];
const P01S01_TOTAL: &[Term] = &[
    t(16, 441, 0, 3),
    t(-1, 1, 0, 2),
    t(14, 3, 1, 1),
    t(-103, 9, 0, 1),
    t(34, 7, 1, 0),
    t(608, 49, 0, 0),
];

// P01 ∩ P23 ∩ S01
const P01P23S01_CASE1: &[Term] = &[
    t(4, 441, 0, 3),
    t(-1, 3, 0, 2),
    t(5, 3, 1, 1),
    t(-37, 9, 0, 1),
    t(12, 7, 1, 0),
    t(652, 147, 0, 0),
];
const P01P23S01_CASE2: &[Term] = &[
    t(1, 3, 0, 2),
    t(-2, 1, 1, 1),
    t(5, 1, 0, 1),
    t(-2, 1, 1, 0),
    t(-16, 3, 0, 0),
];
const P01P23S01_TOTAL: &[Term] = &[
    t(4, 441, 0, 3),
    t(-1, 3, 1, 1),
    t(8, 9, 0, 1),
    t(-2, 7, 1, 0),
    t(-44, 49, 0, 0),
];

// P01 ∩ P23 ∩ S01 ∩ S23
const ALL4_CASE1: &[Term] = &[
    t(1, 441, 0, 3),
    t(-1, 3, 1, 1),
    t(11, 9, 0, 1),
    t(-4, 7, 1, 0),
    t(-60, 49, 0, 0),
];
const ALL4_CASE2: &[Term] = &[t(1, 1, 1, 1), t(-4, 1, 0, 1), t(2, 1, 1, 0), t(4, 1, 0, 0)];
const ALL4_TOTAL: &[Term] = &[
    t(1, 441, 0, 3),
    t(2, 3, 1, 1),
    t(-25, 9, 0, 1),
    t(10, 7, 1, 0),
    t(136, 49, 0, 0),
];

const A_RESTRICTED: &[Term] = &[
    t(1, 9, 0, 3),
    t(-2, 1, 0, 2),
    t(20, 3, 1, 1),
    t(-127, 9, 0, 1),
    t(6, 1, 1, 0),
    t(16, 1, 0, 0),
];
const A_FULL: &[Term] = &[
    t(1, 9, 0, 4),
    t(-2, 1, 0, 3),
    t(20, 3, 1, 2),
    t(-127, 9, 0, 2),
    t(6, 1, 1, 1),
    t(16, 1, 0, 1),
];
const ABC: &[Term] = &[
    t(1, 3, 0, 4),
    t(-6, 1, 0, 3),
    t(20, 1, 1, 2),
    t(-127, 3, 0, 2),
    t(18, 1, 1, 1),
    t(48, 1, 0, 1),
];

const TOTAL_TIMES_24: &[Term] = &[
    t(1, 1, 0, 4),
    t(-6, 1, 0, 3),
    t(11, 1, 0, 2),
    t(-6, 1, 0, 1),
];
const DISTANCE_TIMES_24: &[Term] = &[
    t(2, 3, 0, 4),
    t(-20, 1, 1, 2),
    t(160, 3, 0, 2),
    t(-18, 1, 1, 1),
    t(-54, 1, 0, 1),
];

pub(super) fn standard_tables() -> BTreeMap<FormulaId, Polynomial> {
    use CaseId::*;
    use Intersection::*;
    let case = |event, case| FormulaId::Case(EventCaseId { event, case });
    [
        (case(P01S23, Case1), P01S23_CASE1),
        (case(P01S23, Case2), P01S23_CASE2),
        (case(P01S23, Case3), P01S23_CASE3),
        (case(P01S23, Total), P01S23_TOTAL),
        (case(P01S01, Case1), P01S01_CASE1),
        (case(P01S01, Case2), P01S01_CASE2),
        (case(P01S01, Total), P01S01_TOTAL),
        (case(P01P23S01, Case1), P01P23S01_CASE1),
        (case(P01P23S01, Case2), P01P23S01_CASE2),
        (case(P01P23S01, Total), P01P23S01_TOTAL),
        (case(All4, Case1), ALL4_CASE1),
        (case(All4, Case2), ALL4_CASE2),
        (case(All4, Total), ALL4_TOTAL),
        (FormulaId::ARestricted, A_RESTRICTED),
        (FormulaId::AFull, A_FULL),
        (FormulaId::Abc, ABC),
        (FormulaId::TotalTimes24, TOTAL_TIMES_24),
        (FormulaId::DistanceTimes24, DISTANCE_TIMES_24),
    ]
    .into_iter()
    .map(|(id, terms)| (id, Polynomial::new(terms)))
    .collect()
}

/// Exact integer value of `r`, if it has one.
pub(super) fn as_integer(r: &BigRational) -> Option<BigInt> {
    r.denom().is_one().then(|| r.numer().clone())
}
