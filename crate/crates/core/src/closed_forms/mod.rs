//! Exact evaluation of the count formulas: per-`(ℓ, k)` terms, their finite
//! sums, the closed-form polynomials, the inclusion–exclusion combination for
//! event A, and the resulting quartet distance, ratio and monotonicity checks.
//!
//! Everything except [`derivative_value`] is computed over arbitrary-precision
//! rationals. A polynomial that should count something but evaluates to a
//! non-integer is reported as [`FormulaError::NonInteger`]; that only happens
//! when a coefficient table is wrong.

mod poly;
mod terms;

use std::fmt;
use std::sync::LazyLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::events::CanonicalEvent;
use crate::topology::Quartet;

pub use poly::{FormulaId, Polynomial, Term};

/// Reduced arbitrary-precision rational.
pub type ExactRational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("n = {0} is below the supported minimum 2")]
    NOutOfRange(u32),
    #[error("(ℓ={l}, k={k}) lies outside the region of {id} at n={n}")]
    OutsideRegion {
        id: EventCaseId,
        n: u32,
        l: u32,
        k: u32,
    },
    #[error("{event} has no {case}")]
    InvalidCase { event: Intersection, case: CaseId },
    #[error("{formula} evaluates to non-integer {value} at n={n}; coefficient transcription bug")]
    NonInteger {
        formula: String,
        n: u32,
        value: String,
    },
    #[error("no coefficient table for {0}")]
    MissingFormula(FormulaId),
}

/// The four intersections with their own case analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Intersection {
    /// `P01 ∩ S23`
    P01S23,
    /// `P01 ∩ S01`
    P01S01,
    /// `P01 ∩ P23 ∩ S01`
    P01P23S01,
    /// `P01 ∩ P23 ∩ S01 ∩ S23`
    All4,
}

impl Intersection {
    pub const ALL: [Intersection; 4] = [
        Intersection::P01S23,
        Intersection::P01S01,
        Intersection::P01P23S01,
        Intersection::All4,
    ];

    /// Cases excluding the total.
    pub fn cases(self) -> &'static [CaseId] {
        match self {
            Intersection::P01S23 => &[CaseId::Case1, CaseId::Case2, CaseId::Case3],
            _ => &[CaseId::Case1, CaseId::Case2],
        }
    }

    pub fn canonical(self) -> CanonicalEvent {
        match self {
            Intersection::P01S23 => CanonicalEvent::P01S23,
            Intersection::P01S01 => CanonicalEvent::P01S01,
            Intersection::P01P23S01 => CanonicalEvent::P01P23S01,
            Intersection::All4 => CanonicalEvent::All4,
        }
    }

    /// The `(ℓ, k)` a satisfying tuple contributes to.
    pub fn stratum(self, q: &Quartet) -> (u32, u32) {
        let lp = q.prefix_lengths();
        let ls = q.suffix_lengths();
        match self {
            Intersection::P01S23 => (lp[0], ls[5]),
            _ => (lp[0], ls[0]),
        }
    }

    /// Which case `(ℓ, k)` belongs to, if any.
    pub fn classify(self, n: u32, l: u32, k: u32) -> Option<CaseId> {
        self.cases()
            .iter()
            .copied()
            .find(|&c| terms::in_region(self, c, n, l, k))
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Intersection::P01S23 => "P01S23",
            Intersection::P01S01 => "P01S01",
            Intersection::P01P23S01 => "P01P23S01",
            Intersection::All4 => "P01P23S01S23",
        }
    }
}

impl fmt::Display for Intersection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CaseId {
    Case1,
    Case2,
    Case3,
    Total,
}

impl CaseId {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseId::Case1 => "case1",
            CaseId::Case2 => "case2",
            CaseId::Case3 => "case3",
            CaseId::Total => "total",
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EventCaseId {
    pub event: Intersection,
    pub case: CaseId,
}

impl EventCaseId {
    pub fn new(event: Intersection, case: CaseId) -> Result<Self, FormulaError> {
        if case == CaseId::Case3 && event != Intersection::P01S23 {
            return Err(FormulaError::InvalidCase { event, case });
        }
        Ok(EventCaseId { event, case })
    }

    pub fn total(event: Intersection) -> Self {
        EventCaseId {
            event,
            case: CaseId::Total,
        }
    }

    /// Every valid id: each event's cases followed by its total.
    pub fn all() -> impl Iterator<Item = EventCaseId> {
        Intersection::ALL.into_iter().flat_map(|event| {
            event
                .cases()
                .iter()
                .copied()
                .chain([CaseId::Total])
                .map(move |case| EventCaseId { event, case })
        })
    }
}

impl fmt::Display for EventCaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.event, self.case)
    }
}

fn check_n(n: u32) -> Result<(), FormulaError> {
    if n >= 2 {
        Ok(())
    } else {
        Err(FormulaError::NOutOfRange(n))
    }
}

fn validate(id: EventCaseId) -> Result<EventCaseId, FormulaError> {
    EventCaseId::new(id.event, id.case)
}

/// Count of tuples with `x0 = 0^n` in the given case and stratum `(ℓ, k)`.
pub fn term_count(id: EventCaseId, n: u32, l: u32, k: u32) -> Result<BigInt, FormulaError> {
    validate(id)?;
    check_n(n)?;
    if !terms::in_region(id.event, id.case, n, l, k) {
        return Err(FormulaError::OutsideRegion { id, n, l, k });
    }
    Ok(terms::term(id.event, id.case, n, l, k))
}

/// Sum of [`term_count`] over the case's region (0 when the region is empty).
/// For [`CaseId::Total`], the sum over all cases.
pub fn sum_form(id: EventCaseId, n: u32) -> Result<BigInt, FormulaError> {
    validate(id)?;
    check_n(n)?;
    let cases: &[CaseId] = if id.case == CaseId::Total {
        id.event.cases()
    } else {
        std::slice::from_ref(&id.case)
    };
    Ok(cases
        .iter()
        .flat_map(|&c| {
            terms::region(id.event, c, n).map(move |(l, k)| terms::term(id.event, c, n, l, k))
        })
        .sum())
}

/// `|A|` for `x0 = 0^n` by inclusion–exclusion over the summation forms.
pub fn inclusion_exclusion_a_summed(n: u32) -> Result<BigInt, FormulaError> {
    let s = |e| sum_form(EventCaseId::total(e), n);
    Ok(2 * s(Intersection::P01S01)? + 2 * s(Intersection::P01S23)?
        - 4 * s(Intersection::P01P23S01)?
        + s(Intersection::All4)?)
}

/// Coefficient tables for every closed form. [`FormulaSet::default`] holds the
/// standard coefficients; tests swap individual polynomials to check that a
/// wrong coefficient is caught.
#[derive(Debug, Clone, PartialEq)]
pub struct FormulaSet {
    tables: std::collections::BTreeMap<FormulaId, Polynomial>,
}

impl Default for FormulaSet {
    fn default() -> Self {
        FormulaSet {
            tables: poly::standard_tables(),
        }
    }
}

static STANDARD: LazyLock<FormulaSet> = LazyLock::new(FormulaSet::default);

impl FormulaSet {
    pub fn standard() -> &'static FormulaSet {
        &STANDARD
    }

    pub fn polynomial(&self, id: FormulaId) -> Option<&Polynomial> {
        self.tables.get(&id)
    }

    pub fn replace(&mut self, id: FormulaId, p: Polynomial) -> Option<Polynomial> {
        self.tables.insert(id, p)
    }

    pub fn eval(&self, id: FormulaId, n: u32) -> Result<ExactRational, FormulaError> {
        check_n(n)?;
        Ok(self
            .polynomial(id)
            .ok_or(FormulaError::MissingFormula(id))?
            .eval(n))
    }

    fn integer(&self, id: FormulaId, n: u32) -> Result<BigInt, FormulaError> {
        let v = self.eval(id, n)?;
        poly::as_integer(&v).ok_or_else(|| FormulaError::NonInteger {
            formula: id.to_string(),
            n,
            value: v.to_string(),
        })
    }

    /// `value / 24`, which must be exact.
    fn div24(&self, id: FormulaId, n: u32, what: &str) -> Result<BigInt, FormulaError> {
        let v = self.integer(id, n)?;
        let (q, r) = v.div_rem(&BigInt::from(24));
        if !r.is_zero() {
            return Err(FormulaError::NonInteger {
                formula: what.to_string(),
                n,
                value: format!("{v}/24"),
            });
        }
        Ok(q)
    }

    pub fn closed_form(&self, id: EventCaseId, n: u32) -> Result<BigInt, FormulaError> {
        self.integer(FormulaId::Case(validate(id)?), n)
    }

    pub fn cf_a_restricted(&self, n: u32) -> Result<BigInt, FormulaError> {
        self.integer(FormulaId::ARestricted, n)
    }

    pub fn cf_a_full(&self, n: u32) -> Result<BigInt, FormulaError> {
        self.integer(FormulaId::AFull, n)
    }

    pub fn cf_abc(&self, n: u32) -> Result<BigInt, FormulaError> {
        self.integer(FormulaId::Abc, n)
    }

    pub fn inclusion_exclusion_a(&self, n: u32) -> Result<BigInt, FormulaError> {
        let c = |e| self.closed_form(EventCaseId::total(e), n);
        Ok(2 * c(Intersection::P01S01)? + 2 * c(Intersection::P01S23)?
            - 4 * c(Intersection::P01P23S01)?
            + c(Intersection::All4)?)
    }

    pub fn agreeing_unordered_cf(&self, n: u32) -> Result<BigInt, FormulaError> {
        self.div24(FormulaId::Abc, n, "agreeing_unordered")
    }

    pub fn total_unordered(&self, n: u32) -> Result<BigInt, FormulaError> {
        self.div24(FormulaId::TotalTimes24, n, "total_unordered")
    }

    pub fn distance_cf(&self, n: u32) -> Result<BigInt, FormulaError> {
        self.div24(FormulaId::DistanceTimes24, n, "distance")
    }

    /// Normalized quartet distance, reduced.
    pub fn ratio(&self, n: u32) -> Result<ExactRational, FormulaError> {
        Ok(ExactRational::new(
            self.distance_cf(n)?,
            self.total_unordered(n)?,
        ))
    }

    /// `num(n)·den(n+1) − num(n+1)·den(n)` for the unreduced ratio
    /// polynomials. Positive exactly when the ratio drops from `n` to `n+1`.
    pub fn monotone_crossdiff(&self, n: u32) -> Result<BigInt, FormulaError> {
        let num = |m| self.eval(FormulaId::DistanceTimes24, m);
        let den = |m| self.eval(FormulaId::TotalTimes24, m);
        let v = num(n)? * den(n + 1)? - num(n + 1)? * den(n)?;
        poly::as_integer(&v).ok_or_else(|| FormulaError::NonInteger {
            formula: "monotone_crossdiff".into(),
            n,
            value: v.to_string(),
        })
    }
}

pub fn closed_form(id: EventCaseId, n: u32) -> Result<BigInt, FormulaError> {
    FormulaSet::standard().closed_form(id, n)
}

pub fn cf_a_restricted(n: u32) -> Result<BigInt, FormulaError> {
    FormulaSet::standard().cf_a_restricted(n)
}

pub fn cf_a_full(n: u32) -> Result<BigInt, FormulaError> {
    FormulaSet::standard().cf_a_full(n)
}

pub fn cf_abc(n: u32) -> Result<BigInt, FormulaError> {
    FormulaSet::standard().cf_abc(n)
}

pub fn inclusion_exclusion_a(n: u32) -> Result<BigInt, FormulaError> {
    FormulaSet::standard().inclusion_exclusion_a(n)
}

pub fn agreeing_unordered_cf(n: u32) -> Result<BigInt, FormulaError> {
    FormulaSet::standard().agreeing_unordered_cf(n)
}

pub fn total_unordered(n: u32) -> Result<BigInt, FormulaError> {
    FormulaSet::standard().total_unordered(n)
}

pub fn distance_cf(n: u32) -> Result<BigInt, FormulaError> {
    FormulaSet::standard().distance_cf(n)
}

pub fn ratio(n: u32) -> Result<ExactRational, FormulaError> {
    FormulaSet::standard().ratio(n)
}

pub fn monotone_crossdiff(n: u32) -> Result<BigInt, FormulaError> {
    FormulaSet::standard().monotone_crossdiff(n)
}

/// The closed-form derivative (in real `t`) of the monotonicity cross
/// difference, divided by `2^(4t)`. Same sign as [`derivative_value`] and
/// finite for any `t` where `2^t` is.
pub fn derivative_scaled(t: f64) -> f64 {
    let ln2 = std::f64::consts::LN_2;
    let e1 = (-t).exp2();
    let e2 = (-2.0 * t).exp2();
    let e3 = (-3.0 * t).exp2();
    let top = -3792.0 * ln2 + 1440.0 * t * ln2 + 360.0 - 240.0 * ln2 * t.exp2();
    let cubic = -342.0 - 1026.0 * t * ln2 + 10908.0 * ln2;
    let square = -1944.0 * t * ln2 - 972.0 - 7824.0 * ln2;
    let linear = 954.0 * t * ln2 + 954.0 + 948.0 * ln2;
    top + cubic * e1 + square * e2 + linear * e3
}

/// The closed-form derivative expression evaluated at real `t`. Overflows to
/// `-inf` for large `t`; the sign is always that of [`derivative_scaled`].
pub fn derivative_value(t: f64) -> f64 {
    derivative_scaled(t) * (4.0 * t).exp2()
}

/// Decimal rendering with `places` digits, rounding half up.
pub fn render_decimal(r: &ExactRational, places: u32) -> String {
    let half = ExactRational::new(1.into(), 2.into());
    format_scaled((scaled(r, places) + half).floor().to_integer(), places)
}

/// Decimal rendering with `places` digits, dropping the rest (toward zero).
pub fn truncate_decimal(r: &ExactRational, places: u32) -> String {
    format_scaled(scaled(r, places).trunc().to_integer(), places)
}

fn scaled(r: &ExactRational, places: u32) -> ExactRational {
    r * ExactRational::from_integer(BigInt::from(10).pow(places))
}

fn format_scaled(v: BigInt, places: u32) -> String {
    let digits = v.abs().to_string();
    let body = if places == 0 {
        digits
    } else {
        let padded = format!("{:0>width$}", digits, width = places as usize + 1);
        let (int, frac) = padded.split_at(padded.len() - places as usize);
        format!("{int}.{frac}")
    };
    if v.is_negative() {
        format!("-{body}")
    } else {
        body
    }
}
