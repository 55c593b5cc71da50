//! Subcommand implementations for the `quartet` binary. Each `cmd_*` returns
//! its rendered output so tests can call them without spawning a process.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use quartet_core::closed_forms::{
    derivative_value, inclusion_exclusion_a_summed, render_decimal, sum_form, truncate_decimal,
    EventCaseId, FormulaError, FormulaSet, Intersection,
};
use quartet_core::events::{
    count_agreeing_unordered, count_full, count_full_direct, count_restricted,
    count_restricted_binned, parse_event_expr, CanonicalEvent, CountError, CountMethod,
    CountReport, EventExpr, ExprParseError,
};
use quartet_core::trees::{build_tree, parse_newick, quartet_distance, TreeError};
use quartet_core::{agree, prefix_topology, suffix_topology, LeafOrder, Quartet, TopologyError};
use serde::Serialize;
use thiserror::Error;

pub const TABLE_MAX_N: u32 = 128;
pub const VERIFY_BRUTE_MAX_N: u32 = 6;
pub const VERIFY_MAX_N: u32 = 64;
pub const MONOTONIC_MAX_N: u32 = 1024;
/// Largest n for which `verify --brute` computes the distance from explicit trees.
const TREE_DISTANCE_MAX_N: u32 = 6;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Count(#[from] CountError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error("invalid event expression: {0}")]
    Expr(#[from] ExprParseError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("JSON encoding failed: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// Every error is a usage or input problem.
    pub fn exit_code(&self) -> i32 {
        2
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Tsv,
    Json,
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

#[derive(Debug, Serialize)]
struct TableRow {
    n: u32,
    #[serde(rename = "N")]
    leaves: String,
    distance: String,
    /// Three decimals, truncated.
    ratio: String,
    /// Three decimals, rounded half up.
    ratio_rounded: String,
    ratio_exact: String,
}

#[derive(Serialize)]
struct TableDoc {
    schema: u32,
    rows: Vec<TableRow>,
}

/// Distance and normalized ratio for each `n` in `nmin..=nmax`.
pub fn cmd_table(nmin: u32, nmax: u32, format: TableFormat) -> Result<String> {
    if !(2 <= nmin && nmin <= nmax && nmax <= TABLE_MAX_N) {
        return Err(CliError::Usage(format!(
            "need 2 <= nmin <= nmax <= {TABLE_MAX_N}, got nmin={nmin} nmax={nmax}"
        )));
    }
    let fs = FormulaSet::standard();
    let rows = (nmin..=nmax)
        .map(|n| {
            let r = fs.ratio(n)?;
            Ok(TableRow {
                n,
                leaves: (BigUint::from(1u8) << n).to_string(),
                distance: fs.distance_cf(n)?.to_string(),
                ratio: truncate_decimal(&r, 3),
                ratio_rounded: render_decimal(&r, 3),
                ratio_exact: r.to_string(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(match format {
        TableFormat::Tsv => {
            let mut out = String::from("n\tN\tdistance\tratio\tratio_rounded\tratio_exact\n");
            for r in &rows {
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\n",
                    r.n, r.leaves, r.distance, r.ratio, r.ratio_rounded, r.ratio_exact
                ));
            }
            out
        }
        TableFormat::Json => serde_json::to_string_pretty(&TableDoc { schema: 1, rows })? + "\n",
    })
}

/// One checked quantity. Counts are decimal strings since closed forms
/// outgrow 64 bits.
#[derive(Debug, Clone, Serialize)]
pub struct ReportEntry {
    pub event: String,
    pub case: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brute: Option<String>,
    pub sum_form: String,
    pub closed_form: String,
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub n: u32,
    pub brute: bool,
    pub entries: Vec<ReportEntry>,
    pub overall_pass: bool,
    /// Milliseconds per entry keyed by `event/case`.
    pub timing: BTreeMap<String, f64>,
}

impl VerificationReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}

struct ReportBuilder {
    entries: Vec<ReportEntry>,
    timing: BTreeMap<String, f64>,
}

impl ReportBuilder {
    fn push(
        &mut self,
        event: &str,
        case: &str,
        brute: Option<BigInt>,
        sum: BigInt,
        closed: BigInt,
        started: Instant,
    ) {
        let matches = sum == closed && brute.as_ref().is_none_or(|b| *b == sum);
        self.timing.insert(
            format!("{event}/{case}"),
            started.elapsed().as_secs_f64() * 1e3,
        );
        self.entries.push(ReportEntry {
            event: event.to_string(),
            case: case.to_string(),
            brute: brute.map(|b| b.to_string()),
            sum_form: sum.to_string(),
            closed_form: closed.to_string(),
            matches,
        });
    }
}

/// Checks every event/case, `A`, `A∪B∪C`, the unordered agreement count and
/// the distance against the coefficient tables in `fs`.
pub fn verify_report(fs: &FormulaSet, n: u32, include_brute: bool) -> Result<VerificationReport> {
    let max = if include_brute {
        VERIFY_BRUTE_MAX_N
    } else {
        VERIFY_MAX_N
    };
    if !(2..=max).contains(&n) {
        return Err(CliError::Usage(format!(
            "verify needs 2 <= n <= {max}, got {n}"
        )));
    }
    let mut b = ReportBuilder {
        entries: Vec::new(),
        timing: BTreeMap::new(),
    };

    for event in Intersection::ALL {
        let started = Instant::now();
        let bins = if include_brute {
            let strata =
                count_restricted_binned(&event.canonical().expr(), n, |q| event.stratum(q))?;
            let mut per_case = BTreeMap::new();
            for ((l, k), c) in strata {
                let case = event.classify(n, l, k).ok_or_else(|| {
                    CliError::Usage(format!(
                        "{event}: stratum ({l},{k}) lies in no case at n={n}"
                    ))
                })?;
                *per_case.entry(case).or_insert(0u64) += c;
            }
            Some(per_case)
        } else {
            None
        };
        for &case in event.cases() {
            let started = Instant::now();
            let id = EventCaseId::new(event, case)?;
            let brute = bins
                .as_ref()
                .map(|m| BigInt::from(m.get(&case).copied().unwrap_or(0)));
            b.push(
                event.as_str(),
                case.as_str(),
                brute,
                sum_form(id, n)?,
                fs.closed_form(id, n)?,
                started,
            );
        }
        let id = EventCaseId::total(event);
        let brute = bins.as_ref().map(|m| BigInt::from(m.values().sum::<u64>()));
        b.push(
            event.as_str(),
            id.case.as_str(),
            brute,
            sum_form(id, n)?,
            fs.closed_form(id, n)?,
            started,
        );
    }

    let started = Instant::now();
    let a_summed = inclusion_exclusion_a_summed(n)?;
    let brute = include_brute
        .then(|| count_restricted(&EventExpr::event_a(), n))
        .transpose()?;
    b.push(
        "A",
        "restricted",
        brute.map(BigInt::from),
        a_summed.clone(),
        fs.cf_a_restricted(n)?,
        started,
    );

    let started = Instant::now();
    let abc_summed = BigInt::from(3) * (a_summed << n);
    let brute = include_brute
        .then(|| count_full(&EventExpr::event_abc(), n))
        .transpose()?;
    b.push(
        "A|B|C",
        "full",
        brute.map(BigInt::from),
        abc_summed.clone(),
        fs.cf_abc(n)?,
        started,
    );

    let started = Instant::now();
    let unordered_summed: BigInt = &abc_summed / 24u32;
    let brute = include_brute
        .then(|| count_agreeing_unordered(n))
        .transpose()?;
    b.push(
        "agreeing",
        "unordered",
        brute.map(BigInt::from),
        unordered_summed.clone(),
        fs.agreeing_unordered_cf(n)?,
        started,
    );

    let started = Instant::now();
    let distance_summed = fs.total_unordered(n)? - unordered_summed;
    let brute = if include_brute && n <= TREE_DISTANCE_MAX_N {
        let t1 = build_tree(n, LeafOrder::Prefix)?;
        let t2 = build_tree(n, LeafOrder::Suffix)?;
        Some(BigInt::from(quartet_distance(&t1, &t2)?))
    } else {
        None
    };
    b.push(
        "distance",
        "unordered",
        brute,
        distance_summed,
        fs.distance_cf(n)?,
        started,
    );

    let overall_pass = b.entries.iter().all(|e| e.matches);
    Ok(VerificationReport {
        schema: 1,
        n,
        brute: include_brute,
        entries: b.entries,
        overall_pass,
        timing: b.timing,
    })
}

pub fn cmd_verify(n: u32, include_brute: bool) -> Result<VerificationReport> {
    verify_report(FormulaSet::standard(), n, include_brute)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountRoute {
    Brute,
    BruteFull,
    Closed,
    Sum,
}

impl From<CountRoute> for CountMethod {
    fn from(r: CountRoute) -> Self {
        match r {
            CountRoute::Brute => CountMethod::BruteRestricted,
            CountRoute::BruteFull => CountMethod::BruteFull,
            CountRoute::Closed => CountMethod::ClosedForm,
            CountRoute::Sum => CountMethod::Summation,
        }
    }
}

fn intersection_of(c: CanonicalEvent) -> Option<Intersection> {
    Intersection::ALL.into_iter().find(|i| i.canonical() == c)
}

/// Counts tuples satisfying `expr`. `brute`, `closed` and `sum` fix
/// `x0 = 0^n`; `brute-full` ranges over every ordered tuple.
pub fn cmd_count(expr: &str, n: u32, route: CountRoute) -> Result<CountReport> {
    let parsed = parse_event_expr(expr)?;
    let value: BigInt = match route {
        CountRoute::Brute => count_restricted(&parsed, n)?.into(),
        CountRoute::BruteFull if n <= quartet_core::events::FULL_DIRECT_MAX_N => {
            count_full_direct(&parsed, n)?.into()
        }
        CountRoute::BruteFull => count_full(&parsed, n)?.into(),
        CountRoute::Closed | CountRoute::Sum => {
            if n < 2 {
                return Err(FormulaError::NOutOfRange(n).into());
            }
            let canonical = CanonicalEvent::recognize(&parsed).ok_or_else(|| {
                CliError::Usage(format!(
                    "no closed or summation form for {parsed}; use --method brute"
                ))
            })?;
            let fs = FormulaSet::standard();
            let closed = route == CountRoute::Closed;
            match (canonical, intersection_of(canonical)) {
                (_, Some(i)) if closed => fs.closed_form(EventCaseId::total(i), n)?,
                (_, Some(i)) => sum_form(EventCaseId::total(i), n)?,
                (CanonicalEvent::A, None) if closed => fs.cf_a_restricted(n)?,
                (CanonicalEvent::A, None) => inclusion_exclusion_a_summed(n)?,
                (_, None) if closed => fs.cf_abc(n)? >> n,
                (_, None) => BigInt::from(3) * inclusion_exclusion_a_summed(n)?,
            }
        }
    };
    let value = value.to_biguint().expect("counts are non-negative");
    Ok(CountReport {
        n,
        expr: parsed.to_string(),
        method: route.into(),
        value,
    })
}

/// Prefix and suffix pairings of four comma-separated labels.
pub fn cmd_topology(labels: &str) -> Result<String> {
    let parts: Vec<&str> = labels.split(',').map(str::trim).collect();
    let Ok(texts) = <[&str; 4]>::try_from(parts.as_slice()) else {
        return Err(CliError::Usage(format!(
            "expected 4 comma-separated labels, got {}",
            parts.len()
        )));
    };
    let q = Quartet::parse(texts)?;
    let p = prefix_topology(&q)?;
    let s = suffix_topology(&q)?;
    Ok(format!(
        "prefix {}\nsuffix {}\nagree: {}\n",
        q.render_pairing(p),
        q.render_pairing(s),
        if agree(&q)? { "yes" } else { "no" }
    ))
}

pub fn cmd_newick(n: u32, order: LeafOrder) -> Result<String> {
    Ok(build_tree(n, order)?.to_newick() + "\n")
}

pub fn cmd_distance(tree1: &Path, tree2: &Path) -> Result<u64> {
    let t1 = parse_newick(read_file(tree1)?.trim())?;
    let t2 = parse_newick(read_file(tree2)?.trim())?;
    Ok(quartet_distance(&t1, &t2)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    fn of_int(v: &BigInt) -> Sign {
        if v.is_zero() {
            Sign::Zero
        } else if v.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    fn of_f64(v: f64) -> Sign {
        if v > 0.0 {
            Sign::Positive
        } else if v < 0.0 {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Negative => "negative",
            Sign::Zero => "zero",
            Sign::Positive => "positive",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonotonicReport {
    /// Sign of the cross difference for each `n` in `3..=nmax`.
    pub crossdiff: Vec<(u32, Sign)>,
    /// Sign of the derivative for each integer `t` in `11..=nmax`.
    pub derivative: Vec<(u32, Sign)>,
}

impl MonotonicReport {
    pub fn pass(&self) -> bool {
        self.crossdiff.iter().all(|&(_, s)| s == Sign::Positive)
            && self.derivative.iter().all(|&(_, s)| s == Sign::Negative)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (n, s) in &self.crossdiff {
            out.push_str(&format!("crossdiff\t{n}\t{s}\n"));
        }
        for (t, s) in &self.derivative {
            out.push_str(&format!("derivative\t{t}\t{s}\n"));
        }
        out.push_str(if self.pass() {
            "monotonic: pass\n"
        } else {
            "monotonic: fail\n"
        });
        out
    }
}

pub fn cmd_monotonic(nmax: u32) -> Result<MonotonicReport> {
    if !(3..=MONOTONIC_MAX_N).contains(&nmax) {
        return Err(CliError::Usage(format!(
            "monotonic needs 3 <= nmax <= {MONOTONIC_MAX_N}, got {nmax}"
        )));
    }
    let fs = FormulaSet::standard();
    let crossdiff = (3..=nmax)
        .map(|n| Ok((n, Sign::of_int(&fs.monotone_crossdiff(n)?))))
        .collect::<Result<Vec<_>>>()?;
    let derivative = (11..=nmax)
        .map(|t| (t, Sign::of_f64(derivative_value(f64::from(t)))))
        .collect();
    Ok(MonotonicReport {
        crossdiff,
        derivative,
    })
}
