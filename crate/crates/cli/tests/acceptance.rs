//! Acceptance suite. Run with `cargo test --test acceptance -- --nocapture`
//! to see one PASS/FAIL line per criterion.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use quartet_cli::{cmd_monotonic, cmd_table, verify_report, TableFormat};
use quartet_core::closed_forms::{
    agreeing_unordered_cf, cf_a_full, cf_a_restricted, cf_abc, closed_form, distance_cf,
    inclusion_exclusion_a, monotone_crossdiff, ratio, total_unordered, EventCaseId, ExactRational,
    FormulaError, FormulaId, FormulaSet, Intersection,
};
use quartet_core::events::{
    count_agreeing_unordered, count_full_direct, count_restricted, orbit_classify, EventExpr,
};
use quartet_core::{
    agree, build_tree, prefix_topology, quartet_distance, suffix_topology, Label, LeafOrder,
    Quartet,
};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(started: Instant, limit: Duration, what: &str) -> Outcome {
    let took = started.elapsed();
    ensure(took < limit, || {
        format!("{what} took {took:?}, limit {limit:?}")
    })
}

fn table_reproduction() -> Outcome {
    let started = Instant::now();
    let out = cmd_table(3, 10, TableFormat::Tsv).map_err(|e| e.to_string())?;
    within(started, Duration::from_secs(1), "table")?;
    let distances = [
        "60",
        "1452",
        "26944",
        "454224",
        "7396416",
        "119011264",
        "1907486208",
        "30535571712",
    ];
    let ratios = [
        "0.857", "0.797", "0.749", "0.714", "0.693", "0.680", "0.674", "0.670",
    ];
    let rows: Vec<Vec<&str>> = out
        .lines()
        .skip(1)
        .map(|l| l.split('\t').collect())
        .collect();
    ensure(rows.len() == 8, || {
        format!("expected 8 rows, got {}", rows.len())
    })?;
    for ((row, d), r) in rows.iter().zip(distances).zip(ratios) {
        ensure(row[2] == d && row[3] == r, || {
            format!("row {row:?}: expected distance {d}, ratio {r}")
        })?;
    }
    Ok(())
}

fn three_way() -> Outcome {
    let started = Instant::now();
    for n in 2..=5 {
        let report = verify_report(FormulaSet::standard(), n, true).map_err(|e| e.to_string())?;
        for e in &report.entries {
            ensure(e.matches && e.brute.is_some(), || format!("n={n}: {e:?}"))?;
        }
    }
    within(started, Duration::from_secs(5), "brute force n=2..5")?;
    let started = Instant::now();
    let report = verify_report(FormulaSet::standard(), 6, true).map_err(|e| e.to_string())?;
    ensure(report.overall_pass, || "n=6 verification failed".into())?;
    within(started, Duration::from_secs(60), "brute force n=6")
}

fn inclusion_exclusion() -> Outcome {
    for n in 2..=64 {
        let (cf, ie) = (cf_a_restricted(n), inclusion_exclusion_a(n));
        ensure(cf.is_ok() && cf == ie, || {
            format!("n={n}: {cf:?} vs {ie:?}")
        })?;
    }
    let c =
        |atoms: Vec<EventExpr>, n| count_restricted(&EventExpr::and(atoms), n).map(|v| v as i64);
    let (p01, p23, s01, s23) = (
        EventExpr::p(0, 1),
        EventExpr::p(2, 3),
        EventExpr::s(0, 1),
        EventExpr::s(2, 3),
    );
    for n in 2..=4 {
        let brute = (|| {
            Ok::<_, quartet_core::events::CountError>(
                2 * c(vec![p01.clone(), s01.clone()], n)?
                    + 2 * c(vec![p01.clone(), s23.clone()], n)?
                    - 4 * c(vec![p01.clone(), p23.clone(), s01.clone()], n)?
                    + c(vec![p01.clone(), p23.clone(), s01.clone(), s23.clone()], n)?,
            )
        })()
        .map_err(|e| e.to_string())?;
        let direct = count_restricted(&EventExpr::event_a(), n).map_err(|e| e.to_string())?;
        let cf = cf_a_restricted(n).map_err(|e| e.to_string())?;
        ensure(BigInt::from(brute) == cf && brute == direct as i64, || {
            format!("n={n}: brute IE {brute}, direct {direct}, closed {cf}")
        })?;
    }
    Ok(())
}

fn tree_consistency() -> Outcome {
    let started = Instant::now();
    for n in 2..=6 {
        let t1 = build_tree(n, LeafOrder::Prefix).map_err(|e| e.to_string())?;
        let t2 = build_tree(n, LeafOrder::Suffix).map_err(|e| e.to_string())?;
        let d = quartet_distance(&t1, &t2).map_err(|e| e.to_string())?;
        let cf = distance_cf(n).map_err(|e| e.to_string())?;
        ensure(BigInt::from(d) == cf, || {
            format!("n={n}: trees {d}, closed form {cf}")
        })?;
    }
    within(started, Duration::from_secs(30), "tree distances")?;
    for n in 2..=5 {
        let t1 = build_tree(n, LeafOrder::Prefix).map_err(|e| e.to_string())?;
        let t2 = build_tree(n, LeafOrder::Suffix).map_err(|e| e.to_string())?;
        let names: Vec<String> = (0..1u64 << n)
            .map(|v| Label::new(n, v).unwrap().to_string())
            .collect();
        let m = names.len();
        for a in 0..m {
            for b in a + 1..m {
                for c in b + 1..m {
                    for d in c + 1..m {
                        let t = [&*names[a], &*names[b], &*names[c], &*names[d]];
                        let q = Quartet::parse(t).map_err(|e| e.to_string())?;
                        let ok = t1.induced_quartet(t).ok() == prefix_topology(&q).ok()
                            && t2.induced_quartet(t).ok() == suffix_topology(&q).ok();
                        ensure(ok, || format!("topology mismatch on {t:?}"))?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn permutation_structure() -> Outcome {
    let n = 3;
    let labels: Vec<Label> = (0..8).map(|v| Label::new(n, v).unwrap()).collect();
    let mut agreeing = 0u64;
    for a in 0..8 {
        for b in a + 1..8 {
            for c in b + 1..8 {
                for d in c + 1..8 {
                    let q = Quartet::new([labels[a], labels[b], labels[c], labels[d]])
                        .map_err(|e| e.to_string())?;
                    let orbit = orbit_classify(&q);
                    let agrees = agree(&q).map_err(|e| e.to_string())?;
                    let expected = if agrees { (8, 8, 8) } else { (0, 0, 0) };
                    agreeing += agrees as u64;
                    ensure(orbit == expected, || {
                        format!("{:?}: orbit {orbit:?}, agree {agrees}", q.labels())
                    })?;
                }
            }
        }
    }
    ensure(agreeing == 10, || {
        format!("n=3: {agreeing} agreeing quartets, expected 10")
    })?;
    for n in 3..=4 {
        let union = count_full_direct(&EventExpr::event_abc(), n).map_err(|e| e.to_string())?;
        let unordered = count_agreeing_unordered(n).map_err(|e| e.to_string())?;
        ensure(union == 24 * unordered, || {
            format!("n={n}: |A∪B∪C|={union}, unordered={unordered}")
        })?;
    }
    Ok(())
}

fn xor_symmetry() -> Outcome {
    let events = [
        EventExpr::and([EventExpr::p(0, 1), EventExpr::s(2, 3)]),
        EventExpr::and([EventExpr::p(0, 1), EventExpr::s(0, 1)]),
        EventExpr::and([EventExpr::p(0, 1), EventExpr::p(2, 3), EventExpr::s(0, 1)]),
        EventExpr::and([
            EventExpr::p(0, 1),
            EventExpr::p(2, 3),
            EventExpr::s(0, 1),
            EventExpr::s(2, 3),
        ]),
        EventExpr::event_a(),
        EventExpr::event_abc(),
        EventExpr::or([EventExpr::p(0, 2), EventExpr::s(1, 3)]),
    ];
    for n in 3..=4 {
        for e in &events {
            let full = count_full_direct(e, n).map_err(|e| e.to_string())?;
            let restricted = count_restricted(e, n).map_err(|e| e.to_string())?;
            ensure(full == restricted << n, || {
                format!("{e} n={n}: full {full}, restricted {restricted}")
            })?;
        }
    }
    Ok(())
}

fn monotonicity_and_bound() -> Outcome {
    let started = Instant::now();
    let two_thirds = ExactRational::new(2.into(), 3.into());
    for n in 3..=128 {
        let d = monotone_crossdiff(n).map_err(|e| e.to_string())?;
        ensure(d > BigInt::from(0), || format!("crossdiff({n}) = {d}"))?;
    }
    for n in 2..=128 {
        let r = ratio(n).map_err(|e| e.to_string())?;
        ensure(r > two_thirds, || format!("ratio({n}) = {r}"))?;
    }
    let gap = ratio(128).map_err(|e| e.to_string())? - &two_thirds;
    let bound = ExactRational::new(1.into(), BigInt::from(10).pow(30));
    ensure(gap < bound, || format!("ratio(128) - 2/3 = {gap}"))?;
    let report = cmd_monotonic(128).map_err(|e| e.to_string())?;
    ensure(report.pass(), || {
        "derivative or crossdiff sign failure".into()
    })?;
    ensure(report.derivative.len() == 118, || "derivative range".into())?;
    within(started, Duration::from_secs(1), "monotonicity")
}

fn integrality() -> Outcome {
    for n in 2..=128 {
        for id in EventCaseId::all() {
            closed_form(id, n).map_err(|e| e.to_string())?;
        }
        cf_a_restricted(n).map_err(|e| e.to_string())?;
        cf_a_full(n).map_err(|e| e.to_string())?;
        cf_abc(n).map_err(|e| e.to_string())?;
        agreeing_unordered_cf(n).map_err(|e| e.to_string())?;
        total_unordered(n).map_err(|e| e.to_string())?;
        distance_cf(n).map_err(|e| e.to_string())?;
    }
    let mut fs = FormulaSet::default();
    let id = FormulaId::Case(EventCaseId::total(Intersection::P01S23));
    let broken = fs
        .polynomial(id)
        .expect("standard table")
        .perturbed(0, 1, 441);
    fs.replace(id, broken);
    let err = fs.closed_form(EventCaseId::total(Intersection::P01S23), 3);
    ensure(matches!(err, Err(FormulaError::NonInteger { .. })), || {
        format!("perturbed table gave {err:?}")
    })?;
    let report = verify_report(&fs, 3, false).err();
    ensure(
        matches!(
            report,
            Some(quartet_cli::CliError::Formula(
                FormulaError::NonInteger { .. }
            ))
        ),
        || format!("perturbed verify gave {report:?}"),
    )
}

fn triple_symmetry() -> Outcome {
    let (p01, p23, s01, s23) = (
        EventExpr::p(0, 1),
        EventExpr::p(2, 3),
        EventExpr::s(0, 1),
        EventExpr::s(2, 3),
    );
    let triples = [
        EventExpr::and([p23.clone(), s01.clone(), s23.clone()]),
        EventExpr::and([p01.clone(), s01.clone(), s23.clone()]),
        EventExpr::and([p01.clone(), p23.clone(), s23]),
        EventExpr::and([p01, p23, s01]),
    ];
    for n in 3..=4 {
        let counts = triples
            .iter()
            .map(|e| count_restricted(e, n))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        ensure(counts.windows(2).all(|w| w[0] == w[1]), || {
            format!("n={n}: {counts:?}")
        })?;
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        ("table reproduction", table_reproduction),
        ("three-way formula verification", three_way),
        ("inclusion-exclusion", inclusion_exclusion),
        ("tree/label consistency", tree_consistency),
        ("permutation structure", permutation_structure),
        ("XOR symmetry", xor_symmetry),
        ("monotonicity and bound", monotonicity_and_bound),
        ("integrality", integrality),
        ("triple-intersection symmetry", triple_symmetry),
    ];
    let mut failures = Vec::new();
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("criterion {}: PASS ({name})", k + 1),
            Err(msg) => {
                println!("criterion {}: FAIL ({name}): {msg}", k + 1);
                failures.push(k + 1);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
