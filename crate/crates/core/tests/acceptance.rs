//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Set `RMRA_EXTENDED=1` to include the 15-sensor exhaustion run (minutes on
//! one core).

use std::collections::BTreeSet;
use std::fmt::Debug;
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config as PropConfig, TestRunner};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use rmra::catalog::{self, Family, Status};
use rmra::robustness::{
    check_healthy_weights, essential_sensors, failure_report, fragility, rmra_check,
};
use rmra::search::{
    self, aperture_lower_bound, aperture_upper_bound, candidate_count, rank_candidate,
    unrank_candidate, Checkpoint, Search, SearchConfig, SearchOutcome, StageOutcome, StopReason,
    Verdict,
};
use rmra::SensorArray;

type Check = Result<(), String>;
type Criterion = (&'static str, &'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn ok<T, E: Debug>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| format!("{e:?}"))
}

fn arr(p: &[u32]) -> SensorArray {
    SensorArray::canonicalize(p).unwrap()
}

// ---------------------------------------------------------------------------
// Brute-force oracles, written without the library.

/// w(0..=L) with w(0) = N, counting unordered pairs.
fn oracle_weights(p: &[u32]) -> Vec<u32> {
    let l = *p.iter().max().unwrap() - *p.iter().min().unwrap();
    let mut w = vec![0u32; l as usize + 1];
    for (i, &a) in p.iter().enumerate() {
        for &b in &p[i..] {
            w[a.abs_diff(b) as usize] += 1;
        }
    }
    w
}

/// Lags in 1..=l missing from the differences of `p`.
fn oracle_holes(p: &[u32], l: u32) -> Vec<u32> {
    let present: BTreeSet<u32> = p
        .iter()
        .flat_map(|&a| p.iter().map(move |&b| a.abs_diff(b)))
        .collect();
    (1..=l).filter(|m| !present.contains(m)).collect()
}

fn oracle_essential(p: &[u32]) -> Vec<u32> {
    let l = p.iter().max().unwrap() - p.iter().min().unwrap();
    p.iter()
        .copied()
        .filter(|&s| {
            let rest: Vec<u32> = p.iter().copied().filter(|&q| q != s).collect();
            !oracle_holes(&rest, l).is_empty()
        })
        .collect()
}

/// (hole_free, doubly_redundant, two_essential) for a canonical array.
fn oracle_constraints(p: &[u32]) -> (bool, bool, bool) {
    let l = *p.last().unwrap();
    let w = oracle_weights(p);
    let hole_free = w.iter().all(|&x| x > 0);
    let doubly = l >= 1 && (1..l as usize).all(|m| w[m] >= 2) && w[l as usize] == 1;
    let two = oracle_essential(p) == [0, l];
    (hole_free, doubly, two)
}

/// All canonical arrays with `n` sensors and aperture exactly `l`.
fn all_arrays(n: usize, l: u32) -> Vec<Vec<u32>> {
    let interior = l.saturating_sub(1);
    let mut out = Vec::new();
    if n < 2 || l == 0 {
        return out;
    }
    for bits in 0u32..1 << interior {
        if bits.count_ones() as usize == n - 2 {
            let mut p = vec![0];
            p.extend((1..l).filter(|i| bits >> (i - 1) & 1 == 1));
            p.push(l);
            out.push(p);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Frozen reference data.

const SMALL_OPTIMA: [(usize, u32); 5] = [(6, 6), (7, 9), (8, 12), (9, 15), (10, 19)];

const ELEVEN_STAGES: [&[u32]; 12] = [
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 10, 11],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 11, 12],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 12, 13],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 13, 14],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 14, 15],
    &[0, 1, 2, 3, 4, 5, 6, 7, 8, 15, 16],
    &[0, 1, 2, 3, 4, 5, 6, 8, 10, 16, 17],
    &[0, 1, 2, 3, 4, 5, 6, 8, 11, 17, 18],
    &[0, 1, 2, 3, 4, 5, 6, 11, 12, 18, 19],
    &[0, 1, 2, 3, 4, 5, 6, 12, 13, 19, 20],
    &[0, 1, 2, 3, 4, 5, 6, 13, 14, 20, 21],
    &[0, 1, 2, 3, 4, 10, 11, 16, 17, 21, 22],
];

const FIFTEEN_OPTIMUM: [u32; 15] = [0, 1, 2, 4, 5, 9, 14, 19, 24, 29, 34, 35, 40, 41, 42];

const TWO_FRA: [u32; 13] = [0, 1, 7, 8, 16, 17, 25, 26, 27, 28, 29, 30, 31];

// ---------------------------------------------------------------------------
// Helpers.

fn expect_optimal(out: &SearchOutcome, l: u32) -> Check {
    ensure!(
        out.verdict == Verdict::Optimal { aperture: l },
        "n = {}: verdict {:?}, want optimal {l}",
        out.n,
        out.verdict
    );
    let last = out.stages.last().ok_or("no stages")?;
    ensure!(
        last.l == l + 1 && last.outcome == StageOutcome::Exhausted,
        "n = {}: last stage {last:?}",
        out.n
    );
    let best = out.best_array.as_ref().ok_or("no best array")?;
    ensure!(
        best.aperture() == l && best.len() == out.n,
        "best {best} has wrong shape"
    );
    ensure!(
        rmra_check(best, out.n, l).overall,
        "best {best} fails the constraints"
    );
    let (h, d, t) = oracle_constraints(best.positions());
    ensure!(h && d && t, "oracle rejects {best}");
    Ok(())
}

fn outcomes_match(a: &SearchOutcome, b: &SearchOutcome) -> Check {
    ensure!(a == b, "outcomes differ:\n{a:?}\n{b:?}");
    Ok(())
}

// ---------------------------------------------------------------------------
// Criteria.

fn small_optima() -> Check {
    for (n, l) in SMALL_OPTIMA {
        expect_optimal(&ok(search::loses_search(SearchConfig::new(n)))?, l)?;
        let reference = ok(search::loses_search(SearchConfig::reference(n)))?;
        expect_optimal(&reference, l)?;
        let published = catalog::known_arrays(Family::Rmra, n);
        let table = published
            .iter()
            .find(|e| e.status == Status::Optimal)
            .ok_or("missing catalog entry")?;
        ensure!(table.l == l, "catalog aperture {} for n = {n}", table.l);
    }
    Ok(())
}

fn eleven_sensor_trace() -> Check {
    let out = ok(search::loses_search(SearchConfig::reference(11)))?;
    ensure!(out.stages.len() == 13, "{} stages", out.stages.len());
    for (stage, row) in out.stages.iter().zip(ELEVEN_STAGES) {
        ensure!(
            stage.l == *row.last().unwrap(),
            "stage order broken at L = {}",
            stage.l
        );
        match &stage.outcome {
            StageOutcome::Found {
                array,
                candidate_index,
            } => {
                ensure!(
                    array.positions() == row,
                    "L = {}: found {array}, want {row:?}",
                    stage.l
                );
                ensure!(
                    *candidate_index == rank_candidate(array),
                    "index mismatch at L = {}",
                    stage.l
                );
                ensure!(
                    stage.candidates_examined == candidate_index + 1,
                    "examined count at L = {}",
                    stage.l
                );
            }
            other => return Err(format!("L = {}: {other:?}", stage.l)),
        }
    }
    let last = &out.stages[12];
    ensure!(
        last.l == 23 && last.outcome == StageOutcome::Exhausted,
        "final stage {last:?}"
    );
    ensure!(
        last.candidates_examined == 497_420,
        "examined {}",
        last.candidates_examined
    );
    ensure!(candidate_count(11, 23, false) == 497_420, "stage size");
    expect_optimal(&out, 22)
}

fn larger_optima() -> Check {
    expect_optimal(&ok(search::loses_search(SearchConfig::reference(12)))?, 26)?;
    for (n, l) in [(13, 32), (14, 36)] {
        expect_optimal(&ok(search::loses_search(SearchConfig::new(n)))?, l)?;
    }
    if std::env::var_os("RMRA_EXTENDED").is_some() {
        let out = ok(search::loses_search(SearchConfig::new(15)))?;
        expect_optimal(&out, 42)?;
    }
    Ok(())
}

fn catalog_verification() -> Check {
    let t0 = Instant::now();
    let report = catalog::verify_catalog();
    let took = t0.elapsed();
    ensure!(
        report.all_passed(),
        "failures: {:?}",
        report.failures().collect::<Vec<_>>()
    );
    ensure!(
        report.cross_checks.iter().all(|c| c.passed),
        "cross-check failed"
    );
    ensure!(took < Duration::from_secs(1), "verification took {took:?}");
    let twelve = catalog::known_arrays(Family::Rmra, 12);
    let stage_valid = twelve
        .iter()
        .filter(|e| e.status == Status::StageValid)
        .count();
    let optimal: Vec<_> = twelve
        .iter()
        .filter(|e| e.status == Status::Optimal)
        .collect();
    ensure!(
        stage_valid == 15 && optimal.len() == 1 && optimal[0].l == 26,
        "N = 12 catalog shape"
    );
    for e in catalog::entries() {
        if let Some(p) = &e.positions {
            ensure!(
                p.len() == e.n && p.aperture() == e.l,
                "entry {e:?} has wrong shape"
            );
        }
    }
    Ok(())
}

fn two_fra_witness() -> Check {
    let a = arr(&TWO_FRA);
    ensure!(
        ok(essential_sensors(&a))? == [0, 16, 31],
        "essential {:?}",
        essential_sensors(&a)
    );
    ensure!(
        oracle_essential(&TWO_FRA) == [0, 16, 31],
        "oracle disagrees"
    );
    ensure!(ok(fragility(&a))?.to_string() == "3/13", "fragility");
    ensure!(
        ok(failure_report(&a, 16))?.holes == [15],
        "holes after losing 16"
    );
    for &s in TWO_FRA.iter().filter(|&&s| s != 0 && s != 16 && s != 31) {
        ensure!(
            ok(failure_report(&a, s))?.holes.is_empty(),
            "losing {s} opens a hole"
        );
    }
    let entry = catalog::known_arrays(Family::TwoFra, 13);
    ensure!(
        entry
            .iter()
            .any(|e| e.positions.as_ref() == Some(&a) && e.critical_interior_sensors == [16]),
        "catalog witness missing"
    );
    Ok(())
}

fn extrapolation() -> Check {
    let base = arr(&FIFTEEN_OPTIMUM);
    for (extra, n, l) in [(2, 17, 52), (4, 19, 62)] {
        let ext = ok(base.extend_repeated_spacing(extra))?;
        ensure!(
            ext.len() == n && ext.aperture() == l,
            "extend {extra}: {ext}"
        );
        ensure!(
            rmra_check(&ext, n, l).overall,
            "extend {extra}: {ext} invalid"
        );
        let (h, d, t) = oracle_constraints(ext.positions());
        ensure!(h && d && t, "oracle rejects {ext}");
        let listed = catalog::known_arrays(Family::TfraValid, n);
        ensure!(
            listed.iter().any(|e| e.positions.as_ref() == Some(&ext)),
            "not cataloged: {ext}"
        );
    }
    Ok(())
}

fn pair_conservation() -> Check {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..10_000 {
        let n = rng.gen_range(2..=20);
        let mut set = BTreeSet::new();
        while set.len() < n {
            set.insert(rng.gen_range(0..200u32));
        }
        let raw: Vec<u32> = set.into_iter().collect();
        let a = arr(&raw);
        let w = a.weight_table();
        ensure!(w.counts() == oracle_weights(&raw), "weights of {raw:?}");
        ensure!(w.weight(0) as usize == n, "w(0) for {raw:?}");
        let pairs: u64 = (1..=a.aperture()).map(|m| u64::from(w.weight(m))).sum();
        ensure!(pairs == (n * (n - 1) / 2) as u64, "pair count for {raw:?}");
        ensure!(
            a.ies().to_array() == a && a.ies().total() == a.aperture(),
            "ies round trip for {raw:?}"
        );
    }
    Ok(())
}

fn mirror_symmetry() -> Check {
    let mut rng = StdRng::seed_from_u64(7);
    let mut samples: Vec<SensorArray> = catalog::entries()
        .iter()
        .filter_map(|e| e.positions.clone())
        .collect();
    for _ in 0..2_000 {
        let n = rng.gen_range(3..=12);
        let mut set = BTreeSet::new();
        while set.len() < n {
            set.insert(rng.gen_range(0..40u32));
        }
        samples.push(arr(&set.into_iter().collect::<Vec<_>>()));
    }
    for a in samples {
        let m = a.mirror();
        let l = a.aperture();
        ensure!(
            m.weight_table() == a.weight_table(),
            "weights of mirror {a}"
        );
        let mut flipped: Vec<u32> = ok(essential_sensors(&a))?.iter().map(|&e| l - e).collect();
        flipped.sort_unstable();
        ensure!(
            ok(essential_sensors(&m))? == flipped,
            "essential set of mirror {a}"
        );
        ensure!(
            rmra_check(&m, a.len(), l) == rmra_check(&a, a.len(), l),
            "verdict of mirror {a}"
        );
        ensure!(m.mirror() == a, "mirror is not an involution for {a}");
    }
    Ok(())
}

fn essential_oracle() -> Check {
    for n in 3..=6 {
        for l in n as u32 - 1..=10 {
            for p in all_arrays(n, l) {
                let a = arr(&p);
                let want = oracle_essential(&p);
                ensure!(ok(essential_sensors(&a))? == want, "essential set of {p:?}");
                let f = ok(fragility(&a))?;
                ensure!(
                    f.numerator as usize == want.len() && f.denominator as usize == n,
                    "fragility of {p:?}"
                );
                for &s in &p {
                    let rest: Vec<u32> = p.iter().copied().filter(|&q| q != s).collect();
                    ensure!(
                        ok(failure_report(&a, s))?.holes == oracle_holes(&rest, l),
                        "holes of {p:?} - {s}"
                    );
                }
            }
        }
    }
    Ok(())
}

fn filters_preserve_verdicts() -> Check {
    let mut compared = 0;
    for n in 6..=10 {
        for l in n as u32..=aperture_upper_bound(n) {
            if candidate_count(n, l, false) > 100_000 {
                continue;
            }
            let plain = ok(search::run_stage(n, l, &SearchConfig::reference(n)))?;
            let fast = ok(search::run_stage(n, l, &SearchConfig::new(n)))?;
            let det = ok(search::run_stage(
                n,
                l,
                &SearchConfig {
                    deterministic: true,
                    ..SearchConfig::new(n)
                },
            ))?;
            let found = |s: &search::StageResult| s.found().is_some();
            ensure!(
                found(&plain) == found(&fast) && found(&plain) == found(&det),
                "n = {n}, L = {l}"
            );
            for s in [&fast, &det] {
                if let Some(a) = s.found() {
                    ensure!(
                        rmra_check(a, n, l).overall,
                        "filtered search returned invalid {a}"
                    );
                }
            }
            // The first valid array always has 1 and L-1, so filtering keeps it.
            ensure!(
                plain.found() == det.found(),
                "deterministic winners differ at n = {n}, L = {l}"
            );
            compared += 1;
        }
    }
    ensure!(compared >= 20, "only {compared} stages compared");
    Ok(())
}

fn rank_round_trip() -> Check {
    let mut runner = TestRunner::new(PropConfig {
        cases: 2_000,
        failure_persistence: None,
        ..PropConfig::default()
    });
    let strategy = (6usize..=20, 0u32..=60, any::<u64>());
    runner
        .run(&strategy, |(n, extra, raw)| {
            let l = n as u32 + extra;
            let count = u64::try_from(candidate_count(n, l, false)).unwrap_or(u64::MAX);
            let index = raw % count;
            let a = unrank_candidate(n, l, index).unwrap();
            prop_assert_eq!(a.len(), n);
            prop_assert_eq!(a.aperture(), l);
            prop_assert_eq!(rank_candidate(&a), index);
            if index + 1 < count {
                let next = unrank_candidate(n, l, index + 1).unwrap();
                prop_assert!(a.positions() < next.positions());
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    for n in 6..=8 {
        for l in n as u32..=12 {
            let count = candidate_count(n, l, false) as u64;
            for i in 0..count {
                ensure!(
                    rank_candidate(&ok(unrank_candidate(n, l, i))?) == i,
                    "({n}, {l}, {i})"
                );
            }
            ensure!(
                unrank_candidate(n, l, count).is_err(),
                "index past the end accepted"
            );
        }
    }
    Ok(())
}

fn checkpoint_resume() -> Check {
    let dir = ok(tempfile::tempdir())?;
    for (label, base) in [
        (
            "reference",
            SearchConfig {
                l_start: Some(14),
                ..SearchConfig::reference(11)
            },
        ),
        (
            "filtered",
            SearchConfig {
                l_start: Some(14),
                deterministic: true,
                ..SearchConfig::new(11)
            },
        ),
    ] {
        let full = ok(search::loses_search(base.clone()))?;

        // Budget slices of 100, then larger ones, each resumed from disk.
        let path = dir.path().join(format!("{label}.json"));
        let sliced = SearchConfig {
            checkpoint_path: Some(path.clone()),
            checkpoint_interval: 37,
            ..base.clone()
        };
        let mut budget = 100;
        let mut sessions = 0;
        let out = loop {
            let cfg = SearchConfig {
                candidate_budget: Some(budget),
                ..sliced.clone()
            };
            let out = ok(search::loses_search(cfg))?;
            sessions += 1;
            ensure!(sessions < 1_000, "{label}: resume does not make progress");
            match out.verdict {
                Verdict::NearOptimal {
                    reason: StopReason::Budget,
                    ..
                }
                | Verdict::NoneFound
                    if out
                        .stages
                        .last()
                        .is_some_and(|s| s.outcome == StageOutcome::BudgetExceeded) =>
                {
                    budget = budget.saturating_mul(3);
                }
                _ => break out,
            }
        };
        ensure!(sessions > 2, "{label}: budget never interrupted the run");
        outcomes_match(&out, &full)?;

        // A run stopped by the aperture limit leaves a checkpoint at the
        // start of the next stage.
        let path = dir.path().join(format!("{label}-limit.json"));
        let limited = SearchConfig {
            checkpoint_path: Some(path.clone()),
            l_limit: Some(17),
            ..base.clone()
        };
        let first = ok(search::loses_search(limited))?;
        ensure!(
            matches!(
                first.verdict,
                Verdict::NearOptimal {
                    aperture: 17,
                    reason: StopReason::ApertureLimit
                }
            ),
            "{label}: {:?}",
            first.verdict
        );
        let ckpt = ok(Checkpoint::load(&path))?;
        ensure!(
            ckpt.l == 18 && ckpt.next_index == 0 && ckpt.stages.len() == 4,
            "{label}: checkpoint {ckpt:?}"
        );
        let resumed = ok(ok(Search::resume(base.clone(), ckpt))?.run(|_| {}))?;
        outcomes_match(&resumed, &full)?;

        let wrong = Search::resume(SearchConfig::new(11), ok(Checkpoint::load(&path))?);
        ensure!(wrong.is_err(), "{label}: mismatched filters accepted");
    }
    Ok(())
}

fn parallel_determinism() -> Check {
    for n in 6..=11 {
        for base in [
            SearchConfig::reference(n),
            SearchConfig {
                deterministic: true,
                ..SearchConfig::new(n)
            },
        ] {
            let serial = ok(search::loses_search(base.clone()))?;
            let parallel = ok(search::loses_search(SearchConfig {
                workers: 8,
                checkpoint_interval: 5_000,
                ..base
            }))?;
            outcomes_match(&serial, &parallel)?;
        }
        let fast = ok(search::loses_search(SearchConfig {
            workers: 8,
            ..SearchConfig::new(n)
        }))?;
        let serial = ok(search::loses_search(SearchConfig::reference(n)))?;
        ensure!(
            fast.verdict == serial.verdict,
            "n = {n}: fast parallel verdict {:?}",
            fast.verdict
        );
    }
    Ok(())
}

fn negative_control() -> Check {
    let a = arr(&TWO_FRA);
    ensure!(
        check_healthy_weights(&a),
        "healthy-weight screen rejects the witness"
    );
    let v = rmra_check(&a, 13, 31);
    ensure!(
        v.size_ok && v.hole_free && v.doubly_redundant && v.sparse,
        "{v:?}"
    );
    ensure!(!v.two_essential && !v.overall, "witness accepted: {v:?}");
    let robust_31 = catalog::known_arrays(Family::Rmra, 13)
        .into_iter()
        .find(|e| e.l == 31)
        .ok_or("no L = 31 stage")?;
    let robust_31 = robust_31.positions.ok_or("no positions")?;
    ensure!(
        robust_31 != a && rmra_check(&robust_31, 13, 31).overall,
        "stage array {robust_31}"
    );
    Ok(())
}

fn supplementary() -> Check {
    for (n, optimum) in [
        (6, 6),
        (7, 9),
        (8, 12),
        (9, 15),
        (10, 19),
        (11, 22),
        (12, 26),
        (13, 32),
    ] {
        ensure!(
            aperture_lower_bound(n, true) <= optimum,
            "tight bound skips the optimum for n = {n}"
        );
        ensure!(
            aperture_upper_bound(n) >= optimum,
            "upper bound below the optimum for n = {n}"
        );
    }
    for n in 6..=9 {
        let tight = ok(search::loses_search(SearchConfig {
            tight_bounds: true,
            ..SearchConfig::new(n)
        }))?;
        let plain = ok(search::loses_search(SearchConfig::new(n)))?;
        ensure!(
            tight.verdict == plain.verdict,
            "tight bounds change the verdict for n = {n}"
        );
    }
    for n in 3..=8 {
        for l in n as u32 - 1..=14 {
            for p in all_arrays(n, l) {
                let v = rmra_check(&arr(&p), n, l);
                let (h, d, t) = oracle_constraints(&p);
                let sparse = l as usize >= n;
                ensure!(
                    (v.hole_free, v.doubly_redundant, v.two_essential, v.sparse)
                        == (h, d, t, sparse),
                    "{p:?}: {v:?}"
                );
                ensure!(v.overall == (h && d && t && sparse), "{p:?}");
            }
        }
    }
    let out = ok(search::loses_search(SearchConfig {
        candidate_budget: Some(1_000_000),
        ..SearchConfig::new(16)
    }))?;
    ensure!(
        matches!(
            out.verdict,
            Verdict::NearOptimal {
                reason: StopReason::Budget,
                ..
            }
        ),
        "{:?}",
        out.verdict
    );
    let best = out.best_array.ok_or("no array")?;
    ensure!(
        rmra_check(&best, 16, best.aperture()).overall,
        "budgeted best {best} invalid"
    );
    Ok(())
}

fn main() {
    let criteria: [Criterion; 15] = [
        (
            "1",
            "N = 6..10 optima 6/9/12/15/19, next stage exhausted",
            small_optima,
        ),
        (
            "2",
            "N = 11 deterministic trace, L = 23 exhausted after 497420",
            eleven_sensor_trace,
        ),
        ("3", "N = 12/13/14 optima 26/32/36", larger_optima),
        (
            "4",
            "catalog re-verification under 1 s",
            catalog_verification,
        ),
        ("5", "13-sensor 2FRA critical sensor at 16", two_fra_witness),
        ("6", "spacing extrapolation to L = 52 and 62", extrapolation),
        (
            "7a",
            "pair conservation on 10^4 random arrays",
            pair_conservation,
        ),
        ("7b", "mirror invariance and covariance", mirror_symmetry),
        (
            "7c",
            "essential sensors match the oracle, N <= 6, L <= 10",
            essential_oracle,
        ),
        (
            "7d",
            "filters preserve stage verdicts",
            filters_preserve_verdicts,
        ),
        ("7e", "rank/unrank round trips", rank_round_trip),
        (
            "7f",
            "checkpoint resume equals an uninterrupted run",
            checkpoint_resume,
        ),
        (
            "7g",
            "8 workers match serial deterministic runs, N <= 11",
            parallel_determinism,
        ),
        (
            "8",
            "2FRA passes the weight screen but fails the robust check",
            negative_control,
        ),
        (
            "extra",
            "bounds, constraint oracle N <= 8, budgeted N = 16",
            supplementary,
        ),
    ];
    if std::env::var_os("RMRA_EXTENDED").is_none() {
        println!(
            "note: N = 15 exhaustion skipped; set RMRA_EXTENDED=1 to include it in criterion 3"
        );
    }
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (id, what, check) in criteria {
        let t0 = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = t0.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("PASS criterion {id}: {what} ({secs:.2} s)"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {id}: {what} ({secs:.2} s): {why}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
