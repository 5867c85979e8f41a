//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any failed.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use sdom_core::construction::Construction;
use sdom_core::domination::{
    double_roman_labeling_from_d, gamma_dr_formula, gamma_formula, gamma_r_formula, is_dominating,
    is_double_roman, is_roman, roman_labeling_from_d,
};
use sdom_core::graph::distance;
use sdom_core::lemmas::{check_lemmas, CheckMode, LemmaOptions};
use sdom_core::solver::{exact_gamma, exact_gamma_dr, exact_gamma_r, minimum_pairwise_distance};
use sdom_core::{build_d, construct, GraphParams, Limits, SolverConfig, Variant};

const ORACLE_INSTANCES: [(u32, u32); 14] = [
    (2, 1),
    (2, 2),
    (2, 3),
    (2, 4),
    (2, 5),
    (3, 1),
    (3, 2),
    (3, 3),
    (4, 1),
    (4, 2),
    (5, 1),
    (5, 2),
    (6, 1),
    (7, 1),
];

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(failures: &[String], summary: String) -> Self {
        let detail = match failures.first() {
            None => summary,
            Some(first) => format!("{summary}; {} failure(s), first: {first}", failures.len()),
        };
        Outcome {
            passed: failures.is_empty(),
            detail,
        }
    }
}

fn g(n: u32, t: u32) -> GraphParams {
    GraphParams::new(n, t).unwrap()
}

/// `ceil(n^t/(n+1))` computed independently of the library.
fn ceil_oracle(n: u32, t: u32) -> u128 {
    let p = (0..t).fold(1u128, |acc, _| acc * n as u128);
    (p + n as u128) / (n as u128 + 1)
}

/// Exact optima `(gamma, gamma_R, gamma_dR)` per oracle instance.
type Optima = Vec<((u32, u32), [u64; 3])>;

fn criterion_1(optima: &mut Optima) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (n, t) in ORACLE_INSTANCES {
        let gg = g(n, t);
        let values = [
            exact_gamma(&gg, &SolverConfig::new(Variant::Plain)),
            exact_gamma_r(&gg, &SolverConfig::new(Variant::Roman)),
            exact_gamma_dr(&gg, &SolverConfig::new(Variant::DoubleRoman)),
        ];
        let formulas = [
            gamma_formula(&gg).unwrap(),
            gamma_r_formula(&gg).unwrap(),
            gamma_dr_formula(&gg).unwrap(),
        ];
        let mut got = [0u64; 3];
        for (i, v) in values.into_iter().enumerate() {
            match v {
                Ok(v) if v as u128 == formulas[i] => got[i] = v,
                Ok(v) => failures.push(format!(
                    "({n},{t}) variant {i}: exact {v} != formula {}",
                    formulas[i]
                )),
                Err(e) => failures.push(format!("({n},{t}) variant {i}: {e}")),
            }
        }
        optima.push(((n, t), got));
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(60) {
        failures.push(format!("runtime {elapsed:.2?} >= 60 s"));
    }
    Outcome::new(
        &failures,
        format!(
            "{} instances x 3 variants, single-threaded in {elapsed:.2?}",
            ORACLE_INSTANCES.len()
        ),
    )
}

type Builds = Vec<((u32, u32), Result<Construction, String>)>;

/// Builds for the criterion-2 grid, shared with criteria 6 and 9.
fn grid_builds() -> Builds {
    let lim = Limits::default();
    let mut out = Vec::new();
    for n in 2..=6 {
        for t in 1..=7 {
            if ceil_oracle(n, t) <= 10_000_000 {
                out.push(((n, t), construct(&g(n, t), &lim).map_err(|e| e.to_string())));
            }
        }
    }
    out
}

fn criterion_2(builds: &Builds, elapsed: Duration) -> Outcome {
    let mut failures = Vec::new();
    for ((n, t), c) in builds {
        match c {
            Ok(c) if c.set.len() as u128 == ceil_oracle(*n, *t) => {}
            Ok(c) => failures.push(format!(
                "({n},{t}): |D| = {} != {}",
                c.set.len(),
                ceil_oracle(*n, *t)
            )),
            Err(e) => failures.push(format!("({n},{t}): {e}")),
        }
    }
    let size = |n, t| {
        builds
            .iter()
            .find(|(k, _)| *k == (n, t))
            .and_then(|(_, c)| c.as_ref().ok())
            .map(|c| c.set.len())
    };
    if size(3, 4) != Some(21) {
        failures.push(format!("|D_3,4| = {:?}, expected 21", size(3, 4)));
    }
    if size(3, 3) != Some(7) {
        failures.push(format!("|D_3,3| = {:?}, expected 7", size(3, 3)));
    }
    if elapsed >= Duration::from_secs(120) {
        failures.push(format!("runtime {elapsed:.2?} >= 120 s"));
    }
    Outcome::new(
        &failures,
        format!(
            "{} builds, |D_3,4| = 21, |D_3,3| = 7, {elapsed:.2?}",
            builds.len()
        ),
    )
}

fn small_grid() -> impl Iterator<Item = (u32, u32)> {
    (2..=5).flat_map(|n| (1..=5).map(move |t| (n, t)))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let lim = Limits::default();
    let mut failures = Vec::new();
    let mut count = 0;
    for (n, t) in small_grid() {
        let gg = g(n, t);
        count += 1;
        match build_d(&gg, &lim).and_then(|d| is_dominating(&gg, &d, &lim)) {
            Ok(true) => {}
            Ok(false) => failures.push(format!("({n},{t}) not dominating")),
            Err(e) => failures.push(format!("({n},{t}): {e}")),
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(120) {
        failures.push(format!("runtime {elapsed:.2?} >= 120 s"));
    }
    Outcome::new(
        &failures,
        format!("{count} instances dominated, {elapsed:.2?}"),
    )
}

fn criterion_4(optima: &Optima) -> Outcome {
    let lim = Limits::default();
    let mut failures = Vec::new();
    let mut check = |n: u32, t: u32, exact: Option<[u64; 3]>| {
        let gg = g(n, t);
        let r = roman_labeling_from_d(&gg, &lim).unwrap();
        let dr = double_roman_labeling_from_d(&gg, &lim).unwrap();
        if !is_roman(&gg, &r, &lim).unwrap() {
            failures.push(format!("({n},{t}) roman labeling invalid"));
        }
        if !is_double_roman(&gg, &dr, &lim).unwrap() {
            failures.push(format!("({n},{t}) double roman labeling invalid"));
        }
        if r.weight() as u128 != gamma_r_formula(&gg).unwrap() {
            failures.push(format!("({n},{t}) roman weight {}", r.weight()));
        }
        if dr.weight() as u128 != gamma_dr_formula(&gg).unwrap() {
            failures.push(format!("({n},{t}) double roman weight {}", dr.weight()));
        }
        if let Some([p, er, edr]) = exact {
            let d = build_d(&gg, &lim).unwrap().len() as u64;
            if (d, r.weight(), dr.weight()) != (p, er, edr) {
                failures.push(format!(
                    "({n},{t}) witnesses ({d},{},{}) vs optima ({p},{er},{edr})",
                    r.weight(),
                    dr.weight()
                ));
            }
        }
    };
    let grid: Vec<_> = small_grid().collect();
    for &(n, t) in &grid {
        check(n, t, None);
    }
    for &((n, t), values) in optima {
        check(n, t, Some(values));
    }
    Outcome::new(
        &failures,
        format!(
            "{} grid instances valid with formula weights, {} witnesses optimal",
            grid.len(),
            optima.len()
        ),
    )
}

fn criterion_5() -> Outcome {
    let lim = Limits::default();
    let mut failures = Vec::new();
    let (mut exhaustive, mut sampled, mut skipped, mut sampled_pairs) = (0, 0, 0, 0u64);
    for n in 2..=6u32 {
        for t in 1..=7u32 {
            let gg = g(n, t);
            let Ok(count) = gg.vertex_count_within(&lim) else {
                continue;
            };
            let d = build_d(&gg, &lim).unwrap();
            let set = if t % 2 == 0 {
                d.without(&gg.extreme(1).unwrap())
            } else {
                d
            };
            if set.len() < 2 {
                skipped += 1;
                continue;
            }
            if n <= 4 && t <= 4 {
                // All pairs by individual BFS.
                exhaustive += 1;
                let members = set.members();
                let mut min = usize::MAX;
                for (i, u) in members.iter().enumerate() {
                    for v in &members[i + 1..] {
                        min = min.min(distance(&gg, u, v, &lim).unwrap());
                    }
                }
                if min != 3 {
                    failures.push(format!("({n},{t}) min distance {min}"));
                }
                continue;
            }
            sampled += 1;
            let opts = LemmaOptions {
                sample_size: 10_000,
                seed: u64::from(n) * 100 + u64::from(t),
                pair_threshold: 0,
            };
            let report = check_lemmas(&gg, &lim, &opts).unwrap();
            let entry = report.entry("distance_separation").unwrap();
            if entry.mode != CheckMode::Sampled || entry.details["violations"] != 0 {
                failures.push(format!("({n},{t}) sampled: {}", entry.details));
            }
            sampled_pairs += entry.details["sampled_pairs"].as_u64().unwrap_or(0);
            // The multi-source search is cheap enough to confirm the minimum too.
            if count <= 1_000_000 {
                let min = minimum_pairwise_distance(&gg, &set, &lim).unwrap();
                if min != 3 {
                    failures.push(format!("({n},{t}) min distance {min}"));
                }
            }
        }
    }
    Outcome::new(
        &failures,
        format!(
            "{exhaustive} exhaustive with min 3, {sampled} sampled ({sampled_pairs} pairs, 0 violations), {skipped} skipped (< 2 members)"
        ),
    )
}

fn criterion_6(builds: &Builds) -> Outcome {
    let mut failures = Vec::new();
    let mut levels = 0;
    for ((n, t), c) in builds {
        match c {
            Ok(c) => {
                for l in &c.levels {
                    levels += 1;
                    if !l.disjoint() {
                        failures.push(format!(
                            "({n},{t}) level {}: {} vs {}",
                            l.t, l.block_total, l.union_size
                        ));
                    }
                }
            }
            Err(e) => failures.push(format!("({n},{t}): {e}")),
        }
    }
    Outcome::new(&failures, format!("{levels} levels, 0 duplicate incidents"))
}

fn criterion_7() -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    for n in 2..=16u32 {
        for t in 1..=4u32 {
            if u64::from(n).pow(t) > 16 {
                continue;
            }
            count += 1;
            let gg = g(n, t);
            let full = exact_gamma_dr(&gg, &SolverConfig::new(Variant::DoubleRoman));
            let restricted = exact_gamma_dr(
                &gg,
                &SolverConfig::new(Variant::DoubleRoman).restricted(true),
            );
            match (full, restricted) {
                (Ok(a), Ok(b)) if a == b => {}
                (a, b) => failures.push(format!("({n},{t}): {a:?} vs {b:?}")),
            }
        }
    }
    Outcome::new(
        &failures,
        format!("{count} instances, four-value and three-value optima equal"),
    )
}

fn criterion_8() -> Outcome {
    let mut failures = Vec::new();
    for n in 2..=8u32 {
        for t in 1..=8u32 {
            let p = u128::from(n).pow(t);
            let n1 = u128::from(n) + 1;
            let num = if t % 2 == 1 {
                2 * p + 2
            } else {
                2 * p + u128::from(n) - 1
            };
            if num % n1 != 0 {
                failures.push(format!("({n},{t}): {num} not divisible by {n1}"));
                continue;
            }
            let got = gamma_r_formula(&g(n, t)).unwrap();
            if got != num / n1 {
                failures.push(format!("({n},{t}): {got} != {}", num / n1));
            }
        }
    }
    Outcome::new(&failures, "56 instances, exact division".into())
}

fn criterion_9(builds: &Builds) -> Outcome {
    let size = |n: u32, t: u32| {
        builds
            .iter()
            .find(|(k, _)| *k == (n, t))
            .and_then(|(_, c)| c.as_ref().ok())
            .map(|c| c.set.len() as u128)
    };
    let mut failures = Vec::new();
    let mut count = 0;
    for n in 2..=6u32 {
        for t in 3..=7u32 {
            count += 1;
            let (Some(cur), Some(prev)) = (size(n, t), size(n, t - 2)) else {
                failures.push(format!("({n},{t}) missing build"));
                continue;
            };
            let nn = u128::from(n);
            let predicted = if t % 2 == 1 {
                nn + (nn - 1) * (nn - 1) + nn * nn * (prev - 1)
            } else {
                nn + nn * nn * (prev - 1)
            };
            if cur != predicted {
                failures.push(format!("({n},{t}): {cur} != {predicted}"));
            }
        }
    }
    Outcome::new(&failures, format!("{count} instances"))
}

fn main() -> ExitCode {
    let mut optima = Vec::new();
    let mut results = vec![(1, "formula-oracle agreement", criterion_1(&mut optima))];
    let start = Instant::now();
    let builds = grid_builds();
    let build_time = start.elapsed();
    results.push((2, "construction size law", criterion_2(&builds, build_time)));
    results.push((3, "domination witness", criterion_3()));
    results.push((4, "labeling witnesses", criterion_4(&optima)));
    results.push((5, "distance separation", criterion_5()));
    results.push((6, "level disjointness", criterion_6(&builds)));
    results.push((7, "value-1 elimination", criterion_7()));
    results.push((8, "roman tightness", criterion_8()));
    results.push((9, "cardinality recurrences", criterion_9(&builds)));

    let mut all = true;
    for (id, name, outcome) in &results {
        let tag = if outcome.passed { "PASS" } else { "FAIL" };
        println!("criterion {id} [{tag}] {name}: {}", outcome.detail);
        all &= outcome.passed;
    }
    println!(
        "acceptance: {}/{} criteria passed",
        results.iter().filter(|r| r.2.passed).count(),
        results.len()
    );
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
