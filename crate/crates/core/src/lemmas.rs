//! Structural checks on `D_{n,t}` with a machine-readable report.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::construction::{cardinality_formula, construct, Construction};
use crate::domination::is_dominating;
use crate::error::{Error, Result};
use crate::graph::{nearest_within, within_distance_two};
use crate::solver::minimum_pairwise_distance;
use crate::vertex_set::VertexSet;
use crate::word::{GraphParams, Limits, Word};

/// Above this many unordered pairs the distance check is sampled.
pub const DEFAULT_PAIR_THRESHOLD: u64 = 1_000_000;
pub const DEFAULT_SAMPLE_SIZE: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LemmaOptions {
    pub sample_size: usize,
    pub seed: u64,
    pub pair_threshold: u64,
}

impl Default for LemmaOptions {
    fn default() -> Self {
        LemmaOptions {
            sample_size: DEFAULT_SAMPLE_SIZE,
            seed: 0,
            pair_threshold: DEFAULT_PAIR_THRESHOLD,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMode {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaEntry {
    pub name: &'static str,
    pub mode: CheckMode,
    pub passed: bool,
    pub counterexample: Option<String>,
    pub details: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaReport {
    pub n: u32,
    pub t: u32,
    pub passed: bool,
    pub checks: Vec<LemmaEntry>,
}

impl LemmaReport {
    pub fn entry(&self, name: &str) -> Option<&LemmaEntry> {
        self.checks.iter().find(|e| e.name == name)
    }

    pub fn to_json(&self) -> String {
        crate::json::to_sorted_pretty(self)
    }
}

/// Runs every structural check on `D_{n,t}`. Needs `n^t` within the vertex
/// cap (for the domination check).
pub fn check_lemmas(g: &GraphParams, limits: &Limits, opts: &LemmaOptions) -> Result<LemmaReport> {
    g.vertex_count_within(limits)?;
    let mut checks = Vec::new();
    let construction = match construct(g, limits) {
        Ok(c) => c,
        Err(Error::DuplicateMember { word, level }) => {
            checks.push(LemmaEntry {
                name: "disjointness",
                mode: CheckMode::Exhaustive,
                passed: false,
                counterexample: Some(word),
                details: json!({ "level": level }),
            });
            return Ok(LemmaReport {
                n: g.n(),
                t: g.t(),
                passed: false,
                checks,
            });
        }
        Err(e) => return Err(e),
    };
    checks.push(disjointness(&construction));
    checks.push(cardinality(g, &construction)?);
    checks.push(constant_entries(g, &construction.set)?);
    checks.push(distance_separation(g, &construction.set, limits, opts)?);
    checks.push(domination(g, &construction.set, limits)?);
    Ok(LemmaReport {
        n: g.n(),
        t: g.t(),
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

fn disjointness(c: &Construction) -> LemmaEntry {
    let bad = c.levels.iter().find(|l| !l.disjoint());
    LemmaEntry {
        name: "disjointness",
        mode: CheckMode::Exhaustive,
        passed: bad.is_none(),
        counterexample: bad.map(|l| format!("level t = {}", l.t)),
        details: json!({ "levels": c.levels }),
    }
}

/// `|D| = ceil(n^t/(n+1))`, and each lifted level obeys its recurrence.
fn cardinality(g: &GraphParams, c: &Construction) -> Result<LemmaEntry> {
    let expected = cardinality_formula(g)?;
    let actual = c.set.len() as u128;
    let n = g.n() as u128;
    let mut counterexample = (actual != expected).then(|| format!("|D| = {actual}"));
    let mut prev = if g.t() % 2 == 1 { 1u128 } else { n };
    let mut recurrences = Vec::new();
    for level in &c.levels {
        let predicted = if level.t % 2 == 1 {
            n + (n - 1) * (n - 1) + n * n * (prev - 1)
        } else {
            n + n * n * (prev - 1)
        };
        let size = level.union_size as u128;
        if predicted != size && counterexample.is_none() {
            counterexample = Some(format!("level t = {}: {size} != {predicted}", level.t));
        }
        recurrences
            .push(json!({ "t": level.t, "size": size as u64, "recurrence": predicted as u64 }));
        prev = size;
    }
    Ok(LemmaEntry {
        name: "cardinality",
        mode: CheckMode::Exhaustive,
        passed: counterexample.is_none(),
        counterexample,
        details: json!({
            "size": actual as u64,
            "formula": expected as u64,
            "recurrences": recurrences,
        }),
    })
}

/// `1^t` is in `D`, no other constant word is.
fn constant_entries(g: &GraphParams, d: &VertexSet) -> Result<LemmaEntry> {
    let mut counterexample = None;
    for alpha in 1..=g.n() {
        let w = g.extreme(alpha)?;
        if d.contains(&w) != (alpha == 1) {
            counterexample = Some(w.to_string());
            break;
        }
    }
    Ok(LemmaEntry {
        name: "constant_entries",
        mode: CheckMode::Exhaustive,
        passed: counterexample.is_none(),
        counterexample,
        details: json!({}),
    })
}

/// Members of `D` (odd `t`) or `D*` (even `t`) are pairwise at distance >= 3.
fn distance_separation(
    g: &GraphParams,
    d: &VertexSet,
    limits: &Limits,
    opts: &LemmaOptions,
) -> Result<LemmaEntry> {
    let ones = g.extreme(1)?;
    let even = g.t().is_multiple_of(2);
    let set = if even { d.without(&ones) } else { d.clone() };
    let m = set.len() as u64;
    let pairs = m * m.saturating_sub(1) / 2;
    let mut details = serde_json::Map::new();
    details.insert("set".into(), json!(if even { "D_star" } else { "D" }));
    details.insert("pairs".into(), json!(pairs));

    // Informational only: how far 1^t sits from D* at even levels.
    if even && !set.is_empty() {
        let reach = g.vertex_count_within(limits)?;
        let nearest = nearest_within(g, &ones, reach, |x| set.contains(x))?;
        details.insert("ones_to_d_star_min_distance".into(), json!(nearest));
    }

    if pairs == 0 {
        details.insert("note".into(), json!("fewer than two members"));
        return Ok(LemmaEntry {
            name: "distance_separation",
            mode: CheckMode::Exhaustive,
            passed: true,
            counterexample: None,
            details: details.into(),
        });
    }

    let (mode, counterexample) = if pairs <= opts.pair_threshold {
        let min = minimum_pairwise_distance(g, &set, limits)?;
        details.insert("min_distance".into(), json!(min));
        let cx = if min < 3 {
            first_close_pair(g, &set)?.map(|(u, v)| format!("{u} {v}"))
        } else {
            None
        };
        (CheckMode::Exhaustive, cx)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let members = set.members();
        let mut violations = 0u64;
        let mut first = None;
        for _ in 0..opts.sample_size {
            let i = rng.gen_range(0..members.len());
            let mut j = rng.gen_range(0..members.len() - 1);
            if j >= i {
                j += 1;
            }
            if within_distance_two(g, &members[i], &members[j])? {
                violations += 1;
                first.get_or_insert_with(|| format!("{} {}", members[i], members[j]));
            }
        }
        details.insert("sampled_pairs".into(), json!(opts.sample_size));
        details.insert("seed".into(), json!(opts.seed));
        details.insert("violations".into(), json!(violations));
        (CheckMode::Sampled, first)
    };
    Ok(LemmaEntry {
        name: "distance_separation",
        mode,
        passed: counterexample.is_none(),
        counterexample,
        details: details.into(),
    })
}

fn first_close_pair(g: &GraphParams, set: &VertexSet) -> Result<Option<(Word, Word)>> {
    for (i, u) in set.iter().enumerate() {
        for v in &set.members()[i + 1..] {
            if within_distance_two(g, u, v)? {
                return Ok(Some((u.clone(), v.clone())));
            }
        }
    }
    Ok(None)
}

fn domination(g: &GraphParams, d: &VertexSet, limits: &Limits) -> Result<LemmaEntry> {
    let ok = is_dominating(g, d, limits)?;
    Ok(LemmaEntry {
        name: "domination",
        mode: CheckMode::Exhaustive,
        passed: ok,
        counterexample: None,
        details: json!({ "size": d.len() }),
    })
}
