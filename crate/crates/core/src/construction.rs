//! The dominating sets `D_{n,t}` and `D*_{n,t} = D_{n,t} \ {1^t}`.
//!
//! Bases are `D_{n,1} = {1}` and `D_{n,2} = {11, 21, ..., n1}`. Level `t`
//! is lifted from level `t - 2`: every parent `v` contributes the blocks
//! `E1(v)` (append `aa`), `E2(v)` (replace the last entry `x` by `a b x` with
//! `a, b != x`) and, for non-constant parents, `E3(v)` (the flipped parent
//! followed by `a x` where `x = v_ell`, `a != x`). The constant parent
//! `1^{t-2}` contributes `E1 ∪ E2` for odd `t` and is replaced by the block
//! `{1^{t-2} a 1}` for even `t`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;
use crate::word::{GraphParams, Limits, Word};

/// Largest 1-based index `ell` with `v_ell != v_{ell+1}`.
pub fn ell(v: &Word) -> Result<usize> {
    last_change(v.labels()).ok_or_else(|| Error::UndefinedEll(v.to_string()))
}

fn last_change(labels: &[u32]) -> Option<usize> {
    labels.windows(2).rposition(|p| p[0] != p[1]).map(|i| i + 1)
}

/// The bridge neighbor `v_1 … v_{ell-1} v_{ell+1} v_ell … v_ell`.
///
/// An involution on non-constant words, and always adjacent to `v`.
pub fn flip(v: &Word) -> Result<Word> {
    let labels = v.labels();
    let l = ell(v)?;
    let mut out = Vec::with_capacity(labels.len());
    out.extend_from_slice(&labels[..l - 1]);
    out.push(labels[l]);
    out.extend(std::iter::repeat_n(labels[l - 1], labels.len() - l));
    Ok(Word::from_labels_unchecked(out))
}

fn check_parent(v: &Word, g: &GraphParams) -> Result<()> {
    if g.t() < 3 {
        return Err(Error::InvalidParams(format!(
            "extension blocks need t >= 3, got t = {}",
            g.t()
        )));
    }
    let parent = GraphParams::new(g.n(), g.t() - 2)?;
    parent.check(v)
}

/// `E1(v) = { v a a : a in [n] }`.
pub fn e1(v: &Word, g: &GraphParams) -> Result<VertexSet> {
    check_parent(v, g)?;
    Ok(VertexSet::from_words(*g, e1_words(v.labels(), g.n())))
}

/// `E2(v) = { v_1 … v_{t-3} a b v_{t-2} : a, b != v_{t-2} }`.
pub fn e2(v: &Word, g: &GraphParams) -> Result<VertexSet> {
    check_parent(v, g)?;
    Ok(VertexSet::from_words(*g, e2_words(v.labels(), g.n())))
}

/// `E3(v) = { v_1 … v_{ell-1} v_{ell+1} v_ell^{t-ell-2} a v_ell : a != v_ell }`.
pub fn e3(v: &Word, g: &GraphParams) -> Result<VertexSet> {
    check_parent(v, g)?;
    Ok(VertexSet::from_words(*g, e3_words(v, g.n())?))
}

fn e1_words(v: &[u32], n: u32) -> Vec<Word> {
    (1..=n)
        .map(|a| {
            let mut w = Vec::with_capacity(v.len() + 2);
            w.extend_from_slice(v);
            w.extend([a, a]);
            Word::from_labels_unchecked(w)
        })
        .collect()
}

fn e2_words(v: &[u32], n: u32) -> Vec<Word> {
    let (&last, head) = v.split_last().expect("parent words are non-empty");
    let mut out = Vec::with_capacity(((n - 1) * (n - 1)) as usize);
    for a in (1..=n).filter(|&a| a != last) {
        for b in (1..=n).filter(|&b| b != last) {
            let mut w = Vec::with_capacity(v.len() + 2);
            w.extend_from_slice(head);
            w.extend([a, b, last]);
            out.push(Word::from_labels_unchecked(w));
        }
    }
    out
}

fn e3_words(v: &Word, n: u32) -> Result<Vec<Word>> {
    let labels = v.labels();
    let l = ell(v)?;
    // ell must lie in [t-3] = [len(v) - 1]; last_change never exceeds it.
    if l > labels.len() - 1 {
        return Err(Error::EllOutOfRange {
            word: v.to_string(),
            ell: l,
            max: labels.len() - 1,
        });
    }
    let x = labels[l - 1];
    let flipped = flip(v)?;
    Ok((1..=n)
        .filter(|&a| a != x)
        .map(|a| {
            let mut w = Vec::with_capacity(labels.len() + 2);
            w.extend_from_slice(flipped.labels());
            w.extend([a, x]);
            Word::from_labels_unchecked(w)
        })
        .collect())
}

fn ones_block(n: u32, t: u32) -> Vec<Word> {
    (1..=n)
        .map(|a| {
            let mut w = vec![1u32; t as usize - 2];
            w.extend([a, 1]);
            Word::from_labels_unchecked(w)
        })
        .collect()
}

/// Which family a block belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockKind {
    E1,
    E2,
    E3,
    /// `{1^{t-2} a 1}`, used at even levels in place of the constant parent.
    Ones,
}

/// All blocks a single parent contributes at level `t`, tagged by family.
fn parent_blocks(n: u32, t: u32, parent: &Word) -> Result<Vec<(BlockKind, Vec<Word>)>> {
    let labels = parent.labels();
    if parent.is_constant() {
        if labels[0] != 1 {
            return Err(Error::Construction(format!(
                "constant parent {parent} other than 1^{}",
                t - 2
            )));
        }
        return Ok(if t % 2 == 1 {
            vec![
                (BlockKind::E1, e1_words(labels, n)),
                (BlockKind::E2, e2_words(labels, n)),
            ]
        } else {
            vec![(BlockKind::Ones, ones_block(n, t))]
        });
    }
    Ok(vec![
        (BlockKind::E1, e1_words(labels, n)),
        (BlockKind::E2, e2_words(labels, n)),
        (BlockKind::E3, e3_words(parent, n)?),
    ])
}

fn base_level(n: u32, t: u32) -> Vec<Word> {
    match t {
        1 => vec![Word::from_labels_unchecked(vec![1])],
        _ => (1..=n)
            .map(|a| Word::from_labels_unchecked(vec![a, 1]))
            .collect(),
    }
}

/// Bookkeeping for one recursion level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct LevelStats {
    pub t: u32,
    pub blocks: usize,
    /// Sum of the sizes of all generated blocks.
    pub block_total: usize,
    /// Size of their union.
    pub union_size: usize,
}

impl LevelStats {
    pub fn disjoint(&self) -> bool {
        self.block_total == self.union_size
    }
}

/// The result of building `D_{n,t}` together with per-level statistics.
#[derive(Debug, Clone)]
pub struct Construction {
    pub set: VertexSet,
    /// One entry per lifted level, in increasing `t` (empty for `t <= 2`).
    pub levels: Vec<LevelStats>,
}

/// Builds `D_{n,t}` iteratively from the base of matching parity.
///
/// Blocks of one level are generated per parent (in parallel), then merged
/// and sorted; a repeated word is reported as [`Error::DuplicateMember`].
pub fn construct(g: &GraphParams, limits: &Limits) -> Result<Construction> {
    let expected = cardinality_formula(g)?;
    if expected > limits.member_cap as u128 {
        return Err(Error::capacity("|D| members", expected, limits.member_cap));
    }
    let n = g.n();
    let mut t = if g.t() % 2 == 1 { 1 } else { 2 };
    let mut current = base_level(n, t);
    let mut levels = Vec::new();
    while t < g.t() {
        t += 2;
        let per_parent: Vec<Vec<(BlockKind, Vec<Word>)>> = current
            .par_iter()
            .map(|v| parent_blocks(n, t, v))
            .collect::<Result<_>>()?;
        let blocks = per_parent.iter().map(Vec::len).sum();
        let mut next: Vec<Word> = per_parent
            .into_iter()
            .flatten()
            .flat_map(|(_, words)| words)
            .collect();
        let block_total = next.len();
        next.par_sort_unstable();
        if let Some(dup) = next.windows(2).find(|p| p[0] == p[1]) {
            return Err(Error::DuplicateMember {
                word: dup[0].to_string(),
                level: t,
            });
        }
        levels.push(LevelStats {
            t,
            blocks,
            block_total,
            union_size: next.len(),
        });
        current = next;
    }
    current.sort_unstable();
    Ok(Construction {
        set: VertexSet::from_sorted_unchecked(*g, current),
        levels,
    })
}

/// `D_{n,t}`, sorted.
pub fn build_d(g: &GraphParams, limits: &Limits) -> Result<VertexSet> {
    Ok(construct(g, limits)?.set)
}

/// `D*_{n,t} = D_{n,t} \ {1^t}`, sorted.
pub fn build_d_star(g: &GraphParams, limits: &Limits) -> Result<VertexSet> {
    let d = build_d(g, limits)?;
    let ones = g.extreme(1)?;
    if !d.contains(&ones) {
        return Err(Error::Construction(format!("{ones} missing from D")));
    }
    Ok(d.without(&ones))
}

/// `ceil(n^t / (n + 1))` in exact arithmetic.
pub fn cardinality_formula(g: &GraphParams) -> Result<u128> {
    let n = g.n() as u128;
    let power = n.checked_pow(g.t()).ok_or(Error::Overflow("n^t"))?;
    Ok(power.div_ceil(n + 1))
}

/// Streams the members of `D_{n,t}` depth-first without materializing any
/// level. Order follows the recursion, not the lexicographic order; meant for
/// counting and spot checks beyond the member cap.
pub fn stream_d(g: &GraphParams) -> Box<dyn Iterator<Item = Result<Word>> + Send> {
    stream_level(g.n(), g.t())
}

fn stream_level(n: u32, t: u32) -> Box<dyn Iterator<Item = Result<Word>> + Send> {
    if t <= 2 {
        return Box::new(base_level(n, t).into_iter().map(Ok));
    }
    Box::new(stream_level(n, t - 2).flat_map(move |parent| {
        let words: Vec<Result<Word>> = match parent.and_then(|p| parent_blocks(n, t, &p)) {
            Ok(blocks) => blocks.into_iter().flat_map(|(_, ws)| ws).map(Ok).collect(),
            Err(e) => vec![Err(e)],
        };
        words
    }))
}
