//! Adjacency, neighborhoods and distances on the implicit graph `S(K_n, t)`.
//!
//! Nothing here stores an adjacency structure. Two words `u != v` are
//! adjacent iff for some position `s` they agree before `s`, differ at `s`,
//! and every later entry of `u` equals `v_s` while every later entry of `v`
//! equals `u_s`. Consequently each vertex has its `n - 1` "same prefix"
//! neighbors (change the last label) plus, unless it is constant, exactly
//! one bridge neighbor given by [`flip`].

use std::collections::{HashSet, VecDeque};

use crate::construction::flip;
use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;
use crate::word::{GraphParams, Limits, Word};

/// Adjacency test by direct evaluation of the three-clause rule.
pub fn are_adjacent(g: &GraphParams, u: &Word, v: &Word) -> Result<bool> {
    g.check(u)?;
    g.check(v)?;
    Ok(adjacent_unchecked(u.labels(), v.labels()))
}

pub(crate) fn adjacent_unchecked(u: &[u32], v: &[u32]) -> bool {
    let Some(s) = u.iter().zip(v).position(|(a, b)| a != b) else {
        return false;
    };
    let (us, vs) = (u[s], v[s]);
    u[s + 1..].iter().all(|&x| x == vs) && v[s + 1..].iter().all(|&x| x == us)
}

/// Open neighborhood of `v`, sorted. Built directly in `O(n t)`.
pub fn neighbors(g: &GraphParams, v: &Word) -> Result<VertexSet> {
    g.check(v)?;
    Ok(VertexSet::from_words(*g, neighbor_words(g, v)))
}

/// Closed neighborhood `N[v]`, sorted.
pub fn closed_neighborhood(g: &GraphParams, v: &Word) -> Result<VertexSet> {
    g.check(v)?;
    let mut words = neighbor_words(g, v);
    words.push(v.clone());
    Ok(VertexSet::from_words(*g, words))
}

/// Unsorted neighbors of a word already known to be valid for `g`.
pub(crate) fn neighbor_words(g: &GraphParams, v: &Word) -> Vec<Word> {
    let mut out = Vec::with_capacity(g.n() as usize);
    for_each_neighbor(g, v, |w| out.push(w));
    out
}

pub(crate) fn for_each_neighbor(g: &GraphParams, v: &Word, mut visit: impl FnMut(Word)) {
    let labels = v.labels();
    let last = labels.len() - 1;
    for alpha in 1..=g.n() {
        if alpha != labels[last] {
            let mut w = labels.to_vec();
            w[last] = alpha;
            visit(Word::from_labels_unchecked(w));
        }
    }
    // The bridge neighbor; flip only fails on constant words.
    if let Ok(bridge) = flip(v) {
        // For t = 1 there is no bridge: a non-constant word has length >= 2.
        visit(bridge);
    }
}

/// Degree of `v`: `n - 1` for constant words, `n` otherwise.
pub fn degree(g: &GraphParams, v: &Word) -> Result<usize> {
    g.check(v)?;
    let base = g.n() as usize - 1;
    Ok(if v.is_constant() { base } else { base + 1 })
}

/// Number of edges, `(n^(t+1) - n) / 2`.
pub fn edge_count(g: &GraphParams) -> Result<u128> {
    let n = g.n() as u128;
    let power = n
        .checked_pow(g.t() + 1)
        .ok_or(Error::Overflow("edge count"))?;
    Ok((power - n) / 2)
}

/// Shortest-path length by breadth-first search. Needs `n^t` within the cap.
pub fn distance(g: &GraphParams, u: &Word, v: &Word, limits: &Limits) -> Result<usize> {
    g.check(u)?;
    g.check(v)?;
    let count = g.vertex_count_within(limits)?;
    if u == v {
        return Ok(0);
    }
    let target = g.index_of(v);
    let mut dist = vec![u32::MAX; count];
    let mut queue = VecDeque::new();
    dist[g.index_of(u)] = 0;
    queue.push_back(u.clone());
    while let Some(x) = queue.pop_front() {
        let dx = dist[g.index_of(&x)];
        for y in neighbor_words(g, &x) {
            let iy = g.index_of(&y);
            if dist[iy] == u32::MAX {
                if iy == target {
                    return Ok(dx as usize + 1);
                }
                dist[iy] = dx + 1;
                queue.push_back(y);
            }
        }
    }
    Err(Error::Internal(format!("{v} unreachable from {u}")))
}

/// Distance from `source` to the nearest word accepted by `is_target`
/// (other than `source` itself), searching at most `max_depth` levels.
/// Returns `None` if nothing is found within that radius. Word-local: the
/// explored ball is the only state.
pub fn nearest_within(
    g: &GraphParams,
    source: &Word,
    max_depth: usize,
    mut is_target: impl FnMut(&Word) -> bool,
) -> Result<Option<usize>> {
    g.check(source)?;
    let mut seen: HashSet<Word> = HashSet::new();
    seen.insert(source.clone());
    let mut frontier = vec![source.clone()];
    for depth in 1..=max_depth {
        let mut next = Vec::new();
        for x in &frontier {
            for y in neighbor_words(g, x) {
                if seen.insert(y.clone()) {
                    if is_target(&y) {
                        return Ok(Some(depth));
                    }
                    next.push(y);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(None)
}

/// True when `dist(u, v) <= 2`, decided from closed neighborhoods alone.
pub fn within_distance_two(g: &GraphParams, u: &Word, v: &Word) -> Result<bool> {
    let nu = closed_neighborhood(g, u)?;
    g.check(v)?;
    if nu.contains(v) {
        return Ok(true);
    }
    Ok(neighbor_words(g, v).iter().any(|w| nu.contains(w)))
}
