//! Exact branch-and-bound oracle for `gamma`, `gamma_R` and `gamma_dR` on
//! small instances.
//!
//! The graph is materialized from the pairwise adjacency rule alone, so the
//! oracle shares nothing with the constructions it is used to check.
//!
//! Every vertex is either *fixed* to a value or *open* (tentatively 0, may be
//! raised later), and carries a domain of values it may still take. A node
//! branches on the lowest-index vertex `u` that is unsatisfied under the
//! current values:
//!
//! * `u` open: fix `u` to each allowed nonzero value, highest first, then to 0.
//! * `u` fixed to 0 or 1: give the `i`-th open neighbor (lexicographic order)
//!   a value that helps `u`, after removing that value from the domains of the
//!   first `i - 1` open neighbors. For double Roman functions the 2-placements
//!   follow the 3-placements with 3 removed from every open neighbor.
//!
//! Siblings therefore partition the labelings consistent with their parent,
//! and a leaf (nothing unsatisfied) with open vertices read as 0 is a valid
//! labeling no heavier than any completion of its branch. Nodes are pruned
//! when `cost + bound >= incumbent`, where the bound counts how much
//! unsatisfied demand one unit of weight can discharge given maximum degree
//! `Δ`.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::domination::{is_dominating, is_double_roman, is_roman, Variant};
use crate::error::{Error, Result};
use crate::graph::{adjacent_unchecked, for_each_neighbor};
use crate::labeling::{Labeling, Mode};
use crate::vertex_set::VertexSet;
use crate::word::{GraphParams, Limits, Word};

/// Largest instance the bitset representation supports.
pub const MAX_SOLVER_VERTICES: usize = 128;
/// Default vertex cap for the exact solver.
pub const DEFAULT_SOLVER_CAP: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LowerBoundMode {
    /// Prune with the degree-based counting bound.
    #[default]
    DegreeBound,
    /// Prune on accumulated weight only.
    None,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverConfig {
    pub variant: Variant,
    /// Double Roman only: search values `{0, 2, 3}` instead of `{0, 1, 2, 3}`.
    pub restrict_values: bool,
    pub vertex_cap: usize,
    pub time_budget: Option<Duration>,
    pub lower_bound_mode: LowerBoundMode,
    /// Worker count; 1 runs single-threaded, 0 uses the ambient rayon pool.
    pub threads: usize,
}

impl SolverConfig {
    pub fn new(variant: Variant) -> Self {
        SolverConfig {
            variant,
            restrict_values: false,
            vertex_cap: DEFAULT_SOLVER_CAP,
            time_budget: None,
            lower_bound_mode: LowerBoundMode::DegreeBound,
            threads: 1,
        }
    }

    pub fn restricted(mut self, restrict: bool) -> Self {
        self.restrict_values = restrict;
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    pub fn with_budget(mut self, budget: Duration) -> Self {
        self.time_budget = Some(budget);
        self
    }

    fn validate(&self) -> Result<()> {
        if self.vertex_cap == 0 {
            return Err(Error::SolverConfig("vertex_cap must be at least 1".into()));
        }
        if self.vertex_cap > MAX_SOLVER_VERTICES {
            return Err(Error::SolverConfig(format!(
                "vertex_cap {} exceeds the supported maximum {MAX_SOLVER_VERTICES}",
                self.vertex_cap
            )));
        }
        if self.restrict_values && self.variant != Variant::DoubleRoman {
            return Err(Error::SolverConfig(
                "restrict_values only applies to double Roman search".into(),
            ));
        }
        Ok(())
    }
}

/// An optimal witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Set(VertexSet),
    Labeling(Labeling),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub value: u64,
    pub witness: Witness,
    /// Degree bound at the root.
    pub root_bound: u64,
    pub nodes: u64,
}

/// One line of the optional search trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEvent {
    pub depth: usize,
    pub choice: String,
    pub bound: u64,
    pub incumbent: Option<u64>,
}

impl std::fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "depth={} choice={} bound={} incumbent=",
            self.depth, self.choice, self.bound
        )?;
        match self.incumbent {
            Some(v) => write!(f, "{v}"),
            None => f.write_str("none"),
        }
    }
}

/// Exact domination number.
pub fn exact_gamma(g: &GraphParams, cfg: &SolverConfig) -> Result<u64> {
    Ok(solve(g, &with_variant(cfg, Variant::Plain))?.value)
}

/// Exact Roman domination number.
pub fn exact_gamma_r(g: &GraphParams, cfg: &SolverConfig) -> Result<u64> {
    Ok(solve(g, &with_variant(cfg, Variant::Roman))?.value)
}

/// Exact double Roman domination number; `cfg.restrict_values` picks the
/// value set.
pub fn exact_gamma_dr(g: &GraphParams, cfg: &SolverConfig) -> Result<u64> {
    Ok(solve(g, &with_variant(cfg, Variant::DoubleRoman))?.value)
}

fn with_variant(cfg: &SolverConfig, variant: Variant) -> SolverConfig {
    let mut cfg = cfg.clone();
    if variant != Variant::DoubleRoman {
        cfg.restrict_values = false;
    }
    cfg.variant = variant;
    cfg
}

/// Solves with the configured variant and returns the verified witness.
pub fn solve(g: &GraphParams, cfg: &SolverConfig) -> Result<Solution> {
    run(g, cfg, None)
}

/// Single-threaded solve that reports every expanded branch to `trace`.
pub fn solve_traced(
    g: &GraphParams,
    cfg: &SolverConfig,
    trace: &mut dyn FnMut(&TraceEvent),
) -> Result<Solution> {
    let cfg = SolverConfig {
        threads: 1,
        ..cfg.clone()
    };
    run(g, &cfg, Some(trace))
}

/// The degree bound of the whole instance: a lower bound on the optimum.
pub fn degree_lower_bound(g: &GraphParams, variant: Variant) -> Result<u64> {
    let count = g.vertex_count()? as u64;
    let delta = g.max_degree() as u64;
    Ok(demand_bound(variant, count, 2 * count, delta))
}

/// Minimum cost to discharge the unsatisfied vertices: `unsat` vertices
/// (plain/Roman) or `halves` demand units (double Roman).
fn demand_bound(variant: Variant, unsat: u64, halves: u64, delta: u64) -> u64 {
    let reach = delta + 1;
    match variant {
        Variant::Plain => unsat.div_ceil(reach),
        Variant::Roman => {
            let (q, r) = (unsat / reach, unsat % reach);
            if r == 0 {
                2 * q
            } else {
                (2 * q + r).min(2 * q + 2)
            }
        }
        Variant::DoubleRoman => {
            // A 3 discharges <= 2(Δ+1) units, a 2 at most Δ + 2.
            let per_three = 2 * reach;
            let per_two = delta + 2;
            (0..=halves.div_ceil(per_three))
                .map(|threes| {
                    let rest = halves.saturating_sub(threes * per_three);
                    3 * threes + 2 * rest.div_ceil(per_two)
                })
                .min()
                .unwrap_or(0)
        }
    }
}

/// The instance in bitset form.
struct Instance {
    words: Vec<Word>,
    adj: Vec<u128>,
    delta: u64,
    variant: Variant,
    /// Value that satisfies neighbors on its own.
    strong: u8,
    /// Value that satisfies 0-neighbors in pairs (double Roman 2).
    half: Option<u8>,
    lb_mode: LowerBoundMode,
}

impl Instance {
    fn new(g: &GraphParams, cfg: &SolverConfig) -> Result<Self> {
        let words: Vec<Word> = g
            .words(&Limits {
                vertex_cap: cfg.vertex_cap,
                ..Limits::default()
            })?
            .collect();
        let mut adj = vec![0u128; words.len()];
        for i in 0..words.len() {
            for j in i + 1..words.len() {
                if adjacent_unchecked(words[i].labels(), words[j].labels()) {
                    adj[i] |= 1 << j;
                    adj[j] |= 1 << i;
                }
            }
        }
        let delta = adj.iter().map(|a| a.count_ones() as u64).max().unwrap_or(0);
        let (strong, half) = match cfg.variant {
            Variant::Plain => (1, None),
            Variant::Roman => (2, None),
            Variant::DoubleRoman => (3, Some(2)),
        };
        Ok(Instance {
            words,
            adj,
            delta,
            variant: cfg.variant,
            strong,
            half,
            lb_mode: cfg.lower_bound_mode,
        })
    }

    fn initial_domain(&self, restrict: bool) -> u8 {
        match self.variant {
            Variant::Plain => 0b11,
            Variant::Roman => 0b111,
            Variant::DoubleRoman if restrict => 0b1101,
            Variant::DoubleRoman => 0b1111,
        }
    }
}

#[derive(Clone)]
struct State {
    values: Vec<u8>,
    domain: Vec<u8>,
    halves: Vec<u8>,
    fixed: u128,
    strong_nb: u128,
    unsat: u128,
    cost: u64,
}

fn bit(i: usize) -> u128 {
    1u128 << i
}

fn members(mut mask: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            return None;
        }
        let i = mask.trailing_zeros() as usize;
        mask &= mask - 1;
        Some(i)
    })
}

impl State {
    fn root(inst: &Instance, restrict: bool) -> State {
        let count = inst.words.len();
        let all = if count == 128 {
            u128::MAX
        } else {
            bit(count) - 1
        };
        State {
            values: vec![0; count],
            domain: vec![inst.initial_domain(restrict); count],
            halves: vec![0; count],
            fixed: 0,
            strong_nb: 0,
            unsat: all,
            cost: 0,
        }
    }

    fn satisfied(&self, inst: &Instance, v: usize) -> bool {
        let strong = self.strong_nb & bit(v) != 0;
        match (inst.variant, self.values[v]) {
            (Variant::Plain, 0) | (Variant::Roman, 0) => strong,
            (Variant::DoubleRoman, 0) => strong || self.halves[v] >= 2,
            (Variant::DoubleRoman, 1) => strong,
            _ => true,
        }
    }

    fn refresh(&mut self, inst: &Instance, v: usize) {
        if self.satisfied(inst, v) {
            self.unsat &= !bit(v);
        } else {
            self.unsat |= bit(v);
        }
    }

    fn assign(&mut self, inst: &Instance, v: usize, value: u8) {
        debug_assert!(self.fixed & bit(v) == 0);
        self.fixed |= bit(v);
        self.values[v] = value;
        self.cost += value as u64;
        let nbrs = inst.adj[v];
        if value == inst.strong {
            self.strong_nb |= nbrs;
        } else if Some(value) == inst.half {
            for u in members(nbrs) {
                self.halves[u] += 1;
            }
        }
        self.refresh(inst, v);
        for u in members(nbrs) {
            self.refresh(inst, u);
        }
    }

    fn bound(&self, inst: &Instance) -> u64 {
        if inst.lb_mode == LowerBoundMode::None {
            return 0;
        }
        let unsat = self.unsat.count_ones() as u64;
        let halves = members(self.unsat)
            .map(|v| {
                if self.values[v] == 0 && self.halves[v] >= 1 {
                    1
                } else {
                    2
                }
            })
            .sum();
        demand_bound(inst.variant, unsat, halves, inst.delta)
    }

    /// Children in branching order, each tagged with a description.
    fn children(&self, inst: &Instance) -> Vec<(String, State)> {
        let u = self.unsat.trailing_zeros() as usize;
        let mut out = Vec::new();
        let name = |v: usize, value: u8| format!("{}={}", inst.words[v], value);
        if self.fixed & bit(u) == 0 {
            for value in (0..=3u8).rev().filter(|k| self.domain[u] & (1 << k) != 0) {
                let mut child = self.clone();
                child.assign(inst, u, value);
                out.push((name(u, value), child));
            }
            return out;
        }
        let open: Vec<usize> = members(inst.adj[u] & !self.fixed).collect();
        let mut helpers = vec![inst.strong];
        // A fixed 1 needs a strong neighbor; a fixed 0 may also use halves.
        if self.values[u] == 0 {
            helpers.extend(inst.half);
        }
        let mut base = self.clone();
        for value in helpers {
            let mask = 1u8 << value;
            let mut tried = base.clone();
            for &w in &open {
                if tried.domain[w] & mask == 0 {
                    continue;
                }
                let mut child = tried.clone();
                child.assign(inst, w, value);
                out.push((name(w, value), child));
                tried.domain[w] &= !mask;
            }
            // Later helper kinds assume no open neighbor takes this value.
            for &w in &open {
                base.domain[w] &= !mask;
            }
        }
        out
    }
}

struct Shared {
    incumbent: AtomicU64,
    best: Mutex<Option<Vec<u8>>>,
    nodes: AtomicU64,
    abort: AtomicBool,
    deadline: Option<Instant>,
}

impl Shared {
    fn offer(&self, state: &State) {
        let prev = self.incumbent.fetch_min(state.cost, Ordering::SeqCst);
        if state.cost < prev {
            let mut best = self.best.lock().expect("incumbent lock");
            // Another worker may have stored a better one in between.
            if self.incumbent.load(Ordering::SeqCst) == state.cost {
                *best = Some(state.values.clone());
            }
        }
    }

    fn incumbent(&self) -> Option<u64> {
        match self.incumbent.load(Ordering::SeqCst) {
            u64::MAX => None,
            v => Some(v),
        }
    }

    fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed);
        if n.is_multiple_of(1024) {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.abort.store(true, Ordering::SeqCst);
                }
            }
        }
        !self.abort.load(Ordering::Relaxed)
    }
}

fn dfs(
    inst: &Instance,
    shared: &Shared,
    state: State,
    depth: usize,
    trace: &mut Option<&mut dyn FnMut(&TraceEvent)>,
) {
    if !shared.tick() {
        return;
    }
    if state.unsat == 0 {
        shared.offer(&state);
        return;
    }
    for (choice, child) in state.children(inst) {
        let bound = child.cost + child.bound(inst);
        if bound >= shared.incumbent.load(Ordering::SeqCst) {
            continue;
        }
        if let Some(sink) = trace.as_mut() {
            sink(&TraceEvent {
                depth,
                choice,
                bound,
                incumbent: shared.incumbent(),
            });
        }
        dfs(inst, shared, child, depth + 1, trace);
    }
}

fn run(
    g: &GraphParams,
    cfg: &SolverConfig,
    mut trace: Option<&mut dyn FnMut(&TraceEvent)>,
) -> Result<Solution> {
    cfg.validate()?;
    let inst = Instance::new(g, cfg)?;
    let root = State::root(&inst, cfg.restrict_values);
    let root_bound = root.bound(&inst);
    let shared = Shared {
        incumbent: AtomicU64::new(u64::MAX),
        best: Mutex::new(None),
        nodes: AtomicU64::new(0),
        abort: AtomicBool::new(false),
        deadline: cfg.time_budget.map(|b| Instant::now() + b),
    };

    if cfg.threads == 1 || trace.is_some() {
        dfs(&inst, &shared, root, 0, &mut trace);
    } else {
        let frontier = expand_frontier(&inst, root, 64);
        let work = || {
            frontier
                .into_par_iter()
                .for_each(|(depth, state)| dfs(&inst, &shared, state, depth, &mut None));
        };
        if cfg.threads == 0 {
            work();
        } else {
            rayon::ThreadPoolBuilder::new()
                .num_threads(cfg.threads)
                .build()
                .map_err(|e| Error::SolverConfig(e.to_string()))?
                .install(work);
        }
    }

    let nodes = shared.nodes.load(Ordering::SeqCst);
    if shared.abort.load(Ordering::SeqCst) {
        return Err(Error::BudgetExhausted {
            incumbent: shared.incumbent(),
            lower_bound: root_bound,
        });
    }
    let values = shared
        .best
        .into_inner()
        .expect("incumbent lock")
        .ok_or_else(|| Error::Internal("search ended without a feasible labeling".into()))?;
    let value = values.iter().map(|&v| v as u64).sum();
    let witness = verified_witness(g, &inst, &values)?;
    Ok(Solution {
        value,
        witness,
        root_bound,
        nodes,
    })
}

/// Breadth-first expansion of the top levels into independent subtrees.
fn expand_frontier(inst: &Instance, root: State, target: usize) -> Vec<(usize, State)> {
    let mut frontier = vec![(0usize, root)];
    for _ in 0..4 {
        if frontier.len() >= target {
            break;
        }
        let mut next = Vec::new();
        for (depth, state) in frontier {
            if state.unsat == 0 {
                next.push((depth, state));
            } else {
                next.extend(
                    state
                        .children(inst)
                        .into_iter()
                        .map(|(_, c)| (depth + 1, c)),
                );
            }
        }
        frontier = next;
    }
    frontier
}

fn verified_witness(g: &GraphParams, inst: &Instance, values: &[u8]) -> Result<Witness> {
    let limits = Limits::default();
    let chosen = || {
        values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > 0)
            .map(|(i, &v)| (inst.words[i].clone(), v))
    };
    let ok;
    let witness = match inst.variant {
        Variant::Plain => {
            let set = VertexSet::new(*g, chosen().map(|(w, _)| w).collect())?;
            ok = is_dominating(g, &set, &limits)?;
            Witness::Set(set)
        }
        Variant::Roman | Variant::DoubleRoman => {
            let mode = if inst.variant == Variant::Roman {
                Mode::Roman
            } else {
                Mode::DoubleRoman
            };
            let mut f = Labeling::new(*g, mode);
            for (w, v) in chosen() {
                f.set(w, v)?;
            }
            ok = match mode {
                Mode::Roman => is_roman(g, &f, &limits)?,
                Mode::DoubleRoman => is_double_roman(g, &f, &limits)?,
            };
            Witness::Labeling(f)
        }
    };
    if !ok {
        return Err(Error::Internal(format!(
            "solver witness for {} failed full verification",
            inst.variant.name()
        )));
    }
    Ok(witness)
}

/// Minimum distance between two distinct members of `s`, by one
/// multi-source BFS: the shortest path between two members crosses an edge
/// whose endpoints were reached from different sources.
pub fn minimum_pairwise_distance(g: &GraphParams, s: &VertexSet, limits: &Limits) -> Result<usize> {
    if s.params() != *g {
        return Err(Error::InvalidParams(
            "set belongs to a different graph".into(),
        ));
    }
    if s.len() < 2 {
        return Err(Error::TooFewMembers(s.len()));
    }
    let count = g.vertex_count_within(limits)?;
    let mut dist = vec![u32::MAX; count];
    let mut owner = vec![u32::MAX; count];
    let mut queue = std::collections::VecDeque::new();
    for (k, v) in s.iter().enumerate() {
        let i = g.index_of(v);
        dist[i] = 0;
        owner[i] = k as u32;
        queue.push_back(i);
    }
    let mut best = usize::MAX;
    while let Some(i) = queue.pop_front() {
        let x = g.word_at(i);
        if 2 * dist[i] as usize + 1 >= best {
            break;
        }
        for_each_neighbor(g, &x, |y| {
            let j = g.index_of(&y);
            if dist[j] == u32::MAX {
                dist[j] = dist[i] + 1;
                owner[j] = owner[i];
                queue.push_back(j);
            } else if owner[j] != owner[i] {
                best = best.min(dist[i] as usize + dist[j] as usize + 1);
            }
        });
    }
    Ok(best)
}
