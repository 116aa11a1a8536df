//! Exact `k`-locatability over belief states.
//!
//! The reachable belief graph is closed breadth-first from the initial
//! belief, then winning beliefs are computed as a least fixed point by a
//! layered attractor: a belief is winning in `r` turns when some probe set
//! leaves only singleton classes or classes whose expansions win in fewer
//! than `r` turns.

pub mod metric;
pub mod tree;

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};
use thiserror::Error;

use crate::families::combinations;
use crate::graph::{Distance, Graph, Vertex};
use crate::subdivision::subdivide;
use crate::vertex_set::VertexSet;

pub use metric::{is_resolving, metric_dimension};
pub use tree::{Branch, StrategyNode, StrategyTree, TreeError};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum Variant {
    #[default]
    FreeMove,
    /// The robber may not move onto a vertex probed in the turn just played.
    NoMoveToLastProbes,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::FreeMove => "free",
            Variant::NoMoveToLastProbes => "seager",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GameRules {
    pub k: usize,
    pub variant: Variant,
}

impl GameRules {
    pub fn new(k: usize) -> Self {
        Self { k, variant: Variant::FreeMove }
    }

    pub fn with_variant(k: usize, variant: Variant) -> Self {
        Self { k, variant }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("probe set is empty")]
    EmptyProbeSet,
    #[error("belief is empty")]
    EmptyBelief,
    #[error("vertex {0} is not in the graph")]
    InvalidVertex(Vertex),
    #[error("probe {probe} and candidate {candidate} lie in different components")]
    Unreachable { probe: Vertex, candidate: Vertex },
}

/// Robber positions consistent with the probe history.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BeliefState(VertexSet);

impl BeliefState {
    pub fn initial(g: &Graph) -> Self {
        Self(g.full_set())
    }

    pub fn new(candidates: VertexSet) -> Result<Self, SolverError> {
        if candidates.is_empty() {
            return Err(SolverError::EmptyBelief);
        }
        Ok(Self(candidates))
    }

    pub fn candidates(&self) -> &VertexSet {
        &self.0
    }

    pub fn into_set(self) -> VertexSet {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The located vertex, if the belief is a singleton.
    pub fn located(&self) -> Option<Vertex> {
        self.0.only()
    }
}

impl fmt::Debug for BeliefState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn check_vertices(g: &Graph, probes: &[Vertex]) -> Result<(), SolverError> {
    match probes.iter().find(|&&p| p >= g.vertex_count()) {
        Some(&p) => Err(SolverError::InvalidVertex(p)),
        None => Ok(()),
    }
}

pub(crate) fn partition_keyed(
    g: &Graph,
    b: &VertexSet,
    probes: &[Vertex],
) -> Result<Vec<(Vec<u32>, VertexSet)>, SolverError> {
    if probes.is_empty() {
        return Err(SolverError::EmptyProbeSet);
    }
    check_vertices(g, probes)?;
    let mut classes: BTreeMap<Vec<u32>, VertexSet> = BTreeMap::new();
    for x in b {
        let mut key = Vec::with_capacity(probes.len());
        for &p in probes {
            match g.dist_unchecked(p, x) {
                Distance::Finite(d) => key.push(d),
                Distance::Infinite => return Err(SolverError::Unreachable { probe: p, candidate: x }),
            }
        }
        classes.entry(key).or_insert_with(|| g.empty_set()).insert(x);
    }
    Ok(classes.into_iter().collect())
}

/// Groups the candidates of `b` by their distance vector to `probes`
/// (taken in the given order), sorted lexicographically by vector.
pub fn partition_by_probe(
    g: &Graph,
    b: &BeliefState,
    probes: &[Vertex],
) -> Result<Vec<(Vec<u32>, BeliefState)>, SolverError> {
    if b.is_empty() {
        return Err(SolverError::EmptyBelief);
    }
    Ok(partition_keyed(g, &b.0, probes)?.into_iter().map(|(k, s)| (k, BeliefState(s))).collect())
}

pub(crate) fn expand_set(g: &Graph, b: &VertexSet, variant: Variant, last_probes: &VertexSet) -> VertexSet {
    let mut out = g.closed_neighborhood(b);
    if variant == Variant::NoMoveToLastProbes {
        out.difference_with(last_probes);
        out.union_with(b);
    }
    out
}

/// Positions reachable in one robber move from `b`.
pub fn expand(g: &Graph, b: &BeliefState, rules: &GameRules, last_probes: &[Vertex]) -> BeliefState {
    let probes = g.set_of(last_probes.iter().copied());
    BeliefState(expand_set(g, &b.0, rules.variant, &probes))
}

/// Limits on a solve. Exceeding either yields [`SolveStatus::Unknown`].
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    /// Cap on distinct beliefs stored.
    pub max_nodes: Option<usize>,
    pub max_time: Option<Duration>,
    /// Evaluate the probe sets of a frontier concurrently. Results are
    /// identical either way.
    pub parallel: bool,
}

impl Default for Budget {
    fn default() -> Self {
        Self { max_nodes: Some(4_000_000), max_time: None, parallel: true }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Self { max_nodes: None, max_time: None, parallel: true }
    }

    pub fn nodes(max_nodes: usize) -> Self {
        Self { max_nodes: Some(max_nodes), ..Self::default() }
    }

    pub fn with_time(mut self, t: Duration) -> Self {
        self.max_time = Some(t);
        self
    }

    pub fn sequential(mut self) -> Self {
        self.parallel = false;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolveStatus {
    Locatable,
    NonLocatable,
    Unknown,
}

impl fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolveStatus::Locatable => "LOCATABLE",
            SolveStatus::NonLocatable => "NON_LOCATABLE",
            SolveStatus::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Debug, Clone, Default)]
pub struct SolveStats {
    pub beliefs: usize,
    pub options: usize,
    pub cache_hits: usize,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub status: SolveStatus,
    pub turn_bound: Option<u32>,
    pub strategy: Option<StrategyTree>,
    pub stats: SolveStats,
}

impl SolveResult {
    /// `Some(answer)` unless the budget ran out first.
    pub fn locatable(&self) -> Option<bool> {
        match self.status {
            SolveStatus::Locatable => Some(true),
            SolveStatus::NonLocatable => Some(false),
            SolveStatus::Unknown => None,
        }
    }
}

/// Status of a belief in the solver's table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BeliefValue {
    /// The cop wins in exactly this many turns from here.
    Winning(u32),
    Losing,
    /// Not reached by any completed solve.
    Unexplored,
}

/// Reusable solver holding the explored belief table for one graph and
/// rule set.
pub struct Solver<'g> {
    g: &'g Graph,
    rules: GameRules,
    budget: Budget,
    probe_sets: Vec<Vec<Vertex>>,
    probe_masks: Vec<VertexSet>,
    layers: Vec<Vec<VertexSet>>,
    ids: FxHashMap<VertexSet, u32>,
    beliefs: Vec<VertexSet>,
    options: Vec<Option<Vec<Box<[u32]>>>>,
    depth: Vec<u32>,
    complete: bool,
    cache_hits: usize,
}

const CHUNK: usize = 512;

impl<'g> Solver<'g> {
    pub fn new(g: &'g Graph, rules: GameRules, budget: Budget) -> Result<Self, SolverError> {
        if rules.k == 0 {
            return Err(SolverError::ZeroK);
        }
        if g.vertex_count() == 0 {
            return Err(SolverError::EmptyBelief);
        }
        if !g.is_connected() {
            return Err(SolverError::Disconnected { components: g.components().len() });
        }
        let n = g.vertex_count();
        let probe_sets = combinations(n, rules.k.min(n));
        let probe_masks = probe_sets.iter().map(|p| g.set_of(p.iter().copied())).collect();
        let layers = g
            .vertices()
            .map(|p| {
                let mut l: Vec<VertexSet> = Vec::new();
                for x in g.vertices() {
                    let d = g.dist(p, x) as usize;
                    while l.len() <= d {
                        l.push(g.empty_set());
                    }
                    l[d].insert(x);
                }
                l
            })
            .collect();
        Ok(Self {
            g,
            rules,
            budget,
            probe_sets,
            probe_masks,
            layers,
            ids: FxHashMap::default(),
            beliefs: Vec::new(),
            options: Vec::new(),
            depth: Vec::new(),
            complete: true,
            cache_hits: 0,
        })
    }

    pub fn graph(&self) -> &Graph {
        self.g
    }

    pub fn rules(&self) -> GameRules {
        self.rules
    }

    fn classes(&self, b: &VertexSet, probes: &[Vertex]) -> Vec<VertexSet> {
        let mut cur = vec![b.clone()];
        for &p in probes {
            let mut next = Vec::with_capacity(cur.len() * 2);
            for c in &cur {
                if c.len() == 1 {
                    next.push(c.clone());
                    continue;
                }
                for layer in &self.layers[p] {
                    if c.intersects(layer) {
                        next.push(c.intersection(layer));
                    }
                }
            }
            cur = next;
        }
        cur
    }

    fn keyed_classes(&self, b: &VertexSet, probes: &[Vertex]) -> Vec<(Vec<u32>, VertexSet)> {
        partition_keyed(self.g, b, probes).expect("connected graph, valid probes")
    }

    /// Distinct non-dominated moves from `b`, each the maximal child
    /// beliefs it leaves. A move with no children wins at once and is then
    /// the only one returned.
    fn options_for(&self, b: &VertexSet) -> Vec<Vec<VertexSet>> {
        let mut seen: FxHashSet<Vec<VertexSet>> = FxHashSet::default();
        let mut out = Vec::new();
        'probe: for (probes, mask) in self.probe_sets.iter().zip(&self.probe_masks) {
            let mut children = Vec::new();
            for c in self.classes(b, probes) {
                if c.len() >= 2 {
                    let e = expand_set(self.g, &c, self.rules.variant, mask);
                    if b.is_subset(&e) {
                        continue 'probe;
                    }
                    children.push(e);
                }
            }
            if children.is_empty() {
                return vec![Vec::new()];
            }
            children.sort();
            children.dedup();
            let maximal: Vec<VertexSet> = children
                .iter()
                .enumerate()
                .filter(|(i, c)| !children.iter().enumerate().any(|(j, d)| *i != j && c.is_subset(d)))
                .map(|(_, c)| c.clone())
                .collect();
            if seen.insert(maximal.clone()) {
                out.push(maximal);
            }
        }
        out
    }

    fn intern(&mut self, s: VertexSet) -> (u32, bool) {
        if let Some(&id) = self.ids.get(&s) {
            self.cache_hits += 1;
            return (id, false);
        }
        let id = self.beliefs.len() as u32;
        self.ids.insert(s.clone(), id);
        self.beliefs.push(s);
        self.options.push(None);
        (id, true)
    }

    fn over_budget(&self, start: Instant) -> bool {
        self.budget.max_nodes.is_some_and(|m| self.beliefs.len() > m)
            || self.budget.max_time.is_some_and(|t| start.elapsed() > t)
    }

    /// Closes the reachable belief graph from `root`. Returns false if the
    /// budget ran out first.
    fn explore(&mut self, root: u32, start: Instant) -> bool {
        let mut frontier: Vec<u32> = vec![root];
        let mut idx = 0;
        while idx < frontier.len() {
            if self.over_budget(start) {
                return false;
            }
            let end = (idx + CHUNK).min(frontier.len());
            let chunk: Vec<u32> =
                frontier[idx..end].iter().copied().filter(|&b| self.options[b as usize].is_none()).collect();
            idx = end;
            let computed: Vec<Vec<Vec<VertexSet>>> = if self.budget.parallel && chunk.len() > 1 {
                chunk.par_iter().map(|&b| self.options_for(&self.beliefs[b as usize])).collect()
            } else {
                chunk.iter().map(|&b| self.options_for(&self.beliefs[b as usize])).collect()
            };
            for (b, opts) in chunk.into_iter().zip(computed) {
                let mut stored = Vec::with_capacity(opts.len());
                for children in opts {
                    let mut ids = Vec::with_capacity(children.len());
                    for c in children {
                        let (id, fresh) = self.intern(c);
                        if fresh {
                            frontier.push(id);
                        }
                        ids.push(id);
                    }
                    stored.push(ids.into_boxed_slice());
                }
                self.options[b as usize] = Some(stored);
            }
        }
        true
    }

    /// Layered attractor over every expanded belief.
    fn compute_depths(&mut self) {
        let n = self.beliefs.len();
        let mut depth = vec![0u32; n];
        let mut remaining: Vec<u32> = Vec::new();
        let mut owner: Vec<u32> = Vec::new();
        let mut watchers: Vec<Vec<u32>> = vec![Vec::new(); n];
        let mut level: Vec<u32> = Vec::new();
        for (b, opts) in self.options.iter().enumerate() {
            let Some(opts) = opts else { continue };
            for children in opts {
                let o = owner.len() as u32;
                owner.push(b as u32);
                remaining.push(children.len() as u32);
                for &c in children.iter() {
                    watchers[c as usize].push(o);
                }
                if children.is_empty() && depth[b] == 0 {
                    depth[b] = 1;
                    level.push(b as u32);
                }
            }
        }
        let mut r = 1;
        while !level.is_empty() {
            let mut next = Vec::new();
            for &b in &level {
                for &o in &watchers[b as usize] {
                    remaining[o as usize] -= 1;
                    let w = owner[o as usize] as usize;
                    if remaining[o as usize] == 0 && depth[w] == 0 {
                        depth[w] = r + 1;
                        next.push(w as u32);
                    }
                }
            }
            level = next;
            r += 1;
        }
        self.depth = depth;
    }

    pub fn options_explored(&self) -> usize {
        self.options.iter().flatten().map(Vec::len).sum()
    }

    /// Value of `b` in the current table. Losing is reported only when the
    /// table is closed under every move from `b`.
    pub fn value_of(&self, b: &VertexSet) -> BeliefValue {
        match self.ids.get(b) {
            Some(&id) if self.depth.get(id as usize).is_some_and(|&d| d > 0) => {
                BeliefValue::Winning(self.depth[id as usize])
            }
            Some(&id) if self.complete && self.options[id as usize].is_some() => BeliefValue::Losing,
            _ => BeliefValue::Unexplored,
        }
    }

    fn winning_depth(&self, b: &VertexSet) -> Option<u32> {
        let &id = self.ids.get(b)?;
        self.depth.get(id as usize).copied().filter(|&d| d > 0)
    }

    /// Solves from `initial`, extending the table.
    pub fn solve(&mut self, initial: &BeliefState) -> SolveResult {
        let start = Instant::now();
        let (root, _) = self.intern(initial.0.clone());
        let closed = self.explore(root, start);
        self.complete &= closed;
        self.compute_depths();
        let depth = self.depth[root as usize];
        let (status, turn_bound, strategy) = if depth > 0 {
            let tree_root = self.build(&initial.0, &initial.0, depth);
            let tree = StrategyTree::new(self.rules.k, tree_root).expect("extracted tree is well formed");
            debug_assert_eq!(tree.depth(), depth);
            (SolveStatus::Locatable, Some(depth), Some(tree))
        } else if closed {
            (SolveStatus::NonLocatable, None, None)
        } else {
            (SolveStatus::Unknown, None, None)
        };
        SolveResult {
            status,
            turn_bound,
            strategy,
            stats: SolveStats {
                beliefs: self.beliefs.len(),
                options: self.options_explored(),
                cache_hits: self.cache_hits,
                elapsed: start.elapsed(),
            },
        }
    }

    /// Witness table beliefs for every nontrivial class of `source` under
    /// `probes`, each winning within `limit` turns, keyed like the classes.
    fn qualify(&self, source: &VertexSet, probes: usize, limit: u32) -> Option<Vec<(Vec<u32>, VertexSet)>> {
        let mask = &self.probe_masks[probes];
        let mut expansions = Vec::new();
        for (key, c) in self.keyed_classes(source, &self.probe_sets[probes]) {
            if c.len() >= 2 {
                expansions.push((key, expand_set(self.g, &c, self.rules.variant, mask)));
            }
        }
        let ok = |s: &VertexSet| self.winning_depth(s).is_some_and(|d| d <= limit);
        let mut out = Vec::with_capacity(expansions.len());
        for (key, e) in &expansions {
            let witness = if ok(e) {
                e.clone()
            } else {
                expansions.iter().map(|(_, w)| w).find(|w| e.is_subset(w) && ok(w))?.clone()
            };
            out.push((key.clone(), witness));
        }
        Some(out)
    }

    /// Strategy node for belief `b`, playing the table strategy of
    /// `source ⊇ b`, which wins within `bound` turns.
    fn build(&self, b: &VertexSet, source: &VertexSet, bound: u32) -> StrategyNode {
        let (source, bound) = match self.winning_depth(b) {
            Some(d) => (b, d),
            None => (source, bound),
        };
        let (pi, witnesses) = (0..self.probe_sets.len())
            .find_map(|pi| self.qualify(source, pi, bound - 1).map(|w| (pi, w)))
            .expect("a winning belief has a qualifying probe set");
        let probes = &self.probe_sets[pi];
        let mask = &self.probe_masks[pi];
        let children = self
            .keyed_classes(b, probes)
            .into_iter()
            .map(|(key, c)| {
                let branch = match c.only() {
                    Some(v) => Branch::Win(v),
                    None => {
                        let i = witnesses.binary_search_by(|(k, _)| k.cmp(&key)).expect("class of a subset");
                        let next = expand_set(self.g, &c, self.rules.variant, mask);
                        Branch::Next(Box::new(self.build(&next, &witnesses[i].1, bound - 1)))
                    }
                };
                (key, branch)
            })
            .collect();
        StrategyNode { probes: probes.clone(), children }
    }
}

/// Decides whether the cop locates the robber on `g` under `rules`.
pub fn is_k_locatable(g: &Graph, rules: &GameRules, budget: &Budget) -> Result<SolveResult, SolverError> {
    solve_from(g, rules, &BeliefState::initial(g), budget)
}

/// As [`is_k_locatable`] but starting from an arbitrary belief.
pub fn solve_from(
    g: &Graph,
    rules: &GameRules,
    initial: &BeliefState,
    budget: &Budget,
) -> Result<SolveResult, SolverError> {
    if initial.is_empty() {
        return Err(SolverError::EmptyBelief);
    }
    let mut solver = Solver::new(g, *rules, *budget)?;
    Ok(solver.solve(initial))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rlp {
    Exact(usize),
    /// Not locatable with any `k <= kmax`.
    ExceedsMax(usize),
    /// Some attempt ran out of budget; `at_most` is set when a larger `k`
    /// was proved sufficient.
    Unknown {
        at_least: usize,
        at_most: Option<usize>,
    },
}

impl fmt::Display for Rlp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rlp::Exact(k) => write!(f, "{k}"),
            Rlp::ExceedsMax(k) => write!(f, ">{k}"),
            Rlp::Unknown { at_least, at_most: Some(m) } => write!(f, "UNKNOWN (between {at_least} and {m})"),
            Rlp::Unknown { at_least, at_most: None } => write!(f, "UNKNOWN (at least {at_least})"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RlpResult {
    pub value: Rlp,
    /// One solve per `k` tried, in increasing order.
    pub attempts: Vec<(usize, SolveResult)>,
}

impl RlpResult {
    /// The solve at the least `k` proved sufficient.
    pub fn witness(&self) -> Option<&SolveResult> {
        self.attempts.iter().map(|(_, r)| r).find(|r| r.status == SolveStatus::Locatable)
    }
}

/// Least `k <= k_max` for which `g` is `k`-locatable.
pub fn rlp(g: &Graph, variant: Variant, k_max: usize, budget: &Budget) -> Result<RlpResult, SolverError> {
    let mut attempts = Vec::new();
    let mut at_least = 1;
    let mut unknown = false;
    for k in 1..=k_max {
        let r = is_k_locatable(g, &GameRules::with_variant(k, variant), budget)?;
        let status = r.status;
        attempts.push((k, r));
        match status {
            SolveStatus::NonLocatable => at_least = k + 1,
            SolveStatus::Unknown => unknown = true,
            SolveStatus::Locatable => {
                let value = if at_least == k { Rlp::Exact(k) } else { Rlp::Unknown { at_least, at_most: Some(k) } };
                return Ok(RlpResult { value, attempts });
            }
        }
    }
    let value = if unknown { Rlp::Unknown { at_least, at_most: None } } else { Rlp::ExceedsMax(k_max) };
    Ok(RlpResult { value, attempts })
}

#[derive(Debug, Clone)]
pub struct ScanRow {
    pub m: u32,
    pub status: SolveStatus,
    pub beliefs: usize,
    pub elapsed: Duration,
}

/// Single-probe status of `base^{1/m}` for each `m` in the range. The
/// rows are statuses only; they do not settle a threshold.
pub fn rls_scan(
    base: &Graph,
    variant: Variant,
    m_from: u32,
    m_to: u32,
    budget: &Budget,
) -> Result<Vec<ScanRow>, SolverError> {
    let mut rows = Vec::new();
    for m in m_from.max(1)..=m_to {
        let sg = subdivide(base, m).expect("m >= 1");
        let r = is_k_locatable(sg.graph(), &GameRules::with_variant(1, variant), budget)?;
        rows.push(ScanRow { m, status: r.status, beliefs: r.stats.beliefs, elapsed: r.stats.elapsed });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, cycle, gn, gnk, path};

    fn solve(g: &Graph, k: usize) -> SolveResult {
        is_k_locatable(g, &GameRules::new(k), &Budget::default()).unwrap()
    }

    #[test]
    fn partition_examples() {
        let c3 = cycle(3).unwrap();
        let p = partition_by_probe(&c3, &BeliefState::initial(&c3), &[0]).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!((p[0].0.clone(), p[0].1.candidates().to_vec()), (vec![0], vec![0]));
        assert_eq!((p[1].0.clone(), p[1].1.candidates().to_vec()), (vec![1], vec![1, 2]));
        let k4 = complete(4).unwrap();
        let p = partition_by_probe(&k4, &BeliefState::initial(&k4), &[0, 1]).unwrap();
        let got: Vec<_> = p.iter().map(|(k, b)| (k.clone(), b.candidates().to_vec())).collect();
        assert_eq!(got, vec![(vec![0, 1], vec![0]), (vec![1, 0], vec![1]), (vec![1, 1], vec![2, 3])]);
        let one = BeliefState::new(k4.set_of([2])).unwrap();
        assert_eq!(partition_by_probe(&k4, &one, &[0]).unwrap().len(), 1);
        assert_eq!(partition_by_probe(&k4, &one, &[]), Err(SolverError::EmptyProbeSet));
    }

    #[test]
    fn expand_examples() {
        let c3 = cycle(3).unwrap();
        let a = BeliefState::new(c3.set_of([0])).unwrap();
        assert_eq!(expand(&c3, &a, &GameRules::new(1), &[]).candidates().to_vec(), vec![0, 1, 2]);
        let seager = GameRules::with_variant(1, Variant::NoMoveToLastProbes);
        assert_eq!(expand(&c3, &a, &seager, &[1]).candidates().to_vec(), vec![0, 2]);
        assert_eq!(expand(&c3, &a, &seager, &[0]).candidates().to_vec(), vec![0, 1, 2]);
        let p3 = path(3).unwrap();
        let b = BeliefState::new(p3.set_of([1])).unwrap();
        assert_eq!(expand(&p3, &b, &GameRules::new(1), &[]).candidates().to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn locatability_examples() {
        let c3 = cycle(3).unwrap();
        assert_eq!(solve(&c3, 1).status, SolveStatus::NonLocatable);
        let r = solve(&c3, 2);
        assert_eq!((r.status, r.turn_bound), (SolveStatus::Locatable, Some(1)));
        let k4 = complete(4).unwrap();
        assert_eq!(solve(&k4, 2).status, SolveStatus::NonLocatable);
        assert_eq!(solve(&k4, 3).status, SolveStatus::Locatable);
        let k5_2 = subdivide(&complete(5).unwrap(), 2).unwrap();
        assert_eq!(solve(k5_2.graph(), 1).status, SolveStatus::NonLocatable);
    }

    #[test]
    fn rlp_examples() {
        let b = Budget::default();
        assert_eq!(rlp(&path(5).unwrap(), Variant::FreeMove, 3, &b).unwrap().value, Rlp::Exact(1));
        assert_eq!(rlp(&complete(4).unwrap(), Variant::FreeMove, 4, &b).unwrap().value, Rlp::Exact(3));
        assert_eq!(rlp(&gnk(4, 2).unwrap(), Variant::FreeMove, 4, &b).unwrap().value, Rlp::Exact(3));
        assert_eq!(rlp(&gn(1).unwrap(), Variant::FreeMove, 3, &b).unwrap().value, Rlp::Exact(2));
        assert_eq!(rlp(&complete(4).unwrap(), Variant::FreeMove, 2, &b).unwrap().value, Rlp::ExceedsMax(2));
    }

    #[test]
    fn single_vertex_and_errors() {
        let g = path(1).unwrap();
        let r = solve(&g, 1);
        assert_eq!((r.status, r.turn_bound), (SolveStatus::Locatable, Some(1)));
        assert!(matches!(is_k_locatable(&g, &GameRules::new(0), &Budget::default()), Err(SolverError::ZeroK)));
        let two = Graph::from_labeled_edges(["a", "b"], Vec::<(&str, &str)>::new()).unwrap();
        assert!(matches!(
            is_k_locatable(&two, &GameRules::new(1), &Budget::default()),
            Err(SolverError::Disconnected { components: 2 })
        ));
    }

    #[test]
    fn budget_gives_unknown() {
        let g = subdivide(&complete(5).unwrap(), 2).unwrap();
        let r = is_k_locatable(g.graph(), &GameRules::new(1), &Budget::nodes(3)).unwrap();
        assert_eq!(r.status, SolveStatus::Unknown);
        assert!(r.strategy.is_none());
    }

    #[test]
    fn tree_round_trip_and_validation() {
        for (g, k) in [(cycle(3).unwrap(), 2), (complete(4).unwrap(), 3), (path(6).unwrap(), 1), (gn(1).unwrap(), 2)] {
            let r = solve(&g, k);
            let tree = r.strategy.unwrap();
            assert_eq!(Some(tree.depth()), r.turn_bound);
            tree.validate(&g, &GameRules::new(k)).unwrap();
            let text = tree.to_text(&g);
            let back = StrategyTree::from_text(&g, &text).unwrap();
            assert_eq!(back, tree);
            assert_eq!(back.to_text(&g), text);
        }
    }

    #[test]
    fn tree_text_errors() {
        let g = cycle(3).unwrap();
        let text = solve(&g, 2).strategy.unwrap().to_text(&g);
        assert!(matches!(StrategyTree::from_text(&g, "{"), Err(TreeError::Syntax(_))));
        let bad = text.replace("\"v2\"", "\"zz\"");
        assert!(matches!(StrategyTree::from_text(&g, &bad), Err(TreeError::UnknownLabel(_))));
        let bad = text.replace("\"depth\": 1", "\"depth\": 2");
        assert!(matches!(StrategyTree::from_text(&g, &bad), Err(TreeError::DepthMismatch { .. })));
        let bad = text.replace("\"k\": 2", "\"k\": 1");
        assert!(matches!(StrategyTree::from_text(&g, &bad), Err(TreeError::TooManyProbes { .. })));
    }

    #[test]
    fn extraction_is_lex_least_among_fastest() {
        let c3 = cycle(3).unwrap();
        let tree = solve(&c3, 2).strategy.unwrap();
        assert_eq!(tree.root().probes, vec![0, 1]);
        let p = path(4).unwrap();
        let tree = solve(&p, 1).strategy.unwrap();
        assert_eq!((tree.root().probes.clone(), tree.depth()), (vec![0], 1));
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let g = gnk(4, 2).unwrap();
        let rules = GameRules::new(3);
        let a = is_k_locatable(&g, &rules, &Budget::default()).unwrap();
        let b = is_k_locatable(&g, &rules, &Budget::default().sequential()).unwrap();
        assert_eq!(a.strategy.unwrap().to_text(&g), b.strategy.unwrap().to_text(&g));
    }

    #[test]
    fn scan_rows() {
        let rows = rls_scan(&path(2).unwrap(), Variant::FreeMove, 1, 5, &Budget::default()).unwrap();
        assert!(rows.iter().all(|r| r.status == SolveStatus::Locatable));
        let rows = rls_scan(&cycle(3).unwrap(), Variant::FreeMove, 1, 1, &Budget::default()).unwrap();
        assert_eq!(rows[0].status, SolveStatus::NonLocatable);
        let rows = rls_scan(&complete(4).unwrap(), Variant::FreeMove, 1, 2, &Budget::default()).unwrap();
        assert_eq!(rows[0].status, SolveStatus::NonLocatable);
    }

    #[test]
    fn table_values() {
        let g = cycle(5).unwrap();
        let mut s = Solver::new(&g, GameRules::new(1), Budget::default()).unwrap();
        let r = s.solve(&BeliefState::initial(&g));
        assert_eq!(r.status, SolveStatus::NonLocatable);
        assert_eq!(s.value_of(&g.full_set()), BeliefValue::Losing);
        assert_eq!(s.value_of(&g.set_of([0, 2])), BeliefValue::Unexplored);
    }
}
