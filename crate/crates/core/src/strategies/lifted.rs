use std::sync::Arc;

use super::{CopStrategy, StrategyError};
use crate::graph::Vertex;
use crate::solver::{Branch, GameRules, StrategyNode, StrategyTree};
use crate::subdivision::{classify_probe_residue, nearest_branch_base_distance, ProbeResidue, SubdividedGraph};
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Mode {
    /// The last reading put the robber at a (near-)midpoint.
    AfterMid,
    /// Probing the `j`th vertex of the current base probe set.
    ProbingA(usize),
    /// All of the base probe set has been read since the last midpoint.
    AfterA,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Phase {
    /// Narrowing down the robber's nearest branch vertex until he reaches
    /// a midpoint.
    Locate {
        candidates: VertexSet,
        next: usize,
    },
    /// Walking him from a midpoint to the next branch vertex while reading
    /// the base probe set.
    Return {
        mode: Mode,
        next_new: usize,
        probed: VertexSet,
        results: Vec<Option<u32>>,
        last_mid_turn: u32,
        a_turns: Vec<u32>,
    },
    Finished,
}

/// One completed walk from a midpoint to a branch vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseRecord {
    /// Base probe set read during the walk.
    pub a: Vec<Vertex>,
    /// Base distances from each member of `a` to the branch vertex reached.
    pub responses: Vec<u32>,
    /// Turn at which each member of `a` was probed.
    pub a_turns: Vec<u32>,
    /// Last turn whose reading showed a (near-)midpoint.
    pub last_mid_turn: u32,
    pub end_turn: u32,
}

/// One probe per turn on `G^{1/m}`, at branch vertices only, driven by a
/// `k`-probe strategy tree for `G`.
#[derive(Debug, Clone)]
pub struct LiftedCop {
    sg: Arc<SubdividedGraph>,
    tree: Arc<StrategyTree>,
    cursor: Vec<usize>,
    phase: Phase,
    last: Vertex,
    turn: u32,
    log: Vec<PhaseRecord>,
    located: Option<Vertex>,
}

pub fn lifted_subdivision_cop(sg: &SubdividedGraph, base_strategy: StrategyTree) -> Result<LiftedCop, StrategyError> {
    let k = base_strategy.k();
    if (sg.m() as usize) < 2 * k + 2 {
        return Err(StrategyError::Precondition(format!("m = {} is below 2k + 2 = {}", sg.m(), 2 * k + 2)));
    }
    base_strategy
        .validate(sg.base(), &GameRules::new(k))
        .map_err(|e| StrategyError::Precondition(format!("base strategy: {e}")))?;
    let n = sg.base().vertex_count();
    Ok(LiftedCop {
        sg: Arc::new(sg.clone()),
        tree: Arc::new(base_strategy),
        cursor: Vec::new(),
        phase: Phase::Locate { candidates: VertexSet::full(n), next: 0 },
        last: 0,
        turn: 0,
        log: Vec::new(),
        located: None,
    })
}

impl LiftedCop {
    /// Completed midpoint-to-branch walks so far.
    pub fn phases(&self) -> &[PhaseRecord] {
        &self.log
    }

    /// The branch vertex named by the strategy tree once a walk ends at a
    /// winning leaf.
    pub fn located(&self) -> Option<Vertex> {
        self.located
    }

    /// Turns within which the construction locates any robber.
    pub fn turn_bound(&self) -> u32 {
        let n = self.sg.base().vertex_count() as u32;
        let k = self.tree.k() as u32;
        self.tree.depth() * (2 * n + (n + 1) * (k + 1) + 2) + 2 * n
    }

    fn node(&self) -> &StrategyNode {
        let mut node = self.tree.root();
        for &i in &self.cursor {
            match &node.children[i].1 {
                Branch::Next(c) => node = c,
                Branch::Win(_) => unreachable!("cursor only descends through inner nodes"),
            }
        }
        node
    }

    fn base_n(&self) -> usize {
        self.sg.base().vertex_count()
    }

    fn start_return(&self, b: Vertex) -> Phase {
        let n = self.base_n();
        Phase::Return {
            mode: Mode::AfterMid,
            next_new: (b + 1) % n,
            probed: VertexSet::singleton(n, b),
            results: vec![None; self.node().probes.len()],
            last_mid_turn: self.turn,
            a_turns: Vec::new(),
        }
    }

    fn residue(&self, d: u32) -> Result<ProbeResidue, StrategyError> {
        classify_probe_residue(d, self.sg.m()).map_err(|e| StrategyError::Invariant(e.to_string()))
    }

    fn base_distance(&self, d: u32) -> Result<u32, StrategyError> {
        nearest_branch_base_distance(d, self.sg.m()).map_err(|e| StrategyError::Invariant(e.to_string()))
    }

    fn observe_locate(&mut self, candidates: VertexSet, next: usize, d: u32) -> Result<Phase, StrategyError> {
        let b = self.last;
        if self.residue(d)?.is_middle() {
            return Ok(self.start_return(b));
        }
        let nearest = self.base_distance(d)?;
        let base = self.sg.base();
        let narrowed =
            VertexSet::from_vertices(self.base_n(), candidates.iter().filter(|&c| base.dist(b, c) == nearest));
        if narrowed.is_empty() {
            return Err(StrategyError::Invariant("no branch vertex is consistent with the readings".into()));
        }
        let next = if narrowed.len() == 1 && candidates.len() > 1 { 0 } else { (next + 1) % self.base_n() };
        Ok(Phase::Locate { candidates: narrowed, next })
    }

    fn finish_walk(
        &mut self,
        results: Vec<Option<u32>>,
        last_mid_turn: u32,
        a_turns: Vec<u32>,
        d: u32,
    ) -> Result<Phase, StrategyError> {
        let a = self.node().probes.clone();
        let responses: Vec<u32> = results.iter().copied().collect::<Option<_>>().ok_or_else(|| {
            StrategyError::Invariant(format!(
                "robber reached a branch vertex at turn {} before every base probe was read",
                self.turn
            ))
        })?;
        if a_turns.len() != a.len() || a_turns.iter().any(|&t| t <= last_mid_turn) {
            return Err(StrategyError::Invariant("base probes were not all read after the last midpoint".into()));
        }
        let node = self.node();
        let i = node
            .children
            .binary_search_by(|(k, _)| k.as_slice().cmp(&responses))
            .map_err(|_| StrategyError::UnknownResponse { key: responses.clone() })?;
        let won = match node.children[i].1 {
            Branch::Win(v) => Some(v),
            Branch::Next(_) => None,
        };
        self.log.push(PhaseRecord { a, responses, a_turns, last_mid_turn, end_turn: self.turn });
        if won.is_some() {
            self.located = won;
            return Ok(Phase::Finished);
        }
        self.cursor.push(i);
        let b = self.last;
        let hops = d / self.sg.m();
        let base = self.sg.base();
        let candidates = VertexSet::from_vertices(self.base_n(), base.vertices().filter(|&c| base.dist(b, c) == hops));
        Ok(Phase::Locate { candidates, next: 0 })
    }
}

impl CopStrategy for LiftedCop {
    fn name(&self) -> String {
        "lifted".into()
    }

    fn budget(&self) -> usize {
        1
    }

    fn next_probes(&mut self) -> Result<Vec<Vertex>, StrategyError> {
        let n = self.base_n();
        let a = match &self.phase {
            Phase::Return { mode: Mode::ProbingA(j), .. } => Some(self.node().probes[*j]),
            _ => None,
        };
        let b = match &mut self.phase {
            Phase::Finished => return Err(StrategyError::Exhausted),
            Phase::Locate { next, .. } => *next,
            Phase::Return { mode: Mode::ProbingA(_), probed, .. } => {
                let a = a.expect("probing the base set");
                probed.insert(a);
                a
            }
            Phase::Return { next_new, probed, .. } => {
                let start = *next_new;
                let pick = (0..n).map(|i| (start + i) % n).find(|&c| !probed.contains(c)).unwrap_or(start);
                probed.insert(pick);
                *next_new = (pick + 1) % n;
                pick
            }
        };
        if !self.sg.is_branch(b) {
            return Err(StrategyError::Invariant(format!("probe {b} is not a branch vertex")));
        }
        self.turn += 1;
        self.last = b;
        Ok(vec![b])
    }

    fn observe(&mut self, distances: &[u32]) -> Result<(), StrategyError> {
        let d = distances[0];
        let phase = std::mem::replace(&mut self.phase, Phase::Finished);
        self.phase = match phase {
            Phase::Finished => return Err(StrategyError::Exhausted),
            Phase::Locate { candidates, next } => self.observe_locate(candidates, next, d)?,
            Phase::Return { mode, next_new, probed, mut results, mut last_mid_turn, mut a_turns } => {
                let residue = self.residue(d)?;
                if let Mode::ProbingA(j) = mode {
                    if !residue.is_middle() {
                        results[j] = Some(self.base_distance(d)?);
                        a_turns.push(self.turn);
                    }
                }
                let mode = match (residue, mode) {
                    (r, _) if r.is_middle() => {
                        results.iter_mut().for_each(|x| *x = None);
                        a_turns.clear();
                        last_mid_turn = self.turn;
                        Mode::AfterMid
                    }
                    (ProbeResidue::AtBranch, _) => {
                        self.phase = self.finish_walk(results, last_mid_turn, a_turns, d)?;
                        return Ok(());
                    }
                    (_, Mode::AfterMid) => Mode::ProbingA(0),
                    (_, Mode::ProbingA(j)) if j + 1 < results.len() => Mode::ProbingA(j + 1),
                    (_, Mode::ProbingA(_)) | (_, Mode::AfterA) => Mode::AfterA,
                };
                Phase::Return { mode, next_new, probed, results, last_mid_turn, a_turns }
            }
        };
        Ok(())
    }

    fn clone_box(&self) -> Box<dyn CopStrategy> {
        Box::new(self.clone())
    }

    fn fingerprint(&self) -> String {
        let phase = match &self.phase {
            Phase::Return { mode, next_new, probed, results, a_turns, last_mid_turn } => {
                let since_mid: Vec<u32> = a_turns.iter().map(|t| t - last_mid_turn).collect();
                format!("R{mode:?}{next_new}{probed:?}{results:?}{}", since_mid.is_empty())
            }
            other => format!("{other:?}"),
        };
        format!("{:?}{phase}{}", self.cursor, self.last)
    }
}
