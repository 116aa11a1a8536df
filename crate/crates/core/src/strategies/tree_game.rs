//! The probing game on the infinite `Δ`-regular tree, with vertices
//! materialized lazily as root-to-vertex child-index paths.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Outcome, StrategyError, Transcript, TurnRecord};
use crate::families::tree_label;

/// A vertex of `T_Δ`: the root has children `0..Δ`, every other vertex
/// `0..Δ-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TreeAddr(pub Vec<usize>);

impl TreeAddr {
    pub fn root() -> Self {
        TreeAddr(Vec::new())
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn parent(&self) -> Option<TreeAddr> {
        let mut p = self.0.clone();
        p.pop().map(|_| TreeAddr(p))
    }

    pub fn child(&self, i: usize) -> TreeAddr {
        let mut p = self.0.clone();
        p.push(i);
        TreeAddr(p)
    }

    pub fn child_count(&self, delta: usize) -> usize {
        if self.0.is_empty() {
            delta
        } else {
            delta - 1
        }
    }

    /// Parent first, then children in index order.
    pub fn neighbours(&self, delta: usize) -> Vec<TreeAddr> {
        self.parent().into_iter().chain((0..self.child_count(delta)).map(|i| self.child(i))).collect()
    }

    pub fn dist(&self, other: &TreeAddr) -> u32 {
        let common = self.0.iter().zip(&other.0).take_while(|(a, b)| a == b).count();
        (self.0.len() + other.0.len() - 2 * common) as u32
    }

    /// The neighbour of `self` on the path to `p`, or `None` if `p == self`.
    pub fn toward(&self, p: &TreeAddr) -> Option<TreeAddr> {
        if p == self {
            None
        } else if p.0.starts_with(&self.0) {
            Some(self.child(p.0[self.0.len()]))
        } else {
            self.parent()
        }
    }

    pub fn parse(label: &str) -> Option<TreeAddr> {
        let mut parts = label.split('.');
        if parts.next()? != "r" {
            return None;
        }
        parts.map(|s| s.parse().ok()).collect::<Option<_>>().map(TreeAddr)
    }
}

impl fmt::Display for TreeAddr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&tree_label(&self.0))
    }
}

/// `⌈(Δ-1)/2⌉`, the number of probe-free components the evader keeps.
pub fn free_components_needed(delta: usize) -> usize {
    delta / 2
}

/// Keeps the robber at distance `r` from an anchor `v_t`, somewhere in the
/// probe-free components of `T_Δ - v_t`.
#[derive(Debug, Clone)]
pub struct TreeEvader {
    delta: usize,
    budget: usize,
    r: u32,
    anchor: Option<TreeAddr>,
    free: Vec<TreeAddr>,
}

pub fn tree_evader(delta: usize, cop_budget: usize, r: u32) -> Result<TreeEvader, StrategyError> {
    if delta < 3 {
        return Err(StrategyError::Precondition("the tree evader needs delta >= 3".into()));
    }
    let cap = delta * delta / 4 - 1;
    if cop_budget > cap {
        return Err(StrategyError::Precondition(format!("cop budget {cop_budget} exceeds {cap} for delta = {delta}")));
    }
    Ok(TreeEvader { delta, budget: cop_budget, r, anchor: None, free: Vec::new() })
}

impl TreeEvader {
    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn anchor(&self) -> Option<&TreeAddr> {
        self.anchor.as_ref()
    }

    /// Neighbours of the anchor whose components have never been probed.
    pub fn free_components(&self) -> &[TreeAddr] {
        &self.free
    }

    pub fn react(&mut self, probes: &[TreeAddr]) -> Result<Vec<u32>, StrategyError> {
        if probes.len() > self.budget {
            return Err(StrategyError::TooManyProbes { got: probes.len(), k: self.budget });
        }
        let (v, free) = match &self.anchor {
            None => {
                let v = probes.iter().max_by_key(|p| p.depth()).cloned().unwrap_or_default();
                let free = (0..v.child_count(self.delta)).map(|i| v.child(i)).collect();
                (v, free)
            }
            Some(v) => self.step(v, probes)?,
        };
        if free.len() < free_components_needed(self.delta) {
            return Err(StrategyError::Invariant(format!(
                "only {} probe-free components around {v}, need {}",
                free.len(),
                free_components_needed(self.delta)
            )));
        }
        let report = probes.iter().map(|p| p.dist(&v) + self.r).collect();
        self.anchor = Some(v);
        self.free = free;
        Ok(report)
    }

    fn step(&self, v: &TreeAddr, probes: &[TreeAddr]) -> Result<(TreeAddr, Vec<TreeAddr>), StrategyError> {
        for w in &self.free {
            let free: Vec<TreeAddr> = w
                .neighbours(self.delta)
                .into_iter()
                .filter(|y| y != v && probes.iter().all(|p| w.toward(p).as_ref() != Some(y)))
                .collect();
            if free.len() >= free_components_needed(self.delta) {
                return Ok((w.clone(), free));
            }
        }
        Err(StrategyError::Invariant(format!("every gateway out of {v} lost its probe-free components")))
    }
}

/// A cop on the infinite tree.
pub trait TreeCop {
    fn name(&self) -> String;
    fn budget(&self) -> usize;
    fn next_probes(&mut self) -> Vec<TreeAddr>;
    fn observe(&mut self, distances: &[u32]);
}

/// Probes random vertices, half of them within a few steps of the probe
/// that last returned the smallest distance.
#[derive(Debug, Clone)]
pub struct RandomTreeCop {
    delta: usize,
    budget: usize,
    rng: ChaCha8Rng,
    focus: TreeAddr,
    turn: usize,
    last: Vec<TreeAddr>,
}

pub fn random_tree_cop(delta: usize, budget: usize, seed: u64) -> RandomTreeCop {
    RandomTreeCop {
        delta,
        budget,
        rng: ChaCha8Rng::seed_from_u64(seed),
        focus: TreeAddr::root(),
        turn: 0,
        last: Vec::new(),
    }
}

impl RandomTreeCop {
    fn walk(&mut self, from: TreeAddr, steps: usize) -> TreeAddr {
        let mut at = from;
        for _ in 0..steps {
            let nb = at.neighbours(self.delta);
            at = nb[self.rng.gen_range(0..nb.len())].clone();
        }
        at
    }
}

impl TreeCop for RandomTreeCop {
    fn name(&self) -> String {
        "random".into()
    }

    fn budget(&self) -> usize {
        self.budget
    }

    fn next_probes(&mut self) -> Vec<TreeAddr> {
        self.turn += 1;
        let mut probes = Vec::new();
        for i in 0..self.budget {
            let p = if i % 2 == 0 {
                let steps = self.rng.gen_range(1..=4);
                self.walk(self.focus.clone(), steps)
            } else {
                let steps = self.rng.gen_range(0..=self.turn + 6);
                self.walk(TreeAddr::root(), steps)
            };
            probes.push(p);
        }
        self.last = probes.clone();
        probes
    }

    fn observe(&mut self, distances: &[u32]) {
        if let Some(i) = (0..distances.len()).min_by_key(|&i| distances[i]) {
            self.focus = self.last[i].clone();
        }
    }
}

/// Probes vertices in breadth-first order from the root, `budget` per turn.
#[derive(Debug, Clone)]
pub struct BfsTreeCop {
    delta: usize,
    budget: usize,
    queue: std::collections::VecDeque<TreeAddr>,
}

pub fn bfs_tree_cop(delta: usize, budget: usize) -> BfsTreeCop {
    BfsTreeCop { delta, budget, queue: [TreeAddr::root()].into() }
}

impl TreeCop for BfsTreeCop {
    fn name(&self) -> String {
        "bfs".into()
    }

    fn budget(&self) -> usize {
        self.budget
    }

    fn next_probes(&mut self) -> Vec<TreeAddr> {
        let mut probes = Vec::new();
        while probes.len() < self.budget {
            let p = self.queue.pop_front().expect("the tree is infinite");
            self.queue.extend((0..p.child_count(self.delta)).map(|i| p.child(i)));
            probes.push(p);
        }
        probes
    }

    fn observe(&mut self, _: &[u32]) {}
}

/// Plays `max_turns` turns; the belief size is unbounded and left out.
pub fn simulate_tree(
    evader: &mut TreeEvader,
    cop: &mut dyn TreeCop,
    max_turns: u32,
) -> Result<Transcript, StrategyError> {
    if cop.budget() > evader.budget {
        return Err(StrategyError::TooManyProbes { got: cop.budget(), k: evader.budget });
    }
    let mut turns = Vec::new();
    for turn in 1..=max_turns {
        let probes = cop.next_probes();
        let distances = evader.react(&probes)?;
        turns.push(TurnRecord {
            turn,
            probes: probes.iter().map(ToString::to_string).collect(),
            distances: distances.clone(),
            belief: None,
        });
        cop.observe(&distances);
    }
    Ok(Transcript { turns, outcome: Outcome::Escape { turns: max_turns } })
}
