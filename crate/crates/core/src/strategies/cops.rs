use std::sync::Arc;

use super::{consistent, CopStrategy, StrategyError};
use crate::families::combinations;
use crate::graph::{Graph, Vertex};
use crate::solver::{expand_set, metric_dimension, Branch, StrategyNode, StrategyTree, Variant};
use crate::vertex_set::VertexSet;

/// Probes a minimum resolving set every turn; wins on the first.
#[derive(Debug, Clone)]
pub struct ResolvingSetCop {
    probes: Vec<Vertex>,
}

pub fn resolving_set_cop(g: &Graph) -> ResolvingSetCop {
    let (_, mut probes) = metric_dimension(g);
    if probes.is_empty() {
        probes.push(0);
    }
    ResolvingSetCop { probes }
}

impl CopStrategy for ResolvingSetCop {
    fn name(&self) -> String {
        "resolving".into()
    }

    fn budget(&self) -> usize {
        self.probes.len()
    }

    fn next_probes(&mut self) -> Result<Vec<Vertex>, StrategyError> {
        Ok(self.probes.clone())
    }

    fn observe(&mut self, _: &[u32]) -> Result<(), StrategyError> {
        Ok(())
    }

    fn clone_box(&self) -> Box<dyn CopStrategy> {
        Box::new(self.clone())
    }

    fn fingerprint(&self) -> String {
        String::new()
    }
}

/// Replays a solver-extracted strategy tree.
#[derive(Debug, Clone)]
pub struct ExtractedCop {
    tree: Arc<StrategyTree>,
    /// Child indices from the root to the current node.
    cursor: Vec<usize>,
    finished: bool,
}

pub fn extracted_cop(tree: StrategyTree) -> ExtractedCop {
    ExtractedCop { tree: Arc::new(tree), cursor: Vec::new(), finished: false }
}

impl ExtractedCop {
    fn node(&self) -> &StrategyNode {
        let mut node = self.tree.root();
        for &i in &self.cursor {
            match &node.children[i].1 {
                Branch::Next(n) => node = n,
                Branch::Win(_) => unreachable!("cursor only descends through inner nodes"),
            }
        }
        node
    }
}

impl CopStrategy for ExtractedCop {
    fn name(&self) -> String {
        "extracted".into()
    }

    fn budget(&self) -> usize {
        self.tree.k()
    }

    fn next_probes(&mut self) -> Result<Vec<Vertex>, StrategyError> {
        if self.finished {
            return Err(StrategyError::Exhausted);
        }
        Ok(self.node().probes.clone())
    }

    fn observe(&mut self, distances: &[u32]) -> Result<(), StrategyError> {
        let node = self.node();
        let i = node
            .children
            .binary_search_by(|(k, _)| k.as_slice().cmp(distances))
            .map_err(|_| StrategyError::UnknownResponse { key: distances.to_vec() })?;
        match node.children[i].1 {
            Branch::Win(_) => self.finished = true,
            Branch::Next(_) => self.cursor.push(i),
        }
        Ok(())
    }

    fn clone_box(&self) -> Box<dyn CopStrategy> {
        Box::new(self.clone())
    }

    fn fingerprint(&self) -> String {
        format!("{:?}{}", self.cursor, self.finished)
    }
}

/// Probes the same vertices every turn.
#[derive(Debug, Clone)]
pub struct FixedProbeCop {
    probes: Vec<Vertex>,
}

pub fn fixed_probe_cop(probes: Vec<Vertex>) -> FixedProbeCop {
    FixedProbeCop { probes }
}

impl CopStrategy for FixedProbeCop {
    fn name(&self) -> String {
        "fixed".into()
    }

    fn budget(&self) -> usize {
        self.probes.len()
    }

    fn next_probes(&mut self) -> Result<Vec<Vertex>, StrategyError> {
        Ok(self.probes.clone())
    }

    fn observe(&mut self, _: &[u32]) -> Result<(), StrategyError> {
        Ok(())
    }

    fn clone_box(&self) -> Box<dyn CopStrategy> {
        Box::new(self.clone())
    }

    fn fingerprint(&self) -> String {
        String::new()
    }
}

/// Walks through all `k`-subsets in lexicographic order, wrapping around.
#[derive(Debug, Clone)]
pub struct CyclingCop {
    sets: Arc<Vec<Vec<Vertex>>>,
    k: usize,
    next: usize,
}

pub fn cycling_cop(g: &Graph, k: usize) -> CyclingCop {
    let n = g.vertex_count();
    CyclingCop { sets: Arc::new(combinations(n, k.min(n).max(1))), k, next: 0 }
}

impl CopStrategy for CyclingCop {
    fn name(&self) -> String {
        "cycling".into()
    }

    fn budget(&self) -> usize {
        self.k
    }

    fn next_probes(&mut self) -> Result<Vec<Vertex>, StrategyError> {
        let p = self.sets[self.next].clone();
        self.next = (self.next + 1) % self.sets.len();
        Ok(p)
    }

    fn observe(&mut self, _: &[u32]) -> Result<(), StrategyError> {
        Ok(())
    }

    fn clone_box(&self) -> Box<dyn CopStrategy> {
        Box::new(self.clone())
    }

    fn fingerprint(&self) -> String {
        self.next.to_string()
    }
}

/// Tracks the exact belief and probes the `k`-subset whose largest
/// response class is smallest (lexicographically least on ties).
#[derive(Debug, Clone)]
pub struct SplitGreedyCop {
    g: Arc<Graph>,
    sets: Arc<Vec<Vec<Vertex>>>,
    k: usize,
    variant: Variant,
    belief: VertexSet,
    last: Vec<Vertex>,
}

pub fn split_greedy_cop(g: &Graph, k: usize, variant: Variant) -> SplitGreedyCop {
    let n = g.vertex_count();
    SplitGreedyCop {
        g: Arc::new(g.clone()),
        sets: Arc::new(combinations(n, k.min(n).max(1))),
        k,
        variant,
        belief: g.full_set(),
        last: Vec::new(),
    }
}

impl CopStrategy for SplitGreedyCop {
    fn name(&self) -> String {
        "split-greedy".into()
    }

    fn budget(&self) -> usize {
        self.k
    }

    fn next_probes(&mut self) -> Result<Vec<Vertex>, StrategyError> {
        let g = &self.g;
        let worst = |p: &Vec<Vertex>| {
            let mut sizes: std::collections::HashMap<Vec<u32>, usize> = Default::default();
            for x in &self.belief {
                *sizes.entry(p.iter().map(|&q| g.dist(q, x)).collect()).or_default() += 1;
            }
            sizes.into_values().max().unwrap_or(0)
        };
        let best = self.sets.iter().min_by_key(|p| worst(p)).expect("at least one probe set").clone();
        self.last = best.clone();
        Ok(best)
    }

    fn observe(&mut self, distances: &[u32]) -> Result<(), StrategyError> {
        let class = consistent(&self.g, &self.belief, &self.last, distances);
        let mask = self.g.set_of(self.last.iter().copied());
        self.belief = expand_set(&self.g, &class, self.variant, &mask);
        Ok(())
    }

    fn clone_box(&self) -> Box<dyn CopStrategy> {
        Box::new(self.clone())
    }

    fn fingerprint(&self) -> String {
        format!("{:?}", self.belief)
    }
}
