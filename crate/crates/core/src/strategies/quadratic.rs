use std::sync::Arc;

use super::{CopStrategy, StrategyError};
use crate::graph::{Graph, Vertex};

/// Anchor `v` at distance `d` from the robber, whose shortest paths from
/// `v` all leave through one of the gateways `w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticState {
    pub v: Vertex,
    pub d: u32,
    pub w: Vec<Vertex>,
}

impl QuadraticState {
    pub fn k(&self) -> usize {
        self.w.len()
    }
}

/// `⌊(Δ+1)²/4⌋ + 1`.
pub fn quadratic_budget(delta: usize) -> usize {
    (delta + 1) * (delta + 1) / 4 + 1
}

#[derive(Debug, Clone)]
pub struct QuadraticCop {
    g: Arc<Graph>,
    delta: usize,
    state: Option<QuadraticState>,
    last: Vec<Vertex>,
    steps: usize,
}

pub fn quadratic_cop(g: &Graph) -> Result<QuadraticCop, StrategyError> {
    let delta = g.max_degree().map_err(|e| StrategyError::Precondition(e.to_string()))?;
    Ok(QuadraticCop { g: Arc::new(g.clone()), delta, state: None, last: Vec::new(), steps: 0 })
}

impl QuadraticCop {
    pub fn state(&self) -> Option<&QuadraticState> {
        self.state.as_ref()
    }

    /// Maintenance steps taken so far, each a strict lexicographic descent.
    pub fn steps(&self) -> usize {
        self.steps
    }
}

impl CopStrategy for QuadraticCop {
    fn name(&self) -> String {
        "quadratic".into()
    }

    fn budget(&self) -> usize {
        quadratic_budget(self.delta)
    }

    fn next_probes(&mut self) -> Result<Vec<Vertex>, StrategyError> {
        let Some(s) = &self.state else {
            self.last = vec![0];
            return Ok(self.last.clone());
        };
        let extra = self.delta - s.k();
        let mut probes = vec![s.v];
        for &wi in &s.w {
            probes.push(wi);
            probes.extend(self.g.neighbors(wi).iter().copied().filter(|&x| x != s.v).take(extra));
        }
        probes.sort_unstable();
        probes.dedup();
        if probes.len() > self.budget() {
            return Err(StrategyError::Invariant(format!(
                "{} probes exceed the budget {}",
                probes.len(),
                self.budget()
            )));
        }
        self.last = probes.clone();
        Ok(probes)
    }

    fn observe(&mut self, distances: &[u32]) -> Result<(), StrategyError> {
        let g = &self.g;
        let Some(old) = self.state.take() else {
            let v = self.last[0];
            self.state = Some(QuadraticState { v, d: distances[0], w: g.neighbors(v).to_vec() });
            return Ok(());
        };
        let (min_i, &min_d) = distances.iter().enumerate().min_by_key(|&(_, d)| *d).expect("nonempty probe set");
        let new = if min_d < old.d {
            let v = self.last[min_i];
            QuadraticState { v, d: min_d, w: g.neighbors(v).to_vec() }
        } else {
            let result = |x: Vertex| self.last.iter().position(|&p| p == x).map(|i| distances[i]);
            let w1 = *old.w.iter().find(|&&wi| result(wi) == Some(old.d)).ok_or_else(|| {
                StrategyError::Invariant(format!("no gateway of {} returned {}", g.label(old.v), old.d))
            })?;
            let w = g.neighbors(w1).iter().copied().filter(|&x| x != old.v && result(x).is_none()).collect();
            QuadraticState { v: w1, d: old.d, w }
        };
        if (new.d, new.k()) >= (old.d, old.k()) {
            return Err(StrategyError::Invariant(format!(
                "(d, k) went from ({}, {}) to ({}, {})",
                old.d,
                old.k(),
                new.d,
                new.k()
            )));
        }
        self.steps += 1;
        self.state = Some(new);
        Ok(())
    }

    fn clone_box(&self) -> Box<dyn CopStrategy> {
        Box::new(self.clone())
    }

    fn fingerprint(&self) -> String {
        format!("{:?}", self.state)
    }
}
