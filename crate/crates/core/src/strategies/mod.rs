//! Cop strategies, robber adversaries, and the engine that plays them
//! against each other.
//!
//! The referee in [`simulate`] and [`verify_strategy`] keeps its own exact
//! belief; a cop never declares victory, the game ends when the belief
//! after a probe is a singleton.

mod cops;
mod lifted;
mod maxdeg3;
mod quadratic;
mod robbers;
mod transcript;
pub mod tree_game;
mod verify;

use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::solver::{expand_set, partition_keyed, GameRules, SolverError};
use crate::vertex_set::VertexSet;

pub use cops::{
    cycling_cop, extracted_cop, fixed_probe_cop, resolving_set_cop, split_greedy_cop, CyclingCop, ExtractedCop,
    FixedProbeCop, ResolvingSetCop, SplitGreedyCop,
};
pub use lifted::{lifted_subdivision_cop, LiftedCop, PhaseRecord};
pub use maxdeg3::{maxdeg3_cop, MaxDeg3Cop};
pub use quadratic::{quadratic_budget, quadratic_cop, QuadraticCop, QuadraticState};
pub use robbers::{greedy_adversary, GreedyAdversary};
pub use transcript::{Outcome, Transcript, TranscriptError, TurnRecord};
pub use verify::{exhaustive_adversary, verify_strategy, ExhaustiveAdversary, Verification};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrategyError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("cop probed {got} vertices with a budget of {k}")]
    TooManyProbes { got: usize, k: usize },
    #[error("cop probed no vertices")]
    NoProbes,
    #[error("vertex {0} is not in the graph")]
    InvalidVertex(Vertex),
    #[error("response {key:?} has no matching branch in the strategy")]
    UnknownResponse { key: Vec<u32> },
    #[error("strategy has no move left; it expected to have won already")]
    Exhausted,
    #[error("strategy invariant violated: {0}")]
    Invariant(String),
    #[error("robber report {key:?} at turn {turn} is inconsistent with every candidate")]
    InconsistentReport { turn: u32, key: Vec<u32> },
    #[error("shadow copy of the cop diverged from the real cop")]
    ShadowMismatch,
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// A deterministic cop. Clones are independent snapshots of the current
/// state, which lets the verifier branch without replaying histories.
pub trait CopStrategy {
    fn name(&self) -> String;

    /// Largest number of probes per turn.
    fn budget(&self) -> usize;

    fn next_probes(&mut self) -> Result<Vec<Vertex>, StrategyError>;

    /// Distances for the probes just returned by `next_probes`, in order.
    fn observe(&mut self, distances: &[u32]) -> Result<(), StrategyError>;

    fn clone_box(&self) -> Box<dyn CopStrategy>;

    /// A key that determines all future play; equal keys at equal beliefs
    /// mean the game position repeats.
    fn fingerprint(&self) -> String;
}

impl Clone for Box<dyn CopStrategy> {
    fn clone(&self) -> Self {
        self.clone_box()
    }
}

/// A robber that answers probes with distance vectors.
pub trait RobberAdversary {
    /// Called once before the first turn with the cop about to play.
    fn attach(&mut self, _cop: &dyn CopStrategy) -> Result<(), StrategyError> {
        Ok(())
    }

    fn react(&mut self, probes: &[Vertex]) -> Result<Vec<u32>, StrategyError>;

    /// True when the robber has proved it survives the configured horizon.
    fn escape_certified(&self) -> bool {
        false
    }
}

pub(crate) fn check_probes(g: &Graph, probes: &[Vertex], k: usize) -> Result<(), StrategyError> {
    if probes.is_empty() {
        return Err(StrategyError::NoProbes);
    }
    if probes.len() > k {
        return Err(StrategyError::TooManyProbes { got: probes.len(), k });
    }
    match probes.iter().find(|&&p| p >= g.vertex_count()) {
        Some(&p) => Err(StrategyError::InvalidVertex(p)),
        None => Ok(()),
    }
}

pub(crate) fn check_arena(g: &Graph, cop: &dyn CopStrategy, rules: &GameRules) -> Result<(), StrategyError> {
    if !g.is_connected() {
        return Err(SolverError::Disconnected { components: g.components().len() }.into());
    }
    if cop.budget() > rules.k {
        return Err(StrategyError::Precondition(format!(
            "{} needs {} probes per turn, rules allow {}",
            cop.name(),
            cop.budget(),
            rules.k
        )));
    }
    Ok(())
}

pub(crate) fn labels(g: &Graph, vs: &[Vertex]) -> Vec<String> {
    vs.iter().map(|&v| g.label(v).to_string()).collect()
}

/// The members of `belief` whose distances to `probes` equal `key`.
pub(crate) fn consistent(g: &Graph, belief: &VertexSet, probes: &[Vertex], key: &[u32]) -> VertexSet {
    let mut out = g.empty_set();
    for x in belief {
        if probes.iter().zip(key).all(|(&p, &d)| g.dist(p, x) == d) {
            out.insert(x);
        }
    }
    out
}

/// Plays `cop` against `robber` for at most `max_turns` turns.
pub fn simulate(
    g: &Graph,
    cop: &mut dyn CopStrategy,
    robber: &mut dyn RobberAdversary,
    rules: &GameRules,
    max_turns: u32,
) -> Result<Transcript, StrategyError> {
    check_arena(g, cop, rules)?;
    robber.attach(cop)?;
    let mut belief = g.full_set();
    let mut turns = Vec::new();
    for turn in 1..=max_turns {
        let probes = cop.next_probes()?;
        check_probes(g, &probes, rules.k)?;
        let key = robber.react(&probes)?;
        if key.len() != probes.len() {
            return Err(StrategyError::InconsistentReport { turn, key });
        }
        let class = consistent(g, &belief, &probes, &key);
        if class.is_empty() {
            return Err(StrategyError::InconsistentReport { turn, key });
        }
        turns.push(TurnRecord { turn, probes: labels(g, &probes), distances: key.clone(), belief: Some(class.len()) });
        if let Some(v) = class.only() {
            return Ok(Transcript { turns, outcome: Outcome::Win { vertex: g.label(v).to_string(), turn } });
        }
        cop.observe(&key)?;
        belief = expand_set(g, &class, rules.variant, &g.set_of(probes.iter().copied()));
    }
    let outcome = if robber.escape_certified() {
        Outcome::Escape { turns: max_turns }
    } else {
        Outcome::Timeout { turns: max_turns }
    };
    Ok(Transcript { turns, outcome })
}

/// Classes of `belief` under `probes`, keyed by distance vector.
pub(crate) fn classes(
    g: &Graph,
    belief: &VertexSet,
    probes: &[Vertex],
) -> Result<Vec<(Vec<u32>, VertexSet)>, StrategyError> {
    Ok(partition_keyed(g, belief, probes)?)
}
