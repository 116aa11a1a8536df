use super::{classes, RobberAdversary, StrategyError};
use crate::graph::{Graph, Vertex};
use crate::solver::{expand_set, GameRules};
use crate::vertex_set::VertexSet;

/// Answers with the largest response class; ties go to the
/// lexicographically least distance vector.
pub struct GreedyAdversary<'g> {
    g: &'g Graph,
    rules: GameRules,
    belief: VertexSet,
}

pub fn greedy_adversary<'g>(g: &'g Graph, rules: &GameRules) -> GreedyAdversary<'g> {
    GreedyAdversary { g, rules: *rules, belief: g.full_set() }
}

impl GreedyAdversary<'_> {
    pub fn belief(&self) -> &VertexSet {
        &self.belief
    }
}

impl RobberAdversary for GreedyAdversary<'_> {
    fn react(&mut self, probes: &[Vertex]) -> Result<Vec<u32>, StrategyError> {
        let mut best: Option<(Vec<u32>, VertexSet)> = None;
        for (key, class) in classes(self.g, &self.belief, probes)? {
            if best.as_ref().is_none_or(|(_, b)| class.len() > b.len()) {
                best = Some((key, class));
            }
        }
        let (key, class) = best.expect("belief is never empty");
        self.belief = expand_set(self.g, &class, self.rules.variant, &self.g.set_of(probes.iter().copied()));
        Ok(key)
    }
}
