use rustc_hash::{FxHashMap, FxHashSet};

use super::{
    check_arena, check_probes, classes, labels, CopStrategy, Outcome, RobberAdversary, StrategyError, Transcript,
    TurnRecord,
};
use crate::graph::{Graph, Vertex};
use crate::solver::{expand_set, GameRules};
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verification {
    /// Every robber is located within `depth` turns.
    VerifiedWin { depth: u32 },
    /// A robber line that returns to an earlier position forever.
    Counterexample(Transcript),
    /// Some robber line survives the horizon without a proven cycle.
    HorizonExceeded,
}

#[derive(Debug, Clone)]
struct Step {
    probes: Vec<Vertex>,
    key: Vec<u32>,
    remaining: usize,
}

/// Worst case for the cop from a position, as the robber ranks it.
#[derive(Debug, Clone)]
enum Value {
    Win(u32),
    /// No win within the turns left.
    Survive,
    /// The robber can force a repeated position; the steps lead there.
    Cycle(Vec<Step>),
}

impl Value {
    fn rank(&self) -> (u8, u32) {
        match self {
            Value::Win(d) => (0, *d),
            Value::Survive => (1, 0),
            Value::Cycle(_) => (2, 0),
        }
    }
}

#[derive(Debug, Clone)]
enum Memo {
    Win(u32),
    NoWinWithin(u32),
    Cycle(Vec<Step>),
}

type Position = (VertexSet, String);

struct Search<'g> {
    g: &'g Graph,
    rules: GameRules,
    memo: FxHashMap<Position, Memo>,
    stack: FxHashSet<Position>,
}

impl<'g> Search<'g> {
    fn new(g: &'g Graph, rules: GameRules) -> Self {
        Self { g, rules, memo: FxHashMap::default(), stack: FxHashSet::default() }
    }

    fn value(&mut self, belief: &VertexSet, cop: &dyn CopStrategy, left: u32) -> Result<Value, StrategyError> {
        if left == 0 {
            return Ok(Value::Survive);
        }
        let pos = (belief.clone(), cop.fingerprint());
        match self.memo.get(&pos) {
            Some(Memo::Win(d)) if *d <= left => return Ok(Value::Win(*d)),
            Some(Memo::Win(_)) => return Ok(Value::Survive),
            Some(Memo::NoWinWithin(r)) if left <= *r => return Ok(Value::Survive),
            Some(Memo::Cycle(p)) => return Ok(Value::Cycle(p.clone())),
            _ => {}
        }
        if self.stack.contains(&pos) {
            return Ok(Value::Cycle(Vec::new()));
        }
        self.stack.insert(pos.clone());
        let result = self.expand_node(belief, cop, left);
        self.stack.remove(&pos);
        let value = result?;
        let memo = match &value {
            Value::Win(d) => Memo::Win(*d),
            Value::Survive => Memo::NoWinWithin(left),
            Value::Cycle(p) => Memo::Cycle(p.clone()),
        };
        self.memo.insert(pos, memo);
        Ok(value)
    }

    fn expand_node(&mut self, belief: &VertexSet, cop: &dyn CopStrategy, left: u32) -> Result<Value, StrategyError> {
        let mut cop = cop.clone_box();
        let probes = cop.next_probes()?;
        check_probes(self.g, &probes, self.rules.k)?;
        let mask = self.g.set_of(probes.iter().copied());
        let mut worst = Value::Win(1);
        for (key, class) in classes(self.g, belief, &probes)? {
            if class.len() == 1 {
                continue;
            }
            let mut child = cop.clone_box();
            child.observe(&key)?;
            let next = expand_set(self.g, &class, self.rules.variant, &mask);
            match self.value(&next, &*child, left - 1)? {
                Value::Cycle(mut path) => {
                    path.insert(0, Step { probes: probes.clone(), key, remaining: class.len() });
                    return Ok(Value::Cycle(path));
                }
                Value::Survive => return Ok(Value::Survive),
                Value::Win(d) => {
                    if d + 1 > worst.rank().1 {
                        worst = Value::Win(d + 1);
                    }
                }
            }
        }
        Ok(worst)
    }

    fn transcript(&self, path: &[Step]) -> Transcript {
        let turns = path
            .iter()
            .enumerate()
            .map(|(i, s)| TurnRecord {
                turn: i as u32 + 1,
                probes: labels(self.g, &s.probes),
                distances: s.key.clone(),
                belief: Some(s.remaining),
            })
            .collect();
        Transcript { turns, outcome: Outcome::Escape { turns: path.len() as u32 } }
    }
}

/// Plays `cop` against every robber at once by branching over all
/// response classes each turn.
pub fn verify_strategy(
    g: &Graph,
    cop: &dyn CopStrategy,
    rules: &GameRules,
    max_turns: u32,
) -> Result<Verification, StrategyError> {
    check_arena(g, cop, rules)?;
    let mut search = Search::new(g, *rules);
    Ok(match search.value(&g.full_set(), cop, max_turns)? {
        Value::Win(depth) => Verification::VerifiedWin { depth },
        Value::Survive => Verification::HorizonExceeded,
        Value::Cycle(path) => Verification::Counterexample(search.transcript(&path)),
    })
}

/// Robber that searches the cop's future play and answers with the class
/// that keeps it free longest.
pub struct ExhaustiveAdversary<'g> {
    search: Search<'g>,
    horizon: u32,
    shadow: Option<Box<dyn CopStrategy>>,
    belief: VertexSet,
    turn: u32,
    certified: bool,
}

pub fn exhaustive_adversary<'g>(g: &'g Graph, rules: &GameRules, horizon: u32) -> ExhaustiveAdversary<'g> {
    ExhaustiveAdversary {
        search: Search::new(g, *rules),
        horizon,
        shadow: None,
        belief: g.full_set(),
        turn: 0,
        certified: false,
    }
}

impl ExhaustiveAdversary<'_> {
    /// Current candidate set, before the next probe.
    pub fn belief(&self) -> &VertexSet {
        &self.belief
    }
}

impl RobberAdversary for ExhaustiveAdversary<'_> {
    fn attach(&mut self, cop: &dyn CopStrategy) -> Result<(), StrategyError> {
        let root = self.search.value(&self.belief, cop, self.horizon)?;
        self.certified = !matches!(root, Value::Win(_));
        self.shadow = Some(cop.clone_box());
        Ok(())
    }

    fn react(&mut self, probes: &[Vertex]) -> Result<Vec<u32>, StrategyError> {
        let g = self.search.g;
        let shadow = self
            .shadow
            .as_mut()
            .ok_or_else(|| StrategyError::Precondition("exhaustive adversary was never attached to a cop".into()))?;
        if shadow.next_probes()? != probes {
            return Err(StrategyError::ShadowMismatch);
        }
        self.turn += 1;
        let left = self.horizon.saturating_sub(self.turn);
        let mask = g.set_of(probes.iter().copied());
        let mut best: Option<((u8, u32), Vec<u32>, VertexSet)> = None;
        for (key, class) in classes(g, &self.belief, probes)? {
            let rank = if class.len() == 1 {
                (0, 0)
            } else {
                let mut child = shadow.clone_box();
                child.observe(&key)?;
                let next = expand_set(g, &class, self.search.rules.variant, &mask);
                self.search.value(&next, &*child, left)?.rank()
            };
            if best.as_ref().is_none_or(|(r, _, _)| rank > *r) {
                best = Some((rank, key, class));
            }
        }
        let (_, key, class) = best.expect("belief is never empty");
        if class.len() > 1 {
            shadow.observe(&key)?;
        }
        self.belief = expand_set(g, &class, self.search.rules.variant, &mask);
        Ok(key)
    }

    fn escape_certified(&self) -> bool {
        self.certified
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, cycle, gn};
    use crate::solver::{is_k_locatable, Budget, Variant};
    use crate::strategies::{cycling_cop, extracted_cop, fixed_probe_cop, maxdeg3_cop, simulate, split_greedy_cop};

    fn budget_one_cops(g: &Graph) -> Vec<Box<dyn CopStrategy>> {
        vec![
            Box::new(fixed_probe_cop(vec![0])),
            Box::new(fixed_probe_cop(vec![g.vertex_count() - 1])),
            Box::new(cycling_cop(g, 1)),
            Box::new(split_greedy_cop(g, 1, Variant::FreeMove)),
        ]
    }

    #[test]
    fn exhaustive_robber_escapes_single_probes() {
        for (g, horizon) in [(cycle(3).unwrap(), 10), (gn(1).unwrap(), 6)] {
            let rules = GameRules::new(1);
            for mut cop in budget_one_cops(&g) {
                let mut robber = exhaustive_adversary(&g, &rules, horizon);
                let t = simulate(&g, cop.as_mut(), &mut robber, &rules, horizon).unwrap();
                assert_eq!(t.outcome, Outcome::Escape { turns: horizon }, "{}", cop.name());
                assert!(t.turns.iter().all(|r| r.belief.unwrap() >= 2));
            }
        }
    }

    #[test]
    fn exhaustive_robber_is_caught_by_winning_trees() {
        let k4 = complete(4).unwrap();
        let rules = GameRules::new(3);
        let r = is_k_locatable(&k4, &rules, &Budget::default()).unwrap();
        let depth = r.turn_bound.unwrap();
        let mut cop = extracted_cop(r.strategy.unwrap());
        let mut robber = exhaustive_adversary(&k4, &rules, 10);
        let t = simulate(&k4, &mut cop, &mut robber, &rules, 10).unwrap();
        assert!(matches!(t.outcome, Outcome::Win { turn, .. } if turn == depth), "{t:?}");
        assert!(!robber.escape_certified());

        let mut cop = maxdeg3_cop(&k4).unwrap();
        let mut robber = exhaustive_adversary(&k4, &rules, 20);
        let bound = match verify_strategy(&k4, &cop, &rules, 20).unwrap() {
            Verification::VerifiedWin { depth } => depth,
            other => panic!("{other:?}"),
        };
        let t = simulate(&k4, &mut cop, &mut robber, &rules, 20).unwrap();
        assert!(matches!(t.outcome, Outcome::Win { turn, .. } if turn == bound), "{t:?}");
    }

    #[test]
    fn no_single_probe_cop_verifies_on_triangle() {
        let c3 = cycle(3).unwrap();
        for cop in budget_one_cops(&c3) {
            let v = verify_strategy(&c3, cop.as_ref(), &GameRules::new(1), 12).unwrap();
            let Verification::Counterexample(t) = v else { panic!("{}: {v:?}", cop.name()) };
            assert!(matches!(t.outcome, Outcome::Escape { .. }));
            assert!(!t.turns.is_empty());
        }
    }

    #[test]
    fn short_horizons_are_reported() {
        let g = complete(4).unwrap();
        let rules = GameRules::new(3);
        let cop = maxdeg3_cop(&g).unwrap();
        assert_eq!(verify_strategy(&g, &cop, &rules, 0).unwrap(), Verification::HorizonExceeded);
        let disconnected = Graph::parse_edge_list("graph 2\nv 0 a\nv 1 b\n").unwrap();
        assert!(verify_strategy(&disconnected, &fixed_probe_cop(vec![0]), &GameRules::new(1), 3).is_err());
        assert!(verify_strategy(&g, &cop, &GameRules::new(2), 3).is_err());
    }
}
