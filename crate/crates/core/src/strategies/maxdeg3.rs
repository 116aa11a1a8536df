use std::sync::Arc;

use super::{consistent, CopStrategy, StrategyError};
use crate::families::combinations;
use crate::graph::{Graph, Vertex};
use crate::solver::{expand_set, is_resolving, Variant};
use crate::vertex_set::VertexSet;

/// How to read the results of the pending probe.
#[derive(Debug, Clone, PartialEq, Eq)]
enum After {
    /// Anchor at the closest probe.
    Anchor,
    K33 {
        second: Vec<Vertex>,
    },
    /// Probed the neighbours of `x0`, which had returned `r`.
    Neighbours {
        x0: Vertex,
        r: u32,
    },
    /// Probed the first three vertices of `s`.
    Beyond {
        r: u32,
        s: Vec<Vertex>,
    },
    /// Probed the neighbours of the one vertex of `S` left out.
    Last {
        r: u32,
    },
    /// Probed the neighbours of `v`, which had returned 1.
    Endgame {
        v: Vertex,
    },
    /// The robber was at one of `pair` unless this probe located him.
    ThenSquare {
        pair: (Vertex, Vertex),
    },
    ThenProbe {
        follow: Vec<Vertex>,
    },
    MustWin(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Plan {
    Probe { probes: Vec<Vertex>, after: After },
    Done,
}

/// Three probes per turn on any connected graph with maximum degree at
/// most 3: a distance-descent phase followed by a local endgame.
#[derive(Debug, Clone)]
pub struct MaxDeg3Cop {
    g: Arc<Graph>,
    plan: Plan,
    /// Robber positions possible at the next probe.
    belief: VertexSet,
    fallbacks: usize,
}

pub fn maxdeg3_cop(g: &Graph) -> Result<MaxDeg3Cop, StrategyError> {
    let delta = g.max_degree().map_err(|e| StrategyError::Precondition(e.to_string()))?;
    if delta > 3 {
        return Err(StrategyError::Precondition(format!("maximum degree is {delta}, at most 3 required")));
    }
    let n = g.vertex_count();
    let plan = match k33_sides(g) {
        Some((side, other)) => Plan::Probe {
            probes: sorted(vec![side[0], side[1], other[0]]),
            after: After::K33 { second: sorted(vec![side[0], side[1], other[1]]) },
        },
        None => Plan::Probe { probes: (0..n.min(3)).collect(), after: After::Anchor },
    };
    Ok(MaxDeg3Cop { g: Arc::new(g.clone()), plan, belief: g.full_set(), fallbacks: 0 })
}

fn sorted(mut v: Vec<Vertex>) -> Vec<Vertex> {
    v.sort_unstable();
    v.dedup();
    v
}

/// The two classes of `K_{3,3}`, the one holding vertex 0 first.
fn k33_sides(g: &Graph) -> Option<(Vec<Vertex>, Vec<Vertex>)> {
    if g.vertex_count() != 6 || g.edge_count() != 9 {
        return None;
    }
    let (side, other): (Vec<Vertex>, Vec<Vertex>) = g.vertices().partition(|&x| x == 0 || !g.has_edge(0, x));
    let complete = side.len() == 3 && side.iter().all(|&a| other.iter().all(|&b| g.has_edge(a, b)));
    complete.then_some((side, other))
}

impl MaxDeg3Cop {
    /// Times the generic case analysis did not apply and a resolving
    /// probe set or a fresh descent was used instead.
    pub fn fallbacks(&self) -> usize {
        self.fallbacks
    }

    fn neighbourhood_probe(&self, v: Vertex) -> Vec<Vertex> {
        let mut p = self.g.neighbors(v).to_vec();
        if p.len() < 3 {
            p.push(v);
        }
        sorted(p)
    }

    fn anchor(&self, probes: &[Vertex], results: &[u32]) -> Plan {
        let (d, x) = probes.iter().zip(results).map(|(&p, &d)| (d, p)).min().expect("nonempty probe set");
        match d {
            0 => Plan::Done,
            1 => Plan::Probe { probes: self.neighbourhood_probe(x), after: After::Endgame { v: x } },
            _ => Plan::Probe { probes: sorted(self.g.neighbors(x).to_vec()), after: After::Neighbours { x0: x, r: d } },
        }
    }

    fn square(&self, p: Vertex, q: Vertex, r: Vertex, s: Vertex) -> Plan {
        let g = &self.g;
        let third = g.neighbors(p).iter().copied().find(|&x| x != r && x != s);
        let probe_q = match third {
            None => true,
            Some(pp) => pp == q || !(g.has_edge(pp, r) && g.has_edge(pp, s)),
        };
        let probes = if probe_q { vec![q, r, s] } else { vec![p, r, s] };
        Plan::Probe { probes: sorted(probes), after: After::MustWin("two candidates with two common neighbours") }
    }

    fn common_neighbours(&self, p: Vertex, q: Vertex) -> Vec<Vertex> {
        self.g.neighbors(p).iter().copied().filter(|&x| self.g.has_edge(q, x)).collect()
    }

    /// Resolving probe set for the next belief, else a fresh descent.
    fn fallback(&mut self, probes: &[Vertex], results: &[u32]) -> Plan {
        self.fallbacks += 1;
        let n = self.g.vertex_count();
        match combinations(n, n.min(3)).into_iter().find(|p| is_resolving(&self.g, p, &self.belief)) {
            Some(p) => Plan::Probe { probes: p, after: After::MustWin("resolving set") },
            None => self.anchor(probes, results),
        }
    }

    fn endgame(&mut self, v: Vertex, class: &VertexSet, probes: &[Vertex], results: &[u32]) -> Plan {
        let ones: Vec<Vertex> =
            probes.iter().zip(results).filter(|&(&p, &d)| p != v && d == 1).map(|(&p, _)| p).collect();
        let members = class.to_vec();
        if members.len() != 2 {
            return self.fallback(probes, results);
        }
        let (p, q) = (members[0], members[1]);
        if ones.len() >= 2 {
            return self.square(p, q, ones[0], ones[1]);
        }
        if ones.len() != 1 {
            return self.fallback(probes, results);
        }
        let a = ones[0];
        if let Some(&c) = self.common_neighbours(p, q).iter().find(|&&c| c != a) {
            return self.square(p, q, a, c);
        }
        match self.five_cases(a, p, q) {
            Some(plan) => plan,
            None => self.fallback(probes, results),
        }
    }

    /// The case split on the four outer neighbours of the candidates `u`, `w`.
    fn five_cases(&self, a: Vertex, u: Vertex, w: Vertex) -> Option<Plan> {
        let g = &self.g;
        if g.degree(u) != 3 || g.degree(w) != 3 || g.has_edge(u, w) {
            return None;
        }
        let xs: Vec<Vertex> = g.neighbors(u).iter().copied().filter(|&x| x != a).collect();
        let ys: Vec<Vertex> = g.neighbors(w).iter().copied().filter(|&y| y != a).collect();
        let quad = [xs[0], xs[1], ys[0], ys[1]];
        if sorted(quad.to_vec()).len() != 4 || quad.iter().any(|&z| z == a || z == u || z == w) {
            return None;
        }
        let adjacent_others = |z: Vertex| quad.iter().filter(|&&o| o != z && g.has_edge(z, o)).count();
        let probe = |third: Vec<Vertex>, after: After| Plan::Probe { probes: sorted([vec![a], third].concat()), after };
        for want in [1, 2] {
            if let Some(&z) = quad.iter().find(|&&z| adjacent_others(z) == want) {
                let partner =
                    quad.iter().copied().find(|&o| o != z && g.has_edge(z, o) == (want == 2)).expect("counted above");
                return Some(probe(vec![z, partner], After::MustWin("outer vertex with one or two outer neighbours")));
            }
        }
        for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            if g.dist(xs[i], ys[j]) > 2 {
                return Some(probe(vec![xs[i], ys[1 - j]], After::MustWin("outer pair at distance three")));
            }
        }
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        for &(i, j) in &pairs {
            if self.common_neighbours(quad[i], quad[j]).len() >= 2 {
                let rest: Vec<Vertex> = (0..4).filter(|&t| t != i && t != j).map(|t| quad[t]).collect();
                return Some(probe(rest, After::ThenSquare { pair: (quad[i], quad[j]) }));
            }
        }
        Some(probe(xs.clone(), After::ThenProbe { follow: sorted(vec![xs[0], ys[0], ys[1]]) }))
    }
}

impl CopStrategy for MaxDeg3Cop {
    fn name(&self) -> String {
        "maxdeg3".into()
    }

    fn budget(&self) -> usize {
        3
    }

    fn next_probes(&mut self) -> Result<Vec<Vertex>, StrategyError> {
        match &self.plan {
            Plan::Probe { probes, .. } => Ok(probes.clone()),
            Plan::Done => Err(StrategyError::Exhausted),
        }
    }

    fn observe(&mut self, results: &[u32]) -> Result<(), StrategyError> {
        let Plan::Probe { probes, after } = std::mem::replace(&mut self.plan, Plan::Done) else {
            return Err(StrategyError::Exhausted);
        };
        let class = consistent(&self.g, &self.belief, &probes, results);
        if class.is_empty() {
            return Err(StrategyError::InconsistentReport { turn: 0, key: results.to_vec() });
        }
        self.belief = expand_set(&self.g, &class, Variant::FreeMove, &self.g.set_of(probes.iter().copied()));
        if class.len() == 1 {
            return Ok(());
        }
        let below = |r: u32| results.iter().any(|&d| d < r);
        self.plan = match after {
            After::Anchor => self.anchor(&probes, results),
            After::K33 { second } => Plan::Probe { probes: second, after: After::MustWin("complete bipartite opener") },
            After::Neighbours { x0, r } => {
                if below(r) {
                    self.anchor(&probes, results)
                } else {
                    let x1 = probes.iter().zip(results).find(|&(_, &d)| d == r).map(|(&p, _)| p).ok_or_else(|| {
                        StrategyError::Invariant(format!("no neighbour of {} returned {r}", self.g.label(x0)))
                    })?;
                    let others: Vec<Vertex> = self.g.neighbors(x1).iter().copied().filter(|&x| x != x0).collect();
                    let s: Vec<Vertex> = sorted(
                        others
                            .iter()
                            .flat_map(|&x| self.g.neighbors(x).iter().copied())
                            .filter(|&y| y != x1 && !others.contains(&y))
                            .collect(),
                    );
                    if s.is_empty() {
                        return Err(StrategyError::Invariant("no vertex beyond the gateway".into()));
                    }
                    Plan::Probe { probes: s.iter().copied().take(3).collect(), after: After::Beyond { r, s } }
                }
            }
            After::Beyond { r, s } => {
                if below(r) {
                    self.anchor(&probes, results)
                } else if s.len() <= 3 {
                    return Err(StrategyError::Invariant(format!("all of S probed and none returned below {r}")));
                } else {
                    Plan::Probe { probes: sorted(self.g.neighbors(s[3]).to_vec()), after: After::Last { r } }
                }
            }
            After::Last { r } => {
                if !below(r) {
                    return Err(StrategyError::Invariant(format!(
                        "no neighbour of the last vertex of S returned below {r}"
                    )));
                }
                self.anchor(&probes, results)
            }
            After::Endgame { v } => self.endgame(v, &class, &probes, results),
            After::ThenSquare { pair: (p, q) } => {
                if class.to_vec() != sorted(vec![p, q]) {
                    return Err(StrategyError::Invariant("two-common-neighbour case left other candidates".into()));
                }
                let c = self.common_neighbours(p, q);
                self.square(p, q, c[0], c[1])
            }
            After::ThenProbe { follow } => {
                Plan::Probe { probes: follow, after: After::MustWin("unique common neighbours") }
            }
            After::MustWin(what) => {
                return Err(StrategyError::Invariant(format!("{what}: {} candidates remain", class.len())));
            }
        };
        Ok(())
    }

    fn clone_box(&self) -> Box<dyn CopStrategy> {
        Box::new(self.clone())
    }

    fn fingerprint(&self) -> String {
        format!("{:?}{:?}", self.plan, self.belief)
    }
}
