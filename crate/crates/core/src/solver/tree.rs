//! Extracted winning strategies and their JSON text form.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{expand_set, partition_keyed, GameRules};
use crate::graph::{Graph, Vertex};
use crate::vertex_set::VertexSet;

const FORMAT_TAG: &str = "robber-strategy-tree/1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("malformed strategy tree text: {0}")]
    Syntax(String),
    #[error("unsupported format tag `{0}`")]
    Format(String),
    #[error("unknown vertex label `{0}`")]
    UnknownLabel(String),
    #[error("node probes {got} vertices but k = {k}")]
    TooManyProbes { got: usize, k: usize },
    #[error("node has no probes")]
    NoProbes,
    #[error("distance vector {key:?} has length {got}, expected {expected}")]
    KeyLength { key: Vec<u32>, got: usize, expected: usize },
    #[error("child keys are not strictly increasing at {0:?}")]
    KeyOrder(Vec<u32>),
    #[error("child {0:?} must be exactly one of `win` or `next`")]
    ChildShape(Vec<u32>),
    #[error("declared depth {declared} differs from actual depth {actual}")]
    DepthMismatch { declared: u32, actual: u32 },
    #[error("k must be at least 1")]
    ZeroK,
    #[error("response {key:?} is not realizable from the belief at this node")]
    Unrealizable { key: Vec<u32> },
    #[error("response {key:?} is realizable but has no child")]
    MissingResponse { key: Vec<u32> },
    #[error("response {key:?} leaves {candidates} candidates but is marked as a win")]
    FalseWin { key: Vec<u32>, candidates: usize },
    #[error("response {key:?} pins the robber to `{actual}`, not `{claimed}`")]
    WrongWin { key: Vec<u32>, claimed: String, actual: String },
}

/// What happens after the cop reads a distance vector at a node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Branch {
    /// The robber is located at this vertex.
    Win(Vertex),
    Next(Box<StrategyNode>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyNode {
    /// Probed vertices in ascending index order.
    pub probes: Vec<Vertex>,
    /// Sorted by distance vector, one entry per realizable response.
    pub children: Vec<(Vec<u32>, Branch)>,
}

impl StrategyNode {
    pub fn child(&self, key: &[u32]) -> Option<&Branch> {
        self.children.binary_search_by(|(k, _)| k.as_slice().cmp(key)).ok().map(|i| &self.children[i].1)
    }

    /// Turns needed from this node in the worst case.
    pub fn depth(&self) -> u32 {
        1 + self
            .children
            .iter()
            .map(|(_, b)| match b {
                Branch::Win(_) => 0,
                Branch::Next(n) => n.depth(),
            })
            .max()
            .unwrap_or(0)
    }

    pub fn node_count(&self) -> usize {
        1 + self
            .children
            .iter()
            .map(|(_, b)| match b {
                Branch::Win(_) => 0,
                Branch::Next(n) => n.node_count(),
            })
            .sum::<usize>()
    }
}

/// A finite winning strategy: probe sets at nodes, edges keyed by the
/// distance vectors reported in probe order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyTree {
    k: usize,
    root: StrategyNode,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireTree {
    format: String,
    k: usize,
    depth: u32,
    root: WireNode,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireNode {
    probes: Vec<String>,
    children: Vec<WireChild>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireChild {
    distances: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    win: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    next: Option<Box<WireNode>>,
}

impl StrategyTree {
    /// Checks the structural invariants (probe counts, key lengths, key order).
    pub fn new(k: usize, root: StrategyNode) -> Result<Self, TreeError> {
        if k == 0 {
            return Err(TreeError::ZeroK);
        }
        check_shape(&root, k)?;
        Ok(Self { k, root })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn root(&self) -> &StrategyNode {
        &self.root
    }

    pub fn depth(&self) -> u32 {
        self.root.depth()
    }

    pub fn node_count(&self) -> usize {
        self.root.node_count()
    }

    pub fn to_text(&self, g: &Graph) -> String {
        let wire =
            WireTree { format: FORMAT_TAG.to_string(), k: self.k, depth: self.depth(), root: to_wire(&self.root, g) };
        let mut s = serde_json::to_string_pretty(&wire).expect("tree serializes");
        s.push('\n');
        s
    }

    pub fn from_text(g: &Graph, text: &str) -> Result<Self, TreeError> {
        let mut de = serde_json::Deserializer::from_str(text);
        de.disable_recursion_limit();
        let wire = WireTree::deserialize(&mut de).map_err(|e| TreeError::Syntax(e.to_string()))?;
        de.end().map_err(|e| TreeError::Syntax(e.to_string()))?;
        if wire.format != FORMAT_TAG {
            return Err(TreeError::Format(wire.format));
        }
        let root = from_wire(wire.root, g)?;
        let tree = Self::new(wire.k, root)?;
        if tree.depth() != wire.depth {
            return Err(TreeError::DepthMismatch { declared: wire.depth, actual: tree.depth() });
        }
        Ok(tree)
    }

    /// Replays the tree from the full vertex set under `rules` and checks
    /// that it answers exactly the realizable responses and wins at every leaf.
    pub fn validate(&self, g: &Graph, rules: &GameRules) -> Result<(), TreeError> {
        validate_node(&self.root, &g.full_set(), g, rules)
    }
}

fn check_shape(node: &StrategyNode, k: usize) -> Result<(), TreeError> {
    if node.probes.is_empty() {
        return Err(TreeError::NoProbes);
    }
    if node.probes.len() > k {
        return Err(TreeError::TooManyProbes { got: node.probes.len(), k });
    }
    let mut prev: Option<&Vec<u32>> = None;
    for (key, branch) in &node.children {
        if key.len() != node.probes.len() {
            return Err(TreeError::KeyLength { key: key.clone(), got: key.len(), expected: node.probes.len() });
        }
        if prev.is_some_and(|p| p >= key) {
            return Err(TreeError::KeyOrder(key.clone()));
        }
        prev = Some(key);
        if let Branch::Next(n) = branch {
            check_shape(n, k)?;
        }
    }
    Ok(())
}

fn to_wire(node: &StrategyNode, g: &Graph) -> WireNode {
    WireNode {
        probes: node.probes.iter().map(|&p| g.label(p).to_string()).collect(),
        children: node
            .children
            .iter()
            .map(|(key, b)| match b {
                Branch::Win(v) => WireChild { distances: key.clone(), win: Some(g.label(*v).to_string()), next: None },
                Branch::Next(n) => WireChild { distances: key.clone(), win: None, next: Some(Box::new(to_wire(n, g))) },
            })
            .collect(),
    }
}

fn vertex(g: &Graph, label: &str) -> Result<Vertex, TreeError> {
    g.vertex_by_label(label).ok_or_else(|| TreeError::UnknownLabel(label.to_string()))
}

fn from_wire(node: WireNode, g: &Graph) -> Result<StrategyNode, TreeError> {
    let probes = node.probes.iter().map(|l| vertex(g, l)).collect::<Result<Vec<_>, _>>()?;
    let mut children = Vec::with_capacity(node.children.len());
    for c in node.children {
        let branch = match (c.win, c.next) {
            (Some(w), None) => Branch::Win(vertex(g, &w)?),
            (None, Some(n)) => Branch::Next(Box::new(from_wire(*n, g)?)),
            _ => return Err(TreeError::ChildShape(c.distances)),
        };
        children.push((c.distances, branch));
    }
    Ok(StrategyNode { probes, children })
}

fn validate_node(node: &StrategyNode, belief: &VertexSet, g: &Graph, rules: &GameRules) -> Result<(), TreeError> {
    let classes = partition_keyed(g, belief, &node.probes).map_err(|_| TreeError::Unrealizable { key: vec![] })?;
    for (key, _) in &node.children {
        if classes.binary_search_by(|(k, _)| k.cmp(key)).is_err() {
            return Err(TreeError::Unrealizable { key: key.clone() });
        }
    }
    let probe_set = g.set_of(node.probes.iter().copied());
    for (key, class) in &classes {
        match node.child(key) {
            None => return Err(TreeError::MissingResponse { key: key.clone() }),
            Some(Branch::Win(v)) => match class.only() {
                Some(x) if x == *v => {}
                Some(x) => {
                    return Err(TreeError::WrongWin {
                        key: key.clone(),
                        claimed: g.label(*v).to_string(),
                        actual: g.label(x).to_string(),
                    })
                }
                None => return Err(TreeError::FalseWin { key: key.clone(), candidates: class.len() }),
            },
            Some(Branch::Next(n)) => {
                let next = expand_set(g, class, rules.variant, &probe_set);
                validate_node(n, &next, g, rules)?;
            }
        }
    }
    Ok(())
}
