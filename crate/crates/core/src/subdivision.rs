//! Equal-length subdivisions `G^{1/m}` and the mod-`m` reading of probes
//! taken at branch vertices.

use std::collections::HashMap;

use thiserror::Error;

use crate::graph::{Graph, GraphError, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubdivisionError {
    #[error("subdivision length must be at least 1")]
    ZeroLength,
    #[error("residue classification needs m >= 2, got {0}")]
    ModulusTooSmall(u32),
    #[error("distance {d} is a midpoint residue for m = {m}; the nearest branch vertex is ambiguous")]
    MidpointAmbiguous { d: u32, m: u32 },
    #[error("`{0}` and `{1}` are not adjacent in the base graph")]
    NotABaseEdge(String, String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Where a vertex of `G^{1/m}` comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexKind {
    Branch(Vertex),
    /// `index` in `1..m`, counted from the lower-indexed endpoint `edge.0`.
    Thread {
        edge: (Vertex, Vertex),
        index: u32,
    },
}

/// `G^{1/m}`: branch vertices keep the base indices `0..n`, thread vertices
/// follow edge by edge in sorted edge order.
#[derive(Debug, Clone)]
pub struct SubdividedGraph {
    graph: Graph,
    base: Graph,
    m: u32,
    kinds: Vec<VertexKind>,
    threads: HashMap<(Vertex, Vertex), Vec<Vertex>>,
}

pub fn subdivide(base: &Graph, m: u32) -> Result<SubdividedGraph, SubdivisionError> {
    if m == 0 {
        return Err(SubdivisionError::ZeroLength);
    }
    let n = base.vertex_count();
    let mut labels: Vec<String> = base.labels().to_vec();
    let mut kinds: Vec<VertexKind> = (0..n).map(VertexKind::Branch).collect();
    let mut edges = Vec::new();
    let mut threads = HashMap::new();
    for (u, v) in base.edges() {
        let mut thread = vec![u];
        for i in 1..m {
            let id = labels.len();
            labels.push(format!("{}~{}:{i}", base.label(u), base.label(v)));
            kinds.push(VertexKind::Thread { edge: (u, v), index: i });
            thread.push(id);
        }
        thread.push(v);
        for w in thread.windows(2) {
            edges.push((w[0], w[1]));
        }
        threads.insert((u, v), thread);
    }
    let graph = Graph::from_index_edges(labels, edges)?;
    Ok(SubdividedGraph { graph, base: base.clone(), m, kinds, threads })
}

impl SubdividedGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn kind(&self, x: Vertex) -> VertexKind {
        self.kinds[x]
    }

    /// The branch vertex standing for base vertex `v` (same index).
    pub fn branch(&self, v: Vertex) -> Vertex {
        debug_assert!(v < self.base.vertex_count());
        v
    }

    pub fn is_branch(&self, x: Vertex) -> bool {
        matches!(self.kinds[x], VertexKind::Branch(_))
    }

    /// The `m + 1` vertices of the thread from `u` to `v`, in path order.
    pub fn thread_between(&self, u: Vertex, v: Vertex) -> Result<Vec<Vertex>, SubdivisionError> {
        let key = (u.min(v), u.max(v));
        let not_edge = || {
            let name = |x: Vertex| {
                if x < self.base.vertex_count() {
                    self.base.label(x).to_string()
                } else {
                    format!("#{x}")
                }
            };
            SubdivisionError::NotABaseEdge(name(u), name(v))
        };
        let thread = self.threads.get(&key).ok_or_else(not_edge)?;
        let mut t = thread.clone();
        if u > v {
            t.reverse();
        }
        Ok(t)
    }

    /// Comment lines tagging each vertex with its kind.
    pub fn kind_comments(&self) -> Vec<String> {
        let mut out = vec![format!("subdivision m={} base_vertices={}", self.m, self.base.vertex_count())];
        for (x, k) in self.kinds.iter().enumerate() {
            let line = match k {
                VertexKind::Branch(v) => format!("kind {} branch {}", self.graph.label(x), self.base.label(*v)),
                VertexKind::Thread { edge: (u, v), index } => format!(
                    "kind {} thread {} {} {index}",
                    self.graph.label(x),
                    self.base.label(*u),
                    self.base.label(*v)
                ),
            };
            out.push(line);
        }
        out
    }

    pub fn to_edge_list(&self) -> String {
        self.graph.to_edge_list_with_comments(&self.kind_comments())
    }
}

/// What a probe at a branch vertex says about the robber's position on the
/// thread he occupies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeResidue {
    AtBranch,
    AtMidpoint,
    AtNearMidpoint,
    Interior { dist_to_nearest_branch: u32 },
}

impl ProbeResidue {
    /// Midpoint or near-midpoint.
    pub fn is_middle(self) -> bool {
        matches!(self, ProbeResidue::AtMidpoint | ProbeResidue::AtNearMidpoint)
    }
}

/// Reads a distance `d` returned by a probe at a branch vertex modulo `m`.
pub fn classify_probe_residue(d: u32, m: u32) -> Result<ProbeResidue, SubdivisionError> {
    if m < 2 {
        return Err(SubdivisionError::ModulusTooSmall(m));
    }
    let r = d % m;
    Ok(if r == 0 {
        ProbeResidue::AtBranch
    } else if m.is_multiple_of(2) && r == m / 2 {
        ProbeResidue::AtMidpoint
    } else if m % 2 == 1 && (r == (m - 1) / 2 || r == m.div_ceil(2)) {
        ProbeResidue::AtNearMidpoint
    } else {
        ProbeResidue::Interior { dist_to_nearest_branch: r.min(m - r) }
    })
}

/// Base-graph distance from the probed branch vertex to the robber's
/// nearest branch vertex: `d / m` rounded to the nearest integer.
pub fn nearest_branch_base_distance(d: u32, m: u32) -> Result<u32, SubdivisionError> {
    if m == 0 {
        return Err(SubdivisionError::ZeroLength);
    }
    if m >= 2 && classify_probe_residue(d, m)? == ProbeResidue::AtMidpoint {
        return Err(SubdivisionError::MidpointAmbiguous { d, m });
    }
    let (q, r) = (d / m, d % m);
    Ok(if 2 * r > m { q + 1 } else { q })
}
