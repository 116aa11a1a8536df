//! Immutable labelled undirected graphs with cached breadth-first distances.
//!
//! Vertices are dense indices `0..n`; labels only matter at the I/O boundary.
//! The edge-list text format is
//!
//! ```text
//! graph <vertex_count>
//! v <index> <label>
//! e <label1> <label2>
//! ```
//!
//! with `#` comment lines allowed anywhere. [`Graph::to_edge_list`] writes the
//! canonical form (vertices in index order, edges sorted by endpoint index).

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::vertex_set::VertexSet;

pub type Vertex = usize;

const UNREACHED: u32 = u32::MAX;

/// Graph distance; `Infinite` between different components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(u32),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<u32> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown vertex label `{0}`")]
    UnknownLabel(String),
    #[error("self-loop at `{0}`")]
    SelfLoop(String),
    #[error("invalid label `{0}`: labels must be non-empty, whitespace-free and not start with `#`")]
    InvalidLabel(String),
    #[error("vertex index {index} out of range for a graph on {n} vertices")]
    InvalidVertex { index: usize, n: usize },
    #[error("graph has no vertices")]
    Empty,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug)]
pub struct Graph {
    labels: Vec<String>,
    adjacency: Vec<Vec<Vertex>>,
    index: HashMap<String, Vertex>,
    closed_nbhd: Vec<VertexSet>,
    open_nbhd: Vec<VertexSet>,
    distances: OnceLock<Vec<u32>>,
}

impl Clone for Graph {
    fn clone(&self) -> Self {
        Self {
            labels: self.labels.clone(),
            adjacency: self.adjacency.clone(),
            index: self.index.clone(),
            closed_nbhd: self.closed_nbhd.clone(),
            open_nbhd: self.open_nbhd.clone(),
            distances: OnceLock::new(),
        }
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.adjacency == other.adjacency
    }
}

impl Eq for Graph {}

fn valid_label(label: &str) -> bool {
    !label.is_empty() && !label.starts_with('#') && !label.chars().any(char::is_whitespace)
}

impl Graph {
    /// Builds a graph from labels and label pairs. Duplicate edges (in either
    /// orientation) collapse to one.
    pub fn from_labeled_edges<L, E, A, B>(labels: L, edges: E) -> Result<Graph, GraphError>
    where
        L: IntoIterator,
        L::Item: Into<String>,
        E: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if !valid_label(l) {
                return Err(GraphError::InvalidLabel(l.clone()));
            }
            if index.insert(l.clone(), i).is_some() {
                return Err(GraphError::DuplicateLabel(l.clone()));
            }
        }
        let mut pairs = Vec::new();
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let u = *index.get(a).ok_or_else(|| GraphError::UnknownLabel(a.to_string()))?;
            let v = *index.get(b).ok_or_else(|| GraphError::UnknownLabel(b.to_string()))?;
            pairs.push((u, v));
        }
        Self::from_index_edges(labels, pairs)
    }

    /// Builds a graph from labels and index pairs.
    pub fn from_index_edges<I>(labels: Vec<String>, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let n = labels.len();
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if !valid_label(l) {
                return Err(GraphError::InvalidLabel(l.clone()));
            }
            if index.insert(l.clone(), i).is_some() {
                return Err(GraphError::DuplicateLabel(l.clone()));
            }
        }
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::InvalidVertex { index: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(labels[u].clone()));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in adjacency.iter_mut() {
            list.sort_unstable();
            list.dedup();
        }
        let open_nbhd: Vec<VertexSet> =
            adjacency.iter().map(|a| VertexSet::from_vertices(n, a.iter().copied())).collect();
        let closed_nbhd = open_nbhd
            .iter()
            .enumerate()
            .map(|(v, s)| {
                let mut c = s.clone();
                c.insert(v);
                c
            })
            .collect();
        Ok(Graph { labels, adjacency, index, closed_nbhd, open_nbhd, distances: OnceLock::new() })
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.vertex_count()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, adj)| adj.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn label(&self, v: Vertex) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<Vertex> {
        self.index.get(label).copied()
    }

    /// Sorted neighbour list.
    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn open_neighborhood_set(&self, v: Vertex) -> &VertexSet {
        &self.open_nbhd[v]
    }

    pub fn closed_neighborhood_set(&self, v: Vertex) -> &VertexSet {
        &self.closed_nbhd[v]
    }

    pub fn max_degree(&self) -> Result<usize, GraphError> {
        self.adjacency.iter().map(Vec::len).max().ok_or(GraphError::Empty)
    }

    fn check(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(GraphError::InvalidVertex { index: v, n: self.vertex_count() })
        }
    }

    fn bfs(&self, source: Vertex, out: &mut [u32]) {
        out.fill(UNREACHED);
        out[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = out[u];
            for &w in &self.adjacency[u] {
                if out[w] == UNREACHED {
                    out[w] = du + 1;
                    queue.push_back(w);
                }
            }
        }
    }

    fn matrix(&self) -> &[u32] {
        self.distances.get_or_init(|| {
            let n = self.vertex_count();
            let mut m = vec![UNREACHED; n * n];
            for (s, row) in m.chunks_mut(n.max(1)).enumerate().take(n) {
                self.bfs(s, row);
            }
            m
        })
    }

    pub fn distance(&self, u: Vertex, v: Vertex) -> Result<Distance, GraphError> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.dist_unchecked(u, v))
    }

    #[inline]
    pub(crate) fn dist_unchecked(&self, u: Vertex, v: Vertex) -> Distance {
        match self.matrix()[u * self.vertex_count() + v] {
            UNREACHED => Distance::Infinite,
            d => Distance::Finite(d),
        }
    }

    /// Distance between two vertices of a connected graph.
    ///
    /// Panics if `u` and `v` lie in different components; game code checks
    /// connectivity up front and uses this on its hot paths.
    #[inline]
    pub fn dist(&self, u: Vertex, v: Vertex) -> u32 {
        let d = self.matrix()[u * self.vertex_count() + v];
        assert!(d != UNREACHED, "distance queried across components");
        d
    }

    pub fn all_distances_from(&self, u: Vertex) -> Result<Vec<Distance>, GraphError> {
        self.check(u)?;
        let mut row = vec![UNREACHED; self.vertex_count()];
        self.bfs(u, &mut row);
        Ok(row.into_iter().map(|d| if d == UNREACHED { Distance::Infinite } else { Distance::Finite(d) }).collect())
    }

    /// Largest finite distance in the graph.
    pub fn diameter(&self) -> u32 {
        self.matrix().iter().copied().filter(|&d| d != UNREACHED).max().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connected components, each sorted, ordered by least member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in &self.adjacency[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// `s` together with every neighbour of a member of `s`.
    pub fn closed_neighborhood(&self, s: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new(self.vertex_count());
        for v in s {
            out.union_with(&self.closed_nbhd[v]);
        }
        out
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::new(self.vertex_count())
    }

    pub fn full_set(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    pub fn set_of<I: IntoIterator<Item = Vertex>>(&self, vertices: I) -> VertexSet {
        VertexSet::from_vertices(self.vertex_count(), vertices)
    }

    /// Looks up a list of labels.
    pub fn vertices_by_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<Vertex>, GraphError> {
        labels
            .iter()
            .map(|l| self.vertex_by_label(l.as_ref()).ok_or_else(|| GraphError::UnknownLabel(l.as_ref().to_string())))
            .collect()
    }

    pub fn to_edge_list(&self) -> String {
        self.to_edge_list_with_comments(&[])
    }

    /// Canonical edge-list text, with `# ...` comment lines inserted after the
    /// header.
    pub fn to_edge_list_with_comments(&self, comments: &[String]) -> String {
        let mut out = format!("graph {}\n", self.vertex_count());
        for c in comments {
            out.push_str("# ");
            out.push_str(c);
            out.push('\n');
        }
        for (i, l) in self.labels.iter().enumerate() {
            out.push_str(&format!("v {i} {l}\n"));
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("e {} {}\n", self.labels[u], self.labels[v]));
        }
        out
    }

    pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
        let perr = |line: usize, message: String| GraphError::Parse { line, message };
        let mut n: Option<usize> = None;
        let mut labels: Vec<Option<String>> = Vec::new();
        let mut edges: Vec<(String, String, usize)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match (fields[0], n) {
                ("graph", None) => {
                    if fields.len() != 2 {
                        return Err(perr(lineno, "expected `graph <vertex_count>`".into()));
                    }
                    let count =
                        fields[1].parse::<usize>().map_err(|e| perr(lineno, format!("bad vertex count: {e}")))?;
                    n = Some(count);
                    labels = vec![None; count];
                }
                ("graph", Some(_)) => return Err(perr(lineno, "repeated `graph` header".into())),
                (_, None) => return Err(perr(lineno, "missing `graph` header".into())),
                ("v", Some(count)) => {
                    if fields.len() != 3 {
                        return Err(perr(lineno, "expected `v <index> <label>`".into()));
                    }
                    let idx = fields[1].parse::<usize>().map_err(|e| perr(lineno, format!("bad vertex index: {e}")))?;
                    if idx >= count {
                        return Err(perr(lineno, format!("vertex index {idx} out of range")));
                    }
                    if labels[idx].is_some() {
                        return Err(perr(lineno, format!("vertex index {idx} repeated")));
                    }
                    labels[idx] = Some(fields[2].to_string());
                }
                ("e", Some(_)) => {
                    if fields.len() != 3 {
                        return Err(perr(lineno, "expected `e <label1> <label2>`".into()));
                    }
                    edges.push((fields[1].to_string(), fields[2].to_string(), lineno));
                }
                (other, Some(_)) => return Err(perr(lineno, format!("unknown record `{other}`"))),
            }
        }
        if n.is_none() {
            return Err(perr(0, "missing `graph` header".into()));
        }
        let labels: Vec<String> = labels
            .into_iter()
            .enumerate()
            .map(|(i, l)| l.ok_or_else(|| perr(0, format!("vertex index {i} never declared"))))
            .collect::<Result<_, _>>()?;
        let index: HashMap<&str, Vertex> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let mut pairs = Vec::with_capacity(edges.len());
        for (a, b, lineno) in &edges {
            let u = *index.get(a.as_str()).ok_or_else(|| perr(*lineno, format!("unknown label `{a}`")))?;
            let v = *index.get(b.as_str()).ok_or_else(|| perr(*lineno, format!("unknown label `{b}`")))?;
            pairs.push((u, v));
        }
        Graph::from_index_edges(labels, pairs)
    }
}
