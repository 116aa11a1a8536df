use std::collections::HashSet;

use crate::families::combinations;
use crate::graph::{Distance, Graph, Vertex};
use crate::vertex_set::VertexSet;

/// True iff the distance vectors to `probes` are pairwise distinct over `w`.
pub fn is_resolving(g: &Graph, probes: &[Vertex], w: &VertexSet) -> bool {
    let mut seen: HashSet<Vec<Distance>> = HashSet::with_capacity(w.len());
    w.iter().all(|x| seen.insert(probes.iter().map(|&p| g.dist_unchecked(p, x)).collect()))
}

/// Least size of a resolving set for `V(G)`, with the lexicographically
/// first witness of that size.
pub fn metric_dimension(g: &Graph) -> (usize, Vec<Vertex>) {
    let n = g.vertex_count();
    let all = g.full_set();
    if n <= 1 {
        return (0, Vec::new());
    }
    for r in 1..=n {
        for probes in combinations(n, r) {
            if is_resolving(g, &probes, &all) {
                return (r, probes);
            }
        }
    }
    unreachable!("V(G) always resolves itself")
}
