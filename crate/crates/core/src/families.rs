//! Deterministic generators for the graph families used throughout the crate.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, Vertex};

/// Upper bound on generated vertex counts.
pub const MAX_GENERATED_VERTICES: usize = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("family too large: {0} vertices")]
    TooLarge(u128),
    #[error("no connected graph on {n} vertices has maximum degree at most {delta}")]
    Infeasible { n: usize, delta: usize },
}

fn numbered(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

fn build(labels: Vec<String>, edges: Vec<(Vertex, Vertex)>) -> Graph {
    Graph::from_index_edges(labels, edges).expect("generator produced an invalid graph")
}

pub fn complete(n: usize) -> Result<Graph, FamilyError> {
    if n < 1 {
        return Err(FamilyError::OutOfRange("complete graph needs n >= 1".into()));
    }
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Ok(build(numbered("v", n), edges))
}

pub fn cycle(n: usize) -> Result<Graph, FamilyError> {
    if n < 3 {
        return Err(FamilyError::OutOfRange("cycle needs n >= 3".into()));
    }
    let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Ok(build(numbered("v", n), edges))
}

/// Path on `n` vertices (so `path(2)` is a single edge).
pub fn path(n: usize) -> Result<Graph, FamilyError> {
    if n < 1 {
        return Err(FamilyError::OutOfRange("path needs n >= 1".into()));
    }
    let edges = (1..n).map(|i| (i - 1, i)).collect();
    Ok(build(numbered("v", n), edges))
}

/// `K_{a,b}` with classes labelled `a0..` and `b0..`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph, FamilyError> {
    if a < 1 || b < 1 {
        return Err(FamilyError::OutOfRange("complete bipartite needs a, b >= 1".into()));
    }
    let mut labels = numbered("a", a);
    labels.extend(numbered("b", b));
    let edges = (0..a).flat_map(|i| (0..b).map(move |j| (i, a + j))).collect();
    Ok(build(labels, edges))
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    build(numbered("v", 10), edges)
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// All `k`-subsets of `0..n` as sorted index vectors, in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// The graph on `{v_i : i in [n]} ∪ {w_A : A a k-subset of [n]}` where the
/// `w` vertices form a clique and `v_i ~ w_A` exactly when `i ∉ A`.
///
/// Labels are `v1..vn` and `w{1,2}`-style with ascending elements.
pub fn gnk(n: usize, k: usize) -> Result<Graph, FamilyError> {
    if k < 1 || k >= n {
        return Err(FamilyError::OutOfRange(format!("gnk needs 1 <= k < n, got n={n} k={k}")));
    }
    let total = n as u128 + binomial(n, k);
    if total > MAX_GENERATED_VERTICES as u128 {
        return Err(FamilyError::TooLarge(total));
    }
    let subsets = combinations(n, k);
    let mut labels: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    for s in &subsets {
        let body: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
        labels.push(format!("w{{{}}}", body.join(",")));
    }
    let mut edges = Vec::new();
    for a in 0..subsets.len() {
        for b in a + 1..subsets.len() {
            edges.push((n + a, n + b));
        }
    }
    for i in 0..n {
        for (a, s) in subsets.iter().enumerate() {
            if !s.contains(&i) {
                edges.push((i, n + a));
            }
        }
    }
    Ok(build(labels, edges))
}

fn binary_words(len: usize) -> Vec<String> {
    (0..1usize << len).map(|x| (0..len).rev().map(|b| if x >> b & 1 == 1 { '1' } else { '0' }).collect()).collect()
}

/// The empty word followed by every word of length `1..=n` ending in `1`,
/// shortest first.
fn prefix_words(n: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    for len in 1..=n {
        for w in binary_words(len - 1) {
            out.push(format!("{w}1"));
        }
    }
    out
}

/// Four classes `A, B, C, D` of `2^n` vertices each: `B`/`C` carry all
/// binary words of length `n`, `A`/`D` the empty word and the words of length
/// at most `n` ending in `1`. `ax ~ by` iff `x` is a prefix of `y` (likewise
/// `dx ~ cy`) and `B`–`C` is complete bipartite.
pub fn gn(n: usize) -> Result<Graph, FamilyError> {
    if n < 1 {
        return Err(FamilyError::OutOfRange("gn needs n >= 1".into()));
    }
    if n > 16 {
        return Err(FamilyError::TooLarge(4u128 << n));
    }
    let full = binary_words(n);
    let pre = prefix_words(n);
    let size = 1usize << n;
    debug_assert_eq!(pre.len(), size);
    let mut labels = Vec::with_capacity(4 * size);
    labels.extend(pre.iter().map(|w| format!("a{w}")));
    labels.extend(full.iter().map(|w| format!("b{w}")));
    labels.extend(full.iter().map(|w| format!("c{w}")));
    labels.extend(pre.iter().map(|w| format!("d{w}")));
    let (a0, b0, c0, d0) = (0, size, 2 * size, 3 * size);
    let mut edges = Vec::new();
    for (i, x) in pre.iter().enumerate() {
        for (j, y) in full.iter().enumerate() {
            if y.starts_with(x.as_str()) {
                edges.push((a0 + i, b0 + j));
                edges.push((d0 + i, c0 + j));
            }
        }
    }
    for j in 0..size {
        for l in 0..size {
            edges.push((b0 + j, c0 + l));
        }
    }
    Ok(build(labels, edges))
}

/// Label of a vertex of the `Δ`-regular tree given by its child-index path.
pub fn tree_label(path: &[usize]) -> String {
    let mut s = String::from("r");
    for c in path {
        s.push('.');
        s.push_str(&c.to_string());
    }
    s
}

/// The `Δ`-regular tree truncated at `depth`: the root has `delta` children,
/// every other internal vertex `delta - 1`, leaves sit at `depth`.
pub fn tree_truncated(delta: usize, depth: usize) -> Result<Graph, FamilyError> {
    if delta < 2 {
        return Err(FamilyError::OutOfRange("tree needs delta >= 2".into()));
    }
    let mut total: u128 = 1;
    let mut level: u128 = 1;
    for d in 0..depth {
        level = level.saturating_mul(if d == 0 { delta } else { delta - 1 } as u128);
        total = total.saturating_add(level);
        if total > MAX_GENERATED_VERTICES as u128 {
            return Err(FamilyError::TooLarge(total));
        }
    }
    let mut labels = vec![tree_label(&[])];
    let mut paths: Vec<Vec<usize>> = vec![vec![]];
    let mut edges = Vec::new();
    let mut frontier = vec![0usize];
    for d in 0..depth {
        let width = if d == 0 { delta } else { delta - 1 };
        let mut next = Vec::new();
        for &parent in &frontier {
            for c in 0..width {
                let mut p = paths[parent].clone();
                p.push(c);
                let id = labels.len();
                labels.push(tree_label(&p));
                paths.push(p);
                edges.push((parent, id));
                next.push(id);
            }
        }
        frontier = next;
    }
    Ok(build(labels, edges))
}

/// Seeded random connected graph with maximum degree at most `delta`.
///
/// The procedure is fixed so that seeds stay portable:
/// 1. `ChaCha8Rng::seed_from_u64(seed)`; shuffle `0..n`.
/// 2. For each vertex after the first in shuffled order, join it to a
///    uniformly chosen earlier vertex whose degree is still below `delta`.
/// 3. Make `n` further attempts: draw `u`, `v` uniformly from `0..n`, add
///    the edge if `u != v`, it is new, and both degrees are below `delta`.
pub fn random_connected_max_degree(n: usize, delta: usize, seed: u64) -> Result<Graph, FamilyError> {
    if n < 1 || delta < 1 || (n >= 3 && delta < 2) {
        return Err(FamilyError::Infeasible { n, delta });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut degree = vec![0usize; n];
    let mut edges: HashSet<(Vertex, Vertex)> = HashSet::new();
    let mut edge_list = Vec::new();
    for i in 1..n {
        let open: Vec<Vertex> = order[..i].iter().copied().filter(|&u| degree[u] < delta).collect();
        let u = open[rng.gen_range(0..open.len())];
        let v = order[i];
        degree[u] += 1;
        degree[v] += 1;
        edges.insert((u.min(v), u.max(v)));
        edge_list.push((u, v));
    }
    for _ in 0..n {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        let key = (u.min(v), u.max(v));
        if u != v && degree[u] < delta && degree[v] < delta && !edges.contains(&key) {
            degree[u] += 1;
            degree[v] += 1;
            edges.insert(key);
            edge_list.push((u, v));
        }
    }
    Ok(build(numbered("v", n), edge_list))
}

/// Canonical code of a small graph: the least upper-triangle adjacency
/// bitstring over vertex orderings that respect a degree-based refinement.
fn canonical_code(n: usize, adj: &[u32]) -> u64 {
    let inv: Vec<(u32, Vec<u32>)> = (0..n)
        .map(|v| {
            let mut nd: Vec<u32> = (0..n).filter(|&u| adj[v] >> u & 1 == 1).map(|u| adj[u].count_ones()).collect();
            nd.sort_unstable();
            (adj[v].count_ones(), nd)
        })
        .collect();
    let mut verts: Vec<usize> = (0..n).collect();
    verts.sort_by(|&a, &b| inv[a].cmp(&inv[b]));
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for &v in &verts {
        match cells.last_mut() {
            Some(c) if inv[c[0]] == inv[v] => c.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut best = u64::MAX;
    let mut order = Vec::with_capacity(n);
    fn permute(cells: &mut [Vec<usize>], ci: usize, order: &mut Vec<usize>, adj: &[u32], best: &mut u64) {
        if ci == cells.len() {
            let n = order.len();
            let mut code = 0u64;
            let mut bit = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if adj[order[i]] >> order[j] & 1 == 1 {
                        code |= 1 << bit;
                    }
                    bit += 1;
                }
            }
            *best = (*best).min(code);
            return;
        }
        let len = cells[ci].len();
        heap_permutations(cells, ci, len, order, adj, best);
    }
    fn heap_permutations(
        cells: &mut [Vec<usize>],
        ci: usize,
        k: usize,
        order: &mut Vec<usize>,
        adj: &[u32],
        best: &mut u64,
    ) {
        if k <= 1 {
            let before = order.len();
            order.extend(cells[ci].iter().copied());
            permute(cells, ci + 1, order, adj, best);
            order.truncate(before);
            return;
        }
        heap_permutations(cells, ci, k - 1, order, adj, best);
        for i in 0..k - 1 {
            if k.is_multiple_of(2) {
                cells[ci].swap(i, k - 1);
            } else {
                cells[ci].swap(0, k - 1);
            }
            heap_permutations(cells, ci, k - 1, order, adj, best);
        }
    }
    permute(&mut cells, 0, &mut order, adj, &mut best);
    best
}

/// Every connected graph on `1..=max_n` vertices with maximum degree at most
/// `delta`, one per isomorphism class. Intended for `max_n <= 8`.
///
/// Each graph arises from a smaller one by adding a vertex, since removing a
/// non-cut vertex keeps a connected graph connected.
pub fn connected_graphs_max_degree(max_n: usize, delta: usize) -> Result<Vec<Graph>, FamilyError> {
    if max_n > 10 {
        return Err(FamilyError::OutOfRange("enumeration supports at most 10 vertices".into()));
    }
    let mut out = Vec::new();
    if max_n == 0 {
        return Ok(out);
    }
    let mut level: Vec<Vec<u32>> = vec![vec![0]];
    let mut n = 1;
    loop {
        for adj in &level {
            let edges = (0..n).flat_map(|u| (u + 1..n).filter(move |&v| adj[u] >> v & 1 == 1).map(move |v| (u, v)));
            out.push(build(numbered("v", n), edges.collect()));
        }
        if n == max_n {
            return Ok(out);
        }
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for adj in &level {
            let open: Vec<usize> = (0..n).filter(|&v| (adj[v].count_ones() as usize) < delta).collect();
            for mask in 1u32..(1 << open.len()) {
                if mask.count_ones() as usize > delta {
                    continue;
                }
                let mut g = adj.clone();
                g.push(0);
                for (i, &v) in open.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        g[v] |= 1 << n;
                        g[n] |= 1 << v;
                    }
                }
                if seen.insert(canonical_code(n + 1, &g)) {
                    next.push(g);
                }
            }
        }
        level = next;
        n += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_families() {
        let k4 = complete(4).unwrap();
        assert_eq!((k4.vertex_count(), k4.edge_count()), (4, 6));
        let c3 = cycle(3).unwrap();
        assert_eq!((c3.vertex_count(), c3.edge_count()), (3, 3));
        assert_eq!(c3.edges().collect::<Vec<_>>(), complete(3).unwrap().edges().collect::<Vec<_>>());
        let k33 = complete_bipartite(3, 3).unwrap();
        assert_eq!(k33.edge_count(), 9);
        assert_eq!(k33.max_degree(), Ok(3));
        assert!(cycle(2).is_err());
        assert!(complete(0).is_err());
        assert!(path(0).is_err());
        assert!(complete_bipartite(0, 2).is_err());
        let p = petersen();
        assert_eq!(p.edge_count(), 15);
        assert!(p.vertices().all(|v| p.degree(v) == 3));
        assert_eq!(p.diameter(), 2);
    }

    #[test]
    fn gnk_counts() {
        let g = gnk(4, 2).unwrap();
        assert_eq!(g.vertex_count(), 10);
        // Edge count by the construction rules: C(6,2) clique edges plus,
        // for every i, the subsets avoiding i.
        let subsets = combinations(4, 2);
        let clique = subsets.len() * (subsets.len() - 1) / 2;
        let cross: usize = (0..4).map(|i| subsets.iter().filter(|s| !s.contains(&i)).count()).sum();
        assert_eq!(clique + cross, 27);
        assert_eq!(g.edge_count(), 27);
        assert_eq!(g.label(4), "w{1,2}");
        let g31 = gnk(3, 1).unwrap();
        assert_eq!(g31.vertex_count(), 6);
        for i in 0..3 {
            assert_eq!(g31.neighbors(i).iter().filter(|&&w| w >= 3).count(), 2);
        }
        assert!(gnk(3, 3).is_err());
        assert!(gnk(3, 0).is_err());
    }

    #[test]
    fn gnk_adjacency_rule_exhaustive() {
        for n in 2..=6 {
            for k in 1..n {
                let g = gnk(n, k).unwrap();
                let subsets = combinations(n, k);
                assert_eq!(g.vertex_count(), n + subsets.len());
                for i in 0..n {
                    for (a, s) in subsets.iter().enumerate() {
                        assert_eq!(g.has_edge(i, n + a), !s.contains(&i));
                    }
                    for j in 0..n {
                        assert!(!g.has_edge(i, j));
                    }
                }
                for a in 0..subsets.len() {
                    for b in 0..subsets.len() {
                        assert_eq!(g.has_edge(n + a, n + b), a != b);
                    }
                }
            }
        }
    }

    #[test]
    fn gn_counts() {
        let g = gn(2).unwrap();
        assert_eq!(g.vertex_count(), 16);
        assert_eq!(g.edge_count(), 32);
        let labels: Vec<&str> = g.labels().iter().map(String::as_str).collect();
        assert_eq!(&labels[..4], &["a", "a1", "a01", "a11"]);
        assert_eq!(&labels[4..8], &["b00", "b01", "b10", "b11"]);
        let g1 = gn(1).unwrap();
        assert_eq!(g1.vertex_count(), 8);
        let a = g1.vertex_by_label("a").unwrap();
        let b0 = g1.vertex_by_label("b0").unwrap();
        let b1 = g1.vertex_by_label("b1").unwrap();
        assert!(g1.has_edge(a, b0) && g1.has_edge(a, b1));
        assert!(gn(0).is_err());
    }

    #[test]
    fn gn_prefix_rule_exhaustive() {
        for n in 1..=3 {
            let g = gn(n).unwrap();
            let size = 1 << n;
            let class = |v: Vertex| v / size;
            for u in g.vertices() {
                for v in g.vertices() {
                    let (lu, lv) = (g.label(u), g.label(v));
                    let expect = match (class(u), class(v)) {
                        (0, 1) => lv[1..].starts_with(&lu[1..]),
                        (1, 0) => lu[1..].starts_with(&lv[1..]),
                        (3, 2) => lv[1..].starts_with(&lu[1..]),
                        (2, 3) => lu[1..].starts_with(&lv[1..]),
                        (1, 2) | (2, 1) => true,
                        _ => false,
                    };
                    assert_eq!(g.has_edge(u, v), expect, "{lu} {lv}");
                }
            }
        }
    }

    #[test]
    fn trees() {
        let t = tree_truncated(3, 1).unwrap();
        assert_eq!((t.vertex_count(), t.max_degree().unwrap()), (4, 3));
        let t = tree_truncated(3, 2).unwrap();
        assert_eq!(t.vertex_count(), 10);
        assert_eq!(t.edge_count(), 9);
        assert!(t.is_connected());
        let p = tree_truncated(2, 4).unwrap();
        assert_eq!(p.vertex_count(), 9);
        assert_eq!(p.max_degree(), Ok(2));
        assert_eq!(p.diameter(), 8);
        assert!(tree_truncated(1, 3).is_err());
        assert!(matches!(tree_truncated(10, 40), Err(FamilyError::TooLarge(_))));
    }

    #[test]
    fn random_graphs() {
        assert_eq!(random_connected_max_degree(1, 3, 7).unwrap().vertex_count(), 1);
        for seed in 0..20 {
            let g = random_connected_max_degree(5, 2, seed).unwrap();
            assert!(g.is_connected());
            assert!(g.edge_count() == 4 || g.edge_count() == 5);
            assert!(g.max_degree().unwrap() <= 2);
            let h = random_connected_max_degree(8, 3, seed).unwrap();
            assert!(h.is_connected() && h.max_degree().unwrap() <= 3);
            assert_eq!(h, random_connected_max_degree(8, 3, seed).unwrap());
        }
        assert!(random_connected_max_degree(4, 1, 0).is_err());
        assert!(random_connected_max_degree(0, 3, 0).is_err());
    }

    #[test]
    fn enumeration_counts() {
        // Connected graphs up to isomorphism on 1..=5 vertices: 1, 1, 2, 6, 21.
        let all = connected_graphs_max_degree(5, 10).unwrap();
        let count = |n| all.iter().filter(|g| g.vertex_count() == n).count();
        assert_eq!((1..=5).map(count).collect::<Vec<_>>(), vec![1, 1, 2, 6, 21]);
        // Connected graphs with maximum degree at most 2 are paths and cycles.
        let low = connected_graphs_max_degree(6, 2).unwrap();
        let count = |n| low.iter().filter(|g| g.vertex_count() == n).count();
        assert_eq!((1..=6).map(count).collect::<Vec<_>>(), vec![1, 1, 2, 2, 2, 2]);
        // Connected cubic graphs on 6 vertices: K_{3,3} and the prism.
        let cubic = connected_graphs_max_degree(6, 3)
            .unwrap()
            .into_iter()
            .filter(|g| g.vertex_count() == 6 && g.vertices().all(|v| g.degree(v) == 3))
            .count();
        assert_eq!(cubic, 2);
    }

    #[test]
    fn combinations_lex() {
        assert_eq!(combinations(4, 2), vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }
}
