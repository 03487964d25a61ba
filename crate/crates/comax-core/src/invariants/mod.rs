//! Exact graph invariants: distances, girth, bipartite/star/split
//! recognition, cores and end vertices, clique and chromatic numbers,
//! retract searches, and isomorphism.

mod iso;
mod retract;
mod solver;

pub use iso::{classify_shape, isomorphic, Shape};
pub use retract::{graph_core_up_to_iso, is_core_graph, is_generalized_split};
pub use solver::{chromatic_number, clique_number, max_clique, GuardExceeded};

use crate::bits::BitSet;
use crate::graph::Graph;
use serde::Serialize;
use std::fmt;

/// A graph distance or cycle length that may be infinite.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Dist {
    Finite(u32),
    Infinite,
}

impl Dist {
    pub fn as_finite(self) -> Option<u32> {
        match self {
            Dist::Finite(d) => Some(d),
            Dist::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Dist::Finite(_))
    }
}

impl PartialOrd for Dist {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dist {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self, other) {
            (Dist::Finite(a), Dist::Finite(b)) => a.cmp(b),
            (Dist::Finite(_), Dist::Infinite) => std::cmp::Ordering::Less,
            (Dist::Infinite, Dist::Finite(_)) => std::cmp::Ordering::Greater,
            (Dist::Infinite, Dist::Infinite) => std::cmp::Ordering::Equal,
        }
    }
}

impl fmt::Display for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dist::Finite(d) => write!(f, "{d}"),
            Dist::Infinite => write!(f, "inf"),
        }
    }
}

/// BFS distances from `root`; `u32::MAX` marks unreachable vertices.
pub fn bfs_distances(g: &Graph, root: usize) -> Vec<u32> {
    let n = g.vertex_count();
    let mut dist = vec![u32::MAX; n];
    let mut visited = BitSet::new(n);
    let mut frontier = BitSet::new(n);
    visited.set(root);
    frontier.set(root);
    dist[root] = 0;
    let mut level = 0;
    while !frontier.is_empty() {
        level += 1;
        let mut next = BitSet::new(n);
        for u in frontier.iter_ones() {
            next.union_with(g.neighbors(u));
        }
        next.difference_with(&visited);
        for v in next.iter_ones() {
            dist[v] = level;
        }
        visited.union_with(&next);
        frontier = next;
    }
    dist
}

pub fn is_connected(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n <= 1 {
        return true;
    }
    bfs_distances(g, 0).iter().all(|&d| d != u32::MAX)
}

/// Longest shortest-path length; infinite when disconnected, 0 on graphs
/// with fewer than two vertices.
pub fn diameter(g: &Graph) -> Dist {
    let n = g.vertex_count();
    if n <= 1 {
        return Dist::Finite(0);
    }
    let mut max = 0;
    for v in 0..n {
        for &d in &bfs_distances(g, v) {
            if d == u32::MAX {
                return Dist::Infinite;
            }
            max = max.max(d);
        }
    }
    Dist::Finite(max)
}

/// Length of a shortest cycle; infinite for forests.
pub fn girth(g: &Graph) -> Dist {
    let n = g.vertex_count();
    // Dense graphs almost always have triangles; catch those by bit-row
    // intersections before the BFS sweeps.
    for u in 0..n {
        for v in g.neighbors(u).iter_ones() {
            if u < v && !g.neighbors(u).is_disjoint(g.neighbors(v)) {
                return Dist::Finite(3);
            }
        }
    }
    let mut best = u32::MAX;
    for root in 0..n {
        let mut dist = vec![u32::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = std::collections::VecDeque::new();
        dist[root] = 0;
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            if dist[u].saturating_mul(2) >= best {
                break;
            }
            for w in g.neighbors(u).iter_ones() {
                if dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if w != parent[u] {
                    best = best.min(dist[u] + dist[w] + 1);
                }
            }
        }
        // No triangle exists, so 4 cannot be beaten.
        if best == 4 {
            return Dist::Finite(4);
        }
    }
    if best == u32::MAX {
        Dist::Infinite
    } else {
        Dist::Finite(best)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub enum BipartiteClass {
    NotBipartite,
    /// 2-colorable; part sizes of the BFS coloring (lowest-index roots
    /// take color 0).
    Bipartite {
        parts: (usize, usize),
    },
    /// 2-colorable with every cross pair an edge.
    CompleteBipartite {
        parts: (usize, usize),
    },
}

pub fn bipartite_class(g: &Graph) -> BipartiteClass {
    let n = g.vertex_count();
    let mut color = vec![u8::MAX; n];
    for root in 0..n {
        if color[root] != u8::MAX {
            continue;
        }
        color[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for v in g.neighbors(u).iter_ones() {
                if color[v] == u8::MAX {
                    color[v] = 1 - color[u];
                    queue.push_back(v);
                } else if color[v] == color[u] {
                    return BipartiteClass::NotBipartite;
                }
            }
        }
    }
    let m = color.iter().filter(|&&c| c == 0).count();
    let parts = (m, n - m);
    if parts.0 > 0 && parts.1 > 0 && g.edge_count() == parts.0 * parts.1 {
        BipartiteClass::CompleteBipartite { parts }
    } else {
        BipartiteClass::Bipartite { parts }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub enum StarClass {
    NotStar,
    /// Some vertex is adjacent to every other, but the rest is not
    /// independent.
    RefinementOfStar {
        center: usize,
    },
    /// `K_{1,n}`: a center plus `n` independent leaves.
    Star {
        center: usize,
        leaves: usize,
    },
}

pub fn star_class(g: &Graph) -> StarClass {
    let n = g.vertex_count();
    if n < 2 {
        return StarClass::NotStar;
    }
    let Some(center) = (0..n).find(|&v| g.degree(v) == n - 1) else {
        return StarClass::NotStar;
    };
    let rest_independent = g.edge_count() == n - 1;
    if rest_independent {
        StarClass::Star {
            center,
            leaves: n - 1,
        }
    } else {
        StarClass::RefinementOfStar { center }
    }
}

/// A split partition: `clique` induces a complete graph, `independent` a
/// discrete one. `independent` is enlarged to a maximal independent set.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SplitPartition {
    pub clique: Vec<usize>,
    pub independent: Vec<usize>,
    pub independent_maximal: bool,
}

/// Split recognition by the degree-sequence criterion, cross-checked by
/// explicit partition construction.
pub fn split_analysis(g: &Graph) -> Option<SplitPartition> {
    let n = g.vertex_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then(a.cmp(&b)));
    let degs: Vec<usize> = order.iter().map(|&v| g.degree(v)).collect();
    let m = (0..n).take_while(|&i| degs[i] >= i).count();
    let lhs: usize = degs[..m].iter().sum();
    let rhs: usize = m * m.saturating_sub(1) + degs[m..].iter().map(|&d| d.min(m)).sum::<usize>();
    if lhs != rhs {
        return None;
    }
    let mut clique: Vec<usize> = order[..m].to_vec();
    let mut independent: Vec<usize> = order[m..].to_vec();
    clique.sort_unstable();
    independent.sort_unstable();
    for (i, &u) in clique.iter().enumerate() {
        for &v in &clique[i + 1..] {
            assert!(g.has_edge(u, v), "degree criterion produced a non-clique");
        }
    }
    for (i, &u) in independent.iter().enumerate() {
        for &v in &independent[i + 1..] {
            assert!(
                !g.has_edge(u, v),
                "degree criterion produced a dependent set"
            );
        }
    }
    // Enlarge the independent side to a maximal independent set, moving
    // clique vertices with no independent-set neighbor (lowest first).
    loop {
        let movable = clique
            .iter()
            .position(|&v| independent.iter().all(|&d| !g.has_edge(v, d)));
        match movable {
            Some(pos) => {
                let v = clique.remove(pos);
                independent.push(v);
                independent.sort_unstable();
            }
            None => break,
        }
    }
    debug_assert!(clique
        .iter()
        .all(|&v| independent.iter().any(|&d| g.has_edge(v, d))));
    Some(SplitPartition {
        clique,
        independent,
        independent_maximal: true,
    })
}

/// The core decomposition: vertices on cycles, end vertices, and what the
/// short-cycle cover misses.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CoreReport {
    /// Vertices lying on some cycle.
    pub core: Vec<usize>,
    /// Vertices of degree exactly one.
    pub ends: Vec<usize>,
    /// Vertices that are neither end vertices nor core vertices.
    pub unclassified: Vec<usize>,
    /// Core vertices on no 3- or 4-cycle of the core subgraph.
    pub uncovered_vertices: Vec<usize>,
    /// Core edges on no 3- or 4-cycle of the core subgraph.
    pub uncovered_edges: Vec<(usize, usize)>,
}

/// A vertex lies on a cycle iff one of its edges is not a bridge.
pub fn core_and_ends(g: &Graph) -> CoreReport {
    let n = g.vertex_count();
    let bridges = find_bridges(g);
    let mut on_cycle = vec![false; n];
    for u in 0..n {
        for v in g.neighbors(u).iter_ones() {
            if u < v && !bridges.contains(&(u, v)) {
                on_cycle[u] = true;
                on_cycle[v] = true;
            }
        }
    }
    let core: Vec<usize> = (0..n).filter(|&v| on_cycle[v]).collect();
    let ends: Vec<usize> = (0..n).filter(|&v| g.degree(v) == 1).collect();
    let unclassified: Vec<usize> = (0..n)
        .filter(|&v| !on_cycle[v] && g.degree(v) != 1)
        .collect();

    let sub = g.induced(&core);
    let cn = sub.vertex_count();
    let on3: Vec<bool> = (0..cn)
        .map(|v| {
            sub.neighbors(v)
                .iter_ones()
                .any(|u| !sub.neighbors(v).is_disjoint(sub.neighbors(u)))
        })
        .collect();
    let on4 = |v: usize| -> bool {
        let nv: Vec<usize> = sub.neighbors(v).to_vec();
        for (i, &u) in nv.iter().enumerate() {
            for &w in &nv[i + 1..] {
                let mut common = sub.neighbors(u).intersection(sub.neighbors(w));
                common.unset(v);
                if !common.is_empty() {
                    return true;
                }
            }
        }
        false
    };
    let uncovered_vertices: Vec<usize> = (0..cn)
        .filter(|&v| !on3[v] && !on4(v))
        .map(|v| core[v])
        .collect();

    let edge_on_short_cycle = |u: usize, v: usize| -> bool {
        if !sub.neighbors(u).is_disjoint(sub.neighbors(v)) {
            return true;
        }
        for u2 in sub.neighbors(u).iter_ones().filter(|&x| x != v) {
            let mut targets = sub.neighbors(u2).intersection(sub.neighbors(v));
            targets.unset(u);
            targets.unset(u2);
            if !targets.is_empty() {
                return true;
            }
        }
        false
    };
    let mut uncovered_edges = Vec::new();
    for (u, v) in sub.edges() {
        if !edge_on_short_cycle(u, v) {
            uncovered_edges.push((core[u], core[v]));
        }
    }

    CoreReport {
        core,
        ends,
        unclassified,
        uncovered_vertices,
        uncovered_edges,
    }
}

/// Bridge edges (u < v) via an iterative lowlink DFS.
fn find_bridges(g: &Graph) -> std::collections::HashSet<(usize, usize)> {
    let n = g.vertex_count();
    let mut bridges = std::collections::HashSet::new();
    let mut disc = vec![u32::MAX; n];
    let mut low = vec![u32::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut timer = 0;
    for root in 0..n {
        if disc[root] != u32::MAX {
            continue;
        }
        // Stack of (vertex, neighbor iterator position).
        let mut stack: Vec<(usize, Vec<usize>, usize)> = Vec::new();
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        stack.push((root, g.neighbors(root).to_vec(), 0));
        while let Some(&mut (u, ref nbrs, ref mut idx)) = stack.last_mut() {
            if *idx < nbrs.len() {
                let v = nbrs[*idx];
                *idx += 1;
                if disc[v] == u32::MAX {
                    parent[v] = u;
                    disc[v] = timer;
                    low[v] = timer;
                    timer += 1;
                    stack.push((v, g.neighbors(v).to_vec(), 0));
                } else if v != parent[u] {
                    low[u] = low[u].min(disc[v]);
                }
            } else {
                stack.pop();
                if let Some(&mut (p, _, _)) = stack.last_mut() {
                    low[p] = low[p].min(low[u]);
                    if low[u] > disc[p] {
                        bridges.insert((p.min(u), p.max(u)));
                    }
                }
            }
        }
    }
    bridges
}

/// Detects whether `v` lies on a cycle of length exactly five.
pub fn on_five_cycle(g: &Graph, v: usize) -> bool {
    let nv: Vec<usize> = g.neighbors(v).to_vec();
    for (i, &a) in nv.iter().enumerate() {
        for &d in &nv[i + 1..] {
            // Seek a path a - b - c - d avoiding v.
            for b in g.neighbors(a).iter_ones() {
                if b == v || b == d || b == a {
                    continue;
                }
                let mut cs = g.neighbors(b).intersection(g.neighbors(d));
                cs.unset(v);
                cs.unset(a);
                cs.unset(b);
                cs.unset(d);
                if !cs.is_empty() {
                    return true;
                }
            }
        }
    }
    false
}

/// Detects whether `v` lies on a triangle or a 4-cycle.
pub fn on_short_cycle(g: &Graph, v: usize) -> bool {
    let nv: Vec<usize> = g.neighbors(v).to_vec();
    for (i, &u) in nv.iter().enumerate() {
        if !g.neighbors(v).is_disjoint(g.neighbors(u)) {
            return true;
        }
        for &w in &nv[i + 1..] {
            let mut common = g.neighbors(u).intersection(g.neighbors(w));
            common.unset(v);
            if !common.is_empty() {
                return true;
            }
        }
    }
    false
}
