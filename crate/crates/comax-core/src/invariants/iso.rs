//! Graph isomorphism: structural fast paths for the labeled shapes that
//! arise from rings at any size, plus generic backtracking under a guard.

use super::solver::GuardExceeded;
use super::{bipartite_class, BipartiteClass};
use crate::graph::Graph;

/// Shapes recognized exactly at any size. `CompleteBipartite` is stored
/// with the smaller part first; `K_{1,n}` is a special case of it.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Shape {
    Complete(usize),
    Discrete(usize),
    CompleteBipartite(usize, usize),
}

/// Classifies a graph if it matches a recognized shape. The precedence
/// (complete, then discrete, then complete bipartite) is a function of
/// the isomorphism class, so equal shapes mean isomorphic graphs.
pub fn classify_shape(g: &Graph) -> Option<Shape> {
    let n = g.vertex_count();
    let e = g.edge_count();
    if e == n * n.saturating_sub(1) / 2 {
        return Some(Shape::Complete(n));
    }
    if e == 0 {
        return Some(Shape::Discrete(n));
    }
    if let BipartiteClass::CompleteBipartite { parts: (a, b) } = bipartite_class(g) {
        return Some(Shape::CompleteBipartite(a.min(b), a.max(b)));
    }
    None
}

/// Exact isomorphism. Recognized shapes and one level of join peeling
/// (universal vertices removed, components classified) decide graphs of
/// any size; everything else goes through backtracking, guarded at
/// `iso_guard` vertices.
pub fn isomorphic(g: &Graph, h: &Graph, iso_guard: usize) -> Result<bool, GuardExceeded> {
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    if degree_multiset(g) != degree_multiset(h) {
        return Ok(false);
    }
    if let (Some(a), Some(b)) = (classify_shape(g), classify_shape(h)) {
        return Ok(a == b);
    }
    if let (Some(a), Some(b)) = (join_peel(g), join_peel(h)) {
        return Ok(a == b);
    }
    let n = g.vertex_count();
    if n > iso_guard {
        return Err(GuardExceeded {
            operation: "isomorphic",
            size: n,
            guard: iso_guard,
        });
    }
    Ok(backtrack_isomorphic(g, h))
}

fn degree_multiset(g: &Graph) -> Vec<usize> {
    let mut d: Vec<usize> = (0..g.vertex_count()).map(|v| g.degree(v)).collect();
    d.sort_unstable();
    d
}

/// Canonical decomposition of a graph with universal vertices: the join
/// of a complete graph on them with the rest, described by the sorted
/// shapes of the rest's components. `None` if there are no universal
/// vertices or a component shape is unrecognized.
fn join_peel(g: &Graph) -> Option<(usize, Vec<Shape>)> {
    let universal = g.universal_vertices();
    if universal.is_empty() {
        return None;
    }
    let rest: Vec<usize> = (0..g.vertex_count())
        .filter(|v| !universal.contains(v))
        .collect();
    let sub = g.induced(&rest);
    let mut shapes: Vec<Shape> = Vec::new();
    for comp in components(&sub) {
        shapes.push(classify_shape(&sub.induced(&comp))?);
    }
    shapes.sort();
    Some((universal.len(), shapes))
}

fn components(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        let mut comp = vec![root];
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for v in g.neighbors(u).iter_ones() {
                if !seen[v] {
                    seen[v] = true;
                    comp.push(v);
                    queue.push_back(v);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn backtrack_isomorphic(g: &Graph, h: &Graph) -> bool {
    let n = g.vertex_count();
    // Candidate targets must match on degree and sorted neighbor degrees.
    let sig = |graph: &Graph, v: usize| -> (usize, Vec<usize>) {
        let mut nd: Vec<usize> = graph
            .neighbors(v)
            .iter_ones()
            .map(|u| graph.degree(u))
            .collect();
        nd.sort_unstable();
        (graph.degree(v), nd)
    };
    let gsig: Vec<_> = (0..n).map(|v| sig(g, v)).collect();
    let hsig: Vec<_> = (0..n).map(|v| sig(h, v)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then(a.cmp(&b)));
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn recurse(
        g: &Graph,
        h: &Graph,
        order: &[usize],
        gsig: &[(usize, Vec<usize>)],
        hsig: &[(usize, Vec<usize>)],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        depth: usize,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        for w in 0..h.vertex_count() {
            if used[w] || gsig[v] != hsig[w] {
                continue;
            }
            let consistent = (0..g.vertex_count())
                .all(|u| map[u] == usize::MAX || g.has_edge(u, v) == h.has_edge(map[u], w));
            if consistent {
                map[v] = w;
                used[w] = true;
                if recurse(g, h, order, gsig, hsig, map, used, depth + 1) {
                    return true;
                }
                map[v] = usize::MAX;
                used[w] = false;
            }
        }
        false
    }
    recurse(g, h, &order, &gsig, &hsig, &mut map, &mut used, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_omega, sequential_sum, Graph};
    use crate::ring::{BaseSpec, Ring, RingSpec};

    #[test]
    fn shape_classification() {
        assert_eq!(
            classify_shape(&Graph::complete(4)),
            Some(Shape::Complete(4))
        );
        assert_eq!(
            classify_shape(&Graph::discrete(3)),
            Some(Shape::Discrete(3))
        );
        assert_eq!(
            classify_shape(&Graph::complete_bipartite(4, 2)),
            Some(Shape::CompleteBipartite(2, 4))
        );
        assert_eq!(
            classify_shape(&Graph::star(3)),
            Some(Shape::CompleteBipartite(1, 3))
        );
        assert_eq!(classify_shape(&Graph::cycle(5)), None);
        // K2 classifies as complete regardless of how it was built.
        assert_eq!(
            classify_shape(&Graph::complete_bipartite(1, 1)),
            Some(Shape::Complete(2))
        );
    }

    #[test]
    fn basic_isomorphism() {
        assert!(!isomorphic(&Graph::complete(3), &Graph::star(2), 16).unwrap());
        assert!(isomorphic(&Graph::cycle(4), &Graph::complete_bipartite(2, 2), 16).unwrap());
        assert!(!isomorphic(&Graph::cycle(6), &Graph::complete_bipartite(3, 3), 16).unwrap());
        assert!(isomorphic(&Graph::path(3), &Graph::star(2), 16).unwrap());
    }

    #[test]
    fn omega_of_z2_cubed_is_k1_k1_h() {
        let r = Ring::new(RingSpec::new(vec![BaseSpec::Zn(2); 3])).unwrap();
        let omega = build_omega(&r);
        let sum = sequential_sum(&[
            Graph::complete(1),
            Graph::complete(1),
            Graph::triangle_with_pendants(),
        ]);
        assert!(isomorphic(&omega, &sum, 16).unwrap());
        // And not isomorphic to the wrong pendant wiring.
        let mut b = crate::graph::GraphBuilder::abstract_vertices(6);
        for (u, v) in [(0, 1), (1, 2), (0, 2), (0, 3), (0, 4), (1, 5)] {
            b.add_edge(u, v);
        }
        let wrong_h = b.finish();
        let wrong = sequential_sum(&[Graph::complete(1), Graph::complete(1), wrong_h]);
        assert!(!isomorphic(&omega, &wrong, 16).unwrap());
    }

    #[test]
    fn omega_of_z2_gf4_peels_as_k1_k3_k13() {
        let r = Ring::new(RingSpec::new(vec![
            BaseSpec::Zn(2),
            BaseSpec::Gf { p: 2, k: 2 },
        ]))
        .unwrap();
        let omega = build_omega(&r);
        let sum = sequential_sum(&[Graph::complete(1), Graph::complete(3), Graph::star(3)]);
        assert!(isomorphic(&omega, &sum, 16).unwrap());
    }

    #[test]
    fn join_peel_handles_large_graphs() {
        // K1 + K_m + K_{1,m} at a size beyond the backtracking guard.
        let m = 40;
        let a = sequential_sum(&[Graph::complete(1), Graph::complete(m), Graph::star(m)]);
        let b = sequential_sum(&[Graph::complete(1), Graph::complete(m), Graph::star(m)]);
        assert!(isomorphic(&a, &b, 16).unwrap());
        let c = sequential_sum(&[Graph::complete(2), Graph::complete(m - 1), Graph::star(m)]);
        assert!(!isomorphic(&a, &c, 16).unwrap());
    }

    #[test]
    fn guard_on_unrecognized_large_graphs() {
        let a = Graph::cycle(20);
        let b = Graph::cycle(20);
        assert!(isomorphic(&a, &b, 16).is_err());
        assert!(isomorphic(&a, &b, 20).unwrap());
    }
}
