//! Retract and core-graph searches: a graph is a core graph iff it has
//! no proper retract, iff every endomorphism is injective.

use super::solver::GuardExceeded;
use crate::bits::BitSet;
use crate::graph::Graph;

/// Backtracking search for a homomorphism `g -> h` with forced
/// assignments, in static vertex order with forward degree filtering.
fn find_homomorphism(g: &Graph, h: &Graph, forced: &[(usize, usize)]) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let hn = h.vertex_count();
    if n == 0 {
        return Some(Vec::new());
    }
    if hn == 0 {
        return None;
    }
    let mut domains: Vec<BitSet> = vec![BitSet::full(hn); n];
    for &(v, w) in forced {
        let mut d = BitSet::new(hn);
        d.set(w);
        domains[v] = d;
    }
    // Assign high-degree vertices first.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then(a.cmp(&b)));
    let mut assignment = vec![usize::MAX; n];
    fn recurse(
        g: &Graph,
        h: &Graph,
        order: &[usize],
        domains: &[BitSet],
        assignment: &mut Vec<usize>,
        depth: usize,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        for w in domains[v].iter_ones() {
            let ok = g.neighbors(v).iter_ones().all(|u| {
                let fu = assignment[u];
                fu == usize::MAX || (fu != w && h.has_edge(fu, w))
            });
            if ok {
                assignment[v] = w;
                if recurse(g, h, order, domains, assignment, depth + 1) {
                    return true;
                }
                assignment[v] = usize::MAX;
            }
        }
        false
    }
    if recurse(g, h, &order, &domains, &mut assignment, 0) {
        Some(assignment)
    } else {
        None
    }
}

/// First endomorphism (in pair/target order) identifying two distinct
/// vertices, if any. Only nonadjacent pairs can be identified.
fn noninjective_endomorphism(g: &Graph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(u, v) {
                continue;
            }
            for w in 0..n {
                if let Some(f) = find_homomorphism(g, g, &[(u, w), (v, w)]) {
                    return Some(f);
                }
            }
        }
    }
    None
}

/// `g` is a core graph iff it admits no homomorphism onto a proper
/// induced subgraph fixing that subgraph; equivalently, iff every
/// endomorphism is injective.
pub fn is_core_graph(g: &Graph, guard: usize) -> Result<bool, GuardExceeded> {
    if g.vertex_count() > guard {
        return Err(GuardExceeded {
            operation: "is_core_graph",
            size: g.vertex_count(),
            guard,
        });
    }
    Ok(noninjective_endomorphism(g).is_none())
}

/// Iterates a function on vertex indices to an idempotent power. The
/// image of an idempotent endomorphism is a retract.
fn idempotent_power(f: &[usize]) -> Vec<usize> {
    let compose = |a: &[usize], b: &[usize]| -> Vec<usize> { b.iter().map(|&x| a[x]).collect() };
    let mut seen: Vec<Vec<usize>> = vec![f.to_vec()];
    loop {
        let next = compose(seen.last().unwrap(), f);
        if let Some(t) = seen.iter().position(|p| *p == next) {
            // seen[i] = f^(i+1); the cycle has entry t and period s - t.
            let s = seen.len();
            let period = s - t;
            let mut m = t + 1;
            if m % period != 0 {
                m += period - m % period;
            }
            return seen[m - 1].clone();
        }
        seen.push(next);
    }
}

/// Retracts until no proper retract remains; the result is the core graph
/// of `g`, unique up to isomorphism. Labels carry over from `g`.
pub fn graph_core_up_to_iso(g: &Graph, guard: usize) -> Result<Graph, GuardExceeded> {
    if g.vertex_count() > guard {
        return Err(GuardExceeded {
            operation: "graph_core_up_to_iso",
            size: g.vertex_count(),
            guard,
        });
    }
    let mut current = g.clone();
    while let Some(f) = noninjective_endomorphism(&current) {
        let r = idempotent_power(&f);
        debug_assert!(r
            .iter()
            .enumerate()
            .all(|(x, &fx)| r[fx] == fx && x < r.len()));
        let image: Vec<usize> = (0..current.vertex_count()).filter(|&v| r[v] == v).collect();
        debug_assert!(image.len() < current.vertex_count());
        current = current.induced(&image);
    }
    Ok(current)
}

/// Searches for a partition `V = K ∪ D` with `K` inducing a core graph
/// and `D` independent. Returns the first such partition found.
pub fn is_generalized_split(
    g: &Graph,
    guard: usize,
) -> Result<Option<(Vec<usize>, Vec<usize>)>, GuardExceeded> {
    let n = g.vertex_count();
    if n > guard {
        return Err(GuardExceeded {
            operation: "is_generalized_split",
            size: n,
            guard,
        });
    }
    let mut independent: Vec<usize> = Vec::new();
    fn search(
        g: &Graph,
        v: usize,
        independent: &mut Vec<usize>,
        guard: usize,
    ) -> Option<(Vec<usize>, Vec<usize>)> {
        let n = g.vertex_count();
        if v == n {
            let k: Vec<usize> = (0..n).filter(|x| !independent.contains(x)).collect();
            let core_ok = is_core_graph(&g.induced(&k), guard).expect("k fits the guard");
            if core_ok {
                return Some((k, independent.clone()));
            }
            return None;
        }
        // Exclude v first, so the clique side stays as large as possible.
        if let Some(found) = search(g, v + 1, independent, guard) {
            return Some(found);
        }
        if independent.iter().all(|&d| !g.has_edge(d, v)) {
            independent.push(v);
            if let Some(found) = search(g, v + 1, independent, guard) {
                independent.pop();
                return Some(found);
            }
            independent.pop();
        }
        None
    }
    Ok(search(g, 0, &mut independent, guard))
}
