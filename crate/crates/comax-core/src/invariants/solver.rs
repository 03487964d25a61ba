//! Exact maximum clique and chromatic number by branch and bound over
//! bit-set adjacency. Deterministic: static lowest-index tie-breaking,
//! no randomization.

use crate::bits::BitSet;
use crate::graph::Graph;
use thiserror::Error;

#[derive(Debug, Error)]
#[error("{operation}: {size} vertices exceed the guard of {guard}")]
pub struct GuardExceeded {
    pub operation: &'static str,
    pub size: usize,
    pub guard: usize,
}

/// An exact maximum clique (vertex indices, ascending).
///
/// Branch and bound with a greedy-coloring upper bound, in the style of
/// Tomita's MCQ.
pub fn max_clique(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut best = Vec::new();
    let mut current = Vec::new();
    let mut candidates = BitSet::new(n);
    for v in 0..n {
        candidates.set(v);
    }
    expand(g, &mut current, &candidates, &mut best);
    best.sort_unstable();
    best
}

fn expand(g: &Graph, current: &mut Vec<usize>, candidates: &BitSet, best: &mut Vec<usize>) {
    if candidates.is_empty() {
        if current.len() > best.len() {
            *best = current.clone();
        }
        return;
    }
    let (order, bounds) = color_sort(g, candidates);
    let mut remaining = candidates.clone();
    for i in (0..order.len()).rev() {
        if current.len() + bounds[i] <= best.len() {
            return;
        }
        let v = order[i];
        current.push(v);
        let next = remaining.intersection(g.neighbors(v));
        expand(g, current, &next, best);
        current.pop();
        remaining.unset(v);
    }
}

/// Greedy coloring of the candidate set; vertices come back ordered by
/// color class, so `bounds[i]` caps any clique inside `order[..=i]`.
fn color_sort(g: &Graph, candidates: &BitSet) -> (Vec<usize>, Vec<usize>) {
    let mut uncolored = candidates.clone();
    let mut order = Vec::new();
    let mut bounds = Vec::new();
    let mut color = 0;
    while !uncolored.is_empty() {
        color += 1;
        let mut available = uncolored.clone();
        while let Some(v) = available.first() {
            available.unset(v);
            available.difference_with(g.neighbors(v));
            uncolored.unset(v);
            order.push(v);
            bounds.push(color);
        }
    }
    (order, bounds)
}

/// Exact clique number, guarded by the solver vertex cap.
pub fn clique_number(g: &Graph, guard: usize) -> Result<usize, GuardExceeded> {
    if g.vertex_count() > guard {
        return Err(GuardExceeded {
            operation: "clique_number",
            size: g.vertex_count(),
            guard,
        });
    }
    Ok(max_clique(g).len())
}

/// Exact chromatic number: clique lower bound, greedy upper bound, then
/// k-colorability by DSATUR backtracking for the gap.
pub fn chromatic_number(g: &Graph, guard: usize) -> Result<usize, GuardExceeded> {
    let n = g.vertex_count();
    if n > guard {
        return Err(GuardExceeded {
            operation: "chromatic_number",
            size: n,
            guard,
        });
    }
    if n == 0 {
        return Ok(0);
    }
    let clique = max_clique(g);
    let lower = clique.len();
    let upper = greedy_coloring_count(g);
    for k in lower..upper {
        if k_colorable(g, k, &clique) {
            return Ok(k);
        }
    }
    Ok(upper)
}

/// Number of colors used by greedy coloring in Welsh-Powell order.
fn greedy_coloring_count(g: &Graph) -> usize {
    let n = g.vertex_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then(a.cmp(&b)));
    let mut color = vec![usize::MAX; n];
    let mut used = 0;
    for &v in &order {
        let mut taken = vec![false; used + 1];
        for u in g.neighbors(v).iter_ones() {
            if color[u] != usize::MAX {
                taken[color[u]] = true;
            }
        }
        let c = (0..=used).find(|&c| !taken[c]).unwrap();
        color[v] = c;
        used = used.max(c + 1);
    }
    used
}

/// Backtracking k-colorability with the clique precolored and only one
/// fresh color index tried per step.
fn k_colorable(g: &Graph, k: usize, clique: &[usize]) -> bool {
    if clique.len() > k {
        return false;
    }
    let n = g.vertex_count();
    let mut color: Vec<usize> = vec![usize::MAX; n];
    for (i, &v) in clique.iter().enumerate() {
        color[v] = i;
    }
    let max_used = clique.len().saturating_sub(1);
    dsatur(g, k, &mut color, n - clique.len(), max_used)
}

fn dsatur(g: &Graph, k: usize, color: &mut Vec<usize>, uncolored: usize, max_used: usize) -> bool {
    if uncolored == 0 {
        return true;
    }
    // Most saturated vertex, breaking ties by degree then index.
    let n = g.vertex_count();
    let mut pick = usize::MAX;
    let mut pick_sat = 0;
    for v in 0..n {
        if color[v] != usize::MAX {
            continue;
        }
        let mut seen = vec![false; k];
        let mut sat = 0;
        for u in g.neighbors(v).iter_ones() {
            if color[u] != usize::MAX && !seen[color[u]] {
                seen[color[u]] = true;
                sat += 1;
            }
        }
        if pick == usize::MAX || sat > pick_sat || (sat == pick_sat && g.degree(v) > g.degree(pick))
        {
            pick = v;
            pick_sat = sat;
        }
    }
    let mut forbidden = vec![false; k];
    for u in g.neighbors(pick).iter_ones() {
        if color[u] != usize::MAX {
            forbidden[color[u]] = true;
        }
    }
    let fresh_limit = (max_used + 1).min(k - 1);
    for c in 0..=fresh_limit {
        if forbidden[c] {
            continue;
        }
        color[pick] = c;
        if dsatur(g, k, color, uncolored - 1, max_used.max(c)) {
            return true;
        }
        color[pick] = usize::MAX;
        // Fresh color indices are interchangeable; trying one is enough.
        if c > max_used {
            break;
        }
    }
    false
}
