//! Property tests over randomly generated small rings and graphs.

use comax_core::graph::{
    build_gamma, build_gamma_r, build_omega, collapse_false_twins, collapse_false_twins_by_rows,
    gamma_signatures, retraction_gamma_to_gamma_r, sequential_sum, GraphBuilder,
};
use comax_core::invariants::{chromatic_number, clique_number, girth, isomorphic, Dist};
use comax_core::ring::{BaseSpec, Elem, Ring, RingSpec};
use comax_core::Graph;
use proptest::prelude::*;

fn small_base() -> impl Strategy<Value = BaseSpec> {
    prop_oneof![
        (2u64..=13).prop_map(BaseSpec::Zn),
        prop_oneof![
            Just(BaseSpec::Gf { p: 2, k: 1 }),
            Just(BaseSpec::Gf { p: 2, k: 2 }),
            Just(BaseSpec::Gf { p: 2, k: 3 }),
            Just(BaseSpec::Gf { p: 3, k: 1 }),
            Just(BaseSpec::Gf { p: 3, k: 2 }),
            Just(BaseSpec::Gf { p: 5, k: 1 }),
        ],
    ]
}

fn small_spec() -> impl Strategy<Value = RingSpec> {
    prop::collection::vec(small_base(), 1..=3)
        .prop_map(RingSpec::new)
        .prop_filter("within test size", |s| s.size() <= 128)
}

fn small_graph() -> impl Strategy<Value = Graph> {
    (1usize..=8, any::<u64>()).prop_map(|(n, seed)| {
        let mut state = seed | 1;
        let mut b = GraphBuilder::abstract_vertices(n);
        for u in 0..n {
            for v in u + 1..n {
                state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                if state >> 62 & 1 == 1 {
                    b.add_edge(u, v);
                }
            }
        }
        b.finish()
    })
}

proptest! {
    #[test]
    fn ring_axioms(spec in small_spec(), xs in any::<(u32, u32, u32)>()) {
        let r = Ring::new(spec).unwrap();
        let n = r.size() as u32;
        let (a, b, c) = (Elem(xs.0 % n), Elem(xs.1 % n), Elem(xs.2 % n));
        prop_assert_eq!(r.add(a, b), r.add(b, a));
        prop_assert_eq!(r.mul(a, b), r.mul(b, a));
        prop_assert_eq!(r.add(a, r.add(b, c)), r.add(r.add(a, b), c));
        prop_assert_eq!(r.mul(a, r.mul(b, c)), r.mul(r.mul(a, b), c));
        prop_assert_eq!(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)));
        prop_assert_eq!(r.add(a, r.neg(a)), r.zero());
        prop_assert_eq!(r.mul(a, r.one()), a);
        prop_assert_eq!(r.mul(a, r.zero()), r.zero());
    }

    #[test]
    fn component_encoding_round_trips(spec in small_spec(), x in any::<u32>()) {
        let r = Ring::new(spec).unwrap();
        let e = Elem(x % r.size() as u32);
        let comps = r.component_values(e).unwrap();
        // Mixed-radix re-encoding by definition: fold over factor sizes.
        let sizes: Vec<u64> = r.spec().unwrap().factors.iter().map(|f| f.size()).collect();
        let mut idx = 0u64;
        for (c, s) in comps.iter().zip(&sizes) {
            prop_assert!(c < s);
            idx = idx * s + c;
        }
        prop_assert_eq!(idx, e.0 as u64);
    }

    #[test]
    fn comaximality_is_symmetric_and_units_dominate(spec in small_spec(), xs in any::<(u32, u32)>()) {
        let r = Ring::new(spec).unwrap();
        let n = r.size() as u32;
        let (x, y) = (Elem(xs.0 % n), Elem(xs.1 % n));
        prop_assert_eq!(r.is_comaximal(x, y), r.is_comaximal(y, x));
        prop_assert!(r.is_comaximal(x, r.one()));
        prop_assert_eq!(r.is_unit(x), r.signature(x).is_empty());
    }

    #[test]
    fn gamma_r_adjacency_is_representative_free(spec in small_spec(), xs in any::<(u32, u32, u32)>()) {
        let r = Ring::new(spec).unwrap();
        let n = r.size() as u32;
        let (x, y, z) = (Elem(xs.0 % n), Elem(xs.1 % n), Elem(xs.2 % n));
        if r.principal_mask(x) == r.principal_mask(y) {
            prop_assert_eq!(r.is_comaximal(x, z), r.is_comaximal(y, z));
        }
    }

    #[test]
    fn omega_edges_follow_units_and_radical(spec in small_spec()) {
        let r = Ring::new(spec).unwrap();
        let omega = build_omega(&r);
        let n = r.size();
        for v in 0..n {
            let e = Elem(v as u32);
            if r.is_unit(e) {
                prop_assert_eq!(omega.degree(v), n - 1);
            } else if r.in_radical(e) {
                // Radical elements see exactly the units.
                let nbrs: Vec<usize> = omega.neighbors(v).to_vec();
                prop_assert!(nbrs.iter().all(|&u| r.is_unit(Elem(u as u32))));
                prop_assert_eq!(nbrs.len(), r.units().len());
            }
        }
    }

    #[test]
    fn twin_collapse_preserves_clique_and_chromatic(spec in small_spec()) {
        let r = Ring::new(spec).unwrap();
        let gamma = build_gamma(&r);
        prop_assume!(gamma.vertex_count() <= 20);
        let sigs = gamma_signatures(&r, &gamma);
        let by_sig = collapse_false_twins(&gamma, &sigs).unwrap();
        let by_rows = collapse_false_twins_by_rows(&gamma);
        prop_assert_eq!(by_sig.graph.vertex_count(), by_rows.graph.vertex_count());
        let direct_w = clique_number(&gamma, 64).unwrap();
        let direct_c = chromatic_number(&gamma, 64).unwrap();
        prop_assert_eq!(clique_number(&by_sig.graph, 64).unwrap(), direct_w);
        prop_assert_eq!(chromatic_number(&by_sig.graph, 64).unwrap(), direct_c);
        prop_assert_eq!(clique_number(&by_rows.graph, 64).unwrap(), direct_w);
        prop_assert_eq!(chromatic_number(&by_rows.graph, 64).unwrap(), direct_c);
    }

    #[test]
    fn gamma_girth_is_three_four_or_infinite(spec in small_spec()) {
        let r = Ring::new(spec).unwrap();
        let g = girth(&build_gamma(&r));
        prop_assert!(
            g == Dist::Finite(3) || g == Dist::Finite(4) || g == Dist::Infinite,
            "unexpected girth {g}"
        );
    }

    #[test]
    fn retraction_map_is_idempotent(spec in small_spec()) {
        let r = Ring::new(spec).unwrap();
        prop_assume!(!r.is_local());
        let gamma = build_gamma(&r);
        let gamma_r = build_gamma_r(&r);
        let report = retraction_gamma_to_gamma_r(&r, &gamma, &gamma_r);
        prop_assert!(report.holds());
        prop_assert!(report.retraction.is_idempotent());
        // Representative count equals the gamma_r vertex count.
        prop_assert_eq!(report.retraction.representatives.len(), gamma_r.vertex_count());
    }

    #[test]
    fn sequential_sum_is_associative_up_to_iso(
        a in small_graph(),
        b in small_graph(),
        c in small_graph(),
    ) {
        let left = sequential_sum(&[sequential_sum(&[a.clone(), b.clone()]), c.clone()]);
        let right = sequential_sum(&[a, sequential_sum(&[b, c])]);
        prop_assume!(left.vertex_count() <= 16);
        prop_assert!(isomorphic(&left, &right, 16).unwrap());
    }

    #[test]
    fn quotient_by_radical_has_zero_radical(spec in small_spec()) {
        let r = Ring::new(spec).unwrap();
        let q = r.quotient(&r.jacobson_radical().clone()).unwrap();
        prop_assert_eq!(q.jacobson_radical().len(), 1);
        prop_assert_eq!(q.n_maximal(), r.n_maximal());
        prop_assert_eq!(q.size() * r.jacobson_radical().len(), r.size());
    }
}

// Brute-force oracles for the exact solvers and metric invariants.

fn brute_force_clique(g: &Graph) -> usize {
    let n = g.vertex_count();
    assert!(n <= 20);
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if members.len() <= best {
            continue;
        }
        let clique = members
            .iter()
            .enumerate()
            .all(|(i, &u)| members[i + 1..].iter().all(|&v| g.has_edge(u, v)));
        if clique {
            best = members.len();
        }
    }
    best
}

fn brute_force_chromatic(g: &Graph) -> usize {
    let n = g.vertex_count();
    assert!(n <= 8);
    if n == 0 {
        return 0;
    }
    'k: for k in 1..=n {
        let mut assignment = vec![0usize; n];
        loop {
            let proper = (0..n).all(|u| {
                g.neighbors(u)
                    .iter_ones()
                    .all(|v| v <= u || assignment[u] != assignment[v])
            });
            if proper {
                return k;
            }
            // Next assignment in base k.
            let mut i = 0;
            loop {
                if i == n {
                    continue 'k;
                }
                assignment[i] += 1;
                if assignment[i] < k {
                    break;
                }
                assignment[i] = 0;
                i += 1;
            }
        }
    }
    n
}

fn brute_force_girth(g: &Graph) -> Dist {
    // Shortest cycle through each vertex by DFS over simple paths.
    fn dfs(g: &Graph, start: usize, current: usize, visited: &mut Vec<usize>, best: &mut usize) {
        for next in g.neighbors(current).iter_ones() {
            if next == start && visited.len() >= 3 {
                *best = (*best).min(visited.len());
            } else if !visited.contains(&next) && next > start && visited.len() < *best {
                visited.push(next);
                dfs(g, start, next, visited, best);
                visited.pop();
            }
        }
    }
    let mut best = usize::MAX;
    for start in 0..g.vertex_count() {
        let mut visited = vec![start];
        dfs(g, start, start, &mut visited, &mut best);
    }
    if best == usize::MAX {
        Dist::Infinite
    } else {
        Dist::Finite(best as u32)
    }
}

fn brute_force_diameter(g: &Graph) -> Dist {
    let n = g.vertex_count();
    if n <= 1 {
        return Dist::Finite(0);
    }
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for u in 0..n {
        d[u][u] = 0;
        for v in g.neighbors(u).iter_ones() {
            d[u][v] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                d[i][j] = d[i][j].min(d[i][k] + d[k][j]);
            }
        }
    }
    let max = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| d[i][j])
        .max()
        .unwrap();
    if max >= inf {
        Dist::Infinite
    } else {
        Dist::Finite(max as u32)
    }
}

proptest! {
    #[test]
    fn clique_solver_matches_brute_force(g in small_graph()) {
        prop_assert_eq!(clique_number(&g, 64).unwrap(), brute_force_clique(&g));
    }

    #[test]
    fn chromatic_solver_matches_brute_force(g in small_graph()) {
        prop_assert_eq!(chromatic_number(&g, 64).unwrap(), brute_force_chromatic(&g));
    }

    #[test]
    fn girth_matches_brute_force(g in small_graph()) {
        prop_assert_eq!(girth(&g), brute_force_girth(&g));
    }

    #[test]
    fn diameter_matches_brute_force(g in small_graph()) {
        prop_assert_eq!(comax_core::invariants::diameter(&g), brute_force_diameter(&g));
    }

    #[test]
    fn isomorphism_accepts_relabelings(g in small_graph(), shift in 0usize..8) {
        let n = g.vertex_count();
        // Rotate vertex identities; the builder re-sorts by label.
        let mut b = GraphBuilder::new(
            (0..n)
                .map(|v| comax_core::VertexLabel::Abstract(((v + shift) % n) as u32))
                .collect(),
        );
        for (u, v) in g.edges() {
            b.add_edge(u, v);
        }
        let permuted = b.finish();
        prop_assert!(isomorphic(&g, &permuted, 16).unwrap());
    }
}
