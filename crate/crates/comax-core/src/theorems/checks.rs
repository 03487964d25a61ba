//! The individual registry checks.

use super::{RingAnalysis, Verdict};
use crate::graph::{decompose_omega, quotient_retract_check, retraction_gamma_to_gamma_r, Graph};
use crate::invariants::{
    bipartite_class, chromatic_number, clique_number, core_and_ends, diameter, girth,
    graph_core_up_to_iso, is_connected, isomorphic, on_five_cycle, on_short_cycle, split_analysis,
    star_class, BipartiteClass, Dist, StarClass,
};
use crate::ring::{
    prime_power, profile_is_field_times_local, profile_is_local, profile_is_two_fields,
    profile_is_z2_cubed, profile_is_z2_times_field, Elem, LocalFactor, Ring,
};
use serde_json::{json, Value};

const LOCAL_SKIP: &str = "local ring: gamma is empty";

fn elems_json(elems: &[Elem]) -> Value {
    json!(elems.iter().map(|e| e.0).collect::<Vec<_>>())
}

pub(super) fn check_l21(a: &RingAnalysis) -> Verdict {
    const ID: &str = "L2.1";
    let Some(split) = &a.split_omega else {
        return Verdict::skipped(ID, a.ring, "omega is not split");
    };
    // Omega vertex indices coincide with element indices.
    let in_clique = |e: usize| split.clique.binary_search(&e).is_ok();
    // (1) Every proper ideal meets the clique side in at most one element.
    for ideal in a.ring.all_ideals() {
        if ideal.len() == a.ring.size() {
            continue;
        }
        let hits: Vec<Elem> = ideal
            .members
            .iter()
            .copied()
            .filter(|e| in_clique(e.index()))
            .collect();
        if hits.len() > 1 {
            return Verdict::fail(
                ID,
                a.ring,
                json!({
                    "part": 1,
                    "ideal": elems_json(&ideal.members),
                    "clique_members": elems_json(&hits),
                }),
            );
        }
    }
    // (2) For distinct maximal ideals, the common clique trace carries no
    // nonzero element. (With the maximal independent side, 0 itself
    // usually sits outside the clique, so the trace is within {0}.)
    let max = a.ring.maximal_ideals();
    for i in 0..max.len() {
        for j in i + 1..max.len() {
            let bad: Vec<Elem> = max[i]
                .members
                .iter()
                .copied()
                .filter(|e| e.0 != 0 && max[j].contains(*e) && in_clique(e.index()))
                .collect();
            if !bad.is_empty() {
                return Verdict::fail(
                    ID,
                    a.ring,
                    json!({ "part": 2, "maximal_pair": [i, j], "nonzero_common": elems_json(&bad) }),
                );
            }
        }
    }
    // (3) |K| >= |Max|+1 outside the two exceptional rings, where |K| = |Max|.
    let n_max = a.n_max();
    let k = split.clique.len();
    let exceptional = a.profile == [LocalFactor::Field { order: 2 }]
        || a.profile
            == [
                LocalFactor::Field { order: 2 },
                LocalFactor::Field { order: 2 },
            ];
    let part3 = if exceptional { k == n_max } else { k > n_max };
    if !part3 {
        return Verdict::fail(
            ID,
            a.ring,
            json!({ "part": 3, "clique_size": k, "n_max": n_max, "exceptional": exceptional }),
        );
    }
    Verdict::pass(
        ID,
        a.ring,
        json!({ "clique_size": k, "n_max": n_max, "exceptional": exceptional }),
    )
}

fn matches_split_ring_form(a: &RingAnalysis) -> bool {
    profile_is_local(&a.profile)
        || profile_is_z2_cubed(&a.profile)
        || profile_is_z2_times_field(&a.profile)
}

pub(super) fn check_t23(a: &RingAnalysis) -> Verdict {
    const ID: &str = "T2.3";
    let graph_side = a.split_omega.is_some();
    let ring_side = matches_split_ring_form(a);
    if graph_side == ring_side {
        Verdict::pass(
            ID,
            a.ring,
            json!({ "omega_split": graph_side, "ring_form": ring_side }),
        )
    } else {
        Verdict::fail(
            ID,
            a.ring,
            json!({ "omega_split": graph_side, "ring_form": ring_side }),
        )
    }
}

pub(super) fn check_c24(a: &RingAnalysis) -> Verdict {
    const ID: &str = "C2.4";
    if a.is_local() {
        return Verdict::skipped(ID, a.ring, "local ring");
    }
    if a.split_omega.is_none() {
        return Verdict::skipped(ID, a.ring, "omega is not split");
    }
    let iso_guard = a.ring.limits().iso_guard;
    if profile_is_z2_times_field(&a.profile) {
        let q = a.ring.size() / 2;
        let expect = crate::graph::sequential_sum(&[
            Graph::complete(1),
            Graph::complete(q - 1),
            Graph::star(q - 1),
        ]);
        match isomorphic(&a.omega, &expect, iso_guard) {
            Ok(true) => Verdict::pass(ID, a.ring, json!({ "shape": "K1+K(q-1)+K(1,q-1)", "q": q })),
            Ok(false) => Verdict::fail(
                ID,
                a.ring,
                json!({ "expected": "K1+K(q-1)+K(1,q-1)", "q": q }),
            ),
            Err(e) => Verdict::skipped(ID, a.ring, &e.to_string()),
        }
    } else if profile_is_z2_cubed(&a.profile) {
        let expect = crate::graph::sequential_sum(&[
            Graph::complete(1),
            Graph::complete(1),
            Graph::triangle_with_pendants(),
        ]);
        match isomorphic(&a.omega, &expect, iso_guard) {
            Ok(true) => Verdict::pass(ID, a.ring, json!({ "shape": "K1+K1+H" })),
            Ok(false) => Verdict::fail(ID, a.ring, json!({ "expected": "K1+K1+H" })),
            Err(e) => Verdict::skipped(ID, a.ring, &e.to_string()),
        }
    } else {
        Verdict::fail(
            ID,
            a.ring,
            json!({ "reason": "split non-local omega outside the two listed ring forms" }),
        )
    }
}

pub(super) fn check_local(a: &RingAnalysis) -> Verdict {
    const ID: &str = "LOCAL";
    if !a.is_local() {
        return Verdict::skipped(ID, a.ring, "non-local ring");
    }
    let n_units = a.ring.units().len();
    let m_size = a.ring.maximal_ideals()[0].len();
    if m_size == 1 {
        // A field: omega is complete.
        let complete = a.omega.edge_count() == a.ring.size() * (a.ring.size() - 1) / 2;
        return if complete {
            Verdict::pass(
                ID,
                a.ring,
                json!({ "shape": "complete", "n": a.ring.size() }),
            )
        } else {
            Verdict::fail(ID, a.ring, json!({ "expected": "complete graph" }))
        };
    }
    // K(units) + D(maximal ideal): units universal and complete, the
    // maximal ideal discrete.
    let universal = a.omega.universal_vertices();
    let units_universal =
        universal.len() == n_units && universal.iter().all(|&v| a.ring.is_unit(Elem(v as u32)));
    let maximal_discrete = a.ring.maximal_ideals()[0].members.iter().all(|&x| {
        a.ring.maximal_ideals()[0]
            .members
            .iter()
            .all(|&y| x == y || !a.omega.has_edge(x.index(), y.index()))
    });
    if units_universal && maximal_discrete && n_units + m_size == a.ring.size() {
        Verdict::pass(
            ID,
            a.ring,
            json!({ "shape": "K(units)+D(maximal)", "n_units": n_units, "maximal_size": m_size }),
        )
    } else {
        Verdict::fail(
            ID,
            a.ring,
            json!({ "units_universal": units_universal, "maximal_discrete": maximal_discrete }),
        )
    }
}

pub(super) fn check_t31(a: &RingAnalysis) -> Verdict {
    const ID: &str = "T3.1";
    if a.is_local() {
        return Verdict::skipped(ID, a.ring, LOCAL_SKIP);
    }
    if !is_connected(&a.gamma) {
        return Verdict::fail(ID, a.ring, json!({ "reason": "gamma disconnected" }));
    }
    let diam = diameter(&a.gamma);
    if diam > Dist::Finite(3) {
        return Verdict::fail(ID, a.ring, json!({ "diameter": diam.to_string() }));
    }
    // Signature claims over all element pairs:
    // (1) ab in J iff the signatures of a and b cover Max(R);
    // (2) Ra + Rb = R iff the signatures are disjoint.
    let n_max = a.n_max();
    let full = (1u64 << n_max) - 1;
    for x in a.ring.elements() {
        for y in a.ring.elements() {
            if x >= y {
                continue;
            }
            let cover = a.ring.signature(x).0 | a.ring.signature(y).0 == full;
            let in_radical = a.ring.in_radical(a.ring.mul(x, y));
            if cover != in_radical {
                return Verdict::fail(
                    ID,
                    a.ring,
                    json!({ "claim": 1, "pair": [x.0, y.0], "covers_max": cover, "product_in_radical": in_radical }),
                );
            }
            let by_sig = a.ring.comaximal_by_signatures(x, y);
            let by_sum = a.ring.comaximal_by_ideal_sum(x, y);
            if by_sig != by_sum {
                return Verdict::fail(
                    ID,
                    a.ring,
                    json!({ "claim": 2, "pair": [x.0, y.0], "by_signatures": by_sig, "by_ideal_sum": by_sum }),
                );
            }
        }
    }
    Verdict::pass(ID, a.ring, json!({ "diameter": diam.to_string() }))
}

/// `R/J(R)` is a product of two fields: decided by a nontrivial
/// idempotent splitting the quotient into two field factors.
fn quotient_is_two_fields(ring: &Ring) -> bool {
    let q = ring
        .quotient(&ring.jacobson_radical().clone())
        .expect("the radical is a valid quotient ideal");
    let one = q.one();
    let is_field_factor = |e: Elem| -> bool {
        let mask = q.principal_mask(e).clone();
        mask.iter_ones().filter(|&f| f != 0).all(|f| {
            mask.iter_ones()
                .any(|g| q.mul(Elem(f as u32), Elem(g as u32)) == e)
        })
    };
    for e in q.elements() {
        if e == q.zero() || e == one || q.mul(e, e) != e {
            continue;
        }
        let f = q.sub(one, e);
        let sizes_split = q.principal_mask(e).count() * q.principal_mask(f).count() == q.size();
        if sizes_split && is_field_factor(e) && is_field_factor(f) {
            return true;
        }
    }
    false
}

pub(super) fn check_t32(a: &RingAnalysis) -> Verdict {
    const ID: &str = "T3.2";
    if a.is_local() {
        return Verdict::skipped(ID, a.ring, LOCAL_SKIP);
    }
    let class = bipartite_class(&a.gamma);
    let bipartite = class != BipartiteClass::NotBipartite;
    let complete_bipartite = matches!(class, BipartiteClass::CompleteBipartite { .. });
    let two_max = a.n_max() == 2;
    let quotient_two_fields = quotient_is_two_fields(a.ring);
    let all = [bipartite, complete_bipartite, two_max, quotient_two_fields];
    let witness = json!({
        "bipartite": bipartite,
        "complete_bipartite": complete_bipartite,
        "two_maximal_ideals": two_max,
        "quotient_is_two_fields": quotient_two_fields,
    });
    if all.iter().all(|&b| b == all[0]) {
        Verdict::pass(ID, a.ring, witness)
    } else {
        Verdict::fail(ID, a.ring, witness)
    }
}

pub(super) fn check_c33(a: &RingAnalysis) -> Verdict {
    const ID: &str = "C3.3";
    if a.is_local() {
        return Verdict::skipped(ID, a.ring, LOCAL_SKIP);
    }
    let class = bipartite_class(&a.gamma);
    let bipartite = class != BipartiteClass::NotBipartite;
    let complete_bipartite = matches!(class, BipartiteClass::CompleteBipartite { .. });
    let two_local_factors = a.profile.len() == 2;
    let witness = json!({
        "bipartite": bipartite,
        "complete_bipartite": complete_bipartite,
        "local_x_local": two_local_factors,
    });
    if bipartite == complete_bipartite && bipartite == two_local_factors {
        Verdict::pass(ID, a.ring, witness)
    } else {
        Verdict::fail(ID, a.ring, witness)
    }
}

pub(super) fn check_o3(a: &RingAnalysis) -> Verdict {
    const ID: &str = "O3";
    let edgeless = a.gamma.edge_count() == 0;
    let empty = a.gamma.vertex_count() == 0;
    let local = a.is_local();
    let witness = json!({ "edgeless": edgeless, "empty": empty, "local": local });
    if edgeless == empty && empty == local {
        Verdict::pass(ID, a.ring, witness)
    } else {
        Verdict::fail(ID, a.ring, witness)
    }
}

pub(super) fn check_t34(a: &RingAnalysis) -> Verdict {
    const ID: &str = "T3.4";
    let star = star_class(&a.gamma);
    let refinement = !matches!(star, StarClass::NotStar);
    let is_star = matches!(star, StarClass::Star { .. });
    let tree =
        a.gamma.vertex_count() > 0 && is_connected(&a.gamma) && girth(&a.gamma) == Dist::Infinite;
    let ring_side = profile_is_z2_times_field(&a.profile);
    let all = [refinement, tree, is_star, ring_side];
    let witness = json!({
        "refinement_of_star": refinement,
        "tree": tree,
        "star": is_star,
        "z2_x_field": ring_side,
    });
    if all.iter().all(|&b| b == all[0]) {
        Verdict::pass(ID, a.ring, witness)
    } else {
        Verdict::fail(ID, a.ring, witness)
    }
}

pub(super) fn check_t36(a: &RingAnalysis) -> Verdict {
    const ID: &str = "T3.6";
    let omega_split = a.split_omega.is_some();
    let gamma_side = a.gamma.vertex_count() == 0 || split_analysis(&a.gamma).is_some();
    let ring_side = matches_split_ring_form(a);
    let witness = json!({
        "omega_split": omega_split,
        "gamma_empty_or_split": gamma_side,
        "ring_form": ring_side,
    });
    if omega_split == gamma_side && gamma_side == ring_side {
        Verdict::pass(ID, a.ring, witness)
    } else {
        Verdict::fail(ID, a.ring, witness)
    }
}

pub(super) fn check_remark36(a: &RingAnalysis) -> Verdict {
    const ID: &str = "REMARK36";
    if a.gamma.vertex_count() == 0 {
        return Verdict::skipped(ID, a.ring, LOCAL_SKIP);
    }
    if split_analysis(&a.gamma).is_none() {
        return Verdict::skipped(ID, a.ring, "gamma is not split");
    }
    if let StarClass::Star { leaves, .. } = star_class(&a.gamma) {
        if prime_power(leaves as u64 + 1).is_some() {
            return Verdict::pass(ID, a.ring, json!({ "shape": "star", "leaves": leaves }));
        }
        return Verdict::fail(
            ID,
            a.ring,
            json!({ "star_leaves_plus_one_not_prime_power": leaves + 1 }),
        );
    }
    match isomorphic(
        &a.gamma,
        &Graph::triangle_with_pendants(),
        a.ring.limits().iso_guard,
    ) {
        Ok(true) => Verdict::pass(ID, a.ring, json!({ "shape": "triangle_with_pendants" })),
        Ok(false) => Verdict::fail(
            ID,
            a.ring,
            json!({ "reason": "split gamma of unexpected shape" }),
        ),
        Err(e) => Verdict::skipped(ID, a.ring, &e.to_string()),
    }
}

pub(super) fn check_l37(a: &RingAnalysis) -> Verdict {
    const ID: &str = "L3.7";
    if a.is_local() {
        return Verdict::skipped(ID, a.ring, LOCAL_SKIP);
    }
    let mut completed = 0u64;
    for (xi, &x) in a.gamma_elems.iter().enumerate() {
        let nbrs: Vec<usize> = a.gamma.neighbors(xi).to_vec();
        for (i, &ai) in nbrs.iter().enumerate() {
            for &bi in &nbrs[i + 1..] {
                let (va, vb) = (a.gamma_elems[ai], a.gamma_elems[bi]);
                let c = a.ring.add(a.ring.mul(va, vb), x);
                if a.ring.is_unit(c) {
                    continue;
                }
                let distinct = c != va && c != vb && c != x;
                let ok = distinct
                    && a.ring.is_gamma_element(c)
                    && a.ring.is_comaximal(c, va)
                    && a.ring.is_comaximal(c, vb)
                    && a.ring.is_comaximal(c, x);
                if !ok {
                    return Verdict::fail(
                        ID,
                        a.ring,
                        json!({ "path": [va.0, x.0, vb.0], "ab_plus_x": c.0 }),
                    );
                }
                completed += 1;
            }
        }
    }
    Verdict::pass(ID, a.ring, json!({ "paths_completed": completed }))
}

pub(super) fn check_l38(a: &RingAnalysis) -> Verdict {
    const ID: &str = "L3.8";
    if a.is_local() {
        return Verdict::skipped(ID, a.ring, LOCAL_SKIP);
    }
    // Contrapositive: a vertex on no triangle or rectangle must be on no
    // 5-cycle either.
    let mut on_five = 0u64;
    for v in 0..a.gamma.vertex_count() {
        if on_short_cycle(&a.gamma, v) {
            continue;
        }
        if on_five_cycle(&a.gamma, v) {
            return Verdict::fail(
                ID,
                a.ring,
                json!({ "vertex": a.gamma_elems[v].0, "on_five_cycle_without_short_cycle": true }),
            );
        }
        on_five += 1;
    }
    Verdict::pass(
        ID,
        a.ring,
        json!({ "vertices_outside_short_cycles": on_five }),
    )
}

pub(super) fn check_l39(a: &RingAnalysis) -> Verdict {
    const ID: &str = "L3.9";
    if a.is_local() {
        return Verdict::skipped(ID, a.ring, LOCAL_SKIP);
    }
    if girth(&a.gamma) == Dist::Infinite {
        return Verdict::skipped(ID, a.ring, "gamma is acyclic");
    }
    let report = core_and_ends(&a.gamma);
    let core_graph = a.gamma.induced(&report.core);
    for v in 0..core_graph.vertex_count() {
        if core_graph.degree(v) < 2 {
            continue;
        }
        if !on_short_cycle(&core_graph, v) && !on_five_cycle(&core_graph, v) {
            return Verdict::fail(
                ID,
                a.ring,
                json!({ "vertex": a.gamma_elems[report.core[v]].0 }),
            );
        }
    }
    Verdict::pass(ID, a.ring, json!({ "core_size": report.core.len() }))
}

pub(super) fn check_t310(a: &RingAnalysis) -> Verdict {
    const ID: &str = "T3.10";
    if a.is_local() {
        return Verdict::skipped(ID, a.ring, LOCAL_SKIP);
    }
    if girth(&a.gamma) == Dist::Infinite {
        return Verdict::skipped(ID, a.ring, "gamma is acyclic");
    }
    let report = core_and_ends(&a.gamma);
    let witness = json!({
        "core_size": report.core.len(),
        "end_vertices": report.ends.len(),
        "unclassified": report.unclassified.len(),
        "uncovered_vertices": report.uncovered_vertices.len(),
        // The edge-level reading is recorded alongside the vertex-level
        // one; the pass criterion is the vertex-level reading.
        "uncovered_edges": report.uncovered_edges.len(),
    });
    if report.unclassified.is_empty() && report.uncovered_vertices.is_empty() {
        Verdict::pass(ID, a.ring, witness)
    } else {
        Verdict::fail(ID, a.ring, witness)
    }
}

pub(super) fn check_p42(a: &RingAnalysis) -> Verdict {
    const ID: &str = "P4.2";
    if a.is_local() {
        return Verdict::skipped(ID, a.ring, LOCAL_SKIP);
    }
    let limits = a.ring.limits();
    // (1) x -> Rx is a retraction of gamma onto gamma_r.
    let retraction = retraction_gamma_to_gamma_r(a.ring, &a.gamma, &a.gamma_r);
    if !retraction.holds() {
        return Verdict::fail(ID, a.ring, json!({ "part": 1 }));
    }
    // (2) For every ideal inside the radical, gamma(R/I) is a retract.
    let radical_mask = a.ring.radical_mask();
    for (ideal, mask) in a.ring.all_ideals().iter().zip(a.ring.ideal_masks()) {
        if !mask.is_subset(radical_mask) {
            continue;
        }
        let quotient = a
            .ring
            .quotient(ideal)
            .expect("sub-radical ideals admit quotients");
        let report = quotient_retract_check(a.ring, &quotient, &a.gamma);
        if !report.holds() {
            return Verdict::fail(
                ID,
                a.ring,
                json!({ "part": 2, "ideal": elems_json(&ideal.members) }),
            );
        }
    }
    // (3) Girth three transfers to gamma_r.
    let girth_gamma = girth(&a.gamma);
    let girth_gamma_r = girth(&a.gamma_r);
    if girth_gamma == Dist::Finite(3) && girth_gamma_r != Dist::Finite(3) {
        return Verdict::fail(
            ID,
            a.ring,
            json!({ "part": 3, "girth_gamma": girth_gamma.to_string(), "girth_gamma_r": girth_gamma_r.to_string() }),
        );
    }
    // (4) gamma_r connected with diameter at most three.
    let diam_r = diameter(&a.gamma_r);
    if !is_connected(&a.gamma_r) || diam_r > Dist::Finite(3) {
        return Verdict::fail(
            ID,
            a.ring,
            json!({ "part": 4, "diameter": diam_r.to_string() }),
        );
    }
    // (5) Clique and chromatic numbers transfer (solved on the collapsed
    // graphs, which preserve both).
    let guard = limits.solver_guard;
    let mut omega_eq = None;
    let mut chi_eq = None;
    if a.gamma_collapsed.graph.vertex_count() <= guard
        && a.gamma_r_collapsed.graph.vertex_count() <= guard
    {
        let wg = clique_number(&a.gamma_collapsed.graph, guard).expect("guarded");
        let wr = clique_number(&a.gamma_r_collapsed.graph, guard).expect("guarded");
        let cg = chromatic_number(&a.gamma_collapsed.graph, guard).expect("guarded");
        let cr = chromatic_number(&a.gamma_r_collapsed.graph, guard).expect("guarded");
        if wg != wr || cg != cr {
            return Verdict::fail(
                ID,
                a.ring,
                json!({ "part": 5, "omega_gamma": wg, "omega_gamma_r": wr, "chi_gamma": cg, "chi_gamma_r": cr }),
            );
        }
        omega_eq = Some(wg);
        chi_eq = Some(cg);
    }
    // (6) Shared core graph, within the retract guard.
    let mut shared_core: Option<usize> = None;
    let rg = limits.retract_guard;
    if a.gamma_collapsed.graph.vertex_count() <= rg
        && a.gamma_r_collapsed.graph.vertex_count() <= rg
    {
        let core_g = graph_core_up_to_iso(&a.gamma_collapsed.graph, rg).expect("guarded");
        let core_r = graph_core_up_to_iso(&a.gamma_r_collapsed.graph, rg).expect("guarded");
        match isomorphic(&core_g, &core_r, limits.iso_guard) {
            Ok(true) => shared_core = Some(core_g.vertex_count()),
            Ok(false) => {
                return Verdict::fail(
                    ID,
                    a.ring,
                    json!({ "part": 6, "core_gamma": core_g.vertex_count(), "core_gamma_r": core_r.vertex_count() }),
                )
            }
            Err(_) => {}
        }
    }
    Verdict::pass(
        ID,
        a.ring,
        json!({
            "quotients_checked": a.ring.all_ideals().iter().zip(a.ring.ideal_masks()).filter(|(_, m)| m.is_subset(radical_mask)).count(),
            "omega": omega_eq,
            "chi": chi_eq,
            "shared_core_vertices": shared_core,
            "girth_gamma": girth_gamma.to_string(),
            "girth_gamma_r": girth_gamma_r.to_string(),
        }),
    )
}

pub(super) fn check_c43(a: &RingAnalysis) -> Verdict {
    const ID: &str = "C4.3";
    if a.is_local() {
        return Verdict::skipped(ID, a.ring, LOCAL_SKIP);
    }
    let guard = a.ring.limits().solver_guard;
    let collapsed = &a.gamma_r_collapsed.graph;
    let chi = match chromatic_number(collapsed, guard) {
        Ok(c) => c,
        Err(e) => return Verdict::skipped(ID, a.ring, &e.to_string()),
    };
    if chi < a.n_max() {
        return Verdict::fail(
            ID,
            a.ring,
            json!({ "chi_gamma_r": chi, "n_max": a.n_max() }),
        );
    }
    let class = bipartite_class(&a.gamma_r);
    let bipartite = class != BipartiteClass::NotBipartite;
    let complete_bipartite = matches!(class, BipartiteClass::CompleteBipartite { .. });
    let two_max = a.n_max() == 2;
    if bipartite != two_max || complete_bipartite != two_max {
        return Verdict::fail(
            ID,
            a.ring,
            json!({ "bipartite": bipartite, "complete_bipartite": complete_bipartite, "two_maximal_ideals": two_max }),
        );
    }
    Verdict::pass(
        ID,
        a.ring,
        json!({ "chi_gamma_r": chi, "n_max": a.n_max(), "complete_bipartite": complete_bipartite }),
    )
}

pub(super) fn check_t45(a: &RingAnalysis) -> Verdict {
    const ID: &str = "T4.5";
    if a.is_local() {
        return Verdict::skipped(ID, a.ring, LOCAL_SKIP);
    }
    let guard = a.ring.limits().solver_guard;
    let cg = &a.gamma_collapsed.graph;
    let cr = &a.gamma_r_collapsed.graph;
    if cg.vertex_count() > guard || cr.vertex_count() > guard {
        return Verdict::skipped(ID, a.ring, "guard exceeded: collapsed gamma too large");
    }
    let chi_gamma = chromatic_number(cg, guard).expect("guarded");
    let omega_gamma = clique_number(cg, guard).expect("guarded");
    let chi_gamma_r = chromatic_number(cr, guard).expect("guarded");
    let omega_gamma_r = clique_number(cr, guard).expect("guarded");
    let n_max = a.n_max();
    // The proof identity chi(omega) = |Max| + |U|, solved on the
    // row-collapsed co-maximal graph when it fits the guard.
    let co = &a.omega_collapsed.graph;
    let chi_omega = if co.vertex_count() <= guard {
        Some(chromatic_number(co, guard).expect("guarded"))
    } else {
        None
    };
    let witness = json!({
        "chi_gamma": chi_gamma,
        "omega_gamma": omega_gamma,
        "n_max": n_max,
        "chi_gamma_r": chi_gamma_r,
        "omega_gamma_r": omega_gamma_r,
        "chi_omega": chi_omega,
        "n_units": a.ring.units().len(),
    });
    let five_way = chi_gamma == omega_gamma
        && omega_gamma == n_max
        && n_max == chi_gamma_r
        && chi_gamma_r == omega_gamma_r;
    let omega_identity = match chi_omega {
        Some(c) => c == n_max + a.ring.units().len(),
        None => true,
    };
    if five_way && omega_identity {
        Verdict::pass(ID, a.ring, witness)
    } else {
        Verdict::fail(ID, a.ring, witness)
    }
}

pub(super) fn check_p46(a: &RingAnalysis) -> Verdict {
    const ID: &str = "P4.6";
    if a.is_local() {
        return Verdict::skipped(ID, a.ring, LOCAL_SKIP);
    }
    let star = star_class(&a.gamma_r);
    let refinement = !matches!(star, StarClass::NotStar);
    let is_star = matches!(star, StarClass::Star { .. });
    let ring_side = profile_is_field_times_local(&a.profile);
    if refinement != is_star || is_star != ring_side {
        return Verdict::fail(
            ID,
            a.ring,
            json!({ "refinement_of_star": refinement, "star": is_star, "field_x_local": ring_side }),
        );
    }
    // The star has exactly r leaves... i.e. gamma_r = K_{1,r} where r
    // counts the distinct principal ideals T·x over the maximal ideal of
    // the local factor T (x = 0 included).
    let mut star_size: Option<(usize, usize)> = None;
    if ring_side {
        let t = a
            .profile
            .iter()
            .find(|f| !f.is_field())
            .copied()
            .unwrap_or(a.profile[1]);
        let t_ring = Ring::with_limits(t.as_spec(), *a.ring.limits())
            .expect("local factors are within the cap");
        let mut distinct: Vec<&crate::bits::BitSet> = Vec::new();
        for &x in &t_ring.jacobson_radical().members {
            let m = t_ring.principal_mask(x);
            if !distinct.contains(&m) {
                distinct.push(m);
            }
        }
        let r = distinct.len();
        let leaves = match star {
            StarClass::Star { leaves, .. } => leaves,
            _ => unreachable!("star established above"),
        };
        if leaves != r {
            return Verdict::fail(
                ID,
                a.ring,
                json!({ "expected_star_leaves": r, "actual": leaves }),
            );
        }
        star_size = Some((r, leaves));
    }
    Verdict::pass(
        ID,
        a.ring,
        json!({ "field_x_local": ring_side, "star": star_size.map(|s| s.0) }),
    )
}

pub(super) fn check_c47(a: &RingAnalysis) -> Verdict {
    const ID: &str = "C4.7";
    if a.is_local() {
        return Verdict::skipped(ID, a.ring, LOCAL_SKIP);
    }
    let diam = diameter(&a.gamma_r);
    let two_fields = profile_is_two_fields(&a.profile);
    let witness = json!({ "diam_gamma_r": diam.to_string(), "two_fields": two_fields });
    if (diam == Dist::Finite(1)) == two_fields {
        Verdict::pass(ID, a.ring, witness)
    } else {
        Verdict::fail(ID, a.ring, witness)
    }
}

fn radical_is_prime(ring: &Ring) -> bool {
    let n = ring.size();
    for x in 0..n {
        let ex = Elem(x as u32);
        if ring.in_radical(ex) {
            continue;
        }
        for y in x..n {
            let ey = Elem(y as u32);
            if ring.in_radical(ey) {
                continue;
            }
            if ring.in_radical(ring.mul(ex, ey)) {
                return false;
            }
        }
    }
    true
}

pub(super) fn check_p48(a: &RingAnalysis) -> Verdict {
    const ID: &str = "P4.8";
    if a.is_local() {
        return Verdict::skipped(ID, a.ring, LOCAL_SKIP);
    }
    let diam = diameter(&a.gamma_r);
    let j_prime = radical_is_prime(a.ring);
    let two_max_not_fields = a.n_max() == 2 && !profile_is_two_fields(&a.profile);
    let rhs = j_prime || two_max_not_fields;
    let witness = json!({
        "diam_gamma_r": diam.to_string(),
        "radical_prime": j_prime,
        "two_max_not_two_fields": two_max_not_fields,
    });
    if (diam == Dist::Finite(2)) == rhs {
        Verdict::pass(ID, a.ring, witness)
    } else {
        Verdict::fail(ID, a.ring, witness)
    }
}

pub(super) fn check_c49(a: &RingAnalysis) -> Verdict {
    const ID: &str = "C4.9";
    if a.is_local() {
        return Verdict::skipped(ID, a.ring, LOCAL_SKIP);
    }
    let dg = diameter(&a.gamma);
    let dr = diameter(&a.gamma_r);
    let equal = dg == dr;
    let two_fields = profile_is_two_fields(&a.profile);
    let z2z2 = a.profile
        == [
            LocalFactor::Field { order: 2 },
            LocalFactor::Field { order: 2 },
        ];
    // Reading under test: diameters agree exactly when the ring is not a
    // product of two fields, with Z2 x Z2 as the one exception.
    let rhs = !two_fields || z2z2;
    let witness = json!({
        "diam_gamma": dg.to_string(),
        "diam_gamma_r": dr.to_string(),
        "two_fields": two_fields,
        "z2_x_z2": z2z2,
    });
    if equal == rhs {
        Verdict::pass(ID, a.ring, witness)
    } else {
        Verdict::fail(ID, a.ring, witness)
    }
}

pub(super) fn check_sr1(a: &RingAnalysis) -> Verdict {
    const ID: &str = "SR1";
    match a.ring.stable_range_one() {
        Ok(()) => Verdict::pass(ID, a.ring, json!({})),
        Err((x, y)) => Verdict::fail(ID, a.ring, json!({ "pair": [x.0, y.0] })),
    }
}

pub(super) fn check_o1(a: &RingAnalysis) -> Verdict {
    const ID: &str = "O1";
    if decompose_omega(a.ring, &a.omega, &a.gamma) {
        Verdict::pass(
            ID,
            a.ring,
            json!({
                "radical": a.ring.jacobson_radical().len(),
                "units": a.ring.units().len(),
                "gamma": a.gamma.vertex_count(),
            }),
        )
    } else {
        Verdict::fail(
            ID,
            a.ring,
            json!({ "reason": "sequential-sum decomposition mismatch" }),
        )
    }
}
