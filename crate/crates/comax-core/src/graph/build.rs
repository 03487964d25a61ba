//! Builders for the three ring graphs, the sequential-sum constructor,
//! twin collapse, and the retraction checks.

use super::{Graph, GraphBuilder, VertexLabel};
use crate::ring::{Elem, Ideal, Ring, SSignature};
use thiserror::Error;

/// The co-maximal graph on all ring elements: `x ~ y` iff `Rx + Ry = R`.
pub fn build_omega(ring: &Ring) -> Graph {
    let elems: Vec<Elem> = ring.elements().collect();
    graph_on_elements(ring, &elems)
}

/// The induced subgraph on `R \ (U(R) ∪ J(R))`; empty iff `R` is local.
pub fn build_gamma(ring: &Ring) -> Graph {
    let elems: Vec<Elem> = ring
        .elements()
        .filter(|&e| ring.is_gamma_element(e))
        .collect();
    graph_on_elements(ring, &elems)
}

fn graph_on_elements(ring: &Ring, elems: &[Elem]) -> Graph {
    let mut b = GraphBuilder::new(elems.iter().map(|&e| VertexLabel::RingElem(e)).collect());
    for i in 0..elems.len() {
        for j in i + 1..elems.len() {
            if ring.is_comaximal(elems[i], elems[j]) {
                b.add_edge(i, j);
            }
        }
    }
    b.finish()
}

/// The graph on the distinct principal ideals `Rx` of `gamma` vertices,
/// adjacent iff `Rx + Ry = R`. Labels are the full member sets, so the
/// construction is independent of representatives.
pub fn build_gamma_r(ring: &Ring) -> Graph {
    let classes = gamma_ideal_classes(ring);
    let labels: Vec<VertexLabel> = classes
        .iter()
        .map(|c| VertexLabel::IdealVertex(c.ideal.members.clone()))
        .collect();
    let mut b = GraphBuilder::new(labels);
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            if ring.is_comaximal(classes[i].representative, classes[j].representative) {
                b.add_edge(i, j);
            }
        }
    }
    b.finish()
}

struct IdealClass {
    ideal: Ideal,
    representative: Elem,
    members: Vec<Elem>,
}

/// Distinct principal ideals over the `gamma` vertices, each with its
/// least-index representative; sorted by member set. Asserts that
/// adjacency is well defined on classes (equal ideals, equal signatures).
fn gamma_ideal_classes(ring: &Ring) -> Vec<IdealClass> {
    let mut classes: Vec<IdealClass> = Vec::new();
    for e in ring.elements().filter(|&e| ring.is_gamma_element(e)) {
        let mask = ring.principal_mask(e);
        match classes
            .iter_mut()
            .find(|c| c.ideal.member_mask(ring.size()) == *mask)
        {
            Some(c) => {
                assert_eq!(
                    ring.signature(c.representative),
                    ring.signature(e),
                    "principal-ideal adjacency must not depend on the representative"
                );
                c.members.push(e);
            }
            None => classes.push(IdealClass {
                ideal: ring.principal_ideal(e),
                representative: e,
                members: vec![e],
            }),
        }
    }
    classes.sort_by(|a, b| a.ideal.members.cmp(&b.ideal.members));
    classes
}

/// Sequential sum `G_1 + ... + G_r`: disjoint union plus all edges
/// between consecutive parts. Abstract labels are renumbered to keep the
/// union disjoint; other labels must not collide across parts.
pub fn sequential_sum(parts: &[Graph]) -> Graph {
    assert!(!parts.is_empty());
    let mut labels = Vec::new();
    let mut offsets = Vec::new();
    let mut next_abstract = 0u32;
    for part in parts {
        offsets.push(labels.len());
        for l in part.labels() {
            match l {
                VertexLabel::Abstract(_) => {
                    labels.push(VertexLabel::Abstract(next_abstract));
                    next_abstract += 1;
                }
                other => labels.push(other.clone()),
            }
        }
    }
    let mut b = GraphBuilder::new(labels);
    for (p, part) in parts.iter().enumerate() {
        for (u, v) in part.edges() {
            b.add_edge(offsets[p] + u, offsets[p] + v);
        }
        if p + 1 < parts.len() {
            for u in 0..part.vertex_count() {
                for v in 0..parts[p + 1].vertex_count() {
                    b.add_edge(offsets[p] + u, offsets[p + 1] + v);
                }
            }
        }
    }
    b.finish()
}

/// Verifies the sequential-sum decomposition of the co-maximal graph:
/// discrete on the radical, complete on the units, then `gamma`, with
/// complete joins between consecutive parts, vertex for vertex and edge
/// for edge.
pub fn decompose_omega(ring: &Ring, omega: &Graph, gamma: &Graph) -> bool {
    let radical_part = GraphBuilder::new(
        ring.jacobson_radical()
            .members
            .iter()
            .map(|&e| VertexLabel::RingElem(e))
            .collect(),
    )
    .finish();
    let unit_labels: Vec<VertexLabel> = ring
        .units()
        .iter()
        .map(|&e| VertexLabel::RingElem(e))
        .collect();
    let n_units = unit_labels.len();
    let mut units_part = GraphBuilder::new(unit_labels);
    for u in 0..n_units {
        for v in u + 1..n_units {
            units_part.add_edge(u, v);
        }
    }
    let sum = sequential_sum(&[radical_part, units_part.finish(), gamma.clone()]);
    sum == *omega
}

/// Signatures of `gamma` vertices, in vertex order.
pub fn gamma_signatures(ring: &Ring, gamma: &Graph) -> Vec<SSignature> {
    gamma
        .labels()
        .iter()
        .map(|l| match l {
            VertexLabel::RingElem(e) => ring.signature(*e),
            _ => panic!("gamma vertices are ring elements"),
        })
        .collect()
}

/// Signatures of `gamma_r` vertices: a maximal ideal contains `Rx` iff
/// it contains every member, so the ideal signature is the intersection
/// of the member signatures.
pub fn gamma_r_signatures(ring: &Ring, gamma_r: &Graph) -> Vec<SSignature> {
    gamma_r
        .labels()
        .iter()
        .map(|l| match l {
            VertexLabel::IdealVertex(members) => SSignature(
                members
                    .iter()
                    .fold(!0u64, |acc, &m| acc & ring.signature(m).0),
            ),
            _ => panic!("gamma_r vertices are principal ideals"),
        })
        .collect()
}

#[derive(Debug, Error)]
pub enum CollapseError {
    #[error("signature adjacency disagrees with the graph at ({u}, {v})")]
    SignatureMismatch { u: usize, v: usize },
    #[error("vertices {u} and {v} share a signature but are adjacent")]
    ClassNotIndependent { u: usize, v: usize },
}

/// A twin-collapsed graph together with its class structure.
#[derive(Clone, Debug)]
pub struct TwinCollapse {
    pub graph: Graph,
    /// Original vertex indices per collapsed vertex.
    pub classes: Vec<Vec<usize>>,
    /// Collapsed vertex index per original vertex.
    pub class_of: Vec<usize>,
}

impl TwinCollapse {
    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.len()).collect()
    }
}

/// Collapses equal-signature false twins: one vertex per distinct
/// signature, adjacency = signature disjointness.
///
/// Requires that adjacency equals signature disjointness on all pairs and
/// that every equal-signature class is independent (true for `gamma`,
/// whose signatures are nonempty); this is what makes the classes false
/// twins and preserves clique and chromatic numbers.
pub fn collapse_false_twins(
    g: &Graph,
    signatures: &[SSignature],
) -> Result<TwinCollapse, CollapseError> {
    let n = g.vertex_count();
    assert_eq!(signatures.len(), n);
    for u in 0..n {
        for v in u + 1..n {
            let disjoint = signatures[u].is_disjoint(signatures[v]);
            if disjoint != g.has_edge(u, v) {
                return Err(CollapseError::SignatureMismatch { u, v });
            }
            if signatures[u] == signatures[v] && g.has_edge(u, v) {
                return Err(CollapseError::ClassNotIndependent { u, v });
            }
        }
    }
    let mut reps: Vec<usize> = Vec::new();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        match reps.iter().position(|&r| signatures[r] == signatures[v]) {
            Some(c) => {
                class_of[v] = c;
                classes[c].push(v);
            }
            None => {
                class_of[v] = reps.len();
                reps.push(v);
                classes.push(vec![v]);
            }
        }
    }
    let graph = collapsed_graph(g, &reps);
    Ok(TwinCollapse {
        graph,
        classes,
        class_of,
    })
}

/// Collapses false twins detected from the adjacency rows alone: vertices
/// with identical open neighborhoods (necessarily nonadjacent). Works on
/// any graph, in particular the full co-maximal graph, and preserves
/// clique and chromatic numbers.
pub fn collapse_false_twins_by_rows(g: &Graph) -> TwinCollapse {
    let n = g.vertex_count();
    let mut reps: Vec<usize> = Vec::new();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        match reps.iter().position(|&r| g.neighbors(r) == g.neighbors(v)) {
            Some(c) => {
                class_of[v] = c;
                classes[c].push(v);
            }
            None => {
                class_of[v] = reps.len();
                reps.push(v);
                classes.push(vec![v]);
            }
        }
    }
    let graph = collapsed_graph(g, &reps);
    TwinCollapse {
        graph,
        classes,
        class_of,
    }
}

fn collapsed_graph(g: &Graph, reps: &[usize]) -> Graph {
    let mut b = GraphBuilder::new(reps.iter().map(|&r| g.label(r).clone()).collect());
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            if g.has_edge(reps[i], reps[j]) {
                b.add_edge(i, j);
            }
        }
    }
    b.finish()
}

/// A retraction of a graph onto an induced subgraph: every vertex maps to
/// a representative, representatives map to themselves.
#[derive(Clone, Debug)]
pub struct Retraction {
    /// For each vertex of the source graph, the vertex it retracts to.
    pub map: Vec<usize>,
    /// The fixed representative vertices, sorted.
    pub representatives: Vec<usize>,
}

impl Retraction {
    pub fn is_idempotent(&self) -> bool {
        self.map.iter().all(|&m| self.map[m] == m)
    }
}

/// Outcome of verifying a candidate retraction against a target graph.
#[derive(Clone, Debug)]
pub struct RetractionReport {
    pub retraction: Retraction,
    /// The class map is a graph homomorphism onto the target.
    pub homomorphism: bool,
    /// The induced subgraph on representatives is isomorphic to the
    /// target under the class correspondence.
    pub subgraph_matches: bool,
    /// The retraction fixes every representative.
    pub identity_on_reps: bool,
}

impl RetractionReport {
    pub fn holds(&self) -> bool {
        self.homomorphism && self.subgraph_matches && self.identity_on_reps
    }
}

/// Verifies that `x -> Rx` realizes `gamma_r` as a retract of `gamma`:
/// the map is a homomorphism, the least-index representatives induce a
/// subgraph of `gamma` isomorphic to `gamma_r`, and the composite fixes
/// the representatives.
pub fn retraction_gamma_to_gamma_r(
    ring: &Ring,
    gamma: &Graph,
    gamma_r: &Graph,
) -> RetractionReport {
    let n = gamma.vertex_count();
    // gamma vertex -> gamma_r vertex via its principal ideal label.
    let to_ideal: Vec<usize> = (0..n)
        .map(|v| {
            let e = match gamma.label(v) {
                VertexLabel::RingElem(e) => *e,
                _ => unreachable!(),
            };
            let label = VertexLabel::IdealVertex(ring.principal_ideal(e).members);
            gamma_r
                .vertex_by_label(&label)
                .expect("every principal ideal of a gamma vertex is a gamma_r vertex")
        })
        .collect();
    // Least-index gamma representative per gamma_r vertex.
    let mut rep_of_ideal = vec![usize::MAX; gamma_r.vertex_count()];
    for v in 0..n {
        let c = to_ideal[v];
        if rep_of_ideal[c] == usize::MAX {
            rep_of_ideal[c] = v;
        }
    }
    let map: Vec<usize> = (0..n).map(|v| rep_of_ideal[to_ideal[v]]).collect();
    let mut representatives: Vec<usize> = rep_of_ideal.clone();
    representatives.sort_unstable();

    let homomorphism = (0..n).all(|u| {
        gamma.neighbors(u).iter_ones().all(|v| {
            let (iu, iv) = (to_ideal[u], to_ideal[v]);
            iu != iv && gamma_r.has_edge(iu, iv)
        })
    });
    let subgraph_matches = (0..gamma_r.vertex_count()).all(|i| {
        (0..gamma_r.vertex_count()).all(|j| {
            i == j || gamma_r.has_edge(i, j) == gamma.has_edge(rep_of_ideal[i], rep_of_ideal[j])
        })
    });
    let retraction = Retraction {
        map,
        representatives,
    };
    let identity_on_reps = retraction.is_idempotent();
    RetractionReport {
        retraction,
        homomorphism,
        subgraph_matches,
        identity_on_reps,
    }
}

/// Verifies that the coset map realizes `gamma(R/I)` as a retract of
/// `gamma(R)`, for an ideal `I` contained in the radical.
pub fn quotient_retract_check(ring: &Ring, quotient: &Ring, gamma: &Graph) -> RetractionReport {
    let gamma_q = build_gamma(quotient);
    let n = gamma.vertex_count();
    // gamma(R) vertex -> gamma(R/I) vertex through the coset map.
    let to_coset: Vec<usize> = (0..n)
        .map(|v| {
            let e = match gamma.label(v) {
                VertexLabel::RingElem(e) => *e,
                _ => unreachable!(),
            };
            let c = ring.coset_in(quotient, e);
            gamma_q
                .vertex_by_label(&VertexLabel::RingElem(c))
                .expect("cosets of gamma elements are gamma elements of the quotient")
        })
        .collect();
    let mut rep_of_coset = vec![usize::MAX; gamma_q.vertex_count()];
    for v in 0..n {
        let c = to_coset[v];
        if rep_of_coset[c] == usize::MAX {
            rep_of_coset[c] = v;
        }
    }
    let map: Vec<usize> = (0..n).map(|v| rep_of_coset[to_coset[v]]).collect();
    let mut representatives = rep_of_coset.clone();
    representatives.sort_unstable();

    let homomorphism = (0..n).all(|u| {
        gamma.neighbors(u).iter_ones().all(|v| {
            let (cu, cv) = (to_coset[u], to_coset[v]);
            cu != cv && gamma_q.has_edge(cu, cv)
        })
    });
    let subgraph_matches = (0..gamma_q.vertex_count()).all(|i| {
        (0..gamma_q.vertex_count()).all(|j| {
            i == j || gamma_q.has_edge(i, j) == gamma.has_edge(rep_of_coset[i], rep_of_coset[j])
        })
    });
    let retraction = Retraction {
        map,
        representatives,
    };
    let identity_on_reps = retraction.is_idempotent();
    RetractionReport {
        retraction,
        homomorphism,
        subgraph_matches,
        identity_on_reps,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{BaseSpec, RingSpec};

    fn ring(spec: RingSpec) -> Ring {
        Ring::new(spec).unwrap()
    }

    fn zn(n: u64) -> Ring {
        ring(RingSpec::zn(n))
    }

    fn z2_cubed() -> Ring {
        ring(RingSpec::new(vec![BaseSpec::Zn(2); 3]))
    }

    #[test]
    fn omega_of_field_is_complete() {
        let r = ring(RingSpec::new(vec![BaseSpec::Gf { p: 3, k: 1 }]));
        let omega = build_omega(&r);
        assert_eq!(omega.vertex_count(), 3);
        assert_eq!(omega.edge_count(), 3);
    }

    #[test]
    fn omega_of_z4() {
        let r = zn(4);
        let omega = build_omega(&r);
        // Units {1,3} complete and joined to everything, {0,2} discrete.
        assert_eq!(omega.edge_count(), 5);
        let gamma = build_gamma(&r);
        assert_eq!(gamma.vertex_count(), 0);
        assert!(decompose_omega(&r, &omega, &gamma));
    }

    #[test]
    fn gamma_of_z12_is_k42() {
        let r = zn(12);
        let gamma = build_gamma(&r);
        assert_eq!(gamma.vertex_count(), 6);
        assert_eq!(gamma.edge_count(), 8);
        let verts: Vec<String> = gamma.labels().iter().map(|l| l.to_string()).collect();
        assert_eq!(verts, vec!["2", "3", "4", "8", "9", "10"]);
        // Oracle: brute-force adjacency from the definition.
        for (i, u) in gamma.labels().iter().enumerate() {
            for (j, v) in gamma.labels().iter().enumerate() {
                if i >= j {
                    continue;
                }
                let (eu, ev) = match (u, v) {
                    (VertexLabel::RingElem(a), VertexLabel::RingElem(b)) => (*a, *b),
                    _ => unreachable!(),
                };
                let sum = r.ideal_sum(&r.principal_ideal(eu), &r.principal_ideal(ev));
                assert_eq!(gamma.has_edge(i, j), sum.len() == r.size());
            }
        }
    }

    #[test]
    fn gamma_of_z2_gf5_is_star() {
        let r = ring(RingSpec::new(vec![
            BaseSpec::Zn(2),
            BaseSpec::Gf { p: 5, k: 1 },
        ]));
        let gamma = build_gamma(&r);
        assert_eq!(gamma.vertex_count(), 5);
        assert_eq!(gamma.edge_count(), 4);
    }

    #[test]
    fn gamma_r_of_z12_is_k12() {
        let r = zn(12);
        let gr = build_gamma_r(&r);
        assert_eq!(gr.vertex_count(), 3);
        assert_eq!(gr.edge_count(), 2);
        let labels: Vec<String> = gr.labels().iter().map(|l| l.to_string()).collect();
        assert_eq!(labels, vec!["{0,2,4,6,8,10}", "{0,3,6,9}", "{0,4,8}"]);
        // Edges R2 -- R3 and R3 -- R4.
        assert!(gr.has_edge(0, 1));
        assert!(gr.has_edge(1, 2));
        assert!(!gr.has_edge(0, 2));
    }

    #[test]
    fn gamma_r_of_z2_z3_is_k2() {
        let r = ring(RingSpec::new(vec![BaseSpec::Zn(2), BaseSpec::Zn(3)]));
        let gr = build_gamma_r(&r);
        assert_eq!(gr.vertex_count(), 2);
        assert_eq!(gr.edge_count(), 1);
    }

    #[test]
    fn gamma_r_of_z2_cubed_matches_gamma() {
        let r = z2_cubed();
        let gamma = build_gamma(&r);
        let gr = build_gamma_r(&r);
        assert_eq!(gr.vertex_count(), gamma.vertex_count());
        assert_eq!(gr.edge_count(), gamma.edge_count());
    }

    #[test]
    fn sequential_sum_single_part() {
        let g = Graph::cycle(4);
        assert_eq!(sequential_sum(std::slice::from_ref(&g)), g);
    }

    #[test]
    fn sequential_sum_matches_omega_of_z4() {
        let r = zn(4);
        let sum = sequential_sum(&[Graph::discrete(2), Graph::complete(2)]);
        let omega = build_omega(&r);
        assert_eq!(sum.edge_count(), omega.edge_count());
        assert_eq!(sum.vertex_count(), omega.vertex_count());
    }

    #[test]
    fn decompose_omega_examples() {
        for spec in [
            RingSpec::zn(12),
            RingSpec::zn(4),
            RingSpec::new(vec![BaseSpec::Gf { p: 7, k: 1 }]),
            RingSpec::new(vec![BaseSpec::Zn(2); 3]),
        ] {
            let r = ring(spec);
            let omega = build_omega(&r);
            let gamma = build_gamma(&r);
            assert!(
                decompose_omega(&r, &omega, &gamma),
                "O1 fails for {}",
                r.label()
            );
        }
    }

    #[test]
    fn collapse_gamma_z12() {
        let r = zn(12);
        let gamma = build_gamma(&r);
        let sigs = gamma_signatures(&r, &gamma);
        let c = collapse_false_twins(&gamma, &sigs).unwrap();
        assert_eq!(c.graph.vertex_count(), 2);
        assert_eq!(c.graph.edge_count(), 1);
        let mut sizes = c.class_sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![2, 4]);
    }

    #[test]
    fn collapse_gamma_z2_cubed_is_identity() {
        let r = z2_cubed();
        let gamma = build_gamma(&r);
        let sigs = gamma_signatures(&r, &gamma);
        let c = collapse_false_twins(&gamma, &sigs).unwrap();
        assert_eq!(c.graph.vertex_count(), 6);
        assert_eq!(c.graph, gamma);
    }

    #[test]
    fn collapse_by_rows_merges_radical_class() {
        let r = zn(12);
        let omega = build_omega(&r);
        let c = collapse_false_twins_by_rows(&omega);
        // Radical {0,6} merges; units stay distinct; gamma collapses to 2.
        assert_eq!(c.graph.vertex_count(), 1 + 4 + 2);
    }

    #[test]
    fn collapse_discrete_same_signature_to_single_vertex() {
        let g = Graph::discrete(4);
        let sigs = vec![SSignature(0b1); 4];
        let c = collapse_false_twins(&g, &sigs).unwrap();
        assert_eq!(c.graph.vertex_count(), 1);
        assert_eq!(c.class_sizes(), vec![4]);
    }

    #[test]
    fn collapse_rejects_clique_classes() {
        let g = Graph::complete(3);
        let sigs = vec![SSignature(0); 3];
        assert!(matches!(
            collapse_false_twins(&g, &sigs),
            Err(CollapseError::ClassNotIndependent { .. })
        ));
    }

    #[test]
    fn retraction_examples() {
        for spec in [
            RingSpec::zn(12),
            RingSpec::new(vec![BaseSpec::Zn(2), BaseSpec::Zn(3)]),
            RingSpec::new(vec![BaseSpec::Zn(2); 3]),
        ] {
            let r = ring(spec);
            let gamma = build_gamma(&r);
            let gamma_r = build_gamma_r(&r);
            let report = retraction_gamma_to_gamma_r(&r, &gamma, &gamma_r);
            assert!(report.holds(), "retraction fails for {}", r.label());
            assert!(report.retraction.is_idempotent());
        }
    }

    #[test]
    fn z12_retraction_representatives() {
        let r = zn(12);
        let gamma = build_gamma(&r);
        let gamma_r = build_gamma_r(&r);
        let report = retraction_gamma_to_gamma_r(&r, &gamma, &gamma_r);
        let reps: Vec<String> = report
            .retraction
            .representatives
            .iter()
            .map(|&v| gamma.label(v).to_string())
            .collect();
        assert_eq!(reps, vec!["2", "3", "4"]);
    }

    #[test]
    fn quotient_retract_example() {
        let r = zn(12);
        let gamma = build_gamma(&r);
        let q = r.quotient(&r.jacobson_radical().clone()).unwrap();
        let report = quotient_retract_check(&r, &q, &gamma);
        assert!(report.holds());
        // gamma(Z6) has vertices {2,3,4} and edges 2-3, 3-4.
        let gq = build_gamma(&q);
        assert_eq!(gq.vertex_count(), 3);
        assert_eq!(gq.edge_count(), 2);
    }

    #[test]
    fn quotient_retract_vacuous_on_local_ring() {
        let r = zn(4);
        let gamma = build_gamma(&r);
        let q = r.quotient(&r.jacobson_radical().clone()).unwrap();
        let report = quotient_retract_check(&r, &q, &gamma);
        assert!(report.holds());
        assert!(report.retraction.representatives.is_empty());
    }

    #[test]
    fn quotient_retract_by_zero_is_identity() {
        let r = zn(12);
        let gamma = build_gamma(&r);
        let q = r.quotient(&r.principal_ideal(Elem(0))).unwrap();
        let report = quotient_retract_check(&r, &q, &gamma);
        assert!(report.holds());
        assert_eq!(
            report.retraction.representatives.len(),
            gamma.vertex_count()
        );
    }
}
