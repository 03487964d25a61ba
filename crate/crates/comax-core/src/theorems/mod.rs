//! Executable structural checks over a ring: each registry entry
//! verifies one claimed property of the co-maximal graphs and returns a
//! [`Verdict`] with witness or counterexample data.

mod checks;
mod survey;

pub use survey::{rows_to_csv, survey, survey_row, FamilySpec, SurveyReport, SurveyRow};

use crate::graph::{
    build_gamma, build_gamma_r, build_omega, collapse_false_twins, collapse_false_twins_by_rows,
    gamma_r_signatures, gamma_signatures, TwinCollapse,
};
use crate::invariants::{split_analysis, SplitPartition};
use crate::ring::{local_profile, Elem, LocalFactor, Ring, SSignature};
use crate::{Graph, VertexLabel};
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "status", content = "reason", rename_all = "snake_case")]
pub enum VerdictStatus {
    Pass,
    Fail,
    Skipped(String),
}

/// The result of one registry check on one ring.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub check_id: &'static str,
    /// Canonical ring spec text, reparseable by the CLI grammar.
    pub ring: String,
    #[serde(flatten)]
    pub status: VerdictStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

impl Verdict {
    fn pass(id: &'static str, ring: &Ring, witness: Value) -> Verdict {
        Verdict {
            check_id: id,
            ring: ring.label().to_string(),
            status: VerdictStatus::Pass,
            witness: Some(witness),
            counterexample: None,
        }
    }

    fn fail(id: &'static str, ring: &Ring, counterexample: Value) -> Verdict {
        Verdict {
            check_id: id,
            ring: ring.label().to_string(),
            status: VerdictStatus::Fail,
            witness: None,
            counterexample: Some(counterexample),
        }
    }

    fn skipped(id: &'static str, ring: &Ring, reason: &str) -> Verdict {
        Verdict {
            check_id: id,
            ring: ring.label().to_string(),
            status: VerdictStatus::Skipped(reason.to_string()),
            witness: None,
            counterexample: None,
        }
    }

    pub fn is_fail(&self) -> bool {
        self.status == VerdictStatus::Fail
    }

    pub fn is_pass(&self) -> bool {
        self.status == VerdictStatus::Pass
    }
}

#[derive(Debug, Error)]
#[error("unknown check id {0:?}")]
pub struct UnknownCheck(pub String);

/// Everything the checks need about one ring, computed once.
pub struct RingAnalysis<'a> {
    pub ring: &'a Ring,
    pub profile: Vec<LocalFactor>,
    pub omega: Graph,
    pub gamma: Graph,
    pub gamma_r: Graph,
    /// Element behind each gamma vertex.
    pub gamma_elems: Vec<Elem>,
    pub gamma_sigs: Vec<SSignature>,
    pub gamma_r_sigs: Vec<SSignature>,
    pub gamma_collapsed: TwinCollapse,
    pub gamma_r_collapsed: TwinCollapse,
    /// Row-based false-twin collapse of omega (radical and gamma classes
    /// merge, units stay).
    pub omega_collapsed: TwinCollapse,
    pub split_omega: Option<SplitPartition>,
}

impl<'a> RingAnalysis<'a> {
    pub fn new(ring: &'a Ring) -> RingAnalysis<'a> {
        let spec = ring.spec().expect("analysis runs on spec-built rings");
        let profile = local_profile(spec);
        let omega = build_omega(ring);
        debug_assert!((0..omega.vertex_count())
            .all(|i| *omega.label(i) == VertexLabel::RingElem(Elem(i as u32))));
        let gamma = build_gamma(ring);
        let gamma_r = build_gamma_r(ring);
        let gamma_elems: Vec<Elem> = gamma
            .labels()
            .iter()
            .map(|l| match l {
                VertexLabel::RingElem(e) => *e,
                _ => unreachable!(),
            })
            .collect();
        let gamma_sigs = gamma_signatures(ring, &gamma);
        let gamma_r_sigs = gamma_r_signatures(ring, &gamma_r);
        let gamma_collapsed = collapse_false_twins(&gamma, &gamma_sigs)
            .expect("gamma signatures are consistent with adjacency");
        let gamma_r_collapsed = collapse_false_twins(&gamma_r, &gamma_r_sigs)
            .expect("gamma_r signatures are consistent with adjacency");
        let omega_collapsed = collapse_false_twins_by_rows(&omega);
        let split_omega = split_analysis(&omega);
        RingAnalysis {
            ring,
            profile,
            omega,
            gamma,
            gamma_r,
            gamma_elems,
            gamma_sigs,
            gamma_r_sigs,
            gamma_collapsed,
            gamma_r_collapsed,
            omega_collapsed,
            split_omega,
        }
    }

    pub fn n_max(&self) -> usize {
        self.ring.n_maximal()
    }

    pub fn is_local(&self) -> bool {
        self.ring.is_local()
    }
}

pub struct CheckDef {
    pub id: &'static str,
    pub summary: &'static str,
    pub run: fn(&RingAnalysis) -> Verdict,
}

/// The check registry, in canonical order.
pub fn registry() -> &'static [CheckDef] {
    use checks::*;
    const REGISTRY: &[CheckDef] = &[
        CheckDef {
            id: "L2.1",
            summary: "split omega: proper ideals meet the clique side in at most one element",
            run: check_l21,
        },
        CheckDef {
            id: "T2.3",
            summary: "omega is split iff the ring is local, Z2 x Z2 x Z2, or Z2 x F",
            run: check_t23,
        },
        CheckDef {
            id: "C2.4",
            summary: "non-local split omega is K1+K(q-1)+K(1,q-1) or K1+K1+H",
            run: check_c24,
        },
        CheckDef {
            id: "LOCAL",
            summary: "local omega is complete (fields) or K(units)+D(maximal ideal)",
            run: check_local,
        },
        CheckDef {
            id: "T3.1",
            summary: "gamma connected with diameter at most three; signature claims",
            run: check_t31,
        },
        CheckDef {
            id: "T3.2",
            summary:
                "gamma bipartite iff complete bipartite iff two maximal ideals iff R/J two fields",
            run: check_t32,
        },
        CheckDef {
            id: "C3.3",
            summary: "gamma bipartite iff the ring is a product of two local rings",
            run: check_c33,
        },
        CheckDef {
            id: "O3",
            summary: "gamma edgeless iff empty iff local",
            run: check_o3,
        },
        CheckDef {
            id: "T3.4",
            summary: "gamma refinement-of-star iff tree iff star iff Z2 x F",
            run: check_t34,
        },
        CheckDef {
            id: "T3.6",
            summary: "omega split iff gamma empty-or-split iff the three ring forms",
            run: check_t36,
        },
        CheckDef {
            id: "REMARK36",
            summary: "a split gamma is a prime-power star or the triangle with pendants",
            run: check_remark36,
        },
        CheckDef {
            id: "L3.7",
            summary: "paths a-x-b with ab+x non-unit complete to K1+K2+K1",
            run: check_l37,
        },
        CheckDef {
            id: "L3.8",
            summary: "a vertex on a 5-cycle is on a triangle or rectangle",
            run: check_l38,
        },
        CheckDef {
            id: "L3.9",
            summary: "middle vertices of core paths lie on cycles of length 3 to 5",
            run: check_l39,
        },
        CheckDef {
            id: "T3.10",
            summary: "the core is covered by triangles and rectangles; other vertices are ends",
            run: check_t310,
        },
        CheckDef {
            id: "P4.2",
            summary: "gamma_r is a retract of gamma; quotient retracts; transferred invariants",
            run: check_p42,
        },
        CheckDef {
            id: "C4.3",
            summary: "chi(gamma_r) at least |Max|; bipartite iff two maximal ideals",
            run: check_c43,
        },
        CheckDef {
            id: "T4.5",
            summary: "chi(gamma) = omega(gamma) = |Max| = chi(gamma_r) = omega(gamma_r)",
            run: check_t45,
        },
        CheckDef {
            id: "P4.6",
            summary: "gamma_r refinement-of-star iff star iff field x local",
            run: check_p46,
        },
        CheckDef {
            id: "C4.7",
            summary: "diam(gamma_r) = 1 iff the ring is a product of two fields",
            run: check_c47,
        },
        CheckDef {
            id: "P4.8",
            summary: "diam(gamma_r) = 2 iff radical prime or two maximal ideals non-two-fields",
            run: check_p48,
        },
        CheckDef {
            id: "C4.9",
            summary: "gamma and gamma_r share a diameter iff not two fields, except Z2 x Z2",
            run: check_c49,
        },
        CheckDef {
            id: "SR1",
            summary: "stable range one: co-maximal pairs admit a unit combination",
            run: check_sr1,
        },
        CheckDef {
            id: "O1",
            summary: "omega decomposes as radical + units + gamma under sequential sum",
            run: check_o1,
        },
    ];
    REGISTRY
}

pub fn check_ids() -> Vec<&'static str> {
    registry().iter().map(|c| c.id).collect()
}

/// Runs one check by id against a prebuilt analysis.
pub fn run_check_on(analysis: &RingAnalysis, id: &str) -> Result<Verdict, UnknownCheck> {
    registry()
        .iter()
        .find(|c| c.id == id)
        .map(|c| (c.run)(analysis))
        .ok_or_else(|| UnknownCheck(id.to_string()))
}

/// Builds the analysis and runs one check.
pub fn run_check(id: &str, ring: &Ring) -> Result<Verdict, UnknownCheck> {
    let analysis = RingAnalysis::new(ring);
    run_check_on(&analysis, id)
}

/// Runs every registry check in order, collecting all verdicts.
pub fn run_all_on(analysis: &RingAnalysis) -> Vec<Verdict> {
    registry().iter().map(|c| (c.run)(analysis)).collect()
}

pub fn run_all(ring: &Ring) -> Vec<Verdict> {
    let analysis = RingAnalysis::new(ring);
    run_all_on(&analysis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{BaseSpec, RingSpec};

    fn ring(spec: RingSpec) -> Ring {
        Ring::new(spec).unwrap()
    }

    #[test]
    fn run_all_passes_on_named_rings() {
        for spec in [
            RingSpec::zn(12),
            RingSpec::new(vec![BaseSpec::Zn(2); 3]),
            RingSpec::new(vec![BaseSpec::Gf { p: 7, k: 1 }]),
            RingSpec::zn(30),
            RingSpec::new(vec![BaseSpec::Zn(2), BaseSpec::Zn(4)]),
        ] {
            let r = ring(spec);
            let verdicts = run_all(&r);
            assert_eq!(verdicts.len(), registry().len());
            let fails: Vec<&Verdict> = verdicts.iter().filter(|v| v.is_fail()).collect();
            assert!(
                fails.is_empty(),
                "fails on {}: {:?}",
                r.label(),
                fails
                    .iter()
                    .map(|v| (v.check_id, &v.counterexample))
                    .collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn field_skips_are_expected() {
        let r = ring(RingSpec::new(vec![BaseSpec::Gf { p: 7, k: 1 }]));
        let verdicts = run_all(&r);
        let get = |id: &str| verdicts.iter().find(|v| v.check_id == id).unwrap();
        assert!(get("LOCAL").is_pass());
        assert!(get("O1").is_pass());
        assert!(get("SR1").is_pass());
        assert!(get("O3").is_pass());
        assert!(matches!(get("T3.1").status, VerdictStatus::Skipped(_)));
        assert!(matches!(get("T4.5").status, VerdictStatus::Skipped(_)));
    }

    #[test]
    fn named_check_examples() {
        let z30 = ring(RingSpec::zn(30));
        let v = run_check("T4.5", &z30).unwrap();
        assert!(v.is_pass());
        let w = v.witness.unwrap();
        assert_eq!(w["n_max"], 3);
        assert_eq!(w["chi_gamma"], 3);

        let z12 = ring(RingSpec::zn(12));
        assert!(run_check("T3.6", &z12).unwrap().is_pass());

        let z4 = ring(RingSpec::zn(4));
        let v = run_check("T3.1", &z4).unwrap();
        assert!(matches!(v.status, VerdictStatus::Skipped(_)));
    }

    #[test]
    fn unknown_check_is_an_error() {
        let r = ring(RingSpec::zn(6));
        assert!(run_check("T9.9", &r).is_err());
    }

    #[test]
    fn run_all_is_deterministic() {
        let r = ring(RingSpec::zn(60));
        let a = serde_json::to_string(&run_all(&r)).unwrap();
        let b = serde_json::to_string(&run_all(&r)).unwrap();
        assert_eq!(a, b);
    }
}
