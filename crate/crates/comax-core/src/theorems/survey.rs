//! Ring-family survey: per-ring invariant vectors plus aggregated check
//! verdicts, as CSV or JSON.

use super::{run_all_on, RingAnalysis, Verdict};
use crate::invariants::{
    bipartite_class, chromatic_number, clique_number, diameter, girth, split_analysis, star_class,
    BipartiteClass, Dist, StarClass,
};
use crate::ring::{BaseSpec, Limits, Ring, RingError, RingSpec};
use rayon::prelude::*;
use serde::Serialize;

/// A family of rings to sweep.
#[derive(Clone, Debug)]
pub enum FamilySpec {
    /// `Z_lo .. Z_hi`, both ends included.
    ZnRange {
        lo: u64,
        hi: u64,
    },
    /// All unordered products of up to `max_factors` of the given bases,
    /// filtered by the size cap.
    Products {
        bases: Vec<BaseSpec>,
        max_factors: usize,
        size_cap: u64,
    },
    Explicit(Vec<RingSpec>),
}

impl FamilySpec {
    pub fn generate(&self) -> Vec<RingSpec> {
        match self {
            FamilySpec::ZnRange { lo, hi } => (*lo.max(&2)..=*hi).map(RingSpec::zn).collect(),
            FamilySpec::Products {
                bases,
                max_factors,
                size_cap,
            } => {
                let mut out = Vec::new();
                let mut stack: Vec<usize> = Vec::new();
                fn rec(
                    bases: &[BaseSpec],
                    max: usize,
                    cap: u64,
                    start: usize,
                    stack: &mut Vec<usize>,
                    out: &mut Vec<RingSpec>,
                ) {
                    if !stack.is_empty() {
                        let spec = RingSpec::new(stack.iter().map(|&i| bases[i]).collect());
                        if spec.size() <= cap {
                            out.push(spec);
                        } else {
                            return;
                        }
                    }
                    if stack.len() == max {
                        return;
                    }
                    for i in start..bases.len() {
                        stack.push(i);
                        rec(bases, max, cap, i, stack, out);
                        stack.pop();
                    }
                }
                rec(bases, *max_factors, *size_cap, 0, &mut stack, &mut out);
                out
            }
            FamilySpec::Explicit(specs) => specs.clone(),
        }
    }
}

/// One survey row. Infinite diameters and girths serialize as null in
/// JSON and `inf` in CSV; solver-guarded values as null / `na`.
#[derive(Clone, Debug, Serialize)]
pub struct SurveyRow {
    pub spec: String,
    pub size: u64,
    pub n_units: u64,
    pub n_radical: u64,
    pub n_max_ideals: u64,
    pub gamma_vertices: u64,
    pub gamma_edges: u64,
    pub gamma_diam: Option<u32>,
    pub gamma_girth: Option<u32>,
    pub gammar_diam: Option<u32>,
    pub gammar_girth: Option<u32>,
    pub omega_clique: Option<u64>,
    pub chi: Option<u64>,
    pub is_split_omega: bool,
    pub is_bipartite_gamma: bool,
    pub is_star_gamma: bool,
    pub checks_failed: u64,
    #[serde(skip)]
    pub verdicts: Vec<Verdict>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SurveyReport {
    pub rows: Vec<SurveyRow>,
    /// Specs that could not be built, with the reason.
    pub skipped: Vec<(String, String)>,
    pub total_failed: u64,
}

fn dist_to_option(d: Dist) -> Option<u32> {
    d.as_finite()
}

/// Builds the ring and computes its full row.
pub fn survey_row(spec: &RingSpec, limits: &Limits) -> Result<SurveyRow, RingError> {
    let ring = Ring::with_limits(spec.clone(), *limits)?;
    let analysis = RingAnalysis::new(&ring);
    let verdicts = run_all_on(&analysis);
    let checks_failed = verdicts.iter().filter(|v| v.is_fail()).count() as u64;
    let guard = limits.solver_guard;
    let collapsed = &analysis.gamma_collapsed.graph;
    let (omega_clique, chi) = if collapsed.vertex_count() <= guard {
        (
            Some(clique_number(collapsed, guard).expect("guarded") as u64),
            Some(chromatic_number(collapsed, guard).expect("guarded") as u64),
        )
    } else {
        (None, None)
    };
    Ok(SurveyRow {
        spec: spec.to_string(),
        size: ring.size() as u64,
        n_units: ring.units().len() as u64,
        n_radical: ring.jacobson_radical().len() as u64,
        n_max_ideals: ring.n_maximal() as u64,
        gamma_vertices: analysis.gamma.vertex_count() as u64,
        gamma_edges: analysis.gamma.edge_count() as u64,
        gamma_diam: dist_to_option(diameter(&analysis.gamma)),
        gamma_girth: dist_to_option(girth(&analysis.gamma)),
        gammar_diam: dist_to_option(diameter(&analysis.gamma_r)),
        gammar_girth: dist_to_option(girth(&analysis.gamma_r)),
        omega_clique,
        chi,
        is_split_omega: split_analysis(&analysis.omega).is_some(),
        is_bipartite_gamma: bipartite_class(&analysis.gamma) != BipartiteClass::NotBipartite,
        is_star_gamma: matches!(star_class(&analysis.gamma), StarClass::Star { .. }),
        checks_failed,
        verdicts,
    })
}

/// Sweeps a family. `jobs > 1` evaluates rings on a rayon pool; results
/// are merged in family order either way.
pub fn survey(family: &FamilySpec, limits: &Limits, jobs: usize) -> SurveyReport {
    let specs = family.generate();
    let results: Vec<Result<SurveyRow, (String, String)>> = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        pool.install(|| {
            specs
                .par_iter()
                .map(|s| survey_row(s, limits).map_err(|e| (s.to_string(), e.to_string())))
                .collect()
        })
    } else {
        specs
            .iter()
            .map(|s| survey_row(s, limits).map_err(|e| (s.to_string(), e.to_string())))
            .collect()
    };
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for r in results {
        match r {
            Ok(row) => rows.push(row),
            Err(pair) => skipped.push(pair),
        }
    }
    let total_failed = rows.iter().map(|r| r.checks_failed).sum();
    SurveyReport {
        rows,
        skipped,
        total_failed,
    }
}

pub const CSV_HEADER: &str = "spec,size,n_units,n_radical,n_max_ideals,gamma_vertices,\
gamma_edges,gamma_diam,gamma_girth,gammar_diam,gammar_girth,omega_clique,chi,\
is_split_omega,is_bipartite_gamma,is_star_gamma,checks_failed";

fn opt_u32(v: Option<u32>) -> String {
    v.map_or_else(|| "inf".to_string(), |d| d.to_string())
}

fn opt_u64_na(v: Option<u64>) -> String {
    v.map_or_else(|| "na".to_string(), |d| d.to_string())
}

pub fn rows_to_csv(rows: &[SurveyRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.spec,
            r.size,
            r.n_units,
            r.n_radical,
            r.n_max_ideals,
            r.gamma_vertices,
            r.gamma_edges,
            opt_u32(r.gamma_diam),
            opt_u32(r.gamma_girth),
            opt_u32(r.gammar_diam),
            opt_u32(r.gammar_girth),
            opt_u64_na(r.omega_clique),
            opt_u64_na(r.chi),
            r.is_split_omega,
            r.is_bipartite_gamma,
            r.is_star_gamma,
            r.checks_failed,
        ));
    }
    out
}
