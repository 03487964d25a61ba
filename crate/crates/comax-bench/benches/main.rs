use comax_core::graph::{build_gamma, build_omega, collapse_false_twins_by_rows};
use comax_core::invariants::{chromatic_number, clique_number, girth};
use comax_core::ring::{BaseSpec, Limits, Ring, RingSpec};
use comax_core::theorems::{run_all_on, survey_row, RingAnalysis};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn named_specs() -> Vec<(&'static str, RingSpec)> {
    vec![
        ("Z12", RingSpec::zn(12)),
        ("Z210", RingSpec::zn(210)),
        (
            "GF(8)^2",
            RingSpec::new(vec![BaseSpec::Gf { p: 2, k: 3 }; 2]),
        ),
        ("Z9^3", RingSpec::new(vec![BaseSpec::Zn(9); 3])),
    ]
}

fn bench_make_ring(c: &mut Criterion) {
    let mut group = c.benchmark_group("make_ring");
    for (name, spec) in named_specs() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &spec, |b, spec| {
            b.iter(|| Ring::new(spec.clone()).unwrap());
        });
    }
    group.finish();
}

fn bench_build_graphs(c: &mut Criterion) {
    let mut group = c.benchmark_group("build");
    for (name, spec) in named_specs() {
        let ring = Ring::new(spec).unwrap();
        group.bench_function(BenchmarkId::new("omega", name), |b| {
            b.iter(|| build_omega(&ring));
        });
        group.bench_function(BenchmarkId::new("gamma", name), |b| {
            b.iter(|| build_gamma(&ring));
        });
    }
    group.finish();
}

fn bench_solvers(c: &mut Criterion) {
    let mut group = c.benchmark_group("solvers");
    let ring = Ring::new(RingSpec::zn(210)).unwrap();
    let omega = build_omega(&ring);
    let collapsed = collapse_false_twins_by_rows(&omega);
    group.bench_function("chi_omega_Z210_collapsed", |b| {
        b.iter(|| chromatic_number(&collapsed.graph, 64).unwrap());
    });
    group.bench_function("clique_omega_Z210_collapsed", |b| {
        b.iter(|| clique_number(&collapsed.graph, 64).unwrap());
    });
    let gamma = build_gamma(&ring);
    group.bench_function("girth_gamma_Z210", |b| {
        b.iter(|| girth(&gamma));
    });
    group.finish();
}

fn bench_suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("suite");
    group.sample_size(10);
    let ring = Ring::new(RingSpec::zn(60)).unwrap();
    group.bench_function("run_all_Z60", |b| {
        b.iter(|| {
            let analysis = RingAnalysis::new(&ring);
            run_all_on(&analysis)
        });
    });
    group.bench_function("survey_row_Z60", |b| {
        b.iter(|| survey_row(&RingSpec::zn(60), &Limits::default()).unwrap());
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_make_ring,
    bench_build_graphs,
    bench_solvers,
    bench_suite
);
criterion_main!(benches);
