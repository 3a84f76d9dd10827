use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use degseq::colored::solve_colored_dp;
use degseq::multicriteria::{maximize_multicriteria, ChamberQueries, MultiCriteriaOptions};
use degseq::oracles::{linopt_prescribed, DirectionKind};
use degseq::treedepth::{heuristic_forest, treedepth_exact};
use degseq_bench::{colored_instance, multi_instance};

fn linopt(c: &mut Criterion) {
    let mut group = c.benchmark_group("linopt_prescribed");
    for edges in [100, 1000] {
        let inst = multi_instance(60.max(edges / 10), edges);
        let u: Vec<i64> = (0..inst.graph.n() as i64).map(|i| (i * 7919) % 101 - 50).collect();
        let m = inst.graph.num_edges() / 2;
        group.bench_with_input(BenchmarkId::from_parameter(edges), &inst, |b, inst| {
            b.iter(|| linopt_prescribed(&inst.graph, m, black_box(&u)).unwrap())
        });
    }
    group.finish();
}

fn chambers(c: &mut Criterion) {
    let mut group = c.benchmark_group("chamber_queries");
    group.sample_size(10);
    for edges in [50, 150, 300] {
        let inst = multi_instance(60, edges);
        let weights = inst.criteria.as_ref().unwrap().weights.clone();
        group.bench_with_input(BenchmarkId::from_parameter(edges), &weights, |b, w| {
            b.iter(|| {
                ChamberQueries::new(
                    &inst.graph,
                    w,
                    DirectionKind::Prescribed,
                    MultiCriteriaOptions::default(),
                )
                .unwrap()
            })
        });
    }
    group.finish();
}

fn multicriteria(c: &mut Criterion) {
    let mut group = c.benchmark_group("maximize_multicriteria");
    group.sample_size(10);
    let inst = multi_instance(60, 300);
    let objective = inst.multicriteria_objective().unwrap();
    group.bench_function("n60_e300", |b| {
        b.iter(|| maximize_multicriteria(&inst.graph, 150, &objective).unwrap())
    });
    group.finish();
}

fn colored(c: &mut Criterion) {
    let mut group = c.benchmark_group("colored_dp");
    group.sample_size(10);
    for n in [50, 100, 200] {
        let inst = colored_instance(n, 4);
        let objective = inst.separable_objective().unwrap();
        let forest = inst.forest.clone().unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &inst, |b, inst| {
            b.iter(|| solve_colored_dp(&inst.graph, &forest, inst.coloring.as_ref(), &objective).unwrap())
        });
    }
    group.finish();
}

fn treedepth(c: &mut Criterion) {
    let mut group = c.benchmark_group("treedepth");
    let inst = colored_instance(14, 4);
    group.bench_function("exact_n14", |b| b.iter(|| treedepth_exact(&inst.graph).unwrap()));
    let large = colored_instance(200, 4);
    group.bench_function("heuristic_n200", |b| b.iter(|| heuristic_forest(&large.graph)));
    group.finish();
}

criterion_group!(benches, linopt, chambers, multicriteria, colored, treedepth);
criterion_main!(benches);
