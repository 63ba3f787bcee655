use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use std::hint::black_box;

use netmoment::hashdb::query;
use netmoment::motif::moment_u;
use netmoment::{combine, summarize, Motif};
use netmoment_bench::{database, hashed, sampled_graph};

fn motif_counting(c: &mut Criterion) {
    let mut group = c.benchmark_group("moment_u");
    for m in [100, 200, 400] {
        let g = sampled_graph(m, 1);
        for motif in [Motif::vshape(), Motif::triangle()] {
            group.bench_with_input(BenchmarkId::new(motif.name().to_string(), m), &g, |b, g| {
                b.iter(|| moment_u(black_box(g), &motif).unwrap())
            });
        }
    }
    group.finish();
}

fn summaries(c: &mut Criterion) {
    let mut group = c.benchmark_group("summarize");
    group.sample_size(20);
    for m in [50, 100, 200] {
        let g = sampled_graph(m, 2);
        for motif in [Motif::vshape(), Motif::triangle()] {
            group.bench_with_input(BenchmarkId::new(motif.name().to_string(), m), &g, |b, g| {
                b.iter(|| summarize(black_box(g), &motif, "g").unwrap())
            });
        }
    }
    group.finish();
}

fn combining(c: &mut Criterion) {
    let a = hashed(100, 3);
    let b = hashed(120, 4);
    let (sa, sb) = (a.summary("triangle").unwrap(), b.summary("triangle").unwrap());
    c.bench_function("combine", |bench| bench.iter(|| combine(black_box(sa), black_box(sb)).unwrap()));
}

fn querying(c: &mut Criterion) {
    let keyword = hashed(100, 99);
    let mut group = c.benchmark_group("query");
    for k in [1_000, 10_000] {
        let db = database(k, 60);
        group.throughput(Throughput::Elements(k as u64));
        group.bench_with_input(BenchmarkId::from_parameter(k), &db, |b, db| {
            b.iter(|| query(&keyword, black_box(db), "triangle", 0.05, 0.01, 1).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, motif_counting, summaries, combining, querying);
criterion_main!(benches);
