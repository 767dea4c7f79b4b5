//! Each workload runs once inside a single-thread rayon pool and once on the
//! global pool. Built without the `parallel` feature, both variants take the
//! sequential path and should time the same.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hcol_core::graph::{find_homomorphism, make_cycle, make_kneser, make_random};
use hcol_core::kernels::{combinatorial_kernel, random_cover_instance};
use hcol_core::reductions::{find_edge_gadget, verify_edge_gadget};
use hcol_core::witness::witness_number;
use std::hint::black_box;

fn pools() -> [(&'static str, rayon::ThreadPool); 2] {
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let all = rayon::ThreadPoolBuilder::new().build().unwrap();
    [("sequential", single), ("parallel", all)]
}

fn bench_witness(c: &mut Criterion) {
    let mut group = c.benchmark_group("witness_number");
    let graphs = [("gnp40", make_random(40, 7)), ("kneser7_3", make_kneser(7, 3).unwrap())];
    for (name, pool) in pools() {
        for (gname, g) in &graphs {
            group.bench_with_input(BenchmarkId::new(name, gname), g, |b, g| {
                b.iter(|| pool.install(|| witness_number(black_box(g)).unwrap().q))
            });
        }
    }
    group.finish();
}

fn bench_kernel(c: &mut Criterion) {
    let mut group = c.benchmark_group("combinatorial_kernel");
    group.sample_size(20);
    let inst = random_cover_instance(400, 18, 0.3, 11);
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::new(name, "n400_k18_q3"), |b| {
            b.iter(|| pool.install(|| combinatorial_kernel(black_box(&inst), 3).unwrap().stats.vertices))
        });
    }
    group.finish();
}

fn bench_gadgets(c: &mut Criterion) {
    let mut group = c.benchmark_group("edge_gadget");
    group.sample_size(10);
    let k62 = make_kneser(6, 2).unwrap();
    let gadget = find_edge_gadget(&k62, 7).unwrap().found().unwrap();
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::new(name, "verify_k62"), |b| {
            b.iter(|| {
                pool.install(|| verify_edge_gadget(&k62, gadget.graph(), gadget.a(), gadget.b()).unwrap())
            })
        });
        group.bench_function(BenchmarkId::new(name, "search_k62"), |b| {
            b.iter(|| pool.install(|| find_edge_gadget(black_box(&k62), 7).unwrap()))
        });
    }
    group.finish();
}

fn bench_hom(c: &mut Criterion) {
    let mut group = c.benchmark_group("find_homomorphism");
    group.sample_size(20);
    let g = make_random(60, 3);
    let c7 = make_cycle(7).unwrap();
    let k52 = make_kneser(5, 2).unwrap();
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::new(name, "gnp60_to_c7"), |b| {
            b.iter(|| pool.install(|| find_homomorphism(black_box(&g), &c7, None).is_some()))
        });
        group.bench_function(BenchmarkId::new(name, "kneser52_self"), |b| {
            b.iter(|| pool.install(|| find_homomorphism(black_box(&k52), &k52, None).is_some()))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_witness, bench_kernel, bench_gadgets, bench_hom);
criterion_main!(benches);
