use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use hfree_bench::{dual_plane_case, fdk_case};
use hfree_core::geometry::{build_plane, verify_3design};
use hfree_core::oracle::{conflict_hypergraph, ex_exact};
use hfree_core::profile::venn_profile;

fn plane_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("plane");
    group.sample_size(10);
    for q in [3u32, 5, 7] {
        group.bench_with_input(BenchmarkId::new("build", q), &q, |b, &q| b.iter(|| build_plane(q).unwrap()));
        let plane = build_plane(q).unwrap();
        group.bench_with_input(BenchmarkId::new("verify_3design", q), &plane, |b, p| b.iter(|| verify_3design(p)));
    }
    group.finish();
}

fn conflicts(c: &mut Criterion) {
    let mut group = c.benchmark_group("conflicts");
    group.sample_size(10);
    for q in [3u32, 5, 7] {
        let (f, p) = dual_plane_case(q);
        let n = f.len() as u64;
        group.throughput(Throughput::Elements(n * (n - 1) * (n - 2) / 6));
        group.bench_with_input(BenchmarkId::new("dual_plane", q), &(f, p), |b, (f, p)| {
            b.iter(|| conflict_hypergraph(f, p).unwrap())
        });
    }
    group.finish();
}

fn exact_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("ex_exact");
    group.sample_size(10);
    for q in [3u32, 5] {
        let case = dual_plane_case(q);
        group.bench_with_input(BenchmarkId::new("dual_plane", q), &case, |b, (f, p)| b.iter(|| ex_exact(f, p).unwrap()));
    }
    for m in [8usize, 12, 16] {
        let case = fdk_case(m);
        group.bench_with_input(BenchmarkId::new("fdk", m), &case, |b, (f, p)| b.iter(|| ex_exact(f, p).unwrap()));
    }
    group.finish();
}

fn venn(c: &mut Criterion) {
    let mut group = c.benchmark_group("venn_profile");
    let (f, _) = dual_plane_case(7);
    for k in [2usize, 3, 5, 8] {
        let edges: Vec<_> = f.edges()[..k].iter().collect();
        group.bench_with_input(BenchmarkId::new("dual_plane_7", k), &edges, |b, e| b.iter(|| venn_profile(e).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, plane_build, conflicts, exact_search, venn);
criterion_main!(benches);
