use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use pthash::builder::{map_keys, table_size};
use pthash::hashing::{mix64, BucketParams, SeededHasher};
use pthash::{build_unencoded, BuildConfig, Exec};

const N: u64 = 1_000_000;

fn keys() -> Vec<u64> {
    (0..N).map(|i| mix64(i ^ 0xC0FFEE)).collect()
}

fn strategies() -> Vec<(&'static str, Exec)> {
    let mut v = vec![("sequential", Exec::Sequential)];
    #[cfg(feature = "parallel")]
    v.push(("parallel", Exec::Parallel));
    v
}

fn map_stage(c: &mut Criterion) {
    let ks = keys();
    let params = BucketParams::new(N, table_size(N, 0.99), 7.0);
    let hasher = SeededHasher::new(1);
    let mut g = c.benchmark_group("map_keys");
    g.sample_size(10).throughput(Throughput::Elements(N));
    for (name, exec) in strategies() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| map_keys(&ks, &hasher, &params, exec).unwrap())
        });
    }
    g.finish();
}

fn full_build(c: &mut Criterion) {
    let ks = keys();
    let mut g = c.benchmark_group("build");
    g.sample_size(10).throughput(Throughput::Elements(N));
    for alpha in [1.0, 0.99] {
        for (name, exec) in strategies() {
            let cfg = BuildConfig::new(7.0, alpha).with_seed(1).with_exec(exec);
            g.bench_function(BenchmarkId::new(name, format!("alpha={alpha}")), |b| {
                b.iter(|| build_unencoded(&ks, &cfg).unwrap())
            });
        }
    }
    g.finish();
}

criterion_group!(benches, map_stage, full_build);
criterion_main!(benches);
