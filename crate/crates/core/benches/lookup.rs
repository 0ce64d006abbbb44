use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use pthash::hashing::mix64;
use pthash::{build_unencoded, BuildConfig, EncoderKind, Exec, Mphf};

const N: u64 = 1_000_000;

fn setup() -> (Vec<u64>, pthash::BuildOutput) {
    let ks: Vec<u64> = (0..N).map(|i| mix64(i ^ 0xBEEF)).collect();
    let out = build_unencoded(&ks, &BuildConfig::new(7.0, 0.99).with_seed(3)).unwrap();
    (ks, out)
}

fn per_encoder(c: &mut Criterion) {
    let (ks, out) = setup();
    let mut g = c.benchmark_group("evaluate");
    g.sample_size(10).throughput(Throughput::Elements(N));
    for kind in EncoderKind::ALL {
        let f = Mphf::from_output(&out, kind);
        g.bench_function(BenchmarkId::from_parameter(kind), |b| {
            b.iter(|| ks.iter().fold(0u64, |acc, k| acc ^ f.evaluate(k)))
        });
    }
    g.finish();
}

fn batch(c: &mut Criterion) {
    let (ks, out) = setup();
    let f = Mphf::from_output(&out, EncoderKind::DictionaryDictionary);
    let mut buf = vec![0u64; ks.len()];
    let mut g = c.benchmark_group("evaluate_batch");
    g.sample_size(10).throughput(Throughput::Elements(N));
    g.bench_function("sequential", |b| {
        b.iter(|| f.evaluate_batch(&ks, &mut buf, Exec::Sequential))
    });
    #[cfg(feature = "parallel")]
    g.bench_function("parallel", |b| {
        b.iter(|| f.evaluate_batch(&ks, &mut buf, Exec::Parallel))
    });
    g.finish();
}

criterion_group!(benches, per_encoder, batch);
criterion_main!(benches);
