use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use wkern::oracles::{solve_eewhc_exact, Caps};
use wkern::prime_hash::{kernelize_eewhc_exact, Epsilon, KernelConfig};
use wkern::suite::corpus::load_hypergraphs;
use wkern::vc_compress::{compress_vc_weights, star_witness};
use wkern::Exec;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn kernel_batch(c: &mut Criterion) {
    let corpus = load_hypergraphs("eewc_yes.jsonl");
    let batch = &corpus[..64];
    let eps = Epsilon::new(1, 10).unwrap();
    let (kcfg, caps) = (KernelConfig::default(), Caps::default());
    let mut group = c.benchmark_group("kernelize_and_solve_64");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                exec.map(batch, |h| {
                    let k = kernelize_eewhc_exact(h, eps, 7, &kcfg).unwrap();
                    solve_eewhc_exact(&k.instance, &caps).unwrap().is_yes()
                })
            })
        });
    }
    group.finish();
}

fn compression_batch(c: &mut Criterion) {
    let graphs: Vec<_> = (2..=40).map(star_witness).collect();
    let mut group = c.benchmark_group("compress_stars");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| exec.map(black_box(&graphs), |g| compress_vc_weights(g).unwrap().0))
        });
    }
    group.finish();
}

criterion_group!(benches, kernel_batch, compression_batch);
criterion_main!(benches);
