use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use sostar::verifier::{build_condition_data, Scope, VerifyOptions};

fn bench_condition_data(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_condition_data");
    group.sample_size(10);
    for d in [11u64, 19] {
        for jobs in [1usize, 4] {
            let opts = VerifyOptions {
                scope: Scope::ProofMin,
                jobs,
                ..VerifyOptions::default()
            };
            group.bench_with_input(
                BenchmarkId::new(format!("d{}", d), format!("jobs{}", jobs)),
                &opts,
                |b, opts| b.iter(|| build_condition_data(d, opts).unwrap()),
            );
        }
    }
    group.finish();
}

criterion_group!(benches, bench_condition_data);
criterion_main!(benches);
