use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use zbconc::rng::stream_rng;
use zbconc::zerobias::{convolve, sample_zero_bias, zero_bias_transform, SumCoupling};
use zbconc_bench::spread_dist;

fn transform(c: &mut Criterion) {
    for atoms in [4, 64, 1024] {
        let d = spread_dist(atoms);
        c.bench_function(&format!("transform/{atoms}_atoms"), |b| {
            b.iter(|| zero_bias_transform(black_box(&d)).unwrap())
        });
    }
    let star = zero_bias_transform(&spread_dist(64)).unwrap();
    c.bench_function("sample_zero_bias/10k", |b| {
        b.iter_batched(
            || stream_rng(1, 0),
            |mut rng| {
                (0..10_000)
                    .map(|_| sample_zero_bias(&star, &mut rng))
                    .sum::<f64>()
            },
            BatchSize::SmallInput,
        )
    });
}

fn sums(c: &mut Criterion) {
    let parts = vec![spread_dist(8); 4];
    c.bench_function("convolve/4x8_atoms", |b| {
        b.iter(|| convolve(black_box(&parts)).unwrap())
    });
    let coupling = SumCoupling::new(vec![spread_dist(5); 20]).unwrap();
    c.bench_function("coupling_sample/10k", |b| {
        b.iter_batched(
            || stream_rng(2, 0),
            |mut rng| {
                (0..10_000)
                    .map(|_| coupling.sample(&mut rng).ystar)
                    .sum::<f64>()
            },
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(benches, transform, sums);
criterion_main!(benches);
