use std::hint::black_box;

use charcnn_core::model::{build, forward, sample_gradients, Gradients};
use charcnn_core::nn::Mode;
use charcnn_core::{Layout, ModelConfig};
use criterion::{criterion_group, criterion_main, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn full_model(c: &mut Criterion) {
    let mut group = c.benchmark_group("CNN3-FC2 L=1000");
    group.sample_size(20);
    let cfg = ModelConfig::new(Layout::new(3, 2), 42, 1000);
    let params = build(&cfg, 0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let x: Vec<u32> = (0..1000).map(|_| rng.random_range(1..=42)).collect();
    group.bench_function("forward eval", |b| {
        b.iter(|| forward(&params, &cfg, black_box(&x), Mode::Eval, 0).unwrap())
    });
    let mut grads = Gradients::zeros_like(&params);
    group.bench_function("forward + backward", |b| {
        b.iter(|| {
            grads.fill_zero();
            sample_gradients(&params, &cfg, black_box(&x), 1, Mode::Train, 7, &mut grads).unwrap()
        })
    });
    group.finish();
}

criterion_group!(benches, full_model);
criterion_main!(benches);
