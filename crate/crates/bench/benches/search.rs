use std::hint::black_box;

use carath_core::search::{maximize, Objective, SearchConfig};
use criterion::{criterion_group, criterion_main, Criterion};
use num_complex::Complex64;

fn sharpness(c: &mut Criterion) {
    let mut group = c.benchmark_group("maximize");
    group.sample_size(10);
    for (name, objective) in [
        ("livingston_k1_n3", Objective::Livingston { k: 1, n: 3, w: Complex64::new(1.5, 0.5) }),
        ("determinant_k2_n2", Objective::Determinant { k: 2, n: 2, w: Complex64::new(0.4, 0.3) }),
    ] {
        let cfg = SearchConfig {
            restarts: 5,
            warm_start: false,
            ..SearchConfig::for_objective(&objective, 11)
        };
        group.bench_function(name, |b| b.iter(|| maximize(black_box(&objective), &cfg).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, sharpness);
criterion_main!(benches);
