//! Compares the sequential and strategy-dispatching evaluation paths on the
//! three loop shapes that dominate the crate's runtime: tensor-quadrature
//! node sweeps, Monte Carlo sample batches, and per-node matrix products.
//!
//! With the default `parallel` feature, `map_indexed` hands large batches to
//! rayon while `map_indexed_seq` stays on one thread, so the pairs below
//! measure the dispatch benefit directly. Built with
//! `--no-default-features`, both paths are sequential and the pairs should
//! coincide — a quick way to confirm the fallback has no overhead surprises.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use nalgebra::DMatrix;
use num_complex::Complex64;

use fint_core::exec;
use fint_core::gamma_poisson::kernels;

/// Damped-kernel evaluation across a frequency sweep: the inner loop of the
/// distributional pairings, one oscillatory quadrature per index.
fn kernel_sweep(n: usize, seq: bool) -> Complex64 {
    let f = |k: usize| {
        let omega = -0.2 + 0.4 * (k as f64) / (n as f64);
        kernels::moment_kernel(omega, 400.0, 1)
    };
    let values = if seq {
        exec::map_indexed_seq(n, f)
    } else {
        exec::map_indexed(n, f)
    };
    exec::pairwise_sum(&values)
}

/// Per-sample pseudo-random work mirroring the Monte Carlo inner loop.
fn mc_batch(n: usize, seq: bool) -> f64 {
    let f = |k: usize| {
        let mut state = (k as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        let mut acc = 0.0;
        for _ in 0..4 {
            state ^= state >> 30;
            state = state.wrapping_mul(0xBF58_476D_1CE4_E5B9);
            let u = (state >> 11) as f64 / (1u64 << 53) as f64;
            acc += (-u * u).exp();
        }
        acc
    };
    let values = if seq {
        exec::map_indexed_seq(n, f)
    } else {
        exec::map_indexed(n, f)
    };
    exec::pairwise_sum_f64(&values)
}

/// Per-node 2×2 complex matrix products, the shape of the propagator series'
/// integrand assembly.
fn matrix_products(n: usize, seq: bool) -> f64 {
    let h = DMatrix::from_row_slice(
        2,
        2,
        &[
            Complex64::new(1.0, 0.0),
            Complex64::new(0.3, 0.1),
            Complex64::new(0.3, -0.1),
            Complex64::new(-1.0, 0.0),
        ],
    );
    let f = move |k: usize| {
        let t = k as f64 * 1e-4;
        let a = h.map(|z| z * Complex64::new(t.cos(), t.sin()));
        (&a * &h)[(0, 0)].norm()
    };
    let values = if seq {
        exec::map_indexed_seq(n, f)
    } else {
        exec::map_indexed(n, f)
    };
    exec::pairwise_sum_f64(&values)
}

fn bench_backends(c: &mut Criterion) {
    let mut group = c.benchmark_group("kernel_sweep_4096");
    group.bench_function("sequential", |b| {
        b.iter_batched(|| (), |_| kernel_sweep(4096, true), BatchSize::SmallInput)
    });
    group.bench_function("dispatched", |b| {
        b.iter_batched(|| (), |_| kernel_sweep(4096, false), BatchSize::SmallInput)
    });
    group.finish();

    let mut group = c.benchmark_group("mc_batch_1m");
    group.bench_function("sequential", |b| {
        b.iter_batched(|| (), |_| mc_batch(1 << 20, true), BatchSize::SmallInput)
    });
    group.bench_function("dispatched", |b| {
        b.iter_batched(|| (), |_| mc_batch(1 << 20, false), BatchSize::SmallInput)
    });
    group.finish();

    let mut group = c.benchmark_group("matrix_products_65536");
    group.bench_function("sequential", |b| {
        b.iter_batched(|| (), |_| matrix_products(1 << 16, true), BatchSize::SmallInput)
    });
    group.bench_function("dispatched", |b| {
        b.iter_batched(|| (), |_| matrix_products(1 << 16, false), BatchSize::SmallInput)
    });
    group.finish();
}

criterion_group!(benches, bench_backends);
criterion_main!(benches);
