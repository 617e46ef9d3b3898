//! Randomized invariant checks (proptest).
//!
//! Each property encodes a structural law the library promises for *all*
//! admissible inputs, not just the pinned fixtures of the unit tests and
//! the verification battery: bit-exact projective consistency, coarsening
//! composition, backend determinism, Pfaffian algebra, incomplete-gamma
//! complementarity, counting-tail monotonicity, rescaling covariance of
//! the rate normalization, evolution unitarity, and involution laws.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use proptest::prelude::*;

use fint_core::exec;
use fint_core::gamma_poisson::dyson::{
    dyson_evolution, unitarity_drift_bound, OperatorHamiltonian,
};
use fint_core::gamma_poisson::incomplete::{lower_incomplete, upper_incomplete_cf};
use fint_core::gamma_poisson::poisson::{poisson_tail, waiting_time_volume};
use fint_core::gamma_poisson::{gamma_normalization, GammaMode, GammaSpec};
use fint_core::gaussian::{free_kernel, propagator, PropagatorKind, PropagatorRequest};
use fint_core::group::{function_distance, involution, GroupFunction, GroupSpec};
use fint_core::linalg;
use fint_core::quad::{integrate_quad, Domain, WeightHint};
use fint_core::slicing::{coarsen, Interpolation, Knot, Path, Projection, TimeGrid};
use fint_core::special;
use fint_core::symplectic::pfaffian;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn bits_equal(a: &DVector<Complex64>, b: &DVector<Complex64>) -> bool {
    a.len() == b.len()
        && a.iter()
            .zip(b.iter())
            .all(|(x, y)| x.re.to_bits() == y.re.to_bits() && x.im.to_bits() == y.im.to_bits())
}

/// Strictly increasing times in (0, 1), at least `min` of them.
fn times_strategy(min: usize, max: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.02f64..0.99, min..=max).prop_map(|mut v| {
        v.sort_by(f64::total_cmp);
        v.dedup();
        v
    })
}

fn complex_strategy(mag: f64) -> impl Strategy<Value = Complex64> {
    (-mag..mag, -mag..mag).prop_map(|(re, im)| Complex64::new(re, im))
}

fn path_strategy(components: usize) -> impl Strategy<Value = Path> {
    let knot_values =
        prop::collection::vec(complex_strategy(2.0), components..=components);
    (
        prop::collection::vec(complex_strategy(2.0), components..=components),
        times_strategy(1, 5),
        prop::collection::vec(knot_values, 5..=5),
        prop::bool::ANY,
    )
        .prop_map(move |(base, ts, values, linear)| {
            let knots: Vec<Knot> = ts
                .iter()
                .zip(values)
                .map(|(&t, value)| Knot { t, value })
                .collect();
            let interpolation = if linear {
                Interpolation::PiecewiseLinear
            } else {
                Interpolation::PiecewiseConstant
            };
            Path::new(base, interpolation, knots).expect("strictly increasing knots")
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Projecting on a coarse grid equals coarsening the fine projection,
    /// bit for bit, whenever the coarse points are a subset of the fine.
    #[test]
    fn projection_then_coarsening_is_bit_exact(
        times in times_strategy(4, 12),
        path in path_strategy(2),
        offset in 0usize..2,
    ) {
        let fine = TimeGrid::new(0.0, 1.0, times.clone()).expect("increasing");
        let coarse_points: Vec<f64> =
            times.iter().copied().skip(offset).step_by(2).collect();
        prop_assume!(!coarse_points.is_empty());
        let coarse = TimeGrid::new(0.0, 1.0, coarse_points).expect("subset");
        let map = coarsen(&fine, &coarse, 2).expect("nested");

        let direct = Projection::new(coarse, 2).project(&path).expect("2 components");
        let via_fine = map.apply(&Projection::new(fine, 2).project(&path).expect("2 components"));
        prop_assert!(bits_equal(&direct, &via_fine));
    }

    /// Coarsening maps compose: going fine→mid→coarse equals fine→coarse.
    #[test]
    fn coarsening_composes_across_nested_triples(
        times in times_strategy(5, 16),
        reals in prop::collection::vec(-3.0f64..3.0, 48..=48),
    ) {
        let fine = TimeGrid::new(0.0, 1.0, times.clone()).expect("increasing");
        let mid_points: Vec<f64> = times.iter().copied().step_by(2).collect();
        let coarse_points: Vec<f64> = mid_points.iter().copied().step_by(2).collect();
        let mid = TimeGrid::new(0.0, 1.0, mid_points).expect("subset");
        let coarse = TimeGrid::new(0.0, 1.0, coarse_points).expect("subset");

        let m = 1usize;
        let fine_to_mid = coarsen(&fine, &mid, m).expect("nested");
        let mid_to_coarse = coarsen(&mid, &coarse, m).expect("nested");
        let fine_to_coarse = coarsen(&fine, &coarse, m).expect("nested");

        let v = DVector::from_iterator(
            fine.len(),
            reals.iter().take(fine.len()).map(|&x| c(x, -0.5 * x)),
        );
        let one_hop = fine_to_coarse.apply(&v);
        let two_hops = mid_to_coarse.apply(&fine_to_mid.apply(&v));
        prop_assert!(bits_equal(&one_hop, &two_hops));
    }

    /// The dispatched node loop gives bitwise the sequential answer, at
    /// sizes on both sides of the parallel threshold.
    #[test]
    fn dispatched_map_matches_sequential_bitwise(n in 1usize..2048) {
        let f = |i: usize| {
            let x = (i as f64 + 0.5).sqrt();
            x.sin() * (x * 1e-3).exp() + 1.0 / (x + 2.0)
        };
        let seq = exec::map_indexed_seq(n, f);
        let dispatched = exec::map_indexed(n, f);
        prop_assert_eq!(seq.len(), dispatched.len());
        for (a, b) in seq.iter().zip(&dispatched) {
            prop_assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    /// Identical Monte Carlo configurations give bit-identical results,
    /// and the result echoes the seed it used.
    #[test]
    fn monte_carlo_is_seed_deterministic(
        seed in any::<u64>(),
        hi in 0.5f64..3.0,
    ) {
        let domain = Domain::Box { bounds: vec![(0.0, hi), (0.0, hi)] };
        let cfg = fint_core::quad::McConfig {
            samples: 4096,
            seed,
            proposal: fint_core::quad::Proposal::UniformBox {
                bounds: vec![(0.0, hi), (0.0, hi)],
            },
        };
        let f = |x: &[f64]| c(x[0] * x[1] + 0.3, x[0] - x[1]);
        let a = fint_core::quad::integrate_mc(f, &domain, &cfg).expect("admissible");
        let b = fint_core::quad::integrate_mc(f, &domain, &cfg).expect("admissible");
        prop_assert_eq!(a.value.re.to_bits(), b.value.re.to_bits());
        prop_assert_eq!(a.value.im.to_bits(), b.value.im.to_bits());
        prop_assert_eq!(a.abs_error_estimate.to_bits(), b.abs_error_estimate.to_bits());
        prop_assert_eq!(a.rng_seed, Some(seed));
        prop_assert_eq!(b.rng_seed, Some(seed));
    }

    /// Seeded ordered-volume runs replay bitwise through the public API.
    #[test]
    fn waiting_time_replays_bitwise(seed in any::<u64>(), x in 0.3f64..4.0) {
        let a = waiting_time_volume(3, x, 20_000, seed).expect("admissible");
        let b = waiting_time_volume(3, x, 20_000, seed).expect("admissible");
        prop_assert_eq!(a.value.re.to_bits(), b.value.re.to_bits());
        prop_assert_eq!(a.abs_error_estimate.to_bits(), b.abs_error_estimate.to_bits());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Pf(M)² = det(M) and congruence covariance on random skew matrices.
    #[test]
    fn pfaffian_squares_to_determinant(
        half in 1usize..=4,
        entries in prop::collection::vec(-1.0f64..1.0, 64..=64),
    ) {
        let n = 2 * half;
        let mut m = DMatrix::<f64>::zeros(n, n);
        let mut it = entries.iter();
        for i in 0..n {
            for j in i + 1..n {
                let v = *it.next().expect("enough entries for n <= 8");
                m[(i, j)] = v;
                m[(j, i)] = -v;
            }
        }
        let pf = pfaffian(&m).expect("skew");
        let det = m.determinant();
        prop_assert!((pf * pf - det).abs() <= 1e-10 * det.abs().max(1e-12));
    }

    /// Quadrature is exact (to roundoff) on polynomials once the order
    /// exceeds the degree.
    #[test]
    fn quadrature_is_exact_on_polynomials(
        coeffs in prop::collection::vec(-2.0f64..2.0, 6..=6),
        lo in -2.0f64..0.0,
        width in 0.5f64..3.0,
        order in 4usize..24,
    ) {
        let hi = lo + width;
        let f = {
            let coeffs = coeffs.clone();
            move |x: &[f64]| {
                let mut acc = 0.0;
                for &a in coeffs.iter().rev() {
                    acc = acc * x[0] + a;
                }
                c(acc, 0.0)
            }
        };
        let got = integrate_quad(
            f,
            &Domain::Box { bounds: vec![(lo, hi)] },
            WeightHint::None,
            order,
        )
        .expect("finite box");
        let mut exact = 0.0;
        for (k, &a) in coeffs.iter().enumerate() {
            exact += a * (hi.powi(k as i32 + 1) - lo.powi(k as i32 + 1)) / (k as f64 + 1.0);
        }
        let scale = 1.0f64.max(exact.abs());
        prop_assert!((got.value.re - exact).abs() <= 1e-12 * scale);
        prop_assert!(got.value.im.abs() <= 1e-14 * scale);
    }

    /// γ(α,c) + Γ(α,c) = Γ(α), with the tail from the independent
    /// continued-fraction route.
    #[test]
    fn incomplete_gamma_parts_sum_to_gamma(
        alpha in 0.3f64..3.0,
        excess in 1.5f64..12.0,
    ) {
        let a = c(alpha, 0.0);
        let x = c(alpha + excess, 0.0);
        let total = lower_incomplete(a, x).expect("Re(α) > 0")
            + upper_incomplete_cf(a, x).expect("CF region");
        let gamma_a = special::gamma(a);
        prop_assert!((total - gamma_a).norm() <= 1e-12 * gamma_a.norm());
    }

    /// Counting tails are probabilities, decreasing in the level.
    #[test]
    fn poisson_tail_is_monotone_probability(x in 0.05f64..10.0) {
        let mut previous = 1.0f64;
        for n in 0..=20i64 {
            let p = poisson_tail(n, c(x, 0.0)).expect("admissible");
            prop_assert!(p.im.abs() <= 1e-13);
            prop_assert!(p.re >= -1e-12 && p.re <= 1.0 + 1e-12);
            prop_assert!(p.re <= previous + 1e-12);
            previous = p.re;
        }
    }

    /// Rescaling every rate by r > 0 rescales the normalization by
    /// r^{−αd} (multiplicative-measure covariance), through quadrature.
    #[test]
    fn gamma_normalization_rescales_covariantly(
        alpha in 0.4f64..2.2,
        b1 in 0.4f64..3.0,
        b2 in 0.4f64..3.0,
        r in 0.4f64..3.5,
    ) {
        let beta = vec![c(b1, 0.0), c(b2, 0.0)];
        let scaled: Vec<Complex64> = beta.iter().map(|&b| b * r).collect();
        let base = gamma_normalization(&GammaSpec::new(c(alpha, 0.0), beta, None, GammaMode::RealPositive).expect("Re(β) > 0"))
            .expect("admissible").value;
        let lhs = gamma_normalization(&GammaSpec::new(c(alpha, 0.0), scaled, None, GammaMode::RealPositive).expect("Re(β) > 0"))
            .expect("admissible").value;
        let rhs = base * (-c(alpha, 0.0) * 2.0 * r.ln()).exp();
        prop_assert!((lhs - rhs).norm() <= 1e-8 * rhs.norm());
    }

    /// The composed free kernel reproduces the single-slice closed form on
    /// random admissible parameters and slice counts.
    #[test]
    fn free_composition_is_a_semigroup(
        n in 1usize..40,
        re_s in 0.5f64..2.0,
        im_s in -1.0f64..1.0,
        mass in 0.5f64..2.0,
        t_total in 0.4f64..2.0,
        x_a in -1.0f64..1.0,
        x_b in -1.0f64..1.0,
    ) {
        let scale = c(re_s, im_s);
        let req = PropagatorRequest {
            kind: PropagatorKind::Free,
            mass,
            scale,
            grid: TimeGrid::uniform(0.0, t_total, n).expect("n >= 1"),
            x_a,
            x_b,
            analytic_continuation: false,
        };
        let composed = propagator(&req).expect("admissible").value;
        let closed = free_kernel(mass, scale, t_total, x_a, x_b);
        prop_assert!((composed - closed).norm() <= 1e-11 * (1.0 + closed.norm()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// Evolution stays within its own unitarity certificate at every
    /// truncation order.
    #[test]
    fn evolution_unitarity_drift_is_certified(order in 2usize..=10) {
        let h = OperatorHamiltonian::sz_plus_t_sx(0.0, 1.0).expect("canonical");
        let grid = TimeGrid::uniform(0.0, 1.0, 400).expect("uniform");
        let ev = dyson_evolution(&h, order, &grid, None).expect("order in range");
        let eye = DMatrix::<Complex64>::identity(2, 2);
        let drift = linalg::operator_norm(&(ev.matrix.adjoint() * &ev.matrix - &eye));
        // The certificate also carries the mesh's own error; at coarse
        // orders the truncation term dominates by construction.
        prop_assert!(drift <= unitarity_drift_bound(ev.truncation_bound, 2).max(1e-12));
    }

    /// Involution is an involution: applying it twice returns the
    /// original table exactly on any finite cyclic group.
    #[test]
    fn involution_applied_twice_is_identity(
        n in 1usize..=8,
        reals in prop::collection::vec(-2.0f64..2.0, 16..=16),
    ) {
        let g = GroupSpec::cyclic(n).expect("n > 0");
        let values: Vec<Complex64> = (0..n).map(|k| c(reals[2 * k], reals[2 * k + 1])).collect();
        let f = GroupFunction::table(values).expect("finite table");
        let twice = involution(&involution(&f, &g).expect("table"), &g).expect("table");
        prop_assert_eq!(function_distance(&f, &twice).expect("same kind"), 0.0);
    }
}
