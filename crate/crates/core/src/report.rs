//! Self-verification suite: every headline numeric claim of the crate,
//! exercised end-to-end against independent oracles with the tolerances
//! pinned in [`crate::tolerances`].
//!
//! Each criterion produces one [`CriterionReport`] with a pass/fail flag,
//! the binding residual/tolerance pair, and a detail line listing every
//! sub-check. [`run_all`] executes the full battery deterministically from
//! a master seed: randomized criteria derive their RNG streams from it, so
//! two runs with the same seed produce identical reports.

use std::time::Instant;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::gamma_poisson::dyson::{
    dyson_evolution, rk4_evolution, unitarity_drift_bound, OperatorHamiltonian,
};
use crate::gamma_poisson::incomplete::{lower_incomplete, upper_incomplete_cf};
use crate::gamma_poisson::kernels::delta_functional;
use crate::gamma_poisson::poisson::{
    poisson_average_evolution_residual, poisson_tail, waiting_time_volume,
};
use crate::gamma_poisson::{gamma_normalization, gamma_normalization_closed, GammaMode, GammaSpec};
use crate::gaussian::{
    char_pair, delta_limits, det_gelfand_yaglom, det_ratio_harmonic_over_free, free_kernel,
    normalization, propagator, DeltaLimitReport, GaussianSpec, LimitRegime, PropagatorKind,
    PropagatorRequest, QuadraticFormSpec,
};
use crate::group::{verify_propositions, GroupFunction, GroupSpec};
use crate::linalg;
use crate::slicing::{coarsen, Interpolation, Knot, Path, Projection, TimeGrid};
use crate::special;
use crate::symplectic::{pfaffian, symplectic_delta_limits, SkewFormSpec};
use crate::tolerances::*;

/// Outcome of one verification criterion.
///
/// The serialized form is deterministic for a fixed seed: wall-clock
/// budgets are gated (they can fail the criterion) but their measured
/// values live only in [`CriterionReport::timing`], which is excluded from
/// serialization so that report checksums are machine-independent.
#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    /// Stable 1-based position in the battery.
    pub id: usize,
    /// Short kebab-case name of the claim being checked.
    pub name: &'static str,
    pub passed: bool,
    /// Residual of the binding sub-check (the one closest to, or furthest
    /// past, its bound).
    pub residual: f64,
    /// The bound that sub-check is held to (0.0 means "must be exact").
    pub tolerance: f64,
    /// Every sub-check with its residual and bound, `;`-separated.
    pub detail: String,
    /// Wall-clock budget checks, shown in [`CriterionReport::line`] only.
    #[serde(skip)]
    pub timing: String,
}

impl CriterionReport {
    /// One-line rendering: `ok  3 free-semigroup-composition  4.4e-16 <= 1e-12 | ...`.
    pub fn line(&self) -> String {
        let timing = if self.timing.is_empty() {
            String::new()
        } else {
            format!("; {}", self.timing)
        };
        format!(
            "{} {:2} {:<34} {:9.2e} <= {:8.1e} | {}{}",
            if self.passed { "ok  " } else { "FAIL" },
            self.id,
            self.name,
            self.residual,
            self.tolerance,
            self.detail,
            timing
        )
    }
}

/// Accumulates sub-checks for one criterion and picks the binding pair.
struct Checks {
    lines: Vec<(String, f64, f64)>,
    timed_lines: Vec<(String, f64, f64)>,
    failed_conditions: Vec<String>,
}

impl Checks {
    fn new() -> Self {
        Checks {
            lines: Vec::new(),
            timed_lines: Vec::new(),
            failed_conditions: Vec::new(),
        }
    }

    /// Record `residual` against `tolerance` (0.0 demands exactness).
    fn bound(&mut self, label: impl Into<String>, residual: f64, tolerance: f64) {
        self.lines.push((label.into(), residual, tolerance));
    }

    /// Record a wall-clock budget: it gates the criterion like [`bound`]
    /// but is kept out of the serialized report and the binding pair, so
    /// passing reports are bit-identical across machines.
    ///
    /// [`bound`]: Checks::bound
    fn budget(&mut self, label: impl Into<String>, seconds: f64, limit: f64) {
        self.timed_lines.push((label.into(), seconds, limit));
    }

    /// Record a yes/no condition with no numeric scale.
    fn condition(&mut self, label: impl Into<String>, ok: bool) {
        if !ok {
            self.failed_conditions.push(label.into());
        }
    }

    fn ratio(residual: f64, tolerance: f64) -> f64 {
        if tolerance > 0.0 {
            residual / tolerance
        } else if residual == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    }

    fn finish(self, id: usize, name: &'static str) -> CriterionReport {
        let binding = self
            .lines
            .iter()
            .max_by(|a, b| Self::ratio(a.1, a.2).total_cmp(&Self::ratio(b.1, b.2)));
        let (residual, tolerance) = binding.map(|l| (l.1, l.2)).unwrap_or((0.0, 0.0));
        let within = |l: &(String, f64, f64)| Self::ratio(l.1, l.2) <= 1.0 && l.1.is_finite();
        let numeric_ok = self.lines.iter().all(within);
        let timing_ok = self.timed_lines.iter().all(within);
        let mut detail: Vec<String> = self
            .lines
            .iter()
            .map(|(label, r, t)| format!("{label} {r:.2e}<={t:.1e}"))
            .collect();
        for c in &self.failed_conditions {
            detail.push(format!("FAILED: {c}"));
        }
        // A blown budget goes into the (serialized) detail too: failing
        // reports trade checksum stability for a self-contained record.
        for l in self.timed_lines.iter().filter(|l| !within(l)) {
            detail.push(format!("TIME OVER: {} {:.2e}>{:.1e}", l.0, l.1, l.2));
        }
        let timing = self
            .timed_lines
            .iter()
            .map(|(label, r, t)| format!("{label} {r:.2e}<={t:.1e}"))
            .collect::<Vec<_>>()
            .join("; ");
        CriterionReport {
            id,
            name,
            passed: numeric_ok && timing_ok && self.failed_conditions.is_empty(),
            residual,
            tolerance,
            detail: detail.join("; "),
            timing,
        }
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Criterion 1: on random admissible specs (dimension ≤ 3), the quadrature
/// of the kernel integral agrees with the closed form both within the
/// backend's own error estimate and absolutely within
/// [`CHAR_PAIR_ABS_TOL`], under the wall-clock budget.
pub fn gaussian_char_pair_random(seed: u64) -> CriterionReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x01);
    let start = Instant::now();
    let mut checks = Checks::new();
    let mut max_abs = 0.0f64;
    let mut max_vs_estimate = 0.0f64;

    for _ in 0..25 {
        let d = rng.gen_range(1..=3);
        // Hermitian matrix with positive-definite real part: C·Cᵀ + I on
        // the real part, small antisymmetric imaginary part.
        let mut cmat = DMatrix::<f64>::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                cmat[(i, j)] = rng.gen_range(-1.0..1.0);
            }
        }
        let h = &cmat * cmat.transpose() + DMatrix::<f64>::identity(d, d);
        let mut q = DMatrix::<Complex64>::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                q[(i, j)] = c(h[(i, j)], 0.0);
            }
        }
        for i in 0..d {
            for j in i + 1..d {
                let k = 0.3 * rng.gen_range(-1.0..1.0);
                q[(i, j)] += c(0.0, k);
                q[(j, i)] -= c(0.0, k);
            }
        }
        let form = QuadraticFormSpec::new(q).expect("generated form is Hermitian");
        let mean = DVector::from_fn(d, |_, _| c(rng.gen_range(-0.8..0.8), rng.gen_range(-0.8..0.8)));
        let zprime =
            DVector::from_fn(d, |_, _| c(rng.gen_range(-0.4..0.4), rng.gen_range(-0.4..0.4)));
        let s = c(rng.gen_range(0.8..1.8), rng.gen_range(-0.7..0.7));
        let boundary = c(rng.gen_range(-0.4..0.4), rng.gen_range(-0.4..0.4));
        let spec = GaussianSpec::new(form, mean, s, boundary).expect("Re(s) > 0 by construction");

        let pair = char_pair(&spec, &zprime, 64).expect("admissible spec");
        let diff = (pair.theta_integral.value - pair.z_closed).norm();
        max_abs = max_abs.max(diff);
        let est = pair.theta_integral.abs_error_estimate;
        max_vs_estimate = max_vs_estimate.max(if est > 0.0 { diff / est } else { f64::INFINITY });
    }

    let elapsed = start.elapsed().as_secs_f64();
    checks.bound("worst |quadrature - closed|", max_abs, CHAR_PAIR_ABS_TOL);
    checks.bound("worst gap/estimate", max_vs_estimate, 1.0);
    checks.budget("elapsed seconds", elapsed, CHAR_PAIR_TIME_LIMIT_SECS);
    checks.finish(1, "gaussian-char-pair-random")
}

/// Criterion 2: the one-dimensional identity-form member normalizes to
/// exactly `√s` (principal branch) for real and complex admissible scales.
pub fn fiducial_normalization_sqrt_s() -> CriterionReport {
    let mut checks = Checks::new();
    let form = QuadraticFormSpec::new(DMatrix::identity(1, 1)).expect("identity form");
    let mut worst = 0.0f64;
    for &s in &[c(1.0, 0.0), c(4.0, 0.0), c(2.0, 2.0)] {
        let spec = GaussianSpec::new(form.clone(), DVector::zeros(1), s, c(0.0, 0.0))
            .expect("Re(s) > 0");
        let z = normalization(&spec).expect("identity form is invertible");
        worst = worst.max((z - s.sqrt()).norm());
    }
    checks.bound("worst |Z(0) - sqrt(s)|", worst, FIDUCIAL_SQRT_TOL);
    checks.finish(2, "fiducial-normalization-sqrt-s")
}

/// Criterion 3: composing n free single-slice kernels by exact Gaussian
/// marginalization reproduces the one-slice closed form (the semigroup
/// property) for n ∈ {2, 16, 64}.
pub fn free_semigroup_composition() -> CriterionReport {
    let mut checks = Checks::new();
    let (mass, scale, t_total, x_a, x_b) = (1.0, c(0.8, 0.6), 1.3, 0.35, -0.6);
    let closed = free_kernel(mass, scale, t_total, x_a, x_b);
    let mut worst = 0.0f64;
    for &n in &[2usize, 16, 64] {
        let req = PropagatorRequest {
            kind: PropagatorKind::Free,
            mass,
            scale,
            grid: TimeGrid::uniform(0.0, t_total, n).expect("n >= 1"),
            x_a,
            x_b,
            analytic_continuation: false,
        };
        let composed = propagator(&req).expect("admissible request");
        worst = worst.max((composed.value - closed).norm());
    }
    checks.bound("worst |composed - closed|", worst, SEMIGROUP_TOL);
    checks.finish(3, "free-semigroup-composition")
}

/// Criterion 4: the discretized determinant ratio at n = 2000 interior
/// points sits within [`DET_RATIO_TOL`] of the continuum `sinh(ωT)/(ωT)`,
/// and the initial-value-problem oracle itself is accurate to
/// [`DET_ORACLE_TOL`]; the sweep stays under its time budget.
pub fn harmonic_determinant_ratio() -> CriterionReport {
    let start = Instant::now();
    let mut checks = Checks::new();
    let t_total = 1.0;
    let mut worst_fd = 0.0f64;
    let mut worst_oracle = 0.0f64;
    for &omega in &[0.5f64, 1.0, 2.0] {
        let analytic = (omega * t_total).sinh() / (omega * t_total);
        let grid = TimeGrid::uniform_interior(0.0, t_total, 2000).expect("n >= 1");
        let fd = det_ratio_harmonic_over_free(omega, &grid).expect("interior grid");
        worst_fd = worst_fd.max((fd - analytic).abs());
        worst_oracle = worst_oracle.max((det_gelfand_yaglom(omega, t_total) - analytic).abs());
    }
    checks.bound("worst |discrete - sinh(wT)/wT|", worst_fd, DET_RATIO_TOL);
    checks.bound("worst oracle error", worst_oracle, DET_ORACLE_TOL);
    checks.budget(
        "elapsed seconds",
        start.elapsed().as_secs_f64(),
        DET_RATIO_TIME_LIMIT_SECS,
    );
    checks.finish(4, "harmonic-determinant-ratio")
}

/// Criterion 5: `Pf(M)² = det(M)` relatively on 50 random skew matrices of
/// even dimension up to 12, and the congruence rule
/// `Pf(QᵀMQ) = det(Q)·Pf(M)` on the same draws.
pub fn pfaffian_square_and_congruence(seed: u64) -> CriterionReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x05);
    let mut checks = Checks::new();
    let mut worst_square = 0.0f64;
    let mut worst_congruence = 0.0f64;
    for _ in 0..50 {
        let n = 2 * rng.gen_range(1..=6);
        let mut m = DMatrix::<f64>::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                let v = rng.gen_range(-1.0..1.0);
                m[(i, j)] = v;
                m[(j, i)] = -v;
            }
        }
        let pf = pfaffian(&m).expect("skew by construction");
        let det = m.clone().determinant();
        worst_square = worst_square.max((pf * pf - det).abs() / det.abs().max(f64::MIN_POSITIVE));

        let mut qmat = DMatrix::<f64>::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                qmat[(i, j)] = rng.gen_range(-1.0..1.0);
            }
        }
        let lhs = pfaffian(&(qmat.transpose() * &m * &qmat)).expect("congruence keeps skewness");
        let rhs = qmat.determinant() * pf;
        worst_congruence = worst_congruence.max((lhs - rhs).abs() / rhs.abs().max(1.0));
    }
    checks.bound("worst |Pf^2-det|/|det|", worst_square, PFAFFIAN_SQUARE_REL_TOL);
    checks.bound(
        "worst congruence rel gap",
        worst_congruence,
        PFAFFIAN_CONGRUENCE_REL_TOL,
    );
    checks.finish(5, "pfaffian-square-and-congruence")
}

/// Criterion 6: the quadrature normalization of a rate product matches the
/// closed form `Π βᵢ^{−α}` for α ∈ {0.5, 1, 2.5} across dimensions 1–3.
pub fn gamma_normalization_closed_form() -> CriterionReport {
    let mut checks = Checks::new();
    let betas: [Vec<Complex64>; 3] = [
        vec![c(1.3, 0.4)],
        vec![c(0.9, -0.3), c(2.1, 0.8)],
        vec![c(1.0, 0.0), c(1.6, 0.5), c(0.7, -0.2)],
    ];
    let mut worst = 0.0f64;
    for &alpha in &[c(0.5, 0.0), c(1.0, 0.0), c(2.5, 0.0)] {
        for beta in &betas {
            let spec = GammaSpec::new(alpha, beta.clone(), None, GammaMode::RealPositive)
                .expect("Re(β) > 0 fixtures");
            let quad = gamma_normalization(&spec).expect("real-positive member");
            let closed = gamma_normalization_closed(&spec);
            worst = worst.max((quad.value - closed).norm());
        }
    }
    checks.bound("worst |quadrature - closed|", worst, GAMMA_NORMALIZATION_TOL);
    checks.finish(6, "gamma-normalization-closed-form")
}

/// Criterion 7: the series lower incomplete gamma agrees with the
/// continued-fraction route over a 20-point (α, c) lattice (compared on
/// the lower function, where neither side cancels), and the elementary
/// member `γ(1, c) = 1 − e^{−c}` holds near machine precision.
pub fn incomplete_gamma_series_vs_cf() -> CriterionReport {
    let mut checks = Checks::new();
    let mut worst_rel = 0.0f64;
    for &alpha in &[0.6, 1.0, 1.7, 2.5] {
        for &x in &[4.0, 6.0, 8.0, 10.0, 13.0] {
            let a = c(alpha, 0.0);
            let cc = c(x, 0.0);
            let series = lower_incomplete(a, cc).expect("Re(α) > 0");
            let via_cf = special::gamma(a) - upper_incomplete_cf(a, cc).expect("CF region");
            worst_rel = worst_rel.max((series - via_cf).norm() / series.norm());
        }
    }
    checks.bound("worst lattice rel gap", worst_rel, INCOMPLETE_GAMMA_REL_TOL);

    let mut worst_unit = 0.0f64;
    for &x in &[0.5, 1.5, 5.0] {
        let got = lower_incomplete(c(1.0, 0.0), c(x, 0.0)).expect("α = 1");
        worst_unit = worst_unit.max((got - c(1.0 - (-x).exp(), 0.0)).norm());
    }
    checks.bound("worst |γ(1,c)-(1-e^-c)|", worst_unit, INCOMPLETE_GAMMA_UNIT_TOL);
    checks.finish(7, "incomplete-gamma-series-vs-cf")
}

/// Criterion 8: counting tails match direct summation of the single
/// weights for n ≤ 10, and the ordered-simplex Monte Carlo volume lands
/// within [`WAITING_TIME_STDERR_FACTOR`] standard errors of the closed
/// weight at [`WAITING_TIME_SAMPLES`] samples.
pub fn poisson_tail_and_waiting_time(seed: u64) -> CriterionReport {
    let mut checks = Checks::new();
    let mut worst_tail = 0.0f64;
    for &x in &[0.5, 1.5, 5.0] {
        for n in 0..=10i64 {
            let got = poisson_tail(n, c(x, 0.0)).expect("admissible level");
            // Direct summation oracle: 1 − Σ_{k<n} e^{-x} x^k / k!.
            let mut below = 0.0f64;
            let mut weight = (-x).exp();
            for k in 0..n {
                below += weight;
                weight *= x / (k + 1) as f64;
            }
            worst_tail = worst_tail.max((got - c(1.0 - below, 0.0)).norm());
        }
    }
    checks.bound("worst |tail - direct sum|", worst_tail, POISSON_TAIL_TOL);

    // k ≥ 2 keeps the ordered indicator non-constant, so the standard
    // error is a meaningful scale for the gap.
    let mut worst_sigma = 0.0f64;
    for (i, &(k, x)) in [(2i64, 0.8), (3, 1.5), (4, 3.0)].iter().enumerate() {
        let mc = waiting_time_volume(k, x, WAITING_TIME_SAMPLES, seed ^ (0x08 + i as u64))
            .expect("admissible request");
        let mut closed = (-x).exp();
        for j in 1..=k {
            closed *= x / j as f64;
        }
        let gap = (mc.value - c(closed, 0.0)).norm();
        worst_sigma = worst_sigma
            .max(gap / (WAITING_TIME_STDERR_FACTOR * mc.abs_error_estimate.max(f64::MIN_POSITIVE)));
    }
    checks.bound("worst MC gap / (3·stderr)", worst_sigma, 1.0);
    checks.finish(8, "poisson-tail-and-waiting-time")
}

/// Criterion 9: the order-12 ordered series for the generator `σ_z + tσ_x`
/// on [0, 1] matches a fine Runge–Kutta oracle; a constant generator
/// matches its matrix exponential; and the evolution's unitarity drift
/// stays below the bound implied by its own truncation estimate.
pub fn dyson_series_vs_ode() -> CriterionReport {
    let start = Instant::now();
    let mut checks = Checks::new();

    let h = OperatorHamiltonian::sz_plus_t_sx(0.0, 1.0).expect("canonical generator");
    let grid = TimeGrid::uniform(0.0, 1.0, 4000).expect("uniform mesh");
    let ev = dyson_evolution(&h, 12, &grid, None).expect("order within range");
    let oracle = rk4_evolution(&h, 20_000);
    checks.bound(
        "time-dependent vs ODE oracle",
        linalg::max_abs_diff(&ev.matrix, &oracle),
        DYSON_ODE_TOL,
    );

    let eye = DMatrix::<Complex64>::identity(2, 2);
    let drift = linalg::operator_norm(&(ev.matrix.adjoint() * &ev.matrix - &eye));
    checks.bound(
        "unitarity drift vs bound",
        drift,
        unitarity_drift_bound(ev.truncation_bound, 2),
    );

    let h_const = DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.7, 0.0), c(0.7, 0.0), c(-1.0, 0.0)]);
    let hc = OperatorHamiltonian::constant(h_const.clone(), 0.0, 1.2).expect("Hermitian constant");
    let grid_c = TimeGrid::uniform(0.0, 1.2, 2000).expect("uniform mesh");
    let ev_c = dyson_evolution(&hc, 24, &grid_c, None).expect("order within range");
    let expm = linalg::exp_hermitian_scaled(&h_const, c(0.0, 1.2));
    checks.bound(
        "constant vs matrix exponential",
        linalg::max_abs_diff(&ev_c.matrix, &expm),
        DYSON_EXPM_TOL,
    );

    checks.budget(
        "elapsed seconds",
        start.elapsed().as_secs_f64(),
        DYSON_TIME_LIMIT_SECS,
    );
    checks.finish(9, "dyson-series-vs-ode")
}

/// Criterion 10: the phase average obeys the endpoint evolution law
/// `d/dT⟨…⟩ = iβ′(T)⟨…⟩` under central finite differences, on three rate
/// fixtures (polynomial, oscillatory, rational — real and complex).
pub fn poisson_average_evolution() -> CriterionReport {
    let mut checks = Checks::new();
    let fixtures: [(&str, fn(f64) -> Complex64); 3] = [
        ("affine rate", |t| c(0.8 + 0.3 * t, 0.0)),
        ("oscillatory rate", |t| c((2.0 * t).sin(), 0.2 * t.cos())),
        ("rational rate", |t| c(1.0 / (1.0 + t * t), 0.1 * t)),
    ];
    // Central differences: truncation error O(h²) dominates down to h ≈
    // 1e-4, where roundoff cancellation (~1e-16/h) is still two decades
    // below the bound.
    let mut worst = 0.0f64;
    for (_, beta) in fixtures {
        let r = poisson_average_evolution_residual(beta, 0.0, 1.1, 40, 5e-4)
            .expect("admissible step");
        worst = worst.max(r);
    }
    checks.bound("worst evolution residual", worst, AVERAGE_EVOLUTION_TOL);
    checks.finish(10, "poisson-average-evolution")
}

/// Smooth window `exp(4 − 1/(t(1−t)))` on (0, 1), peak-normalized to 1.
fn bump01(t: f64) -> f64 {
    if t > 0.0 && t < 1.0 {
        (4.0 - 1.0 / (t * (1.0 - t))).exp()
    } else {
        0.0
    }
}

fn window(x: f64, lo: f64, hi: f64) -> f64 {
    bump01((x - lo) / (hi - lo))
}

/// Compactly supported complex bump on an (a, b) box with a phase twist.
fn affine_bump(
    abox: (f64, f64),
    bbox: (f64, f64),
    amp: Complex64,
    phase: f64,
) -> GroupFunction<Complex64> {
    GroupFunction::smooth(
        vec![(abox.0, abox.1), (bbox.0, bbox.1)],
        c(0.0, 0.0),
        move |p: &[f64]| {
            amp * window(p[0], abox.0, abox.1)
                * window(p[1], bbox.0, bbox.1)
                * c(0.0, phase * p[1]).exp()
        },
    )
    .expect("box is finite and nonempty")
}

/// Seeded random complex-valued tables on ℤ₆, the scalar fixtures the
/// verification battery and the CLI share.
pub fn z6_scalar_fixtures(seed: u64) -> Vec<GroupFunction<Complex64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..5)
        .map(|_| {
            GroupFunction::table(
                (0..6)
                    .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect(),
            )
            .expect("finite table")
        })
        .collect()
}

/// Seeded random 2×2-matrix-valued tables on ℤ₆ (noncommutative values).
pub fn z6_matrix_fixtures(seed: u64) -> Vec<GroupFunction<DMatrix<Complex64>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..3)
        .map(|_| {
            GroupFunction::table(
                (0..6)
                    .map(|_| {
                        DMatrix::from_fn(2, 2, |_, _| {
                            c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
                        })
                    })
                    .collect(),
            )
            .expect("finite table")
        })
        .collect()
}

/// Three compactly supported complex bumps on the affine line, the smooth
/// fixtures the verification battery and the CLI share.
pub fn affine_demo_fixtures() -> Vec<GroupFunction<Complex64>> {
    vec![
        affine_bump((0.7, 1.6), (-0.6, 0.6), c(1.0, 0.3), 0.7),
        affine_bump((0.6, 1.4), (-0.4, 0.7), c(0.8, -0.6), -0.4),
        affine_bump((0.8, 1.7), (-0.7, 0.3), c(-0.5, 0.9), 1.2),
    ]
}

/// Criterion 11: the five convolution-algebra identities hold exactly (to
/// roundoff) on ℤ₆ for random complex and random 2×2-matrix-valued tables,
/// and within quadrature tolerance on the affine group, where the modular
/// function is nontrivial in the involution identities.
pub fn group_algebra_identities(seed: u64) -> CriterionReport {
    let mut checks = Checks::new();

    let z6 = GroupSpec::cyclic(6).expect("n > 0");
    let scalar_fixtures = z6_scalar_fixtures(seed ^ 0x0b);
    let scalar_report = verify_propositions(&z6, &scalar_fixtures).expect(">= 3 fixtures");
    checks.bound(
        "Z6 scalar identities",
        scalar_report.max_residual(),
        GROUP_FINITE_TOL,
    );
    checks.condition("Z6 scalar identities all passed", scalar_report.all_passed());

    let matrix_fixtures = z6_matrix_fixtures(seed ^ 0x1b);
    let matrix_report = verify_propositions(&z6, &matrix_fixtures).expect(">= 3 fixtures");
    checks.bound(
        "Z6 matrix identities",
        matrix_report.max_residual(),
        GROUP_FINITE_TOL,
    );
    checks.condition("Z6 matrix identities all passed", matrix_report.all_passed());

    let affine = GroupSpec::affine_line();
    let affine_fixtures = affine_demo_fixtures();
    let affine_report = verify_propositions(&affine, &affine_fixtures).expect(">= 3 fixtures");
    checks.bound(
        "affine identities",
        affine_report.max_residual(),
        GROUP_CONTINUOUS_TOL,
    );
    checks.condition("affine identities all passed", affine_report.all_passed());

    checks.finish(11, "group-algebra-identities")
}

/// Criterion 12: pairing the truncated kernel at cutoff 10³ against a
/// Gaussian concentrates on `f(0)` within [`DELTA_PAIRING_TOL`], and a
/// smooth test function supported away from zero pairs to ≈ 0.
pub fn delta_pairing_concentration() -> CriterionReport {
    let mut checks = Checks::new();
    let spectrum = [c(1.0, 0.0)];

    let centered = delta_functional(&spectrum, DELTA_PAIRING_CUTOFF, |w| c((-w * w).exp(), 0.0))
        .expect("well-posed pairing");
    checks.bound(
        "Gaussian pairing vs f(0)=1",
        (centered.value - c(1.0, 0.0)).norm(),
        DELTA_PAIRING_TOL,
    );

    // Bump supported on [0.05, 0.25]: overlaps only the kernel's far tail.
    let away = delta_functional(&spectrum, DELTA_PAIRING_CUTOFF, |w| {
        c(window(w, 0.05, 0.25), 0.0)
    })
    .expect("well-posed pairing");
    checks.bound("away-from-zero pairing vs 0", away.value.norm(), DELTA_PAIRING_TOL);
    checks.finish(12, "delta-pairing-concentration")
}

/// Canonical Gaussian scale-limit fixture shared by the verification
/// battery and the CLI: small scales shrink toward concentration on a
/// 1-d form with Q = 1.5, large scales grow along a dual point z' = 0.8.
pub fn gaussian_scale_report(regime: LimitRegime) -> DeltaLimitReport {
    match regime {
        LimitRegime::SmallScale => {
            let form = QuadraticFormSpec::new(DMatrix::from_row_slice(1, 1, &[c(1.5, 0.0)]))
                .expect("Hermitian form");
            delta_limits(
                &form,
                &DVector::zeros(1),
                c(0.0, 0.0),
                &[c(0.5, 0.0), c(0.1, 0.0), c(0.02, 0.0)],
                &DVector::from_vec(vec![0.6]),
                LimitRegime::SmallScale,
                32,
            )
            .expect("admissible sequence")
        }
        LimitRegime::LargeScale => {
            let form1 = QuadraticFormSpec::new(DMatrix::identity(1, 1)).expect("identity form");
            delta_limits(
                &form1,
                &DVector::from_vec(vec![c(0.8, 0.0)]),
                c(0.0, 0.0),
                &[c(8.0, 0.0), c(16.0, 0.0), c(32.0, 0.0), c(64.0, 0.0)],
                &DVector::from_vec(vec![0.5]),
                LimitRegime::LargeScale,
                32,
            )
            .expect("admissible sequence")
        }
    }
}

/// Canonical skew-family scale-limit fixture shared by the verification
/// battery and the CLI (2-d Hermitian representative, dual point
/// η' = (0.8, 0.5) in the large-scale regime).
pub fn skew_scale_report(regime: LimitRegime) -> DeltaLimitReport {
    let a = DMatrix::from_row_slice(2, 2, &[c(1.3, 0.0), c(0.2, 0.1), c(0.2, -0.1), c(0.9, 0.0)]);
    let skew_member = |s: Complex64| {
        SkewFormSpec::from_representative(a.clone(), s, DVector::zeros(2), c(0.0, 0.0))
            .expect("representative is Hermitian")
    };
    match regime {
        LimitRegime::SmallScale => symplectic_delta_limits(
            &skew_member(c(0.5, 0.0)),
            &DVector::zeros(2),
            &[c(0.5, 0.0), c(0.1, 0.0), c(0.02, 0.0)],
            &DVector::from_vec(vec![0.3, 0.2]),
            LimitRegime::SmallScale,
            32,
        )
        .expect("admissible sequence"),
        LimitRegime::LargeScale => symplectic_delta_limits(
            &skew_member(c(16.0, 0.0)),
            &DVector::from_vec(vec![c(0.8, 0.0), c(0.5, 0.0)]),
            &[c(16.0, 0.0), c(32.0, 0.0), c(64.0, 0.0), c(128.0, 0.0)],
            &DVector::from_vec(vec![0.3, 0.2]),
            LimitRegime::LargeScale,
            32,
        )
        .expect("admissible sequence"),
    }
}

/// Criterion 13: along |s| → 0 sequences the normalized kernel value at
/// the zero dual point equals 1 bit-exactly for both the Gaussian and the
/// skew families; along |s| → ∞ sequences the fitted decay slope of the
/// closed form matches the analytic prediction within
/// [`DECAY_SLOPE_REL_TOL`].
pub fn delta_scale_limits() -> CriterionReport {
    let mut checks = Checks::new();

    let rep = gaussian_scale_report(LimitRegime::SmallScale);
    let gauss_exact = rep
        .samples
        .iter()
        .all(|s| s.normalized_theta == c(1.0, 0.0));
    checks.condition("Gaussian small-scale normalization == 1 bitwise", gauss_exact);
    checks.bound(
        "Gaussian worst |normalized - 1|",
        rep.samples
            .iter()
            .map(|s| (s.normalized_theta - c(1.0, 0.0)).norm())
            .fold(0.0, f64::max),
        0.0,
    );

    let rep_skew = skew_scale_report(LimitRegime::SmallScale);
    let skew_exact = rep_skew
        .samples
        .iter()
        .all(|s| s.normalized_theta == c(1.0, 0.0));
    checks.condition("skew small-scale normalization == 1 bitwise", skew_exact);

    let rep_large = gaussian_scale_report(LimitRegime::LargeScale);
    let (fit, pred) = (
        rep_large.fitted_decay_slope.expect("large-scale fit"),
        rep_large.predicted_decay_slope.expect("large-scale prediction"),
    );
    checks.bound(
        "Gaussian decay slope rel gap",
        (fit - pred).abs() / pred.abs(),
        DECAY_SLOPE_REL_TOL,
    );

    let rep_skew_large = skew_scale_report(LimitRegime::LargeScale);
    let (fit_s, pred_s) = (
        rep_skew_large.fitted_decay_slope.expect("large-scale fit"),
        rep_skew_large
            .predicted_decay_slope
            .expect("large-scale prediction"),
    );
    checks.bound(
        "skew decay slope rel gap",
        (fit_s - pred_s).abs() / pred_s.abs(),
        DECAY_SLOPE_REL_TOL,
    );

    checks.finish(13, "delta-scale-limits")
}

/// Criterion 14: projecting on a coarse grid equals coarsening the fine
/// projection, bit-for-bit, across random paths on nested grid pairs.
pub fn projective_consistency(seed: u64) -> CriterionReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0e);
    let mut checks = Checks::new();
    let (t_a, t_b) = (0.0, 1.0);
    let mut all_exact = true;
    let mut paths_checked = 0usize;

    for _ in 0..10 {
        // Nested pair: the coarse points are every other fine point.
        let mut times: Vec<f64> = (0..rng.gen_range(6..=12))
            .map(|_| rng.gen_range(0.05..1.0))
            .collect();
        times.sort_by(f64::total_cmp);
        times.dedup();
        let fine = TimeGrid::new(t_a, t_b, times.clone()).expect("increasing in (t_a, t_b]");
        let coarse_points: Vec<f64> = times.iter().copied().step_by(2).collect();
        let coarse = TimeGrid::new(t_a, t_b, coarse_points).expect("subset grid");
        let components = rng.gen_range(1..=3);
        let map = coarsen(&fine, &coarse, components).expect("nested by construction");
        let fine_proj = Projection::new(fine.clone(), components);
        let coarse_proj = Projection::new(coarse.clone(), components);

        for _ in 0..10 {
            let basepoint: Vec<Complex64> = (0..components)
                .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let mut knot_times: Vec<f64> = (0..rng.gen_range(1..=5))
                .map(|_| rng.gen_range(0.01..1.0))
                .collect();
            knot_times.sort_by(f64::total_cmp);
            knot_times.dedup();
            let knots: Vec<Knot> = knot_times
                .iter()
                .map(|&t| Knot {
                    t,
                    value: (0..components)
                        .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                        .collect(),
                })
                .collect();
            let interpolation = if rng.gen_bool(0.5) {
                Interpolation::PiecewiseLinear
            } else {
                Interpolation::PiecewiseConstant
            };
            let path = Path::new(basepoint, interpolation, knots).expect("increasing knots");

            let direct = coarse_proj.project(&path).expect("components match");
            let via_fine = map.apply(&fine_proj.project(&path).expect("components match"));
            let exact = direct.len() == via_fine.len()
                && direct
                    .iter()
                    .zip(via_fine.iter())
                    .all(|(x, y)| x.re.to_bits() == y.re.to_bits() && x.im.to_bits() == y.im.to_bits());
            all_exact &= exact;
            paths_checked += 1;
        }
    }

    checks.condition(
        format!("bit-exact on {paths_checked} paths x 10 grid pairs"),
        all_exact && paths_checked == 100,
    );
    checks.bound("bitwise mismatches", if all_exact { 0.0 } else { 1.0 }, PROJECTIVE_CONSISTENCY_TOL);
    checks.finish(14, "projective-consistency")
}

/// Run the whole battery in criterion order. Deterministic in `seed`.
pub fn run_all(seed: u64) -> Vec<CriterionReport> {
    (1..=CRITERION_COUNT)
        .map(|id| run_one(id, seed).expect("id in range"))
        .collect()
}

/// Number of criteria in the battery.
pub const CRITERION_COUNT: usize = 14;

/// Run a single criterion by its stable 1-based id; `None` if out of range.
pub fn run_one(id: usize, seed: u64) -> Option<CriterionReport> {
    Some(match id {
        1 => gaussian_char_pair_random(seed),
        2 => fiducial_normalization_sqrt_s(),
        3 => free_semigroup_composition(),
        4 => harmonic_determinant_ratio(),
        5 => pfaffian_square_and_congruence(seed),
        6 => gamma_normalization_closed_form(),
        7 => incomplete_gamma_series_vs_cf(),
        8 => poisson_tail_and_waiting_time(seed),
        9 => dyson_series_vs_ode(),
        10 => poisson_average_evolution(),
        11 => group_algebra_identities(seed),
        12 => delta_pairing_concentration(),
        13 => delta_scale_limits(),
        14 => projective_consistency(seed),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_lines_render_and_bindings_pick_worst_ratio() {
        let mut checks = Checks::new();
        checks.bound("loose", 1e-9, 1e-6);
        checks.bound("binding", 0.5, 1.0);
        let r = checks.finish(99, "synthetic");
        assert!(r.passed);
        assert_eq!(r.residual, 0.5);
        assert_eq!(r.tolerance, 1.0);
        assert!(r.line().contains("ok"));
        assert!(r.detail.contains("loose") && r.detail.contains("binding"));
    }

    #[test]
    fn exactness_bounds_fail_on_any_residual() {
        let mut checks = Checks::new();
        checks.bound("must be exact", 1e-18, 0.0);
        let r = checks.finish(98, "synthetic-exact");
        assert!(!r.passed);
        assert!(r.residual == 1e-18 && r.tolerance == 0.0);
    }

    #[test]
    fn failed_conditions_fail_the_criterion() {
        let mut checks = Checks::new();
        checks.bound("fine", 0.0, 1.0);
        checks.condition("hard requirement", false);
        let r = checks.finish(97, "synthetic-condition");
        assert!(!r.passed);
        assert!(r.detail.contains("FAILED: hard requirement"));
    }

    #[test]
    fn budgets_gate_but_stay_out_of_the_serialized_report() {
        let mut checks = Checks::new();
        checks.bound("numeric", 1e-3, 1.0);
        checks.budget("elapsed seconds", 0.9, 1.0);
        let r = checks.finish(96, "synthetic-timed");
        assert!(r.passed);
        // The budget never becomes the binding pair even at a worse ratio.
        assert_eq!(r.residual, 1e-3);
        assert!(r.line().contains("elapsed seconds"));
        assert!(!r.detail.contains("elapsed seconds"));
        let json = serde_json::to_string(&r).expect("serializes");
        assert!(!json.contains("elapsed seconds") && !json.contains("timing"));

        let mut checks = Checks::new();
        checks.bound("numeric", 1e-3, 1.0);
        checks.budget("elapsed seconds", 2.0, 1.0);
        let r = checks.finish(95, "synthetic-timed-over");
        assert!(!r.passed);
        assert!(r.detail.contains("TIME OVER: elapsed seconds"));
    }
}
