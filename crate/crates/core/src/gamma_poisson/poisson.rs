//! The counting (Poisson) members of the gamma family: tail probabilities
//! as normalized incomplete ratios, ordered waiting-time volumes, and
//! phase averages that solve a first-order evolution law in the interval
//! endpoint.
//!
//! The level-n member integrates, after normalization, to the tail
//! probability `P(n, c) = Pr(N ≥ n) = γ(n, c)/Γ(n)`; the level-0 member is
//! the fiducial one with mass exactly 1. Each single term `e^{-c} c^k/k!`
//! is, equivalently, `e^{-c}` times the volume of the ordered region
//! `{0 ≤ τ₁ < … < τ_k ≤ c}` — the waiting-time picture — and that volume
//! identity is checked here by Monte Carlo rather than assumed.
//!
//! The phase average of a rate `β′(t)` is the series
//! `Σ_n (iⁿ/n!) (∫β′ dt)ⁿ`, term `n` being the symmetrized n-point moment
//! of the ordered family; it is summed as a series (not evaluated as a
//! library `exp`) so the moment expansion itself is what is being tested,
//! and it satisfies `d/dT ⟨…⟩ = iβ′(T)·⟨…⟩`, which
//! [`poisson_average_evolution_residual`] measures by finite differences.

use num_complex::Complex64;

use crate::error::PoissonError;
use crate::quad::{self, nodes, Domain, McConfig, Proposal};
use crate::result::IntegralResult;
use crate::slicing::TimeGrid;
use crate::special;

use super::incomplete;

/// Maximum number of series terms summed by [`poisson_average`].
pub const MAX_AVERAGE_TERMS: usize = 200;
/// Relative term size at which the average series is declared converged.
const AVERAGE_STOP: f64 = 1e-18;
/// Per-slice Gauss–Legendre order for the phase integral.
const PHASE_ORDER: usize = 16;

/// One counting-family member: level, per-slice rates, intensity, and an
/// optional fiducial shift paired against the rates.
#[derive(Debug, Clone)]
pub struct PoissonSpec {
    pub n: u64,
    pub beta: Vec<Complex64>,
    pub c: Complex64,
    pub tau0: Option<Vec<f64>>,
}

impl PoissonSpec {
    pub fn new(
        n: i64,
        beta: Vec<Complex64>,
        c: Complex64,
        tau0: Option<Vec<f64>>,
    ) -> Result<Self, PoissonError> {
        if n < 0 {
            return Err(PoissonError::BadLevel { n });
        }
        if !(c.re > 0.0) {
            return Err(PoissonError::BadIntensity { re: c.re });
        }
        if let Some(shift) = &tau0 {
            if shift.len() != beta.len() {
                return Err(PoissonError::ShiftMismatch {
                    beta: beta.len(),
                    shift: shift.len(),
                });
            }
            let pairing: Complex64 = beta
                .iter()
                .zip(shift)
                .map(|(b, t)| b * Complex64::new(*t, 0.0))
                .sum();
            if !pairing.re.is_finite() || !pairing.im.is_finite() {
                return Err(PoissonError::BadIntensity { re: pairing.re });
            }
        }
        Ok(PoissonSpec {
            n: n as u64,
            beta,
            c,
            tau0,
        })
    }

    /// Tail probability of this member's level at its intensity.
    pub fn tail(&self) -> Result<Complex64, PoissonError> {
        poisson_tail(self.n as i64, self.c)
    }
}

/// Tail probability `P(n, c) = Pr(N ≥ n) = γ(n, c)/Γ(n)`.
///
/// The level-0 member is the fiducial one: its normalized mass is exactly
/// 1 for any intensity, so `n = 0` returns 1 without touching `c`.
pub fn poisson_tail(n: i64, c: Complex64) -> Result<Complex64, PoissonError> {
    if n < 0 {
        return Err(PoissonError::BadLevel { n });
    }
    if n == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if !(c.re > 0.0) {
        return Err(PoissonError::BadIntensity { re: c.re });
    }
    let a = Complex64::new(n as f64, 0.0);
    let lower = incomplete::lower_incomplete(a, c)?;
    Ok(lower / special::gamma(a))
}

/// Monte Carlo estimate of `e^{-c} · vol{0 ≤ τ₁ < … < τ_k ≤ c}`, which
/// equals the single counting weight `e^{-c} c^k / k!`.
///
/// Samples uniformly on the cube `[0, c]^k` and keeps the ordered corner;
/// `k = 0` is the empty product, returned closed-form as `e^{-c}`. The
/// result's `abs_error_estimate` is the standard error of the mean and
/// the seed is echoed back for reproducibility.
pub fn waiting_time_volume(
    k: i64,
    c: f64,
    samples: u64,
    seed: u64,
) -> Result<IntegralResult, PoissonError> {
    if k < 0 {
        return Err(PoissonError::BadLevel { n: k });
    }
    if !(c > 0.0) || !c.is_finite() {
        return Err(PoissonError::BadIntensity { re: c });
    }
    let weight = (-c).exp();
    if k == 0 {
        return Ok(IntegralResult::closed_form(Complex64::new(weight, 0.0)));
    }
    let bounds: Vec<(f64, f64)> = vec![(0.0, c); k as usize];
    let domain = Domain::Box {
        bounds: bounds.clone(),
    };
    let cfg = McConfig {
        samples,
        seed,
        proposal: Proposal::UniformBox { bounds },
    };
    let ordered_weight = move |x: &[f64]| {
        if x.windows(2).all(|w| w[0] < w[1]) {
            Complex64::new(weight, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    };
    Ok(quad::integrate_mc(ordered_weight, &domain, &cfg)?)
}

/// A phase average together with the pieces it was assembled from.
#[derive(Debug, Clone, PartialEq)]
pub struct PoissonAverage {
    /// The summed series `Σ (i·phase_integral)ⁿ/n!`.
    pub value: Complex64,
    /// `∫ β′(t) dt` over the grid's interval, by composite quadrature.
    pub phase_integral: Complex64,
    /// Number of series terms actually summed (including the constant 1).
    pub terms: usize,
}

/// Average of the phase functional of a scalar rate over the counting
/// family: `Σ_n (iⁿ/n!)(∫β′dt)ⁿ`, summed term-by-term until the next term
/// falls below machine significance.
///
/// The grid's slice boundaries become the panels of a composite
/// Gauss–Legendre rule for the phase integral, so a rate with kinks at
/// the slice times is still integrated at full order.
pub fn poisson_average(
    beta_fn: impl Fn(f64) -> Complex64,
    grid: &TimeGrid,
) -> Result<PoissonAverage, PoissonError> {
    let phase_integral = phase_integral(&beta_fn, grid)?;
    let z = Complex64::new(0.0, 1.0) * phase_integral;
    let mut sum = Complex64::new(1.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    for n in 1..=MAX_AVERAGE_TERMS {
        term *= z / n as f64;
        sum += term;
        if term.norm() <= AVERAGE_STOP * sum.norm().max(1.0) {
            return Ok(PoissonAverage {
                value: sum,
                phase_integral,
                terms: n + 1,
            });
        }
    }
    Err(PoissonError::TruncationExceeded {
        max_terms: MAX_AVERAGE_TERMS,
    })
}

/// Composite per-slice Gauss–Legendre phase integral `∫ β′(t) dt` over
/// `[t_a, t_b]`, with a closing panel when the grid stops short of `t_b`.
fn phase_integral(
    beta_fn: &impl Fn(f64) -> Complex64,
    grid: &TimeGrid,
) -> Result<Complex64, PoissonError> {
    let rule = nodes::gauss_legendre(PHASE_ORDER).map_err(PoissonError::Quad)?;
    let mut edges = Vec::with_capacity(grid.len() + 2);
    edges.push(grid.t_a);
    edges.extend_from_slice(&grid.points);
    if !grid.ends_at_tb() {
        edges.push(grid.t_b);
    }
    let mut total = Complex64::new(0.0, 0.0);
    for pair in edges.windows(2) {
        let mid = 0.5 * (pair[0] + pair[1]);
        let half = 0.5 * (pair[1] - pair[0]);
        let mut panel = Complex64::new(0.0, 0.0);
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            panel += beta_fn(mid + half * x) * *w;
        }
        total += panel * half;
    }
    Ok(total)
}

/// Residual of the evolution law `d/dT ⟨…⟩_T = i β′(T) ⟨…⟩_T` at
/// `T = t_b`, with the derivative taken by central differences of step
/// `h` over averages on uniform grids of `slices` panels.
pub fn poisson_average_evolution_residual(
    beta_fn: impl Fn(f64) -> Complex64,
    t_a: f64,
    t_b: f64,
    slices: usize,
    h: f64,
) -> Result<f64, PoissonError> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(PoissonError::BadStep { h });
    }
    let average_to = |end: f64| -> Result<Complex64, PoissonError> {
        let grid = TimeGrid::uniform(t_a, end, slices)?;
        Ok(poisson_average(&beta_fn, &grid)?.value)
    };
    let plus = average_to(t_b + h)?;
    let minus = average_to(t_b - h)?;
    let center = average_to(t_b)?;
    let derivative = (plus - minus) / (2.0 * h);
    let law = Complex64::new(0.0, 1.0) * beta_fn(t_b) * center;
    Ok((derivative - law).norm())
}
