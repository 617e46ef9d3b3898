//! The Gaussian integrator family over projected path coordinates.
//!
//! A family member is fixed by a Hermitian positive-definite quadratic form
//! `Q` on the slice coordinates, a complex scale `s` with `Re(s) > 0`, a
//! mean vector, and a boundary scalar `B`. Its two faces are kept together:
//! the oscillatory kernel
//!
//! ```text
//! Θ(z, z') = exp(2πi⟨z', z - z̄⟩ - (π/s)[Q(z - z̄) - B])
//! ```
//!
//! integrated over the d real slice coordinates, and the closed form
//!
//! ```text
//! Z(z') = det(sW)^{1/2} · exp(-πs·z'ᵀWz') · exp((π/s)B),   W = Q⁻¹,
//! ```
//!
//! with all fractional powers on the principal branch through positive
//! eigenvalues (`exp(½(d·Log s + Σ ln λ))`), so values move continuously as
//! `s` crosses quadrants. The primitive normalization is fixed by the
//! one-dimensional fiducial `∫ e^{-(π/s)x²} dx = √s`, and the empty product
//! convention `det(of nothing) = 1` makes the zero-dimensional member the
//! constant 1.
//!
//! On real projected coordinates the bilinear pairing `zᵀQz` sees only the
//! symmetric content of a Hermitian operator (its real part); the
//! skew-Hermitian remainder belongs to the symplectic family. Both faces of
//! the pair pair through that content — see
//! [`QuadraticFormSpec::bilinear_content`] — while [`covariance`] keeps the
//! full operator inverse for resolvent-level work. For the real-valued
//! operators the builders produce, the two coincide identically.
//!
//! Everything else in the module — discretized free/harmonic operators,
//! covariance, slice-composed propagators, determinant limits, concentration
//! limits — is bookkeeping around that pair.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::GaussianError;
use crate::linalg;
use crate::quad::{self, Domain, WeightHint};
use crate::result::{IntegralResult, Method};
use crate::slicing::TimeGrid;

/// Hermiticity gate for operator inputs.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Covariance refuses condition numbers past this.
pub const CONDITION_LIMIT: f64 = 1e14;

/// Boundary handling for discretized operators.
///
/// `Dirichlet` pins the path at both interval ends: the grid must then stop
/// short of `t_b` (the closing slice runs from the last point to `t_b`).
/// `NeumannAtTb` leaves the endpoint value free: the grid must end exactly
/// at `t_b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    Dirichlet,
    NeumannAtTb,
}

/// Continuum operator a discretization approximates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Continuum {
    Free,
    Harmonic { omega: f64 },
    Custom,
}

/// A validated Hermitian positive-definite quadratic form.
#[derive(Debug, Clone)]
pub struct QuadraticFormSpec {
    matrix: DMatrix<Complex64>,
    pub boundary: Option<Boundary>,
    pub continuum: Continuum,
}

impl QuadraticFormSpec {
    /// Validates hermiticity (≤ 1e-12 relative to scale) and positive
    /// definiteness, then freezes the matrix.
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self, GaussianError> {
        Self::with_tags(matrix, None, Continuum::Custom)
    }

    pub fn with_tags(
        matrix: DMatrix<Complex64>,
        boundary: Option<Boundary>,
        continuum: Continuum,
    ) -> Result<Self, GaussianError> {
        let scale = matrix.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
        let dev = linalg::hermitian_deviation(&matrix);
        if dev > HERMITICITY_TOL * scale {
            return Err(GaussianError::NotHermitian {
                deviation: dev,
                bound: HERMITICITY_TOL * scale,
            });
        }
        let min_ev = linalg::hermitian_eigenvalues(&matrix)
            .first()
            .copied()
            .unwrap_or(0.0);
        if min_ev <= 0.0 {
            return Err(GaussianError::NotPositiveDefinite { eigenvalue: min_ev });
        }
        Ok(QuadraticFormSpec {
            matrix,
            boundary,
            continuum,
        })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    /// Real part of the matrix — the part the bilinear form on real
    /// coordinates actually sees (the skew imaginary part cancels).
    pub fn real_part(&self) -> DMatrix<f64> {
        self.matrix.map(|z| z.re)
    }

    /// The symmetric bilinear content of the form on real coordinates:
    /// `zᵀQz` evaluates exactly `zᵀRe(Q)z`, because the imaginary part of a
    /// Hermitian matrix is antisymmetric and cancels in the bilinear
    /// pairing. That remainder pairs conjugate-linearly and belongs to the
    /// skew (symplectic) family, not here; both faces of the characteristic
    /// pair therefore go through this content. For real-valued operators —
    /// everything [`build_operator`] produces — it is the matrix itself.
    pub fn bilinear_content(&self) -> DMatrix<Complex64> {
        self.matrix.map(|z| Complex64::new(z.re, 0.0))
    }
}

/// Inverse of the bilinear content, condition-guarded — the covariance the
/// characteristic pair actually pairs with. Coincides with [`covariance`]
/// whenever the operator is real-valued.
pub(crate) fn content_covariance(
    form: &QuadraticFormSpec,
) -> Result<DMatrix<Complex64>, GaussianError> {
    let content = form.bilinear_content();
    let cond = linalg::hermitian_condition(&content);
    if cond > CONDITION_LIMIT {
        return Err(GaussianError::IllConditioned {
            cond,
            bound: CONDITION_LIMIT,
        });
    }
    content.lu().try_inverse().ok_or(GaussianError::IllConditioned {
        cond: f64::INFINITY,
        bound: CONDITION_LIMIT,
    })
}

/// A Gaussian family member: form + scale + mean + boundary scalar.
#[derive(Debug, Clone)]
pub struct GaussianSpec {
    pub form: QuadraticFormSpec,
    /// Mean path coordinates z̄.
    pub mean: DVector<Complex64>,
    /// Scale s; Re(s) > 0 required.
    pub scale: Complex64,
    /// Boundary scalar B(z̄), entering as exp((π/s)B) on both faces.
    pub boundary_value: Complex64,
}

impl GaussianSpec {
    pub fn new(
        form: QuadraticFormSpec,
        mean: DVector<Complex64>,
        scale: Complex64,
        boundary_value: Complex64,
    ) -> Result<Self, GaussianError> {
        if !(scale.re > 0.0) {
            return Err(GaussianError::ScaleOutOfRegion {
                re: scale.re,
                im: scale.im,
            });
        }
        if mean.len() != form.dim() {
            return Err(GaussianError::DimensionMismatch {
                form: form.dim(),
                vec: mean.len(),
            });
        }
        Ok(GaussianSpec {
            form,
            mean,
            scale,
            boundary_value,
        })
    }

    pub fn dim(&self) -> usize {
        self.form.dim()
    }
}

/// Assemble the discretized operator for a continuum kind on a grid.
///
/// The free operator is the stiffness form `Σ (x_i - x_{i-1})²/Δt_i` of the
/// slice differences (uniform grids give `(1/Δt)·tridiag(-1, 2, -1)`); the
/// harmonic operator adds `ω²` times the lumped slice measure on the
/// diagonal (uniform grids: `ω²Δt`). Dirichlet pins both interval ends, so
/// the closing slice `(t_n, t_b]` contributes its own stiffness term.
pub fn build_operator(
    continuum: Continuum,
    grid: &TimeGrid,
    boundary: Boundary,
) -> Result<QuadraticFormSpec, GaussianError> {
    let n = grid.len();
    let mut widths = grid.slice_widths();
    match boundary {
        Boundary::Dirichlet => {
            if grid.ends_at_tb() {
                return Err(GaussianError::Unsupported(
                    "Dirichlet operators pin t_b; the grid must stop short of it".into(),
                ));
            }
            widths.push(grid.t_b - *grid.points.last().unwrap());
        }
        Boundary::NeumannAtTb => {
            if !grid.ends_at_tb() {
                return Err(GaussianError::Unsupported(
                    "free-endpoint operators need the grid to end exactly at t_b".into(),
                ));
            }
            if !grid.is_uniform() {
                return Err(GaussianError::Unsupported(
                    "free-endpoint operators are only defined on uniform grids".into(),
                ));
            }
        }
    }

    let mut d = DMatrix::<Complex64>::zeros(n, n);
    for i in 0..n {
        let mut diag = 1.0 / widths[i];
        if i + 1 < widths.len() {
            diag += 1.0 / widths[i + 1];
        }
        d[(i, i)] = Complex64::new(diag, 0.0);
        if i + 1 < n {
            let c = Complex64::new(-1.0 / widths[i + 1], 0.0);
            d[(i, i + 1)] = c;
            d[(i + 1, i)] = c;
        }
    }

    if let Continuum::Harmonic { omega } = continuum {
        for i in 0..n {
            // Lumped measure: half of each adjacent slice.
            let right = if i + 1 < widths.len() { widths[i + 1] } else { 0.0 };
            let mu = 0.5 * (widths[i] + right);
            d[(i, i)] += Complex64::new(omega * omega * mu, 0.0);
        }
    }

    QuadraticFormSpec::with_tags(d, Some(boundary), continuum)
}

/// Covariance `W = Q⁻¹`, rejected when the form is too ill-conditioned for
/// the inverse to be meaningful.
pub fn covariance(form: &QuadraticFormSpec) -> Result<DMatrix<Complex64>, GaussianError> {
    let cond = linalg::hermitian_condition(form.matrix());
    if cond > CONDITION_LIMIT {
        return Err(GaussianError::IllConditioned {
            cond,
            bound: CONDITION_LIMIT,
        });
    }
    form.matrix()
        .clone()
        .lu()
        .try_inverse()
        .ok_or(GaussianError::IllConditioned {
            cond: f64::INFINITY,
            bound: CONDITION_LIMIT,
        })
}

/// Both faces of a family member at one dual point.
#[derive(Debug, Clone)]
pub struct CharPair {
    /// Numerically integrated kernel.
    pub theta_integral: IntegralResult,
    /// Closed form `det(sW)^{1/2} e^{-πs z'Wz'} e^{(π/s)B}`.
    pub z_closed: Complex64,
}

/// Integrate the kernel over the slice coordinates and evaluate the closed
/// form at the same dual point `z'`.
///
/// The quadrature substitutes coordinates adapted to the decaying part of
/// the exponent (`y = Tu` with `TᵀRe(π/s·Q)T = Id`), so the Gauss–Hermite
/// nodes see an integrand whose Gaussian factor is exactly the rule weight;
/// what remains is the bounded oscillation from `Im(1/s)` and the dual
/// phase. Accuracy then depends on `|arg s|`, not on `|s|`.
pub fn char_pair(
    spec: &GaussianSpec,
    zprime: &DVector<Complex64>,
    order: usize,
) -> Result<CharPair, GaussianError> {
    let d = spec.dim();
    if zprime.len() != d {
        return Err(GaussianError::DimensionMismatch {
            form: d,
            vec: zprime.len(),
        });
    }
    let s = spec.scale;
    let inv_s = 1.0 / s;
    let q_re = spec.form.real_part();

    // Decay-adapted transform: G = π Re(1/s) Q_re = V Λ Vᵀ, T = V Λ^{-1/2} Vᵀ.
    let g = q_re.map(|x| x * PI * inv_s.re);
    let eig = g.symmetric_eigen();
    let mut log_det_t = 0.0;
    for &lam in eig.eigenvalues.iter() {
        if lam <= 0.0 {
            return Err(GaussianError::NotPositiveDefinite { eigenvalue: lam });
        }
        log_det_t -= 0.5 * lam.ln();
    }
    let lam_inv_sqrt =
        DMatrix::<f64>::from_diagonal(&eig.eigenvalues.map(|l: f64| l.powf(-0.5)));
    let t = &eig.eigenvectors * lam_inv_sqrt * eig.eigenvectors.transpose();
    let det_t = log_det_t.exp();

    let osc_ratio = inv_s.im / inv_s.re;
    let boundary_factor = (PI * inv_s * spec.boundary_value).exp();
    let zp: Vec<Complex64> = zprime.iter().copied().collect();

    // Remaining integrand in u after y = Tu, against weight e^{-|u|²}:
    //   exp(2πi z'·(Tu)) · exp(-i·osc_ratio·|u|²)
    let gfun = |u: &[f64]| {
        let mut y = vec![0.0; d];
        for r in 0..d {
            let mut acc = 0.0;
            for c in 0..d {
                acc += t[(r, c)] * u[c];
            }
            y[r] = acc;
        }
        let mut phase = Complex64::new(0.0, 0.0);
        for k in 0..d {
            phase += zp[k] * y[k];
        }
        let u2: f64 = u.iter().map(|x| x * x).sum();
        (Complex64::new(0.0, 2.0 * PI) * phase - Complex64::new(0.0, osc_ratio * u2)).exp()
    };

    // Feed through the π-weighted backend: ∫ g(u) e^{-|u|²} du
    //   = π^{d/2} ∫ g(√π x) e^{-π|x|²} dx.
    let sqrt_pi = PI.sqrt();
    let domain = Domain::FullSpace { dim: d };
    let mut result = quad::integrate_quad(
        |x: &[f64]| {
            let u: Vec<f64> = x.iter().map(|v| v * sqrt_pi).collect();
            gfun(&u)
        },
        &domain,
        WeightHint::GaussianPi,
        order,
    )?;
    let prefactor = det_t * PI.powf(d as f64 / 2.0);
    result.value *= prefactor * boundary_factor;
    result.abs_error_estimate *= prefactor * boundary_factor.norm();

    let w = content_covariance(&spec.form)?;
    let z_closed = normalization_from(&w, s, spec.boundary_value)?
        * (-PI * s * linalg::bilinear_form(&w, zprime)).exp();

    Ok(CharPair {
        theta_integral: result,
        z_closed,
    })
}

fn normalization_from(
    w: &DMatrix<Complex64>,
    s: Complex64,
    boundary_value: Complex64,
) -> Result<Complex64, GaussianError> {
    let det_half = linalg::det_power_scaled_hermitian(w, s, 0.5)?;
    Ok(det_half * (PI / s * boundary_value).exp())
}

/// Closed-form normalization `Z(0) = det(sW)^{1/2} e^{(π/s)B}`.
///
/// The d = 1, Q = 1, B = 0 member returns exactly `√s`.
pub fn normalization(spec: &GaussianSpec) -> Result<Complex64, GaussianError> {
    let w = content_covariance(&spec.form)?;
    normalization_from(&w, spec.scale, spec.boundary_value)
}

/// Normalization summed over a finite, explicitly enumerated set of means
/// (each member carries its own boundary scalar).
pub fn mean_sum_normalization(specs: &[GaussianSpec]) -> Result<Complex64, GaussianError> {
    let mut acc = Complex64::new(0.0, 0.0);
    for s in specs {
        acc += normalization(s)?;
    }
    Ok(acc)
}

/// Continuum determinant ratio det(-∂² + ω²)/det(-∂²) on (0, T), Dirichlet,
/// via the initial-value problem u'' = ω²u, u(0) = 0, u'(0) = 1: the ratio
/// is u(T)/T. Solved with fixed-step RK4 — an independent route that never
/// touches the discretized matrices. Converges to sinh(ωT)/(ωT).
pub fn det_gelfand_yaglom(omega: f64, t_total: f64) -> f64 {
    assert!(t_total > 0.0, "interval length must be positive");
    if omega == 0.0 {
        // Identical operators: the ratio is 1 by definition, and the exact
        // solution u(t) = t need not be re-summed step by step.
        return 1.0;
    }
    let steps = 20_000usize;
    let h = t_total / steps as f64;
    let w2 = omega * omega;
    // State (u, v): u' = v, v' = ω² u.
    let mut u = 0.0f64;
    let mut v = 1.0f64;
    for _ in 0..steps {
        let (k1u, k1v) = (v, w2 * u);
        let (k2u, k2v) = (v + 0.5 * h * k1v, w2 * (u + 0.5 * h * k1u));
        let (k3u, k3v) = (v + 0.5 * h * k2v, w2 * (u + 0.5 * h * k2u));
        let (k4u, k4v) = (v + h * k3v, w2 * (u + h * k3u));
        u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    }
    u / t_total
}

/// Determinant ratio det(D_ω)/det(D_0) of the discretized Dirichlet
/// operators on a grid, by the tridiagonal three-term recurrence.
///
/// Runs in O(n) and never forms the dense matrices, so it stays exact-cheap
/// at n in the thousands; a congruence scaling keeps the continuants O(1).
/// Agrees with dense determinants of [`build_operator`] matrices (unit
/// tested) and converges to the continuum ratio at O(n⁻²).
pub fn det_ratio_harmonic_over_free(omega: f64, grid: &TimeGrid) -> Result<f64, GaussianError> {
    if grid.ends_at_tb() {
        return Err(GaussianError::Unsupported(
            "Dirichlet determinant ratios need a grid stopping short of t_b".into(),
        ));
    }
    let mut widths = grid.slice_widths();
    widths.push(grid.t_b - *grid.points.last().unwrap());
    let n = grid.len();
    let w2 = omega * omega;

    // Congruence scale Λ = diag(√μ_i) with μ_i the lumped measure; cancels in
    // the ratio but keeps both continuants O(1).
    let mu: Vec<f64> = (0..n).map(|i| 0.5 * (widths[i] + widths[i + 1])).collect();
    let diag_free: Vec<f64> = (0..n)
        .map(|i| (1.0 / widths[i] + 1.0 / widths[i + 1]) * mu[i])
        .collect();
    let off: Vec<f64> = (0..n - 1)
        .map(|i| -1.0 / widths[i + 1] * (mu[i] * mu[i + 1]).sqrt())
        .collect();

    let continuant = |diag: &dyn Fn(usize) -> f64| -> f64 {
        let mut dm2 = 1.0f64;
        let mut dm1 = diag(0);
        for i in 1..n {
            let d = diag(i) * dm1 - off[i - 1] * off[i - 1] * dm2;
            dm2 = dm1;
            dm1 = d;
        }
        dm1
    };
    let det_free = continuant(&|i| diag_free[i]);
    let det_harm = continuant(&|i| diag_free[i] + w2 * mu[i] * mu[i]);
    if det_free == 0.0 {
        return Err(GaussianError::IllConditioned {
            cond: f64::INFINITY,
            bound: CONDITION_LIMIT,
        });
    }
    Ok(det_harm / det_free)
}

/// Which kinetic kernel the propagator composes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PropagatorKind {
    Free,
    Harmonic { omega: f64 },
}

/// Endpoint-to-endpoint amplitude request.
#[derive(Debug, Clone)]
pub struct PropagatorRequest {
    pub kind: PropagatorKind,
    pub mass: f64,
    pub scale: Complex64,
    pub grid: TimeGrid,
    pub x_a: f64,
    pub x_b: f64,
    /// Allow the oscillatory boundary Re(s) = 0 as the analytic continuation
    /// of the Re(s) > 0 composition algebra.
    pub analytic_continuation: bool,
}

/// Composed amplitude together with the single-slice closed form.
#[derive(Debug, Clone)]
pub struct PropagatorValue {
    pub value: Complex64,
    pub slices: usize,
    pub method: Method,
}

// One Gaussian state exp(-(a x² + b x + c)) being pushed through slices.
#[derive(Clone, Copy)]
struct GaussState {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    log_prefactor: Complex64,
}

/// Compose the n single-slice kernels of a grid by iterated convolution.
///
/// Each step marginalizes the intermediate coordinate in closed form — the
/// one-dimensional Gaussian integral is the only primitive used — so the
/// free composition reproduces the one-slice kernel to roundoff (the
/// semigroup property), while the harmonic composition inserts the lumped
/// potential weight at each interior point and converges to the continuum
/// amplitude at O(n⁻²).
pub fn propagator(req: &PropagatorRequest) -> Result<PropagatorValue, GaussianError> {
    let s = req.scale;
    let oscillatory = s.re == 0.0 && s.im != 0.0;
    if !(s.re > 0.0) && !(oscillatory && req.analytic_continuation) {
        return Err(GaussianError::ScaleOutOfRegion { re: s.re, im: s.im });
    }
    if !(req.mass > 0.0) {
        return Err(GaussianError::Unsupported(format!(
            "mass must be positive, got {}",
            req.mass
        )));
    }
    if !req.grid.ends_at_tb() {
        return Err(GaussianError::Unsupported(
            "propagator grids must end exactly at t_b".into(),
        ));
    }

    let widths = req.grid.slice_widths();
    let n = widths.len();
    let m = req.mass;
    let omega = match req.kind {
        PropagatorKind::Free => 0.0,
        PropagatorKind::Harmonic { omega } => omega,
    };
    let pot = |mu: f64| PI / s * m * omega * omega * mu; // coefficient of x²

    // Slice 1 kernel in the running endpoint x, with x_a folded into (b, c).
    let p1 = PI * m / (s * widths[0]);
    let mut st = GaussState {
        a: p1,
        b: -2.0 * p1 * req.x_a,
        c: p1 * req.x_a * req.x_a,
        log_prefactor: 0.5 * (m / (s * widths[0])).ln(),
    };
    // Endpoint potential half-weight at x_a (constant in x).
    st.c += pot(widths[0] / 2.0) * req.x_a * req.x_a;

    for j in 1..n {
        // Full lumped weight at the interior point about to be integrated out.
        st.a += pot(0.5 * (widths[j - 1] + widths[j]));
        let p = PI * m / (s * widths[j]);
        let denom = st.a + p;
        if denom.norm() < 1e-12 * p.norm() {
            return Err(GaussianError::Unsupported(
                "composition hit a focal configuration (vanishing convolution denominator)".into(),
            ));
        }
        st = GaussState {
            a: p * st.a / denom,
            b: p * st.b / denom,
            c: st.c - st.b * st.b / (4.0 * denom),
            log_prefactor: st.log_prefactor
                + 0.5 * (m / (s * widths[j])).ln()
                + 0.5 * (Complex64::new(PI, 0.0) / denom).ln(),
        };
    }
    // Endpoint potential half-weight at x_b.
    st.c += pot(widths[n - 1] / 2.0) * req.x_b * req.x_b;

    let exponent =
        -(st.a * req.x_b * req.x_b + st.b * req.x_b + st.c) + st.log_prefactor;
    Ok(PropagatorValue {
        value: exponent.exp(),
        slices: n,
        method: Method::ClosedForm,
    })
}

/// One-slice closed forms, for semigroup and continuum comparisons.
pub fn free_kernel(m: f64, s: Complex64, t_total: f64, x_a: f64, x_b: f64) -> Complex64 {
    let dx = x_b - x_a;
    (0.5 * (m / (s * t_total)).ln() - PI * m * dx * dx / (s * t_total)).exp()
}

/// Continuum harmonic amplitude in the same convention (real or complex s).
pub fn harmonic_kernel(
    m: f64,
    omega: f64,
    s: Complex64,
    t_total: f64,
    x_a: f64,
    x_b: f64,
) -> Complex64 {
    if omega == 0.0 {
        return free_kernel(m, s, t_total, x_a, x_b);
    }
    let wt = omega * t_total;
    let sh = wt.sinh();
    let ch = wt.cosh();
    let pref = 0.5 * (m * omega / (s * sh / t_total * t_total)).ln();
    let action = omega * ((x_a * x_a + x_b * x_b) * ch - 2.0 * x_a * x_b) / sh;
    (pref - PI * m / s * action).exp()
}

/// Which end of the scale axis a limit sequence approaches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitRegime {
    /// |s| → 0: the kernel concentrates at the mean.
    SmallScale,
    /// |s| → ∞: the closed form decays in the dual variable.
    LargeScale,
}

/// One sampled scale in a limit sequence.
#[derive(Debug, Clone)]
pub struct DeltaLimitSample {
    pub s: Complex64,
    /// Kernel integral at z' divided by the kernel integral at 0, both
    /// through the identical quadrature path, so shared prefactors cancel
    /// bitwise: at z' = 0 this is exactly 1 at any scale.
    pub normalized_theta: Complex64,
    /// Closed form at the requested z'.
    pub z_value: Complex64,
    /// Concentrating density at the probe offset (0 when it underflows).
    pub density_at_probe: f64,
}

/// Concentration / decay report along a scale sequence.
#[derive(Debug, Clone)]
pub struct DeltaLimitReport {
    pub regime: LimitRegime,
    pub samples: Vec<DeltaLimitSample>,
    /// Fitted d log|Z| / d s over the sequence (large-scale regime only).
    pub fitted_decay_slope: Option<f64>,
    /// Analytic -π·Re(z'ᵀWz') the fit should reproduce.
    pub predicted_decay_slope: Option<f64>,
}

/// Checks a scale sequence lies in the admissible half-plane and moves
/// monotonically in `|s|` toward the requested limit.
pub(crate) fn validate_scale_sequence(
    s_values: &[Complex64],
    regime: LimitRegime,
) -> Result<(), GaussianError> {
    if s_values.len() < 2 {
        return Err(GaussianError::Unsupported(
            "limit sequences need at least two scales".into(),
        ));
    }
    for (i, s) in s_values.iter().enumerate() {
        if !(s.re > 0.0) {
            return Err(GaussianError::ScaleOutOfRegion { re: s.re, im: s.im });
        }
        if i > 0 {
            let grew = s.norm() > s_values[i - 1].norm();
            match regime {
                LimitRegime::SmallScale if grew => {
                    return Err(GaussianError::Unsupported(
                        "small-scale sequences must decrease in |s|".into(),
                    ))
                }
                LimitRegime::LargeScale if !grew => {
                    return Err(GaussianError::Unsupported(
                        "large-scale sequences must increase in |s|".into(),
                    ))
                }
                _ => {}
            }
        }
    }
    Ok(())
}

/// Walk a scale sequence and report the two limit behaviors.
///
/// `probe` is an offset from the mean at which the concentrating density is
/// sampled in the small-scale regime; it must be nonzero there.
pub fn delta_limits(
    form: &QuadraticFormSpec,
    zprime: &DVector<Complex64>,
    boundary_value: Complex64,
    s_values: &[Complex64],
    probe: &DVector<f64>,
    regime: LimitRegime,
    order: usize,
) -> Result<DeltaLimitReport, GaussianError> {
    let d = form.dim();
    if zprime.len() != d || probe.len() != d {
        return Err(GaussianError::DimensionMismatch {
            form: d,
            vec: zprime.len().max(probe.len()),
        });
    }
    validate_scale_sequence(s_values, regime)?;

    let w = content_covariance(form)?;
    let q_re = form.real_part();
    let probe_quad = {
        let mut acc = 0.0;
        for r in 0..d {
            for c in 0..d {
                acc += probe[r] * q_re[(r, c)] * probe[c];
            }
        }
        acc
    };

    let zero_dual = DVector::<Complex64>::zeros(d);
    let mut samples = Vec::with_capacity(s_values.len());
    for &s in s_values {
        let spec = GaussianSpec::new(form.clone(), DVector::zeros(d), s, boundary_value)?;
        let pair = char_pair(&spec, zprime, order)?;
        let pair0 = char_pair(&spec, &zero_dual, order)?;
        // Identical code path for numerator and denominator: every shared
        // prefactor cancels bitwise, not merely to roundoff.
        let normalized = pair.theta_integral.value / pair0.theta_integral.value;
        // Density of the concentrating kernel at the probe offset,
        // normalized to unit mass: exp(-(π/s)·probeᵀQprobe)/|det(sW)^{1/2}|.
        let det_half = linalg::det_power_scaled_hermitian(&w, s, 0.5)?;
        let density = ((-PI / s * probe_quad).exp() / det_half).norm();
        samples.push(DeltaLimitSample {
            s,
            normalized_theta: normalized,
            z_value: pair.z_closed,
            density_at_probe: density,
        });
    }

    let (fitted, predicted) = if regime == LimitRegime::LargeScale {
        // Least-squares slope of log|Z| against Re(s).
        let xs: Vec<f64> = s_values.iter().map(|s| s.re).collect();
        let ys: Vec<f64> = samples.iter().map(|smp| smp.z_value.norm().ln()).collect();
        let slope = linalg::least_squares_slope(&xs, &ys);
        let pred = -PI * linalg::bilinear_form(&w, zprime).re;
        (Some(slope), Some(pred))
    } else {
        (None, None)
    };

    Ok(DeltaLimitReport {
        regime,
        samples,
        fitted_decay_slope: fitted,
        predicted_decay_slope: predicted,
    })
}
