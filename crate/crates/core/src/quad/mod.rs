//! Deterministic integration backends over the projected coordinate spaces.
//!
//! Two backends share one result type: tensorized Gauss rules for dimension
//! ≤ 6 ([`integrate_quad`]) and seeded importance-sampling Monte Carlo for
//! anything else ([`mc::integrate_mc`]). The quadrature error estimate is the
//! difference against the half-order rule plus a roundoff floor; it is a
//! genuine a-posteriori estimate, not a bound pulled from the integrand.

pub mod mc;
pub mod nodes;

use num_complex::Complex64;

use crate::error::QuadError;
use crate::exec;
use crate::result::{IntegralResult, Method};

pub use mc::{integrate_mc, McConfig, Proposal};

/// Maximum tensor-product dimension before node counts explode.
pub const MAX_TENSOR_DIM: usize = 6;

/// Integration region in the projected real coordinates.
#[derive(Debug, Clone, PartialEq)]
pub enum Domain {
    /// All of ℝ^d.
    FullSpace { dim: usize },
    /// The positive orthant (0, ∞)^d.
    PositiveOrthant { dim: usize },
    /// An axis-aligned box, one (lo, hi) pair per dimension.
    Box { bounds: Vec<(f64, f64)> },
}

impl Domain {
    pub fn dim(&self) -> usize {
        match self {
            Domain::FullSpace { dim } | Domain::PositiveOrthant { dim } => *dim,
            Domain::Box { bounds } => bounds.len(),
        }
    }
}

/// Declares the weight factor the backend folds into the rule.
///
/// The integrand passed to [`integrate_quad`] must NOT include the declared
/// weight — the rule supplies it:
/// `GaussianPi` computes ∫ f(x) e^{-π|x|²} dx, `ExponentialUnit` computes
/// ∫ f(x) e^{-Σxᵢ} dx, `None` computes a plain ∫ f(x) dx.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightHint {
    None,
    /// e^{-π|x|²} on full space (unit total mass per dimension).
    GaussianPi,
    /// e^{-Σ xᵢ} on the positive orthant.
    ExponentialUnit,
}

/// One-dimensional node/weight factors for a domain/weight combination.
fn rule_for(domain: &Domain, weight: WeightHint, order: usize, dim_index: usize) -> Result<nodes::Rule, QuadError> {
    match (domain, weight) {
        (Domain::FullSpace { .. }, WeightHint::GaussianPi) => {
            // Map e^{-u²} nodes to the e^{-πx²} convention: x = u/√π.
            let mut r = nodes::gauss_hermite(order)?;
            let sqrt_pi = std::f64::consts::PI.sqrt();
            for x in &mut r.nodes {
                *x /= sqrt_pi;
            }
            for w in &mut r.weights {
                *w /= sqrt_pi;
            }
            Ok(r)
        }
        (Domain::FullSpace { .. }, WeightHint::None) => {
            // Compensated Hermite: caller's integrand must decay at least
            // Gaussian-fast for this to converge; the error estimate will
            // expose it when that fails.
            let mut r = nodes::gauss_hermite(order)?;
            for (w, x) in r.weights.iter_mut().zip(&r.nodes) {
                *w *= (x * x).exp();
            }
            Ok(r)
        }
        (Domain::PositiveOrthant { .. }, WeightHint::ExponentialUnit) => nodes::gauss_laguerre(order, 0.0),
        (Domain::PositiveOrthant { .. }, WeightHint::None) => {
            let mut r = nodes::gauss_laguerre(order, 0.0)?;
            for (w, x) in r.weights.iter_mut().zip(&r.nodes) {
                *w *= x.exp();
            }
            Ok(r)
        }
        (Domain::Box { bounds }, WeightHint::None) => {
            let (lo, hi) = bounds[dim_index];
            if !(hi > lo) {
                return Err(QuadError::UnsupportedDomain(format!(
                    "box dimension {dim_index} is empty: [{lo}, {hi}]"
                )));
            }
            let mut r = nodes::gauss_legendre(order)?;
            let mid = 0.5 * (lo + hi);
            let half = 0.5 * (hi - lo);
            for x in &mut r.nodes {
                *x = mid + half * *x;
            }
            for w in &mut r.weights {
                *w *= half;
            }
            Ok(r)
        }
        (d, w) => Err(QuadError::UnsupportedDomain(format!(
            "no tensor rule for {d:?} with weight {w:?}"
        ))),
    }
}

fn tensor_pass<F>(f: &F, domain: &Domain, weight: WeightHint, order: usize) -> Result<Complex64, QuadError>
where
    F: Fn(&[f64]) -> Complex64 + Sync,
{
    let d = domain.dim();
    let rules: Vec<nodes::Rule> = (0..d)
        .map(|k| rule_for(domain, weight, order, k))
        .collect::<Result<_, _>>()?;
    let total: usize = order.pow(d as u32);
    let contributions = exec::map_indexed(total, |flat| {
        let mut idx = flat;
        let mut x = vec![0.0; d];
        let mut w = 1.0;
        for k in 0..d {
            let i = idx % order;
            idx /= order;
            x[k] = rules[k].nodes[i];
            w *= rules[k].weights[i];
        }
        let v = f(&x);
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v * w)
        } else {
            Err(x)
        }
    });
    let mut values = Vec::with_capacity(total);
    for c in contributions {
        match c {
            Ok(v) => values.push(v),
            Err(coords) => return Err(QuadError::NonFiniteSample { coords }),
        }
    }
    Ok(exec::pairwise_sum(&values))
}

/// Tensor-product Gauss quadrature in up to [`MAX_TENSOR_DIM`] dimensions.
///
/// The error estimate is `|I_order - I_(order/2)|` plus a roundoff floor of
/// `1e-13·(1+|I|)`; the floor keeps the estimate honest once both passes have
/// converged to machine precision.
pub fn integrate_quad<F>(
    f: F,
    domain: &Domain,
    weight: WeightHint,
    order: usize,
) -> Result<IntegralResult, QuadError>
where
    F: Fn(&[f64]) -> Complex64 + Sync,
{
    let d = domain.dim();
    if d == 0 || d > MAX_TENSOR_DIM {
        return Err(QuadError::DimensionTooLarge { dim: d, max: MAX_TENSOR_DIM });
    }
    if order < 2 {
        return Err(QuadError::OrderTooSmall { order });
    }
    let full = tensor_pass(&f, domain, weight, order)?;
    let half_order = (order / 2).max(2);
    let half = tensor_pass(&f, domain, weight, half_order)?;
    let est = (full - half).norm() + 1e-13 * (1.0 + full.norm());
    Ok(IntegralResult {
        value: full,
        abs_error_estimate: est,
        method: Method::Quadrature,
        samples_or_order: order as u64,
        rng_seed: None,
    })
}
