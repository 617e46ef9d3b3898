//! Seeded importance-sampling Monte Carlo.
//!
//! Sample i draws from its own counter-derived ChaCha stream, so the full
//! sample set is a pure function of (seed, N) — evaluation order, thread
//! count, and the parallel/sequential switch cannot change a single bit of
//! the result. The reduction reuses the fixed-tree pairwise sum.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::QuadError;
use crate::exec;
use crate::result::{IntegralResult, Method};

use super::Domain;

/// Proposal distribution the sampler draws from.
#[derive(Debug, Clone, PartialEq)]
pub enum Proposal {
    /// Uniform over an axis-aligned box.
    UniformBox { bounds: Vec<(f64, f64)> },
    /// Independent normals, one (center, sigma) per dimension.
    GaussianDiag { center: Vec<f64>, sigma: Vec<f64> },
    /// Independent exponentials on the positive orthant.
    ExponentialRate { rates: Vec<f64> },
}

impl Proposal {
    fn dim(&self) -> usize {
        match self {
            Proposal::UniformBox { bounds } => bounds.len(),
            Proposal::GaussianDiag { center, .. } => center.len(),
            Proposal::ExponentialRate { rates } => rates.len(),
        }
    }

    fn validate(&self, domain: &Domain) -> Result<(), QuadError> {
        if self.dim() != domain.dim() {
            return Err(QuadError::McConfig(format!(
                "proposal dimension {} does not match domain dimension {}",
                self.dim(),
                domain.dim()
            )));
        }
        match self {
            Proposal::UniformBox { bounds } => {
                for (i, (lo, hi)) in bounds.iter().enumerate() {
                    if !(hi > lo) {
                        return Err(QuadError::McConfig(format!(
                            "uniform proposal dimension {i} is empty: [{lo}, {hi}]"
                        )));
                    }
                }
                match domain {
                    Domain::Box { bounds: db } => {
                        for (i, ((plo, phi), (dlo, dhi))) in bounds.iter().zip(db).enumerate() {
                            if plo > dlo || phi < dhi {
                                return Err(QuadError::ProposalMismatch(format!(
                                    "uniform proposal [{plo}, {phi}] does not cover domain [{dlo}, {dhi}] in dimension {i}"
                                )));
                            }
                        }
                        Ok(())
                    }
                    _ => Err(QuadError::ProposalMismatch(
                        "a bounded uniform proposal cannot cover an unbounded domain".into(),
                    )),
                }
            }
            Proposal::GaussianDiag { center, sigma } => {
                if center.len() != sigma.len() || sigma.iter().any(|s| !(*s > 0.0)) {
                    return Err(QuadError::McConfig("gaussian proposal needs positive sigmas".into()));
                }
                Ok(()) // positive density everywhere: covers any domain
            }
            Proposal::ExponentialRate { rates } => {
                if rates.iter().any(|r| !(*r > 0.0)) {
                    return Err(QuadError::McConfig("exponential proposal needs positive rates".into()));
                }
                match domain {
                    Domain::PositiveOrthant { .. } => Ok(()),
                    Domain::Box { bounds } if bounds.iter().all(|(lo, _)| *lo >= 0.0) => Ok(()),
                    _ => Err(QuadError::ProposalMismatch(
                        "an exponential proposal has zero density outside the positive orthant".into(),
                    )),
                }
            }
        }
    }

    /// Draw one point; returns (coordinates, density at the point).
    fn sample(&self, rng: &mut ChaCha8Rng) -> (Vec<f64>, f64) {
        match self {
            Proposal::UniformBox { bounds } => {
                let mut x = Vec::with_capacity(bounds.len());
                let mut dens = 1.0;
                for (lo, hi) in bounds {
                    x.push(lo + (hi - lo) * rng.gen::<f64>());
                    dens /= hi - lo;
                }
                (x, dens)
            }
            Proposal::GaussianDiag { center, sigma } => {
                let mut x = Vec::with_capacity(center.len());
                let mut dens = 1.0;
                let norm = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
                for (c, s) in center.iter().zip(sigma) {
                    // Box–Muller; one fresh pair per coordinate keeps the
                    // stream layout independent of dimension parity.
                    let u1: f64 = rng.gen::<f64>().max(f64::MIN_POSITIVE);
                    let u2: f64 = rng.gen();
                    let z = (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos();
                    let xi = c + s * z;
                    dens *= norm / s * (-0.5 * z * z).exp();
                    x.push(xi);
                }
                (x, dens)
            }
            Proposal::ExponentialRate { rates } => {
                let mut x = Vec::with_capacity(rates.len());
                let mut dens = 1.0;
                for r in rates {
                    let u: f64 = rng.gen::<f64>();
                    let xi = -(1.0 - u).max(f64::MIN_POSITIVE).ln() / r;
                    dens *= r * (-r * xi).exp();
                    x.push(xi);
                }
                (x, dens)
            }
        }
    }
}

/// Monte Carlo configuration; `samples ≥ 2` so the variance is defined.
#[derive(Debug, Clone, PartialEq)]
pub struct McConfig {
    pub samples: u64,
    pub seed: u64,
    pub proposal: Proposal,
}

fn in_domain(x: &[f64], domain: &Domain) -> bool {
    match domain {
        Domain::FullSpace { .. } => true,
        Domain::PositiveOrthant { .. } => x.iter().all(|&v| v > 0.0),
        Domain::Box { bounds } => x.iter().zip(bounds).all(|(&v, (lo, hi))| v >= *lo && v <= *hi),
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Importance-sampled ∫_domain f(x) dx ≈ (1/N) Σ f(xᵢ)/p(xᵢ).
///
/// The reported error is the standard error of the mean (combined over real
/// and imaginary parts). Identical configs reproduce identical bits.
pub fn integrate_mc<F>(f: F, domain: &Domain, cfg: &McConfig) -> Result<IntegralResult, QuadError>
where
    F: Fn(&[f64]) -> Complex64 + Sync,
{
    if cfg.samples < 2 {
        return Err(QuadError::McConfig(format!(
            "need at least 2 samples, got {}",
            cfg.samples
        )));
    }
    cfg.proposal.validate(domain)?;

    let n = cfg.samples as usize;
    let base = splitmix64(cfg.seed ^ 0xA076_1D64_78BD_642F);
    let draws = exec::map_indexed(n, |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(base ^ splitmix64(i as u64));
        let (x, dens) = cfg.proposal.sample(&mut rng);
        if !in_domain(&x, domain) {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if !(dens > 0.0) {
            return Err(QuadError::McConfig(format!(
                "proposal density vanished at sampled point {x:?}"
            )));
        }
        let v = f(&x);
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v / dens)
        } else {
            Err(QuadError::NonFiniteSample { coords: x })
        }
    });

    let mut ratios = Vec::with_capacity(n);
    for d in draws {
        ratios.push(d?);
    }
    let mean = exec::pairwise_sum(&ratios) / n as f64;
    let sq: Vec<f64> = ratios.iter().map(|r| (r - mean).norm_sqr()).collect();
    let var = exec::pairwise_sum_f64(&sq) / (n as f64 - 1.0);
    let stderr = (var / n as f64).sqrt();

    Ok(IntegralResult {
        value: mean,
        abs_error_estimate: stderr,
        method: Method::MonteCarlo,
        samples_or_order: cfg.samples,
        rng_seed: Some(cfg.seed),
    })
}
