//! Pinned numerical contracts for the self-verification suite.
//!
//! Every bound the verification report ([`crate::report`]) asserts lives
//! here as a named constant, so the contract is visible in one place and
//! cannot drift silently between the library, the test suite, and the CLI.
//! Absolute vs. relative reading is part of each constant's doc.

/// Criterion 1: absolute gap between the quadrature kernel integral and
/// the closed form on random specs (dimension ≤ 3, admissible scales).
pub const CHAR_PAIR_ABS_TOL: f64 = 1e-6;

/// Criterion 1: wall-clock budget for the 25 random characteristic pairs.
pub const CHAR_PAIR_TIME_LIMIT_SECS: f64 = 10.0;

/// Criterion 2: absolute gap between the one-dimensional identity-form
/// normalization and `√s`.
pub const FIDUCIAL_SQRT_TOL: f64 = 1e-12;

/// Criterion 3: absolute gap between the n-slice composed free kernel and
/// the single-slice closed form.
pub const SEMIGROUP_TOL: f64 = 1e-12;

/// Criterion 4: absolute gap between the discretized determinant ratio at
/// n = 2000 and the continuum value `sinh(ωT)/(ωT)`.
pub const DET_RATIO_TOL: f64 = 1e-3;

/// Criterion 4: absolute accuracy demanded of the initial-value-problem
/// determinant oracle itself against the analytic value.
pub const DET_ORACLE_TOL: f64 = 1e-8;

/// Criterion 4: wall-clock budget for the determinant-ratio sweep.
pub const DET_RATIO_TIME_LIMIT_SECS: f64 = 5.0;

/// Criterion 5: relative gap `|Pf(M)² − det(M)| / |det(M)|` on random
/// skew matrices.
pub const PFAFFIAN_SQUARE_REL_TOL: f64 = 1e-10;

/// Criterion 5: relative gap for the congruence rule
/// `Pf(QᵀMQ) = det(Q)·Pf(M)`, measured against `max(1, |det(Q)Pf(M)|)`.
pub const PFAFFIAN_CONGRUENCE_REL_TOL: f64 = 1e-8;

/// Criterion 6: absolute gap between the quadrature normalization of a
/// rate product and the closed form `Π βᵢ^{−α}`.
pub const GAMMA_NORMALIZATION_TOL: f64 = 1e-8;

/// Criterion 7: relative gap between the series lower incomplete gamma and
/// the continued-fraction route (compared on the lower function, where
/// neither side loses precision to cancellation).
pub const INCOMPLETE_GAMMA_REL_TOL: f64 = 1e-10;

/// Criterion 7: absolute gap for the elementary member `γ(1, c) = 1 − e^{−c}`.
pub const INCOMPLETE_GAMMA_UNIT_TOL: f64 = 1e-14;

/// Criterion 8: absolute gap between the counting-tail special function
/// and direct summation of the single weights.
pub const POISSON_TAIL_TOL: f64 = 1e-12;

/// Criterion 8: the waiting-time Monte Carlo volume must sit within this
/// many standard errors of the closed-form weight.
pub const WAITING_TIME_STDERR_FACTOR: f64 = 3.0;

/// Criterion 8: sample count for the waiting-time Monte Carlo runs.
pub const WAITING_TIME_SAMPLES: u64 = 100_000;

/// Criterion 9: absolute entrywise gap between the order-12 ordered series
/// and the Runge–Kutta oracle for the time-dependent generator.
pub const DYSON_ODE_TOL: f64 = 1e-8;

/// Criterion 9: absolute entrywise gap between the ordered series for a
/// constant generator and the matrix exponential.
pub const DYSON_EXPM_TOL: f64 = 1e-12;

/// Criterion 9: wall-clock budget for the evolution comparisons.
pub const DYSON_TIME_LIMIT_SECS: f64 = 10.0;

/// Criterion 10: residual of the evolution law `d/dT⟨…⟩ = iβ′(T)⟨…⟩`
/// under central finite differences of the endpoint.
pub const AVERAGE_EVOLUTION_TOL: f64 = 1e-6;

/// Criterion 11: identity residual bound on finite groups (exact sums;
/// roundoff only).
pub const GROUP_FINITE_TOL: f64 = 1e-13;

/// Criterion 11: identity residual bound on the continuous groups
/// (tensor-quadrature error included).
pub const GROUP_CONTINUOUS_TOL: f64 = 1e-6;

/// Criterion 12: gap between the truncated-kernel pairing at cutoff 10³
/// and the concentration value `f(0)`.
pub const DELTA_PAIRING_TOL: f64 = 1e-2;

/// Criterion 12: cutoff at which the pairing is sampled.
pub const DELTA_PAIRING_CUTOFF: f64 = 1e3;

/// Criterion 13: relative gap between the fitted large-scale decay slope
/// of `log|Z|` and the analytic prediction.
pub const DECAY_SLOPE_REL_TOL: f64 = 5e-2;

/// Criterion 14: projection/coarsening consistency is asserted bit-exact;
/// the tolerance is identically zero.
pub const PROJECTIVE_CONSISTENCY_TOL: f64 = 0.0;
