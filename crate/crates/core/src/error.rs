//! Error types. Validation failures carry enough context (offending value,
//! deviation, bound) that a caller can report them without re-deriving.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LinAlgError {
    #[error("matrix is not positive definite: eigenvalue {eigenvalue} ≤ 0")]
    NotPositiveDefinite { eigenvalue: f64 },
}

#[derive(Debug, Error)]
pub enum GridError {
    #[error("grid needs at least one point")]
    Empty,
    #[error("grid times must be strictly increasing: t[{index}] = {value} does not increase")]
    NotIncreasing { index: usize, value: f64 },
    #[error("grid point {value} lies outside ({t_a}, {t_b}]")]
    OutOfRange { value: f64, t_a: f64, t_b: f64 },
    #[error("interval is empty: t_a = {t_a}, t_b = {t_b}")]
    EmptyInterval { t_a: f64, t_b: f64 },
    #[error("time value {value} is not finite")]
    NotFinite { value: f64 },
    #[error("this rule needs a uniform grid reaching t_b with at least {min_panels} panels")]
    NotUniform { min_panels: usize },
}

#[derive(Debug, Error)]
pub enum PathError {
    #[error("knot time {value} lies outside [{t_a}, {t_b}]")]
    KnotOutOfRange { value: f64, t_a: f64, t_b: f64 },
    #[error("knot times must be strictly increasing: knot[{index}] = {value} does not increase")]
    NotIncreasing { index: usize, value: f64 },
    #[error("knot {index} has {found} components, path declares {declared}")]
    ComponentMismatch { index: usize, found: usize, declared: usize },
    #[error("path has no components")]
    NoComponents,
}

#[derive(Debug, Error)]
pub enum CoarsenError {
    #[error("coarse grid time {value} is not a point of the fine grid")]
    NotSubset { value: f64 },
    #[error("grids span different intervals: ({a0}, {b0}] vs ({a1}, {b1}]")]
    IntervalMismatch { a0: f64, b0: f64, a1: f64, b1: f64 },
}

#[derive(Debug, Error)]
pub enum QuadError {
    #[error("tensor quadrature supports dimension ≤ {max}, got {dim}; use the Monte Carlo backend")]
    DimensionTooLarge { dim: usize, max: usize },
    #[error("quadrature order must be ≥ 2, got {order}")]
    OrderTooSmall { order: usize },
    #[error("integrand returned a non-finite value at {coords:?}")]
    NonFiniteSample { coords: Vec<f64> },
    #[error("domain/weight combination unsupported: {0}")]
    UnsupportedDomain(String),
    #[error("Monte Carlo config invalid: {0}")]
    McConfig(String),
    #[error("proposal density does not cover the requested domain: {0}")]
    ProposalMismatch(String),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

#[derive(Debug, Error)]
pub enum GaussianError {
    #[error("quadratic form is not Hermitian: max deviation {deviation:.3e} exceeds {bound:.3e}")]
    NotHermitian { deviation: f64, bound: f64 },
    #[error("quadratic form is not positive definite: eigenvalue {eigenvalue} ≤ 0")]
    NotPositiveDefinite { eigenvalue: f64 },
    #[error("operator condition number {cond:.3e} exceeds {bound:.3e}; covariance is untrustworthy")]
    IllConditioned { cond: f64, bound: f64 },
    #[error("scale parameter must satisfy Re(s) > 0, got {re} + {im}i (pass continuation flag for the oscillatory boundary)")]
    ScaleOutOfRegion { re: f64, im: f64 },
    #[error("dimension mismatch: form is {form}×{form}, vector has {vec} entries")]
    DimensionMismatch { form: usize, vec: usize },
    #[error("unsupported combination: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

#[derive(Debug, Error)]
pub enum SymplecticError {
    #[error("Pfaffian requires even dimension; for odd dimension {dim} it is identically zero")]
    OddDimension { dim: usize },
    #[error("matrix is not antisymmetric: max deviation {deviation:.3e} exceeds {bound:.3e}")]
    NotSkew { deviation: f64, bound: f64 },
    #[error("skew form iA is outside the integrable regime: A has eigenvalue {eigenvalue} ≤ 0")]
    NotIntegrable { eigenvalue: f64 },
    #[error(transparent)]
    Gaussian(#[from] GaussianError),
}

#[derive(Debug, Error)]
pub enum GammaError {
    #[error("exponent must have positive real part, got Re(α) = {re}")]
    AlphaNotPositive { re: f64 },
    #[error("rate component {index} must have positive real part, got Re = {re}")]
    BetaNotPositive { index: usize, re: f64 },
    #[error("normalization requires an infinite cutoff; finite cutoff {cutoff} is unsupported here")]
    FiniteCutoffUnsupported { cutoff: f64 },
    #[error("series did not converge within {max_terms} terms")]
    SeriesDivergence { max_terms: usize },
    #[error("continued fraction did not converge within {max_iters} iterations")]
    ContinuedFractionDivergence { max_iters: usize },
    #[error("cutoff must be positive and finite, got {cutoff}")]
    BadCutoff { cutoff: f64 },
    #[error("derivative order must be ≥ 1, got {order}")]
    BadDerivativeOrder { order: usize },
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Quad(#[from] QuadError),
}

#[derive(Debug, Error)]
pub enum PoissonError {
    #[error("counting level n must be a non-negative integer, got {n}")]
    BadLevel { n: i64 },
    #[error("intensity must have positive real part, got Re(c) = {re}")]
    BadIntensity { re: f64 },
    #[error("series truncated at {max_terms} terms without meeting the tolerance")]
    TruncationExceeded { max_terms: usize },
    #[error("fiducial shift has {shift} components but the spectrum has {beta}")]
    ShiftMismatch { beta: usize, shift: usize },
    #[error("finite-difference step must be positive and finite, got {h}")]
    BadStep { h: f64 },
    #[error(transparent)]
    Gamma(#[from] GammaError),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Grid(#[from] GridError),
}

#[derive(Debug, Error)]
pub enum DysonError {
    #[error("generator is not Hermitian at t = {t}: deviation {deviation:.3e} exceeds {bound:.3e}")]
    NotHermitian { t: f64, deviation: f64, bound: f64 },
    #[error("series order must be ≥ 0 and ≤ {max}, got {order}")]
    BadOrder { order: usize, max: usize },
    #[error("generator dimension must be ≥ 1")]
    EmptyGenerator,
    #[error("series truncation bound {bound:.3e} exceeds the requested tolerance {tolerance:.3e}")]
    TruncationBound { bound: f64, tolerance: f64 },
    #[error(transparent)]
    Grid(#[from] GridError),
}

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("product table is not {order}×{order}")]
    BadTableShape { order: usize },
    #[error("product table entry ({i},{j}) = {value} is out of range")]
    BadTableEntry { i: usize, j: usize, value: usize },
    #[error("product table is not associative at ({i},{j},{k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("product table has no two-sided identity")]
    NoIdentity,
    #[error("element {element} has no inverse")]
    NoInverse { element: usize },
    #[error("function table has {found} values, group has order {order}")]
    FunctionLengthMismatch { found: usize, order: usize },
    #[error("operation unsupported for this group kind: {0}")]
    Unsupported(String),
    #[error("support box must satisfy a > 0 on the affine line, got a_lo = {a_lo}")]
    BadSupport { a_lo: f64 },
    #[error("matrix values have mismatched dimensions: {left}×{left} vs {right}×{right}")]
    ValueDimensionMismatch { left: usize, right: usize },
    #[error(transparent)]
    Quad(#[from] QuadError),
}
