//! Haar-measure function algebras on concrete groups.
//!
//! A [`GroupSpec`] packages a locally compact group together with its left
//! Haar data. Three kinds are provided: finite groups under counting measure,
//! the translation group (ℝⁿ, +) under Lebesgue measure (both unimodular),
//! and the affine line {x ↦ a·x + b : a > 0} under the left-invariant density
//! a⁻² da db, whose modular function Δ(a, b) = 1/a is nontrivial.
//!
//! Integrable functions on the group — value tables for finite groups, smooth
//! compactly supported callables for continuous ones — form a normed algebra
//! under the convolution
//!
//! ```text
//!     (F₁ ∗ F₂)(g) = ∫ F₁(g̃) · F₂(g̃⁻¹ g) dν(g̃)
//! ```
//!
//! with involution `F^∗(g) = F(g⁻¹)^∗ · Δ(g⁻¹)` and norm
//! `‖F‖ = ∫ ‖F(g)‖ dν(g)`. Values may be complex scalars or complex square
//! matrices; [`AlgebraValue`] abstracts the handful of operations both need.
//!
//! [`verify_propositions`] measures, on concrete fixture functions, the
//! residuals of the five identities that make this a Banach ∗-algebra whose
//! integral is a ∗-homomorphism:
//!
//! 1. `‖F₁ ∗ F₂‖ ≤ ‖F₁‖·‖F₂‖`            (norm-submultiplicative)
//! 2. `(F₁ ∗ F₂) ∗ F₃ = F₁ ∗ (F₂ ∗ F₃)`    (convolution-associative)
//! 3. `∫(F₁ ∗ F₂) = ∫F₁ · ∫F₂`             (integral-multiplicative)
//! 4. `∫F^∗ = (∫F)^∗`                      (integral-adjoint)
//! 5. `F₁^∗ ∗ F₂^∗ = (F₂ ∗ F₁)^∗`          (involution-reverses-convolution)
//!
//! All five are exact (up to roundoff) for finite groups and hold within
//! quadrature error for the continuous kinds; on the affine line identities
//! 4 and 5 probe the modular function, so they double as a numerical check
//! that the Δ convention is consistent with the left Haar density.
//!
//! A second pairing, [`convolve_star2`], evaluates the distinct product
//! `(F₁ ⋆ F₂)(g) = ∫ F₁(g̃ g) · F₂(g̃ g̃) dν(g̃)` exactly as written — note the
//! squared argument. It satisfies none of the algebra laws above and is
//! deliberately excluded from [`verify_propositions`]; it is provided for
//! direct numerical inspection only.

mod continuous;
mod finite;

pub use continuous::SmoothFunction;
pub use finite::FiniteGroup;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::GroupError;
use crate::linalg;

use continuous::Geometry;

/// Residual tolerance for the algebra identities on finite groups, where
/// every operation is an exact finite sum and only roundoff remains.
pub const FINITE_IDENTITY_TOL: f64 = 1e-13;

/// Residual tolerance for the algebra identities on continuous groups, where
/// convolutions and integrals carry quadrature error.
pub const CONTINUOUS_IDENTITY_TOL: f64 = 1e-6;

/// Values of the coefficient algebra: complex scalars or square complex
/// matrices. Supplies exactly the operations the group algebra needs —
/// addition, (noncommutative) multiplication, adjoint, real scaling, and a
/// norm.
pub trait AlgebraValue: Clone + Send + Sync + 'static {
    /// Additive identity with the same shape as `self`.
    fn zero_like(&self) -> Self;
    /// `self + other`.
    fn add(&self, other: &Self) -> Self;
    /// Algebra product `self · other`; order matters for matrix values.
    fn mul(&self, other: &Self) -> Self;
    /// Complex conjugate for scalars, conjugate transpose for matrices.
    fn adjoint(&self) -> Self;
    /// Multiplication by a real scalar.
    fn scale(&self, s: f64) -> Self;
    /// Modulus for scalars, operator norm for matrices.
    fn norm(&self) -> f64;
    /// Square-matrix dimension; `None` for scalars.
    fn matrix_dim(&self) -> Option<usize>;

    /// Norm of the difference `self − other`.
    fn dist(&self, other: &Self) -> f64 {
        self.add(&other.scale(-1.0)).norm()
    }
}

impl AlgebraValue for Complex64 {
    fn zero_like(&self) -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn adjoint(&self) -> Self {
        self.conj()
    }
    fn scale(&self, s: f64) -> Self {
        self * s
    }
    fn norm(&self) -> f64 {
        Complex64::norm(*self)
    }
    fn matrix_dim(&self) -> Option<usize> {
        None
    }
}

impl AlgebraValue for DMatrix<Complex64> {
    fn zero_like(&self) -> Self {
        DMatrix::zeros(self.nrows(), self.ncols())
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn adjoint(&self) -> Self {
        DMatrix::adjoint(self)
    }
    fn scale(&self, s: f64) -> Self {
        self.map(|z| z * s)
    }
    fn norm(&self) -> f64 {
        linalg::operator_norm(self)
    }
    fn matrix_dim(&self) -> Option<usize> {
        Some(self.nrows())
    }
}

/// A group together with its left Haar measure and modular function.
#[derive(Clone, Debug)]
pub enum GroupSpec {
    /// Finite group under counting measure; Δ ≡ 1.
    Finite(FiniteGroup),
    /// Affine line {x ↦ a·x + b : a > 0} with product
    /// (a₁, b₁)·(a₂, b₂) = (a₁a₂, a₁b₂ + b₁), left Haar density a⁻² da db,
    /// and modular function Δ(a, b) = 1/a.
    AffineLine,
    /// Translation group (ℝⁿ, +) under Lebesgue measure; Δ ≡ 1.
    RealLine { dim: usize },
}

/// Largest translation-group dimension the tensor quadrature will take on.
pub const MAX_REAL_LINE_DIM: usize = 3;

impl GroupSpec {
    /// Finite group from an explicit multiplication table; validates the
    /// group axioms exhaustively.
    pub fn finite(
        table: Vec<Vec<usize>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, GroupError> {
        Ok(GroupSpec::Finite(FiniteGroup::from_table(table, labels)?))
    }

    /// Cyclic group of order `n` in additive notation.
    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        Ok(GroupSpec::Finite(FiniteGroup::cyclic(n)?))
    }

    /// The affine line with its left Haar data.
    pub fn affine_line() -> Self {
        GroupSpec::AffineLine
    }

    /// The translation group (ℝⁿ, +).
    pub fn real_line(dim: usize) -> Result<Self, GroupError> {
        if dim == 0 || dim > MAX_REAL_LINE_DIM {
            return Err(GroupError::Unsupported(format!(
                "translation group dimension must be 1..={MAX_REAL_LINE_DIM}, got {dim}"
            )));
        }
        Ok(GroupSpec::RealLine { dim })
    }

    /// Residual tolerance [`verify_propositions`] applies for this kind.
    pub fn proposition_tolerance(&self) -> f64 {
        match self {
            GroupSpec::Finite(_) => FINITE_IDENTITY_TOL,
            _ => CONTINUOUS_IDENTITY_TOL,
        }
    }

    /// Coordinate dimension for continuous kinds (affine line is 2-d).
    pub fn dimension(&self) -> Option<usize> {
        self.geometry().map(|geo| geo.dim())
    }

    fn geometry(&self) -> Option<Geometry> {
        match self {
            GroupSpec::Finite(_) => None,
            GroupSpec::AffineLine => Some(Geometry::Affine),
            GroupSpec::RealLine { dim } => Some(Geometry::Real(*dim)),
        }
    }
}

/// A point of a group: an element index for finite groups, coordinates for
/// continuous ones.
#[derive(Clone, Debug, PartialEq)]
pub enum GroupPoint {
    Element(usize),
    Coords(Vec<f64>),
}

/// An integrable function on a group: one value per element for finite
/// groups, a smooth compactly supported callable for continuous ones.
#[derive(Clone)]
pub enum GroupFunction<T: AlgebraValue> {
    Table(Vec<T>),
    Smooth(SmoothFunction<T>),
}

impl<T: AlgebraValue> std::fmt::Debug for GroupFunction<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupFunction::Table(v) => {
                f.debug_struct("GroupFunction::Table").field("len", &v.len()).finish()
            }
            GroupFunction::Smooth(s) => f
                .debug_struct("GroupFunction::Smooth")
                .field("support", &s.support())
                .finish(),
        }
    }
}

impl<T: AlgebraValue> GroupFunction<T> {
    /// Value table for a finite group, indexed like the group's elements.
    pub fn table(values: Vec<T>) -> Result<Self, GroupError> {
        if values.is_empty() {
            return Err(GroupError::Unsupported(
                "value table must not be empty".into(),
            ));
        }
        for v in &values {
            ensure_same_dims(&values[0], v)?;
            if !v.norm().is_finite() {
                return Err(GroupError::Unsupported(
                    "value table contains a non-finite entry".into(),
                ));
            }
        }
        Ok(GroupFunction::Table(values))
    }

    /// Smooth compactly supported function given by a callable and its
    /// support box. `zero` is the additive identity of the value algebra
    /// (it fixes matrix dimensions and is returned outside the support).
    pub fn smooth<F>(
        support: Vec<(f64, f64)>,
        zero: T,
        call: F,
    ) -> Result<Self, GroupError>
    where
        F: Fn(&[f64]) -> T + Send + Sync + 'static,
    {
        if support.is_empty() {
            return Err(GroupError::Unsupported(
                "support box must have at least one axis".into(),
            ));
        }
        for &(lo, hi) in &support {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(GroupError::Unsupported(format!(
                    "support axis [{lo}, {hi}] is not a finite nonempty interval"
                )));
            }
        }
        if zero.norm() != 0.0 {
            return Err(GroupError::Unsupported(
                "the zero prototype must have norm 0".into(),
            ));
        }
        let center: Vec<f64> =
            support.iter().map(|&(lo, hi)| 0.5 * (lo + hi)).collect();
        let sample = call(&center);
        ensure_same_dims(&zero, &sample)?;
        if !sample.norm().is_finite() {
            return Err(GroupError::Unsupported(
                "function is non-finite at the center of its support".into(),
            ));
        }
        Ok(GroupFunction::Smooth(SmoothFunction::new(support, zero, call)))
    }

    /// The value table, when this is a finite-group function.
    pub fn values(&self) -> Option<&[T]> {
        match self {
            GroupFunction::Table(v) => Some(v),
            GroupFunction::Smooth(_) => None,
        }
    }

    /// The support box, when this is a continuous-group function.
    pub fn support(&self) -> Option<&[(f64, f64)]> {
        match self {
            GroupFunction::Table(_) => None,
            GroupFunction::Smooth(s) => Some(s.support()),
        }
    }

    /// Evaluates the function at a point of the matching kind.
    pub fn value_at(&self, point: &GroupPoint) -> Result<T, GroupError> {
        match (self, point) {
            (GroupFunction::Table(v), GroupPoint::Element(i)) => {
                v.get(*i).cloned().ok_or_else(|| {
                    GroupError::Unsupported(format!(
                        "element index {i} out of range for a table of length {}",
                        v.len()
                    ))
                })
            }
            (GroupFunction::Smooth(s), GroupPoint::Coords(x)) => {
                if x.len() != s.support().len() {
                    return Err(GroupError::Unsupported(format!(
                        "point has {} coordinates but the support box has {} axes",
                        x.len(),
                        s.support().len()
                    )));
                }
                Ok(s.eval(x))
            }
            _ => Err(GroupError::Unsupported(
                "point kind does not match the function kind".into(),
            )),
        }
    }
}

/// Haar integral plus an error estimate (zero for finite groups, where the
/// sum is exact; quadrature refinement difference for continuous kinds).
#[derive(Clone, Debug)]
pub struct GroupIntegral<T> {
    pub value: T,
    pub abs_error_estimate: f64,
}

/// Outcome of one algebra-identity check.
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    /// Stable identifier, e.g. `"integral-multiplicative"`.
    pub identity: &'static str,
    /// Largest residual observed over all fixture combinations.
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Residual report for the five convolution-algebra identities.
#[derive(Clone, Debug)]
pub struct PropositionReport {
    pub checks: Vec<IdentityCheck>,
}

impl PropositionReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }

    /// The check with the largest residual, if any.
    pub fn worst(&self) -> Option<&IdentityCheck> {
        self.checks
            .iter()
            .max_by(|a, b| a.residual.total_cmp(&b.residual))
    }
}

fn ensure_same_dims<T: AlgebraValue>(a: &T, b: &T) -> Result<(), GroupError> {
    let (da, db) = (a.matrix_dim().unwrap_or(1), b.matrix_dim().unwrap_or(1));
    if da != db {
        return Err(GroupError::ValueDimensionMismatch { left: da, right: db });
    }
    Ok(())
}

fn kind_mismatch() -> GroupError {
    GroupError::Unsupported(
        "value tables pair with finite groups, smooth functions with continuous ones"
            .into(),
    )
}

/// Haar integral of `f` over `g`: an exact weighted sum for finite groups,
/// tensor quadrature against the Haar density for continuous ones.
pub fn int_lambda<T: AlgebraValue>(
    f: &GroupFunction<T>,
    g: &GroupSpec,
) -> Result<GroupIntegral<T>, GroupError> {
    match (f, g) {
        (GroupFunction::Table(v), GroupSpec::Finite(fg)) => finite::integrate(v, fg),
        (GroupFunction::Smooth(s), _) => match g.geometry() {
            Some(geo) => continuous::integrate(s, &geo),
            None => Err(kind_mismatch()),
        },
        _ => Err(kind_mismatch()),
    }
}

/// Convolution `(F₁ ∗ F₂)(g) = ∫ F₁(g̃) · F₂(g̃⁻¹ g) dν(g̃)`.
pub fn convolve_star<T: AlgebraValue>(
    f1: &GroupFunction<T>,
    f2: &GroupFunction<T>,
    g: &GroupSpec,
) -> Result<GroupFunction<T>, GroupError> {
    match (f1, f2, g) {
        (GroupFunction::Table(a), GroupFunction::Table(b), GroupSpec::Finite(fg)) => {
            Ok(GroupFunction::Table(finite::convolve(a, b, fg)?))
        }
        (GroupFunction::Smooth(a), GroupFunction::Smooth(b), _) => match g.geometry() {
            Some(geo) => Ok(GroupFunction::Smooth(continuous::convolve(a, b, &geo)?)),
            None => Err(kind_mismatch()),
        },
        _ => Err(kind_mismatch()),
    }
}

/// The literal pairing `(F₁ ⋆ F₂)(g) = ∫ F₁(g̃ g) · F₂(g̃ g̃) dν(g̃)`, with the
/// squared integration variable in the second factor exactly as written.
/// This is not the algebra product: no associativity, norm, or adjoint laws
/// are claimed for it, and [`verify_propositions`] does not touch it.
pub fn convolve_star2<T: AlgebraValue>(
    f1: &GroupFunction<T>,
    f2: &GroupFunction<T>,
    g: &GroupSpec,
) -> Result<GroupFunction<T>, GroupError> {
    match (f1, f2, g) {
        (GroupFunction::Table(a), GroupFunction::Table(b), GroupSpec::Finite(fg)) => {
            Ok(GroupFunction::Table(finite::convolve2(a, b, fg)?))
        }
        (GroupFunction::Smooth(a), GroupFunction::Smooth(b), _) => match g.geometry() {
            Some(geo) => Ok(GroupFunction::Smooth(continuous::convolve2(a, b, &geo)?)),
            None => Err(kind_mismatch()),
        },
        _ => Err(kind_mismatch()),
    }
}

/// Involution `F^∗(g) = F(g⁻¹)^∗ · Δ(g⁻¹)`; applying it twice returns `F`.
pub fn involution<T: AlgebraValue>(
    f: &GroupFunction<T>,
    g: &GroupSpec,
) -> Result<GroupFunction<T>, GroupError> {
    match (f, g) {
        (GroupFunction::Table(v), GroupSpec::Finite(fg)) => {
            Ok(GroupFunction::Table(finite::involute(v, fg)?))
        }
        (GroupFunction::Smooth(s), _) => match g.geometry() {
            Some(geo) => Ok(GroupFunction::Smooth(continuous::involute(s, &geo)?)),
            None => Err(kind_mismatch()),
        },
        _ => Err(kind_mismatch()),
    }
}

/// Algebra norm `‖F‖ = ∫ ‖F(g)‖ dν(g)`.
pub fn norm_lambda<T: AlgebraValue>(
    f: &GroupFunction<T>,
    g: &GroupSpec,
) -> Result<f64, GroupError> {
    match (f, g) {
        (GroupFunction::Table(v), GroupSpec::Finite(fg)) => finite::norm(v, fg),
        (GroupFunction::Smooth(s), _) => match g.geometry() {
            Some(geo) => continuous::norm(s, &geo),
            None => Err(kind_mismatch()),
        },
        _ => Err(kind_mismatch()),
    }
}

/// Largest deviation of the left-translation identity
/// `∫ F(g₀ g) dν(g) = ∫ F(g) dν(g)` over the given shifts. For finite groups
/// translation permutes the table, so only summation roundoff remains; for
/// continuous groups this exercises the Haar density directly.
pub fn left_invariance_residual<T: AlgebraValue>(
    f: &GroupFunction<T>,
    g: &GroupSpec,
    shifts: &[GroupPoint],
) -> Result<f64, GroupError> {
    let base = int_lambda(f, g)?;
    let mut worst = 0.0f64;
    for shift in shifts {
        let translated = match (f, g, shift) {
            (GroupFunction::Table(v), GroupSpec::Finite(fg), GroupPoint::Element(s)) => {
                GroupFunction::Table(finite::translate(v, fg, *s)?)
            }
            (GroupFunction::Smooth(s), _, GroupPoint::Coords(g0)) => match g.geometry() {
                Some(geo) => {
                    GroupFunction::Smooth(continuous::translated(s, &geo, g0)?)
                }
                None => return Err(kind_mismatch()),
            },
            _ => return Err(kind_mismatch()),
        };
        let moved = int_lambda(&translated, g)?;
        worst = worst.max(moved.value.dist(&base.value));
    }
    Ok(worst)
}

/// Largest pointwise distance between two functions of the same kind:
/// exact table comparison for finite groups, a deterministic probe grid over
/// the union of the support boxes for continuous ones.
pub fn function_distance<T: AlgebraValue>(
    a: &GroupFunction<T>,
    b: &GroupFunction<T>,
) -> Result<f64, GroupError> {
    match (a, b) {
        (GroupFunction::Table(x), GroupFunction::Table(y)) => {
            if x.len() != y.len() {
                return Err(GroupError::FunctionLengthMismatch {
                    found: y.len(),
                    order: x.len(),
                });
            }
            Ok(x.iter()
                .zip(y)
                .map(|(u, v)| u.dist(v))
                .fold(0.0, f64::max))
        }
        (GroupFunction::Smooth(x), GroupFunction::Smooth(y)) => {
            if x.support().len() != y.support().len() {
                return Err(GroupError::Unsupported(
                    "support boxes have different dimension".into(),
                ));
            }
            let bbox: Vec<(f64, f64)> = x
                .support()
                .iter()
                .zip(y.support())
                .map(|(&(alo, ahi), &(blo, bhi))| (alo.min(blo), ahi.max(bhi)))
                .collect();
            Ok(continuous::probe_points(&bbox)
                .iter()
                .map(|p| x.eval(p).dist(&y.eval(p)))
                .fold(0.0, f64::max))
        }
        _ => Err(kind_mismatch()),
    }
}

/// Checks the five convolution-algebra identities on a fixture set (at least
/// three functions) and reports the worst residual for each. Identities:
/// norm-submultiplicative, convolution-associative, integral-multiplicative
/// (in the printed order `∫F₁ · ∫F₂`, which matters for matrix values),
/// integral-adjoint, and involution-reverses-convolution.
pub fn verify_propositions<T: AlgebraValue>(
    g: &GroupSpec,
    fixtures: &[GroupFunction<T>],
) -> Result<PropositionReport, GroupError> {
    if fixtures.len() < 3 {
        return Err(GroupError::Unsupported(format!(
            "identity checks need at least three fixtures, got {}",
            fixtures.len()
        )));
    }
    let tol = g.proposition_tolerance();

    let ints = fixtures
        .iter()
        .map(|f| int_lambda(f, g))
        .collect::<Result<Vec<_>, _>>()?;
    let norms = fixtures
        .iter()
        .map(|f| norm_lambda(f, g))
        .collect::<Result<Vec<_>, _>>()?;

    let mut submult = 0.0f64;
    let mut multiplicative = 0.0f64;
    let mut reversal = 0.0f64;
    for i in 0..fixtures.len() - 1 {
        let (f1, f2) = (&fixtures[i], &fixtures[i + 1]);
        let conv = convolve_star(f1, f2, g)?;
        submult = submult
            .max((norm_lambda(&conv, g)? - norms[i] * norms[i + 1]).max(0.0));
        multiplicative = multiplicative.max(
            int_lambda(&conv, g)?
                .value
                .dist(&ints[i].value.mul(&ints[i + 1].value)),
        );
        let lhs = convolve_star(&involution(f1, g)?, &involution(f2, g)?, g)?;
        let rhs = involution(&convolve_star(f2, f1, g)?, g)?;
        reversal = reversal.max(function_distance(&lhs, &rhs)?);
    }

    let mut associative = 0.0f64;
    for i in 0..fixtures.len() - 2 {
        let (f1, f2, f3) = (&fixtures[i], &fixtures[i + 1], &fixtures[i + 2]);
        let lhs = convolve_star(&convolve_star(f1, f2, g)?, f3, g)?;
        let rhs = convolve_star(f1, &convolve_star(f2, f3, g)?, g)?;
        associative = associative.max(function_distance(&lhs, &rhs)?);
    }

    let mut adjoint = 0.0f64;
    for (i, f) in fixtures.iter().enumerate() {
        adjoint = adjoint.max(
            int_lambda(&involution(f, g)?, g)?
                .value
                .dist(&ints[i].value.adjoint()),
        );
    }

    let check = |identity: &'static str, residual: f64| IdentityCheck {
        identity,
        residual,
        tolerance: tol,
        passed: residual <= tol,
    };
    Ok(PropositionReport {
        checks: vec![
            check("norm-submultiplicative", submult),
            check("convolution-associative", associative),
            check("integral-multiplicative", multiplicative),
            check("integral-adjoint", adjoint),
            check("involution-reverses-convolution", reversal),
        ],
    })
}
