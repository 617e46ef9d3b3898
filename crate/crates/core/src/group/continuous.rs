//! Continuous groups: the affine line and the translation group ℝⁿ.
//!
//! Functions here are smooth, compactly supported callables with an explicit
//! support box; evaluation outside the box returns zero, so every operation
//! may integrate over a conservative box without changing the result. All
//! integrals are tensor Gauss–Legendre quadrature against the group's left
//! Haar density. Output supports of convolutions, involutions, and
//! translations are the corner-product boxes of the input supports: the
//! product and inverse maps of both geometries are coordinatewise monotone on
//! boxes, so corner enumeration bounds them exactly.

use std::sync::Arc;

use crate::error::GroupError;
use crate::exec;
use crate::quad::nodes;

use super::{AlgebraValue, GroupIntegral};

/// Coordinate geometry of a continuous group.
#[derive(Clone, Debug, PartialEq)]
pub(super) enum Geometry {
    /// (a, b) ↦ x ↦ a·x + b with a > 0; left Haar a⁻² da db, Δ(a, b) = 1/a.
    Affine,
    /// (ℝⁿ, +) with Lebesgue measure; Δ ≡ 1.
    Real(usize),
}

impl Geometry {
    pub(super) fn dim(&self) -> usize {
        match self {
            Geometry::Affine => 2,
            Geometry::Real(d) => *d,
        }
    }

    /// Per-axis quadrature order: generous in one dimension, balanced for
    /// the 2-d affine plane, and restrained for 3-d tensor grids.
    fn order(&self) -> usize {
        match self.dim() {
            1 => 96,
            2 => 40,
            _ => 16,
        }
    }

    fn product(&self, g1: &[f64], g2: &[f64]) -> Vec<f64> {
        match self {
            Geometry::Affine => vec![g1[0] * g2[0], g1[0] * g2[1] + g1[1]],
            Geometry::Real(_) => g1.iter().zip(g2).map(|(x, y)| x + y).collect(),
        }
    }

    fn inverse(&self, g: &[f64]) -> Vec<f64> {
        match self {
            Geometry::Affine => vec![1.0 / g[0], -g[1] / g[0]],
            Geometry::Real(_) => g.iter().map(|x| -x).collect(),
        }
    }

    fn haar_density(&self, g: &[f64]) -> f64 {
        match self {
            Geometry::Affine => 1.0 / (g[0] * g[0]),
            Geometry::Real(_) => 1.0,
        }
    }

    /// Modular function Δ: the factor relating left and right translates of
    /// the Haar measure.
    fn modular(&self, g: &[f64]) -> f64 {
        match self {
            Geometry::Affine => 1.0 / g[0],
            Geometry::Real(_) => 1.0,
        }
    }

    fn contains(&self, g: &[f64]) -> bool {
        if g.len() != self.dim() || g.iter().any(|x| !x.is_finite()) {
            return false;
        }
        match self {
            Geometry::Affine => g[0] > 0.0,
            Geometry::Real(_) => true,
        }
    }

    /// Rejects support boxes that leave the group's coordinate domain.
    fn check_support(&self, support: &[(f64, f64)]) -> Result<(), GroupError> {
        if support.len() != self.dim() {
            return Err(GroupError::Unsupported(format!(
                "support box has {} axes but the group has dimension {}",
                support.len(),
                self.dim()
            )));
        }
        if let Geometry::Affine = self {
            let a_lo = support[0].0;
            if a_lo <= 0.0 {
                return Err(GroupError::BadSupport { a_lo });
            }
        }
        Ok(())
    }
}

/// Shared storage for a point-evaluated callable.
type PointFn<T> = Arc<dyn Fn(&[f64]) -> T + Send + Sync>;

/// Smooth compactly supported function: support box, zero prototype (fixes
/// matrix dimensions), and the callable. Evaluation is zero off the box.
pub struct SmoothFunction<T: AlgebraValue> {
    support: Vec<(f64, f64)>,
    zero: T,
    call: PointFn<T>,
}

impl<T: AlgebraValue> Clone for SmoothFunction<T> {
    fn clone(&self) -> Self {
        SmoothFunction {
            support: self.support.clone(),
            zero: self.zero.clone(),
            call: Arc::clone(&self.call),
        }
    }
}

impl<T: AlgebraValue> std::fmt::Debug for SmoothFunction<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SmoothFunction")
            .field("support", &self.support)
            .finish_non_exhaustive()
    }
}

impl<T: AlgebraValue> SmoothFunction<T> {
    pub(super) fn new<F>(support: Vec<(f64, f64)>, zero: T, call: F) -> Self
    where
        F: Fn(&[f64]) -> T + Send + Sync + 'static,
    {
        SmoothFunction { support, zero, call: Arc::new(call) }
    }

    fn from_arc(support: Vec<(f64, f64)>, zero: T, call: PointFn<T>) -> Self {
        SmoothFunction { support, zero, call }
    }

    pub fn support(&self) -> &[(f64, f64)] {
        &self.support
    }

    /// Value at `x`; exactly zero outside the support box (NaN coordinates
    /// count as outside).
    pub fn eval(&self, x: &[f64]) -> T {
        if x.len() != self.support.len() {
            return self.zero.clone();
        }
        for (v, (lo, hi)) in x.iter().zip(&self.support) {
            if !(*v >= *lo && *v <= *hi) {
                return self.zero.clone();
            }
        }
        (self.call)(x)
    }
}

/// The 2^d corners of a box.
fn corners(bbox: &[(f64, f64)]) -> Vec<Vec<f64>> {
    let d = bbox.len();
    (0..1usize << d)
        .map(|mask| {
            (0..d)
                .map(|k| if mask >> k & 1 == 1 { bbox[k].1 } else { bbox[k].0 })
                .collect()
        })
        .collect()
}

/// Degenerate box holding a single point.
fn point_box(x: &[f64]) -> Vec<(f64, f64)> {
    x.iter().map(|&v| (v, v)).collect()
}

/// Bounding box of {g₁·g₂ : g₁ ∈ b₁, g₂ ∈ b₂}. Exact for both geometries:
/// each product coordinate is monotone in every input coordinate, so the
/// extremes sit on corner pairs.
fn product_box(geo: &Geometry, b1: &[(f64, f64)], b2: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut out = vec![(f64::INFINITY, f64::NEG_INFINITY); b1.len()];
    for c1 in corners(b1) {
        for c2 in corners(b2) {
            let p = geo.product(&c1, &c2);
            for (slot, v) in out.iter_mut().zip(&p) {
                slot.0 = slot.0.min(*v);
                slot.1 = slot.1.max(*v);
            }
        }
    }
    out
}

/// Bounding box of {g⁻¹ : g ∈ b}; corner enumeration is exact here too.
fn inverse_box(geo: &Geometry, bbox: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut out = vec![(f64::INFINITY, f64::NEG_INFINITY); bbox.len()];
    for c in corners(bbox) {
        let p = geo.inverse(&c);
        for (slot, v) in out.iter_mut().zip(&p) {
            slot.0 = slot.0.min(*v);
            slot.1 = slot.1.max(*v);
        }
    }
    out
}

/// Box of all g̃ whose square g̃·g̃ can land in `bbox`; a superset is fine
/// because the integrand vanishes where the square misses the box.
fn square_root_box(geo: &Geometry, bbox: &[(f64, f64)]) -> Vec<(f64, f64)> {
    match geo {
        Geometry::Real(_) => bbox.iter().map(|&(lo, hi)| (0.5 * lo, 0.5 * hi)).collect(),
        Geometry::Affine => {
            // (a, b)² = (a², b(a + 1)), so a ∈ [√a_lo, √a_hi] and b ranges
            // over the union of [b_lo, b_hi]/(a + 1) for those a.
            let (a_lo, a_hi) = bbox[0];
            let (sa_lo, sa_hi) = (a_lo.max(0.0).sqrt(), a_hi.max(0.0).sqrt());
            let (p, q) = (1.0 + sa_lo, 1.0 + sa_hi);
            let (b_lo, b_hi) = bbox[1];
            vec![
                (sa_lo, sa_hi),
                ((b_lo / p).min(b_lo / q), (b_hi / p).max(b_hi / q)),
            ]
        }
    }
}

/// Probe grid for comparing two functions: the box center, the corners
/// shrunk 55% toward the center, and one 25%-shrunk corner so symmetric
/// errors cannot cancel silently.
pub(super) fn probe_points(bbox: &[(f64, f64)]) -> Vec<Vec<f64>> {
    let center: Vec<f64> = bbox.iter().map(|&(lo, hi)| 0.5 * (lo + hi)).collect();
    let mut points = vec![center.clone()];
    for corner in corners(bbox) {
        points.push(
            center
                .iter()
                .zip(&corner)
                .map(|(c, x)| c + 0.55 * (x - c))
                .collect(),
        );
    }
    let first = corners(bbox).swap_remove(0);
    points.push(
        center
            .iter()
            .zip(&first)
            .map(|(c, x)| c + 0.25 * (x - c))
            .collect(),
    );
    points
}

/// Mapped tensor-product Gauss–Legendre rule over a box.
struct TensorRule {
    points: Vec<Vec<f64>>,
    weights: Vec<f64>,
}

fn tensor_rule(bbox: &[(f64, f64)], order: usize) -> Result<TensorRule, GroupError> {
    let base = nodes::gauss_legendre(order)?;
    let axes: Vec<(Vec<f64>, Vec<f64>)> = bbox
        .iter()
        .map(|&(lo, hi)| {
            let mid = 0.5 * (lo + hi);
            let half = 0.5 * (hi - lo);
            (
                base.nodes.iter().map(|t| mid + half * t).collect(),
                base.weights.iter().map(|w| half * w).collect(),
            )
        })
        .collect();
    let dim = bbox.len();
    let total = order.pow(dim as u32);
    let mut points = Vec::with_capacity(total);
    let mut weights = Vec::with_capacity(total);
    for flat in 0..total {
        let mut rest = flat;
        let mut point = Vec::with_capacity(dim);
        let mut weight = 1.0;
        for (nodes_k, weights_k) in &axes {
            let idx = rest % order;
            rest /= order;
            point.push(nodes_k[idx]);
            weight *= weights_k[idx];
        }
        points.push(point);
        weights.push(weight);
    }
    Ok(TensorRule { points, weights })
}

/// Weighted sum of `f` over a rule; evaluation order is fixed by index, so
/// the result is identical under sequential and parallel execution.
fn weighted_sum<T, F>(rule: &TensorRule, zero: &T, f: F) -> T
where
    T: AlgebraValue,
    F: Fn(&[f64]) -> T + Send + Sync,
{
    let terms = exec::map_indexed(rule.points.len(), |k| {
        f(&rule.points[k]).scale(rule.weights[k])
    });
    terms.iter().fold(zero.clone(), |acc, t| acc.add(t))
}

fn haar_sum<T: AlgebraValue>(
    f: &SmoothFunction<T>,
    geo: &Geometry,
    order: usize,
) -> Result<T, GroupError> {
    let rule = tensor_rule(&f.support, order)?;
    let geo = geo.clone();
    Ok(weighted_sum(&rule, &f.zero, |x| {
        f.eval(x).scale(geo.haar_density(x))
    }))
}

/// Haar integral with a refinement-difference error estimate.
pub(super) fn integrate<T: AlgebraValue>(
    f: &SmoothFunction<T>,
    geo: &Geometry,
) -> Result<GroupIntegral<T>, GroupError> {
    geo.check_support(&f.support)?;
    let order = geo.order();
    let value = haar_sum(f, geo, order)?;
    let coarse = haar_sum(f, geo, (order / 2).max(2))?;
    let abs_error_estimate = value.dist(&coarse) + 1e-13 * (1.0 + value.norm());
    Ok(GroupIntegral { value, abs_error_estimate })
}

/// `‖F‖ = ∫ ‖F(g)‖ dν(g)` by the same quadrature as [`integrate`].
pub(super) fn norm<T: AlgebraValue>(
    f: &SmoothFunction<T>,
    geo: &Geometry,
) -> Result<f64, GroupError> {
    geo.check_support(&f.support)?;
    let rule = tensor_rule(&f.support, geo.order())?;
    let terms = exec::map_indexed(rule.points.len(), |k| {
        let x = &rule.points[k];
        rule.weights[k] * geo.haar_density(x) * f.eval(x).norm()
    });
    Ok(exec::pairwise_sum_f64(&terms))
}

fn ensure_value_dims<T: AlgebraValue>(a: &T, b: &T) -> Result<(), GroupError> {
    let (da, db) = (a.matrix_dim().unwrap_or(1), b.matrix_dim().unwrap_or(1));
    if da != db {
        return Err(GroupError::ValueDimensionMismatch { left: da, right: db });
    }
    Ok(())
}

/// `(F₁ ∗ F₂)(g) = ∫ F₁(g̃) · F₂(g̃⁻¹ g) dν(g̃)`, integrating over the first
/// factor's support. The result is returned lazily: each evaluation runs one
/// quadrature pass over a rule precomputed here.
pub(super) fn convolve<T: AlgebraValue>(
    f1: &SmoothFunction<T>,
    f2: &SmoothFunction<T>,
    geo: &Geometry,
) -> Result<SmoothFunction<T>, GroupError> {
    geo.check_support(&f1.support)?;
    geo.check_support(&f2.support)?;
    ensure_value_dims(&f1.zero, &f2.zero)?;
    let support = product_box(geo, &f1.support, &f2.support);
    let rule = tensor_rule(&f1.support, geo.order())?;
    let (f1, f2, geo) = (f1.clone(), f2.clone(), geo.clone());
    let zero = f1.zero.clone();
    let call = move |g: &[f64]| -> T {
        if !geo.contains(g) {
            return f1.zero.clone();
        }
        weighted_sum(&rule, &f1.zero, |p| {
            let shifted = geo.product(&geo.inverse(p), g);
            f1.eval(p)
                .mul(&f2.eval(&shifted))
                .scale(geo.haar_density(p))
        })
    };
    Ok(SmoothFunction::from_arc(support, zero, Arc::new(call)))
}

/// `(F₁ ⋆ F₂)(g) = ∫ F₁(g̃ g) · F₂(g̃ g̃) dν(g̃)` with the squared argument as
/// written; the integration box is where the square can meet F₂'s support.
pub(super) fn convolve2<T: AlgebraValue>(
    f1: &SmoothFunction<T>,
    f2: &SmoothFunction<T>,
    geo: &Geometry,
) -> Result<SmoothFunction<T>, GroupError> {
    geo.check_support(&f1.support)?;
    geo.check_support(&f2.support)?;
    ensure_value_dims(&f1.zero, &f2.zero)?;
    let tilde_box = square_root_box(geo, &f2.support);
    let support = product_box(geo, &inverse_box(geo, &tilde_box), &f1.support);
    let rule = tensor_rule(&tilde_box, geo.order())?;
    let (f1, f2, geo) = (f1.clone(), f2.clone(), geo.clone());
    let zero = f1.zero.clone();
    let call = move |g: &[f64]| -> T {
        if !geo.contains(g) {
            return f1.zero.clone();
        }
        weighted_sum(&rule, &f1.zero, |p| {
            f1.eval(&geo.product(p, g))
                .mul(&f2.eval(&geo.product(p, p)))
                .scale(geo.haar_density(p))
        })
    };
    Ok(SmoothFunction::from_arc(support, zero, Arc::new(call)))
}

/// `F^∗(g) = F(g⁻¹)^∗ · Δ(g⁻¹)`.
pub(super) fn involute<T: AlgebraValue>(
    f: &SmoothFunction<T>,
    geo: &Geometry,
) -> Result<SmoothFunction<T>, GroupError> {
    geo.check_support(&f.support)?;
    let support = inverse_box(geo, &f.support);
    let (f, geo) = (f.clone(), geo.clone());
    let zero = f.zero.clone();
    let call = move |g: &[f64]| -> T {
        if !geo.contains(g) {
            return f.zero.clone();
        }
        let gi = geo.inverse(g);
        f.eval(&gi).adjoint().scale(geo.modular(&gi))
    };
    Ok(SmoothFunction::from_arc(support, zero, Arc::new(call)))
}

/// Left translate `g ↦ F(g₀ · g)`; its integral must match `F`'s by left
/// invariance of the Haar measure.
pub(super) fn translated<T: AlgebraValue>(
    f: &SmoothFunction<T>,
    geo: &Geometry,
    g0: &[f64],
) -> Result<SmoothFunction<T>, GroupError> {
    geo.check_support(&f.support)?;
    if !geo.contains(g0) {
        return Err(GroupError::Unsupported(format!(
            "shift {g0:?} lies outside the group domain"
        )));
    }
    let support = product_box(geo, &point_box(&geo.inverse(g0)), &f.support);
    let (f, geo) = (f.clone(), geo.clone());
    let g0 = g0.to_vec();
    let zero = f.zero.clone();
    let call = move |g: &[f64]| -> T { f.eval(&geo.product(&g0, g)) };
    Ok(SmoothFunction::from_arc(support, zero, Arc::new(call)))
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use num_complex::Complex64;

    use crate::error::GroupError;
    use crate::group::{
        convolve_star, convolve_star2, int_lambda, involution,
        left_invariance_residual, norm_lambda, verify_propositions, GroupFunction,
        GroupPoint, GroupSpec,
    };
    use crate::quad::nodes;

    use super::{probe_points, Geometry};

    fn z(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// C^∞ window supported on (0, 1), peak-normalized to 1 so fixture
    /// norms stay well above the identity tolerances.
    fn bump01(t: f64) -> f64 {
        if t <= 0.0 || t >= 1.0 {
            0.0
        } else {
            (4.0 - 1.0 / (t * (1.0 - t))).exp()
        }
    }

    fn window(x: f64, lo: f64, hi: f64) -> f64 {
        bump01((x - lo) / (hi - lo))
    }

    /// Complex-amplitude bump on the affine plane with a phase twist in b.
    fn affine_bump(
        abox: (f64, f64),
        bbox: (f64, f64),
        amp: Complex64,
        phase: f64,
    ) -> GroupFunction<Complex64> {
        GroupFunction::smooth(vec![abox, bbox], z(0.0, 0.0), move |x| {
            let w = window(x[0], abox.0, abox.1) * window(x[1], bbox.0, bbox.1);
            amp * z(0.0, phase * x[1]).exp() * w
        })
        .unwrap()
    }

    fn gaussian_density(sigma: f64, halfwidth_sigmas: f64) -> GroupFunction<Complex64> {
        let half = halfwidth_sigmas * sigma;
        GroupFunction::smooth(vec![(-half, half)], z(0.0, 0.0), move |x| {
            z(
                (-x[0] * x[0] / (2.0 * sigma * sigma)).exp()
                    / (sigma * (2.0 * PI).sqrt()),
                0.0,
            )
        })
        .unwrap()
    }

    #[test]
    fn gaussian_density_has_unit_mass_and_norm() {
        let g = GroupSpec::real_line(1).unwrap();
        let f = gaussian_density(1.0, 8.0);
        let integral = int_lambda(&f, &g).unwrap();
        assert!((integral.value - z(1.0, 0.0)).norm() < 1e-9);
        assert!(
            (integral.value - z(1.0, 0.0)).norm()
                <= integral.abs_error_estimate + 1e-9,
            "estimate {} vs actual {}",
            integral.abs_error_estimate,
            (integral.value - z(1.0, 0.0)).norm()
        );
        assert!((norm_lambda(&f, &g).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn gaussian_convolution_adds_variances() {
        let g = GroupSpec::real_line(1).unwrap();
        let (s1, s2) = (0.6, 0.8);
        let conv = convolve_star(&gaussian_density(s1, 8.0), &gaussian_density(s2, 8.0), &g)
            .unwrap();
        let s = (s1 * s1 + s2 * s2).sqrt();
        for x in [0.0, 0.35, -0.9, 1.6] {
            let want = (-x * x / (2.0 * s * s)).exp() / (s * (2.0 * PI).sqrt());
            let got = conv.value_at(&GroupPoint::Coords(vec![x])).unwrap();
            assert!(
                (got - z(want, 0.0)).norm() < 1e-8,
                "at {x}: got {got}, want {want}"
            );
        }
    }

    #[test]
    fn squared_argument_pairing_matches_closed_form_on_the_line() {
        // For F₁ = F₂ = e^{−x²/2}: ∫ F₁(u+g) F₂(2u) du = √(2π/5)·e^{−2g²/5}.
        let g = GroupSpec::real_line(1).unwrap();
        let f = GroupFunction::smooth(vec![(-8.0, 8.0)], z(0.0, 0.0), |x: &[f64]| {
            z((-x[0] * x[0] / 2.0).exp(), 0.0)
        })
        .unwrap();
        let star = convolve_star2(&f, &f, &g).unwrap();
        for x in [0.0f64, 0.6, -1.1] {
            let want = (2.0 * PI / 5.0).sqrt() * (-2.0 * x * x / 5.0).exp();
            let got = star.value_at(&GroupPoint::Coords(vec![x])).unwrap();
            assert!(
                (got - z(want, 0.0)).norm() < 1e-8,
                "at {x}: got {got}, want {want}"
            );
        }
    }

    #[test]
    fn affine_bump_normalized_by_independent_quadrature_has_unit_mass() {
        let g = GroupSpec::affine_line();
        let (abox, bbox) = ((0.5, 2.5), (-1.0, 1.0));
        // Reference mass from a directly coded quadrature at a different
        // order than the operations use.
        let rule = nodes::gauss_legendre(96).unwrap();
        let map = |t: f64, lo: f64, hi: f64| 0.5 * (lo + hi) + 0.5 * (hi - lo) * t;
        let mut mass = 0.0;
        for (ta, wa) in rule.nodes.iter().zip(&rule.weights) {
            let a = map(*ta, abox.0, abox.1);
            for (tb, wb) in rule.nodes.iter().zip(&rule.weights) {
                let b = map(*tb, bbox.0, bbox.1);
                mass += wa * wb * 0.25 * (abox.1 - abox.0) * (bbox.1 - bbox.0)
                    * window(a, abox.0, abox.1)
                    * window(b, bbox.0, bbox.1)
                    / (a * a);
            }
        }
        let f = GroupFunction::smooth(
            vec![abox, bbox],
            z(0.0, 0.0),
            move |x: &[f64]| {
                z(
                    window(x[0], abox.0, abox.1) * window(x[1], bbox.0, bbox.1) / mass,
                    0.0,
                )
            },
        )
        .unwrap();
        let integral = int_lambda(&f, &g).unwrap();
        assert!(
            (integral.value - z(1.0, 0.0)).norm() < 1e-6,
            "mass {}",
            integral.value
        );
        assert!(integral.abs_error_estimate < 1e-3);
    }

    #[test]
    fn affine_involution_preserves_the_norm() {
        let g = GroupSpec::affine_line();
        let f = affine_bump((0.7, 1.6), (-0.6, 0.6), z(1.0, 0.5), 0.7);
        let inv = involution(&f, &g).unwrap();
        let (n, ni) = (norm_lambda(&f, &g).unwrap(), norm_lambda(&inv, &g).unwrap());
        assert!(n > 1e-2, "fixture should not be trivial, norm {n}");
        assert!((n - ni).abs() <= 1e-6, "norms {n} vs {ni}");
    }

    #[test]
    fn affine_double_involution_restores_values() {
        let g = GroupSpec::affine_line();
        let f = affine_bump((0.7, 1.6), (-0.6, 0.6), z(0.9, -0.4), 1.1);
        let twice = involution(&involution(&f, &g).unwrap(), &g).unwrap();
        for p in probe_points(f.support().unwrap()) {
            let orig = f.value_at(&GroupPoint::Coords(p.clone())).unwrap();
            let back = twice.value_at(&GroupPoint::Coords(p)).unwrap();
            assert!((orig - back).norm() < 1e-12);
        }
    }

    #[test]
    fn affine_identities_hold_within_quadrature_error() {
        let g = GroupSpec::affine_line();
        let fixtures = vec![
            affine_bump((0.7, 1.6), (-0.6, 0.6), z(1.0, 0.3), 0.7),
            affine_bump((0.6, 1.4), (-0.4, 0.7), z(0.8, -0.6), -0.4),
            affine_bump((0.8, 1.7), (-0.7, 0.3), z(-0.5, 0.9), 1.2),
        ];
        let report = verify_propositions(&g, &fixtures).unwrap();
        assert!(report.all_passed(), "worst: {:?}", report.worst());
        for check in &report.checks {
            assert!(
                check.residual <= 1e-6,
                "{} residual {}",
                check.identity,
                check.residual
            );
        }
    }

    #[test]
    fn line_identities_hold_within_quadrature_error() {
        let g = GroupSpec::real_line(1).unwrap();
        let fixtures = vec![
            gaussian_density(0.8, 6.0),
            gaussian_density(1.0, 6.0),
            gaussian_density(1.25, 6.0),
        ];
        let report = verify_propositions(&g, &fixtures).unwrap();
        assert!(report.all_passed(), "worst: {:?}", report.worst());
        let multiplicative = report
            .checks
            .iter()
            .find(|c| c.identity == "integral-multiplicative")
            .unwrap();
        assert!(multiplicative.residual <= 1e-8);
    }

    #[test]
    fn left_translation_preserves_the_affine_integral() {
        let g = GroupSpec::affine_line();
        let f = affine_bump((0.7, 1.6), (-0.6, 0.6), z(1.0, 0.2), 0.5);
        let shifts = vec![
            GroupPoint::Coords(vec![2.0, 0.3]),
            GroupPoint::Coords(vec![0.7, -1.1]),
            GroupPoint::Coords(vec![1.5, 2.0]),
        ];
        let residual = left_invariance_residual(&f, &g, &shifts).unwrap();
        assert!(residual <= 1e-6, "residual {residual}");
    }

    #[test]
    fn left_translation_preserves_the_line_integral() {
        let g = GroupSpec::real_line(1).unwrap();
        let f = gaussian_density(1.0, 8.0);
        let shifts = vec![
            GroupPoint::Coords(vec![1.3]),
            GroupPoint::Coords(vec![-2.2]),
        ];
        let residual = left_invariance_residual(&f, &g, &shifts).unwrap();
        assert!(residual <= 1e-9, "residual {residual}");
    }

    #[test]
    fn zero_function_convolves_and_pairs_to_zero() {
        let g = GroupSpec::affine_line();
        let zero_fn = GroupFunction::smooth(
            vec![(0.5, 2.0), (-1.0, 1.0)],
            z(0.0, 0.0),
            |_: &[f64]| z(0.0, 0.0),
        )
        .unwrap();
        let f = affine_bump((0.7, 1.6), (-0.6, 0.6), z(1.0, 0.0), 0.3);
        for result in [
            convolve_star(&zero_fn, &f, &g).unwrap(),
            convolve_star2(&zero_fn, &f, &g).unwrap(),
        ] {
            for p in probe_points(result.support().unwrap()) {
                assert_eq!(
                    result.value_at(&GroupPoint::Coords(p)).unwrap(),
                    z(0.0, 0.0)
                );
            }
        }
        assert_eq!(norm_lambda(&zero_fn, &g).unwrap(), 0.0);
    }

    #[test]
    fn continuous_norm_is_homogeneous() {
        let g = GroupSpec::affine_line();
        let f = affine_bump((0.7, 1.6), (-0.6, 0.6), z(1.0, 0.4), 0.6);
        let tripled = affine_bump((0.7, 1.6), (-0.6, 0.6), z(3.0, 1.2), 0.6);
        let (n, n3) = (norm_lambda(&f, &g).unwrap(), norm_lambda(&tripled, &g).unwrap());
        assert!((n3 - 3.0 * n).abs() <= 1e-13 * n3.max(1.0));
    }

    #[test]
    fn support_guards_reject_domain_violations() {
        let g = GroupSpec::affine_line();
        let bad = GroupFunction::smooth(
            vec![(-0.5, 2.0), (-1.0, 1.0)],
            z(0.0, 0.0),
            |_: &[f64]| z(0.0, 0.0),
        )
        .unwrap();
        assert!(matches!(
            int_lambda(&bad, &g),
            Err(GroupError::BadSupport { a_lo }) if a_lo == -0.5
        ));
        let touching = GroupFunction::smooth(
            vec![(0.0, 2.0), (-1.0, 1.0)],
            z(0.0, 0.0),
            |_: &[f64]| z(0.0, 0.0),
        )
        .unwrap();
        assert!(matches!(
            norm_lambda(&touching, &g),
            Err(GroupError::BadSupport { .. })
        ));

        let one_axis = GroupFunction::smooth(
            vec![(0.5, 2.0)],
            z(0.0, 0.0),
            |_: &[f64]| z(0.0, 0.0),
        )
        .unwrap();
        assert!(matches!(int_lambda(&one_axis, &g), Err(GroupError::Unsupported(_))));

        let finite = GroupSpec::cyclic(3).unwrap();
        assert!(matches!(int_lambda(&one_axis, &finite), Err(GroupError::Unsupported(_))));

        assert!(GroupSpec::real_line(0).is_err());
        assert!(GroupSpec::real_line(4).is_err());

        // Shifts outside the group domain are rejected.
        let f = affine_bump((0.7, 1.6), (-0.6, 0.6), z(1.0, 0.0), 0.0);
        assert!(matches!(
            left_invariance_residual(
                &f,
                &g,
                &[GroupPoint::Coords(vec![-1.0, 0.0])]
            ),
            Err(GroupError::Unsupported(_))
        ));
    }

    #[test]
    fn smooth_constructor_validates_inputs() {
        assert!(GroupFunction::<Complex64>::smooth(
            vec![],
            z(0.0, 0.0),
            |_: &[f64]| z(0.0, 0.0)
        )
        .is_err());
        assert!(GroupFunction::<Complex64>::smooth(
            vec![(1.0, 1.0)],
            z(0.0, 0.0),
            |_: &[f64]| z(0.0, 0.0)
        )
        .is_err());
        assert!(GroupFunction::<Complex64>::smooth(
            vec![(0.0, 1.0)],
            z(1.0, 0.0),
            |_: &[f64]| z(0.0, 0.0)
        )
        .is_err());
        assert!(GroupFunction::<Complex64>::smooth(
            vec![(0.0, 1.0)],
            z(0.0, 0.0),
            |_: &[f64]| z(f64::NAN, 0.0)
        )
        .is_err());

        let f = gaussian_density(1.0, 8.0);
        assert!(f.value_at(&GroupPoint::Coords(vec![0.0, 0.0])).is_err());
        assert!(f.value_at(&GroupPoint::Element(0)).is_err());
        // Outside the support box the value is exactly zero.
        assert_eq!(
            f.value_at(&GroupPoint::Coords(vec![9.0])).unwrap(),
            z(0.0, 0.0)
        );
    }

    #[test]
    fn geometry_maps_are_mutually_inverse() {
        let geo = Geometry::Affine;
        let g = vec![1.7, -0.4];
        let gi = geo.inverse(&g);
        let e = geo.product(&g, &gi);
        assert!((e[0] - 1.0).abs() < 1e-14 && e[1].abs() < 1e-14);
        // Δ is a homomorphism: Δ(g·h) = Δ(g)·Δ(h).
        let h = vec![0.6, 1.1];
        let gh = geo.product(&g, &h);
        assert!(
            (geo.modular(&gh) - geo.modular(&g) * geo.modular(&h)).abs() < 1e-14
        );
    }
}
