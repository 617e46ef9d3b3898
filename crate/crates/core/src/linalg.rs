//! Small dense complex linear-algebra helpers shared by the integrator
//! families: Hermitian validation, principal-branch determinant powers,
//! conditioning estimates, and Hermitian matrix exponentials.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::LinAlgError;

/// Max absolute entrywise deviation of `m` from its adjoint.
pub fn hermitian_deviation(m: &DMatrix<Complex64>) -> f64 {
    let adj = m.adjoint();
    (m - adj).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Max absolute entrywise deviation of `m` from `-mᵀ` (skew-symmetry).
pub fn skew_deviation(m: &DMatrix<f64>) -> f64 {
    let mt = m.transpose();
    (m + mt).iter().map(|x| x.abs()).fold(0.0, f64::max)
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &DMatrix<Complex64>) -> Vec<f64> {
    let mut ev: Vec<f64> = m.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev
}

/// 2-norm condition number of a Hermitian matrix (|λ|max / |λ|min).
pub fn hermitian_condition(m: &DMatrix<Complex64>) -> f64 {
    let ev = hermitian_eigenvalues(m);
    let amax = ev.iter().map(|x| x.abs()).fold(0.0, f64::max);
    let amin = ev.iter().map(|x| x.abs()).fold(f64::INFINITY, f64::min);
    if amin == 0.0 {
        f64::INFINITY
    } else {
        amax / amin
    }
}

/// `det(s·M)^p` for Hermitian positive-definite `M`, principal branch.
///
/// Evaluated as `exp(p·(d·Log s + Σ ln λ_i))` with real positive eigenvalues
/// `λ_i`, so the value varies continuously as `s` moves through the cut
/// plane. The empty matrix has determinant 1 by convention, so `d = 0`
/// returns 1 for any `s`.
pub fn det_power_scaled_hermitian(
    m: &DMatrix<Complex64>,
    s: Complex64,
    p: f64,
) -> Result<Complex64, LinAlgError> {
    let d = m.nrows();
    let mut log_det = Complex64::new(0.0, 0.0);
    if d > 0 {
        for lam in hermitian_eigenvalues(m) {
            if lam <= 0.0 {
                return Err(LinAlgError::NotPositiveDefinite { eigenvalue: lam });
            }
            log_det += Complex64::new(lam.ln(), 0.0);
        }
        log_det += Complex64::new(d as f64, 0.0) * s.ln();
    }
    Ok((log_det * p).exp())
}

/// Unconjugated bilinear form `vᵀ M v`.
pub fn bilinear_form(m: &DMatrix<Complex64>, v: &DVector<Complex64>) -> Complex64 {
    (v.transpose() * m * v)[(0, 0)]
}

/// Least-squares slope of `ys` against `xs`.
pub fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let num: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    num / den
}

/// `exp(c·H)` for Hermitian `H`, via eigendecomposition: `V e^{cΛ} V†`.
pub fn exp_hermitian_scaled(h: &DMatrix<Complex64>, c: Complex64) -> DMatrix<Complex64> {
    let eig = h.clone().symmetric_eigen();
    let d = h.nrows();
    let mut diag = DMatrix::<Complex64>::zeros(d, d);
    for i in 0..d {
        diag[(i, i)] = (c * eig.eigenvalues[i]).exp();
    }
    &eig.eigenvectors * diag * eig.eigenvectors.adjoint()
}

/// Operator 2-norm (largest singular value) of a complex matrix.
pub fn operator_norm(m: &DMatrix<Complex64>) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    let gram = m.adjoint() * m;
    let ev = hermitian_eigenvalues(&gram);
    ev.last().map(|x| x.max(0.0).sqrt()).unwrap_or(0.0)
}

/// Entrywise max-norm distance between two complex matrices.
pub fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn det_power_matches_direct_for_diagonal() {
        let m = DMatrix::from_diagonal(&DVector::from_vec(vec![c(2.0, 0.0), c(0.5, 0.0)]));
        let s = c(3.0, 1.0);
        // det(sM) = s² · 1, power 1/2 ⇒ s · 1
        let v = det_power_scaled_hermitian(&m, s, 0.5).unwrap();
        let expect = (s.ln() * 2.0 * 0.5).exp();
        assert!((v - expect).norm() < 1e-14);
    }

    #[test]
    fn det_power_continuous_across_quadrants() {
        // Walk s through arg ∈ (-80°, 80°); successive values must stay close.
        let m = DMatrix::from_diagonal(&DVector::from_vec(vec![c(1.3, 0.0), c(0.2, 0.0), c(4.0, 0.0)]));
        let mut prev: Option<C> = None;
        for k in 0..33 {
            let phi = -1.396 + 2.792 * (k as f64) / 32.0;
            let s = C::from_polar(2.0, phi);
            let v = det_power_scaled_hermitian(&m, s, 0.5).unwrap();
            if let Some(p) = prev {
                assert!((v - p).norm() < 0.2 * p.norm(), "branch jump at step {k}");
            }
            prev = Some(v);
        }
    }

    #[test]
    fn det_power_rejects_indefinite() {
        let m = DMatrix::from_diagonal(&DVector::from_vec(vec![c(1.0, 0.0), c(-0.5, 0.0)]));
        assert!(det_power_scaled_hermitian(&m, c(1.0, 0.0), 0.5).is_err());
    }

    #[test]
    fn exp_hermitian_is_unitary_for_imaginary_scale() {
        let h = DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.3, 0.4), c(0.3, -0.4), c(-0.7, 0.0)]);
        let u = exp_hermitian_scaled(&h, c(0.0, 1.25));
        let id = DMatrix::<C>::identity(2, 2);
        assert!(max_abs_diff(&(u.adjoint() * &u), &id) < 1e-14);
    }

    #[test]
    fn operator_norm_of_diag() {
        let m = DMatrix::from_diagonal(&DVector::from_vec(vec![c(0.0, -3.0), c(1.0, 0.0)]));
        assert!((operator_norm(&m) - 3.0).abs() < 1e-12);
    }
}
