//! Gauss quadrature rules via Golub–Welsch: eigendecompose the symmetric
//! Jacobi matrix of the orthogonal-polynomial recurrence; eigenvalues are
//! the nodes, squared first eigenvector components (times the weight-
//! function mass μ₀) are the weights.

use nalgebra::DMatrix;

use crate::error::QuadError;
use crate::special;
use num_complex::Complex64;

/// Nodes and weights of a 1-dim rule; `Σ w_k g(x_k) ≈ ∫ w(x) g(x) dx`.
#[derive(Debug, Clone)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

fn golub_welsch(diag: &[f64], offdiag: &[f64], mu0: f64) -> Rule {
    let n = diag.len();
    let mut j = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        j[(i, i)] = diag[i];
        if i + 1 < n {
            j[(i, i + 1)] = offdiag[i];
            j[(i + 1, i)] = offdiag[i];
        }
    }
    let eig = j.symmetric_eigen();
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let node = eig.eigenvalues[k];
            let w = mu0 * eig.eigenvectors[(0, k)] * eig.eigenvectors[(0, k)];
            (node, w)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    Rule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    }
}

/// Gauss–Legendre on [-1, 1], weight 1.
pub fn gauss_legendre(n: usize) -> Result<Rule, QuadError> {
    if n < 2 {
        return Err(QuadError::OrderTooSmall { order: n });
    }
    let diag = vec![0.0; n];
    let offdiag: Vec<f64> = (1..n)
        .map(|k| {
            let k = k as f64;
            k / (4.0 * k * k - 1.0).sqrt()
        })
        .collect();
    Ok(golub_welsch(&diag, &offdiag, 2.0))
}

/// Gauss–Hermite on ℝ, weight e^{-x²} (physicists' convention).
pub fn gauss_hermite(n: usize) -> Result<Rule, QuadError> {
    if n < 2 {
        return Err(QuadError::OrderTooSmall { order: n });
    }
    let diag = vec![0.0; n];
    let offdiag: Vec<f64> = (1..n).map(|k| (k as f64 / 2.0).sqrt()).collect();
    Ok(golub_welsch(&diag, &offdiag, std::f64::consts::PI.sqrt()))
}

/// Generalized Gauss–Laguerre on ℝ₊, weight x^a e^{-x}, a > -1.
pub fn gauss_laguerre(n: usize, a: f64) -> Result<Rule, QuadError> {
    if n < 2 {
        return Err(QuadError::OrderTooSmall { order: n });
    }
    assert!(a > -1.0, "Laguerre parameter must exceed -1, got {a}");
    let diag: Vec<f64> = (0..n).map(|k| 2.0 * k as f64 + a + 1.0).collect();
    let offdiag: Vec<f64> = (1..n).map(|k| (k as f64 * (k as f64 + a)).sqrt()).collect();
    let mu0 = special::gamma(Complex64::new(a + 1.0, 0.0)).re;
    Ok(golub_welsch(&diag, &offdiag, mu0))
}
