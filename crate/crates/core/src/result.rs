//! Shared result type for every numeric backend.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// How a value was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Quadrature,
    MonteCarlo,
    Series,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Quadrature => "quadrature",
            Method::MonteCarlo => "monte_carlo",
            Method::Series => "series",
        }
    }
}

/// A computed integral (or series sum) with its error model.
///
/// `abs_error_estimate` is the backend's own estimate: order-halving
/// difference for quadrature, standard error for Monte Carlo, first
/// neglected term for series, and 0 for closed forms (roundoff only).
/// Monte Carlo results always carry the seed that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegralResult {
    pub value: Complex64,
    pub abs_error_estimate: f64,
    pub method: Method,
    /// Quadrature order, sample count, or series length — whichever applies.
    pub samples_or_order: u64,
    pub rng_seed: Option<u64>,
}

impl IntegralResult {
    pub fn closed_form(value: Complex64) -> Self {
        IntegralResult {
            value,
            abs_error_estimate: 0.0,
            method: Method::ClosedForm,
            samples_or_order: 0,
            rng_seed: None,
        }
    }
}
