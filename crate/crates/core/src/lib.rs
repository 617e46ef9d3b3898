//! fint-core: a numerical engine for families of finite-dimensional
//! integrals obtained by time-slicing paths.
//!
//! The crate realizes four integrator families over projected coordinates —
//! Gaussian, symplectic (skew/Pfaffian), gamma, and Poisson — together with
//! the slicing machinery (grids, paths, projections), deterministic
//! quadrature and Monte Carlo backends, a group-algebra layer with Haar
//! integration, and a self-verification report covering every headline
//! numeric claim.
//!
//! Heavy node/sample loops run on rayon when the default `parallel` feature
//! is enabled and fall back to sequential loops otherwise; results are
//! bit-identical either way (see [`exec`]).

pub mod error;
pub mod exec;
pub mod gamma_poisson;
pub mod gaussian;
pub mod group;
pub mod linalg;
pub mod quad;
pub mod report;
pub mod result;
pub mod slicing;
pub mod special;
pub mod symplectic;
pub mod tolerances;

pub use result::{IntegralResult, Method};
