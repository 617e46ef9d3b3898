//! Time grids, paths, and the projections that slice a path into a finite
//! coordinate vector.
//!
//! A grid holds strictly increasing sample times in `(t_a, t_b]`; `t_a`
//! itself is never a sample because every path is pinned there (the
//! basepoint). Projecting a path evaluates it at the grid times and lays the
//! components out time-major. Coarsening between nested grids is a pure
//! selection map, so composing a fine projection with a coarsening yields
//! the coarse projection *bit-for-bit* — that exactness is the consistency
//! contract the rest of the crate relies on, and it is what the property
//! tests pin down.
//!
//! JSON round-trips encode times as decimal strings (`"0.25"`), not JSON
//! numbers, so a fixture re-read on any platform reproduces the same f64
//! bits.

use nalgebra::DVector;
use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{CoarsenError, GridError, PathError};

fn serialize_time<S: Serializer>(t: &f64, s: S) -> Result<S::Ok, S::Error> {
    // {:?} prints the shortest string that parses back to the same bits.
    s.serialize_str(&format!("{t:?}"))
}

fn deserialize_time<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    let s = String::deserialize(d)?;
    s.trim().parse::<f64>().map_err(D::Error::custom)
}

fn serialize_times<S: Serializer>(ts: &[f64], s: S) -> Result<S::Ok, S::Error> {
    let strings: Vec<String> = ts.iter().map(|t| format!("{t:?}")).collect();
    strings.serialize(s)
}

fn deserialize_times<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<f64>, D::Error> {
    let strings: Vec<String> = Vec::deserialize(d)?;
    strings
        .iter()
        .map(|s| s.trim().parse::<f64>().map_err(D::Error::custom))
        .collect()
}

/// Strictly increasing sample times in `(t_a, t_b]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    #[serde(serialize_with = "serialize_time", deserialize_with = "deserialize_time")]
    pub t_a: f64,
    #[serde(serialize_with = "serialize_time", deserialize_with = "deserialize_time")]
    pub t_b: f64,
    #[serde(serialize_with = "serialize_times", deserialize_with = "deserialize_times")]
    pub points: Vec<f64>,
}

impl TimeGrid {
    pub fn new(t_a: f64, t_b: f64, points: Vec<f64>) -> Result<Self, GridError> {
        for &v in [t_a, t_b].iter().chain(points.iter()) {
            if !v.is_finite() {
                return Err(GridError::NotFinite { value: v });
            }
        }
        if !(t_b > t_a) {
            return Err(GridError::EmptyInterval { t_a, t_b });
        }
        if points.is_empty() {
            return Err(GridError::Empty);
        }
        let mut prev = t_a;
        for (i, &p) in points.iter().enumerate() {
            if p <= t_a || p > t_b {
                return Err(GridError::OutOfRange { value: p, t_a, t_b });
            }
            if i > 0 && p <= prev {
                return Err(GridError::NotIncreasing { index: i, value: p });
            }
            prev = p;
        }
        Ok(TimeGrid { t_a, t_b, points })
    }

    /// Uniform grid whose last point is `t_b` (n slices of width (t_b-t_a)/n).
    pub fn uniform(t_a: f64, t_b: f64, n: usize) -> Result<Self, GridError> {
        if n == 0 {
            return Err(GridError::Empty);
        }
        let dt = (t_b - t_a) / n as f64;
        // The final point is pinned to t_b itself: `t_a + dt·n` can miss
        // it by an ulp, and `ends_at_tb` promises bitwise coincidence.
        let points = (1..=n)
            .map(|i| if i == n { t_b } else { t_a + dt * i as f64 })
            .collect();
        TimeGrid::new(t_a, t_b, points)
    }

    /// Uniform interior grid: n points strictly inside (t_a, t_b), leaving a
    /// closing slice before t_b. This is the natural layout for operators
    /// with both endpoints pinned.
    pub fn uniform_interior(t_a: f64, t_b: f64, n: usize) -> Result<Self, GridError> {
        if n == 0 {
            return Err(GridError::Empty);
        }
        let dt = (t_b - t_a) / (n + 1) as f64;
        let points = (1..=n).map(|i| t_a + dt * i as f64).collect();
        TimeGrid::new(t_a, t_b, points)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Slice widths Δt_i = t_i - t_{i-1} with t_0 = t_a.
    pub fn slice_widths(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.points.len());
        let mut prev = self.t_a;
        for &p in &self.points {
            out.push(p - prev);
            prev = p;
        }
        out
    }

    /// True when all slice widths agree to within a relative 1e-12.
    pub fn is_uniform(&self) -> bool {
        let w = self.slice_widths();
        let first = w[0];
        w.iter().all(|&x| (x - first).abs() <= 1e-12 * first.abs())
    }

    /// Whether the final point coincides exactly with t_b.
    pub fn ends_at_tb(&self) -> bool {
        self.points.last() == Some(&self.t_b)
    }
}

/// Interpolation rule between path knots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Interpolation {
    PiecewiseLinear,
    PiecewiseConstant,
}

fn serialize_values<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
    let pairs: Vec<[f64; 2]> = v.iter().map(|z| [z.re, z.im]).collect();
    pairs.serialize(s)
}

fn deserialize_values<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
    let pairs: Vec<[f64; 2]> = Vec::deserialize(d)?;
    Ok(pairs.iter().map(|p| Complex64::new(p[0], p[1])).collect())
}

/// A single path knot: a time and an m-component complex value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Knot {
    #[serde(serialize_with = "serialize_time", deserialize_with = "deserialize_time")]
    pub t: f64,
    #[serde(serialize_with = "serialize_values", deserialize_with = "deserialize_values")]
    pub value: Vec<Complex64>,
}

/// A pointed path: pinned to `basepoint` at the interval start, with knots
/// interpolated by the declared rule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Path {
    #[serde(serialize_with = "serialize_values", deserialize_with = "deserialize_values")]
    pub basepoint: Vec<Complex64>,
    pub interpolation: Interpolation,
    pub knots: Vec<Knot>,
}

impl Path {
    pub fn new(
        basepoint: Vec<Complex64>,
        interpolation: Interpolation,
        knots: Vec<Knot>,
    ) -> Result<Self, PathError> {
        if basepoint.is_empty() {
            return Err(PathError::NoComponents);
        }
        let m = basepoint.len();
        let mut prev = f64::NEG_INFINITY;
        for (i, k) in knots.iter().enumerate() {
            if k.value.len() != m {
                return Err(PathError::ComponentMismatch {
                    index: i,
                    found: k.value.len(),
                    declared: m,
                });
            }
            if k.t <= prev {
                return Err(PathError::NotIncreasing { index: i, value: k.t });
            }
            prev = k.t;
        }
        Ok(Path {
            basepoint,
            interpolation,
            knots,
        })
    }

    pub fn components(&self) -> usize {
        self.basepoint.len()
    }

    /// Value at time `t`, with the interval start `t_a` supplying the pin.
    ///
    /// At `t == t_a` this returns the basepoint bits unchanged; at a knot
    /// time it returns that knot's bits unchanged. Those two exactness
    /// guarantees are what make nested projections bit-consistent.
    pub fn value_at(&self, t_a: f64, t: f64) -> Vec<Complex64> {
        if t == t_a {
            return self.basepoint.clone();
        }
        // Find the bracketing knots around t.
        let mut lo_t = t_a;
        let mut lo_v: &[Complex64] = &self.basepoint;
        for k in &self.knots {
            if k.t == t {
                return k.value.clone();
            }
            if k.t < t {
                lo_t = k.t;
                lo_v = &k.value;
            } else {
                // First knot past t: interpolate.
                return match self.interpolation {
                    Interpolation::PiecewiseConstant => lo_v.to_vec(),
                    Interpolation::PiecewiseLinear => {
                        let w = (t - lo_t) / (k.t - lo_t);
                        lo_v.iter()
                            .zip(&k.value)
                            .map(|(a, b)| a * (1.0 - w) + b * w)
                            .collect()
                    }
                };
            }
        }
        // Past the last knot: hold its value.
        lo_v.to_vec()
    }
}

/// A time-slicing projection: evaluate at grid times, lay out time-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Projection {
    pub grid: TimeGrid,
    pub components: usize,
}

impl Projection {
    pub fn new(grid: TimeGrid, components: usize) -> Self {
        Projection { grid, components }
    }

    pub fn dim(&self) -> usize {
        self.grid.len() * self.components
    }

    /// Slice the path: component k of time τ_i lands at index `i*m + k`.
    pub fn project(&self, path: &Path) -> Result<DVector<Complex64>, PathError> {
        if path.components() != self.components {
            return Err(PathError::ComponentMismatch {
                index: 0,
                found: path.components(),
                declared: self.components,
            });
        }
        for (i, k) in path.knots.iter().enumerate() {
            if k.t < self.grid.t_a || k.t > self.grid.t_b {
                return Err(PathError::KnotOutOfRange {
                    value: k.t,
                    t_a: self.grid.t_a,
                    t_b: self.grid.t_b,
                });
            }
            let _ = i;
        }
        let m = self.components;
        let mut out = DVector::zeros(self.dim());
        for (i, &t) in self.grid.points.iter().enumerate() {
            let v = path.value_at(self.grid.t_a, t);
            for k in 0..m {
                out[i * m + k] = v[k];
            }
        }
        Ok(out)
    }
}

/// Selection map carrying a fine projection onto a nested coarse one.
#[derive(Debug, Clone, PartialEq)]
pub struct CoarseningMap {
    /// For each coarse grid point, the index of the matching fine point.
    pub fine_indices: Vec<usize>,
    pub components: usize,
    pub fine_dim: usize,
}

impl CoarseningMap {
    /// Apply to a fine coordinate vector; pure copy, no arithmetic.
    pub fn apply(&self, fine: &DVector<Complex64>) -> DVector<Complex64> {
        let m = self.components;
        let mut out = DVector::zeros(self.fine_indices.len() * m);
        for (ci, &fi) in self.fine_indices.iter().enumerate() {
            for k in 0..m {
                out[ci * m + k] = fine[fi * m + k];
            }
        }
        out
    }

    /// Dense 0/1 matrix form of the selection, for inspection.
    pub fn to_matrix(&self) -> nalgebra::DMatrix<f64> {
        let m = self.components;
        let rows = self.fine_indices.len() * m;
        let mut p = nalgebra::DMatrix::zeros(rows, self.fine_dim * m);
        for (ci, &fi) in self.fine_indices.iter().enumerate() {
            for k in 0..m {
                p[(ci * m + k, fi * m + k)] = 1.0;
            }
        }
        p
    }
}

/// Build the selection map from a fine grid onto a nested coarse grid.
///
/// Every coarse time must appear in the fine grid with the *same bits*;
/// approximate containment is rejected, because only exact selection keeps
/// nested projections consistent without rounding.
pub fn coarsen(
    fine: &TimeGrid,
    coarse: &TimeGrid,
    components: usize,
) -> Result<CoarseningMap, CoarsenError> {
    if fine.t_a != coarse.t_a || fine.t_b != coarse.t_b {
        return Err(CoarsenError::IntervalMismatch {
            a0: fine.t_a,
            b0: fine.t_b,
            a1: coarse.t_a,
            b1: coarse.t_b,
        });
    }
    let mut fine_indices = Vec::with_capacity(coarse.len());
    for &ct in &coarse.points {
        match fine.points.iter().position(|&ft| ft == ct) {
            Some(idx) => fine_indices.push(idx),
            None => return Err(CoarsenError::NotSubset { value: ct }),
        }
    }
    Ok(CoarseningMap {
        fine_indices,
        components,
        fine_dim: fine.len(),
    })
}
