//! Flag-value parsing and JSON file formats for the `fint` CLI.
//!
//! Conventions shared by every subcommand:
//! - complex flag values are `re` or `re,im` (e.g. `--scale 1.5,-0.3`);
//! - real matrices are JSON 2-D arrays of numbers;
//! - complex matrices are JSON 2-D arrays of `[re, im]` pairs.

use std::fs;
use std::path::Path;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Deserialize;

/// Parse a complex flag value: `"1.5"` or `"1.5,-0.3"` (`re[,im]`).
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let mut parts = s.splitn(2, ',');
    let re_str = parts.next().unwrap_or("").trim();
    let re: f64 = re_str
        .parse()
        .map_err(|_| format!("expected a number, got `{re_str}`"))?;
    let im = match parts.next() {
        Some(im_str) => {
            let im_str = im_str.trim();
            im_str
                .parse::<f64>()
                .map_err(|_| format!("expected a number, got `{im_str}`"))?
        }
        None => 0.0,
    };
    Ok(Complex64::new(re, im))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn rectangular<T>(path: &Path, rows: &[Vec<T>]) -> Result<(usize, usize), String> {
    let n = rows.len();
    if n == 0 {
        return Err(format!("{}: matrix has no rows", path.display()));
    }
    let m = rows[0].len();
    if m == 0 || rows.iter().any(|r| r.len() != m) {
        return Err(format!(
            "{}: matrix rows must be nonempty and of equal length",
            path.display()
        ));
    }
    Ok((n, m))
}

/// Load a real matrix stored as a JSON 2-D array of numbers.
pub fn load_real_matrix(path: &Path) -> Result<DMatrix<f64>, String> {
    let rows: Vec<Vec<f64>> = read_json(path)?;
    let (n, m) = rectangular(path, &rows)?;
    Ok(DMatrix::from_fn(n, m, |i, j| rows[i][j]))
}

/// Load a complex matrix stored as a JSON 2-D array of `[re, im]` pairs.
pub fn load_complex_matrix(path: &Path) -> Result<DMatrix<Complex64>, String> {
    let rows: Vec<Vec<[f64; 2]>> = read_json(path)?;
    let (n, m) = rectangular(path, &rows)?;
    Ok(DMatrix::from_fn(n, m, |i, j| {
        Complex64::new(rows[i][j][0], rows[i][j][1])
    }))
}

/// Generator description for `fint dyson`.
#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum HamiltonianFile {
    /// The built-in non-commuting family σ_z + t·σ_x.
    SzPlusTSx,
    /// A constant matrix, rows of `[re, im]` pairs.
    Constant { matrix: Vec<Vec<[f64; 2]>> },
}

/// Load a generator description for `fint dyson`.
pub fn load_hamiltonian(path: &Path) -> Result<HamiltonianFile, String> {
    read_json(path)
}

/// Turn the `constant` matrix rows into a square complex matrix.
pub fn constant_matrix(path: &Path, rows: Vec<Vec<[f64; 2]>>) -> Result<DMatrix<Complex64>, String> {
    let (n, m) = rectangular(path, &rows)?;
    if n != m {
        return Err(format!("{}: generator matrix must be square", path.display()));
    }
    Ok(DMatrix::from_fn(n, m, |i, j| {
        Complex64::new(rows[i][j][0], rows[i][j][1])
    }))
}

/// Finite-group fixture file for `fint group verify`.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFixturesFile {
    pub order: usize,
    /// Multiplication table: `product_table[i][j]` is the index of gᵢ·gⱼ.
    pub product_table: Vec<Vec<usize>>,
    /// Complex-valued function tables, one value per group element.
    pub functions: Vec<FunctionTable>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionTable {
    pub label: String,
    /// `[re, im]` pairs, indexed like the group elements.
    pub values: Vec<[f64; 2]>,
}

/// Load the finite-group fixtures for `fint group verify`.
pub fn load_group_fixtures(path: &Path) -> Result<GroupFixturesFile, String> {
    let file: GroupFixturesFile = read_json(path)?;
    if file.product_table.len() != file.order
        || file.product_table.iter().any(|r| r.len() != file.order)
    {
        return Err(format!(
            "{}: product_table must be order×order ({n}×{n})",
            path.display(),
            n = file.order
        ));
    }
    for f in &file.functions {
        if f.values.len() != file.order {
            return Err(format!(
                "{}: function `{}` has {} values, expected {}",
                path.display(),
                f.label,
                f.values.len(),
                file.order
            ));
        }
    }
    Ok(file)
}

/// A vector flag with a default of zeros: empty → 0⃗, else exactly `dim`.
pub fn dvector_or_zeros(
    values: &[Complex64],
    dim: usize,
    flag: &str,
) -> Result<DVector<Complex64>, String> {
    if values.is_empty() {
        Ok(DVector::zeros(dim))
    } else if values.len() == dim {
        Ok(DVector::from_column_slice(values))
    } else {
        Err(format!(
            "{flag}: expected {dim} components (repeat the flag), got {}",
            values.len()
        ))
    }
}

/// Row-major `[re, im]` pairs of a complex matrix, for JSON output.
pub fn matrix_pairs(m: &DMatrix<Complex64>) -> Vec<[f64; 2]> {
    let mut out = Vec::with_capacity(m.nrows() * m.ncols());
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let z = m[(i, j)];
            out.push([z.re, z.im]);
        }
    }
    out
}
