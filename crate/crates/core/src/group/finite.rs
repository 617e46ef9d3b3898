//! Finite groups given by explicit multiplication tables.
//!
//! The constructor validates the group axioms exhaustively — table shape,
//! entry range, a two-sided identity, associativity over all triples, and a
//! two-sided inverse for every element — so every downstream operation can
//! index the table without checks. Haar measure is counting measure and the
//! modular function is identically 1, which makes the convolution, the
//! involution, and the norm exact finite sums.

use crate::error::GroupError;

use super::{AlgebraValue, GroupIntegral};

/// A finite group: multiplication table, element labels, identity index, and
/// inverse table, all validated at construction.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    /// `table[i][j]` is the index of `gᵢ · gⱼ`.
    table: Vec<Vec<usize>>,
    labels: Vec<String>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Builds a group from a multiplication table, checking every axiom.
    /// `labels` defaults to `g0, g1, …` when omitted.
    pub fn from_table(
        table: Vec<Vec<usize>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, GroupError> {
        let order = table.len();
        if order == 0 {
            return Err(GroupError::BadTableShape { order });
        }
        if table.iter().any(|row| row.len() != order) {
            return Err(GroupError::BadTableShape { order });
        }
        for (i, row) in table.iter().enumerate() {
            for (j, &value) in row.iter().enumerate() {
                if value >= order {
                    return Err(GroupError::BadTableEntry { i, j, value });
                }
            }
        }

        let identity = (0..order)
            .find(|&e| {
                (0..order).all(|j| table[e][j] == j) && (0..order).all(|i| table[i][e] == i)
            })
            .ok_or(GroupError::NoIdentity)?;

        for i in 0..order {
            for j in 0..order {
                for k in 0..order {
                    if table[table[i][j]][k] != table[i][table[j][k]] {
                        return Err(GroupError::NotAssociative { i, j, k });
                    }
                }
            }
        }

        let mut inverse = Vec::with_capacity(order);
        for (i, row) in table.iter().enumerate() {
            let inv = (0..order)
                .find(|&j| row[j] == identity && table[j][i] == identity)
                .ok_or(GroupError::NoInverse { element: i })?;
            inverse.push(inv);
        }

        let labels = match labels {
            None => (0..order).map(|i| format!("g{i}")).collect(),
            Some(l) => {
                if l.len() != order {
                    return Err(GroupError::Unsupported(format!(
                        "label list has {} entries for a group of order {order}",
                        l.len()
                    )));
                }
                l
            }
        };

        Ok(FiniteGroup { order, table, labels, identity, inverse })
    }

    /// Cyclic group of order `n`, elements labelled `0, …, n−1`, product
    /// `(i, j) ↦ (i + j) mod n`.
    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::BadTableShape { order: 0 });
        }
        let table: Vec<Vec<usize>> =
            (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::from_table(table, Some(labels))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    /// Index of `gᵢ · gⱼ`.
    pub fn product(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    /// Index of `gᵢ⁻¹`.
    pub fn inverse_of(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }
}

fn check_len<T>(values: &[T], g: &FiniteGroup) -> Result<(), GroupError> {
    if values.len() != g.order() {
        return Err(GroupError::FunctionLengthMismatch {
            found: values.len(),
            order: g.order(),
        });
    }
    Ok(())
}

fn check_value_dims<T: AlgebraValue>(a: &[T], b: &[T]) -> Result<(), GroupError> {
    let (da, db) = (
        a[0].matrix_dim().unwrap_or(1),
        b[0].matrix_dim().unwrap_or(1),
    );
    if da != db {
        return Err(GroupError::ValueDimensionMismatch { left: da, right: db });
    }
    Ok(())
}

/// Counting-measure integral: the exact sum of the table.
pub(super) fn integrate<T: AlgebraValue>(
    values: &[T],
    g: &FiniteGroup,
) -> Result<GroupIntegral<T>, GroupError> {
    check_len(values, g)?;
    let sum = values
        .iter()
        .fold(values[0].zero_like(), |acc, v| acc.add(v));
    Ok(GroupIntegral { value: sum, abs_error_estimate: 0.0 })
}

/// `(F₁ ∗ F₂)(g) = Σ_{g̃} F₁(g̃) · F₂(g̃⁻¹ g)`, exact.
pub(super) fn convolve<T: AlgebraValue>(
    f1: &[T],
    f2: &[T],
    g: &FiniteGroup,
) -> Result<Vec<T>, GroupError> {
    check_len(f1, g)?;
    check_len(f2, g)?;
    check_value_dims(f1, f2)?;
    let out = (0..g.order())
        .map(|k| {
            (0..g.order()).fold(f1[0].zero_like(), |acc, j| {
                acc.add(&f1[j].mul(&f2[g.product(g.inverse_of(j), k)]))
            })
        })
        .collect();
    Ok(out)
}

/// `(F₁ ⋆ F₂)(g) = Σ_{g̃} F₁(g̃ g) · F₂(g̃ g̃)` — the squared-argument pairing,
/// exactly as written.
pub(super) fn convolve2<T: AlgebraValue>(
    f1: &[T],
    f2: &[T],
    g: &FiniteGroup,
) -> Result<Vec<T>, GroupError> {
    check_len(f1, g)?;
    check_len(f2, g)?;
    check_value_dims(f1, f2)?;
    let out = (0..g.order())
        .map(|k| {
            (0..g.order()).fold(f1[0].zero_like(), |acc, j| {
                acc.add(&f1[g.product(j, k)].mul(&f2[g.product(j, j)]))
            })
        })
        .collect();
    Ok(out)
}

/// `F^∗(g) = F(g⁻¹)^∗` (Δ ≡ 1 on a finite group).
pub(super) fn involute<T: AlgebraValue>(
    values: &[T],
    g: &FiniteGroup,
) -> Result<Vec<T>, GroupError> {
    check_len(values, g)?;
    Ok((0..g.order())
        .map(|k| values[g.inverse_of(k)].adjoint())
        .collect())
}

/// `‖F‖ = Σ_g ‖F(g)‖`.
pub(super) fn norm<T: AlgebraValue>(
    values: &[T],
    g: &FiniteGroup,
) -> Result<f64, GroupError> {
    check_len(values, g)?;
    Ok(values.iter().map(AlgebraValue::norm).sum())
}

/// Left translate: `(F_{g₀})(g) = F(g₀ · g)`.
pub(super) fn translate<T: AlgebraValue>(
    values: &[T],
    g: &FiniteGroup,
    shift: usize,
) -> Result<Vec<T>, GroupError> {
    check_len(values, g)?;
    if shift >= g.order() {
        return Err(GroupError::Unsupported(format!(
            "shift index {shift} out of range for a group of order {}",
            g.order()
        )));
    }
    Ok((0..g.order())
        .map(|k| values[g.product(shift, k)].clone())
        .collect())
}
