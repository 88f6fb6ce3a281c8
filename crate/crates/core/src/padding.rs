//! Zero padding of an `(u+v) x (u+v)` problem to `2u x 2u`, and peeling of
//! coefficient matrices down to the rows and columns that can carry data.
//!
//! Padding inserts `u - v` zero rows and columns at position `v`, so the
//! top-left `u x u` block holds the original `v x v` corner followed by
//! zeros, and every other block is fully populated.

use std::collections::BTreeSet;

use crate::error::{FmmError, Result};
use crate::matrix::{Matrix, Scalar};
use crate::scheme::CoeffMatrix;

/// Index bookkeeping between original and padded coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PaddingMap {
    u: usize,
    v: usize,
}

impl PaddingMap {
    pub fn new(u: usize, v: usize) -> Result<Self> {
        if v == 0 || u <= v {
            return Err(FmmError::Parameter(format!(
                "padding needs u > v >= 1, got u={u}, v={v}"
            )));
        }
        Ok(PaddingMap { u, v })
    }

    pub fn u(&self) -> usize {
        self.u
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn original_size(&self) -> usize {
        self.u + self.v
    }

    pub fn padded_size(&self) -> usize {
        2 * self.u
    }

    pub fn to_padded(&self, g: usize) -> usize {
        debug_assert!(g < self.original_size());
        if g < self.v {
            g
        } else {
            g + (self.u - self.v)
        }
    }

    /// `None` for inserted (always zero) indices.
    pub fn to_original(&self, p: usize) -> Option<usize> {
        debug_assert!(p < self.padded_size());
        if p < self.v {
            Some(p)
        } else if p < self.u {
            None
        } else {
            Some(p - (self.u - self.v))
        }
    }

    /// Block-local indices of block `b` (0 or 1) that are not padding.
    pub fn live_extent(&self, block: usize) -> usize {
        if block == 0 {
            self.v
        } else {
            self.u
        }
    }
}

/// Embeds an `(u+v) x (u+v)` matrix into `2u x 2u` with zeros at the
/// inserted rows and columns `v..u`.
pub fn pad<T: Scalar>(input: &Matrix<T>, u: usize, v: usize) -> Result<Matrix<T>> {
    let map = PaddingMap::new(u, v)?;
    let n = map.original_size();
    if input.shape() != (n, n) {
        return Err(FmmError::Shape(format!(
            "padding ({u},{v}) needs a {n}x{n} matrix, got {}x{}",
            input.rows(),
            input.cols()
        )));
    }
    let size = map.padded_size();
    Ok(Matrix::from_fn(size, size, |r, c| {
        match (map.to_original(r), map.to_original(c)) {
            (Some(r), Some(c)) => input[(r, c)].clone(),
            _ => T::zero(),
        }
    }))
}

/// Drops the inserted rows and columns again.
pub fn unpad<T: Scalar>(padded: &Matrix<T>, u: usize, v: usize) -> Result<Matrix<T>> {
    let map = PaddingMap::new(u, v)?;
    let size = map.padded_size();
    if padded.shape() != (size, size) {
        return Err(FmmError::Shape(format!(
            "unpadding ({u},{v}) needs a {size}x{size} matrix, got {}x{}",
            padded.rows(),
            padded.cols()
        )));
    }
    let n = map.original_size();
    Ok(Matrix::from_fn(n, n, |r, c| {
        padded[(map.to_padded(r), map.to_padded(c))].clone()
    }))
}

/// Rows and columns of a coefficient matrix that may hold live entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeelMask {
    kept_rows: BTreeSet<usize>,
    kept_cols: BTreeSet<usize>,
    original_dims: (usize, usize),
}

impl PeelMask {
    pub fn new(
        kept_rows: impl IntoIterator<Item = usize>,
        kept_cols: impl IntoIterator<Item = usize>,
        original_dims: (usize, usize),
    ) -> Result<Self> {
        let kept_rows: BTreeSet<usize> = kept_rows.into_iter().collect();
        let kept_cols: BTreeSet<usize> = kept_cols.into_iter().collect();
        let in_range = |set: &BTreeSet<usize>, n: usize| {
            !set.is_empty() && set.iter().next_back().is_some_and(|&x| x < n)
        };
        if !in_range(&kept_rows, original_dims.0) || !in_range(&kept_cols, original_dims.1) {
            return Err(FmmError::Parameter(format!(
                "peel mask must keep a nonempty subset of {}x{}",
                original_dims.0, original_dims.1
            )));
        }
        Ok(PeelMask {
            kept_rows,
            kept_cols,
            original_dims,
        })
    }

    /// Keeps the leading `rows x cols` corner.
    pub fn leading(rows: usize, cols: usize, original_dims: (usize, usize)) -> Result<Self> {
        Self::new(0..rows, 0..cols, original_dims)
    }

    pub fn kept_rows(&self) -> &BTreeSet<usize> {
        &self.kept_rows
    }

    pub fn kept_cols(&self) -> &BTreeSet<usize> {
        &self.kept_cols
    }

    pub fn original_dims(&self) -> (usize, usize) {
        self.original_dims
    }

    pub fn kept_shape(&self) -> (usize, usize) {
        (self.kept_rows.len(), self.kept_cols.len())
    }

    pub fn contains(&self, row: usize, col: usize) -> bool {
        self.kept_rows.contains(&row) && self.kept_cols.contains(&col)
    }

    pub fn apply(&self, coeff: &CoeffMatrix) -> Result<CoeffMatrix> {
        peel(&self.kept_rows, &self.kept_cols, coeff)
    }
}

/// Restricts `coeff` to the kept rows and columns, renumbering them densely.
/// Fails if a nonzero entry would be discarded.
pub fn peel(
    kept_rows: &BTreeSet<usize>,
    kept_cols: &BTreeSet<usize>,
    coeff: &CoeffMatrix,
) -> Result<CoeffMatrix> {
    let rank_of = |set: &BTreeSet<usize>, x: usize| set.range(..x).count();
    let mut out = CoeffMatrix::zeros(kept_rows.len(), kept_cols.len());
    for (r, c, q) in coeff.iter() {
        if !kept_rows.contains(&r) || !kept_cols.contains(&c) {
            return Err(FmmError::PeelViolation { row: r, col: c });
        }
        out.add(rank_of(kept_rows, r), rank_of(kept_cols, c), q.clone());
    }
    Ok(out)
}
