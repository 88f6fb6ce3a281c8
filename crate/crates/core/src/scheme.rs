//! Bilinear schemes and their building blocks.
//!
//! A scheme for `<u,v,w>` of rank `r` is a list of `r` products
//!
//! ```text
//! t_l = (sum alpha_l[i,j] * A[i,j]) * (sum beta_l[j,k] * B[j,k])
//! C[i,k] = sum_l gamma_l[i,k] * t_l
//! ```
//!
//! `gamma` is stored indexed by result cell. In trilinear notation, where the
//! third factor `W` is `w x u`, the correspondence is `gamma[i,k] = W[k,i]`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{FmmError, Result};
use crate::rational::{is_unit, Rational};

/// Shape `<u,v,w>` of a `u x v` by `v x w` product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dims {
    u: usize,
    v: usize,
    w: usize,
}

impl Dims {
    pub fn new(u: usize, v: usize, w: usize) -> Result<Self> {
        if u == 0 || v == 0 || w == 0 {
            return Err(FmmError::Parameter(format!(
                "dimensions must be positive, got ({u},{v},{w})"
            )));
        }
        Ok(Dims { u, v, w })
    }

    pub fn u(&self) -> usize {
        self.u
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn w(&self) -> usize {
        self.w
    }

    pub fn as_array(&self) -> [usize; 3] {
        [self.u, self.v, self.w]
    }

    /// Sorted triple; all six permutations of a shape share it.
    pub fn canonical(&self) -> [usize; 3] {
        let mut key = self.as_array();
        key.sort_unstable();
        key
    }

    pub fn is_permutation_of(&self, other: &Dims) -> bool {
        self.canonical() == other.canonical()
    }

    pub fn volume(&self) -> usize {
        self.u * self.v * self.w
    }

    // (v, w, u)
    pub(crate) fn rotated(&self) -> Dims {
        Dims {
            u: self.v,
            v: self.w,
            w: self.u,
        }
    }

    // (w, v, u)
    pub(crate) fn transposed(&self) -> Dims {
        Dims {
            u: self.w,
            v: self.v,
            w: self.u,
        }
    }
}

impl fmt::Display for Dims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{},{},{}>", self.u, self.v, self.w)
    }
}

/// Sparse rational matrix. Only nonzero entries are stored, in row-major order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl CoeffMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CoeffMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    /// The matrix unit `e_{row,col}`.
    pub fn unit(rows: usize, cols: usize, row: usize, col: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        m.add(row, col, Rational::from_integer(1.into()));
        m
    }

    /// Builds a matrix from explicit entries. Duplicate positions and
    /// out-of-range indices are rejected; zero values are dropped.
    pub fn from_entries<I>(rows: usize, cols: usize, entries: I) -> Result<Self, String>
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut m = Self::zeros(rows, cols);
        for (r, c, value) in entries {
            if r >= rows || c >= cols {
                return Err(format!("index ({r}, {c}) outside {rows}x{cols}"));
            }
            if m.entries.contains_key(&(r, c)) {
                return Err(format!("duplicate entry at ({r}, {c})"));
            }
            if !value.is_zero() {
                m.entries.insert((r, c), value);
            }
        }
        Ok(m)
    }

    /// Adds `value` to entry `(row, col)`, pruning the entry if it cancels.
    ///
    /// Panics if the position is out of range.
    pub fn add(&mut self, row: usize, col: usize, value: Rational) {
        assert!(
            row < self.rows && col < self.cols,
            "({row}, {col}) outside {}x{}",
            self.rows,
            self.cols
        );
        if value.is_zero() {
            return;
        }
        let slot = self
            .entries
            .entry((row, col))
            .or_insert_with(Rational::zero);
        *slot += value;
        if slot.is_zero() {
            self.entries.remove(&(row, col));
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, row: usize, col: usize) -> Option<&Rational> {
        self.entries.get(&(row, col))
    }

    /// Nonzero entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.entries.iter().map(|(&(r, c), q)| (r, c, q))
    }

    pub fn transpose(&self) -> CoeffMatrix {
        CoeffMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: self
                .entries
                .iter()
                .map(|(&(r, c), q)| ((c, r), q.clone()))
                .collect(),
        }
    }

    /// Kronecker product; `self` supplies the coarse (block) index.
    pub fn kron(&self, other: &CoeffMatrix) -> CoeffMatrix {
        let mut entries = BTreeMap::new();
        for (r1, c1, a) in self.iter() {
            for (r2, c2, b) in other.iter() {
                entries.insert((r1 * other.rows + r2, c1 * other.cols + c2), a * b);
            }
        }
        CoeffMatrix {
            rows: self.rows * other.rows,
            cols: self.cols * other.cols,
            entries,
        }
    }

    pub(crate) fn negate_entry(&mut self, row: usize, col: usize) -> bool {
        match self.entries.get_mut(&(row, col)) {
            Some(q) => {
                *q = -q.clone();
                true
            }
            None => false,
        }
    }
}

/// One multiplication of a scheme.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MulTerm {
    /// `u x v`, coefficients on left-operand entries.
    pub alpha: CoeffMatrix,
    /// `v x w`, coefficients on right-operand entries.
    pub beta: CoeffMatrix,
    /// `u x w`, how the product is distributed over result cells.
    pub gamma: CoeffMatrix,
}

impl MulTerm {
    pub fn new(alpha: CoeffMatrix, beta: CoeffMatrix, gamma: CoeffMatrix) -> Self {
        MulTerm { alpha, beta, gamma }
    }

    pub fn factors(&self) -> [(&'static str, &CoeffMatrix); 3] {
        [
            ("alpha", &self.alpha),
            ("beta", &self.beta),
            ("gamma", &self.gamma),
        ]
    }
}

/// A bilinear matrix-multiplication algorithm with explicit coefficients.
///
/// Values are canonical by construction: every term matches the shape and
/// has a nonzero entry in each factor. Instances are immutable.
#[derive(Clone, Debug)]
pub struct BilinearScheme {
    dims: Dims,
    terms: Vec<MulTerm>,
    name: String,
    provenance: String,
}

impl BilinearScheme {
    pub fn new(
        dims: Dims,
        terms: Vec<MulTerm>,
        name: impl Into<String>,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        for (index, term) in terms.iter().enumerate() {
            let expected = [(dims.u, dims.v), (dims.v, dims.w), (dims.u, dims.w)];
            for ((factor, coeff), shape) in term.factors().into_iter().zip(expected) {
                if coeff.shape() != shape {
                    return Err(FmmError::Structural {
                        term: index,
                        message: format!(
                            "{factor} is {}x{}, expected {}x{} for {dims}",
                            coeff.rows, coeff.cols, shape.0, shape.1
                        ),
                    });
                }
            }
            for (factor, coeff) in term.factors() {
                if coeff.is_zero() {
                    return Err(FmmError::DeadTerm {
                        term: index,
                        factor,
                    });
                }
            }
        }
        Ok(BilinearScheme {
            dims,
            terms,
            name: name.into(),
            provenance: provenance.into(),
        })
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn terms(&self) -> &[MulTerm] {
        &self.terms
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    /// Number of multiplications.
    pub fn rank(&self) -> usize {
        self.terms.len()
    }

    pub fn into_terms(self) -> Vec<MulTerm> {
        self.terms
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.provenance = provenance.into();
        self
    }

    /// Same shape and identical term list; labels are ignored.
    pub fn structurally_eq(&self, other: &BilinearScheme) -> bool {
        self.dims == other.dims && self.terms == other.terms
    }

    pub fn op_counts(&self) -> OpCounts {
        op_counts(self)
    }
}

/// Validating constructor; equivalent to [`BilinearScheme::new`] with the
/// provenance `"constructed"`.
pub fn make_scheme(
    dims: Dims,
    terms: Vec<MulTerm>,
    name: impl Into<String>,
) -> Result<BilinearScheme> {
    BilinearScheme::new(dims, terms, name, "constructed")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OpCounts {
    pub multiplications: usize,
    pub additions: usize,
    pub scalar_multiplications: usize,
}

/// Operation counts of the straightforward evaluation of `scheme`, without
/// any sharing of common subexpressions.
pub fn op_counts(scheme: &BilinearScheme) -> OpCounts {
    let mut additions = 0;
    let mut scalar_multiplications = 0;
    let mut contributions: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for term in &scheme.terms {
        additions += term.alpha.nnz() - 1 + term.beta.nnz() - 1;
        for (_, coeff) in term.factors() {
            scalar_multiplications += coeff.iter().filter(|(_, _, q)| !is_unit(q)).count();
        }
        for (r, c, _) in term.gamma.iter() {
            *contributions.entry((r, c)).or_default() += 1;
        }
    }
    additions += contributions.values().map(|n| n - 1).sum::<usize>();
    OpCounts {
        multiplications: scheme.rank(),
        additions,
        scalar_multiplications,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn scalar_term() -> MulTerm {
        let one = CoeffMatrix::unit(1, 1, 0, 0);
        MulTerm::new(one.clone(), one.clone(), one)
    }

    #[test]
    fn scalar_scheme() {
        let s = make_scheme(Dims::new(1, 1, 1).unwrap(), vec![scalar_term()], "scalar").unwrap();
        assert_eq!(s.rank(), 1);
        assert_eq!(
            s.op_counts(),
            OpCounts {
                multiplications: 1,
                additions: 0,
                scalar_multiplications: 0
            }
        );
    }

    #[test]
    fn dead_term_rejected() {
        let d = Dims::new(2, 2, 2).unwrap();
        let term = MulTerm::new(
            CoeffMatrix::unit(2, 2, 0, 0),
            CoeffMatrix::unit(2, 2, 0, 0),
            CoeffMatrix::zeros(2, 2),
        );
        match make_scheme(d, vec![term], "dead") {
            Err(FmmError::DeadTerm {
                term: 0,
                factor: "gamma",
            }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn shape_mismatch_names_term() {
        let d = Dims::new(2, 2, 2).unwrap();
        let good = MulTerm::new(
            CoeffMatrix::unit(2, 2, 0, 0),
            CoeffMatrix::unit(2, 2, 0, 0),
            CoeffMatrix::unit(2, 2, 0, 0),
        );
        let bad = MulTerm::new(
            CoeffMatrix::unit(2, 3, 0, 0),
            CoeffMatrix::unit(2, 2, 0, 0),
            CoeffMatrix::unit(2, 2, 0, 0),
        );
        match make_scheme(d, vec![good, bad], "bad") {
            Err(FmmError::Structural { term: 1, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn zero_dims_rejected() {
        assert!(Dims::new(0, 1, 1).is_err());
    }

    #[test]
    fn coeff_add_cancels() {
        let mut m = CoeffMatrix::zeros(2, 2);
        m.add(1, 0, int(3));
        m.add(1, 0, int(-3));
        assert!(m.is_zero());
        assert!(CoeffMatrix::from_entries(2, 2, [(0, 0, int(1)), (0, 0, int(2))]).is_err());
        assert!(CoeffMatrix::from_entries(2, 2, [(2, 0, int(1))]).is_err());
        assert_eq!(
            CoeffMatrix::from_entries(2, 2, [(0, 1, int(0))])
                .unwrap()
                .nnz(),
            0
        );
    }

    #[test]
    fn kron_index_order() {
        let a = CoeffMatrix::unit(2, 3, 1, 2);
        let b = CoeffMatrix::unit(4, 5, 3, 1);
        let k = a.kron(&b);
        assert_eq!(k.shape(), (8, 15));
        let cells: Vec<_> = k.iter().map(|(r, c, _)| (r, c)).collect();
        assert_eq!(cells, vec![(4 + 3, 2 * 5 + 1)]);
    }

    #[test]
    fn row_major_iteration() {
        let m = CoeffMatrix::from_entries(2, 2, [(1, 0, int(1)), (0, 1, int(2)), (0, 0, int(3))])
            .unwrap();
        let cells: Vec<_> = m.iter().map(|(r, c, _)| (r, c)).collect();
        assert_eq!(cells, vec![(0, 0), (0, 1), (1, 0)]);
    }
}
