//! Symmetries and Kronecker products of schemes.
//!
//! With `W[k,i] = gamma[i,k]`, a scheme is a decomposition of the trilinear
//! form `Trace(A * B * W)`. The cyclic identity `Trace(UVW) = Trace(VWU)`
//! gives [`rotate`], and `Trace(UVW) = Trace(V^T U^T W^T)` gives
//! [`transpose_dual`]. Together they generate all six orientations.

use crate::error::{FmmError, Result};
use crate::scheme::{BilinearScheme, Dims, MulTerm};

/// The six symmetries of a scheme, each a fixed word in the generators
/// `t` ([`transpose_dual`]) and `r` ([`rotate`]), applied left to right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Identity,
    Rotate,
    Rotate2,
    Transpose,
    TransposeRotate,
    TransposeRotate2,
}

impl Orientation {
    /// Search order used by [`orient`].
    pub const ALL: [Orientation; 6] = [
        Orientation::Identity,
        Orientation::Rotate,
        Orientation::Rotate2,
        Orientation::Transpose,
        Orientation::TransposeRotate,
        Orientation::TransposeRotate2,
    ];

    /// Output dimension `n` is input dimension `permutation()[n]`.
    pub fn permutation(self) -> [usize; 3] {
        match self {
            Orientation::Identity => [0, 1, 2],
            Orientation::Rotate => [1, 2, 0],
            Orientation::Rotate2 => [2, 0, 1],
            Orientation::Transpose => [2, 1, 0],
            Orientation::TransposeRotate => [1, 0, 2],
            Orientation::TransposeRotate2 => [0, 2, 1],
        }
    }

    fn from_permutation(p: [usize; 3]) -> Orientation {
        Self::ALL
            .into_iter()
            .find(|o| o.permutation() == p)
            .expect("every permutation of three letters is listed")
    }

    /// Generator word: `'t'` for [`transpose_dual`], `'r'` for [`rotate`].
    pub fn word(self) -> &'static str {
        match self {
            Orientation::Identity => "",
            Orientation::Rotate => "r",
            Orientation::Rotate2 => "rr",
            Orientation::Transpose => "t",
            Orientation::TransposeRotate => "tr",
            Orientation::TransposeRotate2 => "trr",
        }
    }

    /// `self` followed by `next`.
    pub fn then(self, next: Orientation) -> Orientation {
        let (p, q) = (self.permutation(), next.permutation());
        Self::from_permutation([p[q[0]], p[q[1]], p[q[2]]])
    }

    pub fn inverse(self) -> Orientation {
        let p = self.permutation();
        let mut inv = [0; 3];
        for (n, &src) in p.iter().enumerate() {
            inv[src] = n;
        }
        Self::from_permutation(inv)
    }

    pub fn apply_dims(self, dims: Dims) -> Dims {
        let d = dims.as_array();
        let p = self.permutation();
        Dims::new(d[p[0]], d[p[1]], d[p[2]]).expect("permuted dims stay positive")
    }

    pub fn apply(self, scheme: &BilinearScheme) -> BilinearScheme {
        let mut out = scheme.clone();
        for op in self.word().chars() {
            out = match op {
                't' => transpose_dual(&out),
                _ => rotate(&out),
            };
        }
        out
    }
}

fn relabel(scheme: &BilinearScheme, dims: Dims, terms: Vec<MulTerm>, op: &str) -> BilinearScheme {
    BilinearScheme::new(
        dims,
        terms,
        format!("{op}({})", scheme.name()),
        format!("{}; {op} -> {dims}", scheme.provenance()),
    )
    .expect("symmetries map canonical schemes to canonical schemes")
}

/// `<u,v,w>` to `<v,w,u>` by cycling the trilinear factors.
pub fn rotate(scheme: &BilinearScheme) -> BilinearScheme {
    let terms = scheme
        .terms()
        .iter()
        .map(|t| MulTerm::new(t.beta.clone(), t.gamma.transpose(), t.alpha.transpose()))
        .collect();
    relabel(scheme, scheme.dims().rotated(), terms, "rotate")
}

/// `<u,v,w>` to `<w,v,u>` via `(AB)^T = B^T A^T`. An involution.
pub fn transpose_dual(scheme: &BilinearScheme) -> BilinearScheme {
    let terms = scheme
        .terms()
        .iter()
        .map(|t| MulTerm::new(t.beta.transpose(), t.alpha.transpose(), t.gamma.transpose()))
        .collect();
    relabel(scheme, scheme.dims().transposed(), terms, "transpose")
}

/// The first orientation in [`Orientation::ALL`] taking `from` to `to`.
pub fn orientation_between(from: Dims, to: Dims) -> Option<Orientation> {
    Orientation::ALL
        .into_iter()
        .find(|o| o.apply_dims(from) == to)
}

/// Re-expresses `scheme` for the shape `target`, which must be a
/// permutation of its own shape. Rank is preserved.
pub fn orient(scheme: &BilinearScheme, target: Dims) -> Result<BilinearScheme> {
    let orientation =
        orientation_between(scheme.dims(), target).ok_or(FmmError::DimensionMismatch {
            expected: target,
            got: scheme.dims(),
        })?;
    Ok(orientation.apply(scheme))
}

/// Tensor (Kronecker) product: `<u1 u2, v1 v2, w1 w2>` of rank `r1 * r2`.
///
/// Term `(l1, l2)` is stored at position `l1 * r2 + l2`, and operand entry
/// `((i1, i2), (j1, j2))` lives at `(i1 * u2 + i2, j1 * v2 + j2)`.
pub fn kronecker(first: &BilinearScheme, second: &BilinearScheme) -> BilinearScheme {
    let (d1, d2) = (first.dims(), second.dims());
    let dims = Dims::new(d1.u() * d2.u(), d1.v() * d2.v(), d1.w() * d2.w())
        .expect("products of positive dims are positive");
    let mut terms = Vec::with_capacity(first.rank() * second.rank());
    for a in first.terms() {
        for b in second.terms() {
            terms.push(MulTerm::new(
                a.alpha.kron(&b.alpha),
                a.beta.kron(&b.beta),
                a.gamma.kron(&b.gamma),
            ));
        }
    }
    BilinearScheme::new(
        dims,
        terms,
        format!("kron({},{})", first.name(), second.name()),
        format!(
            "kronecker of [{}] and [{}]",
            first.provenance(),
            second.provenance()
        ),
    )
    .expect("Kronecker products of nonzero factors are nonzero")
}
