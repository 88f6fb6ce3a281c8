//! Built-in schemes, scheme files, specifiers and the rank-bounds table.

mod bounds;
mod file;
mod spec;

pub use bounds::{
    kron_bound, load_bounds, prop1_bound, save_bounds, BoundEntry, BoundsTable, Derivation,
};
pub use file::{
    load_scheme, load_scheme_verified, parse_scheme, render_scheme, save_scheme, CoeffEntry,
    SchemeFile, TermRecord, FORMAT_VERSION,
};
pub use spec::{fixture_dir, fixture_path, SchemeSpec, FIXTURES_ENV};

use crate::error::Result;
use crate::rational::int;
use crate::scheme::{BilinearScheme, CoeffMatrix, Dims, MulTerm};

/// The textbook algorithm: one product `A[i,j] * B[j,k]` per index triple,
/// in `(i, j, k)` lexicographic order.
pub fn naive_scheme(u: usize, v: usize, w: usize) -> Result<BilinearScheme> {
    let dims = Dims::new(u, v, w)?;
    let mut terms = Vec::with_capacity(dims.volume());
    for i in 0..u {
        for j in 0..v {
            for k in 0..w {
                terms.push(MulTerm::new(
                    CoeffMatrix::unit(u, v, i, j),
                    CoeffMatrix::unit(v, w, j, k),
                    CoeffMatrix::unit(u, w, i, k),
                ));
            }
        }
    }
    BilinearScheme::new(dims, terms, format!("naive:{u},{v},{w}"), "naive")
}

/// Strassen's rank-7 algorithm for `2 x 2` matrices:
///
/// ```text
/// t1 = (a11 + a22)(b11 + b22)   t2 = (a12 - a22)(b21 + b22)
/// t3 = (a21 - a11)(b11 + b12)   t4 = (a11 + a12) b22
/// t5 = a11 (b12 - b22)          t6 = a22 (b21 - b11)
/// t7 = (a21 + a22) b11
///
/// c11 = t1 + t2 - t4 + t6       c12 = t4 + t5
/// c21 = t6 + t7                 c22 = t1 + t3 + t5 - t7
/// ```
pub fn strassen_scheme() -> BilinearScheme {
    // Entries are ((row, col), coefficient), 0-based.
    type Lin = &'static [((usize, usize), i64)];
    const TERMS: [(Lin, Lin, Lin); 7] = [
        (
            &[((0, 0), 1), ((1, 1), 1)],
            &[((0, 0), 1), ((1, 1), 1)],
            &[((0, 0), 1), ((1, 1), 1)],
        ),
        (
            &[((0, 1), 1), ((1, 1), -1)],
            &[((1, 0), 1), ((1, 1), 1)],
            &[((0, 0), 1)],
        ),
        (
            &[((0, 0), -1), ((1, 0), 1)],
            &[((0, 0), 1), ((0, 1), 1)],
            &[((1, 1), 1)],
        ),
        (
            &[((0, 0), 1), ((0, 1), 1)],
            &[((1, 1), 1)],
            &[((0, 0), -1), ((0, 1), 1)],
        ),
        (
            &[((0, 0), 1)],
            &[((0, 1), 1), ((1, 1), -1)],
            &[((0, 1), 1), ((1, 1), 1)],
        ),
        (
            &[((1, 1), 1)],
            &[((0, 0), -1), ((1, 0), 1)],
            &[((0, 0), 1), ((1, 0), 1)],
        ),
        (
            &[((1, 0), 1), ((1, 1), 1)],
            &[((0, 0), 1)],
            &[((1, 0), 1), ((1, 1), -1)],
        ),
    ];
    let build = |lin: Lin| {
        CoeffMatrix::from_entries(2, 2, lin.iter().map(|&((r, c), q)| (r, c, int(q))))
            .expect("static table is well-formed")
    };
    let terms = TERMS
        .iter()
        .map(|&(a, b, g)| MulTerm::new(build(a), build(b), build(g)))
        .collect();
    BilinearScheme::new(
        Dims::new(2, 2, 2).expect("static dims"),
        terms,
        "strassen",
        "Strassen 1969",
    )
    .expect("static table is well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::brent_check;

    #[test]
    fn naive_ranks() {
        assert_eq!(naive_scheme(1, 2, 2).unwrap().rank(), 4);
        assert_eq!(naive_scheme(1, 1, 1).unwrap().rank(), 1);
        let s = naive_scheme(3, 3, 6).unwrap();
        assert_eq!(s.rank(), 54);
        assert!(brent_check(&s).passed);
        assert!(naive_scheme(0, 3, 3).is_err());
    }

    #[test]
    fn naive_op_counts() {
        let c = naive_scheme(2, 2, 2).unwrap().op_counts();
        assert_eq!(
            (c.multiplications, c.additions, c.scalar_multiplications),
            (8, 4, 0)
        );
    }

    #[test]
    fn strassen_transcription() {
        let s = strassen_scheme();
        assert_eq!(s.rank(), 7);
        let t1 = &s.terms()[0];
        let cells = |m: &CoeffMatrix| {
            m.iter()
                .map(|(r, c, q)| (r, c, q.clone()))
                .collect::<Vec<_>>()
        };
        assert_eq!(cells(&t1.alpha), vec![(0, 0, int(1)), (1, 1, int(1))]);
        assert_eq!(cells(&t1.beta), vec![(0, 0, int(1)), (1, 1, int(1))]);
        // t4 enters c11 with -1 and c12 with +1.
        assert_eq!(
            cells(&s.terms()[3].gamma),
            vec![(0, 0, int(-1)), (0, 1, int(1))]
        );
        assert!(brent_check(&s).passed);
    }

    #[test]
    fn strassen_op_counts() {
        let c = strassen_scheme().op_counts();
        assert_eq!(
            (c.multiplications, c.additions, c.scalar_multiplications),
            (7, 18, 0)
        );
    }

    #[test]
    fn strassen_agrees_with_block_plan() {
        let from_plan = BilinearScheme::new(
            Dims::new(2, 2, 2).unwrap(),
            crate::compose::strassen_terms(),
            "plan",
            "plan",
        )
        .unwrap();
        assert!(from_plan.structurally_eq(&strassen_scheme()));
    }
}
