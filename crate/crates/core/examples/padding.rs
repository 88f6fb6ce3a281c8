//! Zero padding of a 7x7 matrix into the 8x8 grid used by the (4,3) split,
//! and peeling a scheme coefficient down to its live rows and columns.

use std::collections::BTreeSet;

use fmm::padding::PaddingMap;
use fmm::rational::{int, render_rational};
use fmm::{pad, peel, unpad, CoeffMatrix, Matrix, Rational};

fn main() -> fmm::Result<()> {
    let map = PaddingMap::new(4, 3)?;
    let placed: Vec<usize> = (0..map.original_size()).map(|g| map.to_padded(g)).collect();
    println!("original index -> padded index: {placed:?}");

    let a: Matrix<Rational> = Matrix::from_fn(7, 7, |r, c| int((r * 7 + c + 1) as i64));
    let p = pad(&a, 4, 3)?;
    println!("padded:\n{p}");
    assert_eq!(unpad(&p, 4, 3)?, a);

    let mut coeff = CoeffMatrix::zeros(4, 4);
    coeff.add(0, 0, int(1));
    coeff.add(2, 3, int(-1));
    let rows: BTreeSet<usize> = [0, 1, 2].into();
    let cols: BTreeSet<usize> = (0..4).collect();
    let peeled = peel(&rows, &cols, &coeff)?;
    println!(
        "peeling a row with a nonzero fails: {}",
        peel(&[0, 1].into(), &cols, &coeff).is_err()
    );
    println!("peeled to {}x{}:", peeled.rows(), peeled.cols());
    for (r, c, q) in peeled.iter() {
        println!("  ({r},{c}) = {}", render_rational(q));
    }
    Ok(())
}
