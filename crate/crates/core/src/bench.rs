//! Blocked and recursive application of square schemes over `f64`, with
//! multiplication counting and a wall-clock comparison against the naive
//! product.

use std::fmt;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{FmmError, Result};
use crate::matrix::{Matrix, Scalar};
use crate::scheme::{BilinearScheme, OpCounts};
use crate::verify::naive_mult;

/// Multiplies `size x size` matrices by applying a square `<n,n,n>` scheme
/// to `n x n` grids of blocks. With `recursive`, blocks are split again while
/// their size stays divisible by `n`; leaves use the naive product.
///
/// Returns the product and the number of scalar multiplications performed.
pub fn blocked_mult(
    scheme: &BilinearScheme,
    a: &Matrix<f64>,
    b: &Matrix<f64>,
    recursive: bool,
) -> Result<(Matrix<f64>, u64)> {
    let n = square_order(scheme)?;
    let size = a.rows();
    if a.shape() != (size, size) || b.shape() != (size, size) || !size.is_multiple_of(n) {
        return Err(FmmError::Shape(format!(
            "blocked product needs square operands with size a multiple of {n}"
        )));
    }
    Ok(apply(scheme, n, a, b, recursive))
}

fn apply(
    scheme: &BilinearScheme,
    n: usize,
    a: &Matrix<f64>,
    b: &Matrix<f64>,
    recursive: bool,
) -> (Matrix<f64>, u64) {
    let size = a.rows();
    let m = size / n;
    let mut c = Matrix::zeros(size, size);
    let mut count = 0;
    for term in scheme.terms() {
        let mut left = Matrix::zeros(m, m);
        for (i, j, q) in term.alpha.iter() {
            left.add_block(
                0,
                0,
                &a.submatrix(i * m, j * m, m, m),
                &f64::from_rational(q),
            );
        }
        let mut right = Matrix::zeros(m, m);
        for (j, k, q) in term.beta.iter() {
            right.add_block(
                0,
                0,
                &b.submatrix(j * m, k * m, m, m),
                &f64::from_rational(q),
            );
        }
        let (t, c_count) = if recursive && m >= n && m.is_multiple_of(n) {
            apply(scheme, n, &left, &right, true)
        } else {
            let t = naive_mult(&left, &right).expect("blocks share a size");
            (t, (m * m * m) as u64)
        };
        count += c_count;
        for (i, k, q) in term.gamma.iter() {
            c.add_block(i * m, k * m, &t, &f64::from_rational(q));
        }
    }
    (c, count)
}

fn square_order(scheme: &BilinearScheme) -> Result<usize> {
    let [u, v, w] = scheme.dims().as_array();
    if u != v || v != w {
        return Err(FmmError::Shape(format!(
            "blocked application needs a square scheme, got {}",
            scheme.dims()
        )));
    }
    Ok(u)
}

#[derive(Clone, Debug)]
pub struct BenchReport {
    pub name: String,
    pub rank: usize,
    pub op_counts: OpCounts,
    pub size: usize,
    pub recursive: bool,
    pub levels: usize,
    pub multiplications: u64,
    pub naive_multiplications: u64,
    pub scheme_time: Duration,
    pub naive_time: Duration,
    pub max_abs_diff: f64,
}

impl fmt::Display for BenchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "scheme: {}", self.name)?;
        writeln!(f, "rank: {}", self.rank)?;
        writeln!(
            f,
            "op counts: multiplications={} additions={} scalar_multiplications={}",
            self.op_counts.multiplications,
            self.op_counts.additions,
            self.op_counts.scalar_multiplications
        )?;
        writeln!(
            f,
            "size: {} ({}, levels={})",
            self.size,
            if self.recursive {
                "recursive"
            } else {
                "single level"
            },
            self.levels
        )?;
        writeln!(
            f,
            "multiplications: {} vs naive {}",
            self.multiplications, self.naive_multiplications
        )?;
        writeln!(
            f,
            "time per product: scheme {:.3?} vs naive {:.3?}",
            self.scheme_time, self.naive_time
        )?;
        write!(f, "max |scheme - naive|: {:.3e}", self.max_abs_diff)
    }
}

/// Times `reps` products of seeded random `size x size` matrices with
/// entries in `[-1, 1]`.
pub fn run_bench(
    scheme: &BilinearScheme,
    size: usize,
    reps: usize,
    recursive: bool,
    seed: u64,
) -> Result<BenchReport> {
    let n = square_order(scheme)?;
    if size == 0 || !size.is_multiple_of(n) {
        return Err(FmmError::Shape(format!(
            "size {size} is not a multiple of {n}"
        )));
    }
    let reps = reps.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = Matrix::random_uniform(size, size, -1.0, 1.0, &mut rng);
    let b = Matrix::random_uniform(size, size, -1.0, 1.0, &mut rng);

    let start = Instant::now();
    let mut result = None;
    for _ in 0..reps {
        result = Some(blocked_mult(scheme, &a, &b, recursive)?);
    }
    let scheme_time = start.elapsed() / reps as u32;
    let (c, multiplications) = result.expect("at least one repetition");

    let start = Instant::now();
    let mut oracle = None;
    for _ in 0..reps {
        oracle = Some(naive_mult(&a, &b)?);
    }
    let naive_time = start.elapsed() / reps as u32;
    let oracle = oracle.expect("at least one repetition");

    let mut levels = 1;
    let mut m = size / n;
    while recursive && m >= n && m.is_multiple_of(n) {
        levels += 1;
        m /= n;
    }
    Ok(BenchReport {
        name: scheme.name().to_string(),
        rank: scheme.rank(),
        op_counts: scheme.op_counts(),
        size,
        recursive,
        levels,
        multiplications,
        naive_multiplications: (size * size * size) as u64,
        scheme_time,
        naive_time,
        max_abs_diff: c.max_abs_diff(&oracle),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{naive_scheme, strassen_scheme};

    #[test]
    fn strassen_single_level() {
        let r = run_bench(&strassen_scheme(), 2, 1, false, 0).unwrap();
        assert_eq!((r.multiplications, r.naive_multiplications), (7, 8));
        assert!(r.max_abs_diff < 1e-12);
    }

    #[test]
    fn strassen_recursive_counts_powers() {
        let r = run_bench(&strassen_scheme(), 4, 1, true, 0).unwrap();
        assert_eq!(r.multiplications, 49);
        assert_eq!(r.levels, 2);
        let r = run_bench(&strassen_scheme(), 16, 1, true, 0).unwrap();
        assert_eq!(r.multiplications, 7u64.pow(4));
        assert!(r.max_abs_diff < 1e-9);
    }

    #[test]
    fn one_level_with_naive_leaves() {
        let r = run_bench(&strassen_scheme(), 6, 1, false, 0).unwrap();
        assert_eq!(r.multiplications, 7 * 27);
        assert!(r.max_abs_diff < 1e-12);
    }

    #[test]
    fn size_errors() {
        assert!(run_bench(&strassen_scheme(), 3, 1, false, 0).is_err());
        assert!(run_bench(&naive_scheme(1, 2, 2).unwrap(), 2, 1, false, 0).is_err());
    }
}
