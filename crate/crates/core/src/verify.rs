//! Exact correctness checks for schemes.
//!
//! [`brent_check`] decides correctness symbolically. [`random_eval_check`]
//! is an independent probabilistic check that runs the scheme on random
//! integer matrices and compares against [`naive_mult`].

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{FmmError, Result};
use crate::matrix::{Matrix, Scalar};
use crate::rational::{render_rational, Rational};
use crate::scheme::BilinearScheme;

const MAX_REPORTED_FAILURES: usize = 10;

/// One violated Brent equation.
#[derive(Clone, Debug, PartialEq)]
pub struct BrentFailure {
    /// `(i, j)` position in alpha.
    pub alpha: (usize, usize),
    /// `(j', k)` position in beta.
    pub beta: (usize, usize),
    /// `(i', k')` position in gamma.
    pub gamma: (usize, usize),
    pub expected: u8,
    pub got: Rational,
}

impl fmt::Display for BrentFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "alpha{:?} beta{:?} gamma{:?}: expected {}, got {}",
            self.alpha,
            self.beta,
            self.gamma,
            self.expected,
            render_rational(&self.got)
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BrentReport {
    pub passed: bool,
    /// `(u*v) * (v*w) * (u*w)`.
    pub total_equations: u64,
    /// Number of violated equations.
    pub failure_count: u64,
    /// The first few violations, in index order.
    pub first_failures: Vec<BrentFailure>,
}

/// Checks every Brent equation
///
/// ```text
/// sum_l alpha_l[i,j] * beta_l[j',k] * gamma_l[i',k'] = [i=i'][j=j'][k=k']
/// ```
///
/// exactly. Only nonzero coefficient triples are accumulated, so the cost is
/// `sum_l nnz(alpha_l) * nnz(beta_l) * nnz(gamma_l)` rather than the number
/// of equations.
pub fn brent_check(scheme: &BilinearScheme) -> BrentReport {
    let d = scheme.dims();
    let (u, v, w) = (d.u() as u64, d.v() as u64, d.w() as u64);
    let (vw, uw) = (v * w, u * w);
    let key = |a: u64, b: u64, c: u64| (a * vw + b) * uw + c;

    let mut sums: HashMap<u64, Rational> = HashMap::new();
    for term in scheme.terms() {
        for (i, j, a) in term.alpha.iter() {
            let ka = i as u64 * v + j as u64;
            for (j2, k, b) in term.beta.iter() {
                let kb = j2 as u64 * w + k as u64;
                let ab = a * b;
                for (i2, k2, g) in term.gamma.iter() {
                    let kc = i2 as u64 * w + k2 as u64;
                    *sums.entry(key(ka, kb, kc)).or_insert_with(Rational::zero) += &ab * g;
                }
            }
        }
    }

    let mut failures: Vec<(u64, u8, Rational)> = Vec::new();
    for i in 0..u {
        for j in 0..v {
            for k in 0..w {
                let at = key(i * v + j, j * w + k, i * w + k);
                let got = sums.remove(&at).unwrap_or_else(Rational::zero);
                if !got.is_one() {
                    failures.push((at, 1, got));
                }
            }
        }
    }
    failures.extend(
        sums.into_iter()
            .filter(|(_, q)| !q.is_zero())
            .map(|(at, q)| (at, 0, q)),
    );
    failures.sort_by_key(|f| f.0);

    let decode = |at: u64| {
        let (ab, c) = (at / uw, at % uw);
        let (a, b) = (ab / vw, ab % vw);
        let pair = |x: u64, cols: u64| ((x / cols) as usize, (x % cols) as usize);
        (pair(a, v), pair(b, w), pair(c, w))
    };
    let failure_count = failures.len() as u64;
    let first_failures = failures
        .into_iter()
        .take(MAX_REPORTED_FAILURES)
        .map(|(at, expected, got)| {
            let (alpha, beta, gamma) = decode(at);
            BrentFailure {
                alpha,
                beta,
                gamma,
                expected,
                got,
            }
        })
        .collect::<Vec<_>>();

    BrentReport {
        passed: first_failures.is_empty(),
        total_equations: (u * v) * vw * uw,
        failure_count,
        first_failures,
    }
}

/// Textbook triple-loop product.
pub fn naive_mult<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    if a.cols() != b.rows() {
        return Err(FmmError::Shape(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let mut c: Matrix<T> = Matrix::zeros(a.rows(), b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let aij = &a[(i, j)];
            if aij.is_zero() {
                continue;
            }
            for k in 0..b.cols() {
                let cell = &mut c[(i, k)];
                *cell = cell.clone() + aij.clone() * b[(j, k)].clone();
            }
        }
    }
    Ok(c)
}

/// Runs the scheme on concrete operands.
pub fn evaluate<T: Scalar>(
    scheme: &BilinearScheme,
    a: &Matrix<T>,
    b: &Matrix<T>,
) -> Result<Matrix<T>> {
    evaluate_counted(scheme, a, b).map(|(c, _)| c)
}

/// Like [`evaluate`], also returning the number of operand-value products
/// performed (always equal to the rank).
pub fn evaluate_counted<T: Scalar>(
    scheme: &BilinearScheme,
    a: &Matrix<T>,
    b: &Matrix<T>,
) -> Result<(Matrix<T>, usize)> {
    let d = scheme.dims();
    if a.shape() != (d.u(), d.v()) || b.shape() != (d.v(), d.w()) {
        return Err(FmmError::Shape(format!(
            "scheme {d} cannot take {}x{} by {}x{} operands",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let mut c: Matrix<T> = Matrix::zeros(d.u(), d.w());
    let mut products = 0;
    for term in scheme.terms() {
        let left = linear_form(&term.alpha, a);
        let right = linear_form(&term.beta, b);
        let t = left * right;
        products += 1;
        for (i, k, g) in term.gamma.iter() {
            let cell = &mut c[(i, k)];
            *cell = cell.clone() + scaled(g, &t);
        }
    }
    Ok((c, products))
}

fn linear_form<T: Scalar>(coeff: &crate::scheme::CoeffMatrix, m: &Matrix<T>) -> T {
    coeff
        .iter()
        .fold(T::zero(), |acc, (r, c, q)| acc + scaled(q, &m[(r, c)]))
}

fn scaled<T: Scalar>(q: &Rational, x: &T) -> T {
    if q.is_one() {
        x.clone()
    } else if (-q).is_one() {
        T::zero() - x.clone()
    } else {
        T::from_rational(q) * x.clone()
    }
}

/// First disagreement found by [`random_eval_check`].
#[derive(Clone, Debug, PartialEq)]
pub struct EvalMismatch {
    pub left: Matrix<Rational>,
    pub right: Matrix<Rational>,
    pub cell: (usize, usize),
    pub scheme_value: Rational,
    pub oracle_value: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvalReport {
    /// Trials actually run; stops at the first mismatch.
    pub trials: usize,
    pub all_equal: bool,
    pub mismatch_example: Option<EvalMismatch>,
}

/// Operand entries for random checks are drawn from this closed range.
pub const RANDOM_ENTRY_RANGE: (i64, i64) = (-9, 9);

/// Compares [`evaluate`] with [`naive_mult`] on `trials` seeded random
/// integer operand pairs.
pub fn random_eval_check(scheme: &BilinearScheme, trials: usize, seed: u64) -> Result<EvalReport> {
    if trials == 0 {
        return Err(FmmError::Parameter("trials must be at least 1".into()));
    }
    let d = scheme.dims();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = RANDOM_ENTRY_RANGE;
    for trial in 1..=trials {
        let left = Matrix::random_int(d.u(), d.v(), lo, hi, &mut rng);
        let right = Matrix::random_int(d.v(), d.w(), lo, hi, &mut rng);
        let got = evaluate(scheme, &left, &right)?;
        let want = naive_mult(&left, &right)?;
        let bad = (0..d.u())
            .flat_map(|i| (0..d.w()).map(move |k| (i, k)))
            .find(|&cell| got[cell] != want[cell]);
        if let Some(cell) = bad {
            return Ok(EvalReport {
                trials: trial,
                all_equal: false,
                mismatch_example: Some(EvalMismatch {
                    scheme_value: got[cell].clone(),
                    oracle_value: want[cell].clone(),
                    left,
                    right,
                    cell,
                }),
            });
        }
    }
    Ok(EvalReport {
        trials,
        all_equal: true,
        mismatch_example: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{naive_scheme, strassen_scheme};
    use crate::rational::int;

    fn ints(rows: Vec<Vec<i64>>) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(int).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn naive_mult_hand_case() {
        let a = ints(vec![vec![1, 2], vec![3, 4]]);
        let b = ints(vec![vec![5, 6], vec![7, 8]]);
        assert_eq!(
            naive_mult(&a, &b).unwrap(),
            ints(vec![vec![19, 22], vec![43, 50]])
        );
    }

    #[test]
    fn naive_mult_identity_and_scalar() {
        let a = ints(vec![vec![1, -2, 3], vec![4, 5, -6]]);
        assert_eq!(naive_mult(&Matrix::identity(2), &a).unwrap(), a);
        assert_eq!(
            naive_mult(&ints(vec![vec![-3]]), &ints(vec![vec![7]])).unwrap(),
            ints(vec![vec![-21]])
        );
        assert!(naive_mult(&a, &a).is_err());
    }

    #[test]
    fn strassen_passes() {
        let report = brent_check(&strassen_scheme());
        assert!(report.passed);
        assert_eq!(report.total_equations, 64);
        assert_eq!(report.failure_count, 0);
    }

    #[test]
    fn naive_345_equation_count() {
        let report = brent_check(&naive_scheme(3, 4, 5).unwrap());
        assert!(report.passed);
        assert_eq!(report.total_equations, 3600);
    }

    #[test]
    fn every_sign_flip_fails() {
        let s = strassen_scheme();
        let mut checked = 0;
        for (l, term) in s.terms().iter().enumerate() {
            for (factor, coeff) in term.factors() {
                for (r, c, _) in coeff.iter() {
                    let mutated = crate::testing::flip_sign(&s, l, factor, r, c);
                    let report = brent_check(&mutated);
                    assert!(
                        !report.passed,
                        "flip at term {l} {factor} ({r},{c}) went unnoticed"
                    );
                    assert!(!report.first_failures.is_empty());
                    checked += 1;
                }
            }
        }
        assert_eq!(checked, 12 + 12 + 12);
    }

    #[test]
    fn evaluate_identity() {
        let i2: Matrix<Rational> = Matrix::identity(2);
        assert_eq!(evaluate(&strassen_scheme(), &i2, &i2).unwrap(), i2);
    }

    #[test]
    fn evaluate_counts_rank() {
        let s = strassen_scheme();
        let a: Matrix<Rational> = Matrix::identity(2);
        let (_, n) = evaluate_counted(&s, &a, &a).unwrap();
        assert_eq!(n, 7);
    }

    #[test]
    fn evaluate_rejects_wrong_shape() {
        let a: Matrix<Rational> = Matrix::identity(3);
        assert!(evaluate(&strassen_scheme(), &a, &a).is_err());
    }

    #[test]
    fn random_check_detects_mutation() {
        let s = strassen_scheme();
        assert!(random_eval_check(&s, 100, 1).unwrap().all_equal);
        let bad = crate::testing::flip_sign(&s, 3, "gamma", 0, 0);
        let report = random_eval_check(&bad, 100, 1).unwrap();
        assert!(!report.all_equal);
        assert!(report.mismatch_example.is_some());
    }

    #[test]
    fn random_check_is_deterministic() {
        let s = naive_scheme(7, 7, 7).unwrap();
        let a = random_eval_check(&s, 10, 7).unwrap();
        assert!(a.all_equal);
        assert_eq!(a, random_eval_check(&s, 10, 7).unwrap());
        let bad = crate::testing::flip_sign(&strassen_scheme(), 0, "alpha", 0, 0);
        assert_eq!(
            random_eval_check(&bad, 5, 3).unwrap(),
            random_eval_check(&bad, 5, 3).unwrap()
        );
    }

    #[test]
    fn zero_trials_rejected() {
        assert!(random_eval_check(&strassen_scheme(), 0, 1).is_err());
    }
}
