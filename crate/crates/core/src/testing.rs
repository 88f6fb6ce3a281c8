//! Helpers for building deliberately broken schemes in tests.

use num_traits::Zero;

use crate::error::Result;
use crate::rational::Rational;
use crate::scheme::{BilinearScheme, MulTerm};

/// Returns `scheme` with the sign of one coefficient flipped.
///
/// Panics if the addressed coefficient is zero or `factor` is not one of
/// `alpha`, `beta`, `gamma`.
pub fn flip_sign(
    scheme: &BilinearScheme,
    term: usize,
    factor: &str,
    row: usize,
    col: usize,
) -> BilinearScheme {
    let mut terms: Vec<MulTerm> = scheme.terms().to_vec();
    let t = &mut terms[term];
    let coeff = match factor {
        "alpha" => &mut t.alpha,
        "beta" => &mut t.beta,
        "gamma" => &mut t.gamma,
        other => panic!("unknown factor {other}"),
    };
    assert!(
        coeff.negate_entry(row, col),
        "no coefficient at ({row}, {col})"
    );
    BilinearScheme::new(
        scheme.dims(),
        terms,
        format!("{}-mutated", scheme.name()),
        format!(
            "{}; sign flipped at term {term} {factor}({row},{col})",
            scheme.provenance()
        ),
    )
    .expect("sign flip keeps the scheme well-formed")
}

/// Returns `scheme` with one coefficient replaced by `value` (added if the
/// position was empty). Fails if the change leaves a factor empty.
pub fn set_coefficient(
    scheme: &BilinearScheme,
    term: usize,
    factor: &str,
    row: usize,
    col: usize,
    value: Rational,
) -> Result<BilinearScheme> {
    let mut terms: Vec<MulTerm> = scheme.terms().to_vec();
    let t = &mut terms[term];
    let coeff = match factor {
        "alpha" => &mut t.alpha,
        "beta" => &mut t.beta,
        "gamma" => &mut t.gamma,
        other => panic!("unknown factor {other}"),
    };
    let old = coeff.get(row, col).cloned().unwrap_or_else(Rational::zero);
    coeff.add(row, col, value - old);
    BilinearScheme::new(
        scheme.dims(),
        terms,
        format!("{}-mutated", scheme.name()),
        format!(
            "{}; coefficient replaced at term {term} {factor}({row},{col})",
            scheme.provenance()
        ),
    )
}
