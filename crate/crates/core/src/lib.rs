//! Matrix-multiplication algorithms as explicit bilinear schemes.
//!
//! A [`BilinearScheme`] lists the products of an algorithm together with
//! exact rational coefficients. The crate builds schemes ([`naive_scheme`],
//! [`strassen_scheme`], scheme files), transforms them ([`rotate`],
//! [`transpose_dual`], [`orient`], [`kronecker`]), combines them with the
//! padded 2x2 block construction ([`compose`]) and checks them exactly
//! ([`brent_check`], [`random_eval_check`]).
//!
//! ```
//! use fmm::{brent_check, compose, kronecker, naive_scheme, strassen_scheme};
//!
//! let s444 = kronecker(&strassen_scheme(), &strassen_scheme());
//! let (s777, report) = compose(
//!     4,
//!     3,
//!     &s444,
//!     &naive_scheme(4, 4, 3).unwrap(),
//!     &naive_scheme(3, 3, 4).unwrap(),
//! )
//! .unwrap();
//! assert_eq!(s777.rank(), 301);
//! assert_eq!(report.arithmetic(), "301 = 49 + 3·48 + 3·36");
//! assert!(brent_check(&s777).passed);
//! ```

pub mod algebra;
pub mod bench;
pub mod catalog;
pub mod cli;
pub mod compose;
pub mod error;
pub mod matrix;
pub mod padding;
pub mod rational;
pub mod scheme;
#[doc(hidden)]
pub mod testing;
pub mod verify;

pub use algebra::{kronecker, orient, rotate, transpose_dual, Orientation};
pub use catalog::{
    kron_bound, load_scheme, naive_scheme, prop1_bound, save_scheme, strassen_scheme, BoundsTable,
    SchemeSpec,
};
pub use compose::{
    compose, compose_with, make_block_plan, BlockPlan, ComposeOptions, CompositionReport,
};
pub use error::{FmmError, Result};
pub use matrix::{Matrix, Scalar};
pub use padding::{pad, peel, unpad, PeelMask};
pub use rational::Rational;
pub use scheme::{make_scheme, op_counts, BilinearScheme, CoeffMatrix, Dims, MulTerm, OpCounts};
pub use verify::{brent_check, evaluate, naive_mult, random_eval_check, BrentReport, EvalReport};
