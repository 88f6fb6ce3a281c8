//! Padded 2x2 block composition:
//! `<u+v,u+v,u+v> <= <u,u,u> + 3 <u,u,v> + 3 <v,v,u>` for `u > v`.
//!
//! The `(u+v)`-square operands are conceptually padded to `2u x 2u` and split
//! into `u x u` blocks, Strassen's seven block products are formed, and each
//! block product is shrunk to the rows and columns that can be nonzero. The
//! shrunk products are computed by the supplied schemes, reoriented as
//! needed, and spliced back into original coordinates. Padding never
//! materializes: it only exists in [`PaddingMap`].

use std::fmt;

use crate::algebra::orient;
use crate::error::{FmmError, Result};
use crate::padding::{PaddingMap, PeelMask};
use crate::scheme::{BilinearScheme, CoeffMatrix, Dims, MulTerm};
use crate::verify::brent_check;

/// `sign * X_{row+1, col+1}` for a block of a `2 x 2` block matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignedBlock {
    pub row: usize,
    pub col: usize,
    pub sign: i8,
}

impl SignedBlock {
    const fn new(row: usize, col: usize, sign: i8) -> Self {
        SignedBlock { row, col, sign }
    }
}

/// Which input scheme covers a summand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputClass {
    /// `<u,u,u>`
    Square,
    /// dims multiset `{u,u,v}`
    Uuv,
    /// dims multiset `{v,v,u}`
    Vvu,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    /// 1-based position among the seven block products.
    pub index: usize,
    /// Blocks of the left operand summed into this product's left factor.
    pub left_blocks: Vec<SignedBlock>,
    /// Blocks of the right operand summed into the right factor.
    pub right_blocks: Vec<SignedBlock>,
    /// Result blocks receiving the product.
    pub out_blocks: Vec<SignedBlock>,
    pub effective_dims: Dims,
    pub left_mask: PeelMask,
    pub right_mask: PeelMask,
    pub out_mask: PeelMask,
    pub class: InputClass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPlan {
    pub u: usize,
    pub v: usize,
    pub padded_size: usize,
    pub summands: Vec<Summand>,
}

type BlockSum = &'static [SignedBlock];

const fn b(row: usize, col: usize, sign: i8) -> SignedBlock {
    SignedBlock::new(row, col, sign)
}

// Strassen's seven products on 2x2 blocks: (left, right, result).
const STRASSEN_BLOCKS: [(BlockSum, BlockSum, BlockSum); 7] = [
    (
        &[b(0, 0, 1), b(1, 1, 1)],
        &[b(0, 0, 1), b(1, 1, 1)],
        &[b(0, 0, 1), b(1, 1, 1)],
    ),
    (
        &[b(0, 1, 1), b(1, 1, -1)],
        &[b(1, 0, 1), b(1, 1, 1)],
        &[b(0, 0, 1)],
    ),
    (
        &[b(1, 0, 1), b(0, 0, -1)],
        &[b(0, 0, 1), b(0, 1, 1)],
        &[b(1, 1, 1)],
    ),
    (
        &[b(0, 0, 1), b(0, 1, 1)],
        &[b(1, 1, 1)],
        &[b(0, 1, 1), b(0, 0, -1)],
    ),
    (
        &[b(0, 0, 1)],
        &[b(0, 1, 1), b(1, 1, -1)],
        &[b(0, 1, 1), b(1, 1, 1)],
    ),
    (
        &[b(1, 1, 1)],
        &[b(1, 0, 1), b(0, 0, -1)],
        &[b(0, 0, 1), b(1, 0, 1)],
    ),
    (
        &[b(1, 0, 1), b(1, 1, 1)],
        &[b(0, 0, 1)],
        &[b(1, 0, 1), b(1, 1, -1)],
    ),
];

/// Builds the seven block products for `u > v >= 1`, with the effective
/// shape of each after discarding padded rows and columns.
pub fn make_block_plan(u: usize, v: usize) -> Result<BlockPlan> {
    let map = PaddingMap::new(u, v)?;
    let extent = |blocks: &[SignedBlock], pick: fn(&SignedBlock) -> usize| {
        blocks
            .iter()
            .map(|blk| map.live_extent(pick(blk)))
            .max()
            .expect("every block sum is nonempty")
    };
    let row = |blk: &SignedBlock| blk.row;
    let col = |blk: &SignedBlock| blk.col;

    let mut summands = Vec::with_capacity(7);
    for (n, (left, right, out)) in STRASSEN_BLOCKS.iter().enumerate() {
        // An index survives only if every factor it touches can be nonzero there.
        let rows = extent(left, row).min(extent(out, row));
        let inner = extent(left, col).min(extent(right, row));
        let cols = extent(right, col).min(extent(out, col));
        let effective_dims = Dims::new(rows, inner, cols)?;
        let class = match effective_dims
            .as_array()
            .iter()
            .filter(|&&d| d == u)
            .count()
        {
            3 => InputClass::Square,
            2 => InputClass::Uuv,
            _ => InputClass::Vvu,
        };
        summands.push(Summand {
            index: n + 1,
            left_blocks: left.to_vec(),
            right_blocks: right.to_vec(),
            out_blocks: out.to_vec(),
            effective_dims,
            left_mask: PeelMask::leading(rows, inner, (u, u))?,
            right_mask: PeelMask::leading(inner, cols, (u, u))?,
            out_mask: PeelMask::leading(rows, cols, (u, u))?,
            class,
        });
    }
    Ok(BlockPlan {
        u,
        v,
        padded_size: map.padded_size(),
        summands,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionReport {
    pub u: usize,
    pub v: usize,
    pub result_rank: usize,
    /// Ranks of the `<u,u,u>`, `{u,u,v}` and `{v,v,u}` inputs.
    pub input_ranks: [usize; 3],
    /// `result_rank == r_uuu + 3 r_uuv + 3 r_vvu`
    pub bound_check: bool,
    /// Names of inputs accepted without Brent verification.
    pub unverified_inputs: Vec<String>,
}

impl CompositionReport {
    /// `r = r1 + 3·r2 + 3·r3`
    pub fn arithmetic(&self) -> String {
        let [a, b, c] = self.input_ranks;
        format!("{} = {a} + 3·{b} + 3·{c}", self.result_rank)
    }
}

impl fmt::Display for CompositionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.u + self.v;
        writeln!(f, "composed <{n},{n},{n}> from u={}, v={}", self.u, self.v)?;
        writeln!(f, "rank: {}", self.arithmetic())?;
        write!(
            f,
            "rank identity: {}",
            if self.bound_check {
                "holds"
            } else {
                "VIOLATED"
            }
        )?;
        for name in &self.unverified_inputs {
            write!(f, "\nwarning: input `{name}` was not verified")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComposeOptions {
    /// Require every input to pass Brent verification.
    pub strict: bool,
}

impl Default for ComposeOptions {
    fn default() -> Self {
        ComposeOptions { strict: true }
    }
}

/// [`compose_with`] in strict mode.
pub fn compose(
    u: usize,
    v: usize,
    s_uuu: &BilinearScheme,
    s_uuv: &BilinearScheme,
    s_vvu: &BilinearScheme,
) -> Result<(BilinearScheme, CompositionReport)> {
    compose_with(u, v, s_uuu, s_uuv, s_vvu, ComposeOptions::default())
}

/// Builds a `<u+v,u+v,u+v>` scheme of rank
/// `rank(s_uuu) + 3 rank(s_uuv) + 3 rank(s_vvu)`.
///
/// Output terms are ordered by block product, then by input term order.
pub fn compose_with(
    u: usize,
    v: usize,
    s_uuu: &BilinearScheme,
    s_uuv: &BilinearScheme,
    s_vvu: &BilinearScheme,
    options: ComposeOptions,
) -> Result<(BilinearScheme, CompositionReport)> {
    let plan = make_block_plan(u, v)?;
    let map = PaddingMap::new(u, v)?;
    let square = Dims::new(u, u, u)?;
    if s_uuu.dims() != square {
        return Err(FmmError::DimensionMismatch {
            expected: square,
            got: s_uuu.dims(),
        });
    }
    let uuv = Dims::new(u, u, v)?;
    if !s_uuv.dims().is_permutation_of(&uuv) {
        return Err(FmmError::DimensionMismatch {
            expected: uuv,
            got: s_uuv.dims(),
        });
    }
    let vvu = Dims::new(v, v, u)?;
    if !s_vvu.dims().is_permutation_of(&vvu) {
        return Err(FmmError::DimensionMismatch {
            expected: vvu,
            got: s_vvu.dims(),
        });
    }

    let mut unverified_inputs = Vec::new();
    for s in [s_uuu, s_uuv, s_vvu] {
        if options.strict {
            if !brent_check(s).passed {
                return Err(FmmError::Unverified(s.name().to_string()));
            }
        } else {
            unverified_inputs.push(s.name().to_string());
        }
    }

    let n = map.original_size();
    let mut terms = Vec::new();
    for summand in &plan.summands {
        let input = match summand.class {
            InputClass::Square => s_uuu,
            InputClass::Uuv => s_uuv,
            InputClass::Vvu => s_vvu,
        };
        let oriented = orient(input, summand.effective_dims)?;
        for term in oriented.terms() {
            terms.push(MulTerm::new(
                splice(
                    &term.alpha,
                    &summand.left_blocks,
                    &summand.left_mask,
                    &map,
                    n,
                )?,
                splice(
                    &term.beta,
                    &summand.right_blocks,
                    &summand.right_mask,
                    &map,
                    n,
                )?,
                splice(&term.gamma, &summand.out_blocks, &summand.out_mask, &map, n)?,
            ));
        }
    }

    let input_ranks = [s_uuu.rank(), s_uuv.rank(), s_vvu.rank()];
    let scheme = BilinearScheme::new(
        Dims::new(n, n, n)?,
        terms,
        format!("compose({u},{v})"),
        format!(
            "block composition u={u} v={v} of [{}] + 3x[{}] + 3x[{}]",
            s_uuu.name(),
            s_uuv.name(),
            s_vvu.name()
        ),
    )?;
    let result_rank = scheme.rank();
    let report = CompositionReport {
        u,
        v,
        result_rank,
        input_ranks,
        bound_check: result_rank == input_ranks[0] + 3 * input_ranks[1] + 3 * input_ranks[2],
        unverified_inputs,
    };
    Ok((scheme, report))
}

/// Places a block-local coefficient matrix into every signed block of the
/// full operand, dropping positions that land on padding.
fn splice(
    local: &CoeffMatrix,
    blocks: &[SignedBlock],
    mask: &PeelMask,
    map: &PaddingMap,
    n: usize,
) -> Result<CoeffMatrix> {
    let u = map.u();
    let mut global = CoeffMatrix::zeros(n, n);
    for (i, j, q) in local.iter() {
        if !mask.contains(i, j) {
            return Err(FmmError::PeelViolation { row: i, col: j });
        }
        for blk in blocks {
            let (Some(r), Some(c)) = (
                map.to_original(blk.row * u + i),
                map.to_original(blk.col * u + j),
            ) else {
                continue;
            };
            let value = if blk.sign < 0 { -q.clone() } else { q.clone() };
            global.add(r, c, value);
        }
    }
    Ok(global)
}

/// Strassen's algorithm read off the block plan with `1 x 1` blocks.
#[cfg(test)]
pub(crate) fn strassen_terms() -> Vec<MulTerm> {
    let lift = |blocks: &[SignedBlock]| {
        let mut m = CoeffMatrix::zeros(2, 2);
        for blk in blocks {
            m.add(blk.row, blk.col, crate::rational::int(blk.sign.into()));
        }
        m
    };
    STRASSEN_BLOCKS
        .iter()
        .map(|(l, r, o)| MulTerm::new(lift(l), lift(r), lift(o)))
        .collect()
}
