//! Spectral-sequence pages over the finest filtration: Z-modules, E-page
//! ranks, induced differentials, and the algebraic cancellation order read
//! off the primary pivots.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::algebra::{homology_of_complex, AlgebraError};
use crate::complex::GsComplex;
use crate::sweep::{PivotKind, SweepTrace};

#[derive(Debug, Error)]
pub enum PageError {
    #[error("filtration position {0} out of range")]
    PositionOutOfRange(usize),
    #[error("E-infinity ranks {survivors:?} do not match Betti numbers {betti:?}")]
    BettiMismatch {
        survivors: [usize; 3],
        betti: [usize; 3],
    },
    #[error("homology has torsion in grading {0}; E-infinity ranks cannot agree")]
    Torsion(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// With one generator per filtration level, Z^{r}_{p} is spanned by at most
/// one σ-chain; this reports whether that chain is present (rank 1) or the
/// module has collapsed to the previous filtration (rank 0).
///
/// `p` is the 0-based filtration degree, so the generator in question sits
/// at 1-based position `p + 1`.
pub fn z_module_rank(trace: &SweepTrace, r: usize, p: usize) -> Result<usize, PageError> {
    let n = trace.gradings.len();
    if p >= n {
        return Err(PageError::PositionOutOfRange(p));
    }
    let col = p + 1;
    // The chain survives into Z^r unless a primary pivot kills it from
    // below: a primary in column `col` strictly below row p − r + 1 means
    // the boundary of the chain escapes the allowed filtration window.
    let killed = trace.pivots.iter().any(|mark| {
        mark.kind == PivotKind::Primary
            && mark.col == col
            && r > 0
            && mark.row + r > col
    });
    Ok(if killed { 0 } else { 1 })
}

/// Rank of E^{r}_{p} for the finest filtration: 1 while the generator at
/// 1-based position p+1 is alive on page r, else 0. A primary pivot at
/// (i, j) on diagonal d kills both its row and column generators on page
/// d + 1.
pub fn e_module_rank(trace: &SweepTrace, r: usize, p: usize) -> Result<usize, PageError> {
    let n = trace.gradings.len();
    if p >= n {
        return Err(PageError::PositionOutOfRange(p));
    }
    let pos = p + 1;
    let dead = trace.pivots.iter().any(|mark| {
        mark.kind == PivotKind::Primary
            && (mark.col == pos || mark.row == pos)
            && mark.round < r
    });
    Ok(if dead { 0 } else { 1 })
}

/// The induced differential d^r: E^r_p → E^r_{p−r}, read from the swept
/// matrix of round r. Zero when either module has rank 0 or the entry is
/// out of range.
pub fn differential(trace: &SweepTrace, r: usize, p: usize) -> BigInt {
    if r == 0 || r > p {
        return BigInt::zero();
    }
    let matrix = match trace.matrices.get(r - 1) {
        Some(m) => m,
        None => trace.final_matrix(),
    };
    let (row, col) = (p - r, p); // 0-based (p−r+1, p+1)
    if col >= matrix.cols() {
        return BigInt::zero();
    }
    match (
        e_module_rank(trace, r, p),
        e_module_rank(trace, r, p - r),
    ) {
        (Ok(1), Ok(1)) => matrix.at(row, col),
        _ => BigInt::zero(),
    }
}

/// One algebraic cancellation: a unit primary pivot pairing the generator
/// at filtration degree `source` (0-based) with the one at `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraicCancellation {
    pub round: usize,
    /// 0-based filtration degree of the column generator (the one whose
    /// differential is an isomorphism).
    pub source: usize,
    /// 0-based filtration degree of the row generator it cancels against.
    pub target: usize,
}

/// The cancellation order: every ±1 primary pivot, sorted by round and then
/// by column.
pub fn algebraic_cancellations(trace: &SweepTrace) -> Vec<AlgebraicCancellation> {
    let mut out: Vec<AlgebraicCancellation> = trace
        .primary_pivots()
        .into_iter()
        .filter(|p| p.value.abs() == BigInt::one())
        .map(|p| AlgebraicCancellation {
            round: p.round,
            source: p.col - 1,
            target: p.row - 1,
        })
        .collect();
    out.sort_by_key(|c| (c.round, c.source));
    out
}

/// Per-grading ranks of the E^∞ page: survivors are the generators touched
/// by no primary pivot.
pub fn e_infinity_ranks(trace: &SweepTrace) -> [usize; 3] {
    let mut ranks = [0usize; 3];
    for (idx, &k) in trace.gradings.iter().enumerate() {
        let pos = idx + 1;
        let touched = trace.pivots.iter().any(|p| {
            p.kind == PivotKind::Primary && (p.col == pos || p.row == pos)
        });
        if !touched {
            ranks[k as usize] += 1;
        }
    }
    ranks
}

/// Checks that the E^∞ ranks equal the Betti numbers of the complex and
/// that its homology is torsion-free; returns the common ranks.
pub fn e_infinity_check(
    complex: &GsComplex,
    trace: &SweepTrace,
) -> Result<[usize; 3], PageError> {
    let survivors = e_infinity_ranks(trace);
    let (ranks, boundaries) = complex.graded_boundaries();
    let homology = homology_of_complex(&ranks, &boundaries)?;
    let mut betti = [0usize; 3];
    for (k, group) in homology.iter().enumerate().take(3) {
        betti[k] = group.betti;
        if !group.torsion.is_empty() {
            return Err(PageError::Torsion(k));
        }
    }
    if survivors == betti {
        Ok(survivors)
    } else {
        Err(PageError::BettiMismatch { survivors, betti })
    }
}
