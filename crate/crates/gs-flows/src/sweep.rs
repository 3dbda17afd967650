//! The spectral-sequence sweeping algorithm: walk the diagonals of a
//! strictly upper triangular boundary operator, mark primary and
//! change-of-basis pivots, and perform the basis changes that zero the
//! latter, recording the full trace of matrices and transformations.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::algebra::IntMatrix;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SweepError {
    #[error("boundary operator is not strictly upper triangular")]
    NotUpperTriangular,
    #[error("boundary entries must connect consecutive gradings")]
    NonConsecutiveEntry,
    #[error("boundary operator does not square to zero")]
    BoundaryNotSquareZero,
    #[error("non-unimodular change of basis: pivot {pivot} does not divide {entry} at round {round}")]
    NonUnimodularChangeOfBasis {
        pivot: BigInt,
        entry: BigInt,
        round: usize,
    },
    #[error("grading vector has length {got}, matrix has {want} columns")]
    GradingMismatch { got: usize, want: usize },
}

/// Classification of a marked entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum PivotKind {
    Primary,
    ChangeOfBasis,
}

/// A marked pivot. `row` and `col` are 1-based (matching the filtration
/// positions used throughout the source material); `round` is the diagonal
/// on which the mark happened, so `col − row = round`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PivotMark {
    pub row: usize,
    pub col: usize,
    pub round: usize,
    pub kind: PivotKind,
    /// Entry value at marking time.
    pub value: BigInt,
}

/// Complete record of one sweep.
#[derive(Debug, Clone)]
pub struct SweepTrace {
    /// `matrices[r]` is Δ^{r+1}, the state *before* sweeping diagonal r+1;
    /// `matrices[0]` is the input. One extra final state is appended.
    pub matrices: Vec<IntMatrix>,
    /// Change-of-basis matrix applied while sweeping diagonal r+1
    /// (identity when the diagonal forced no basis change).
    pub transforms: Vec<IntMatrix>,
    /// Cumulative products T^1 ⋯ T^r; `basis[r]` expresses the σ-chains of
    /// round r+1 in the original generator basis.
    pub basis: Vec<IntMatrix>,
    pub pivots: Vec<PivotMark>,
    pub gradings: Vec<u8>,
}

impl SweepTrace {
    pub fn primary_pivots(&self) -> Vec<&PivotMark> {
        self.pivots
            .iter()
            .filter(|p| p.kind == PivotKind::Primary)
            .collect()
    }

    pub fn pivots_on_diagonal(&self, round: usize) -> Vec<&PivotMark> {
        self.pivots.iter().filter(|p| p.round == round).collect()
    }

    /// Primary pivot positions as (row, col, round) triples, sorted.
    pub fn primary_positions(&self) -> Vec<(usize, usize, usize)> {
        let mut v: Vec<(usize, usize, usize)> = self
            .primary_pivots()
            .iter()
            .map(|p| (p.row, p.col, p.round))
            .collect();
        v.sort_unstable();
        v
    }

    pub fn final_matrix(&self) -> &IntMatrix {
        self.matrices.last().expect("trace holds at least the input")
    }

    /// σ-chain of column j (1-based) at round r (1-based): the column of the
    /// cumulative basis matrix, as (generator position, coefficient) pairs.
    pub fn sigma_chain(&self, round: usize, col: usize) -> Vec<(usize, BigInt)> {
        let b = if round <= 1 {
            None
        } else {
            self.basis.get(round - 2)
        };
        match b {
            None => vec![(col, num_traits::One::one())],
            Some(b) => b
                .col_entries(col - 1)
                .into_iter()
                .map(|(r, v)| (r + 1, v))
                .collect(),
        }
    }

    /// Primary pivot in column `col` (1-based), if any.
    pub fn primary_in_col(&self, col: usize) -> Option<&PivotMark> {
        self.pivots
            .iter()
            .find(|p| p.kind == PivotKind::Primary && p.col == col)
    }

    /// Primary pivot in row `row` (1-based), if any.
    pub fn primary_in_row(&self, row: usize) -> Option<&PivotMark> {
        self.pivots
            .iter()
            .find(|p| p.kind == PivotKind::Primary && p.row == row)
    }
}

fn precheck(delta: &IntMatrix, gradings: &[u8]) -> Result<(), SweepError> {
    if gradings.len() != delta.cols() {
        return Err(SweepError::GradingMismatch {
            got: gradings.len(),
            want: delta.cols(),
        });
    }
    if !delta.is_strictly_upper_triangular() {
        return Err(SweepError::NotUpperTriangular);
    }
    for (r, c, _) in delta.iter() {
        if gradings[c] != gradings[r] + 1 {
            return Err(SweepError::NonConsecutiveEntry);
        }
    }
    match delta.mul(delta) {
        Ok(sq) if sq.is_zero() => Ok(()),
        _ => Err(SweepError::BoundaryNotSquareZero),
    }
}

/// Run the sweep over every diagonal of Δ.
pub fn sweep(delta: &IntMatrix, gradings: &[u8]) -> Result<SweepTrace, SweepError> {
    precheck(delta, gradings)?;
    let n = delta.cols();
    let mut current = delta.clone();
    let mut trace = SweepTrace {
        matrices: vec![current.clone()],
        transforms: Vec::new(),
        basis: Vec::new(),
        pivots: Vec::new(),
        gradings: gradings.to_vec(),
    };
    let mut cumulative = IntMatrix::identity(n);
    let last_round = n.saturating_sub(1);
    for round in 1..=last_round {
        // Markup phase: classify every nonzero entry on the diagonal.
        let mut marks: Vec<PivotMark> = Vec::new();
        for col in (round + 1)..=n {
            let row = col - round;
            let value = current.at(row - 1, col - 1);
            if value.is_zero() {
                continue;
            }
            let primary_below = trace.pivots.iter().any(|p| {
                p.kind == PivotKind::Primary && p.col == col && p.row > row
            });
            if primary_below {
                continue; // left unmarked
            }
            let primary_left = trace
                .pivots
                .iter()
                .any(|p| p.kind == PivotKind::Primary && p.row == row && p.col < col);
            let kind = if primary_left {
                PivotKind::ChangeOfBasis
            } else {
                PivotKind::Primary
            };
            marks.push(PivotMark { row, col, round, kind, value });
        }
        // Change-of-basis phase, in increasing column order. Each basis
        // change is the conjugation by an elementary matrix, applied as the
        // paired column and row operations.
        let mut transform = IntMatrix::identity(n);
        for mark in &marks {
            if mark.kind != PivotKind::ChangeOfBasis {
                continue;
            }
            let primary = trace
                .pivots
                .iter()
                .find(|p| p.kind == PivotKind::Primary && p.row == mark.row && p.col < mark.col)
                .expect("change-of-basis mark implies primary in row")
                .clone();
            let pv = current.at(primary.row - 1, primary.col - 1);
            let target = current.at(mark.row - 1, mark.col - 1);
            if target.is_zero() {
                continue;
            }
            let (q, rem) = num_integer::Integer::div_rem(&target, &pv);
            if !rem.is_zero() {
                return Err(SweepError::NonUnimodularChangeOfBasis {
                    pivot: pv.abs(),
                    entry: target,
                    round,
                });
            }
            let coeff = -q;
            current.col_combine_mut(primary.col - 1, mark.col - 1, &coeff);
            current.row_combine_mut(mark.col - 1, primary.col - 1, &(-coeff.clone()));
            transform.col_combine_mut(primary.col - 1, mark.col - 1, &coeff);
        }
        cumulative = cumulative
            .mul(&transform)
            .expect("square matrices of equal size");
        trace.pivots.extend(marks);
        trace.transforms.push(transform);
        trace.basis.push(cumulative.clone());
        trace.matrices.push(current.clone());
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_complex;
    use crate::fixtures;

    fn run(flow: &crate::flow::FlowSpec) -> SweepTrace {
        let complex = build_complex(flow).unwrap();
        sweep(&complex.boundary, &complex.gradings()).unwrap()
    }

    #[test]
    fn cone_example_pivots() {
        let trace = run(&fixtures::cone_sweep());
        assert_eq!(
            trace.primary_positions(),
            vec![(2, 5, 3), (7, 10, 3), (8, 9, 1)]
        );
    }

    #[test]
    fn whitney_example_pivots() {
        let trace = run(&fixtures::whitney_sweep());
        assert_eq!(
            trace.primary_positions(),
            vec![(2, 5, 3), (3, 7, 4), (4, 6, 2)]
        );
    }

    #[test]
    fn double_crossing_example_pivots() {
        let trace = run(&fixtures::double_crossing());
        assert_eq!(
            trace.primary_positions(),
            vec![(3, 9, 6), (5, 11, 6), (7, 10, 3), (8, 13, 5)]
        );
    }

    #[test]
    fn primary_pivots_are_unit_and_unique_per_line() {
        for flow in fixtures::all_sweep_fixtures() {
            let trace = run(&flow);
            let primaries = trace.primary_pivots();
            for p in &primaries {
                assert_eq!(p.value.abs(), num_bigint::BigInt::from(1), "{}", flow.name);
            }
            for (i, a) in primaries.iter().enumerate() {
                for b in primaries.iter().skip(i + 1) {
                    assert_ne!(a.row, b.row, "{}", flow.name);
                    assert_ne!(a.col, b.col, "{}", flow.name);
                }
            }
        }
    }

    #[test]
    fn diagonal_invariant_holds() {
        for flow in fixtures::all_sweep_fixtures() {
            let trace = run(&flow);
            for p in &trace.pivots {
                assert_eq!(p.col - p.row, p.round);
            }
        }
    }

    #[test]
    fn change_of_basis_pivots_are_zeroed_in_next_matrix() {
        for flow in fixtures::all_sweep_fixtures() {
            let trace = run(&flow);
            for p in &trace.pivots {
                if p.kind == PivotKind::ChangeOfBasis {
                    let after = &trace.matrices[p.round];
                    assert!(after.at(p.row - 1, p.col - 1).is_zero());
                }
            }
        }
    }

    #[test]
    fn resweep_of_final_matrix_adds_no_pivots() {
        for flow in fixtures::all_sweep_fixtures() {
            let trace = run(&flow);
            let again = sweep(trace.final_matrix(), &trace.gradings).unwrap();
            assert_eq!(again.primary_positions(), trace.primary_positions());
        }
    }

    #[test]
    fn sweep_of_zero_matrix_is_trivial() {
        let trace = sweep(&IntMatrix::zero(4, 4), &[0, 0, 1, 1]).unwrap();
        assert!(trace.pivots.is_empty());
        assert!(trace.final_matrix().is_zero());
    }

    #[test]
    fn rejects_non_triangular_input() {
        let mut m = IntMatrix::zero(2, 2);
        m.set(1, 0, num_bigint::BigInt::from(1));
        assert_eq!(
            sweep(&m, &[0, 1]).unwrap_err(),
            SweepError::NotUpperTriangular
        );
    }

    #[test]
    fn sigma_chain_tracks_basis_change() {
        // Whitney example: column 7 absorbs column 6 at round 3.
        let trace = run(&fixtures::whitney_sweep());
        let chain = trace.sigma_chain(4, 7);
        assert_eq!(chain.len(), 2);
        assert!(chain.iter().any(|(pos, _)| *pos == 6));
        assert!(chain.iter().any(|(pos, _)| *pos == 7));
    }
}
