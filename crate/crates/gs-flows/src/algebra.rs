//! Exact integer matrices and the homological primitives built on them.
//!
//! Everything here is over `BigInt`: entries stay exact no matter how many
//! basis changes pile up. Matrices are sparse maps keyed `(col, row)` so the
//! column-driven sweep algorithms get ordered per-column views for free.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index out of bounds: ({row}, {col}) in {rows}x{cols} matrix")]
    OutOfBounds {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(BigInt),
    #[error("column combination would leave the integers: {0} does not divide {1}")]
    NonIntegralCombination(BigInt, BigInt),
    #[error("boundary operators do not compose to zero at grading {0}")]
    BoundaryNotSquareZero(usize),
}

/// Sparse exact-integer matrix. Indices are 0-based throughout the API;
/// report formatting is where 1-based positions appear.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    /// Keyed (col, row) so a column is a contiguous key range.
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.at(r, c).to_string()).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Build from dense rows of machine integers (test/fixture helper).
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = IntMatrix::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                if *v != 0 {
                    m.set(i, j, BigInt::from(*v));
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Entry value (zero if absent). Panics on out-of-range indices.
    pub fn at(&self, row: usize, col: usize) -> BigInt {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        self.entries
            .get(&(col, row))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn is_nonzero_at(&self, row: usize, col: usize) -> bool {
        self.entries.contains_key(&(col, row))
    }

    pub fn set(&mut self, row: usize, col: usize, value: BigInt) {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        if value.is_zero() {
            self.entries.remove(&(col, row));
        } else {
            self.entries.insert((col, row), value);
        }
    }

    /// Nonzero entries of one column, ordered by row.
    pub fn col_entries(&self, col: usize) -> Vec<(usize, BigInt)> {
        self.entries
            .range((col, 0)..=(col, usize::MAX))
            .map(|(&(_, r), v)| (r, v.clone()))
            .collect()
    }

    /// Nonzero entries of one row, ordered by column. O(nnz); fine at the
    /// problem sizes this library targets.
    pub fn row_entries(&self, row: usize) -> Vec<(usize, BigInt)> {
        self.entries
            .iter()
            .filter(|(&(_, r), _)| r == row)
            .map(|(&(c, _), v)| (c, v.clone()))
            .collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.entries.iter().map(|(&(c, r), v)| (r, c, v))
    }

    /// column[dst] += coeff * column[src], in place.
    pub fn col_combine_mut(&mut self, src: usize, dst: usize, coeff: &BigInt) {
        assert!(src < self.cols && dst < self.cols && src != dst);
        if coeff.is_zero() {
            return;
        }
        for (r, v) in self.col_entries(src) {
            let sum = self.at(r, dst) + coeff * v;
            self.set(r, dst, sum);
        }
    }

    /// row[dst] += coeff * row[src], in place.
    pub fn row_combine_mut(&mut self, src: usize, dst: usize, coeff: &BigInt) {
        assert!(src < self.rows && dst < self.rows && src != dst);
        if coeff.is_zero() {
            return;
        }
        for (c, v) in self.row_entries(src) {
            let sum = self.at(dst, c) + coeff * v;
            self.set(dst, c, sum);
        }
    }

    /// Pure column combination: returns a new matrix with
    /// column[dst] += coeff * column[src].
    pub fn col_combine(&self, src: usize, dst: usize, coeff: &BigInt) -> IntMatrix {
        let mut m = self.clone();
        m.col_combine_mut(src, dst, coeff);
        m
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix, AlgebraError> {
        if self.cols != rhs.rows {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = IntMatrix::zero(self.rows, rhs.cols);
        for j in 0..rhs.cols {
            for (k, rv) in rhs.col_entries(j) {
                for (i, lv) in self.col_entries(k) {
                    let acc = out.at(i, j) + &lv * &rv;
                    out.set(i, j, acc);
                }
            }
        }
        Ok(out)
    }

    /// Keep only the listed rows and columns (in the given order).
    pub fn submatrix(&self, keep_rows: &[usize], keep_cols: &[usize]) -> IntMatrix {
        let mut out = IntMatrix::zero(keep_rows.len(), keep_cols.len());
        for (nj, &j) in keep_cols.iter().enumerate() {
            for (r, v) in self.col_entries(j) {
                if let Some(ni) = keep_rows.iter().position(|&kr| kr == r) {
                    out.set(ni, nj, v);
                }
            }
        }
        out
    }

    /// True when every nonzero entry lies strictly above the diagonal.
    pub fn is_strictly_upper_triangular(&self) -> bool {
        self.entries.keys().all(|&(c, r)| r < c)
    }

    /// Exact inverse of a unimodular matrix by integer Gauss-Jordan.
    /// Every elimination step divides exactly because the pivot chain of a
    /// unimodular matrix can be reduced to ±1 by Euclid-style column steps.
    pub fn inverse_unimodular(&self) -> Result<IntMatrix, AlgebraError> {
        if self.rows != self.cols {
            return Err(AlgebraError::DimensionMismatch(format!(
                "inverse of {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = IntMatrix::identity(n);
        // Forward phase: reduce `a` to identity with row operations,
        // mirroring each operation on `inv`.
        for col in 0..n {
            // Euclid on rows >= col to get a ±1 (or at least gcd) pivot.
            loop {
                let mut best: Option<(usize, BigInt)> = None;
                for r in col..n {
                    let v = a.at(r, col);
                    if !v.is_zero() {
                        let better = match &best {
                            None => true,
                            Some((_, b)) => v.abs() < b.abs(),
                        };
                        if better {
                            best = Some((r, v));
                        }
                    }
                }
                let (pr, pv) = best.ok_or_else(|| {
                    AlgebraError::NotUnimodular(BigInt::zero())
                })?;
                if pr != col {
                    a.swap_rows(pr, col);
                    inv.swap_rows(pr, col);
                }
                let mut reduced = false;
                for r in (col + 1)..n {
                    let v = a.at(r, col);
                    if v.is_zero() {
                        continue;
                    }
                    let q = num_integer::Integer::div_floor(&v, &pv);
                    let c = -q;
                    a.row_combine_mut(col, r, &c);
                    inv.row_combine_mut(col, r, &c);
                    if !a.at(r, col).is_zero() {
                        reduced = true; // remainder left; loop again
                    }
                }
                if !reduced {
                    break;
                }
            }
            let pv = a.at(col, col);
            if !pv.abs().is_one() {
                return Err(AlgebraError::NotUnimodular(self.det()));
            }
            if pv < BigInt::zero() {
                a.negate_row(col);
                inv.negate_row(col);
            }
            for r in 0..col {
                let v = a.at(r, col);
                if !v.is_zero() {
                    let c = -v;
                    a.row_combine_mut(col, r, &c);
                    inv.row_combine_mut(col, r, &c);
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 == r2 {
            return;
        }
        let e1 = self.row_entries(r1);
        let e2 = self.row_entries(r2);
        for (c, _) in &e1 {
            self.set(r1, *c, BigInt::zero());
        }
        for (c, _) in &e2 {
            self.set(r2, *c, BigInt::zero());
        }
        for (c, v) in e1 {
            self.set(r2, c, v);
        }
        for (c, v) in e2 {
            self.set(r1, c, v);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for (c, v) in self.row_entries(r) {
            self.set(r, c, -v);
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|r| (0..n).map(|c| self.at(r, c)).collect())
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = num / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }

    /// T⁻¹ · M · T for unimodular T.
    pub fn conjugate(&self, t: &IntMatrix) -> Result<IntMatrix, AlgebraError> {
        if self.rows != self.cols || t.rows != t.cols || self.rows != t.rows {
            return Err(AlgebraError::DimensionMismatch(format!(
                "conjugate {}x{} by {}x{}",
                self.rows, self.cols, t.rows, t.cols
            )));
        }
        let d = t.det();
        if !d.abs().is_one() {
            return Err(AlgebraError::NotUnimodular(d));
        }
        let tinv = t.inverse_unimodular()?;
        tinv.mul(self)?.mul(t)
    }

    /// Integer rank (count of nonzero invariant factors).
    pub fn rank(&self) -> usize {
        self.smith_normal_form().rank()
    }

    pub fn smith_normal_form(&self) -> SmithNormalForm {
        smith(self)
    }

    /// Render in the plain text exchange format: a `rows cols` header line
    /// followed by one line of space-separated entries per row.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.at(r, c).to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<IntMatrix, AlgebraError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| AlgebraError::DimensionMismatch("empty matrix text".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|e| AlgebraError::DimensionMismatch(format!("bad header: {e}")))?;
        if dims.len() != 2 {
            return Err(AlgebraError::DimensionMismatch(
                "header must be 'rows cols'".into(),
            ));
        }
        let (rows, cols) = (dims[0], dims[1]);
        let mut m = IntMatrix::zero(rows, cols);
        for r in 0..rows {
            let line = lines.next().ok_or_else(|| {
                AlgebraError::DimensionMismatch(format!("missing row {r}"))
            })?;
            let vals: Vec<BigInt> = line
                .split_whitespace()
                .map(|t| t.parse::<BigInt>())
                .collect::<Result<_, _>>()
                .map_err(|e| AlgebraError::DimensionMismatch(format!("bad entry: {e}")))?;
            if vals.len() != cols {
                return Err(AlgebraError::DimensionMismatch(format!(
                    "row {r} has {} entries, expected {cols}",
                    vals.len()
                )));
            }
            for (c, v) in vals.into_iter().enumerate() {
                m.set(r, c, v);
            }
        }
        Ok(m)
    }
}

/// Diagonalised form D = U·M·V with the divisibility chain d1 | d2 | …
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithNormalForm {
    pub invariant_factors: Vec<BigInt>,
    pub rows: usize,
    pub cols: usize,
}

impl SmithNormalForm {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Invariant factors different from 1 (the torsion coefficients of the
    /// cokernel, once the free part is accounted for).
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors
            .iter()
            .filter(|d| !d.abs().is_one())
            .cloned()
            .collect()
    }
}

fn smith(m: &IntMatrix) -> SmithNormalForm {
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|r| (0..cols).map(|c| m.at(r, c)).collect())
        .collect();
    let mut factors: Vec<BigInt> = Vec::new();
    let mut t = 0usize;
    while t < rows.min(cols) {
        // Find a nonzero pivot of minimal absolute value in the trailing block.
        let mut pivot: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                if !a[r][c].is_zero() {
                    let better = match pivot {
                        None => true,
                        Some((pr, pc)) => a[r][c].abs() < a[pr][pc].abs(),
                    };
                    if better {
                        pivot = Some((r, c));
                    }
                }
            }
        }
        let Some((pr, pc)) = pivot else { break };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        // Clear row and column t with Euclid steps until both are clean.
        loop {
            let mut dirty = false;
            for r in t + 1..rows {
                if a[r][t].is_zero() {
                    continue;
                }
                let q = num_integer::Integer::div_floor(&a[r][t], &a[t][t]);
                for c in t..cols {
                    let v = &a[r][c] - &q * &a[t][c];
                    a[r][c] = v;
                }
                if !a[r][t].is_zero() {
                    // Remainder smaller than pivot: swap up and restart.
                    a.swap(t, r);
                    dirty = true;
                }
            }
            for c in t + 1..cols {
                if a[t][c].is_zero() {
                    continue;
                }
                let q = num_integer::Integer::div_floor(&a[t][c], &a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = &row[c] - &q * &row[t];
                    row[c] = v;
                }
                if !a[t][c].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, c);
                    }
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
        }
        // Enforce divisibility d_t | entries of the trailing block.
        let mut fixed = false;
        'scan: for r in t + 1..rows {
            for c in t + 1..cols {
                if !(&a[r][c] % &a[t][t]).is_zero() {
                    // Fold that row into row t and redo this pivot.
                    for cc in t..cols {
                        let v = &a[t][cc] + &a[r][cc];
                        a[t][cc] = v;
                    }
                    fixed = true;
                    break 'scan;
                }
            }
        }
        if fixed {
            continue;
        }
        let mut d = a[t][t].clone();
        if d < BigInt::zero() {
            d = -d;
        }
        factors.push(d);
        t += 1;
    }
    SmithNormalForm {
        invariant_factors: factors,
        rows,
        cols,
    }
}

/// Homology group presentation: free rank plus torsion coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".into()),
            n => parts.push(format!("Z^{n}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Homology of a finite chain complex given the chain ranks and boundary
/// operators. `boundaries[k]` is ∂_{k+1}: C_{k+1} → C_k, so there is one
/// fewer matrix than there are ranks.
pub fn homology_of_complex(
    ranks: &[usize],
    boundaries: &[IntMatrix],
) -> Result<Vec<HomologyGroup>, AlgebraError> {
    if ranks.is_empty() {
        return Ok(Vec::new());
    }
    if boundaries.len() + 1 != ranks.len() {
        return Err(AlgebraError::DimensionMismatch(format!(
            "{} ranks with {} boundary operators",
            ranks.len(),
            boundaries.len()
        )));
    }
    for (k, b) in boundaries.iter().enumerate() {
        if b.rows() != ranks[k] || b.cols() != ranks[k + 1] {
            return Err(AlgebraError::DimensionMismatch(format!(
                "boundary {} is {}x{}, expected {}x{}",
                k + 1,
                b.rows(),
                b.cols(),
                ranks[k],
                ranks[k + 1]
            )));
        }
    }
    for k in 0..boundaries.len().saturating_sub(1) {
        if !boundaries[k].mul(&boundaries[k + 1])?.is_zero() {
            return Err(AlgebraError::BoundaryNotSquareZero(k + 1));
        }
    }
    let snfs: Vec<SmithNormalForm> = boundaries.iter().map(|b| b.smith_normal_form()).collect();
    let mut out = Vec::with_capacity(ranks.len());
    for (k, &nk) in ranks.iter().enumerate() {
        let rank_in = if k < snfs.len() { snfs[k].rank() } else { 0 };
        let rank_out = if k > 0 { snfs[k - 1].rank() } else { 0 };
        let cycles = nk - rank_out;
        let betti = cycles - rank_in;
        let torsion = if k < snfs.len() {
            snfs[k].torsion()
        } else {
            Vec::new()
        };
        out.push(HomologyGroup { betti, torsion });
    }
    Ok(out)
}
