//! Matrix classes: dense rectangular matrices over any entry type, monotone
//! column matrices, Ferrers shapes stored as column heights, and the
//! symbolic matrices `B(A)` and `JZ + A` built from them.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::poly::{Polynomial, VariableId};
use crate::{rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("matrix must have at least one row and one column")]
    Empty,
    #[error("row {row} has {got} entries, expected {expected}")]
    Ragged { row: usize, expected: usize, got: usize },
    #[error("column {col} increases between rows {row} and {}", row + 1)]
    NotMonotone { row: usize, col: usize },
    #[error("expected {expected} heights, got {got}")]
    HeightCount { expected: usize, got: usize },
    #[error("height {height} of column {col} exceeds row count {rows}")]
    HeightOutOfRange { col: usize, height: usize, rows: usize },
    #[error("heights decrease at column {col}")]
    HeightsNotMonotone { col: usize },
    #[error("operation needs at least {min} rows and columns")]
    TooSmall { min: usize },
    #[error("column index {index} out of range for {cols} columns")]
    ColumnOutOfRange { index: usize, cols: usize },
    #[error("composition must be nonempty with positive parts")]
    BadComposition,
    #[error("entry ({row}, {col}) is negative")]
    NegativeEntry { row: usize, col: usize },
    #[error("entry ({row}, {col}) is not 0 or 1")]
    NotBinary { row: usize, col: usize },
}

/// Dense row-major matrix. Indices are 0-based in the API; the variable
/// names generated from positions are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type RationalMatrix = Matrix<Rational>;
pub type SymbolicMatrix = Matrix<Polynomial>;

impl<T: Clone> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, MatrixError> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if m == 0 || n == 0 {
            return Err(MatrixError::Empty);
        }
        let mut data = Vec::with_capacity(m * n);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != n {
                return Err(MatrixError::Ragged { row, expected: n, got: r.len() });
            }
            data.extend(r);
        }
        Ok(Matrix { rows: m, cols: n, data })
    }

    pub fn from_fn<F: FnMut(usize, usize) -> T>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<U, F: FnMut(&T) -> U>(&self, f: F) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// The submatrix on the given (0-based) rows and columns, in that order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Deletes row `i` and column `j`.
    pub fn minor(&self, i: usize, j: usize) -> Self {
        let rs: Vec<usize> = (0..self.rows).filter(|&r| r != i).collect();
        let cs: Vec<usize> = (0..self.cols).filter(|&c| c != j).collect();
        self.submatrix(&rs, &cs)
    }
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    /// `count` zero rows appended at the bottom.
    pub fn pad_rows(&self, count: usize) -> Self {
        Matrix::from_fn(
            self.rows + count,
            self.cols,
            |i, j| {
                if i < self.rows {
                    self.get(i, j).clone()
                } else {
                    T::zero()
                }
            },
        )
    }

    /// `count` zero columns, appended or prepended.
    pub fn pad_cols(&self, count: usize, mode: PadMode) -> Self {
        Matrix::from_fn(self.rows, self.cols + count, |i, j| match mode {
            PadMode::Append if j < self.cols => self.get(i, j).clone(),
            PadMode::Prepend if j >= count => self.get(i, j - count).clone(),
            _ => T::zero(),
        })
    }
}

impl<T: Clone + One> Matrix<T> {
    pub fn ones(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::one())
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// Where [`Matrix::pad_cols`] places the new zero columns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PadMode {
    /// On the right. Keeps a monotone column matrix monotone.
    Append,
    /// On the left. Keeps a Ferrers shape a Ferrers shape.
    Prepend,
}

/// Rows of `A + zJ`-style symbolic matrices: `z_j + a_ij`.
pub fn build_jz_plus_a(a: &RationalMatrix) -> SymbolicMatrix {
    Matrix::from_fn(a.rows(), a.cols(), |i, j| {
        Polynomial::var(VariableId::z(j as u32 + 1)) + Polynomial::constant(a.get(i, j).clone())
    })
}

/// Evenly spaced rational grid `lo + (hi - lo) * k / steps`, `k = 0..=steps`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueRange {
    pub lo: Rational,
    pub hi: Rational,
    pub steps: u32,
}

impl ValueRange {
    pub fn integers(lo: i64, hi: i64) -> Self {
        ValueRange { lo: rat(lo), hi: rat(hi), steps: (hi - lo).max(0) as u32 }
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> Rational {
        if self.steps == 0 {
            return self.lo.clone();
        }
        let k = rng.gen_range(0..=self.steps);
        &self.lo + (&self.hi - &self.lo) * Rational::new(k.into(), self.steps.into())
    }
}

/// A rational matrix whose columns weakly decrease from top to bottom.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonotoneColumnMatrix(RationalMatrix);

impl MonotoneColumnMatrix {
    pub fn new(a: RationalMatrix) -> Result<Self, MatrixError> {
        for j in 0..a.cols() {
            for i in 1..a.rows() {
                if a.get(i, j) > a.get(i - 1, j) {
                    return Err(MatrixError::NotMonotone { row: i - 1, col: j });
                }
            }
        }
        Ok(MonotoneColumnMatrix(a))
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, MatrixError> {
        Self::new(Matrix::from_rows(rows)?)
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self, MatrixError> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        MonotoneColumnMatrix(Matrix::zeros(rows, cols))
    }

    /// Entries drawn from `range`, then every column sorted decreasing.
    /// Deterministic in `seed`.
    pub fn random(rows: usize, cols: usize, range: &ValueRange, seed: u64) -> Self {
        let mut rng = crate::sampling::trial_rng(seed, 0);
        let mut columns: Vec<Vec<Rational>> = (0..cols)
            .map(|_| {
                let mut c: Vec<Rational> = (0..rows).map(|_| range.sample(&mut rng)).collect();
                c.sort_by(|a, b| b.cmp(a));
                c
            })
            .collect();
        let m = Matrix::from_fn(rows, cols, |i, j| core::mem::take(&mut columns[j][i]));
        MonotoneColumnMatrix(m)
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> RationalMatrix {
        self.0
    }

    pub fn rows(&self) -> usize {
        self.0.rows()
    }

    pub fn cols(&self) -> usize {
        self.0.cols()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.data.iter().all(|x| !x.is_negative())
    }

    pub fn check_nonnegative(&self) -> Result<(), MatrixError> {
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                if self.0.get(i, j).is_negative() {
                    return Err(MatrixError::NegativeEntry { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    /// `A_S`: the columns in `s` (0-based) replaced by all-ones columns.
    pub fn columns_to_ones(&self, s: &BTreeSet<usize>) -> Result<Self, MatrixError> {
        if let Some(&index) = s.iter().find(|&&j| j >= self.cols()) {
            return Err(MatrixError::ColumnOutOfRange { index, cols: self.cols() });
        }
        Ok(self.columns_to_ones_mask(s.iter().fold(0u64, |m, &j| m | (1 << j))))
    }

    /// [`MonotoneColumnMatrix::columns_to_ones`] with the column set as a
    /// bit mask; bits beyond the column count are ignored.
    pub fn columns_to_ones_mask(&self, mask: u64) -> Self {
        let m = Matrix::from_fn(self.rows(), self.cols(), |i, j| {
            if mask >> j & 1 == 1 {
                Rational::one()
            } else {
                self.0.get(i, j).clone()
            }
        });
        MonotoneColumnMatrix(m)
    }

    pub fn pad_cols(&self, count: usize, mode: PadMode) -> Self {
        MonotoneColumnMatrix(self.0.pad_cols(count, mode))
    }

    /// `(z_j + a_ij)`.
    pub fn jz_plus_a(&self) -> SymbolicMatrix {
        build_jz_plus_a(&self.0)
    }

    /// Column sums `s_1..s_n`.
    pub fn column_sums(&self) -> Vec<Rational> {
        (0..self.cols()).map(|j| (0..self.rows()).fold(Rational::zero(), |acc, i| acc + self.0.get(i, j))).collect()
    }
}

impl fmt::Display for MonotoneColumnMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A `{0,1}` matrix with ones forming a top-justified shape whose column
/// heights weakly increase left to right. Entry `(i, j)` is 1 iff
/// `i < heights[j]` (0-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FerrersMatrix {
    rows: usize,
    heights: Vec<usize>,
}

impl FerrersMatrix {
    pub fn from_heights(rows: usize, cols: usize, heights: Vec<usize>) -> Result<Self, MatrixError> {
        if rows == 0 || cols == 0 {
            return Err(MatrixError::Empty);
        }
        if heights.len() != cols {
            return Err(MatrixError::HeightCount { expected: cols, got: heights.len() });
        }
        for (col, &h) in heights.iter().enumerate() {
            if h > rows {
                return Err(MatrixError::HeightOutOfRange { col, height: h, rows });
            }
            if col > 0 && h < heights[col - 1] {
                return Err(MatrixError::HeightsNotMonotone { col });
            }
        }
        Ok(FerrersMatrix { rows, heights })
    }

    /// Reads a `{0,1}` rational matrix, checking that it has Ferrers shape.
    pub fn from_matrix(a: &RationalMatrix) -> Result<Self, MatrixError> {
        let mut heights = Vec::with_capacity(a.cols());
        for j in 0..a.cols() {
            let mut h = 0;
            for i in 0..a.rows() {
                let x = a.get(i, j);
                if x.is_one() {
                    if h != i {
                        return Err(MatrixError::NotMonotone { row: i - 1, col: j });
                    }
                    h += 1;
                } else if !x.is_zero() {
                    return Err(MatrixError::NotBinary { row: i, col: j });
                }
            }
            heights.push(h);
        }
        Self::from_heights(a.rows(), a.cols(), heights)
    }

    /// The strictly upper triangular `E_n`, heights `0, 1, ..., n-1`.
    pub fn eulerian(n: usize) -> Result<Self, MatrixError> {
        Self::from_heights(n, n, (0..n).collect())
    }

    /// `E(v)`: `v_1` zero columns, then `v_2` columns of height `v_1`, then
    /// `v_3` columns of height `v_1 + v_2`, and so on.
    pub fn multiset_eulerian(v: &[usize]) -> Result<Self, MatrixError> {
        if v.is_empty() || v.contains(&0) {
            return Err(MatrixError::BadComposition);
        }
        let n: usize = v.iter().sum();
        let mut heights = Vec::with_capacity(n);
        let mut h = 0;
        for &part in v {
            heights.extend(core::iter::repeat_n(h, part));
            h += part;
        }
        Self::from_heights(n, n, heights)
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        FerrersMatrix { rows, heights: alloc::vec![0; cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.heights.len()
    }

    pub fn heights(&self) -> &[usize] {
        &self.heights
    }

    pub fn entry(&self, i: usize, j: usize) -> bool {
        i < self.heights[j]
    }

    /// Zeros in the last column.
    pub fn last_column_zeros(&self) -> usize {
        self.rows - self.heights[self.cols() - 1]
    }

    pub fn to_matrix(&self) -> RationalMatrix {
        Matrix::from_fn(
            self.rows,
            self.cols(),
            |i, j| if self.entry(i, j) { Rational::one() } else { Rational::zero() },
        )
    }

    pub fn to_monotone(&self) -> MonotoneColumnMatrix {
        MonotoneColumnMatrix(self.to_matrix())
    }

    /// `J - A^T`, an `n x m` Ferrers matrix.
    pub fn dual(&self) -> Self {
        let heights = (0..self.rows).map(|j| self.heights.iter().filter(|&&h| h <= j).count()).collect();
        FerrersMatrix { rows: self.cols(), heights }
    }

    /// Deletes the last row and last column.
    pub fn truncate(&self) -> Result<Self, MatrixError> {
        if self.rows < 2 || self.cols() < 2 {
            return Err(MatrixError::TooSmall { min: 2 });
        }
        let rows = self.rows - 1;
        let heights = self.heights[..self.cols() - 1].iter().map(|&h| h.min(rows)).collect();
        Ok(FerrersMatrix { rows, heights })
    }

    /// `count` zero rows at the bottom.
    pub fn pad_rows(&self, count: usize) -> Self {
        FerrersMatrix { rows: self.rows + count, heights: self.heights.clone() }
    }

    /// `count` zero columns on the left, which keeps the shape Ferrers.
    pub fn pad_cols(&self, count: usize) -> Self {
        let mut heights = alloc::vec![0; count];
        heights.extend_from_slice(&self.heights);
        FerrersMatrix { rows: self.rows, heights }
    }

    /// `B(A)`: `y_j` where `A` has a 1, `x_i` where it has a 0.
    pub fn build_b(&self) -> SymbolicMatrix {
        self.build_b_with(
            |i| Polynomial::var(VariableId::x(i as u32 + 1)),
            |j| Polynomial::var(VariableId::y(j as u32 + 1)),
        )
    }

    /// `B(A; r; c)` with arbitrary row and column entries, e.g. `B(A; 1; y)`
    /// or the role-swapped `B(A; y; x)`.
    pub fn build_b_with<R, C>(&self, row: R, col: C) -> SymbolicMatrix
    where
        R: Fn(usize) -> Polynomial,
        C: Fn(usize) -> Polynomial,
    {
        let rv: Vec<Polynomial> = (0..self.rows).map(row).collect();
        let cv: Vec<Polynomial> = (0..self.cols()).map(col).collect();
        Matrix::from_fn(self.rows, self.cols(), |i, j| if self.entry(i, j) { cv[j].clone() } else { rv[i].clone() })
    }

    /// All `m x n` Ferrers matrices, heights in lexicographic order. There are
    /// `C(m + n, n)` of them.
    pub fn enumerate(rows: usize, cols: usize) -> Vec<FerrersMatrix> {
        let mut out = Vec::new();
        let mut h = alloc::vec![0usize; cols];
        loop {
            out.push(FerrersMatrix { rows, heights: h.clone() });
            // Next weakly increasing sequence in lex order.
            let Some(p) = (0..cols).rev().find(|&p| h[p] < rows) else {
                break;
            };
            let v = h[p] + 1;
            for x in &mut h[p..] {
                *x = v;
            }
        }
        out
    }
}

impl fmt::Display for FerrersMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("/")?;
            }
            for j in 0..self.cols() {
                f.write_str(if self.entry(i, j) { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn worked_example() -> FerrersMatrix {
        FerrersMatrix::from_heights(5, 5, alloc::vec![0, 1, 3, 4, 4]).unwrap()
    }

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn displayed_five_by_five() {
        assert_eq!(worked_example().to_string(), "01111/00111/00111/00011/00000");
        assert_eq!(FerrersMatrix::zero(3, 3).to_string(), "000/000/000");
        let s = FerrersMatrix::from_heights(3, 3, alloc::vec![1, 2, 3]).unwrap();
        assert!(s.entry(2, 2));
    }

    #[test]
    fn rejects_bad_heights() {
        assert_eq!(
            FerrersMatrix::from_heights(3, 3, alloc::vec![0, 2, 1]),
            Err(MatrixError::HeightsNotMonotone { col: 2 })
        );
        assert!(matches!(
            FerrersMatrix::from_heights(3, 2, alloc::vec![0, 4]),
            Err(MatrixError::HeightOutOfRange { .. })
        ));
    }

    #[test]
    fn dual_transposes_and_complements() {
        let a = worked_example();
        let d = a.dual();
        assert!(d.entry(0, 0));
        let am = a.to_matrix();
        let dm = d.to_matrix();
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(dm.get(i, j), &(Rational::one() - am.get(j, i)));
            }
        }
        let z = FerrersMatrix::zero(4, 4).dual();
        assert_eq!(z.heights(), &[4, 4, 4, 4]);
    }

    #[test]
    fn dual_is_an_involution_on_small_shapes() {
        for m in 1..=5 {
            for n in 1..=5 {
                for a in FerrersMatrix::enumerate(m, n) {
                    let d = a.dual();
                    assert_eq!((d.rows(), d.cols()), (n, m));
                    assert_eq!(d.dual(), a);
                }
            }
        }
    }

    #[test]
    fn enumeration_counts_match_binomials() {
        for m in 1..=5 {
            for n in 1..=5 {
                let all = FerrersMatrix::enumerate(m, n);
                assert_eq!(all.len(), binom(m + n, n));
                assert!(all.windows(2).all(|w| w[0].heights < w[1].heights));
            }
        }
        assert_eq!(FerrersMatrix::enumerate(5, 5).len(), 252);
    }

    #[test]
    fn build_b_matches_display() {
        let b = worked_example().build_b();
        let row = |i: usize| b.row(i).iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ");
        assert_eq!(row(0), "x1 y2 y3 y4 y5");
        assert_eq!(row(4), "x5 x5 x5 x5 x5");
        assert_eq!(FerrersMatrix::zero(1, 1).build_b().get(0, 0).to_string(), "x1");
        let ones = FerrersMatrix::from_heights(2, 2, alloc::vec![2, 2]).unwrap().build_b();
        assert_eq!(ones.to_string(), "[[y1, y2], [y1, y2]]");
    }

    #[test]
    fn build_b_variable_support() {
        for a in FerrersMatrix::enumerate(3, 4) {
            let vars: BTreeSet<VariableId> = a.build_b().map(|p| p.variables()).data.into_iter().flatten().collect();
            let mut expected = BTreeSet::new();
            for i in 0..a.rows() {
                if (0..a.cols()).any(|j| !a.entry(i, j)) {
                    expected.insert(VariableId::x(i as u32 + 1));
                }
            }
            for (j, &h) in a.heights().iter().enumerate() {
                if h >= 1 {
                    expected.insert(VariableId::y(j as u32 + 1));
                }
            }
            assert_eq!(vars, expected);
        }
    }

    #[test]
    fn truncation() {
        let t = worked_example().truncate().unwrap();
        assert_eq!((t.rows(), t.heights()), (4, &[0usize, 1, 3, 4][..]));
        assert_eq!(worked_example().last_column_zeros(), 1);
        assert_eq!(FerrersMatrix::zero(2, 2).truncate().unwrap(), FerrersMatrix::zero(1, 1));
        let full = FerrersMatrix::from_heights(3, 3, alloc::vec![3, 3, 3]).unwrap();
        assert_eq!(full.truncate().unwrap().heights(), &[2, 2]);
        assert_eq!(FerrersMatrix::zero(1, 3).truncate(), Err(MatrixError::TooSmall { min: 2 }));
    }

    #[test]
    fn eulerian_shapes() {
        assert_eq!(FerrersMatrix::eulerian(3).unwrap().to_string(), "011/001/000");
        assert_eq!(FerrersMatrix::eulerian(1).unwrap().to_string(), "0");
        for n in 1..=6 {
            // J - E^T keeps the diagonal, so E_n is not self-dual.
            let e = FerrersMatrix::eulerian(n).unwrap();
            assert_eq!(e.dual().heights(), &(1..=n).collect::<Vec<_>>()[..]);
            assert_ne!(e.dual(), e);
        }
        assert_eq!(FerrersMatrix::multiset_eulerian(&[1, 1, 1, 1]).unwrap(), FerrersMatrix::eulerian(4).unwrap());
        assert_eq!(FerrersMatrix::multiset_eulerian(&[2, 1]).unwrap().heights(), &[0, 0, 2]);
        assert_eq!(FerrersMatrix::multiset_eulerian(&[3]).unwrap(), FerrersMatrix::zero(3, 3));
        assert_eq!(FerrersMatrix::multiset_eulerian(&[]), Err(MatrixError::BadComposition));
    }

    #[test]
    fn padding() {
        let a = FerrersMatrix::from_heights(1, 2, alloc::vec![1, 1]).unwrap();
        assert_eq!(a.pad_rows(1).to_string(), "11/00");
        assert_eq!(a.pad_rows(0), a);
        assert_eq!(a.pad_cols(1).heights(), &[0, 1, 1]);
        let m = MonotoneColumnMatrix::from_i64_rows(&[&[3], &[1]]).unwrap();
        assert_eq!(m.pad_cols(1, PadMode::Append).matrix().to_string(), "[[3, 0], [1, 0]]");
        assert_eq!(m.pad_cols(1, PadMode::Prepend).matrix().to_string(), "[[0, 3], [0, 1]]");
    }

    #[test]
    fn jz_plus_a_entries() {
        let a = MonotoneColumnMatrix::from_i64_rows(&[&[1, 1], &[0, 0]]).unwrap();
        assert_eq!(a.jz_plus_a().to_string(), "[[z1 + 1, z2 + 1], [z1, z2]]");
        assert!(MonotoneColumnMatrix::from_i64_rows(&[&[0], &[1]]).is_err());
    }

    #[test]
    fn columns_to_ones_examples() {
        let a = MonotoneColumnMatrix::from_i64_rows(&[&[1, 0], &[0, 0]]).unwrap();
        assert_eq!(a.columns_to_ones(&BTreeSet::new()).unwrap(), a);
        let s: BTreeSet<usize> = [1].into_iter().collect();
        assert_eq!(a.columns_to_ones(&s).unwrap().matrix().to_string(), "[[1, 1], [0, 1]]");
        let bad: BTreeSet<usize> = [2].into_iter().collect();
        assert!(a.columns_to_ones(&bad).is_err());
        for s in 0..4u64 {
            for t in 0..4u64 {
                assert_eq!(a.columns_to_ones_mask(s).columns_to_ones_mask(t), a.columns_to_ones_mask(s | t));
            }
        }
    }

    #[test]
    fn random_matrices() {
        let r = ValueRange::integers(-9, 9);
        let a = MonotoneColumnMatrix::random(5, 5, &r, 11);
        assert!(MonotoneColumnMatrix::new(a.matrix().clone()).is_ok());
        assert_eq!(a, MonotoneColumnMatrix::random(5, 5, &r, 11));
        let c = MonotoneColumnMatrix::random(3, 3, &ValueRange::integers(4, 4), 5);
        assert!(c.matrix().data.iter().all(|x| *x == rat(4)));
    }

    #[test]
    fn from_matrix_round_trip() {
        for a in FerrersMatrix::enumerate(3, 3) {
            assert_eq!(FerrersMatrix::from_matrix(&a.to_matrix()).unwrap(), a);
        }
        let bad = Matrix::from_rows(alloc::vec![alloc::vec![rat(0)], alloc::vec![rat(1)]]).unwrap();
        assert!(FerrersMatrix::from_matrix(&bad).is_err());
    }
}
