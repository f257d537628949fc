//! Dense matrices over GF(2^m) with the handful of operations the code
//! construction needs: products, rank, row echelon form with pivot tracking,
//! inversion, and column selection.
//!
//! Elimination is deterministic: the pivot is always the first nonzero entry
//! scanning top-to-bottom in the leftmost unresolved column, so pivot-column
//! lists are reproducible run to run.

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![FieldElement::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::ONE);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        for r in &rows {
            if r.len() != ncols {
                return Err(Error::LengthMismatch {
                    expected: ncols,
                    got: r.len(),
                });
            }
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// A 1 x n matrix.
    pub fn row_vector(v: Vec<FieldElement>) -> Self {
        let cols = v.len();
        Matrix {
            rows: 1,
            cols,
            data: v,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_row_vecs(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, other: &Matrix, spec: &FieldSpec) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = spec.mul(a, other.get(l, j));
                    let cur = out.get(i, j);
                    out.set(i, j, spec.add(cur, add));
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Row echelon form (pivot entries normalized to 1) and the ascending
    /// list of pivot columns. The pivot count equals the rank.
    pub fn row_echelon_pivots(&self, spec: &FieldSpec) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..m.cols {
            if next_row == m.rows {
                break;
            }
            let Some(pivot_row) = (next_row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(next_row, pivot_row);
            let inv = spec
                .inv(m.get(next_row, col))
                .expect("pivot entry is nonzero");
            for j in col..m.cols {
                let v = spec.mul(m.get(next_row, j), inv);
                m.set(next_row, j, v);
            }
            for r in next_row + 1..m.rows {
                let factor = m.get(r, col);
                if factor.is_zero() {
                    continue;
                }
                for j in col..m.cols {
                    let v = spec.add(m.get(r, j), spec.mul(factor, m.get(next_row, j)));
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            next_row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, spec: &FieldSpec) -> usize {
        self.row_echelon_pivots(spec).1.len()
    }

    /// Inverse of a square full-rank matrix via Gauss-Jordan elimination.
    pub fn invert(&self, spec: &FieldSpec) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(
                self.rows, self.cols, self.rows, self.cols,
            ));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let Some(pivot_row) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return Err(Error::Singular);
            };
            m.swap_rows(col, pivot_row);
            inv.swap_rows(col, pivot_row);
            let scale = spec.inv(m.get(col, col)).expect("pivot entry is nonzero");
            for j in 0..n {
                m.set(col, j, spec.mul(m.get(col, j), scale));
                inv.set(col, j, spec.mul(inv.get(col, j), scale));
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = m.get(r, col);
                if factor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let mv = spec.add(m.get(r, j), spec.mul(factor, m.get(col, j)));
                    m.set(r, j, mv);
                    let iv = spec.add(inv.get(r, j), spec.mul(factor, inv.get(col, j)));
                    inv.set(r, j, iv);
                }
            }
        }
        Ok(inv)
    }

    /// Column-subset matrix, preserving the order given in `idx`.
    pub fn select_columns(&self, idx: &[usize]) -> Result<Matrix> {
        for &j in idx {
            if j >= self.cols {
                return Err(Error::IndexOutOfRange {
                    index: j,
                    cols: self.cols,
                });
            }
        }
        let mut out = Matrix::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                out.set(i, jj, self.get(i, j));
            }
        }
        Ok(out)
    }
}

/// One particular solution of A x = b, if any, with free variables set to
/// zero. Used by the Berlekamp-Welch key-equation solver.
#[allow(clippy::needless_range_loop)]
pub fn solve_linear(a: &Matrix, b: &[FieldElement], spec: &FieldSpec) -> Option<Vec<FieldElement>> {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let mut aug = Matrix::zeros(a.rows(), a.cols() + 1);
    for (i, &rhs) in b.iter().enumerate() {
        for j in 0..a.cols() {
            aug.set(i, j, a.get(i, j));
        }
        aug.set(i, a.cols(), rhs);
    }
    let (ech, pivots) = aug.row_echelon_pivots(spec);
    // A pivot in the augmented column means the system is inconsistent.
    if pivots.last() == Some(&a.cols()) {
        return None;
    }
    let mut x = vec![FieldElement::ZERO; a.cols()];
    for (row, &col) in pivots.iter().enumerate().rev() {
        let mut v = ech.get(row, a.cols());
        for j in col + 1..a.cols() {
            v = spec.add(v, spec.mul(ech.get(row, j), x[j]));
        }
        // Pivot entries are normalized to 1 by row_echelon_pivots.
        x[col] = v;
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf8() -> FieldSpec {
        FieldSpec::with_poly(3, 0xB).unwrap()
    }

    fn mat(rows: &[&[u16]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| FieldElement(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    // The worked 5x5 transformation matrix over GF(8), integer values.
    fn example_t() -> Matrix {
        mat(&[
            &[7, 2, 5, 0, 0],
            &[2, 6, 1, 4, 1],
            &[2, 4, 6, 3, 3],
            &[2, 0, 1, 3, 5],
            &[2, 5, 7, 2, 7],
        ])
    }

    #[test]
    fn mul_identity_and_zero() {
        let f = gf8();
        let t = example_t();
        assert_eq!(Matrix::identity(5).mul(&t, &f).unwrap(), t);
        let z = Matrix::zeros(5, 5);
        assert_eq!(z.mul(&t, &f).unwrap(), z);
        assert!(t.mul(&Matrix::zeros(4, 4), &f).is_err());
    }

    #[test]
    fn rank_examples() {
        let f = gf8();
        assert_eq!(Matrix::identity(4).rank(&f), 4);
        assert_eq!(Matrix::zeros(3, 5).rank(&f), 0);
        // The worked 4x5 shifted-polynomial coefficient matrix has full row rank.
        let v = mat(&[
            &[2, 6, 1, 4, 1],
            &[2, 4, 6, 3, 3],
            &[2, 0, 1, 3, 5],
            &[2, 5, 7, 2, 7],
        ]);
        assert_eq!(v.rank(&f), 4);
        assert_eq!(example_t().rank(&f), 5);
    }

    #[test]
    fn echelon_pivots() {
        let f = gf8();
        let (_, pivots) = Matrix::identity(3).row_echelon_pivots(&f);
        assert_eq!(pivots, vec![0, 1, 2]);
        let (_, pivots) = example_t().row_echelon_pivots(&f);
        assert_eq!(pivots, vec![0, 1, 2, 3, 4]);
        let (_, pivots) = Matrix::zeros(1, 4).row_echelon_pivots(&f);
        assert!(pivots.is_empty());
        let m = mat(&[&[0, 0, 3], &[0, 0, 0], &[0, 2, 5]]);
        let (ech, pivots) = m.row_echelon_pivots(&f);
        assert_eq!(pivots, vec![1, 2]);
        assert_eq!(ech.get(0, 1), FieldElement::ONE);
    }

    #[test]
    fn invert_examples() {
        let f = gf8();
        assert_eq!(Matrix::identity(3).invert(&f).unwrap(), Matrix::identity(3));
        let t = example_t();
        let ti = t.invert(&f).unwrap();
        assert_eq!(t.mul(&ti, &f).unwrap(), Matrix::identity(5));
        assert_eq!(ti.mul(&t, &f).unwrap(), Matrix::identity(5));
        assert_eq!(Matrix::zeros(2, 2).invert(&f), Err(Error::Singular));
        assert!(Matrix::zeros(2, 3).invert(&f).is_err());
    }

    #[test]
    fn select_columns_examples() {
        let f = gf8();
        let t = example_t();
        assert_eq!(t.select_columns(&[0, 1, 2, 3, 4]).unwrap(), t);
        let e3 = Matrix::identity(3).select_columns(&[2]).unwrap();
        assert_eq!(e3.get(2, 0), FieldElement::ONE);
        assert_eq!(e3.get(0, 0), FieldElement::ZERO);
        assert!(t.select_columns(&[5]).is_err());
        let (_, pivots) = t.row_echelon_pivots(&f);
        assert_eq!(t.select_columns(&pivots).unwrap().rank(&f), 5);
    }

    #[test]
    fn solve_linear_consistent_and_not() {
        let f = gf8();
        let t = example_t();
        let x: Vec<FieldElement> = (1..=5).map(FieldElement).collect();
        let b = Matrix::row_vector(x.clone())
            .mul(&t.transpose(), &f)
            .unwrap()
            .row(0)
            .to_vec();
        let solved = solve_linear(&t, &b, &f).unwrap();
        assert_eq!(solved, x);
        // Inconsistent: two identical rows, different right-hand sides.
        let a = mat(&[&[1, 2], &[1, 2]]);
        let b = vec![FieldElement(1), FieldElement(2)];
        assert!(solve_linear(&a, &b, &f).is_none());
        // Underdetermined systems still yield a particular solution.
        let a = mat(&[&[1, 2, 3]]);
        let b = vec![FieldElement(5)];
        let x = solve_linear(&a, &b, &f).unwrap();
        let check = Matrix::row_vector(x).mul(&a.transpose(), &f).unwrap();
        assert_eq!(check.get(0, 0), FieldElement(5));
    }
}
