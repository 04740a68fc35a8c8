//! Dense matrices over a prime field with exact elimination.

use alloc::vec;
use alloc::vec::Vec;

use crate::field::{FieldScalar, PrimeField};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<FieldScalar>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub matrix: ExactMatrix,
    pub pivots: Vec<usize>,
}

impl ExactMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        ExactMatrix { field, rows, cols, data: vec![FieldScalar::ZERO; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from rows of equal length.
    ///
    /// Panics if the rows are ragged.
    pub fn from_rows(field: PrimeField, rows: &[Vec<FieldScalar>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend_from_slice(r);
        }
        ExactMatrix { field, rows: rows.len(), cols, data }
    }

    pub fn from_i64_rows(field: PrimeField, rows: &[&[i64]]) -> Self {
        let rows: Vec<Vec<FieldScalar>> = rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect();
        Self::from_rows(field, &rows)
    }

    /// Zero-row matrix with `cols` columns, to be filled by [`Self::push_row`].
    pub fn with_cols(field: PrimeField, cols: usize) -> Self {
        ExactMatrix { field, rows: 0, cols, data: Vec::new() }
    }

    pub fn push_row(&mut self, row: &[FieldScalar]) {
        assert_eq!(row.len(), self.cols, "row length");
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FieldScalar {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FieldScalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldScalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Matrix product; panics on shape mismatch.
    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[FieldScalar]) -> Vec<FieldScalar> {
        assert_eq!(v.len(), self.cols, "vector length");
        let f = self.field;
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).fold(f.zero(), |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
            .collect()
    }

    /// Gauss-Jordan elimination to reduced row echelon form.
    pub fn echelon(&self) -> Echelon {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..m.cols {
            if prow == m.rows {
                break;
            }
            let Some(sel) = (prow..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(prow, sel);
            let inv = f.inv(m.get(prow, col)).expect("pivot is nonzero");
            for c in col..m.cols {
                let v = f.mul(m.get(prow, c), inv);
                m.set(prow, c, v);
            }
            for r in 0..m.rows {
                if r == prow {
                    continue;
                }
                let factor = m.get(r, col);
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = f.sub(m.get(r, c), f.mul(factor, m.get(prow, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            prow += 1;
        }
        Echelon { matrix: m, pivots }
    }

    /// Row rank by forward elimination (no back substitution).
    pub fn rank(&self) -> usize {
        let f = self.field;
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(sel) = (rank..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(rank, sel);
            let inv = f.inv(m.get(rank, col)).expect("pivot is nonzero");
            for r in rank + 1..m.rows {
                let factor = f.mul(m.get(r, col), inv);
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = f.sub(m.get(r, c), f.mul(factor, m.get(rank, c)));
                    m.set(r, c, v);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Basis of the right null space, one vector per free column of the
    /// reduced echelon form. The vector for free column `j` has a 1 at `j`
    /// and zeros at the other free columns.
    pub fn kernel_basis(&self) -> Vec<Vec<FieldScalar>> {
        let f = self.field;
        let Echelon { matrix: r, pivots } = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&j| !is_pivot[j])
            .map(|j| {
                let mut v = vec![FieldScalar::ZERO; self.cols];
                v[j] = f.one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = f.neg(r.get(i, j));
                }
                v
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp() -> PrimeField {
        PrimeField::default()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(ExactMatrix::identity(fp(), 4).rank(), 4);
        assert_eq!(ExactMatrix::zeros(fp(), 3, 5).rank(), 0);
        let m = ExactMatrix::from_i64_rows(fp(), &[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(ExactMatrix::identity(fp(), 3).kernel_basis().is_empty());
        assert_eq!(ExactMatrix::zeros(fp(), 2, 4).kernel_basis().len(), 4);
        let f = fp();
        let k = ExactMatrix::from_i64_rows(f, &[&[1, 1]]).kernel_basis();
        assert_eq!(k.len(), 1);
        // proportional to (1, -1)
        assert_eq!(f.add(k[0][0], k[0][1]), f.zero());
        assert!(!k[0][0].is_zero());
    }

    #[test]
    fn empty_shapes() {
        let m = ExactMatrix::with_cols(fp(), 3);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.kernel_basis().len(), 3);
        assert_eq!(ExactMatrix::zeros(fp(), 4, 0).rank(), 0);
    }

    #[test]
    fn echelon_is_reduced() {
        let f = PrimeField::new(7).unwrap();
        let m = ExactMatrix::from_i64_rows(f, &[&[0, 2, 4, 1], &[0, 1, 2, 3], &[1, 1, 1, 1]]);
        let e = m.echelon();
        assert_eq!(e.pivots, [0, 1, 3]);
        for (i, &p) in e.pivots.iter().enumerate() {
            for r in 0..3 {
                let want = if r == i { f.one() } else { f.zero() };
                assert_eq!(e.matrix.get(r, p), want);
            }
        }
    }
}
