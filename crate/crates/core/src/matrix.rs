//! Dense exact linear algebra: reduced row echelon form, rank, kernel bases
//! and linear solves over any [`CoefficientField`].
//!
//! All routines are deterministic — pivots are always the first usable column
//! — so downstream basis choices (cohomology representatives, kernel vectors)
//! are reproducible across runs.

use crate::field::{CoefficientField, Scalar};

/// A dense `rows x cols` matrix over a fixed coefficient field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub field: CoefficientField,
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: CoefficientField, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: CoefficientField, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(field: CoefficientField, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        self.data[i * self.cols + j] = value;
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| self.field.is_zero(v))
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        assert_eq!(self.field, rhs.field, "field mismatch");
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let acc = f.add(out.get(i, j), &f.mul(a, b));
                    out.set(i, j, acc);
                }
            }
        }
        out
    }

    /// Matrix-vector product `self * v`.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        let f = self.field;
        let mut out = vec![f.zero(); self.rows];
        for (j, x) in v.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for i in 0..self.rows {
                let a = self.get(i, j);
                if !f.is_zero(a) {
                    out[i] = f.add(&out[i], &f.mul(a, x));
                }
            }
        }
        out
    }

    /// In-place reduction to reduced row echelon form.  Returns the pivot
    /// columns in order; the rank is their count.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pivot_row) = (row..self.rows).find(|&r| !f.is_zero(self.get(r, col))) else {
                continue;
            };
            self.swap_rows(row, pivot_row);
            let inv = f
                .inv(self.get(row, col))
                .expect("pivot entry is non-zero by construction");
            self.scale_row(row, &inv);
            for r in 0..self.rows {
                if r != row && !f.is_zero(self.get(r, col)) {
                    let factor = self.get(r, col).clone();
                    self.row_sub_scaled(r, row, &factor);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        work.rref_in_place().len()
    }

    /// A basis of the null space `{v : self * v = 0}`, in the standard
    /// reduced-echelon order (one vector per free column, ascending).
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let f = self.field;
        let mut work = self.clone();
        let pivots = work.rref_in_place();
        let pivot_set: Vec<Option<usize>> = {
            let mut set = vec![None; self.cols];
            for (r, &c) in pivots.iter().enumerate() {
                set[c] = Some(r);
            }
            set
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (col, slot) in pivot_set.iter().enumerate() {
                if let Some(r) = slot {
                    v[col] = f.neg(work.get(*r, free));
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Solves `self * x = rhs`; returns `None` when inconsistent.  The
    /// solution sets every free variable to zero, so it is deterministic.
    pub fn solve(&self, rhs: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(rhs.len(), self.rows, "rhs length mismatch");
        let f = self.field;
        let mut work = Matrix::zeros(f, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                work.set(i, j, self.get(i, j).clone());
            }
            work.set(i, self.cols, rhs[i].clone());
        }
        let pivots = work.rref_in_place();
        if pivots.contains(&self.cols) {
            return None; // a pivot in the augmented column means no solution
        }
        let mut x = vec![f.zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = work.get(r, self.cols).clone();
        }
        Some(x)
    }

    /// Indices of the leftmost maximal independent set of columns
    /// (the column rank profile).
    pub fn column_rank_profile(&self) -> Vec<usize> {
        let mut work = self.clone();
        work.rref_in_place()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, factor: &Scalar) {
        let f = self.field;
        for j in 0..self.cols {
            let v = f.mul(self.get(r, j), factor);
            self.set(r, j, v);
        }
    }

    /// row[r] -= factor * row[src]
    fn row_sub_scaled(&mut self, r: usize, src: usize, factor: &Scalar) {
        let f = self.field;
        for j in 0..self.cols {
            let v = f.sub(self.get(r, j), &f.mul(self.get(src, j), factor));
            self.set(r, j, v);
        }
    }
}
