//! Dense matrices over an exact field, with deterministic Gaussian
//! elimination.
//!
//! Pivots are always the first nonzero entry in scan order (never chosen by
//! magnitude; the arithmetic is exact), so ranks, reduced forms, nullspace
//! bases and solutions are reproducible across runs. Kernel basis vectors
//! are normalized to leading coefficient one.

use crate::field::Field;

/// A dense `rows x cols` matrix, stored row-major, over the field `F`.
#[derive(Clone, Debug)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> PartialEq for Matrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl<F: Field> Eq for Matrix<F> {}

impl<F: Field> Matrix<F> {
    pub fn zero(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Matrix { field, rows, cols, data }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            let one = m.field.one();
            m.set(i, i, one);
        }
        m
    }

    /// Builds a matrix from column vectors, all of length `rows`.
    pub fn from_columns(field: F, rows: usize, columns: &[Vec<F::Elem>]) -> Self {
        let mut m = Matrix::zero(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, e) in col.iter().enumerate() {
                m.set(i, j, e.clone());
            }
        }
        m
    }

    pub fn from_rows(field: F, cols: usize, rows: &[Vec<F::Elem>]) -> Self {
        let mut m = Matrix::zero(field, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "row length mismatch");
            for (j, e) in row.iter().enumerate() {
                m.set(i, j, e.clone());
            }
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: F::Elem) {
        self.data[i * self.cols + j] = e;
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.field.is_zero(e))
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let f = self.field.clone();
        let mut out = Matrix::zero(f.clone(), self.rows, rhs.cols);
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
                    let cur = out.get(i, j).clone();
                    out.set(i, j, f.add(&cur, &f.mul(a, b)));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        let f = &self.field;
        let mut out = vec![f.zero(); self.rows];
        for (i, acc) in out.iter_mut().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                let a = self.get(i, j);
                if f.is_zero(a) || f.is_zero(vj) {
                    continue;
                }
                *acc = f.add(acc, &f.mul(a, vj));
            }
        }
        out
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.rows, rhs.rows, "row mismatch in hstack");
        let mut m = Matrix::zero(self.field.clone(), self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..rhs.cols {
                m.set(i, self.cols + j, rhs.get(i, j).clone());
            }
        }
        m
    }

    /// Keeps the listed rows, in the given order.
    pub fn select_rows(&self, keep: &[usize]) -> Matrix<F> {
        let mut m = Matrix::zero(self.field.clone(), keep.len(), self.cols);
        for (i, &src) in keep.iter().enumerate() {
            for j in 0..self.cols {
                m.set(i, j, self.get(src, j).clone());
            }
        }
        m
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_cols(&self, keep: &[usize]) -> Matrix<F> {
        let mut m = Matrix::zero(self.field.clone(), self.rows, keep.len());
        for i in 0..self.rows {
            for (j, &src) in keep.iter().enumerate() {
                m.set(i, j, self.get(i, src).clone());
            }
        }
        m
    }

    /// Reduced row echelon form together with its pivot columns.
    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        let f = self.field.clone();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0usize;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !f.is_zero(m.get(i, col))) else {
                continue;
            };
            if p != row {
                for j in 0..m.cols {
                    let a = m.get(row, j).clone();
                    let b = m.get(p, j).clone();
                    m.set(row, j, b);
                    m.set(p, j, a);
                }
            }
            let inv = f.inv(m.get(row, col));
            for j in col..m.cols {
                let e = f.mul(m.get(row, j), &inv);
                m.set(row, j, e);
            }
            for i in 0..m.rows {
                if i == row || f.is_zero(m.get(i, col)) {
                    continue;
                }
                let factor = m.get(i, col).clone();
                for j in col..m.cols {
                    let e = f.sub(m.get(i, j), &f.mul(&factor, m.get(row, j)));
                    m.set(i, j, e);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        // Forward elimination only; cheaper than full reduction.
        let f = self.field.clone();
        let mut m = self.clone();
        let mut rank = 0usize;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(p) = (rank..m.rows).find(|&i| !f.is_zero(m.get(i, col))) else {
                continue;
            };
            if p != rank {
                for j in col..m.cols {
                    let a = m.get(rank, j).clone();
                    let b = m.get(p, j).clone();
                    m.set(rank, j, b);
                    m.set(p, j, a);
                }
            }
            let inv = f.inv(m.get(rank, col));
            for i in rank + 1..m.rows {
                if f.is_zero(m.get(i, col)) {
                    continue;
                }
                let factor = f.mul(m.get(i, col), &inv);
                for j in col..m.cols {
                    let e = f.sub(m.get(i, j), &f.mul(&factor, m.get(rank, j)));
                    m.set(i, j, e);
                }
            }
            rank += 1;
        }
        rank
    }

    /// A basis of the kernel, one column per free variable of the reduced
    /// form, each normalized so its first nonzero coordinate is one.
    pub fn nullspace(&self) -> Matrix<F> {
        let f = self.field.clone();
        let (r, pivots) = self.rref();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let free: Vec<usize> = (0..self.cols).filter(|&j| !is_pivot[j]).collect();
        let mut columns = Vec::with_capacity(free.len());
        for &fcol in &free {
            let mut v = vec![f.zero(); self.cols];
            v[fcol] = f.one();
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = f.neg(r.get(prow, fcol));
            }
            normalize_leading(&f, &mut v);
            columns.push(v);
        }
        Matrix::from_columns(f, self.cols, &columns)
    }

    /// Solves `self * X = rhs` for each column of `rhs`. Returns the unique
    /// solution supported on the pivot columns of `self` (free variables
    /// zero), or `None` if any column is inconsistent.
    pub fn solve(&self, rhs: &Matrix<F>) -> Option<Matrix<F>> {
        assert_eq!(self.rows, rhs.rows, "dimension mismatch in solve");
        let f = self.field.clone();
        let aug = self.hstack(rhs);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut out = Matrix::zero(f, self.cols, rhs.cols);
        for (prow, &pcol) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                out.set(pcol, j, r.get(prow, self.cols + j).clone());
            }
        }
        Some(out)
    }

    /// Indices of the columns where the rank increases, scanning left to
    /// right: a deterministic basis of the column space chosen from the
    /// columns themselves.
    pub fn independent_columns(&self) -> Vec<usize> {
        let mut builder = BasisBuilder::new(self.field.clone(), self.rows);
        let mut keep = Vec::new();
        for j in 0..self.cols {
            if builder.try_insert(self.column(j)) {
                keep.push(j);
            }
        }
        keep
    }
}

/// Normalizes a vector so its first nonzero coordinate is one.
pub fn normalize_leading<F: Field>(f: &F, v: &mut [F::Elem]) {
    if let Some(lead) = v.iter().position(|e| !f.is_zero(e)) {
        let inv = f.inv(&v[lead].clone());
        for e in v.iter_mut() {
            *e = f.mul(e, &inv);
        }
    }
}

/// Incremental Gaussian elimination used for membership and extension
/// tests: vectors are accepted exactly when independent of those already
/// inserted, with the pivot of each stored vector fixed to its first
/// nonzero coordinate.
pub struct BasisBuilder<F: Field> {
    field: F,
    dim: usize,
    // (pivot position, vector with that pivot normalized to one), kept
    // sorted by pivot position.
    pivots: Vec<(usize, Vec<F::Elem>)>,
}

impl<F: Field> BasisBuilder<F> {
    pub fn new(field: F, dim: usize) -> Self {
        BasisBuilder { field, dim, pivots: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pivots.is_empty()
    }

    /// Reduces `v` against the stored pivots, without inserting.
    pub fn reduce(&self, mut v: Vec<F::Elem>) -> Vec<F::Elem> {
        let f = &self.field;
        for (p, w) in &self.pivots {
            if f.is_zero(&v[*p]) {
                continue;
            }
            let factor = v[*p].clone();
            for (x, y) in v.iter_mut().zip(w) {
                *x = f.sub(x, &f.mul(&factor, y));
            }
        }
        v
    }

    /// Inserts `v` if independent of the current span; returns whether the
    /// span grew.
    pub fn try_insert(&mut self, v: Vec<F::Elem>) -> bool {
        assert_eq!(v.len(), self.dim, "vector dimension mismatch");
        let mut red = self.reduce(v);
        let f = &self.field;
        let Some(p) = red.iter().position(|e| !f.is_zero(e)) else {
            return false;
        };
        let inv = f.inv(&red[p].clone());
        for e in red.iter_mut() {
            *e = f.mul(e, &inv);
        }
        let at = self.pivots.partition_point(|(q, _)| *q < p);
        self.pivots.insert(at, (p, red));
        true
    }

    /// Whether `v` lies in the current span.
    pub fn contains(&self, v: Vec<F::Elem>) -> bool {
        let f = &self.field;
        self.reduce(v).iter().all(|e| f.is_zero(e))
    }
}
