//! Exact linear algebra over [`Scalar`]: echelon forms, kernels, solving and
//! the subspace lattice.
//!
//! Vectors are dense `Vec<Scalar>` (a zero scalar is an empty vector, so this
//! costs little); matrices store rows sparsely.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::scalars::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("linear system has no solution")]
    NoSolution,
}

pub type Vector = Vec<Scalar>;

/// Below this many entries `rref` runs on a dense copy.
const DENSE_THRESHOLD: usize = 144;

pub fn zero_vector(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit_vector(n: usize, k: usize) -> Vector {
    let mut v = zero_vector(n);
    v[k] = Scalar::one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn add_scaled(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += &(c * x);
        }
    }
}

pub fn scale_vector(c: &Scalar, v: &[Scalar]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

/// Sparse row-major matrix. Rows map column index to a nonzero entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<BTreeMap<usize, Scalar>>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![BTreeMap::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn scalar_identity(n: usize, c: &Scalar) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    /// Build from dense rows; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: &[Vector]) -> Self {
        let mut m = Matrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row {i} has wrong length");
            for (j, x) in r.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vector]) -> Self {
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column {j} has wrong length");
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let dense: Vec<Vector> =
            rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect();
        Matrix::from_rows(cols, &dense)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.data[i].get(&j).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        if x.is_zero() {
            self.data[i].remove(&j);
        } else {
            self.data[i].insert(j, x);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, x: &Scalar) {
        if x.is_zero() {
            return;
        }
        let v = &self.get(i, j) + x;
        self.set(i, j, v);
    }

    pub fn row(&self, i: usize) -> &BTreeMap<usize, Scalar> {
        &self.data[i]
    }

    pub fn row_dense(&self, i: usize) -> Vector {
        let mut v = zero_vector(self.cols);
        for (&j, x) in &self.data[i] {
            v[j] = x.clone();
        }
        v
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.data.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(&j, x)| (i, j, x)))
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BTreeMap::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row_dense(i)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for (i, j, x) in self.entries() {
            t.data[j].insert(i, x.clone());
        }
        t
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols, "mul_vec dimension mismatch");
        self.data
            .iter()
            .map(|r| {
                let mut acc = Scalar::zero();
                for (&j, x) in r {
                    if !v[j].is_zero() {
                        acc += &(x * &v[j]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for (i, r) in self.data.iter().enumerate() {
            let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (&k, x) in r {
                for (&j, y) in &other.data[k] {
                    let p = x * y;
                    let e = acc.entry(j).or_default();
                    *e += &p;
                }
            }
            acc.retain(|_, x| !x.is_zero());
            out.data[i] = acc;
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.lin_comb(&Scalar::one(), other)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.lin_comb(&Scalar::from_int(-1), other)
    }

    /// `self + c * other`.
    pub fn lin_comb(&self, c: &Scalar, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shape mismatch");
        let mut out = self.clone();
        for (i, j, x) in other.entries() {
            out.add_to(i, j, &(c * x));
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        if c.is_zero() {
            return Matrix::zeros(self.rows, self.cols);
        }
        let mut out = self.clone();
        for r in &mut out.data {
            for x in r.values_mut() {
                *x = &*x * c;
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut out = Matrix::zeros(self.rows, self.cols + other.cols);
        for (i, j, x) in self.entries() {
            out.data[i].insert(j, x.clone());
        }
        for (i, j, x) in other.entries() {
            out.data[i].insert(self.cols + j, x.clone());
        }
        out
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut out = self.clone();
        out.rows += other.rows;
        out.data.extend(other.data.iter().cloned());
        out
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for (i, j, x) in self.entries() {
            out.data[i].insert(j, x.clone());
        }
        for (i, j, x) in other.entries() {
            out.data[self.rows + i].insert(self.cols + j, x.clone());
        }
        out
    }

    /// Kronecker product with row/column index `i * other.rows + k`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for (i, j, x) in self.entries() {
            for (k, l, y) in other.entries() {
                out.data[i * other.rows + k].insert(j * other.cols + l, x * y);
            }
        }
        out
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let col_pos: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(p, &c)| (c, p)).collect();
        let mut out = Matrix::zeros(rows.len(), cols.len());
        for (p, &i) in rows.iter().enumerate() {
            for (j, x) in &self.data[i] {
                if let Some(&q) = col_pos.get(j) {
                    out.data[p].insert(q, x.clone());
                }
            }
        }
        out
    }

    /// Reduced row echelon form and pivot columns.
    ///
    /// Pivot rule: scan columns left to right; the pivot is the first
    /// not-yet-used row with a nonzero entry in that column.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        if self.rows * self.cols <= DENSE_THRESHOLD {
            self.rref_dense()
        } else {
            self.rref_sparse()
        }
    }

    pub(crate) fn rref_dense(&self) -> (Matrix, Vec<usize>) {
        let mut a = self.to_dense();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let inv = a[r][c].inv().expect("nonzero pivot");
            for x in a[r].iter_mut().skip(c) {
                *x = &*x * &inv;
            }
            let pivot_row = a[r].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i != r && !row[c].is_zero() {
                    let f = -&row[c];
                    add_scaled(&mut row[c..], &f, &pivot_row[c..]);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (Matrix::from_rows(self.cols, &a), pivots)
    }

    pub(crate) fn rref_sparse(&self) -> (Matrix, Vec<usize>) {
        let mut rows: Vec<BTreeMap<usize, Scalar>> =
            self.data.iter().filter(|r| !r.is_empty()).cloned().collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| rows[i].contains_key(&c)) else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][&c].inv().expect("nonzero pivot");
            for x in rows[r].values_mut() {
                *x = &*x * &inv;
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == r {
                    continue;
                }
                let Some(f) = row.get(&c).cloned() else { continue };
                for (&j, x) in &pivot_row {
                    let v = &row.get(&j).cloned().unwrap_or_default() - &(&f * x);
                    if v.is_zero() {
                        row.remove(&j);
                    } else {
                        row.insert(j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        rows.resize(self.rows, BTreeMap::new());
        // reorder so zero rows sit at the bottom
        let (mut nz, z): (Vec<_>, Vec<_>) = rows.into_iter().partition(|r| !r.is_empty());
        nz.extend(z);
        (Matrix { rows: self.rows, cols: self.cols, data: nz }, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{x : self * x = 0}`.
    pub fn kernel(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let pivot_set: BTreeMap<usize, usize> =
            pivots.iter().enumerate().map(|(row, &c)| (c, row)).collect();
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !pivot_set.contains_key(c)) {
            let mut v = zero_vector(self.cols);
            v[free] = Scalar::one();
            for (&pc, &row) in &pivot_set {
                let x = r.get(row, free);
                if !x.is_zero() {
                    v[pc] = -x;
                }
            }
            out.push(v);
        }
        out
    }

    /// Some `x` with `self * x = b`.
    pub fn solve(&self, b: &[Scalar]) -> Result<Vector, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch { expected: self.rows, found: b.len() });
        }
        let aug = self.hstack(&Matrix::from_columns(self.rows, &[b.to_vec()]));
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Err(LinalgError::NoSolution);
        }
        let mut x = zero_vector(self.cols);
        for (row, &c) in pivots.iter().enumerate() {
            x[c] = r.get(row, self.cols);
        }
        debug_assert_eq!(self.mul_vec(&x), b);
        Ok(x)
    }

    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let n = self.rows;
        let (r, pivots) = self.hstack(&Matrix::identity(n)).rref();
        if pivots.len() < n || (n > 0 && pivots[n - 1] != n - 1) {
            return Err(LinalgError::Singular);
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Ok(r.select(&rows, &cols))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

/// A linear subspace of `F^ambient`, stored by its reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient).map(|k| unit_vector(ambient, k)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(ambient: usize, vectors: &[Vector]) -> Self {
        let vs: Vec<Vector> = vectors.iter().filter(|v| !is_zero_vector(v)).cloned().collect();
        if vs.is_empty() {
            return Subspace::zero(ambient);
        }
        let (r, pivots) = Matrix::from_rows(ambient, &vs).rref();
        let basis = (0..pivots.len()).map(|i| r.row_dense(i)).collect();
        Subspace { ambient, basis, pivots }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        Ok(())
    }

    /// Reduce `v` modulo the subspace; the result vanishes on every pivot.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut out = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if !out[p].is_zero() {
                let f = -&out[p];
                add_scaled(&mut out, &f, b);
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vector(&self.reduce(v))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool, LinalgError> {
        self.check(other)?;
        Ok(other.basis.iter().all(|v| self.contains(v)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check(other)?;
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Ok(Subspace::span(self.ambient, &vs))
    }

    /// Add vectors, returning whether the space grew.
    pub fn extend(&mut self, vectors: &[Vector]) -> bool {
        let new: Vec<Vector> =
            vectors.iter().map(|v| self.reduce(v)).filter(|v| !is_zero_vector(v)).collect();
        if new.is_empty() {
            return false;
        }
        let mut vs = self.basis.clone();
        vs.extend(new);
        *self = Subspace::span(self.ambient, &vs);
        true
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient));
        }
        let mut cols = self.basis.clone();
        cols.extend(other.basis.iter().map(|v| scale_vector(&Scalar::from_int(-1), v)));
        let m = Matrix::from_columns(self.ambient, &cols);
        let vs: Vec<Vector> = m
            .kernel()
            .into_iter()
            .map(|k| {
                let mut v = zero_vector(self.ambient);
                for (c, b) in k.iter().zip(&self.basis) {
                    add_scaled(&mut v, c, b);
                }
                v
            })
            .collect();
        Ok(Subspace::span(self.ambient, &vs))
    }

    /// Coordinates indexing a basis of `ambient / self`: the non-pivot columns.
    pub fn quotient_basis(&self) -> Vec<usize> {
        let mut it = self.pivots.iter().peekable();
        (0..self.ambient)
            .filter(|c| {
                if it.peek() == Some(&c) {
                    it.next();
                    false
                } else {
                    true
                }
            })
            .collect()
    }

    /// Image of `v` in `ambient / self`, in the coordinates of [`Self::quotient_basis`].
    pub fn quotient_coords(&self, v: &[Scalar]) -> Vector {
        let r = self.reduce(v);
        self.quotient_basis().into_iter().map(|c| r[c].clone()).collect()
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }
}
