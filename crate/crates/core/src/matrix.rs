//! Dense matrices over a [`FiniteField`].

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Fe, FiniteField};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FiniteField,
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

/// Result of [`Matrix::rref`]: `transform * original == reduced`.
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: Matrix,
    pub transform: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Proof that `u` is unipotent: `(I - u)^index == 0` and the previous
/// power is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnipotentCertificate {
    u: Matrix,
    index: usize,
}

impl UnipotentCertificate {
    pub fn matrix(&self) -> &Matrix {
        &self.u
    }

    pub fn index(&self) -> usize {
        self.index
    }

    /// Recheck the recorded identity from scratch.
    pub fn verify(&self) -> bool {
        check_unipotent_index(&self.u, self.index)
    }
}

/// True iff `(I - u)^index == 0` and `(I - u)^(index-1) != 0`.
pub fn check_unipotent_index(u: &Matrix, index: usize) -> bool {
    if !u.is_square() || index == 0 {
        return false;
    }
    let n = u.rows;
    let nil = Matrix::identity(&u.field, n).sub(u);
    let before = nil.pow(index as u64 - 1);
    let at = before.mul(&nil);
    at.is_zero() && !before.is_zero()
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.field.format(self.get(i, j)))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn new(field: &FiniteField, rows: usize, cols: usize, data: Vec<Fe>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|&a| !field.contains(a)) {
            return Err(Error::InvalidElement);
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    pub fn from_rows(field: &FiniteField, rows: &[Vec<Fe>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(field, r, c, rows.concat())
    }

    /// Matrix with entries taken from the prime subfield.
    pub fn from_ints(field: &FiniteField, rows: &[&[i64]]) -> Self {
        let c = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), c, "ragged rows");
                r.iter().map(|&v| field.from_int(v))
            })
            .collect();
        Matrix { field: field.clone(), rows: rows.len(), cols: c, data }
    }

    pub fn zeros(field: &FiniteField, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![Fe::ZERO; rows * cols] }
    }

    pub fn identity(field: &FiniteField, n: usize) -> Self {
        Self::scalar(field, n, Fe::ONE)
    }

    pub fn scalar(field: &FiniteField, n: usize, c: Fe) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }

    pub fn diag(field: &FiniteField, d: &[Fe]) -> Self {
        let n = d.len();
        let mut m = Self::zeros(field, n, n);
        for (i, &c) in d.iter().enumerate() {
            m.data[i * n + i] = c;
        }
        m
    }

    /// Build a matrix whose columns are the given vectors.
    pub fn from_columns(field: &FiniteField, rows: usize, cols: &[Vec<Fe>]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, &v) in c.iter().enumerate() {
                m.data[i * cols.len() + j] = v;
            }
        }
        m
    }

    pub fn block_diag(field: &FiniteField, blocks: &[Matrix]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(field, n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.data[(r0 + i) * m + c0 + j] = b.get(i, j);
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    #[inline]
    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.data[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Fe] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Fe> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Fe>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Copy with one entry replaced.
    pub fn with_entry(&self, i: usize, j: usize, v: Fe) -> Matrix {
        let mut m = self.clone();
        m.data[i * self.cols + j] = v;
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_scalar() == Some(Fe::ONE)
    }

    /// The scalar `c` when the matrix equals `c * I`.
    pub fn is_scalar(&self) -> Option<Fe> {
        if !self.is_square() {
            return None;
        }
        let c = if self.rows == 0 { Fe::ONE } else { self.get(0, 0) };
        for i in 0..self.rows {
            for j in 0..self.cols {
                let want = if i == j { c } else { Fe::ZERO };
                if self.get(i, j) != want {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                self.get(i, i) == Fe::ONE && (0..i).all(|j| self.get(i, j).is_zero())
            })
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: Fe) -> Matrix {
        let f = &self.field;
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let f = &self.field;
        let (n, m, k) = (self.rows, other.cols, self.cols);
        let mut data = vec![Fe::ZERO; n * m];
        for i in 0..n {
            for l in 0..k {
                let a = self.data[i * k + l];
                if a.is_zero() {
                    continue;
                }
                let orow = &other.data[l * m..(l + 1) * m];
                let out = &mut data[i * m..(i + 1) * m];
                for (o, &b) in out.iter_mut().zip(orow) {
                    if !b.is_zero() {
                        *o = f.add(*o, f.mul(a, b));
                    }
                }
            }
        }
        Matrix { field: f.clone(), rows: n, cols: m, data }
    }

    pub fn mul_vec(&self, v: &[Fe]) -> Vec<Fe> {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Fe::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j));
            }
        }
        Matrix { field: self.field.clone(), rows: self.cols, cols: self.rows, data }
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut result = Matrix::identity(&self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Reduced row-echelon form together with the invertible transform
    /// `T` satisfying `T * self == R`. Pivots are taken left to right.
    pub fn rref(&self) -> Rref {
        let f = &self.field;
        let (n, m) = (self.rows, self.cols);
        let mut r = self.clone();
        let mut t = Matrix::identity(f, n);
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m {
            if row == n {
                break;
            }
            let Some(p) = (row..n).find(|&i| !r.get(i, col).is_zero()) else {
                continue;
            };
            r.swap_rows(row, p);
            t.swap_rows(row, p);
            let inv = f.inv(r.get(row, col)).expect("pivot is nonzero");
            r.scale_row(row, inv);
            t.scale_row(row, inv);
            for i in 0..n {
                if i != row {
                    let c = r.get(i, col);
                    if !c.is_zero() {
                        let c = f.neg(c);
                        r.add_row_multiple(i, row, c);
                        t.add_row_multiple(i, row, c);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref { reduced: r, transform: t, rank: pivots.len(), pivots }
    }

    pub fn rank(&self) -> usize {
        self.row_echelon().1.len()
    }

    /// Reduced row echelon form without the transform.
    pub(crate) fn row_echelon(&self) -> (Matrix, Vec<usize>) {
        let f = &self.field;
        let (n, m) = (self.rows, self.cols);
        let mut r = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m {
            if row == n {
                break;
            }
            let Some(p) = (row..n).find(|&i| !r.get(i, col).is_zero()) else {
                continue;
            };
            r.swap_rows(row, p);
            let inv = f.inv(r.get(row, col)).expect("pivot is nonzero");
            r.scale_row(row, inv);
            for i in 0..n {
                if i != row {
                    let c = r.get(i, col);
                    if !c.is_zero() {
                        r.add_row_multiple(i, row, f.neg(c));
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (r, pivots)
    }

    pub fn det(&self) -> Result<Fe> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        let f = &self.field;
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Fe::ONE;
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| !a.get(i, col).is_zero()) else {
                return Ok(Fe::ZERO);
            };
            if p != col {
                a.swap_rows(col, p);
                det = f.neg(det);
            }
            let pivot = a.get(col, col);
            det = f.mul(det, pivot);
            let inv = f.inv(pivot).expect("pivot is nonzero");
            for i in col + 1..n {
                let c = a.get(i, col);
                if !c.is_zero() {
                    a.add_row_multiple(i, col, f.neg(f.mul(c, inv)));
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        let r = self.rref();
        if r.rank < self.rows {
            return Err(Error::Singular);
        }
        Ok(r.transform)
    }

    /// Basis of the right null space `{v : self * v = 0}`, one vector per
    /// free column in increasing order.
    pub fn kernel(&self) -> Vec<Vec<Fe>> {
        let f = &self.field;
        let (r, pivots) = self.row_echelon();
        let mut is_pivot = vec![None; self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            is_pivot[p] = Some(i);
        }
        (0..self.cols)
            .filter(|&c| is_pivot[c].is_none())
            .map(|free| {
                let mut v = vec![Fe::ZERO; self.cols];
                v[free] = Fe::ONE;
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = f.neg(r.get(i, free));
                }
                v
            })
            .collect()
    }

    /// One solution of `self * x = b`, if any.
    pub fn solve(&self, b: &[Fe]) -> Option<Vec<Fe>> {
        assert_eq!(b.len(), self.rows);
        let aug = Matrix::from_columns(&self.field, self.rows, &[b.to_vec()]);
        let joined = self.hstack(&aug);
        let (r, pivots) = joined.row_echelon();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Fe::ZERO; self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols);
        }
        Some(x)
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Matrix { field: self.field.clone(), rows: self.rows, cols, data }
    }

    /// `is_unipotent`: certificate with the minimal index, or `None`.
    pub fn is_unipotent(&self) -> Result<Option<UnipotentCertificate>> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        let n = self.rows;
        let nil = Matrix::identity(&self.field, n).sub(self);
        let mut power = nil.clone();
        for k in 1..=n.max(1) {
            if power.is_zero() {
                return Ok(Some(UnipotentCertificate { u: self.clone(), index: k }));
            }
            power = power.mul(&nil);
        }
        Ok(None)
    }

    /// `unitriangularize`: an invertible `P` with `P * self * P^-1` upper
    /// unitriangular. `P^-1` has as columns a basis adapted to the flag
    /// `ker N ⊆ ker N^2 ⊆ ...` of `N = I - self`.
    pub fn unitriangularize(&self) -> Result<Matrix> {
        let Some(cert) = self.is_unipotent()? else {
            return Err(Error::NotUnipotent);
        };
        let f = &self.field;
        let n = self.rows;
        if self.is_upper_unitriangular() {
            return Ok(Matrix::identity(f, n));
        }
        let nil = Matrix::identity(f, n).sub(self);
        let mut basis: Vec<Vec<Fe>> = Vec::with_capacity(n);
        let mut power = nil.clone();
        for _ in 0..cert.index {
            for v in power.kernel() {
                let mut trial = basis.clone();
                trial.push(v.clone());
                if Matrix::from_columns(f, n, &trial).rank() == trial.len() {
                    basis = trial;
                }
            }
            power = power.mul(&nil);
        }
        debug_assert_eq!(basis.len(), n);
        Matrix::from_columns(f, n, &basis).inverse()
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn scale_row(&mut self, i: usize, c: Fe) {
        for j in 0..self.cols {
            let v = self.data[i * self.cols + j];
            self.data[i * self.cols + j] = self.field.mul(v, c);
        }
    }

    /// row[dst] += c * row[src]
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, c: Fe) {
        for j in 0..self.cols {
            let s = self.data[src * self.cols + j];
            if !s.is_zero() {
                let d = self.data[dst * self.cols + j];
                self.data[dst * self.cols + j] = self.field.add(d, self.field.mul(c, s));
            }
        }
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.data[i * self.cols + j] = v;
    }
}

/// `unipotent_inverse`: the finite geometric series `sum_{j<k} (I - u)^j`.
pub fn unipotent_inverse(cert: &UnipotentCertificate) -> Matrix {
    let u = &cert.u;
    let f = u.field();
    let n = u.rows();
    let nil = Matrix::identity(f, n).sub(u);
    let mut sum = Matrix::identity(f, n);
    let mut term = Matrix::identity(f, n);
    for _ in 1..cert.index {
        term = term.mul(&nil);
        sum = sum.add(&term);
    }
    sum
}
