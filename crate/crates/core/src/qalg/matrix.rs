use super::vector::dot_slices;
use super::Modulus;
use crate::error::{Error, Result};
use std::fmt;

/// A dense matrix over `Z_q`, acting on row vectors from the right (`x ↦ xM`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    modulus: Modulus,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// One elementary row operation, as recorded by [`Matrix::eliminate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum RowOp {
    /// `row[target] += factor · row[source]`
    AddMultiple { target: usize, source: usize, factor: u32 },
    Swap(usize, usize),
    /// `row[target] *= unit`
    Scale { target: usize, unit: u32 },
}

impl Matrix {
    pub fn zero(modulus: Modulus, rows: usize, cols: usize) -> Self {
        Matrix { modulus, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(modulus: Modulus, n: usize) -> Self {
        let mut m = Self::zero(modulus, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(modulus: Modulus, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, actual: r.len() });
            }
            for &v in r {
                data.push(modulus.check_residue(v)?);
            }
        }
        Ok(Matrix { modulus, rows: rows.len(), cols, data })
    }

    /// Like [`Matrix::from_rows`] but with an explicit column count, so that
    /// zero-row matrices keep their width.
    pub fn from_rows_with_cols(modulus: Modulus, rows: &[Vec<u32>], cols: usize) -> Result<Self> {
        if rows.is_empty() {
            return Ok(Self::zero(modulus, 0, cols));
        }
        let m = Self::from_rows(modulus, rows)?;
        if m.cols != cols {
            return Err(Error::DimensionMismatch { expected: cols, actual: m.cols });
        }
        Ok(m)
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.modulus.q();
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.modulus, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.modulus.check_same(other.modulus)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, actual: other.rows });
        }
        let q = self.modulus.q() as u64;
        let mut out = Matrix::zero(self.modulus, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let s: u64 = (0..self.cols).map(|t| self.get(i, t) as u64 * other.get(t, j) as u64).sum();
                out.data[i * other.cols + j] = (s % q) as u32;
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.modulus.check_same(other.modulus)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.rows * self.cols, actual: other.rows * other.cols });
        }
        let m = self.modulus;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| m.add(a, b)).collect();
        Ok(Matrix { modulus: m, rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        let neg = other.scale(self.modulus.q() - 1);
        self.add(&neg)
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let m = self.modulus;
        Matrix { modulus: m, rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| m.mul(a, c)).collect() }
    }

    /// `x ↦ xM` for a row vector `x` of length `rows`.
    pub fn apply(&self, x: &[u32]) -> Vec<u32> {
        debug_assert_eq!(x.len(), self.rows);
        let q = self.modulus.q() as u64;
        (0..self.cols)
            .map(|j| {
                let s: u64 = x.iter().enumerate().map(|(i, &xi)| xi as u64 * self.get(i, j) as u64).sum();
                (s % q) as u32
            })
            .collect()
    }

    /// `x ↦ M x^T` read as a row vector (i.e. `x Mᵀ`).
    pub fn apply_transposed(&self, x: &[u32]) -> Vec<u32> {
        debug_assert_eq!(x.len(), self.cols);
        (0..self.rows).map(|i| dot_slices(self.modulus, self.row(i), x)).collect()
    }

    fn apply_op(&mut self, op: RowOp) {
        let m = self.modulus;
        let c = self.cols;
        match op {
            RowOp::AddMultiple { target, source, factor } => {
                for j in 0..c {
                    let v = m.add(self.data[target * c + j], m.mul(factor, self.data[source * c + j]));
                    self.data[target * c + j] = v;
                }
            }
            RowOp::Swap(a, b) => {
                for j in 0..c {
                    self.data.swap(a * c + j, b * c + j);
                }
            }
            RowOp::Scale { target, unit } => {
                for j in 0..c {
                    self.data[target * c + j] = m.mul(unit, self.data[target * c + j]);
                }
            }
        }
    }

    /// Gauss–Jordan elimination over `Z_q` with Euclidean pivoting, so it is
    /// valid for composite moduli as well. Returns the reduced matrix, its
    /// pivot columns and the row operations applied, in order.
    ///
    /// With `require_unit_pivots`, elimination stops at the first column whose
    /// remaining entries generate a non-unit ideal (the matrix is then singular
    /// when square).
    pub(crate) fn eliminate(&self, require_unit_pivots: bool) -> (Matrix, Vec<usize>, Vec<RowOp>, bool) {
        let m = self.modulus;
        let mut w = self.clone();
        let mut ops = Vec::new();
        let mut pivots = Vec::new();
        let mut row = 0;
        let mut complete = true;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            // Euclid on the column until a single nonzero entry remains.
            loop {
                let nonzero: Vec<usize> = (row..w.rows).filter(|&r| w.get(r, col) != 0).collect();
                if nonzero.len() <= 1 {
                    break;
                }
                let p = *nonzero.iter().min_by_key(|&&r| (w.get(r, col), r)).unwrap();
                let pv = w.get(p, col);
                for &r in &nonzero {
                    if r == p {
                        continue;
                    }
                    let t = w.get(r, col) / pv;
                    let op = RowOp::AddMultiple { target: r, source: p, factor: m.neg(t % m.q()) };
                    w.apply_op(op);
                    ops.push(op);
                }
            }
            let Some(p) = (row..w.rows).find(|&r| w.get(r, col) != 0) else {
                if require_unit_pivots {
                    complete = false;
                    break;
                }
                continue;
            };
            let Some(inv) = m.inv(w.get(p, col)) else {
                complete = false;
                if require_unit_pivots {
                    break;
                }
                continue;
            };
            if p != row {
                let op = RowOp::Swap(p, row);
                w.apply_op(op);
                ops.push(op);
            }
            if inv != 1 {
                let op = RowOp::Scale { target: row, unit: inv };
                w.apply_op(op);
                ops.push(op);
            }
            for r in 0..w.rows {
                if r != row && w.get(r, col) != 0 {
                    let op = RowOp::AddMultiple { target: r, source: row, factor: m.neg(w.get(r, col)) };
                    w.apply_op(op);
                    ops.push(op);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (w, pivots, ops, complete)
    }

    /// Reduced row-echelon form with zero rows dropped (prime `q`).
    pub fn rref(&self) -> Result<(Matrix, Vec<usize>)> {
        self.modulus.require_prime()?;
        let (w, pivots, _, _) = self.eliminate(false);
        let keep: Vec<Vec<u32>> = (0..pivots.len()).map(|i| w.row(i).to_vec()).collect();
        Ok((Matrix::from_rows_with_cols(self.modulus, &keep, self.cols)?, pivots))
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.rref()?.1.len())
    }

    /// Determinant modulo `q`, valid for any modulus.
    pub fn det(&self) -> Result<u32> {
        if !self.is_square() {
            return Err(Error::Shape(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        let m = self.modulus;
        // Euclidean elimination without unit requirements, tracking the determinant.
        let mut w = self.clone();
        let mut det = 1u32;
        for col in 0..w.cols {
            loop {
                let nonzero: Vec<usize> = (col..w.rows).filter(|&r| w.get(r, col) != 0).collect();
                if nonzero.len() <= 1 {
                    break;
                }
                let p = *nonzero.iter().min_by_key(|&&r| (w.get(r, col), r)).unwrap();
                let pv = w.get(p, col);
                for &r in &nonzero {
                    if r != p {
                        let t = w.get(r, col) / pv;
                        w.apply_op(RowOp::AddMultiple { target: r, source: p, factor: m.neg(t % m.q()) });
                    }
                }
            }
            match (col..w.rows).find(|&r| w.get(r, col) != 0) {
                None => return Ok(0),
                Some(p) => {
                    if p != col {
                        w.apply_op(RowOp::Swap(p, col));
                        det = m.neg(det);
                    }
                    det = m.mul(det, w.get(col, col));
                }
            }
        }
        Ok(det)
    }

    pub fn is_invertible(&self) -> bool {
        self.det().map(|d| self.modulus.is_unit(d)).unwrap_or(false)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Shape(format!("inverse of a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let (w, pivots, ops, complete) = self.eliminate(true);
        if !complete || pivots.len() != n || w != Matrix::identity(self.modulus, n) {
            return Err(Error::Singular(self.modulus.q()));
        }
        let mut inv = Matrix::identity(self.modulus, n);
        for op in ops {
            inv.apply_op(op);
        }
        Ok(inv)
    }

    /// Basis of the left null space `{x : xM = 0}` (prime `q`).
    pub fn left_kernel(&self) -> Result<Matrix> {
        self.transpose().right_kernel()
    }

    /// Basis of `{x : M xᵀ = 0}` (prime `q`), in reduced form.
    pub fn right_kernel(&self) -> Result<Matrix> {
        let m = self.modulus;
        let (r, pivots) = self.rref()?;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fcol in &free {
            let mut v = vec![0u32; self.cols];
            v[fcol] = 1;
            for (i, &pcol) in pivots.iter().enumerate() {
                v[pcol] = m.neg(r.get(i, fcol));
            }
            basis.push(v);
        }
        let km = Matrix::from_rows_with_cols(m, &basis, self.cols)?;
        Ok(km.rref()?.0)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix(q={}, {:?})", self.modulus.q(), self.row_vecs())
    }
}
