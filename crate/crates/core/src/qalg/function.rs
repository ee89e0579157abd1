use super::cyclo::CycloValue;
use super::vector::{digits, index_of, pow_usize};
use super::Modulus;
use crate::error::{Error, Result};
use std::fmt;

/// A total map `V_n -> Z_q`, stored as a dense table in lexicographic
/// argument order (`x_1` most significant).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QFunction {
    modulus: Modulus,
    n: usize,
    table: Vec<u32>,
}

impl QFunction {
    pub fn new(modulus: Modulus, n: usize, table: Vec<u32>) -> Result<Self> {
        let size = pow_usize(modulus.q(), n);
        if table.len() != size {
            return Err(Error::DimensionMismatch { expected: size, actual: table.len() });
        }
        for &v in &table {
            modulus.check_residue(v)?;
        }
        Ok(QFunction { modulus, n, table })
    }

    /// Tabulate `rule` over all of `V_n`; results are reduced mod `q`.
    pub fn from_fn(modulus: Modulus, n: usize, mut rule: impl FnMut(&[u32]) -> i64) -> Self {
        let size = pow_usize(modulus.q(), n);
        let table = (0..size)
            .map(|i| modulus.reduce(rule(&digits(i, modulus.q(), n))))
            .collect();
        QFunction { modulus, n, table }
    }

    pub fn constant(modulus: Modulus, n: usize, c: u32) -> Self {
        QFunction { modulus, n, table: vec![c % modulus.q(); pow_usize(modulus.q(), n)] }
    }

    /// The affine function `b·x + c`.
    pub fn affine(modulus: Modulus, b: &[u32], c: u32) -> Self {
        let n = b.len();
        Self::from_fn(modulus, n, |x| {
            x.iter().zip(b).map(|(&xi, &bi)| xi as i64 * bi as i64).sum::<i64>() + c as i64
        })
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.modulus.q()
    }

    #[inline]
    pub fn arity(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn into_table(self) -> Vec<u32> {
        self.table
    }

    #[inline]
    pub fn at(&self, index: usize) -> u32 {
        self.table[index]
    }

    pub fn eval(&self, x: &[u32]) -> Result<u32> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, actual: x.len() });
        }
        for &c in x {
            self.modulus.check_residue(c)?;
        }
        Ok(self.table[index_of(x, self.q())])
    }

    /// `f̊ = χ ∘ f` as exact cyclotomic values.
    pub fn character_table(&self) -> Vec<CycloValue> {
        let roots: Vec<CycloValue> = (0..self.q()).map(|a| CycloValue::chi(self.modulus, a)).collect();
        self.table.iter().map(|&v| roots[v as usize].clone()).collect()
    }

    /// Pointwise sum `f + g`.
    pub fn add(&self, other: &QFunction) -> Result<QFunction> {
        self.check_same_shape(other)?;
        let m = self.modulus;
        let table = self.table.iter().zip(&other.table).map(|(&a, &b)| m.add(a, b)).collect();
        Ok(QFunction { modulus: m, n: self.n, table })
    }

    pub fn add_constant(&self, c: u32) -> QFunction {
        let m = self.modulus;
        QFunction { modulus: m, n: self.n, table: self.table.iter().map(|&a| m.add(a, c)).collect() }
    }

    pub fn check_same_shape(&self, other: &QFunction) -> Result<()> {
        self.modulus.check_same(other.modulus)?;
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, actual: other.n });
        }
        Ok(())
    }

    /// Fix the coordinates listed in `fixed` (0-based position, value) and
    /// return the function of the remaining coordinates, in their original order.
    pub fn restrict(&self, fixed: &[(usize, u32)]) -> Result<QFunction> {
        let mut pinned: Vec<Option<u32>> = vec![None; self.n];
        for &(pos, val) in fixed {
            if pos >= self.n {
                return Err(Error::IndexOutOfRange { index: pos, limit: self.n });
            }
            self.modulus.check_residue(val)?;
            if pinned[pos].replace(val).is_some() {
                return Err(Error::InvalidParameter(format!("coordinate {pos} fixed twice")));
            }
        }
        let free: Vec<usize> = (0..self.n).filter(|&i| pinned[i].is_none()).collect();
        let q = self.q();
        let mut full: Vec<u32> = pinned.iter().map(|p| p.unwrap_or(0)).collect();
        let size = pow_usize(q, free.len());
        let mut table = Vec::with_capacity(size);
        for i in 0..size {
            let d = digits(i, q, free.len());
            for (slot, &pos) in free.iter().enumerate() {
                full[pos] = d[slot];
            }
            table.push(self.table[index_of(&full, q)]);
        }
        Ok(QFunction { modulus: self.modulus, n: free.len(), table })
    }

    /// The restriction `y -> f(u, y)` for a prefix block `u` of length `m`.
    pub fn prefix_restriction(&self, m: usize, u_index: usize) -> QFunction {
        let k = self.n - m;
        let width = pow_usize(self.q(), k);
        let start = u_index * width;
        QFunction { modulus: self.modulus, n: k, table: self.table[start..start + width].to_vec() }
    }

    /// True when every residue is taken equally often.
    pub fn is_balanced(&self) -> bool {
        let mut counts = vec![0usize; self.q() as usize];
        for &v in &self.table {
            counts[v as usize] += 1;
        }
        counts.windows(2).all(|w| w[0] == w[1])
    }
}

impl fmt::Debug for QFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QFunction(q={}, n={}, {:?})", self.q(), self.n, self.table)
    }
}
