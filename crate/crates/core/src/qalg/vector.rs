use super::Modulus;
use crate::error::{Error, Result};
use std::fmt;

/// `q^n` as a `usize`. Panics on overflow, which is far beyond desk scale.
pub fn pow_usize(q: u32, n: usize) -> usize {
    (q as usize).checked_pow(n as u32).expect("q^n overflows usize")
}

/// Lexicographic digits of `index` in base `q`, `x_1` most significant.
pub fn digits(index: usize, q: u32, n: usize) -> Vec<u32> {
    let mut out = vec![0u32; n];
    let mut rest = index;
    for slot in out.iter_mut().rev() {
        *slot = (rest % q as usize) as u32;
        rest /= q as usize;
    }
    out
}

/// Inverse of [`digits`].
pub fn index_of(coords: &[u32], q: u32) -> usize {
    coords.iter().fold(0usize, |acc, &c| acc * q as usize + c as usize)
}

/// A vector of `V_n = Z_q^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QVec {
    modulus: Modulus,
    coords: Vec<u32>,
}

impl QVec {
    pub fn new(modulus: Modulus, coords: Vec<u32>) -> Result<Self> {
        for &c in &coords {
            modulus.check_residue(c)?;
        }
        Ok(QVec { modulus, coords })
    }

    pub fn zero(modulus: Modulus, n: usize) -> Self {
        QVec { modulus, coords: vec![0; n] }
    }

    /// The basis vector `e_i` (0-based `i`).
    pub fn basis(modulus: Modulus, n: usize, i: usize) -> Self {
        let mut coords = vec![0; n];
        coords[i] = 1;
        QVec { modulus, coords }
    }

    pub fn from_index(modulus: Modulus, n: usize, index: usize) -> Self {
        QVec { modulus, coords: digits(index, modulus.q(), n) }
    }

    pub fn index(&self) -> usize {
        index_of(&self.coords, self.modulus.q())
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    fn check_compatible(&self, other: &QVec) -> Result<()> {
        self.modulus.check_same(other.modulus)?;
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), actual: other.dim() });
        }
        Ok(())
    }

    /// `u · x = u_1 x_1 + ... + u_n x_n (mod q)`.
    pub fn dot(&self, other: &QVec) -> Result<u32> {
        self.check_compatible(other)?;
        Ok(dot_slices(self.modulus, &self.coords, &other.coords))
    }

    pub fn add(&self, other: &QVec) -> Result<QVec> {
        self.check_compatible(other)?;
        let m = self.modulus;
        let coords = self.coords.iter().zip(&other.coords).map(|(&a, &b)| m.add(a, b)).collect();
        Ok(QVec { modulus: m, coords })
    }

    pub fn sub(&self, other: &QVec) -> Result<QVec> {
        self.check_compatible(other)?;
        let m = self.modulus;
        let coords = self.coords.iter().zip(&other.coords).map(|(&a, &b)| m.sub(a, b)).collect();
        Ok(QVec { modulus: m, coords })
    }

    pub fn neg(&self) -> QVec {
        let m = self.modulus;
        QVec { modulus: m, coords: self.coords.iter().map(|&a| m.neg(a)).collect() }
    }

    pub fn scale(&self, c: u32) -> QVec {
        let m = self.modulus;
        QVec { modulus: m, coords: self.coords.iter().map(|&a| m.mul(a, c)).collect() }
    }
}

impl fmt::Display for QVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[inline]
pub(crate) fn dot_slices(m: Modulus, a: &[u32], b: &[u32]) -> u32 {
    let s: u64 = a.iter().zip(b).map(|(&x, &y)| x as u64 * y as u64).sum();
    (s % m.q() as u64) as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dot_examples() {
        let z2 = Modulus::BOOLEAN;
        let u = QVec::new(z2, vec![1, 1]).unwrap();
        let x = QVec::new(z2, vec![1, 0]).unwrap();
        assert_eq!(u.dot(&x).unwrap(), 1);

        let z3 = Modulus::new(3).unwrap();
        let u = QVec::new(z3, vec![2, 1]).unwrap();
        let x = QVec::new(z3, vec![2, 2]).unwrap();
        assert_eq!(u.dot(&x).unwrap(), 0);
        assert_eq!(u.dot(&QVec::zero(z3, 2)).unwrap(), 0);
    }

    #[test]
    fn dot_rejects_mismatches() {
        let z3 = Modulus::new(3).unwrap();
        let a = QVec::zero(z3, 2);
        assert!(matches!(a.dot(&QVec::zero(z3, 3)), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(a.dot(&QVec::zero(Modulus::BOOLEAN, 2)), Err(Error::ModulusMismatch(3, 2))));
        assert!(QVec::new(z3, vec![3]).is_err());
    }

    #[test]
    fn index_round_trip() {
        for q in 2..=5u32 {
            for n in 0..=6usize {
                let size = pow_usize(q, n);
                for i in 0..size {
                    let d = digits(i, q, n);
                    assert!(d.iter().all(|&c| c < q));
                    assert_eq!(index_of(&d, q), i);
                }
            }
        }
        // x_1 is the most significant coordinate
        assert_eq!(digits(1, 2, 3), vec![0, 0, 1]);
        assert_eq!(digits(4, 2, 3), vec![1, 0, 0]);
    }
}
