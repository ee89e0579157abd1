//! Base arithmetic over `Z_q`: residues, vectors in lexicographic order,
//! exact cyclotomic values and functions `V_n -> Z_q`.

mod anf;
mod cyclo;
mod function;
mod matrix;
mod vector;

pub use anf::{anf, anf_degree, anf_eval};
pub use cyclo::CycloValue;
pub use function::QFunction;
pub use matrix::Matrix;
pub use vector::{digits, index_of, pow_usize, QVec};
pub(crate) use vector::dot_slices;

use crate::error::{Error, Result};
use std::fmt;

/// The modulus `q` of `Z_q`, with its primality cached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus {
    q: u32,
    prime: bool,
}

impl Modulus {
    pub fn new(q: u32) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidModulus(q));
        }
        Ok(Modulus { q, prime: is_prime(q) })
    }

    pub const BOOLEAN: Modulus = Modulus { q: 2, prime: true };

    #[inline]
    pub fn q(self) -> u32 {
        self.q
    }

    #[inline]
    pub fn is_prime(self) -> bool {
        self.prime
    }

    pub fn require_prime(self) -> Result<()> {
        if self.prime {
            Ok(())
        } else {
            Err(Error::CompositeModulus(self.q))
        }
    }

    pub fn require_boolean(self) -> Result<()> {
        if self.q == 2 {
            Ok(())
        } else {
            Err(Error::RequiresBoolean(self.q))
        }
    }

    pub fn check_same(self, other: Modulus) -> Result<()> {
        if self.q == other.q {
            Ok(())
        } else {
            Err(Error::ModulusMismatch(self.q, other.q))
        }
    }

    #[inline]
    pub fn reduce(self, a: i64) -> u32 {
        a.rem_euclid(self.q as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.q as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.q as u64 - b as u64) % self.q as u64) as u32
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.q as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        self.sub(0, a)
    }

    /// Multiplicative inverse, if `a` is a unit of `Z_q`.
    pub fn inv(self, a: u32) -> Option<u32> {
        let (g, x, _) = ext_gcd(a as i64 % self.q as i64, self.q as i64);
        if g == 1 {
            Some(self.reduce(x))
        } else {
            None
        }
    }

    pub fn is_unit(self, a: u32) -> bool {
        gcd(a as u64 % self.q as u64, self.q as u64) == 1
    }

    pub fn check_residue(self, a: u32) -> Result<u32> {
        if a < self.q {
            Ok(a)
        } else {
            Err(Error::ResidueOutOfRange { value: a, q: self.q })
        }
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z_{}", self.q)
    }
}

pub fn is_prime(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= q as u64 {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_matches_trial_division() {
        let primes: Vec<u32> = (0..40).filter(|&q| is_prime(q)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(Modulus::new(1).is_err());
        assert!(!Modulus::new(4).unwrap().is_prime());
    }

    #[test]
    fn inverses_exist_exactly_for_units() {
        let z6 = Modulus::new(6).unwrap();
        assert_eq!(z6.inv(5), Some(5));
        assert_eq!(z6.inv(2), None);
        let z7 = Modulus::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(z7.mul(a, z7.inv(a).unwrap()), 1);
        }
    }
}
