use super::Modulus;
use crate::error::{Error, Result};
use num_complex::Complex64;
use smallvec::SmallVec;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

type Coeffs = SmallVec<[i64; 8]>;

/// An exact element of the group ring `Z[C_q]`, read as the complex number
/// `Σ_a coeffs[a]·ζ^a` with `ζ = exp(2πi/q)`.
///
/// For prime `q` every value is kept in canonical form (`coeffs[q-1] = 0`),
/// obtained by subtracting multiples of `1 + ζ + ... + ζ^{q-1} = 0`; equality
/// is then equality of complex numbers. For composite `q` the group-ring
/// element is kept unreduced and equality is only sufficient, not necessary.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloValue {
    coeffs: Coeffs,
    prime: bool,
}

impl CycloValue {
    pub fn zero(m: Modulus) -> Self {
        CycloValue { coeffs: SmallVec::from_elem(0, m.q() as usize), prime: m.is_prime() }
    }

    pub fn integer(m: Modulus, s: i64) -> Self {
        let mut v = Self::zero(m);
        v.coeffs[0] = s;
        v
    }

    pub fn one(m: Modulus) -> Self {
        Self::integer(m, 1)
    }

    /// The additive character `χ(a) = ζ^a`.
    pub fn chi(m: Modulus, a: u32) -> Self {
        let mut v = Self::zero(m);
        v.coeffs[(a % m.q()) as usize] = 1;
        v.normalize();
        v
    }

    pub fn from_coeffs(m: Modulus, coeffs: &[i64]) -> Result<Self> {
        if coeffs.len() != m.q() as usize {
            return Err(Error::DimensionMismatch { expected: m.q() as usize, actual: coeffs.len() });
        }
        let mut v = CycloValue { coeffs: SmallVec::from_slice(coeffs), prime: m.is_prime() };
        v.normalize();
        Ok(v)
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.coeffs.len() as u32
    }

    pub fn modulus(&self) -> Modulus {
        Modulus::new(self.q()).expect("q >= 2 by construction")
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Subtract `coeffs[q-1]` from every coefficient (prime `q` only).
    #[inline]
    pub(crate) fn normalize(&mut self) {
        if self.prime {
            let t = *self.coeffs.last().expect("q >= 2");
            if t != 0 {
                for c in self.coeffs.iter_mut() {
                    *c -= t;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Multiply by `ζ^k`.
    pub fn rotate(&self, k: u32) -> Self {
        let q = self.coeffs.len();
        let k = k as usize % q;
        let mut out: Coeffs = SmallVec::from_elem(0, q);
        for (a, &c) in self.coeffs.iter().enumerate() {
            out[(a + k) % q] = c;
        }
        let mut v = CycloValue { coeffs: out, prime: self.prime };
        v.normalize();
        v
    }

    /// `self += ζ^k · other`, left unnormalized; callers normalize once at the end.
    #[inline]
    pub(crate) fn add_rotated_raw(&mut self, other: &CycloValue, k: u32) {
        let q = self.coeffs.len();
        let k = k as usize % q;
        for (a, &c) in other.coeffs.iter().enumerate() {
            let idx = if a + k >= q { a + k - q } else { a + k };
            self.coeffs[idx] += c;
        }
    }

    pub fn scale(&self, s: i64) -> Self {
        CycloValue { coeffs: self.coeffs.iter().map(|&c| c * s).collect(), prime: self.prime }
    }

    /// Exact division by an integer, if every canonical coefficient is divisible.
    pub fn div_exact(&self, d: i64) -> Option<Self> {
        if d == 0 || self.coeffs.iter().any(|&c| c % d != 0) {
            return None;
        }
        Some(CycloValue { coeffs: self.coeffs.iter().map(|&c| c / d).collect(), prime: self.prime })
    }

    /// Complex conjugate: `ζ^a -> ζ^{-a}`.
    pub fn conj(&self) -> Self {
        let q = self.coeffs.len();
        let mut out: Coeffs = SmallVec::from_elem(0, q);
        for (a, &c) in self.coeffs.iter().enumerate() {
            out[(q - a) % q] = c;
        }
        let mut v = CycloValue { coeffs: out, prime: self.prime };
        v.normalize();
        v
    }

    /// `|a|^2 = a · conj(a)`, as an element of the ring.
    pub fn norm_sq(&self) -> Self {
        self * &self.conj()
    }

    pub fn checked_mul(&self, other: &CycloValue) -> Result<Self> {
        if self.q() != other.q() {
            return Err(Error::ModulusMismatch(self.q(), other.q()));
        }
        Ok(self * other)
    }

    pub fn checked_add(&self, other: &CycloValue) -> Result<Self> {
        if self.q() != other.q() {
            return Err(Error::ModulusMismatch(self.q(), other.q()));
        }
        Ok(self + other)
    }

    /// The integer value, when the element is rational (prime `q`).
    pub fn as_integer(&self) -> Option<i64> {
        if !self.prime {
            return None;
        }
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    /// Returns `c` when the value equals `s · χ(c)` (prime `q`, `s != 0`).
    pub fn as_scaled_root(&self, s: i64) -> Option<u32> {
        if !self.prime || s == 0 {
            return None;
        }
        let q = self.coeffs.len();
        let body = &self.coeffs[..q - 1];
        // χ(q-1) = -(1 + ζ + ... + ζ^{q-2}) in canonical form
        if body.iter().all(|&c| c == -s) {
            return Some((q - 1) as u32);
        }
        let mut found = None;
        for (a, &c) in body.iter().enumerate() {
            if c != 0 {
                if c != s || found.is_some() {
                    return None;
                }
                found = Some(a as u32);
            }
        }
        found
    }

    pub fn as_root_of_unity(&self) -> Option<u32> {
        self.as_scaled_root(1)
    }

    pub fn to_complex(&self) -> Complex64 {
        let q = self.coeffs.len() as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(a, &c)| Complex64::from_polar(c as f64, std::f64::consts::TAU * a as f64 / q))
            .sum()
    }
}

impl fmt::Debug for CycloValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycloValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q() == 2 {
            return write!(f, "{}", self.coeffs[0] - self.coeffs[1]);
        }
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl Add<&CycloValue> for &CycloValue {
    type Output = CycloValue;
    fn add(self, rhs: &CycloValue) -> CycloValue {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&CycloValue> for CycloValue {
    fn add_assign(&mut self, rhs: &CycloValue) {
        assert_eq!(self.q(), rhs.q(), "modulus mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        self.normalize();
    }
}

impl Sub<&CycloValue> for &CycloValue {
    type Output = CycloValue;
    fn sub(self, rhs: &CycloValue) -> CycloValue {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl SubAssign<&CycloValue> for CycloValue {
    fn sub_assign(&mut self, rhs: &CycloValue) {
        assert_eq!(self.q(), rhs.q(), "modulus mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        self.normalize();
    }
}

impl Neg for &CycloValue {
    type Output = CycloValue;
    fn neg(self) -> CycloValue {
        self.scale(-1)
    }
}

impl Mul<&CycloValue> for &CycloValue {
    type Output = CycloValue;
    fn mul(self, rhs: &CycloValue) -> CycloValue {
        assert_eq!(self.q(), rhs.q(), "modulus mismatch");
        let q = self.coeffs.len();
        let mut out: Coeffs = SmallVec::from_elem(0, q);
        for (a, &x) in self.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (b, &y) in rhs.coeffs.iter().enumerate() {
                out[(a + b) % q] += x * y;
            }
        }
        let mut v = CycloValue { coeffs: out, prime: self.prime };
        v.normalize();
        v
    }
}

impl std::iter::Sum<CycloValue> for Option<CycloValue> {
    fn sum<I: Iterator<Item = CycloValue>>(iter: I) -> Self {
        iter.reduce(|a, b| &a + &b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(q: u32) -> Modulus {
        Modulus::new(q).unwrap()
    }

    #[test]
    fn chi_canonical_forms() {
        assert_eq!(CycloValue::chi(m(2), 1).coeffs(), &[-1, 0]);
        assert_eq!(CycloValue::chi(m(3), 0).coeffs(), &[1, 0, 0]);
        assert_eq!(CycloValue::chi(m(3), 2).coeffs(), &[-1, -1, 0]);
    }

    #[test]
    fn ring_examples() {
        let c = CycloValue::chi(m(2), 1);
        assert_eq!(&c * &c, CycloValue::one(m(2)));
        assert_eq!(CycloValue::chi(m(3), 1).conj(), CycloValue::chi(m(3), 2));
        assert_eq!(CycloValue::integer(m(2), 2).norm_sq().as_integer(), Some(4));
        let v = CycloValue::chi(m(5), 3).scale(-7);
        assert_eq!(v.norm_sq().as_integer(), Some(49));
    }

    #[test]
    fn scaled_root_detection() {
        for q in [2u32, 3, 5, 7] {
            for c in 0..q {
                for s in [1i64, -1, 3, 8] {
                    let v = CycloValue::chi(m(q), c).scale(s);
                    let expect = if s > 0 {
                        Some(c)
                    } else if q == 2 {
                        // -χ(c) = χ(c+1) when q = 2
                        v.as_scaled_root(-s).map(|_| (c + 1) % 2)
                    } else {
                        None
                    };
                    if s > 0 {
                        assert_eq!(v.as_scaled_root(s), expect);
                    } else if q == 2 {
                        assert_eq!(v.as_scaled_root(-s), expect);
                    } else {
                        assert_eq!(v.as_scaled_root(-s), None, "q={q} c={c} s={s}");
                    }
                }
            }
        }
        assert_eq!(CycloValue::zero(m(3)).as_scaled_root(1), None);
        assert_eq!(CycloValue::integer(m(3), 2).as_scaled_root(1), None);
    }

    #[test]
    fn complex_evaluation_matches_roots() {
        let v = CycloValue::chi(m(4), 1);
        let z = v.to_complex();
        assert!((z.re).abs() < 1e-12 && (z.im - 1.0).abs() < 1e-12);
    }

    fn coeff_vec() -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-20i64..20, 7)
    }

    proptest! {
        #[test]
        fn ring_axioms(q in prop::sample::select(vec![2u32, 3, 5, 7]),
                       ra in coeff_vec(), rb in coeff_vec(), rc in coeff_vec()) {
            let k = q as usize;
            let a = CycloValue::from_coeffs(m(q), &ra[..k]).unwrap();
            let b = CycloValue::from_coeffs(m(q), &rb[..k]).unwrap();
            let c = CycloValue::from_coeffs(m(q), &rc[..k]).unwrap();
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            let za = (&a * &b).to_complex();
            let zb = a.to_complex() * b.to_complex();
            prop_assert!((za - zb).norm() < 1e-6 * (1.0 + zb.norm()));
        }

        #[test]
        fn reduction_is_idempotent_and_ignores_all_ones(
            q in prop::sample::select(vec![2u32, 3, 5, 7]),
            raw in proptest::collection::vec(-50i64..50, 7),
            shift in -30i64..30,
        ) {
            let raw = &raw[..q as usize];
            let a = CycloValue::from_coeffs(m(q), raw).unwrap();
            let again = CycloValue::from_coeffs(m(q), a.coeffs()).unwrap();
            prop_assert_eq!(&a, &again);
            let shifted: Vec<i64> = raw.iter().map(|c| c + shift).collect();
            prop_assert_eq!(a, CycloValue::from_coeffs(m(q), &shifted).unwrap());
        }
    }
}
