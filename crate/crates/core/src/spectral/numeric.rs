//! Floating-point evaluation path, used for composite moduli and for the
//! irrational `q^{n/2}` cases that the exact path cannot certify.

use crate::qalg::{pow_usize, QFunction};
use num_complex::Complex64;
use std::f64::consts::TAU;

/// Relative tolerance for magnitude comparisons; heuristic, not a proof.
pub const DEFAULT_TOLERANCE: f64 = 1e-6;

/// Walsh–Hadamard transform evaluated in `C` by a radix-`q` butterfly.
pub fn complex_wht(f: &QFunction) -> Vec<Complex64> {
    let q = f.q();
    let roots: Vec<Complex64> = (0..q).map(|a| Complex64::from_polar(1.0, TAU * a as f64 / q as f64)).collect();
    let mut data: Vec<Complex64> = f.table().iter().map(|&v| roots[v as usize]).collect();
    complex_transform(&mut data, q, f.arity(), true);
    data
}

/// In-place character sum over every coordinate; `conjugate` selects the
/// forward (conjugated character) direction.
pub fn complex_transform(data: &mut [Complex64], q: u32, n: usize, conjugate: bool) {
    let qu = q as usize;
    let roots: Vec<Complex64> = (0..q)
        .map(|a| {
            let z = Complex64::from_polar(1.0, TAU * a as f64 / q as f64);
            if conjugate {
                z.conj()
            } else {
                z
            }
        })
        .collect();
    let mut scratch = vec![Complex64::new(0.0, 0.0); qu];
    for coord in 0..n {
        let stride = pow_usize(q, n - 1 - coord);
        for base in (0..data.len()).step_by(stride * qu) {
            for offset in 0..stride {
                let start = base + offset;
                for (u, slot) in scratch.iter_mut().enumerate() {
                    *slot = (0..qu).map(|t| data[start + t * stride] * roots[(u * t) % qu]).sum();
                }
                for (t, v) in scratch.iter().enumerate() {
                    data[start + t * stride] = *v;
                }
            }
        }
    }
}

/// Nearest `c` with `z ≈ scale · χ(c)`, within the relative tolerance.
pub fn nearest_scaled_root(z: Complex64, scale: f64, q: u32, tol: f64) -> Option<u32> {
    if (z.norm() - scale).abs() > tol * scale {
        return None;
    }
    let turns = z.arg() / TAU * q as f64;
    let c = turns.round();
    let target = Complex64::from_polar(scale, TAU * c / q as f64);
    if (z - target).norm() <= tol * scale {
        Some((c as i64).rem_euclid(q as i64) as u32)
    } else {
        None
    }
}

pub fn is_bent(f: &QFunction, tol: f64) -> bool {
    let target = (f.q() as f64).powf(f.arity() as f64 / 2.0);
    complex_wht(f).iter().all(|z| (z.norm() - target).abs() <= tol * target)
}

pub fn is_regular_bent(f: &QFunction, tol: f64) -> bool {
    let target = (f.q() as f64).powf(f.arity() as f64 / 2.0);
    complex_wht(f).iter().all(|&z| nearest_scaled_root(z, target, f.q(), tol).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalg::Modulus;

    #[test]
    fn product_over_z4_is_regular_bent() {
        let z4 = Modulus::new(4).unwrap();
        let f = QFunction::from_fn(z4, 2, |x| (x[0] * x[1]) as i64);
        assert!(is_bent(&f, DEFAULT_TOLERANCE));
        assert!(is_regular_bent(&f, DEFAULT_TOLERANCE));
        // f̂(u,v) = 4·χ(-uv)
        let s = complex_wht(&f);
        for u in 0..4u32 {
            for v in 0..4u32 {
                let c = nearest_scaled_root(s[(u * 4 + v) as usize], 4.0, 4, 1e-9).unwrap();
                assert_eq!(c, (16 - u * v % 4) % 4);
            }
        }
        let g = QFunction::from_fn(z4, 2, |x| x[0] as i64);
        assert!(!is_bent(&g, DEFAULT_TOLERANCE));
    }

    #[test]
    fn odd_arity_over_f3() {
        // x^2 over F_3 is bent, but f̂(0) is the Gauss sum i·sqrt(3), which is
        // not sqrt(3) times a cube root of unity.
        let f3 = Modulus::new(3).unwrap();
        let f = QFunction::from_fn(f3, 1, |x| (x[0] * x[0]) as i64);
        assert!(is_bent(&f, DEFAULT_TOLERANCE));
        assert!(!is_regular_bent(&f, DEFAULT_TOLERANCE));
    }
}
