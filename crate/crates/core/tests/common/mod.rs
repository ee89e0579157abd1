//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use bentrect::qalg::{digits, pow_usize};
use bentrect::{CycloValue, Modulus, QFunction};
use num_complex::Complex64;

/// `f̂(u) = Σ_x χ(f(x) - u·x)` by direct summation.
pub fn naive_wht(f: &QFunction) -> Vec<CycloValue> {
    let (m, n) = (f.modulus(), f.arity());
    let size = pow_usize(m.q(), n);
    let points: Vec<Vec<u32>> = (0..size).map(|i| digits(i, m.q(), n)).collect();
    points
        .iter()
        .map(|u| {
            let mut acc = CycloValue::zero(m);
            for (x, px) in points.iter().enumerate() {
                let dot: u64 = u.iter().zip(px).map(|(&a, &b)| a as u64 * b as u64).sum();
                let e = m.sub(f.at(x), (dot % m.q() as u64) as u32);
                acc += &CycloValue::chi(m, e);
            }
            acc
        })
        .collect()
}

/// The same sum in floating point.
pub fn naive_wht_complex(f: &QFunction) -> Vec<Complex64> {
    let (q, n) = (f.q(), f.arity());
    let size = pow_usize(q, n);
    let tau = std::f64::consts::TAU / q as f64;
    (0..size)
        .map(|u| {
            let ud = digits(u, q, n);
            (0..size)
                .map(|x| {
                    let xd = digits(x, q, n);
                    let dot: i64 = ud.iter().zip(&xd).map(|(&a, &b)| a as i64 * b as i64).sum();
                    Complex64::from_polar(1.0, tau * (f.at(x) as i64 - dot) as f64)
                })
                .sum()
        })
        .collect()
}

/// `□f(u, v) = Σ_y χ(f(u, y) - v·y)`: the partial transform over the last `k` coordinates.
pub fn naive_rectangle(f: &QFunction, m: usize) -> Vec<CycloValue> {
    let mut out = Vec::new();
    for u in 0..pow_usize(f.q(), m) {
        out.extend(naive_wht(&f.prefix_restriction(m, u)));
    }
    out
}

pub fn boolean(n: usize, rule: impl FnMut(&[u32]) -> i64) -> QFunction {
    QFunction::from_fn(Modulus::BOOLEAN, n, rule)
}
