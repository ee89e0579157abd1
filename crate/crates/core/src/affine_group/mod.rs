//! Affine maps over `Z_q`, the six elementary transformations with their
//! rectangle counterparts, generator decomposition of `GL_n`, affine
//! equivalence and normality.

mod decompose;
mod normal;

pub use decompose::{decompose_gl, recompose, Generator};
pub use normal::{is_normal, Normality};

use crate::error::{Error, Result};
use crate::qalg::{digits, dot_slices, index_of, pow_usize, CycloValue, Matrix, Modulus, QFunction};
use crate::rectangle::Rectangle;
use crate::spectral::Spectrum;

/// `σ(x) = xA + a` with `A` invertible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    linear: Matrix,
    shift: Vec<u32>,
}

impl AffineMap {
    pub fn new(linear: Matrix, shift: Vec<u32>) -> Result<Self> {
        if !linear.is_square() {
            return Err(Error::Shape("linear part must be square".into()));
        }
        if shift.len() != linear.rows() {
            return Err(Error::DimensionMismatch { expected: linear.rows(), actual: shift.len() });
        }
        if !linear.is_invertible() {
            return Err(Error::Singular(linear.modulus().q()));
        }
        for &s in &shift {
            linear.modulus().check_residue(s)?;
        }
        Ok(AffineMap { linear, shift })
    }

    pub fn identity(modulus: Modulus, n: usize) -> Self {
        AffineMap { linear: Matrix::identity(modulus, n), shift: vec![0; n] }
    }

    pub fn linear(&self) -> &Matrix {
        &self.linear
    }

    pub fn shift(&self) -> &[u32] {
        &self.shift
    }

    pub fn apply(&self, x: &[u32]) -> Vec<u32> {
        let m = self.linear.modulus();
        self.linear.apply(x).iter().zip(&self.shift).map(|(&a, &b)| m.add(a, b)).collect()
    }
}

/// `g(x) = f(σ(x)) + b·x + c`.
pub fn affine_equivalent(f: &QFunction, sigma: &AffineMap, b: &[u32], c: u32) -> Result<QFunction> {
    let (m, n) = (f.modulus(), f.arity());
    m.check_same(sigma.linear.modulus())?;
    if sigma.shift.len() != n || b.len() != n {
        return Err(Error::DimensionMismatch { expected: n, actual: b.len().min(sigma.shift.len()) });
    }
    Ok(QFunction::from_fn(m, n, |x| {
        f.at(index_of(&sigma.apply(x), m.q())) as i64 + dot_slices(m, b, x) as i64 + c as i64
    }))
}

/// The spectrum of `affine_equivalent(f, σ, b, c)` from that of `f`:
/// `ĝ(u) = χ(a·w + c) f̂(w)` with `w = (u - b)(A^{-1})ᵀ`.
pub fn predicted_spectrum(spectrum: &Spectrum, sigma: &AffineMap, b: &[u32], c: u32) -> Result<Spectrum> {
    let (m, n) = (spectrum.modulus(), spectrum.arity());
    let inv_t = sigma.linear.inverse()?.transpose();
    let values = (0..pow_usize(m.q(), n))
        .map(|u| {
            let diff: Vec<u32> = digits(u, m.q(), n).iter().zip(b).map(|(&x, &y)| m.sub(x, y)).collect();
            let w = inv_t.apply(&diff);
            let phase = m.add(dot_slices(m, &sigma.shift, &w), c);
            spectrum.get(index_of(&w, m.q())).rotate(phase)
        })
        .collect();
    Spectrum::from_values(m, n, values)
}

/// The elementary transformations of a function of `(x1, x2) ∈ V_m × V_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElementaryTransform {
    /// `f(x1 A1 + a1, x2)`
    A1 { a: Matrix, shift: Vec<u32> },
    /// `f(x1, x2 A2) + a2·x2`
    A2 { a: Matrix, linear: Vec<u32> },
    /// `f + b1·x1 + c`
    B1 { linear: Vec<u32>, c: u32 },
    /// `f(x1, x2 + b2)`
    B2 { shift: Vec<u32> },
    /// `x_m ↦ x_m - x_{m+1}`
    C1,
    /// `x_{m+1} ↦ x_{m+1} - x_m`
    C2,
}

impl ElementaryTransform {
    fn validate(&self, modulus: Modulus, m: usize, k: usize) -> Result<()> {
        let dims = |mat: &Matrix, v: &[u32], d: usize| -> Result<()> {
            modulus.check_same(mat.modulus())?;
            if mat.rows() != d || mat.cols() != d || v.len() != d {
                return Err(Error::Shape(format!("parameters must have dimension {d}")));
            }
            if !mat.is_invertible() {
                return Err(Error::Singular(modulus.q()));
            }
            Ok(())
        };
        match self {
            Self::A1 { a, shift } => dims(a, shift, m),
            Self::A2 { a, linear } => dims(a, linear, k),
            Self::B1 { linear, .. } if linear.len() != m => Err(Error::DimensionMismatch { expected: m, actual: linear.len() }),
            Self::B2 { shift } if shift.len() != k => Err(Error::DimensionMismatch { expected: k, actual: shift.len() }),
            Self::C1 | Self::C2 if m == 0 || k == 0 => Err(Error::Shape("C1 and C2 need 1 <= m <= n - 1".into())),
            _ => Ok(()),
        }
    }
}

/// Apply an elementary transformation to `f` with the split `(m, n - m)`.
pub fn apply_transform(f: &QFunction, t: &ElementaryTransform, m: usize) -> Result<QFunction> {
    let (md, n) = (f.modulus(), f.arity());
    if m > n {
        return Err(Error::Shape(format!("m = {m} exceeds arity {n}")));
    }
    t.validate(md, m, n - m)?;
    let q = md.q();
    let out = match t {
        ElementaryTransform::A1 { a, shift } => QFunction::from_fn(md, n, |x| {
            let mut y = a.apply(&x[..m]);
            for (yi, &s) in y.iter_mut().zip(shift) {
                *yi = md.add(*yi, s);
            }
            y.extend_from_slice(&x[m..]);
            f.at(index_of(&y, q)) as i64
        }),
        ElementaryTransform::A2 { a, linear } => QFunction::from_fn(md, n, |x| {
            let mut y = x[..m].to_vec();
            y.extend(a.apply(&x[m..]));
            f.at(index_of(&y, q)) as i64 + dot_slices(md, linear, &x[m..]) as i64
        }),
        ElementaryTransform::B1 { linear, c } => {
            QFunction::from_fn(md, n, |x| f.at(index_of(x, q)) as i64 + dot_slices(md, linear, &x[..m]) as i64 + *c as i64)
        }
        ElementaryTransform::B2 { shift } => QFunction::from_fn(md, n, |x| {
            let mut y = x.to_vec();
            for (yi, &s) in y[m..].iter_mut().zip(shift) {
                *yi = md.add(*yi, s);
            }
            f.at(index_of(&y, q)) as i64
        }),
        ElementaryTransform::C1 => QFunction::from_fn(md, n, |x| {
            let mut y = x.to_vec();
            y[m - 1] = md.sub(x[m - 1], x[m]);
            f.at(index_of(&y, q)) as i64
        }),
        ElementaryTransform::C2 => QFunction::from_fn(md, n, |x| {
            let mut y = x.to_vec();
            y[m] = md.sub(x[m], x[m - 1]);
            f.at(index_of(&y, q)) as i64
        }),
    };
    Ok(out)
}

/// The same transformation acting directly on the rectangle `□f`.
pub fn apply_transform_rect(r: &Rectangle, t: &ElementaryTransform) -> Result<Rectangle> {
    let (md, m, k) = (r.modulus(), r.m(), r.k());
    if r.half_exponent() != 0 {
        return Err(Error::Shape("rectangle carries a pending half-power".into()));
    }
    t.validate(md, m, k)?;
    let q = md.q();
    let (rows, cols) = (r.row_count(), r.col_count());
    let mut entries = Vec::with_capacity(rows * cols);
    match t {
        ElementaryTransform::A1 { a, shift } => {
            for u in 0..rows {
                let mut src = a.apply(&digits(u, q, m));
                for (s, &b) in src.iter_mut().zip(shift) {
                    *s = md.add(*s, b);
                }
                entries.extend_from_slice(r.row(index_of(&src, q)));
            }
        }
        ElementaryTransform::A2 { a, linear } => {
            let b2 = a.inverse()?.transpose();
            let source: Vec<usize> = (0..cols)
                .map(|v| {
                    let diff: Vec<u32> = digits(v, q, k).iter().zip(linear).map(|(&x, &y)| md.sub(x, y)).collect();
                    index_of(&b2.apply(&diff), q)
                })
                .collect();
            for u in 0..rows {
                entries.extend(source.iter().map(|&s| r.entry(u, s).clone()));
            }
        }
        ElementaryTransform::B1 { linear, c } => {
            for u in 0..rows {
                let phase = md.add(dot_slices(md, linear, &digits(u, q, m)), *c);
                entries.extend(r.row(u).iter().map(|x| x.rotate(phase)));
            }
        }
        ElementaryTransform::B2 { shift } => {
            let phases: Vec<u32> = (0..cols).map(|v| dot_slices(md, shift, &digits(v, q, k))).collect();
            for u in 0..rows {
                entries.extend(r.row(u).iter().zip(&phases).map(|(x, &p)| x.rotate(p)));
            }
        }
        ElementaryTransform::C1 => {
            // u = last row coordinate, v = first column coordinate
            let tail = cols / q as usize;
            for row in 0..rows {
                let (up, u) = (row / q as usize, (row % q as usize) as u32);
                for col in 0..cols {
                    let (v, vp) = ((col / tail) as u32, col % tail);
                    let mut acc = CycloValue::zero(md);
                    for x in 0..q {
                        for y in 0..q {
                            let src = r.entry(up * q as usize + x as usize, y as usize * tail + vp);
                            let phase = md.mul(md.sub(u, x), md.sub(v, y));
                            acc += &src.rotate(md.neg(phase));
                        }
                    }
                    let value = acc
                        .div_exact(q as i64)
                        .ok_or_else(|| Error::Inexact("C1 produced a non-integral entry".into()))?;
                    entries.push(value);
                }
            }
        }
        ElementaryTransform::C2 => {
            let tail = cols / q as usize;
            for row in 0..rows {
                let u = (row % q as usize) as u32;
                for col in 0..cols {
                    let v = (col / tail) as u32;
                    entries.push(r.entry(row, col).rotate(md.neg(md.mul(u, v))));
                }
            }
        }
    }
    Rectangle::from_entries(md, m, k, entries)
}

/// Replay `g(x) = f(xA + a) + b·x + c` as elementary transformations with
/// the split `(m, n - m)`: shift, then the generators of `A` in reverse
/// order, then the linear and constant terms.
pub fn realize_affine(sigma: &AffineMap, b: &[u32], c: u32, m: usize) -> Result<Vec<ElementaryTransform>> {
    let md = sigma.linear.modulus();
    let n = sigma.linear.rows();
    if m > n || b.len() != n {
        return Err(Error::Shape("split or linear term does not match the map".into()));
    }
    let k = n - m;
    let mut steps = Vec::new();
    let a = &sigma.shift;
    if m > 0 {
        steps.push(ElementaryTransform::A1 { a: Matrix::identity(md, m), shift: a[..m].to_vec() });
    }
    if k > 0 {
        steps.push(ElementaryTransform::B2 { shift: a[m..].to_vec() });
    }
    for g in decompose_gl(&sigma.linear, m)?.into_iter().rev() {
        steps.push(match g {
            Generator::Block1(a1) => ElementaryTransform::A1 { a: a1, shift: vec![0; m] },
            Generator::Block2(a2) => ElementaryTransform::A2 { a: a2, linear: vec![0; k] },
            Generator::R => ElementaryTransform::C1,
            Generator::S => ElementaryTransform::C2,
        });
    }
    steps.push(ElementaryTransform::B1 { linear: b[..m].to_vec(), c });
    if k > 0 {
        steps.push(ElementaryTransform::A2 { a: Matrix::identity(md, k), linear: b[m..].to_vec() });
    }
    Ok(steps)
}
