//! Bent-function constructions: Maiorana–McFarland, direct sums, Rothaus
//! quartets, Carlet flips, stretching, biaffine/bilinear squares and spreads.

mod biaffine;
mod spread;

pub use biaffine::{biaffine_square, bilinear_square, BiaffineMap, BiaffinePhase, BilinearFamily};
pub use spread::{dillon, dillon_square_formula, GaloisField, Spread};

use crate::error::{Error, Result};
use crate::partitions::AffinePlane;
use crate::qalg::{digits, dot_slices, index_of, pow_usize, Matrix, Modulus, QFunction};
use crate::rectangle::Rectangle;
use crate::spectral::{is_bent, plateaued_order, wht};

/// `f(x, y) = π(x)·y + φ(x)` with `π` given as a permutation of the
/// lexicographic indices of `V_n`.
pub fn maiorana(pi: &[usize], phi: &QFunction) -> Result<QFunction> {
    let (q, n) = (phi.q(), phi.arity());
    let size = pow_usize(q, n);
    if pi.len() != size {
        return Err(Error::DimensionMismatch { expected: size, actual: pi.len() });
    }
    let mut seen = vec![false; size];
    for &p in pi {
        if p >= size || std::mem::replace(&mut seen[p], true) {
            return Err(Error::InvalidParameter("π is not a permutation of V_n".into()));
        }
    }
    let images: Vec<Vec<u32>> = pi.iter().map(|&p| digits(p, q, n)).collect();
    let m = phi.modulus();
    let mut table = Vec::with_capacity(size * size);
    for x in 0..size {
        for y in 0..size {
            table.push(m.add(dot_slices(m, &images[x], &digits(y, q, n)), phi.at(x)));
        }
    }
    QFunction::new(m, 2 * n, table)
}

/// `f(x, y) = f1(x) + f2(y)`.
pub fn direct_sum(f1: &QFunction, f2: &QFunction) -> Result<QFunction> {
    f1.modulus().check_same(f2.modulus())?;
    let m = f1.modulus();
    let mut table = Vec::with_capacity(f1.table().len() * f2.table().len());
    for &a in f1.table() {
        table.extend(f2.table().iter().map(|&b| m.add(a, b)));
    }
    QFunction::new(m, f1.arity() + f2.arity(), table)
}

fn check_quartet(fs: [&QFunction; 4]) -> Result<()> {
    for f in fs {
        f.modulus().require_boolean()?;
        fs[0].check_same_shape(f)?;
    }
    for (i, f) in fs.iter().enumerate() {
        if !is_bent(f) {
            return Err(Error::NotBent(format!("f{} is not bent", i + 1)));
        }
    }
    let size = fs[0].table().len();
    if (0..size).any(|x| fs.iter().map(|f| f.at(x)).sum::<u32>() % 2 != 0) {
        return Err(Error::InvalidParameter("f1 + f2 + f3 + f4 is not identically zero".into()));
    }
    Ok(())
}

/// `f(u1, u2, y) = f1f2 + f1f3 + f2f3 + u1(f1 + f2) + u2(f1 + f3) + u1u2`
/// for bent `f_i` with `f1 + f2 + f3 + f4 ≡ 0`.
pub fn rothaus(f1: &QFunction, f2: &QFunction, f3: &QFunction, f4: &QFunction) -> Result<QFunction> {
    check_quartet([f1, f2, f3, f4])?;
    let size = f1.table().len();
    let mut table = Vec::with_capacity(4 * size);
    for u in 0..4u32 {
        let (u1, u2) = (u >> 1, u & 1);
        for y in 0..size {
            let (a, b, c) = (f1.at(y), f2.at(y), f3.at(y));
            table.push((a * b + a * c + b * c + u1 * (a + b) + u2 * (a + c) + u1 * u2) % 2);
        }
    }
    QFunction::new(Modulus::BOOLEAN, f1.arity() + 2, table)
}

/// The rectangle of a Rothaus function with two row coordinates, written as
/// half-sums of the four spectra with the sign pattern of each row.
pub fn rothaus_rectangle_formula(f1: &QFunction, f2: &QFunction, f3: &QFunction, f4: &QFunction) -> Result<Rectangle> {
    check_quartet([f1, f2, f3, f4])?;
    let s = [wht(f1)?, wht(f2)?, wht(f3)?, wht(f4)?];
    let signs: [[i64; 4]; 4] = [[1, 1, 1, -1], [1, -1, 1, 1], [1, 1, -1, 1], [1, -1, -1, -1]];
    let width = s[0].values().len();
    let mut entries = Vec::with_capacity(4 * width);
    for row in signs {
        for v in 0..width {
            let total: i64 = (0..4).map(|i| row[i] * s[i].get(v).as_integer().expect("integer spectrum")).sum();
            entries.push(crate::qalg::CycloValue::integer(Modulus::BOOLEAN, total / 2));
        }
    }
    Rectangle::from_entries(Modulus::BOOLEAN, 2, f1.arity(), entries)
}

/// Indicator of a plane, evaluated by membership.
pub fn plane_indicator(plane: &AffinePlane) -> QFunction {
    let n = plane.ambient_dim();
    QFunction::from_fn(plane.modulus(), n, |x| plane.contains(x) as i64)
}

/// Restriction `t ↦ f(b + tL)` of `f` to a plane through its default chart.
pub fn restrict_to_plane(f: &QFunction, plane: &AffinePlane) -> Result<QFunction> {
    f.modulus().check_same(plane.modulus())?;
    if plane.ambient_dim() != f.arity() {
        return Err(Error::DimensionMismatch { expected: f.arity(), actual: plane.ambient_dim() });
    }
    let table = plane.point_indices().into_iter().map(|i| f.at(i)).collect();
    QFunction::new(f.modulus(), plane.dim(), table)
}

/// `g = f + 1_E` for bent `f` of `2n` variables and a plane `E` of dimension
/// `k ≥ n`, together with the criterion "`f_E` is plateaued of order `2(k - n)`",
/// which holds exactly when `g` is bent.
pub fn carlet_flip(f: &QFunction, plane: &AffinePlane) -> Result<(QFunction, bool)> {
    f.modulus().require_boolean()?;
    let (total, k) = (f.arity(), plane.dim());
    if total % 2 != 0 {
        return Err(Error::InvalidParameter("f must have an even number of variables".into()));
    }
    let n = total / 2;
    if k < n {
        return Err(Error::InvalidParameter(format!("plane dimension {k} is below {n}")));
    }
    let g = f.add(&plane_indicator(plane))?;
    let f_e = restrict_to_plane(f, plane)?;
    let predicate = plateaued_order(&f_e)? == Some(2 * (k - n) as u32);
    Ok((g, predicate))
}

/// `h(x) = g(xAᵀ) + b·x` for an `r × n` matrix `A` of rank `r`.
pub fn stretch(g: &QFunction, a: &Matrix, b: &[u32]) -> Result<QFunction> {
    let m = g.modulus();
    m.check_same(a.modulus())?;
    let (r, n) = (a.rows(), a.cols());
    if g.arity() != r {
        return Err(Error::DimensionMismatch { expected: r, actual: g.arity() });
    }
    if b.len() != n {
        return Err(Error::DimensionMismatch { expected: n, actual: b.len() });
    }
    if a.rank()? != r {
        return Err(Error::InvalidParameter(format!("stretch matrix has rank below {r}")));
    }
    Ok(QFunction::from_fn(m, n, |x| {
        let t = a.apply_transposed(x);
        g.at(index_of(&t, m.q())) as i64 + dot_slices(m, b, x) as i64
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{bentness, is_regular_bent, Mode};

    fn f2() -> Modulus {
        Modulus::BOOLEAN
    }

    #[test]
    fn smallest_maiorana() {
        let f = maiorana(&[0, 1], &QFunction::constant(f2(), 1, 0)).unwrap();
        assert_eq!(f.table(), &[0, 0, 0, 1]);
        assert!(is_regular_bent(&f));
        assert!(maiorana(&[0, 0], &QFunction::constant(f2(), 1, 0)).is_err());
    }

    #[test]
    fn maiorana_over_f3() {
        let f3 = Modulus::new(3).unwrap();
        let f = maiorana(&[0, 2, 1], &QFunction::constant(f3, 1, 0)).unwrap();
        assert_eq!(f, QFunction::from_fn(f3, 2, |x| 2 * (x[0] * x[1]) as i64));
        assert!(is_regular_bent(&f));
    }

    #[test]
    fn direct_sum_bentness() {
        let g = QFunction::from_fn(f2(), 2, |x| (x[0] * x[1]) as i64);
        let s = direct_sum(&g, &g).unwrap();
        assert_eq!(s, QFunction::from_fn(f2(), 4, |x| (x[0] * x[1] + x[2] * x[3]) as i64));
        assert!(is_regular_bent(&s));
        let l = QFunction::from_fn(f2(), 2, |x| x[0] as i64);
        assert!(!is_regular_bent(&direct_sum(&g, &l).unwrap()));
    }

    #[test]
    fn rothaus_identical_quartet() {
        let g = QFunction::from_fn(f2(), 2, |x| (x[0] * x[1]) as i64);
        let f = rothaus(&g, &g, &g, &g).unwrap();
        assert_eq!(f, QFunction::from_fn(f2(), 4, |x| (x[0] * x[1] + x[2] * x[3]) as i64));
        assert_eq!(rothaus_rectangle_formula(&g, &g, &g, &g).unwrap(), Rectangle::of(&f, 2).unwrap());
        let h = g.add_constant(1);
        assert!(matches!(rothaus(&g, &g, &g, &h), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn full_space_flip() {
        let f = QFunction::from_fn(f2(), 4, |x| (x[0] * x[1] + x[2] * x[3]) as i64);
        let whole = AffinePlane::new(f2(), &(0..4).map(|i| (0..4).map(|j| (i == j) as u32).collect()).collect::<Vec<_>>(), &[0; 4]).unwrap();
        let (g, pred) = carlet_flip(&f, &whole).unwrap();
        assert_eq!(g, f.add_constant(1));
        assert!(pred && is_regular_bent(&g));
        let line = AffinePlane::new(f2(), &[vec![1, 0, 0, 0]], &[0; 4]).unwrap();
        assert!(carlet_flip(&f, &line).is_err());
    }

    #[test]
    fn stretch_identity_and_degenerate() {
        let g = QFunction::from_fn(f2(), 2, |x| (x[0] * x[1]) as i64);
        let id = Matrix::identity(f2(), 2);
        assert_eq!(stretch(&g, &id, &[0, 0]).unwrap(), g);
        let c = QFunction::constant(f2(), 0, 1);
        let h = stretch(&c, &Matrix::zero(f2(), 0, 3), &[1, 0, 1]).unwrap();
        assert_eq!(h, QFunction::affine(f2(), &[1, 0, 1], 1));
        let singular = Matrix::from_rows(f2(), &[vec![1, 1], vec![1, 1]]).unwrap();
        assert!(stretch(&g, &singular, &[0, 0]).is_err());
    }

    #[test]
    fn stretched_spectrum_lives_on_plane() {
        let f3 = Modulus::new(3).unwrap();
        let g = QFunction::from_fn(f3, 1, |x| (x[0] * x[0]) as i64);
        let a = Matrix::from_rows(f3, &[vec![1, 2, 0]]).unwrap();
        let b = [0, 1, 1];
        let h = stretch(&g, &a, &b).unwrap();
        let (gs, hs) = (wht(&g).unwrap(), wht(&h).unwrap());
        for v in 0..27 {
            let vv = digits(v, 3, 3);
            let on = (0..3u32).find(|&t| a.apply(&[t]).iter().zip(&b).map(|(x, y)| (x + y) % 3).collect::<Vec<_>>() == vv);
            match on {
                Some(t) => assert_eq!(hs.get(v), &gs.get(t as usize).scale(9)),
                None => assert!(hs.get(v).is_zero()),
            }
        }
        assert!(bentness(&g, Mode::Auto).unwrap().bent);
    }
}
