use crate::error::{Error, Result};
use crate::partitions::{affine_planes, AffinePlane};
use crate::qalg::{digits, pow_usize, QFunction};
use crate::spectral::is_bent;
use rayon::prelude::*;

/// Outcome of the normality search. `advisory` is set when the input is not
/// bent, in which case the answer is still computed but outside the intended
/// domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normality {
    pub witness: Option<AffinePlane>,
    pub advisory: bool,
}

impl Normality {
    pub fn is_normal(&self) -> bool {
        self.witness.is_some()
    }
}

fn affine_on(f: &QFunction, plane: &AffinePlane) -> bool {
    let m = f.modulus();
    let q = m.q();
    let r = plane.dim();
    let points = plane.point_indices();
    let base = f.at(points[0]);
    let slopes: Vec<u32> = (0..r).map(|i| m.sub(f.at(points[pow_usize(q, r - 1 - i)]), base)).collect();
    points.iter().enumerate().all(|(t, &p)| {
        let t = digits(t, q, r);
        let expected = t.iter().zip(&slopes).fold(base, |acc, (&ti, &s)| m.add(acc, m.mul(ti, s)));
        f.at(p) == expected
    })
}

/// Search all affine planes of dimension `n/2` (in the order of
/// [`affine_planes`]) for one on which `f` is affine; the first such plane
/// in that order is returned.
pub fn is_normal(f: &QFunction) -> Result<Normality> {
    f.modulus().require_boolean()?;
    let n = f.arity();
    if n % 2 != 0 {
        return Err(Error::InvalidParameter("normality needs an even number of variables".into()));
    }
    let planes = affine_planes(f.modulus(), n, n / 2)?;
    let witness = planes.par_iter().position_first(|p| affine_on(f, p)).map(|i| planes[i].clone());
    Ok(Normality { witness, advisory: !is_bent(f) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalg::Modulus;

    #[test]
    fn product_is_normal() {
        let f = QFunction::from_fn(Modulus::BOOLEAN, 2, |x| (x[0] * x[1]) as i64);
        let res = is_normal(&f).unwrap();
        assert!(!res.advisory);
        let w = res.witness.unwrap();
        assert_eq!(w.dim(), 1);
        let vals: Vec<u32> = w.point_indices().iter().map(|&i| f.at(i)).collect();
        assert!(vals.len() == 2);
    }

    #[test]
    fn witness_is_deterministic() {
        let f = QFunction::from_fn(Modulus::BOOLEAN, 4, |x| (x[0] * x[2] + x[1] * x[3] + x[0] * x[1]) as i64);
        let a = is_normal(&f).unwrap();
        let b = is_normal(&f).unwrap();
        assert_eq!(a, b);
        assert!(a.is_normal());
    }

    #[test]
    fn advisory_for_non_bent() {
        let f = QFunction::from_fn(Modulus::BOOLEAN, 2, |x| x[0] as i64);
        let res = is_normal(&f).unwrap();
        assert!(res.advisory && res.is_normal());
        assert!(is_normal(&QFunction::constant(Modulus::BOOLEAN, 3, 0)).is_err());
    }
}
