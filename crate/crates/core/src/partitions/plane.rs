use crate::error::{Error, Result};
use crate::qalg::{digits, index_of, pow_usize, Matrix, Modulus};
use std::cmp::Ordering;
use std::fmt;

/// An affine plane `E = L + b` in canonical form: `L` by its reduced
/// row-echelon basis and `b` reduced modulo `L`, which makes `b` the
/// lexicographically smallest point of `E`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AffinePlane {
    basis: Matrix,
    pivots: Vec<usize>,
    shift: Vec<u32>,
}

impl AffinePlane {
    /// The plane through `point` spanned by `generators` (prime `q`).
    pub fn new(modulus: Modulus, generators: &[Vec<u32>], point: &[u32]) -> Result<Self> {
        modulus.require_prime()?;
        let n = point.len();
        let gens = Matrix::from_rows_with_cols(modulus, generators, n)?;
        for &x in point {
            modulus.check_residue(x)?;
        }
        let (basis, pivots) = gens.rref()?;
        let mut plane = AffinePlane { basis, pivots, shift: point.to_vec() };
        plane.shift = plane.reduce(point);
        Ok(plane)
    }

    pub fn point(modulus: Modulus, x: &[u32]) -> Result<Self> {
        Self::new(modulus, &[], x)
    }

    /// Build from a basis already in reduced form and a reduced shift.
    pub(crate) fn from_canonical(basis: Matrix, pivots: Vec<usize>, shift: Vec<u32>) -> Self {
        AffinePlane { basis, pivots, shift }
    }

    pub fn modulus(&self) -> Modulus {
        self.basis.modulus()
    }

    pub fn q(&self) -> u32 {
        self.modulus().q()
    }

    pub fn ambient_dim(&self) -> usize {
        self.shift.len()
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn shift(&self) -> &[u32] {
        &self.shift
    }

    /// Lexicographic index of the smallest point.
    pub fn min_index(&self) -> usize {
        index_of(&self.shift, self.q())
    }

    /// `x` minus the combination of basis rows that zeroes the pivot coordinates.
    pub fn reduce(&self, x: &[u32]) -> Vec<u32> {
        let m = self.modulus();
        let mut y = x.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let t = y[p];
            if t != 0 {
                for (yj, &bj) in y.iter_mut().zip(self.basis.row(i)) {
                    *yj = m.sub(*yj, m.mul(t, bj));
                }
            }
        }
        y
    }

    pub fn contains(&self, x: &[u32]) -> bool {
        x.len() == self.shift.len() && self.reduce(x) == self.shift
    }

    /// `b + tL` for a parameter `t ∈ V_r`.
    pub fn chart_point(&self, t: &[u32]) -> Vec<u32> {
        let m = self.modulus();
        let mut x = self.shift.clone();
        for (i, &ti) in t.iter().enumerate() {
            if ti != 0 {
                for (xj, &bj) in x.iter_mut().zip(self.basis.row(i)) {
                    *xj = m.add(*xj, m.mul(ti, bj));
                }
            }
        }
        x
    }

    /// Indices of all points, in the order of the default chart parameter.
    pub fn point_indices(&self) -> Vec<usize> {
        let (q, r) = (self.q(), self.dim());
        (0..pow_usize(q, r)).map(|t| index_of(&self.chart_point(&digits(t, q, r)), q)).collect()
    }

    /// Intersection of the direction spaces, as a reduced basis.
    pub fn direction_intersection(planes: &[AffinePlane]) -> Result<Matrix> {
        let Some(first) = planes.first() else {
            return Err(Error::InvalidParameter("no planes".into()));
        };
        let n = first.ambient_dim();
        let m = first.modulus();
        let mut normals = Vec::new();
        for p in planes {
            normals.extend(p.basis.right_kernel()?.row_vecs());
        }
        let stacked = Matrix::from_rows_with_cols(m, &normals, n)?;
        stacked.right_kernel()?.rref().map(|(b, _)| b)
    }
}

impl PartialOrd for AffinePlane {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AffinePlane {
    fn cmp(&self, other: &Self) -> Ordering {
        self.shift
            .cmp(&other.shift)
            .then_with(|| self.pivots.len().cmp(&other.pivots.len()))
            .then_with(|| self.basis.row_vecs().cmp(&other.basis.row_vecs()))
    }
}

impl fmt::Debug for AffinePlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AffinePlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        let rows: Vec<String> = (0..self.dim()).map(|i| join(self.basis.row(i))).collect();
        write!(f, "basis: {}; shift: {}", rows.join(", "), join(&self.shift))
    }
}

/// All `d`-dimensional subspaces of `V_n` as reduced bases with their pivot
/// columns, ordered by pivot set and then by free entries.
pub fn subspaces(modulus: Modulus, n: usize, d: usize) -> Result<Vec<(Matrix, Vec<usize>)>> {
    modulus.require_prime()?;
    if d > n {
        return Err(Error::InvalidParameter(format!("dimension {d} exceeds {n}")));
    }
    let q = modulus.q();
    let mut out = Vec::new();
    for pivots in combinations(n, d) {
        // free slots: (row i, column j) with j > pivot_i and j not a pivot
        let slots: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (p + 1..n).filter(|j| !pivots.contains(j)).map(move |j| (i, j)))
            .collect();
        for assign in 0..pow_usize(q, slots.len()) {
            let vals = digits(assign, q, slots.len());
            let mut m = Matrix::zero(modulus, d, n);
            for (i, &p) in pivots.iter().enumerate() {
                m.set(i, p, 1);
            }
            for (&(i, j), &v) in slots.iter().zip(&vals) {
                m.set(i, j, v);
            }
            out.push((m, pivots.clone()));
        }
    }
    Ok(out)
}

/// All affine planes of dimension `d`, ordered by direction space and then
/// by smallest point.
pub fn affine_planes(modulus: Modulus, n: usize, d: usize) -> Result<Vec<AffinePlane>> {
    let q = modulus.q();
    let mut out = Vec::new();
    for (basis, pivots) in subspaces(modulus, n, d)? {
        let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
        for t in 0..pow_usize(q, free.len()) {
            let vals = digits(t, q, free.len());
            let mut shift = vec![0u32; n];
            for (&j, &v) in free.iter().zip(&vals) {
                shift[j] = v;
            }
            out.push(AffinePlane::from_canonical(basis.clone(), pivots.clone(), shift));
        }
    }
    Ok(out)
}

fn combinations(n: usize, d: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, d, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_shift_is_minimal() {
        let f2 = Modulus::BOOLEAN;
        let p = AffinePlane::new(f2, &[vec![1, 1, 0], vec![1, 0, 1]], &[1, 1, 1]).unwrap();
        let pts = p.point_indices();
        assert_eq!(pts.len(), 4);
        assert_eq!(*pts.iter().min().unwrap(), p.min_index());
        assert!(p.contains(&[1, 1, 1]));
        assert!(!p.contains(&[0, 0, 0]));
    }

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        let f2 = Modulus::BOOLEAN;
        assert_eq!(subspaces(f2, 3, 1).unwrap().len(), 7);
        assert_eq!(subspaces(f2, 4, 2).unwrap().len(), 35);
        assert_eq!(subspaces(f2, 6, 3).unwrap().len(), 1395);
        assert_eq!(affine_planes(f2, 6, 3).unwrap().len(), 11160);
        let f3 = Modulus::new(3).unwrap();
        assert_eq!(subspaces(f3, 3, 1).unwrap().len(), 13);
    }

    #[test]
    fn distinct_generators_same_plane() {
        let f3 = Modulus::new(3).unwrap();
        let a = AffinePlane::new(f3, &[vec![1, 2, 0]], &[0, 1, 1]).unwrap();
        let b = AffinePlane::new(f3, &[vec![2, 1, 0]], &[1, 0, 1]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn intersection_of_directions() {
        let f2 = Modulus::BOOLEAN;
        let a = AffinePlane::new(f2, &[vec![1, 0, 0], vec![0, 1, 0]], &[0, 0, 0]).unwrap();
        let b = AffinePlane::new(f2, &[vec![0, 1, 0], vec![0, 0, 1]], &[1, 0, 0]).unwrap();
        let w = AffinePlane::direction_intersection(&[a.clone(), b]).unwrap();
        assert_eq!(w.row_vecs(), vec![vec![0, 1, 0]]);
        let pt = AffinePlane::point(f2, &[1, 1, 1]).unwrap();
        assert_eq!(AffinePlane::direction_intersection(&[a, pt]).unwrap().rows(), 0);
    }
}
