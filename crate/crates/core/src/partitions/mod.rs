//! Partitions of `V_n` into affine planes of equal dimension, their
//! enumeration and counting, and bent rectangles built from them.

mod canonical;
mod plane;

pub use canonical::{apart2_form, balanced_restriction_sums, canonical_partitions_v3, lift_canonical};
pub use plane::{affine_planes, subspaces, AffinePlane};

use crate::constructions::stretch;
use crate::error::{Error, Result};
use crate::qalg::{digits, index_of, pow_usize, CycloValue, Matrix, Modulus, QFunction};
use crate::rectangle::Rectangle;
use crate::spectral::{bentness, enumerate_bent, wht, Mode};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// Largest `q^n` handled by enumeration.
pub const ENUMERATION_LIMIT: usize = 1 << 16;

/// Number of `r`-dimensional subspaces of `V_n` over `F_q`.
pub fn gaussian_coeff(n: usize, r: usize, q: u32) -> Result<BigUint> {
    if r > n {
        return Err(Error::InvalidParameter(format!("r = {r} exceeds n = {n}")));
    }
    let q = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..r {
        num *= q.pow((n - i) as u32) - 1u32;
        den *= q.pow((i + 1) as u32) - 1u32;
    }
    Ok(num / den)
}

/// An ordered partition of `V_n` into `q^m` planes of dimension `n - m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlanePartition {
    modulus: Modulus,
    n: usize,
    m: usize,
    planes: Vec<AffinePlane>,
}

impl PlanePartition {
    /// Validate and store the planes in canonical order (by smallest point).
    pub fn new(modulus: Modulus, n: usize, m: usize, mut planes: Vec<AffinePlane>) -> Result<Self> {
        planes.sort();
        Self::ordered(modulus, n, m, planes)
    }

    /// Validate, keeping the given plane order.
    pub fn ordered(modulus: Modulus, n: usize, m: usize, planes: Vec<AffinePlane>) -> Result<Self> {
        modulus.require_prime()?;
        if m > n {
            return Err(Error::Shape(format!("m = {m} exceeds n = {n}")));
        }
        let q = modulus.q();
        if planes.len() != pow_usize(q, m) {
            return Err(Error::InvalidParameter(format!("expected {} planes, got {}", pow_usize(q, m), planes.len())));
        }
        let mut seen = vec![false; pow_usize(q, n)];
        for p in &planes {
            if p.q() != q || p.ambient_dim() != n || p.dim() != n - m {
                return Err(Error::InvalidParameter(format!("plane {p} has the wrong shape")));
            }
            for i in p.point_indices() {
                if std::mem::replace(&mut seen[i], true) {
                    return Err(Error::InvalidParameter(format!("planes overlap at {:?}", digits(i, q, n))));
                }
            }
        }
        Ok(PlanePartition { modulus, n, m, planes })
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn planes(&self) -> &[AffinePlane] {
        &self.planes
    }

    /// Index of the plane containing `x`.
    pub fn plane_of(&self, x: &[u32]) -> Option<usize> {
        self.planes.iter().position(|p| p.contains(x))
    }

    /// `∩ L_i` as a reduced basis.
    pub fn common_direction(&self) -> Result<Matrix> {
        AffinePlane::direction_intersection(&self.planes)
    }

    pub fn is_primitive(&self) -> bool {
        self.common_direction().map(|w| w.rows() == 0).unwrap_or(false)
    }

    /// `dim(L_i ∩ L_j)` for every pair `i < j`.
    pub fn pairwise_intersection_dims(&self) -> Result<Vec<(usize, usize, usize)>> {
        let mut out = Vec::new();
        for i in 0..self.planes.len() {
            for j in i + 1..self.planes.len() {
                let w = AffinePlane::direction_intersection(&[self.planes[i].clone(), self.planes[j].clone()])?;
                out.push((i, j, w.rows()));
            }
        }
        Ok(out)
    }
}

struct Enumerator {
    words: usize,
    /// candidate planes grouped by smallest point, each with its point mask
    by_min: Vec<Vec<(AffinePlane, Vec<u64>)>>,
    size: usize,
}

impl Enumerator {
    fn new(modulus: Modulus, n: usize, m: usize) -> Result<Self> {
        modulus.require_prime()?;
        if m > n {
            return Err(Error::Shape(format!("m = {m} exceeds n = {n}")));
        }
        let q = modulus.q();
        let size = q
            .checked_pow(n as u32)
            .map(|s| s as usize)
            .filter(|&s| s <= ENUMERATION_LIMIT)
            .ok_or_else(|| Error::ScaleLimit(format!("q^n = {q}^{n} exceeds {ENUMERATION_LIMIT}")))?;
        let words = size.div_ceil(64);
        let mut by_min = vec![Vec::new(); size];
        for p in affine_planes(modulus, n, n - m)? {
            let mut mask = vec![0u64; words];
            for i in p.point_indices() {
                mask[i / 64] |= 1 << (i % 64);
            }
            by_min[p.min_index()].push((p, mask));
        }
        for group in &mut by_min {
            group.sort_by(|a, b| a.0.cmp(&b.0));
        }
        Ok(Enumerator { words, by_min, size })
    }

    fn first_uncovered(&self, covered: &[u64]) -> Option<usize> {
        covered
            .iter()
            .enumerate()
            .find(|(_, &w)| w != u64::MAX)
            .map(|(i, &w)| i * 64 + (!w).trailing_zeros() as usize)
            .filter(|&i| i < self.size)
    }

    fn search(&self, covered: &mut Vec<u64>, chosen: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        let Some(p) = self.first_uncovered(covered) else {
            visit(chosen);
            return;
        };
        for (slot, (_, mask)) in self.by_min[p].iter().enumerate() {
            if mask.iter().zip(covered.iter()).any(|(a, b)| a & b != 0) {
                continue;
            }
            for (c, m) in covered.iter_mut().zip(mask) {
                *c |= m;
            }
            chosen.push(slot);
            self.search(covered, chosen, visit);
            chosen.pop();
            for (c, m) in covered.iter_mut().zip(mask) {
                *c &= !m;
            }
        }
    }

    fn initial_cover(&self) -> Vec<u64> {
        let mut covered = vec![0u64; self.words];
        // bits beyond the last point count as covered
        for i in self.size..self.words * 64 {
            covered[i / 64] |= 1 << (i % 64);
        }
        covered
    }

    /// Planes chosen along a search path, recovered from per-step slots.
    fn resolve(&self, slots: &[usize]) -> Vec<AffinePlane> {
        let mut covered = self.initial_cover();
        let mut out = Vec::with_capacity(slots.len());
        for &s in slots {
            let p = self.first_uncovered(&covered).expect("path longer than the cover");
            let (plane, mask) = &self.by_min[p][s];
            for (c, m) in covered.iter_mut().zip(mask) {
                *c |= m;
            }
            out.push(plane.clone());
        }
        out
    }

    /// Run the search below each choice of the plane through the origin.
    fn for_each_root(&self, visit: &mut dyn FnMut(usize, &[usize])) {
        for (slot, (_, mask)) in self.by_min[0].iter().enumerate() {
            let mut covered = self.initial_cover();
            for (c, m) in covered.iter_mut().zip(mask) {
                *c |= m;
            }
            let mut chosen = vec![slot];
            self.search(&mut covered, &mut chosen, &mut |path| visit(slot, path));
        }
    }
}

/// Every partition of `V_n` into `q^m` planes of dimension `n - m`, exactly
/// once, with planes in canonical order, in a deterministic stream order.
pub fn enumerate_partitions(n: usize, m: usize, q: u32, primitive_only: bool) -> Result<Vec<PlanePartition>> {
    let modulus = Modulus::new(q)?;
    let e = Enumerator::new(modulus, n, m)?;
    let mut out = Vec::new();
    e.for_each_root(&mut |_, path| {
        let p = PlanePartition { modulus, n, m, planes: e.resolve(path) };
        if !primitive_only || p.is_primitive() {
            out.push(p);
        }
    });
    Ok(out)
}

/// Brute-force count of all (or only primitive) partitions; parallel over the
/// plane through the origin.
pub fn count_partitions_brute(n: usize, m: usize, q: u32, primitive_only: bool) -> Result<u64> {
    let modulus = Modulus::new(q)?;
    let e = Enumerator::new(modulus, n, m)?;
    let total: u64 = (0..e.by_min[0].len())
        .into_par_iter()
        .map(|root| {
            let mut covered = e.initial_cover();
            for (c, mk) in covered.iter_mut().zip(&e.by_min[0][root].1) {
                *c |= mk;
            }
            let mut count = 0u64;
            let mut chosen = vec![root];
            e.search(&mut covered, &mut chosen, &mut |path| {
                if !primitive_only {
                    count += 1;
                } else {
                    let planes = e.resolve(path);
                    if AffinePlane::direction_intersection(&planes).map(|w| w.rows() == 0).unwrap_or(false) {
                        count += 1;
                    }
                }
            });
            count
        })
        .sum();
    Ok(total)
}

pub fn count_partitions(n: usize, m: usize, q: u32) -> Result<u64> {
    count_partitions_brute(n, m, q, false)
}

/// Closed forms: `m = 0` and `m = n` give 1, `m = 1` gives `(q^n - 1)/(q - 1)`,
/// and `q = 2, m = 2` gives `(2^n - 1)(2^{n-1} - 1)(7·2^{n-1} - 13)/3`.
pub fn count_partitions_formula(n: usize, m: usize, q: u32) -> Result<BigUint> {
    Modulus::new(q)?.require_prime()?;
    if m > n {
        return Err(Error::Shape(format!("m = {m} exceeds n = {n}")));
    }
    if m == 0 || m == n {
        return Ok(BigUint::one());
    }
    if m == 1 {
        return gaussian_coeff(n, 1, q);
    }
    if m == 2 && q == 2 {
        let p = |e: usize| BigUint::one() << e;
        let a = p(n) - 1u32;
        let b = p(n - 1) - 1u32;
        let c = p(n - 1) * 7u32 - 13u32;
        return Ok(a * b * c / 3u32);
    }
    Err(Error::InvalidParameter(format!("no closed form for n = {n}, m = {m}, q = {q}")))
}

/// An affine bijection `t ↦ tA + b` from `V_r` onto a plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    pub linear: Matrix,
    pub shift: Vec<u32>,
}

impl Chart {
    /// The identity parameterization by the reduced basis and smallest point.
    pub fn default_for(plane: &AffinePlane) -> Chart {
        Chart { linear: plane.basis().clone(), shift: plane.shift().to_vec() }
    }

    pub fn apply(&self, t: &[u32]) -> Vec<u32> {
        let m = self.linear.modulus();
        self.linear.apply(t).iter().zip(&self.shift).map(|(&a, &b)| m.add(a, b)).collect()
    }

    fn check_onto(&self, plane: &AffinePlane) -> Result<()> {
        let r = plane.dim();
        let ok = self.linear.rows() == r
            && self.linear.cols() == plane.ambient_dim()
            && self.linear.rank()? == r
            && plane.contains(&self.shift)
            && (0..r).all(|i| plane.reduce(self.linear.row(i)).iter().all(|&x| x == 0));
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("chart is not a bijection onto {plane}")))
        }
    }
}

/// Bent rectangle of `m + n` variables whose row `u` is `q^m ĝ_u` spread over
/// the plane `E_u` through its chart, and zero elsewhere. Returns the
/// rectangle (from the spectral formula) and its function (each row stretched).
pub fn partition_bent(p: &PlanePartition, charts: Option<&[Chart]>, gens: &[QFunction]) -> Result<(Rectangle, QFunction)> {
    let (q, n, m) = (p.modulus.q(), p.n, p.m);
    let r = n - m;
    if gens.len() != p.planes.len() {
        return Err(Error::InvalidParameter(format!("expected {} functions, got {}", p.planes.len(), gens.len())));
    }
    let default: Vec<Chart>;
    let charts = match charts {
        Some(c) => c,
        None => {
            default = p.planes.iter().map(Chart::default_for).collect();
            &default
        }
    };
    if charts.len() != p.planes.len() {
        return Err(Error::InvalidParameter("one chart per plane is required".into()));
    }
    let width = pow_usize(q, n);
    let scale = pow_usize(q, m) as i64;
    let mut entries = vec![CycloValue::zero(p.modulus); pow_usize(q, m) * width];
    let mut table = Vec::with_capacity(pow_usize(q, m) * width);
    for (u, ((plane, chart), g)) in p.planes.iter().zip(charts).zip(gens).enumerate() {
        chart.check_onto(plane)?;
        if g.q() != q || g.arity() != r {
            return Err(Error::InvalidParameter(format!("g_{u} must have {r} variables over Z_{q}")));
        }
        if !bentness(g, Mode::Auto)?.regular {
            return Err(Error::NotBent(format!("g_{u} is not regular bent")));
        }
        let spec = wht(g)?;
        for t in 0..pow_usize(q, r) {
            let v = index_of(&chart.apply(&digits(t, q, r)), q);
            entries[u * width + v] = spec.get(t).scale(scale);
        }
        table.extend_from_slice(stretch(g, &chart.linear, &chart.shift)?.table());
    }
    let rect = Rectangle::from_entries(p.modulus, m, n, entries)?;
    Ok((rect, QFunction::new(p.modulus, m + n, table)?))
}

fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * i)
}

/// `|B_k|` over `Z_q` by exhaustive count, cached.
pub fn bent_count(q: u32, k: usize) -> Result<u64> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, usize), u64>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(&c) = cache.lock().unwrap().get(&(q, k)) {
        return Ok(c);
    }
    let count = enumerate_bent(q, k)?.len() as u64;
    cache.lock().unwrap().insert((q, k), count);
    Ok(count)
}

/// `(q^m)! · c_q(n, m) · |B_{n-m}|^{q^m}`. With `bent_size = None` the count
/// `|B_{n-m}|` is computed exhaustively.
pub fn count_constructed(n: usize, m: usize, q: u32, bent_size: Option<u64>) -> Result<BigUint> {
    let c = match count_partitions_formula(n, m, q) {
        Ok(c) => c,
        Err(_) => BigUint::from(count_partitions(n, m, q)?),
    };
    let b = match bent_size {
        Some(b) => b,
        None => bent_count(q, n - m)?,
    };
    let rows = pow_usize(q, m);
    Ok(factorial(rows) * c * BigUint::from(b).pow(rows as u32))
}

/// The sum of Gaussian-weighted primitive counts,
/// `Σ_d [n d]_q · c*_q(n - d, m)`, with brute-force primitive counts.
pub fn primitive_decomposition_sum(n: usize, m: usize, q: u32) -> Result<BigUint> {
    let mut total = BigUint::zero();
    for d in 0..=n - m {
        let prim = count_partitions_brute(n - d, m, q, true)?;
        total += gaussian_coeff(n, d, q)? * prim;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_values() {
        assert_eq!(gaussian_coeff(5, 0, 2).unwrap(), BigUint::one());
        assert_eq!(gaussian_coeff(3, 1, 2).unwrap(), BigUint::from(7u32));
        assert_eq!(gaussian_coeff(4, 2, 2).unwrap(), BigUint::from(35u32));
        assert_eq!(gaussian_coeff(3, 2, 3).unwrap(), BigUint::from(13u32));
        assert!(gaussian_coeff(2, 3, 2).is_err());
    }

    #[test]
    fn small_partition_counts() {
        assert_eq!(count_partitions(2, 2, 2).unwrap(), 1);
        assert_eq!(count_partitions(3, 1, 2).unwrap(), 7);
        assert_eq!(count_partitions(3, 2, 2).unwrap(), 105);
        assert_eq!(count_partitions_brute(3, 2, 2, true).unwrap(), 98);
        assert_eq!(count_partitions(2, 1, 3).unwrap(), 4);
        let listed = enumerate_partitions(3, 2, 2, false).unwrap();
        assert_eq!(listed.len(), 105);
        let unique: std::collections::HashSet<_> = listed.iter().collect();
        assert_eq!(unique.len(), 105);
    }

    #[test]
    fn formulas() {
        assert_eq!(count_partitions_formula(3, 1, 2).unwrap(), BigUint::from(7u32));
        assert_eq!(count_partitions_formula(3, 2, 2).unwrap(), BigUint::from(105u32));
        assert_eq!(count_partitions_formula(4, 2, 2).unwrap(), BigUint::from(1505u32));
        assert!(count_partitions_formula(4, 2, 3).is_err());
    }

    #[test]
    fn parallel_planes_are_not_primitive() {
        let f2 = Modulus::BOOLEAN;
        let planes = (0..2u32)
            .map(|b| AffinePlane::new(f2, &[vec![0, 1]], &[b, 0]).unwrap())
            .collect();
        let p = PlanePartition::new(f2, 2, 1, planes).unwrap();
        assert!(!p.is_primitive());
        let points = (0..4).map(|i| AffinePlane::point(f2, &digits(i, 2, 2)).unwrap()).collect();
        assert!(PlanePartition::new(f2, 2, 2, points).unwrap().is_primitive());
    }

    #[test]
    fn overlapping_planes_rejected() {
        let f2 = Modulus::BOOLEAN;
        let a = AffinePlane::new(f2, &[vec![0, 1]], &[0, 0]).unwrap();
        let b = AffinePlane::new(f2, &[vec![1, 1]], &[0, 0]).unwrap();
        assert!(PlanePartition::new(f2, 2, 1, vec![a, b]).is_err());
    }

    #[test]
    fn scale_limit() {
        assert!(matches!(enumerate_partitions(17, 1, 2, false), Err(Error::ScaleLimit(_))));
    }

    #[test]
    fn constructed_counts() {
        assert_eq!(count_constructed(3, 1, 2, None).unwrap(), BigUint::from(896u32));
        assert_eq!(count_constructed(4, 2, 2, Some(8)).unwrap(), BigUint::from(147_947_520u64));
    }
}
