use super::biaffine::BilinearFamily;
use crate::error::{Error, Result};
use crate::partitions::AffinePlane;
use crate::qalg::{digits, dot_slices, index_of, pow_usize, CycloValue, Matrix, Modulus, QFunction};
use crate::rectangle::Rectangle;
use crate::spectral::wht;

/// `GF(p^n)` as `F_p[α]/(P)` for the lexicographically first monic
/// irreducible `P` of degree `n`; elements are coordinate vectors in the
/// basis `1, α, …, α^{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisField {
    modulus: Modulus,
    n: usize,
    /// low-order coefficients of `P`, which is monic of degree `n`
    poly: Vec<u32>,
}

impl GaloisField {
    pub fn new(p: u32, n: usize) -> Result<Self> {
        let modulus = Modulus::new(p)?;
        modulus.require_prime()?;
        if n == 0 {
            return Err(Error::InvalidParameter("field degree must be positive".into()));
        }
        let poly = (0..pow_usize(p, n))
            .map(|i| {
                let mut c = digits(i, p, n);
                c.reverse();
                c
            })
            .find(|low| is_irreducible(modulus, low))
            .expect("irreducible polynomials exist in every degree");
        Ok(GaloisField { modulus, n, poly })
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let m = self.modulus;
        let mut prod = vec![0u32; 2 * self.n];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = m.add(prod[i + j], m.mul(x, y));
            }
        }
        // α^n = -Σ poly_i α^i
        for top in (self.n..2 * self.n).rev() {
            let c = prod[top];
            if c != 0 {
                prod[top] = 0;
                for (i, &pi) in self.poly.iter().enumerate() {
                    let k = top - self.n + i;
                    prod[k] = m.sub(prod[k], m.mul(c, pi));
                }
            }
        }
        prod.truncate(self.n);
        prod
    }

    /// Matrix `M_v` with `x M_v = x·v`.
    pub fn multiplication_matrix(&self, v: &[u32]) -> Matrix {
        let rows: Vec<Vec<u32>> = (0..self.n)
            .map(|i| {
                let mut e = vec![0u32; self.n];
                e[i] = 1;
                self.mul(&e, v)
            })
            .collect();
        Matrix::from_rows(self.modulus, &rows).expect("residues in range")
    }

    pub fn bilinear_family(&self) -> BilinearFamily {
        let mats = (0..self.n)
            .map(|i| {
                let mut e = vec![0u32; self.n];
                e[i] = 1;
                self.multiplication_matrix(&e)
            })
            .collect();
        BilinearFamily::new(mats).expect("field multiplication is nonsingular")
    }
}

fn poly_rem(m: Modulus, num: &[u32], den_low: &[u32]) -> Vec<u32> {
    // den is monic: den_low plus leading 1
    let d = den_low.len();
    let mut r = num.to_vec();
    while r.len() > d {
        let c = r.pop().unwrap();
        if c != 0 {
            let shift = r.len() - d;
            for (i, &x) in den_low.iter().enumerate() {
                r[shift + i] = m.sub(r[shift + i], m.mul(c, x));
            }
        }
    }
    r
}

fn is_irreducible(m: Modulus, low: &[u32]) -> bool {
    let n = low.len();
    let mut full = low.to_vec();
    full.push(1);
    for d in 1..=n / 2 {
        for i in 0..pow_usize(m.q(), d) {
            let mut divisor = digits(i, m.q(), d);
            divisor.reverse();
            if poly_rem(m, &full, &divisor).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

/// The spread `E_∞ = {(0, v)}`, `E_v = {(u, uA_v)}` of `V_{2n}`, from a set
/// `{A_v}` whose pairwise differences are invertible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spread {
    n: usize,
    family: Vec<Matrix>,
}

impl Spread {
    /// `family[v]` is `A_v` for the lexicographic index `v`.
    pub fn from_matrices(family: Vec<Matrix>) -> Result<Self> {
        let Some(first) = family.first() else {
            return Err(Error::InvalidParameter("empty spread family".into()));
        };
        let (m, n) = (first.modulus(), first.rows());
        if family.len() != pow_usize(m.q(), n) {
            return Err(Error::InvalidParameter(format!("need {} matrices, got {}", pow_usize(m.q(), n), family.len())));
        }
        for a in &family {
            m.check_same(a.modulus())?;
            if a.rows() != n || a.cols() != n {
                return Err(Error::Shape(format!("spread matrices must be {n} × {n}")));
            }
        }
        for i in 0..family.len() {
            for j in i + 1..family.len() {
                if !family[i].sub(&family[j])?.is_invertible() {
                    return Err(Error::InvalidParameter(format!("A_{i} - A_{j} is singular")));
                }
            }
        }
        Ok(Spread { n, family })
    }

    /// The multiplication spread of `GF(p^n)`.
    pub fn from_field(field: &GaloisField) -> Self {
        let (p, n) = (field.modulus().q(), field.degree());
        let family = (0..pow_usize(p, n)).map(|v| field.multiplication_matrix(&digits(v, p, n))).collect();
        Spread { n, family }
    }

    pub fn modulus(&self) -> Modulus {
        self.family[0].modulus()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self, v: usize) -> &Matrix {
        &self.family[v]
    }

    /// `E_∞` followed by `E_v` in index order, as linear subspaces of `V_{2n}`.
    pub fn subspaces(&self) -> Result<Vec<AffinePlane>> {
        let (m, n) = (self.modulus(), self.n);
        let zero = vec![0u32; 2 * n];
        let mut out = Vec::with_capacity(self.family.len() + 1);
        let inf: Vec<Vec<u32>> = (0..n).map(|i| (0..2 * n).map(|j| (j == n + i) as u32).collect()).collect();
        out.push(AffinePlane::new(m, &inf, &zero)?);
        for a in &self.family {
            let gens: Vec<Vec<u32>> = (0..n)
                .map(|i| {
                    let mut row: Vec<u32> = (0..n).map(|j| (i == j) as u32).collect();
                    row.extend_from_slice(a.row(i));
                    row
                })
                .collect();
            out.push(AffinePlane::new(m, &gens, &zero)?);
        }
        Ok(out)
    }
}

/// Dillon's function: `c` on `E_∞`, `g(v)` on `E_v \ {0}`; needs `ĝ(0) = 0`.
pub fn dillon(spread: &Spread, g: &QFunction, c: u32) -> Result<QFunction> {
    let (m, n) = (spread.modulus(), spread.n());
    check_dillon_input(spread, g)?;
    let q = m.q();
    let size = pow_usize(q, n);
    let mut table = vec![m.reduce(c as i64); size * size];
    for v in 0..size {
        let a = spread.matrix(v);
        for ui in 1..size {
            let u = digits(ui, q, n);
            table[ui * size + index_of(&a.apply(&u), q)] = g.at(v);
        }
    }
    QFunction::new(m, 2 * n, table)
}

fn check_dillon_input(spread: &Spread, g: &QFunction) -> Result<()> {
    spread.modulus().check_same(g.modulus())?;
    if g.arity() != spread.n() {
        return Err(Error::DimensionMismatch { expected: spread.n(), actual: g.arity() });
    }
    if !wht(g)?.get(0).is_zero() {
        return Err(Error::InvalidParameter("ĝ(0) must vanish".into()));
    }
    Ok(())
}

/// The square of Dillon's function written directly: `q^n χ(c)` at the
/// origin and `Σ_y g̊(y) conj χ(uA_y·v)` elsewhere.
pub fn dillon_square_formula(spread: &Spread, g: &QFunction, c: u32) -> Result<Rectangle> {
    let (m, n) = (spread.modulus(), spread.n());
    check_dillon_input(spread, g)?;
    let q = m.q();
    let size = pow_usize(q, n);
    let mut entries = Vec::with_capacity(size * size);
    for ui in 0..size {
        let u = digits(ui, q, n);
        let images: Vec<Vec<u32>> = (0..size).map(|y| spread.matrix(y).apply(&u)).collect();
        for vi in 0..size {
            if ui == 0 && vi == 0 {
                entries.push(CycloValue::chi(m, m.reduce(c as i64)).scale(size as i64));
                continue;
            }
            let v = digits(vi, q, n);
            let mut acc = CycloValue::zero(m);
            for (y, img) in images.iter().enumerate() {
                let phase = m.sub(g.at(y), dot_slices(m, img, &v));
                acc += &CycloValue::chi(m, phase);
            }
            entries.push(acc);
        }
    }
    Rectangle::from_entries(m, n, n, entries)
}
