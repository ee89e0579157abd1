use crate::error::{Error, Result};
use crate::qalg::{digits, dot_slices, index_of, pow_usize, CycloValue, Matrix, Modulus, QFunction};
use crate::rectangle::Rectangle;
use crate::spectral::wht;

/// `π(u, v) = uA + vB + (uC_1vᵀ, …, uC_nvᵀ) + d`, nonsingular: every
/// restriction to `u` or to `v` is invertible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiaffineMap {
    n: usize,
    a: Matrix,
    b: Matrix,
    c: Vec<Matrix>,
    d: Vec<u32>,
}

impl BiaffineMap {
    /// Validates nonsingularity over all `q^n` restrictions of each kind.
    pub fn new(a: Matrix, b: Matrix, c: Vec<Matrix>, d: Vec<u32>) -> Result<Self> {
        let n = a.rows();
        let modulus = a.modulus();
        for mat in std::iter::once(&b).chain(&c) {
            modulus.check_same(mat.modulus())?;
        }
        if !a.is_square() || b.rows() != n || !b.is_square() || c.len() != n || c.iter().any(|m| m.rows() != n || !m.is_square()) {
            return Err(Error::Shape("A, B and C_1..C_n must all be n × n".into()));
        }
        if d.len() != n {
            return Err(Error::DimensionMismatch { expected: n, actual: d.len() });
        }
        let map = BiaffineMap { n, a, b, c, d };
        let size = pow_usize(modulus.q(), n);
        for w in 0..size {
            let w = digits(w, modulus.q(), n);
            if !map.restriction_to_u(&w).is_invertible() || !map.restriction_to_v(&w).is_invertible() {
                return Err(Error::InvalidParameter(format!("biaffine map is singular at {w:?}")));
            }
        }
        Ok(map)
    }

    /// `π(u, v) = u + v`.
    pub fn sum(modulus: Modulus, n: usize) -> Self {
        let id = Matrix::identity(modulus, n);
        BiaffineMap { n, a: id.clone(), b: id, c: vec![Matrix::zero(modulus, n, n); n], d: vec![0; n] }
    }

    pub fn modulus(&self) -> Modulus {
        self.a.modulus()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Matrix of `u ↦ π(u, v) - π(0, v)`: column `i` of the `C` part is `C_i vᵀ`.
    pub fn restriction_to_u(&self, v: &[u32]) -> Matrix {
        let mut m = self.a.clone();
        for (i, ci) in self.c.iter().enumerate() {
            let col = ci.apply_transposed(v);
            for (r, &x) in col.iter().enumerate() {
                m.set(r, i, self.modulus().add(m.get(r, i), x));
            }
        }
        m
    }

    /// Matrix of `v ↦ π(u, v) - π(u, 0)`: column `i` of the `C` part is `C_iᵀ uᵀ`.
    pub fn restriction_to_v(&self, u: &[u32]) -> Matrix {
        let mut m = self.b.clone();
        for (i, ci) in self.c.iter().enumerate() {
            let col = ci.apply(u);
            for (r, &x) in col.iter().enumerate() {
                m.set(r, i, self.modulus().add(m.get(r, i), x));
            }
        }
        m
    }

    pub fn apply(&self, u: &[u32], v: &[u32]) -> Vec<u32> {
        let md = self.modulus();
        let ua = self.a.apply(u);
        let vb = self.b.apply(v);
        (0..self.n)
            .map(|i| {
                let bil = dot_slices(md, &self.c[i].apply(u), v);
                md.add(md.add(ua[i], vb[i]), md.add(bil, self.d[i]))
            })
            .collect()
    }
}

/// `φ(u, v) = Σ α_ij u_i v_j + Σ β_i u_i + Σ γ_j v_j + δ`; its restrictions to
/// `u` and to `v` are affine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiaffinePhase {
    pub alpha: Matrix,
    pub beta: Vec<u32>,
    pub gamma: Vec<u32>,
    pub delta: u32,
}

impl BiaffinePhase {
    pub fn zero(modulus: Modulus, n: usize) -> Self {
        BiaffinePhase { alpha: Matrix::zero(modulus, n, n), beta: vec![0; n], gamma: vec![0; n], delta: 0 }
    }

    pub fn n(&self) -> usize {
        self.alpha.rows()
    }

    fn check(&self, modulus: Modulus, n: usize) -> Result<()> {
        modulus.check_same(self.alpha.modulus())?;
        if self.alpha.rows() != n || self.alpha.cols() != n || self.beta.len() != n || self.gamma.len() != n {
            return Err(Error::Shape(format!("phase coefficients must have dimension {n}")));
        }
        Ok(())
    }

    pub fn eval(&self, u: &[u32], v: &[u32]) -> u32 {
        let m = self.alpha.modulus();
        let bil = dot_slices(m, &self.alpha.apply(u), v);
        let lin = m.add(dot_slices(m, &self.beta, u), dot_slices(m, &self.gamma, v));
        m.add(m.add(bil, lin), self.delta % m.q())
    }
}

/// `□f(u, v) = φ̊(u, v) ĝ(π(u, v))`, a bent square for nonsingular `π`.
pub fn biaffine_square(pi: &BiaffineMap, g: &QFunction, phi: &BiaffinePhase) -> Result<Rectangle> {
    let (m, n) = (pi.modulus(), pi.n());
    m.check_same(g.modulus())?;
    if g.arity() != n {
        return Err(Error::DimensionMismatch { expected: n, actual: g.arity() });
    }
    phi.check(m, n)?;
    let spec = wht(g)?;
    let size = pow_usize(m.q(), n);
    let mut entries = Vec::with_capacity(size * size);
    for ui in 0..size {
        let u = digits(ui, m.q(), n);
        for vi in 0..size {
            let v = digits(vi, m.q(), n);
            let w = index_of(&pi.apply(&u, &v), m.q());
            entries.push(spec.get(w).rotate(phi.eval(&u, &v)));
        }
    }
    Rectangle::from_entries(m, n, n, entries)
}

/// `A_v = Σ v_i M_i` with `A_v` invertible for every `v ≠ 0`, giving the
/// nonsingular bilinear map `π(u, v) = uA_v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearFamily {
    mats: Vec<Matrix>,
}

impl BilinearFamily {
    pub fn new(mats: Vec<Matrix>) -> Result<Self> {
        let Some(first) = mats.first() else {
            return Err(Error::InvalidParameter("empty family".into()));
        };
        let (m, n) = (first.modulus(), mats.len());
        for a in &mats {
            m.check_same(a.modulus())?;
            if a.rows() != n || a.cols() != n {
                return Err(Error::Shape(format!("family matrices must be {n} × {n}")));
            }
        }
        let fam = BilinearFamily { mats };
        for vi in 1..pow_usize(m.q(), n) {
            if !fam.matrix_for(&digits(vi, m.q(), n)).is_invertible() {
                return Err(Error::InvalidParameter(format!("A_v is singular for v = {:?}", digits(vi, m.q(), n))));
            }
        }
        Ok(fam)
    }

    pub fn modulus(&self) -> Modulus {
        self.mats[0].modulus()
    }

    pub fn n(&self) -> usize {
        self.mats.len()
    }

    pub fn matrix_for(&self, v: &[u32]) -> Matrix {
        let m = self.modulus();
        let n = self.n();
        let mut acc = Matrix::zero(m, n, n);
        for (&vi, mi) in v.iter().zip(&self.mats) {
            if vi != 0 {
                acc = acc.add(&mi.scale(vi)).expect("same shape");
            }
        }
        acc
    }

    pub fn apply(&self, u: &[u32], v: &[u32]) -> Vec<u32> {
        self.matrix_for(v).apply(u)
    }
}

/// Bent square with `ĥ(0)` at the origin and `φ̊(u, v) ĝ(uA_v)` elsewhere.
/// The supplied `h`, `h'` must satisfy `ĥ(0) = ĥ'(0)`, `ĥ(u) = φ̊(u,0)ĝ(0)`
/// and `ĥ'(v) = φ̊(0,v)ĝ(0)` for nonzero `u`, `v`.
pub fn bilinear_square(
    fam: &BilinearFamily,
    g: &QFunction,
    phi: &BiaffinePhase,
    h: &QFunction,
    h_prime: &QFunction,
) -> Result<Rectangle> {
    let (m, n) = (fam.modulus(), fam.n());
    for f in [g, h, h_prime] {
        m.check_same(f.modulus())?;
        if f.arity() != n {
            return Err(Error::DimensionMismatch { expected: n, actual: f.arity() });
        }
    }
    phi.check(m, n)?;
    let (gs, hs, hps) = (wht(g)?, wht(h)?, wht(h_prime)?);
    let size = pow_usize(m.q(), n);
    let zero = vec![0u32; n];
    if hs.get(0) != hps.get(0) {
        return Err(Error::InvalidParameter("ĥ(0) differs from ĥ'(0)".into()));
    }
    for w in 1..size {
        let wv = digits(w, m.q(), n);
        if hs.get(w) != &gs.get(0).rotate(phi.eval(&wv, &zero)) {
            return Err(Error::InvalidParameter(format!("ĥ violates its constraint at {wv:?}")));
        }
        if hps.get(w) != &gs.get(0).rotate(phi.eval(&zero, &wv)) {
            return Err(Error::InvalidParameter(format!("ĥ' violates its constraint at {wv:?}")));
        }
    }
    let mut entries: Vec<CycloValue> = Vec::with_capacity(size * size);
    for ui in 0..size {
        let u = digits(ui, m.q(), n);
        for vi in 0..size {
            if ui == 0 && vi == 0 {
                entries.push(hs.get(0).clone());
                continue;
            }
            let v = digits(vi, m.q(), n);
            let w = index_of(&fam.apply(&u, &v), m.q());
            entries.push(gs.get(w).rotate(phi.eval(&u, &v)));
        }
    }
    Rectangle::from_entries(m, n, n, entries)
}
