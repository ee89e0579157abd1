use crate::error::{Error, Result};
use crate::qalg::{Matrix, Modulus};

/// Generators of `GL_n` for the split `n = m + k`: block-diagonal matrices
/// `diag(A1, I)` and `diag(I, A2)`, `R = I - E_{m+1,m}` and `S = I - E_{m,m+1}`
/// (1-based indices).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generator {
    Block1(Matrix),
    Block2(Matrix),
    R,
    S,
}

impl Generator {
    pub fn matrix(&self, modulus: Modulus, n: usize, m: usize) -> Matrix {
        let mut out = Matrix::identity(modulus, n);
        let q1 = modulus.q() - 1;
        match self {
            Generator::Block1(a) => embed(&mut out, a, 0),
            Generator::Block2(a) => embed(&mut out, a, m),
            Generator::R => out.set(m, m - 1, q1),
            Generator::S => out.set(m - 1, m, q1),
        }
        out
    }
}

fn embed(out: &mut Matrix, a: &Matrix, at: usize) {
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            out.set(at + i, at + j, a.get(i, j));
        }
    }
}

/// The product `g_1 g_2 ⋯ g_t`.
pub fn recompose(gens: &[Generator], modulus: Modulus, n: usize, m: usize) -> Matrix {
    gens.iter().fold(Matrix::identity(modulus, n), |acc, g| acc.mul(&g.matrix(modulus, n, m)).expect("square"))
}

#[derive(Debug, Clone, Copy)]
enum Op {
    /// `I + c E_{t,s}`
    Transvection { t: usize, s: usize, c: u32 },
    /// `I + (u - 1) E_{t,t}`
    Scale { t: usize, u: u32 },
}

fn left_apply(w: &mut Matrix, op: Op) {
    let md = w.modulus();
    match op {
        Op::Transvection { t, s, c } => {
            for j in 0..w.cols() {
                let v = md.add(w.get(t, j), md.mul(c, w.get(s, j)));
                w.set(t, j, v);
            }
        }
        Op::Scale { t, u } => {
            for j in 0..w.cols() {
                let v = md.mul(u, w.get(t, j));
                w.set(t, j, v);
            }
        }
    }
}

/// Reduce `M` to the identity by transvections and row scalings, with
/// Euclidean pivoting so that composite moduli are handled too.
fn eliminate(mat: &Matrix) -> Result<Vec<Op>> {
    let md = mat.modulus();
    let n = mat.rows();
    let mut w = mat.clone();
    let mut ops = Vec::new();
    let push = |w: &mut Matrix, op: Op, ops: &mut Vec<Op>| {
        left_apply(w, op);
        ops.push(op);
    };
    for j in 0..n {
        loop {
            let nonzero: Vec<usize> = (j..n).filter(|&r| w.get(r, j) != 0).collect();
            if nonzero.len() <= 1 {
                break;
            }
            let p = *nonzero.iter().min_by_key(|&&r| (w.get(r, j), r)).unwrap();
            for &r in &nonzero {
                if r != p {
                    let quot = w.get(r, j) / w.get(p, j);
                    push(&mut w, Op::Transvection { t: r, s: p, c: md.neg(quot) }, &mut ops);
                }
            }
        }
        let p = (j..n).find(|&r| w.get(r, j) != 0).ok_or(Error::Singular(md.q()))?;
        if p != j {
            push(&mut w, Op::Transvection { t: j, s: p, c: 1 }, &mut ops);
        }
        let inv = md.inv(w.get(j, j)).ok_or(Error::Singular(md.q()))?;
        if inv != 1 {
            push(&mut w, Op::Scale { t: j, u: inv }, &mut ops);
        }
        for r in 0..n {
            if r != j && w.get(r, j) != 0 {
                let c = md.neg(w.get(r, j));
                push(&mut w, Op::Transvection { t: r, s: j, c }, &mut ops);
            }
        }
    }
    debug_assert_eq!(w, Matrix::identity(md, n));
    Ok(ops)
}

fn swap_matrix(modulus: Modulus, d: usize, a: usize, b: usize) -> Matrix {
    let mut p = Matrix::identity(modulus, d);
    if a != b {
        p.set(a, a, 0);
        p.set(b, b, 0);
        p.set(a, b, 1);
        p.set(b, a, 1);
    }
    p
}

/// Generators for `I + cE_{t,s}` (or a scaling) in the split `(m, k)`.
fn generators_for(op: Op, modulus: Modulus, m: usize, k: usize) -> Vec<Generator> {
    let block = |idx: usize, c_at: Box<dyn Fn(&mut Matrix, usize)>| -> Generator {
        if idx < m {
            let mut a = Matrix::identity(modulus, m);
            c_at(&mut a, 0);
            Generator::Block1(a)
        } else {
            let mut a = Matrix::identity(modulus, k);
            c_at(&mut a, m);
            Generator::Block2(a)
        }
    };
    match op {
        Op::Scale { t, u } => vec![block(t, Box::new(move |a, off| a.set(t - off, t - off, u)))],
        Op::Transvection { t, s, c } if (t < m) == (s < m) => {
            vec![block(t, Box::new(move |a, off| a.set(t - off, s - off, c)))]
        }
        Op::Transvection { t, s, c } => {
            // conjugate the adjacent cross-block generator into position
            let (upper, lower, gen) = if t < m { (t, s, Generator::S) } else { (s, t, Generator::R) };
            let p1 = Generator::Block1(swap_matrix(modulus, m, upper, m - 1));
            let p2 = Generator::Block2(swap_matrix(modulus, k, lower - m, 0));
            let power = modulus.neg(c) as usize;
            let mut out = vec![p1.clone(), p2.clone()];
            out.extend(std::iter::repeat_n(gen, power));
            out.push(p1);
            out.push(p2);
            out
        }
    }
}

fn is_identity(g: &Generator) -> bool {
    match g {
        Generator::Block1(a) | Generator::Block2(a) => *a == Matrix::identity(a.modulus(), a.rows()),
        _ => false,
    }
}

/// Write an invertible `M` as a product `g_1 g_2 ⋯ g_t` of generators for the
/// split `(m, n - m)`: Gaussian elimination recorded as elementary matrices,
/// with cross-block transvections conjugated from `R` or `S` by block
/// permutations. Adjacent generators of the same block are merged.
pub fn decompose_gl(mat: &Matrix, m: usize) -> Result<Vec<Generator>> {
    if !mat.is_square() {
        return Err(Error::Shape("decomposition needs a square matrix".into()));
    }
    let (md, n) = (mat.modulus(), mat.rows());
    if m > n {
        return Err(Error::Shape(format!("m = {m} exceeds n = {n}")));
    }
    let ops = eliminate(mat)?;
    let mut out: Vec<Generator> = Vec::new();
    for op in ops {
        // M = E_1^{-1} E_2^{-1} ⋯ E_s^{-1}
        let inv = match op {
            Op::Transvection { t, s, c } => Op::Transvection { t, s, c: md.neg(c) },
            Op::Scale { t, u } => Op::Scale { t, u: md.inv(u).expect("unit") },
        };
        for g in generators_for(inv, md, m, n - m) {
            if is_identity(&g) {
                continue;
            }
            match (out.last_mut(), &g) {
                (Some(Generator::Block1(a)), Generator::Block1(b)) | (Some(Generator::Block2(a)), Generator::Block2(b)) => {
                    *a = a.mul(b).expect("square");
                    if is_identity(out.last().unwrap()) {
                        out.pop();
                    }
                }
                _ => out.push(g),
            }
        }
    }
    Ok(out)
}
