use super::{AffinePlane, PlanePartition};
use crate::error::{Error, Result};
use crate::qalg::{Modulus, QFunction};
use crate::spectral::is_bent;

type Line = ([u32; 3], [u32; 3]);

const FAMILIES: [[Line; 4]; 3] = [
    [([0, 0, 0], [0, 0, 1]), ([0, 1, 0], [0, 0, 1]), ([1, 0, 0], [0, 0, 1]), ([1, 1, 0], [0, 0, 1])],
    [([0, 0, 0], [0, 0, 1]), ([0, 1, 0], [0, 0, 1]), ([1, 0, 0], [0, 1, 0]), ([1, 0, 1], [0, 1, 0])],
    [([0, 0, 0], [0, 0, 1]), ([0, 1, 0], [1, 0, 0]), ([0, 1, 1], [1, 1, 1]), ([1, 0, 1], [0, 1, 0])],
];

/// The three partitions of `V_3` into lines `[b, e] = {b, b + e}` to which
/// every such partition reduces by an affine change of coordinates.
pub fn canonical_partitions_v3() -> [PlanePartition; 3] {
    FAMILIES.map(|family| lift_family(&family, 1).expect("canonical families are partitions"))
}

fn lift_family(lines: &[Line; 4], r: usize) -> Result<PlanePartition> {
    if r == 0 {
        return Err(Error::InvalidParameter("lifting needs r >= 1".into()));
    }
    let f2 = Modulus::BOOLEAN;
    let n = r + 2;
    let planes = lines
        .iter()
        .map(|(b, e)| {
            let mut gens = vec![pad(e, n)];
            for j in 3..n {
                let mut y = vec![0u32; n];
                y[j] = 1;
                gens.push(y);
            }
            AffinePlane::new(f2, &gens, &pad(b, n))
        })
        .collect::<Result<Vec<_>>>()?;
    PlanePartition::new(f2, n, 2, planes)
}

fn pad(v: &[u32; 3], n: usize) -> Vec<u32> {
    let mut out = v.to_vec();
    out.resize(n, 0);
    out
}

/// Replace each line `[b, e]` of a canonical partition of `V_3` by
/// `{(b, 0) + α(e, 0) + (0, y) : y ∈ V_{r-1}}`, a partition of `V_{r+2}`
/// into planes of dimension `r`.
pub fn lift_canonical(p: &PlanePartition, r: usize) -> Result<PlanePartition> {
    let canon = canonical_partitions_v3();
    let family = canon
        .iter()
        .position(|c| c == p)
        .ok_or_else(|| Error::InvalidParameter("not one of the canonical partitions of V_3".into()))?;
    lift_family(&FAMILIES[family], r)
}

/// The closed-form bent function of `r + 4` variables `(u1, u2, x1, x2, x3, y)`
/// built from the canonical partition `family` (1, 2 or 3) and `g1..g4 ∈ B_r`.
pub fn apart2_form(family: usize, gs: [&QFunction; 4]) -> Result<QFunction> {
    if !(1..=3).contains(&family) {
        return Err(Error::InvalidParameter(format!("family must be 1, 2 or 3, got {family}")));
    }
    let r = gs[0].arity();
    if r < 2 {
        return Err(Error::InvalidParameter("r must be at least 2".into()));
    }
    for (i, g) in gs.iter().enumerate() {
        g.modulus().require_boolean()?;
        if g.arity() != r {
            return Err(Error::DimensionMismatch { expected: r, actual: g.arity() });
        }
        if !is_bent(g) {
            return Err(Error::NotBent(format!("g{} is not bent", i + 1)));
        }
    }
    let at = |g: &QFunction, lead: u32, y: &[u32]| -> i64 {
        let mut arg = Vec::with_capacity(r);
        arg.push(lead % 2);
        arg.extend_from_slice(y);
        g.eval(&arg).expect("argument has arity r") as i64
    };
    let [g1, g2, g3, g4] = gs;
    Ok(QFunction::from_fn(Modulus::BOOLEAN, r + 4, |v| {
        let (u1, u2) = (v[0] as i64, v[1] as i64);
        let (x1, x2, x3) = (v[2], v[3], v[4]);
        let y = &v[5..];
        let (xi1, xi2, xi3) = (x1 as i64, x2 as i64, x3 as i64);
        let h1 = at(g1, x3, y);
        let (both, first, second) = match family {
            1 => {
                let (h2, h3, h4) = (at(g2, x3, y), at(g3, x3, y), at(g4, x3, y));
                (h1 + h2 + h3 + h4, h1 + h3 + xi1, h1 + h2 + xi2)
            }
            2 => {
                let (h2, h3, h4) = (at(g2, x3, y), at(g3, x2, y), at(g4, x2, y));
                (h1 + h2 + h3 + h4 + xi2 + xi3, h1 + h3 + xi1, h1 + h2 + xi2)
            }
            _ => {
                let (h2, h3, h4) = (at(g2, x1, y), at(g3, x1 + x2 + x3, y), at(g4, x2, y));
                (h1 + h2 + h3 + h4 + xi1, h1 + h3 + xi2 + xi3, h1 + h2 + xi2)
            }
        };
        u1 * u2 * both + u1 * first + u2 * second + h1
    }))
}

/// For `f(u1, u2, x)` over `F_2`: every sum of two distinct restrictions
/// `f(a, ·) + f(b, ·)` is balanced.
pub fn balanced_restriction_sums(f: &QFunction) -> Result<bool> {
    f.modulus().require_boolean()?;
    if f.arity() < 2 {
        return Err(Error::Shape("need at least two variables".into()));
    }
    let parts: Vec<QFunction> = (0..4).map(|i| f.prefix_restriction(2, i)).collect();
    for i in 0..4 {
        for j in i + 1..4 {
            if !parts[i].add(&parts[j])?.is_balanced() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
