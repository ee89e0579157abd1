//! Seeded samplers for random functions, matrices and transformations, the
//! `B_6` sample mix used by the normality experiment, and the reproduction
//! drivers behind `bentrect reproduce`.

use crate::affine_group::{affine_equivalent, is_normal, AffineMap, ElementaryTransform};
use crate::constructions::{carlet_flip, dillon, maiorana, rothaus, GaloisField, Spread};
use crate::error::Result;
use crate::partitions::{
    affine_planes, count_constructed, count_partitions, count_partitions_brute, count_partitions_formula,
    enumerate_partitions, gaussian_coeff, partition_bent, primitive_decomposition_sum, PlanePartition,
};
use crate::qalg::{pow_usize, Matrix, Modulus, QFunction};
use crate::spectral::{enumerate_bent, is_regular_bent};
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

/// Deterministic source of random objects.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn residue(&mut self, modulus: Modulus) -> u32 {
        self.rng.gen_range(0..modulus.q())
    }

    pub fn vector(&mut self, modulus: Modulus, n: usize) -> Vec<u32> {
        (0..n).map(|_| self.residue(modulus)).collect()
    }

    pub fn function(&mut self, modulus: Modulus, n: usize) -> QFunction {
        let table = self.vector(modulus, pow_usize(modulus.q(), n));
        QFunction::new(modulus, n, table).expect("residues in range")
    }

    /// A uniformly random function taking every value equally often.
    pub fn balanced(&mut self, modulus: Modulus, n: usize) -> QFunction {
        let size = pow_usize(modulus.q(), n);
        let mut table: Vec<u32> = (0..size).map(|i| (i % modulus.q() as usize) as u32).collect();
        table.shuffle(&mut self.rng);
        QFunction::new(modulus, n, table).expect("residues in range")
    }

    pub fn matrix(&mut self, modulus: Modulus, rows: usize, cols: usize) -> Matrix {
        let data: Vec<Vec<u32>> = (0..rows).map(|_| self.vector(modulus, cols)).collect();
        Matrix::from_rows_with_cols(modulus, &data, cols).expect("residues in range")
    }

    pub fn invertible(&mut self, modulus: Modulus, n: usize) -> Matrix {
        loop {
            let m = self.matrix(modulus, n, n);
            if m.is_invertible() {
                return m;
            }
        }
    }

    pub fn affine_map(&mut self, modulus: Modulus, n: usize) -> AffineMap {
        let a = self.invertible(modulus, n);
        let shift = self.vector(modulus, n);
        AffineMap::new(a, shift).expect("invertible")
    }

    pub fn permutation(&mut self, size: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..size).collect();
        p.shuffle(&mut self.rng);
        p
    }

    /// `f(xA + a) + b·x + c` for random invertible `A` and random `a`, `b`, `c`.
    pub fn equivalent(&mut self, f: &QFunction) -> QFunction {
        let (m, n) = (f.modulus(), f.arity());
        let sigma = self.affine_map(m, n);
        let b = self.vector(m, n);
        let c = self.residue(m);
        affine_equivalent(f, &sigma, &b, c).expect("shapes match")
    }

    /// A random elementary transformation and a split `m` it is valid for.
    pub fn transform(&mut self, modulus: Modulus, n: usize) -> (ElementaryTransform, usize) {
        let tag = self.below(6);
        let m = if tag >= 4 { 1 + self.below(n - 1) } else { self.below(n + 1) };
        let k = n - m;
        let t = match tag {
            0 => ElementaryTransform::A1 { a: self.invertible(modulus, m), shift: self.vector(modulus, m) },
            1 => ElementaryTransform::A2 { a: self.invertible(modulus, k), linear: self.vector(modulus, k) },
            2 => ElementaryTransform::B1 { linear: self.vector(modulus, m), c: self.residue(modulus) },
            3 => ElementaryTransform::B2 { shift: self.vector(modulus, k) },
            4 => ElementaryTransform::C1,
            _ => ElementaryTransform::C2,
        };
        (t, m)
    }
}

/// All 896 bent functions of four Boolean variables, computed once.
pub fn b4() -> &'static [QFunction] {
    static CELL: OnceLock<Vec<QFunction>> = OnceLock::new();
    CELL.get_or_init(|| enumerate_bent(2, 4).expect("exhaustive scan of F_4"))
}

fn b2() -> &'static [QFunction] {
    static CELL: OnceLock<Vec<QFunction>> = OnceLock::new();
    CELL.get_or_init(|| enumerate_bent(2, 2).expect("exhaustive scan of F_2"))
}

fn v4_partitions() -> &'static [PlanePartition] {
    static CELL: OnceLock<Vec<PlanePartition>> = OnceLock::new();
    CELL.get_or_init(|| enumerate_partitions(4, 2, 2, false).expect("desk-scale enumeration"))
}

fn gf8_spread() -> &'static Spread {
    static CELL: OnceLock<Spread> = OnceLock::new();
    CELL.get_or_init(|| Spread::from_field(&GaloisField::new(2, 3).expect("GF(8)")))
}

/// Four bent functions of four variables with zero sum. Mostly drawn at
/// random from `B_4`; after repeated misses, falls back to `f, f + l, f + l',
/// f + l + l'` for affine `l, l'`.
pub fn rothaus_quartet(s: &mut Sampler) -> [QFunction; 4] {
    let all = b4();
    let set: HashSet<&[u32]> = all.iter().map(|f| f.table()).collect();
    for _ in 0..10_000 {
        let (a, b, c) = (&all[s.below(all.len())], &all[s.below(all.len())], &all[s.below(all.len())]);
        let d = a.add(b).and_then(|x| x.add(c)).expect("same shape");
        if set.contains(d.table()) {
            return [a.clone(), b.clone(), c.clone(), d];
        }
    }
    let f = all[s.below(all.len())].clone();
    let l1 = QFunction::affine(Modulus::BOOLEAN, &s.vector(Modulus::BOOLEAN, 4), s.residue(Modulus::BOOLEAN));
    let l2 = QFunction::affine(Modulus::BOOLEAN, &s.vector(Modulus::BOOLEAN, 4), s.residue(Modulus::BOOLEAN));
    let f2 = f.add(&l1).unwrap();
    let f3 = f.add(&l2).unwrap();
    let f4 = f2.add(&l2).unwrap();
    [f, f2, f3, f4]
}

/// Constructions used to produce bent functions of six variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum B6Source {
    Maiorana,
    Rothaus,
    Partition,
    Dillon,
}

impl B6Source {
    pub const ALL: [B6Source; 4] = [B6Source::Maiorana, B6Source::Rothaus, B6Source::Partition, B6Source::Dillon];
}

impl fmt::Display for B6Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            B6Source::Maiorana => "mm",
            B6Source::Rothaus => "rothaus",
            B6Source::Partition => "partition",
            B6Source::Dillon => "dillon",
        };
        f.write_str(name)
    }
}

/// One bent function of six variables from `source`, before any affine change.
pub fn sample_b6(source: B6Source, s: &mut Sampler) -> QFunction {
    let f2 = Modulus::BOOLEAN;
    match source {
        B6Source::Maiorana => {
            let pi = s.permutation(8);
            let phi = s.function(f2, 3);
            maiorana(&pi, &phi).expect("valid permutation")
        }
        B6Source::Rothaus => {
            let [a, b, c, d] = rothaus_quartet(s);
            rothaus(&a, &b, &c, &d).expect("zero-sum bent quartet")
        }
        B6Source::Partition => {
            let parts = v4_partitions();
            let p = &parts[s.below(parts.len())];
            let mut planes = p.planes().to_vec();
            planes.shuffle(s.rng());
            let ordered = PlanePartition::ordered(f2, 4, 2, planes).expect("reordering keeps a partition");
            let gens: Vec<QFunction> = (0..4).map(|_| b2()[s.below(b2().len())].clone()).collect();
            partition_bent(&ordered, None, &gens).expect("bent g_u").1
        }
        B6Source::Dillon => {
            let g = s.balanced(f2, 3);
            let c = s.residue(f2);
            dillon(gf8_spread(), &g, c).expect("balanced g")
        }
    }
}

/// `count` samples cycling through the sources, each composed with a random
/// affine equivalence.
pub fn b6_samples(count: usize, seed: u64) -> Vec<(B6Source, QFunction)> {
    let mut s = Sampler::new(seed);
    (0..count)
        .map(|i| {
            let source = B6Source::ALL[i % 4];
            let f = sample_b6(source, &mut s);
            (source, s.equivalent(&f))
        })
        .collect()
}

/// One comparison in a reproduction run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub label: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl Check {
    fn new(label: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        Check { label: label.into(), pass: expected == actual, expected, actual }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub target: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

pub const TARGETS: [&str; 5] = ["b4-count", "partitions", "formulas", "normality", "carlet"];

/// Run one of [`TARGETS`].
pub fn reproduce(target: &str, seed: u64) -> Result<Option<Report>> {
    let checks = match target {
        "b4-count" => reproduce_b4()?,
        "partitions" => reproduce_partitions()?,
        "formulas" => reproduce_formulas()?,
        "normality" => reproduce_normality(seed)?,
        "carlet" => reproduce_carlet()?,
        _ => return Ok(None),
    };
    Ok(Some(Report { target: target.to_string(), checks }))
}

fn reproduce_b4() -> Result<Vec<Check>> {
    let regular = b4().iter().filter(|f| is_regular_bent(f)).count();
    Ok(vec![
        Check::new("|B_4| by exhaustive scan", 896, b4().len()),
        Check::new("regular bent among them", 896, regular),
        Check::new("2! · c_2(3,1) · |B_2|^2", 896, count_constructed(3, 1, 2, None)?),
    ])
}

fn reproduce_partitions() -> Result<Vec<Check>> {
    Ok(vec![
        Check::new("c_2(3,2)", 105, count_partitions(3, 2, 2)?),
        Check::new("c*_2(3,2)", 98, count_partitions_brute(3, 2, 2, true)?),
        Check::new("c_2(4,2)", 1505, count_partitions(4, 2, 2)?),
        Check::new("c*_2(4,2)", 0, count_partitions_brute(4, 2, 2, true)?),
    ])
}

fn reproduce_formulas() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for (n, m) in [(2, 1), (3, 1), (4, 1), (2, 2), (3, 2), (4, 2)] {
        let brute = BigUint::from(count_partitions(n, m, 2)?);
        checks.push(Check::new(format!("c_2({n},{m}) closed form vs brute"), count_partitions_formula(n, m, 2)?, &brute));
        checks.push(Check::new(format!("c_2({n},{m}) = Σ_d [n d]_2 c*_2(n-d,{m})"), &brute, primitive_decomposition_sum(n, m, 2)?));
    }
    checks.push(Check::new("[4 2]_2", 35, gaussian_coeff(4, 2, 2)?));
    checks.push(Check::new("4! · c_2(4,2) · 8^4", 147_947_520u64, count_constructed(4, 2, 2, None)?));
    let four_row = BigUint::from(8u32 * 15 * 7 * 43) * BigUint::from(8u32).pow(4);
    checks.push(Check::new("8(2^4-1)(2^3-1)(7·2^3-13)|B_2|^4", 147_947_520u64, four_row));
    Ok(checks)
}

fn reproduce_normality(seed: u64) -> Result<Vec<Check>> {
    let samples = b6_samples(200, seed);
    let mut bent = 0;
    let mut normal = 0;
    for (_, f) in &samples {
        bent += is_regular_bent(f) as usize;
        normal += is_normal(f)?.is_normal() as usize;
    }
    Ok(vec![Check::new("bent samples", 200, bent), Check::new("normal samples", 200, normal)])
}

fn reproduce_carlet() -> Result<Vec<Check>> {
    let f2 = Modulus::BOOLEAN;
    let mut planes = Vec::new();
    for d in 2..=4 {
        planes.extend(affine_planes(f2, 4, d)?);
    }
    let mut agree = 0usize;
    let mut bent_flips = 0usize;
    for f in b4() {
        for p in &planes {
            let (g, predicate) = carlet_flip(f, p)?;
            let bent = is_regular_bent(&g);
            bent_flips += bent as usize;
            agree += (bent == predicate) as usize;
        }
    }
    let total = b4().len() * planes.len();
    Ok(vec![
        Check::new("planes of dimension 2..4 in V_4", 171, planes.len()),
        Check::new("pairs where criterion matches bentness", total, agree),
        Check::new("pairs checked", 896 * 171, total),
    ])
    .map(|mut v: Vec<Check>| {
        v.push(Check { label: "bent flips".into(), expected: "-".into(), actual: bent_flips.to_string(), pass: true });
        v
    })
}
