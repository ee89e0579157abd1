//! Construction parameter files.
//!
//! A TOML document with a `construction` key naming the recipe; the other
//! keys are its parameters. Functions are either inline residue arrays in
//! lexicographic order (arity inferred from the length) or `{ file = "…" }`
//! pointing at a function file, resolved relative to the parameter file.
//! Matrices are arrays of rows.

use bentrect::constructions::{
    biaffine_square, bilinear_square, carlet_flip, dillon, direct_sum, maiorana, rothaus, BiaffineMap, BiaffinePhase,
    BilinearFamily, GaloisField, Spread,
};
use bentrect::format::{parse_function, parse_partition};
use bentrect::partitions::{apart2_form, partition_bent, AffinePlane, PlanePartition};
use bentrect::{Error, Matrix, Modulus, QFunction, Result};
use serde::Deserialize;
use std::path::{Path, PathBuf};

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum FunctionSpec {
    Table(Vec<u32>),
    File { file: PathBuf },
}

#[derive(Debug, Deserialize)]
struct PlaneSpec {
    #[serde(default)]
    basis: Vec<Vec<u32>>,
    shift: Vec<u32>,
}

#[derive(Debug, Deserialize)]
struct PhaseSpec {
    alpha: Vec<Vec<u32>>,
    beta: Vec<u32>,
    gamma: Vec<u32>,
    #[serde(default)]
    delta: u32,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum PartitionSpec {
    Planes { n: usize, m: usize, planes: Vec<PlaneSpec> },
    File { file: PathBuf },
}

fn default_q() -> u32 {
    2
}

#[derive(Debug, Deserialize)]
#[serde(tag = "construction", rename_all = "lowercase")]
enum Spec {
    Mm {
        #[serde(default = "default_q")]
        q: u32,
        pi: Vec<usize>,
        phi: FunctionSpec,
    },
    Sum {
        #[serde(default = "default_q")]
        q: u32,
        f1: FunctionSpec,
        f2: FunctionSpec,
    },
    Rothaus {
        f1: FunctionSpec,
        f2: FunctionSpec,
        f3: FunctionSpec,
        f4: FunctionSpec,
    },
    Carlet {
        f: FunctionSpec,
        plane: PlaneSpec,
    },
    Biaffine {
        #[serde(default = "default_q")]
        q: u32,
        a: Vec<Vec<u32>>,
        b: Vec<Vec<u32>>,
        c: Vec<Vec<Vec<u32>>>,
        d: Vec<u32>,
        g: FunctionSpec,
        phase: Option<PhaseSpec>,
    },
    Bilinear {
        #[serde(default = "default_q")]
        q: u32,
        matrices: Vec<Vec<Vec<u32>>>,
        g: FunctionSpec,
        phase: Option<PhaseSpec>,
        h: FunctionSpec,
        h_prime: FunctionSpec,
    },
    Dillon {
        #[serde(default = "default_q")]
        q: u32,
        /// Degree of the field `GF(q^n)` supplying the spread.
        degree: Option<usize>,
        /// Explicit spread matrices `A_v`, one per `v` in lexicographic order.
        spread: Option<Vec<Vec<Vec<u32>>>>,
        g: FunctionSpec,
        #[serde(default)]
        c: u32,
    },
    Partition {
        #[serde(default = "default_q")]
        q: u32,
        partition: PartitionSpec,
        gens: Vec<FunctionSpec>,
    },
    Apart2 {
        family: usize,
        gens: Vec<FunctionSpec>,
    },
}

struct Ctx<'a> {
    base: &'a Path,
}

impl Ctx<'_> {
    fn function(&self, q: u32, spec: &FunctionSpec) -> Result<QFunction> {
        match spec {
            FunctionSpec::Table(t) => {
                let modulus = Modulus::new(q)?;
                let n = arity_of(q, t.len())?;
                QFunction::new(modulus, n, t.clone())
            }
            FunctionSpec::File { file } => {
                let path = self.base.join(file);
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| Error::InvalidParameter(format!("{}: {e}", path.display())))?;
                let f = parse_function(&text)?;
                if f.q() != q {
                    return Err(Error::ModulusMismatch(q, f.q()));
                }
                Ok(f)
            }
        }
    }

    fn functions(&self, q: u32, specs: &[FunctionSpec]) -> Result<Vec<QFunction>> {
        specs.iter().map(|s| self.function(q, s)).collect()
    }
}

fn arity_of(q: u32, len: usize) -> Result<usize> {
    let mut n = 0;
    let mut size = 1usize;
    while size < len {
        size *= q as usize;
        n += 1;
    }
    if size != len {
        return Err(Error::InvalidParameter(format!("table length {len} is not a power of {q}")));
    }
    Ok(n)
}

fn matrix(q: u32, rows: &[Vec<u32>]) -> Result<Matrix> {
    Matrix::from_rows(Modulus::new(q)?, rows)
}

fn plane(q: u32, spec: &PlaneSpec) -> Result<AffinePlane> {
    AffinePlane::new(Modulus::new(q)?, &spec.basis, &spec.shift)
}

fn phase(q: u32, n: usize, spec: Option<&PhaseSpec>) -> Result<BiaffinePhase> {
    let modulus = Modulus::new(q)?;
    match spec {
        None => Ok(BiaffinePhase::zero(modulus, n)),
        Some(p) => Ok(BiaffinePhase {
            alpha: Matrix::from_rows_with_cols(modulus, &p.alpha, n)?,
            beta: p.beta.clone(),
            gamma: p.gamma.clone(),
            delta: p.delta,
        }),
    }
}

fn four(mut v: Vec<QFunction>) -> Result<[QFunction; 4]> {
    if v.len() != 4 {
        return Err(Error::InvalidParameter(format!("expected 4 functions, got {}", v.len())));
    }
    let d = v.pop().unwrap();
    let c = v.pop().unwrap();
    let b = v.pop().unwrap();
    let a = v.pop().unwrap();
    Ok([a, b, c, d])
}

/// Parse `text` (read from `path`) and build the function it describes.
pub fn construct(text: &str, path: &Path) -> Result<QFunction> {
    let spec: Spec = toml::from_str(text).map_err(|e| Error::Parse {
        line: e.span().map(|s| text[..s.start].lines().count().max(1)).unwrap_or(0),
        message: e.message().to_string(),
    })?;
    let ctx = Ctx { base: path.parent().unwrap_or(Path::new(".")) };
    match &spec {
        Spec::Mm { q, pi, phi } => maiorana(pi, &ctx.function(*q, phi)?),
        Spec::Sum { q, f1, f2 } => direct_sum(&ctx.function(*q, f1)?, &ctx.function(*q, f2)?),
        Spec::Rothaus { f1, f2, f3, f4 } => {
            let [a, b, c, d] = [f1, f2, f3, f4].map(|s| ctx.function(2, s));
            let (a, b, c, d) = (a?, b?, c?, d?);
            rothaus(&a, &b, &c, &d)
        }
        Spec::Carlet { f, plane: p } => {
            let f = ctx.function(2, f)?;
            Ok(carlet_flip(&f, &plane(2, p)?)?.0)
        }
        Spec::Biaffine { q, a, b, c, d, g, phase: ph } => {
            let cs = c.iter().map(|m| matrix(*q, m)).collect::<Result<Vec<_>>>()?;
            let pi = BiaffineMap::new(matrix(*q, a)?, matrix(*q, b)?, cs, d.clone())?;
            let g = ctx.function(*q, g)?;
            let rect = biaffine_square(&pi, &g, &phase(*q, pi.n(), ph.as_ref())?)?;
            rect.underlying_function()
        }
        Spec::Bilinear { q, matrices, g, phase: ph, h, h_prime } => {
            let mats = matrices.iter().map(|m| matrix(*q, m)).collect::<Result<Vec<_>>>()?;
            let fam = BilinearFamily::new(mats)?;
            let phi = phase(*q, fam.n(), ph.as_ref())?;
            let (g, h, hp) = (ctx.function(*q, g)?, ctx.function(*q, h)?, ctx.function(*q, h_prime)?);
            bilinear_square(&fam, &g, &phi, &h, &hp)?.underlying_function()
        }
        Spec::Dillon { q, degree, spread, g, c } => {
            let spread = match (degree, spread) {
                (Some(n), None) => Spread::from_field(&GaloisField::new(*q, *n)?),
                (None, Some(ms)) => Spread::from_matrices(ms.iter().map(|m| matrix(*q, m)).collect::<Result<Vec<_>>>()?)?,
                _ => return Err(Error::InvalidParameter("give exactly one of `degree` and `spread`".into())),
            };
            dillon(&spread, &ctx.function(*q, g)?, *c)
        }
        Spec::Partition { q, partition, gens } => {
            let p = match partition {
                PartitionSpec::Planes { n, m, planes } => {
                    let planes = planes.iter().map(|s| plane(*q, s)).collect::<Result<Vec<_>>>()?;
                    PlanePartition::ordered(Modulus::new(*q)?, *n, *m, planes)?
                }
                PartitionSpec::File { file } => {
                    let path = ctx.base.join(file);
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| Error::InvalidParameter(format!("{}: {e}", path.display())))?;
                    let p = parse_partition(&text)?;
                    if p.modulus().q() != *q {
                        return Err(Error::ModulusMismatch(*q, p.modulus().q()));
                    }
                    p
                }
            };
            Ok(partition_bent(&p, None, &ctx.functions(*q, gens)?)?.1)
        }
        Spec::Apart2 { family, gens } => {
            let [a, b, c, d] = four(ctx.functions(2, gens)?)?;
            apart2_form(*family, [&a, &b, &c, &d])
        }
    }
}
