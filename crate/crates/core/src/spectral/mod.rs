//! Walsh–Hadamard transform over `Z_q`, its inverse, and the spectral
//! predicates built on it (bent, regular bent, plateaued).

pub(crate) mod butterfly;
pub mod numeric;

use crate::error::{Error, Result};
use crate::qalg::{pow_usize, CycloValue, Modulus, QFunction};
use butterfly::{transform_coords, Direction};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// The table `f̂(u)`, `u ∈ V_n` in lexicographic order.
#[derive(Clone, PartialEq, Eq)]
pub struct Spectrum {
    modulus: Modulus,
    n: usize,
    values: Vec<CycloValue>,
}

impl Spectrum {
    pub fn from_values(modulus: Modulus, n: usize, values: Vec<CycloValue>) -> Result<Self> {
        let size = pow_usize(modulus.q(), n);
        if values.len() != size {
            return Err(Error::DimensionMismatch { expected: size, actual: values.len() });
        }
        if let Some(v) = values.iter().find(|v| v.q() != modulus.q()) {
            return Err(Error::ModulusMismatch(modulus.q(), v.q()));
        }
        Ok(Spectrum { modulus, n, values })
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[CycloValue] {
        &self.values
    }

    pub fn into_values(self) -> Vec<CycloValue> {
        self.values
    }

    pub fn get(&self, u: usize) -> &CycloValue {
        &self.values[u]
    }

    /// `Σ_u |f̂(u)|^2`, exactly.
    pub fn parseval_sum(&self) -> CycloValue {
        let mut acc = CycloValue::zero(self.modulus);
        for v in &self.values {
            acc += &v.norm_sq();
        }
        acc
    }

    /// Entrywise sum of spectra of the same shape.
    pub fn sum(parts: &[&Spectrum]) -> Result<Spectrum> {
        let first = parts.first().ok_or_else(|| Error::InvalidParameter("empty sum".into()))?;
        let mut values = first.values.clone();
        for p in &parts[1..] {
            first.modulus.check_same(p.modulus)?;
            if p.n != first.n {
                return Err(Error::DimensionMismatch { expected: first.n, actual: p.n });
            }
            for (a, b) in values.iter_mut().zip(&p.values) {
                *a += b;
            }
        }
        Ok(Spectrum { modulus: first.modulus, n: first.n, values })
    }

    /// Exact entrywise division, `None` if some entry is not divisible.
    pub fn div_exact(&self, d: i64) -> Option<Spectrum> {
        let values = self.values.iter().map(|v| v.div_exact(d)).collect::<Option<Vec<_>>>()?;
        Some(Spectrum { modulus: self.modulus, n: self.n, values })
    }
}

impl fmt::Debug for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Spectrum(q={}, n={}, {:?})", self.modulus.q(), self.n, self.values)
    }
}

/// Exact transform `f̂(u) = Σ_x χ(f(x)) conj(χ(u·x))` by a radix-`q` butterfly.
pub fn wht(f: &QFunction) -> Result<Spectrum> {
    f.modulus().require_prime()?;
    let mut values = f.character_table();
    transform_coords(&mut values, f.q(), f.arity(), 0..f.arity(), Direction::Forward);
    Ok(Spectrum { modulus: f.modulus(), n: f.arity(), values })
}

/// Recover `f` from `f̂` via `f̊(x) = q^{-n} Σ_u f̂(u) χ(u·x)`.
pub fn inverse_wht(s: &Spectrum) -> Result<QFunction> {
    inverse_values(s.modulus, s.n, s.values.clone())
}

pub(crate) fn inverse_values(modulus: Modulus, n: usize, mut values: Vec<CycloValue>) -> Result<QFunction> {
    modulus.require_prime()?;
    transform_coords(&mut values, modulus.q(), n, 0..n, Direction::Backward);
    let scale = pow_usize(modulus.q(), n) as i64;
    let mut table = Vec::with_capacity(values.len());
    for (x, v) in values.iter().enumerate() {
        let c = v
            .as_scaled_root(scale)
            .ok_or_else(|| Error::NotASpectrum(format!("reconstructed value at index {x} is not a root of unity")))?;
        table.push(c);
    }
    QFunction::new(modulus, n, table)
}

/// How predicates decide bentness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Exact wherever the arithmetic allows, numeric otherwise.
    #[default]
    Auto,
    Exact,
    Numeric,
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "auto" => Ok(Mode::Auto),
            "exact" => Ok(Mode::Exact),
            "numeric" => Ok(Mode::Numeric),
            other => Err(Error::InvalidParameter(format!("unknown mode '{other}'"))),
        }
    }
}

/// Outcome of a bentness test. `numeric` marks answers obtained in floating point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bentness {
    pub bent: bool,
    pub regular: bool,
    pub numeric: bool,
}

pub fn bentness(f: &QFunction, mode: Mode) -> Result<Bentness> {
    let m = f.modulus();
    let go_numeric = match mode {
        Mode::Numeric => true,
        Mode::Exact => {
            m.require_prime()?;
            false
        }
        Mode::Auto => !m.is_prime(),
    };
    if go_numeric {
        let bent = numeric::is_bent(f, numeric::DEFAULT_TOLERANCE);
        let regular = bent && numeric::is_regular_bent(f, numeric::DEFAULT_TOLERANCE);
        return Ok(Bentness { bent, regular, numeric: true });
    }
    let spectrum = wht(f)?;
    let n = f.arity();
    let target = CycloValue::integer(m, pow_usize(m.q(), n) as i64);
    let bent = spectrum.values.iter().all(|v| v.norm_sq() == target);
    if !bent {
        return Ok(Bentness { bent, regular: false, numeric: false });
    }
    if n % 2 == 0 {
        let scale = pow_usize(m.q(), n / 2) as i64;
        let regular = spectrum.values.iter().all(|v| v.as_scaled_root(scale).is_some());
        return Ok(Bentness { bent, regular, numeric: false });
    }
    // odd n with odd prime q: q^{n/2} is irrational
    match mode {
        Mode::Exact => Err(Error::Inexact(format!("regularity for odd n = {n} over F_{}", m.q()))),
        _ => Ok(Bentness { bent, regular: numeric::is_regular_bent(f, numeric::DEFAULT_TOLERANCE), numeric: true }),
    }
}

/// `|f̂(u)| = q^{n/2}` for every `u`.
pub fn is_bent(f: &QFunction) -> bool {
    bentness(f, Mode::Auto).map(|b| b.bent).unwrap_or(false)
}

/// Bent, and every `f̂(u)` is `q^{n/2}` times a `q`-th root of unity.
pub fn is_regular_bent(f: &QFunction) -> bool {
    bentness(f, Mode::Auto).map(|b| b.regular).unwrap_or(false)
}

/// Distribution of `|f̂|` for a Boolean function, e.g. `8^1 0^7`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralProfile {
    counts: BTreeMap<u64, usize>,
}

impl SpectralProfile {
    pub(crate) fn from_integers(values: impl IntoIterator<Item = i64>) -> Self {
        let mut counts = BTreeMap::new();
        for v in values {
            *counts.entry(v.unsigned_abs()).or_insert(0) += 1;
        }
        SpectralProfile { counts }
    }

    /// `(magnitude, multiplicity)` pairs, largest magnitude first.
    pub fn entries(&self) -> Vec<(u64, usize)> {
        self.counts.iter().rev().map(|(&a, &c)| (a, c)).collect()
    }

    pub fn count(&self, magnitude: u64) -> usize {
        self.counts.get(&magnitude).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    /// Plateau order `r` for a profile over `n` variables: exactly `2^r`
    /// nonzero entries, all of magnitude `2^{n-r/2}`.
    pub fn plateaued_order(&self, n: usize) -> Option<u32> {
        let nonzero: Vec<(u64, usize)> = self.counts.iter().filter(|(&a, _)| a != 0).map(|(&a, &c)| (a, c)).collect();
        let [(magnitude, count)] = nonzero.as_slice() else {
            return None;
        };
        if !count.is_power_of_two() {
            return None;
        }
        let r = count.trailing_zeros();
        if r % 2 != 0 || r as usize > 2 * n {
            return None;
        }
        let expected_exp = n as i64 - (r / 2) as i64;
        if expected_exp < 0 || *magnitude != 1u64 << expected_exp {
            return None;
        }
        if self.count(0) != (1usize << n) - count {
            return None;
        }
        Some(r)
    }
}

impl fmt::Display for SpectralProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries().iter().map(|(a, c)| format!("{a}^{c}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

pub fn spectral_profile(f: &QFunction) -> Result<SpectralProfile> {
    f.modulus().require_boolean()?;
    let s = wht(f)?;
    Ok(profile_of_values(s.values()))
}

pub(crate) fn profile_of_values(values: &[CycloValue]) -> SpectralProfile {
    SpectralProfile::from_integers(values.iter().map(|v| v.as_integer().expect("q = 2 values are integers")))
}

/// Order `r` of a plateaued Boolean function, `None` if it is not plateaued.
pub fn plateaued_order(f: &QFunction) -> Result<Option<u32>> {
    Ok(spectral_profile(f)?.plateaued_order(f.arity()))
}

/// All bent functions of `n` variables over `Z_q` by exhaustive scan, in
/// lexicographic order of their tables. Limited to `q^{q^n} <= 2^20`.
pub fn enumerate_bent(q: u32, n: usize) -> Result<Vec<QFunction>> {
    use rayon::prelude::*;
    let modulus = Modulus::new(q)?;
    modulus.require_prime()?;
    let points = pow_usize(q, n);
    let total = (q as f64).powi(points as i32);
    if total > (1u64 << 20) as f64 {
        return Err(Error::ScaleLimit(format!("{q}^{points} functions is beyond exhaustive scale")));
    }
    Ok((0..total as usize)
        .into_par_iter()
        .filter_map(|i| {
            let table = crate::qalg::digits(i, q, points);
            let f = QFunction::new(modulus, n, table).expect("residues in range");
            bentness(&f, Mode::Auto).ok().filter(|b| b.bent).map(|_| f)
        })
        .collect())
}

/// `(f̂_1 + f̂_2 + f̂_3 + f̂_4) / 2`, or `None` when some entry is odd
/// (odd integers are never Boolean spectral values).
pub fn half_sum_spectrum(fs: [&QFunction; 4]) -> Result<Option<Spectrum>> {
    for f in &fs {
        f.modulus().require_boolean()?;
        fs[0].check_same_shape(f)?;
    }
    let spectra = fs.iter().map(|f| wht(f)).collect::<Result<Vec<_>>>()?;
    let refs: Vec<&Spectrum> = spectra.iter().collect();
    Ok(Spectrum::sum(&refs)?.div_exact(2))
}

/// The function whose spectrum is the half-sum of the four spectra, if any.
/// This happens exactly when `f_1 + f_2 + f_3 + f_4 ≡ 1`, and then the
/// result is `f_1 f_2 + f_1 f_3 + f_2 f_3`.
pub fn quartet_combine(f1: &QFunction, f2: &QFunction, f3: &QFunction, f4: &QFunction) -> Result<Option<QFunction>> {
    match half_sum_spectrum([f1, f2, f3, f4])? {
        None => Ok(None),
        Some(s) => match inverse_wht(&s) {
            Ok(g) => Ok(Some(g)),
            Err(Error::NotASpectrum(_)) => Ok(None),
            Err(e) => Err(e),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boolean(n: usize, rule: impl FnMut(&[u32]) -> i64) -> QFunction {
        QFunction::from_fn(Modulus::BOOLEAN, n, rule)
    }

    fn ints(s: &Spectrum) -> Vec<i64> {
        s.values().iter().map(|v| v.as_integer().unwrap()).collect()
    }

    #[test]
    fn small_spectra() {
        assert_eq!(ints(&wht(&QFunction::constant(Modulus::BOOLEAN, 1, 0)).unwrap()), vec![2, 0]);
        assert_eq!(ints(&wht(&boolean(2, |x| (x[0] * x[1]) as i64)).unwrap()), vec![2, 2, 2, -2]);
    }

    #[test]
    fn affine_spectrum_is_a_single_spike() {
        let f3 = Modulus::new(3).unwrap();
        let b = [2u32, 0, 1];
        let l = QFunction::affine(f3, &b, 1);
        let s = wht(&l).unwrap();
        let spike = crate::qalg::index_of(&b, 3);
        for (u, v) in s.values().iter().enumerate() {
            if u == spike {
                assert_eq!(v, &CycloValue::chi(f3, 1).scale(27));
            } else {
                assert!(v.is_zero());
            }
        }
        assert_eq!(inverse_wht(&s).unwrap(), l);
    }

    #[test]
    fn composite_modulus_rejected_in_exact_transform() {
        let f = QFunction::constant(Modulus::new(4).unwrap(), 1, 0);
        assert!(matches!(wht(&f), Err(Error::CompositeModulus(4))));
        assert!(matches!(bentness(&f, Mode::Exact), Err(Error::CompositeModulus(4))));
        assert!(bentness(&f, Mode::Auto).unwrap().numeric);
    }

    #[test]
    fn zero_spectrum_is_rejected() {
        let s = Spectrum::from_values(Modulus::BOOLEAN, 2, vec![CycloValue::zero(Modulus::BOOLEAN); 4]).unwrap();
        assert!(matches!(inverse_wht(&s), Err(Error::NotASpectrum(_))));
    }

    #[test]
    fn bent_predicates() {
        let f = boolean(2, |x| (x[0] * x[1]) as i64);
        assert!(is_bent(&f) && is_regular_bent(&f));
        let l = boolean(3, |x| (x[0] + x[2]) as i64);
        assert!(!is_bent(&l) && !is_regular_bent(&l));

        let f3 = Modulus::new(3).unwrap();
        let g = QFunction::from_fn(f3, 2, |x| (x[0] * x[1]) as i64);
        let b = bentness(&g, Mode::Exact).unwrap();
        assert!(b.bent && b.regular && !b.numeric);
        let s = wht(&g).unwrap();
        for u in 0..3u32 {
            for v in 0..3u32 {
                let expected = CycloValue::chi(f3, (9 - u * v) % 3).scale(3);
                assert_eq!(s.get((u * 3 + v) as usize), &expected);
            }
        }
    }

    #[test]
    fn odd_arity_over_odd_prime_needs_numeric_regularity() {
        let f3 = Modulus::new(3).unwrap();
        let f = QFunction::from_fn(f3, 1, |x| (x[0] * x[0]) as i64);
        assert!(bentness(&f, Mode::Exact).is_err());
        let b = bentness(&f, Mode::Auto).unwrap();
        assert!(b.bent && !b.regular && b.numeric);
    }

    #[test]
    fn profiles_and_plateaus() {
        let l = boolean(3, |x| (x[1] + 1) as i64);
        assert_eq!(spectral_profile(&l).unwrap().entries(), vec![(8, 1), (0, 7)]);
        assert_eq!(plateaued_order(&l).unwrap(), Some(0));
        let cube = boolean(3, |x| (x[0] * x[1] * x[2]) as i64);
        assert_eq!(spectral_profile(&cube).unwrap().to_string(), "6^1 2^7");
        assert_eq!(plateaued_order(&cube).unwrap(), None);
        let q = boolean(3, |x| (x[0] * x[1]) as i64);
        assert_eq!(spectral_profile(&q).unwrap().to_string(), "4^4 0^4");
        assert_eq!(plateaued_order(&q).unwrap(), Some(2));
        assert_eq!(plateaued_order(&boolean(2, |x| (x[0] * x[1]) as i64)).unwrap(), Some(2));
        assert!(spectral_profile(&QFunction::constant(Modulus::new(3).unwrap(), 1, 0)).is_err());
    }

    #[test]
    fn quartet_examples() {
        let zero = QFunction::constant(Modulus::BOOLEAN, 2, 0);
        let one = QFunction::constant(Modulus::BOOLEAN, 2, 1);
        assert_eq!(quartet_combine(&zero, &zero, &one, &zero).unwrap(), Some(zero.clone()));
        let f = boolean(2, |x| (x[0] * x[1]) as i64);
        assert_eq!(quartet_combine(&f, &f, &f, &f).unwrap(), None);
        let g = QFunction::constant(Modulus::BOOLEAN, 3, 0);
        assert!(quartet_combine(&zero, &zero, &zero, &g).is_err());
    }
}
