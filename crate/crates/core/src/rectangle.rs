//! Rectangles `□f(u, v) = Σ_y f̊(u, y) conj(χ(v·y))`, the bent-rectangle
//! test, transposition, shape shifts and the Boolean cell/row views.

use crate::error::{Error, Result};
use crate::qalg::{pow_usize, CycloValue, Modulus, QFunction};
use crate::spectral::butterfly::{transform_coords, Direction};
use crate::spectral::numeric::{nearest_scaled_root, DEFAULT_TOLERANCE};
use crate::spectral::{profile_of_values, Mode};
use std::fmt;

/// A `q^m × q^k` matrix of exact values. Rows are indexed by `u ∈ V_m`,
/// columns by `v ∈ V_k`, both lexicographically.
///
/// The represented matrix is `q^{h/2} · entries` where `h` is
/// [`Rectangle::half_exponent`]; it is zero except after transposing a
/// rectangle of odd total arity.
#[derive(Clone, PartialEq, Eq)]
pub struct Rectangle {
    modulus: Modulus,
    m: usize,
    k: usize,
    entries: Vec<CycloValue>,
    half_exp: i32,
}

/// Moving one coordinate between the row and column blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shift {
    /// `(m, k) -> (m + 1, k - 1)`
    MoreRows,
    /// `(m, k) -> (m - 1, k + 1)`
    FewerRows,
}

/// A 2×2 submatrix `[[□f(u',a,b,v')]]_{a,b}` of a Boolean rectangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub row_prefix: usize,
    pub col_suffix: usize,
    pub values: [[CycloValue; 2]; 2],
}

/// Column census of a 4-row Boolean rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ColumnKinds {
    /// Columns whose four values are all `±2^{n/2-1}`.
    pub quarter: usize,
    /// Columns with values in `{0, ±2^{n/2}}` and exactly one nonzero.
    pub single: usize,
    /// Anything else (never present in a bent rectangle).
    pub other: usize,
}

impl Rectangle {
    pub fn from_entries(modulus: Modulus, m: usize, k: usize, entries: Vec<CycloValue>) -> Result<Self> {
        let size = pow_usize(modulus.q(), m + k);
        if entries.len() != size {
            return Err(Error::DimensionMismatch { expected: size, actual: entries.len() });
        }
        if let Some(v) = entries.iter().find(|v| v.q() != modulus.q()) {
            return Err(Error::ModulusMismatch(modulus.q(), v.q()));
        }
        Ok(Rectangle { modulus, m, k, entries, half_exp: 0 })
    }

    /// The rectangle of `f` with `m` row coordinates.
    pub fn of(f: &QFunction, m: usize) -> Result<Self> {
        let n = f.arity();
        if m > n {
            return Err(Error::Shape(format!("m = {m} exceeds arity {n}")));
        }
        f.modulus().require_prime()?;
        let mut entries = f.character_table();
        transform_coords(&mut entries, f.q(), n, m..n, Direction::Forward);
        Ok(Rectangle { modulus: f.modulus(), m, k: n - m, entries, half_exp: 0 })
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn q(&self) -> u32 {
        self.modulus.q()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn arity(&self) -> usize {
        self.m + self.k
    }

    pub fn half_exponent(&self) -> i32 {
        self.half_exp
    }

    pub fn row_count(&self) -> usize {
        pow_usize(self.q(), self.m)
    }

    pub fn col_count(&self) -> usize {
        pow_usize(self.q(), self.k)
    }

    pub fn entries(&self) -> &[CycloValue] {
        &self.entries
    }

    pub fn entry(&self, u: usize, v: usize) -> &CycloValue {
        &self.entries[u * self.col_count() + v]
    }

    pub fn row(&self, u: usize) -> &[CycloValue] {
        let w = self.col_count();
        &self.entries[u * w..(u + 1) * w]
    }

    pub fn column(&self, v: usize) -> Vec<CycloValue> {
        let w = self.col_count();
        (0..self.row_count()).map(|u| self.entries[u * w + v].clone()).collect()
    }

    /// Entries as integers, when `q = 2` and there is no pending half-power.
    pub fn integer_entries(&self) -> Option<Vec<i64>> {
        if self.half_exp != 0 {
            return None;
        }
        self.entries.iter().map(|v| v.as_integer()).collect()
    }

    /// Fold an even half-exponent into the entries.
    fn normalized(mut self) -> Result<Self> {
        if self.half_exp % 2 != 0 || self.half_exp == 0 {
            return Ok(self);
        }
        let p = pow_usize(self.q(), (self.half_exp.unsigned_abs() / 2) as usize) as i64;
        if self.half_exp > 0 {
            self.entries = self.entries.iter().map(|v| v.scale(p)).collect();
        } else {
            self.entries = self
                .entries
                .iter()
                .map(|v| v.div_exact(p))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::Inexact(format!("entries not divisible by {p}")))?;
        }
        self.half_exp = 0;
        Ok(self)
    }

    /// Convert to the adjacent shape, exactly.
    pub fn shift_shape(&self, dir: Shift) -> Result<Rectangle> {
        let n = self.arity();
        let mut out = self.clone();
        match dir {
            Shift::MoreRows => {
                if self.k == 0 {
                    return Err(Error::Shape("no column coordinate left to move".into()));
                }
                transform_coords(&mut out.entries, self.q(), n, self.m..self.m + 1, Direction::Backward);
                let q = self.q() as i64;
                out.entries = out
                    .entries
                    .iter()
                    .map(|v| v.div_exact(q))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| Error::Inexact("non-integral division while moving a coordinate to rows".into()))?;
                out.m += 1;
                out.k -= 1;
            }
            Shift::FewerRows => {
                if self.m == 0 {
                    return Err(Error::Shape("no row coordinate left to move".into()));
                }
                transform_coords(&mut out.entries, self.q(), n, self.m - 1..self.m, Direction::Forward);
                out.m -= 1;
                out.k += 1;
            }
        }
        Ok(out)
    }

    /// Repeated [`Rectangle::shift_shape`] until `m` row coordinates remain.
    pub fn reshape(&self, m: usize) -> Result<Rectangle> {
        if m > self.arity() {
            return Err(Error::Shape(format!("m = {m} exceeds arity {}", self.arity())));
        }
        let mut r = self.clone();
        while r.m < m {
            r = r.shift_shape(Shift::MoreRows)?;
        }
        while r.m > m {
            r = r.shift_shape(Shift::FewerRows)?;
        }
        Ok(r)
    }

    /// For each line along `coords`, the character sums `Σ entry·χ(·)` must
    /// all be `q^{e/2}` times a root of unity. Returns the exponents `c`, or
    /// `None` when some sum is not of that form; the flag reports numeric use.
    fn roots_along(&self, coords: std::ops::Range<usize>, e: i32, mode: Mode) -> Result<(Option<Vec<u32>>, bool)> {
        let q = self.q();
        let n = self.arity();
        let numeric = mode == Mode::Numeric || e % 2 != 0;
        if numeric && mode == Mode::Exact && q != 2 {
            return Err(Error::Inexact(format!("q^({e}/2) is irrational")));
        }
        let mut sums = self.entries.clone();
        transform_coords(&mut sums, q, n, coords, Direction::Backward);
        if e % 2 != 0 && q == 2 {
            // integer sums can never equal ±2^{odd/2}
            return Ok((None, false));
        }
        if numeric {
            let target = (q as f64).powf(e as f64 / 2.0);
            let roots = sums
                .iter()
                .map(|v| nearest_scaled_root(v.to_complex(), target, q, DEFAULT_TOLERANCE))
                .collect();
            return Ok((roots, true));
        }
        if e < 0 {
            return Ok((None, false));
        }
        let scale = pow_usize(q, (e / 2) as usize) as i64;
        Ok((sums.iter().map(|v| v.as_scaled_root(scale)).collect(), false))
    }

    /// Rows are spectra of functions of `k` variables and columns, scaled by
    /// `q^{(m-k)/2}`, are spectra of functions of `m` variables.
    pub fn check_bent(&self, mode: Mode) -> Result<(bool, bool)> {
        self.modulus.require_prime()?;
        let n = self.arity() as i32;
        let (rows, num_rows) = self.roots_along(self.m..self.arity(), 2 * self.k as i32 - self.half_exp, mode)?;
        if rows.is_none() {
            return Ok((false, num_rows));
        }
        let (cols, num_cols) = self.roots_along(0..self.m, n - self.half_exp, mode)?;
        Ok((cols.is_some(), num_rows || num_cols))
    }

    pub fn is_bent(&self) -> bool {
        self.check_bent(Mode::Auto).map(|(b, _)| b).unwrap_or(false)
    }

    /// The function `f` of `m + k` variables whose rectangle this is, by
    /// inverse-transforming every row.
    pub fn underlying_function(&self) -> Result<QFunction> {
        self.modulus.require_prime()?;
        let (roots, _) = self.roots_along(self.m..self.arity(), 2 * self.k as i32 - self.half_exp, Mode::Auto)?;
        let table = roots.ok_or_else(|| Error::NotASpectrum("some row is not the spectrum of a function".into()))?;
        QFunction::new(self.modulus, self.arity(), table)
    }

    /// `q^{(m-k)/2} · □Fᵀ` as a `(k, m)` rectangle, together with its function
    /// `g`, which satisfies `g̊(v, u) = q^{-n/2} f̂(-u, v)`.
    pub fn transpose(&self) -> Result<(Rectangle, QFunction)> {
        if !self.is_bent() {
            return Err(Error::NotBent("transpose is only defined for bent rectangles".into()));
        }
        let (rows, cols) = (self.row_count(), self.col_count());
        let mut entries = Vec::with_capacity(self.entries.len());
        for v in 0..cols {
            for u in 0..rows {
                entries.push(self.entries[u * cols + v].clone());
            }
        }
        let t = Rectangle {
            modulus: self.modulus,
            m: self.k,
            k: self.m,
            entries,
            half_exp: self.half_exp + self.m as i32 - self.k as i32,
        }
        .normalized()?;
        let g = t.underlying_function()?;
        Ok((t, g))
    }

    fn require_boolean_shape(&self, m: Option<usize>) -> Result<()> {
        self.modulus.require_boolean()?;
        if let Some(m) = m {
            if self.m != m {
                return Err(Error::Shape(format!("expected {m} row coordinates, got {}", self.m)));
            }
        }
        if self.half_exp != 0 {
            return Err(Error::Shape("rectangle carries a pending half-power".into()));
        }
        Ok(())
    }

    /// The 2×2 cells at `(u', v')`, `u' ∈ V_{m-1}`, `v' ∈ V_{k-1}` (q = 2).
    pub fn cells(&self) -> Result<impl Iterator<Item = Cell> + '_> {
        self.modulus.require_boolean()?;
        if self.m == 0 || self.k == 0 {
            return Err(Error::Shape("cells need m >= 1 and k >= 1".into()));
        }
        let half_cols = self.col_count() / 2;
        let row_prefixes = self.row_count() / 2;
        Ok((0..row_prefixes).flat_map(move |up| {
            (0..half_cols).map(move |vs| {
                let at = |a: usize, b: usize| self.entry(2 * up + a, b * half_cols + vs).clone();
                Cell { row_prefix: up, col_suffix: vs, values: [[at(0, 0), at(0, 1)], [at(1, 0), at(1, 1)]] }
            })
        }))
    }

    /// Two-row structure: the rectangle is bent, every row is the spectrum of
    /// a plateaued function of order `k - 1`, and every column holds exactly
    /// one nonzero value `±2^{n/2}` (q = 2, m = 1).
    pub fn two_row_check(&self) -> Result<bool> {
        self.require_boolean_shape(Some(1))?;
        if !self.is_bent() {
            return Ok(false);
        }
        let n = self.arity();
        let Some(values) = self.integer_entries() else { return Ok(false) };
        for u in 0..2 {
            let profile = profile_of_values(self.row(u));
            if profile.plateaued_order(self.k) != Some(self.k as u32 - 1) {
                return Ok(false);
            }
        }
        let top = 1i64 << (n / 2);
        let w = self.col_count();
        Ok((0..w).all(|v| {
            let (a, b) = (values[v], values[w + v]);
            (a == 0) != (b == 0) && (a.abs() == top || b.abs() == top)
        }))
    }

    pub fn four_row_column_kinds(&self) -> Result<ColumnKinds> {
        self.require_boolean_shape(Some(2))?;
        let n = self.arity();
        let values = self.integer_entries().ok_or_else(|| Error::Shape("non-integer entries".into()))?;
        let w = self.col_count();
        let quarter = if n >= 2 { 1i64 << (n / 2 - 1) } else { 0 };
        let top = 1i64 << (n / 2);
        let mut kinds = ColumnKinds::default();
        for v in 0..w {
            let col = [values[v], values[w + v], values[2 * w + v], values[3 * w + v]];
            if n % 2 == 0 && col.iter().all(|x| x.abs() == quarter) {
                let negatives = col.iter().filter(|&&x| x < 0).count();
                let product: i128 = col.iter().map(|&x| x as i128).product();
                let expected = -(1i128 << (2 * n - 4));
                if negatives % 2 == 1 && product == expected {
                    kinds.quarter += 1;
                } else {
                    kinds.other += 1;
                }
            } else if col.iter().all(|x| *x == 0 || x.abs() == top) && col.iter().filter(|&&x| x != 0).count() == 1 {
                kinds.single += 1;
            } else {
                kinds.other += 1;
            }
        }
        Ok(kinds)
    }

    /// Four-row structure (q = 2, m = 2): bent, and every column is either
    /// four values `±2^{n/2-1}` with an odd number of negatives and product
    /// `-2^{2n-4}`, or a single nonzero `±2^{n/2}`.
    pub fn four_row_check(&self) -> Result<bool> {
        let kinds = self.four_row_column_kinds()?;
        Ok(kinds.other == 0 && self.is_bent())
    }
}

impl fmt::Debug for Rectangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rectangle(q={}, m={}, k={}, h={}) ", self.q(), self.m, self.k, self.half_exp)?;
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Rectangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(|v| v.to_string()).collect();
        let width = cells.iter().map(|s| s.len()).max().unwrap_or(1);
        let w = self.col_count();
        for u in 0..self.row_count() {
            let line: Vec<String> = cells[u * w..(u + 1) * w].iter().map(|s| format!("{s:>width$}")).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}
