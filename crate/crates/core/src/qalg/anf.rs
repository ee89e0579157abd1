use super::function::QFunction;
use super::Modulus;
use crate::error::Result;

/// Algebraic normal form of a Boolean function via the binary Möbius transform.
///
/// Coefficient `i` belongs to the monomial whose variables are the set bits of
/// `i`, with `x_1` at the most significant of the `n` bits (same convention as
/// truth-table indices).
pub fn anf(f: &QFunction) -> Result<Vec<u8>> {
    f.modulus().require_boolean()?;
    let mut coeffs: Vec<u8> = f.table().iter().map(|&v| v as u8).collect();
    moebius_in_place(&mut coeffs);
    Ok(coeffs)
}

/// Degree of the ANF; the zero function has degree 0.
pub fn anf_degree(f: &QFunction) -> Result<u32> {
    let coeffs = anf(f)?;
    Ok(coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, _)| i.count_ones())
        .max()
        .unwrap_or(0))
}

/// Evaluate an ANF coefficient table back into a truth table.
pub fn anf_eval(coeffs: &[u8], n: usize) -> Result<QFunction> {
    let mut table = coeffs.to_vec();
    moebius_in_place(&mut table);
    QFunction::new(Modulus::BOOLEAN, n, table.into_iter().map(u32::from).collect())
}

fn moebius_in_place(data: &mut [u8]) {
    let len = data.len();
    let mut half = 1;
    while half < len {
        for block in (0..len).step_by(2 * half) {
            for i in block..block + half {
                data[i + half] ^= data[i];
            }
        }
        half *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boolean(n: usize, rule: impl FnMut(&[u32]) -> i64) -> QFunction {
        QFunction::from_fn(Modulus::BOOLEAN, n, rule)
    }

    /// Oracle: coefficient of monomial S is the parity of f over the subcube below S.
    fn naive_anf(f: &QFunction) -> Vec<u8> {
        let size = f.table().len();
        (0..size)
            .map(|s| {
                (0..size).filter(|&x| x & !s == 0).map(|x| f.at(x) as u8).fold(0, |a, b| a ^ b)
            })
            .collect()
    }

    #[test]
    fn degree_examples() {
        assert_eq!(anf_degree(&boolean(2, |x| (x[0] * x[1]) as i64)).unwrap(), 2);
        assert_eq!(anf_degree(&QFunction::constant(Modulus::BOOLEAN, 3, 1)).unwrap(), 0);
        assert_eq!(anf_degree(&QFunction::constant(Modulus::BOOLEAN, 3, 0)).unwrap(), 0);
        let f = boolean(4, |x| (x[0] * x[1] + x[2] * x[3]) as i64);
        let oracle = naive_anf(&f);
        assert_eq!(anf(&f).unwrap(), oracle);
        let deg = oracle.iter().enumerate().filter(|(_, &c)| c == 1).map(|(i, _)| i.count_ones()).max();
        assert_eq!(deg, Some(2));
        assert_eq!(anf_degree(&f).unwrap(), 2);
    }

    #[test]
    fn monomial_positions() {
        // x1 alone sits at the most significant bit
        let coeffs = anf(&boolean(3, |x| x[0] as i64)).unwrap();
        assert_eq!(coeffs.iter().position(|&c| c == 1), Some(0b100));
    }

    #[test]
    fn non_boolean_rejected() {
        let f = QFunction::constant(Modulus::new(3).unwrap(), 1, 0);
        assert!(anf(&f).is_err());
    }

    #[test]
    fn anf_round_trip_exhaustive_small() {
        for n in 0..=3usize {
            let size = 1usize << n;
            for bits in 0u32..(1 << size) {
                let table = (0..size).map(|i| (bits >> i) & 1).collect();
                let f = QFunction::new(Modulus::BOOLEAN, n, table).unwrap();
                let c = anf(&f).unwrap();
                assert_eq!(c, naive_anf(&f));
                assert_eq!(anf_eval(&c, n).unwrap(), f);
            }
        }
    }
}
