//! Area distributions from traces at all fluxes `p/q`, inverted by a
//! discrete Fourier transform over `p`.

use std::collections::HashMap;
use std::f64::consts::TAU;

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::FromPrimitive;
use rayon::prelude::*;

use crate::distribution::AreaDistribution;
use crate::error::{invalid, Error, Result};

use super::flux::RationalFlux;
use super::hamiltonian::CliffordHamiltonian;

/// Largest tolerated distance between a recovered count and an integer.
pub const DFT_RESIDUAL_TOLERANCE: f64 = 1e-6;

/// A-priori bound on the algebraic area of a closed `n`-step walk:
/// `floor(n^2 / 16) + n`.
pub fn area_over_bound(n_steps: u32) -> i64 {
    let n = n_steps as i64;
    n * n / 16 + n
}

/// Smallest `q` exceeding both `n` and `2 A_max + 1`.
pub fn dealias_modulus(n_steps: u32) -> u32 {
    let a = area_over_bound(n_steps);
    (n_steps as i64).max(2 * a + 1) as u32 + 1
}

/// Range of `Q` exponents over all closed words of length `n` built from the
/// Hamiltonian's terms, ignoring cancellations. `None` if no word closes.
///
/// Tracks the interval of attainable exponents for every `(a, b)` prefix.
pub fn q_exponent_range(h: &CliffordHamiltonian, n_steps: u32) -> Option<(i64, i64)> {
    let mut states: HashMap<(i64, i64), (i64, i64)> = HashMap::from([((0, 0), (0, 0))]);
    let (da, db) = h.max_abs_exponents();
    let n = n_steps as i64;
    for step in 1..=n {
        let left = n - step;
        let mut next: HashMap<(i64, i64), (i64, i64)> = HashMap::new();
        for (&(a, b), &(lo, hi)) in &states {
            for &(c, ta, tb) in h.terms() {
                if c.norm() == 0.0 {
                    continue;
                }
                let (na, nb) = (a + ta, b + tb);
                if na.abs() > left * da || nb.abs() > left * db {
                    continue;
                }
                let shift = b * ta;
                let e = next.entry((na, nb)).or_insert((lo + shift, hi + shift));
                e.0 = e.0.min(lo + shift);
                e.1 = e.1.max(hi + shift);
            }
        }
        states = next;
    }
    states.get(&(0, 0)).copied()
}

/// Closed-walk distribution of the square lattice at modulus `q`.
pub fn extract_distribution_dft(n_steps: u32, q: u32) -> Result<AreaDistribution> {
    extract_distribution_dft_with(&CliffordHamiltonian::square(), n_steps, q)
}

/// Distribution of `Q` exponents over closed words of `h^n`, from
/// `T(p) = sum_A C(A) e^{2 pi i p A / q}` at `p = 0..q-1`.
///
/// Needs `q > n` and `q` larger than the width of the attainable exponent
/// range so that no two exponents share a residue.
pub fn extract_distribution_dft_with(
    h: &CliffordHamiltonian,
    n_steps: u32,
    q: u32,
) -> Result<AreaDistribution> {
    if q <= n_steps {
        return Err(invalid(format!("DFT modulus {q} must exceed the length {n_steps}")));
    }
    let Some((lo, hi)) = q_exponent_range(h, n_steps) else {
        return Ok(AreaDistribution::new(n_steps));
    };
    if (hi - lo) as u64 >= q as u64 {
        return Err(invalid(format!(
            "DFT modulus {q} aliases exponents in [{lo}, {hi}]"
        )));
    }
    let samples: Vec<Complex64> = (0..q)
        .into_par_iter()
        .map(|p| {
            let flux = RationalFlux::reduced(p, q).expect("q > 0");
            h.closed_word_sum(flux, n_steps)
        })
        .collect();

    let mut dist = AreaDistribution::new(n_steps);
    for a in lo..=hi {
        let mut acc = Complex64::new(0.0, 0.0);
        for (p, t) in samples.iter().enumerate() {
            let r = (p as i64 * a).rem_euclid(q as i64);
            acc += t * Complex64::from_polar(1.0, -TAU * r as f64 / q as f64);
        }
        let value = acc / q as f64;
        let rounded = value.re.round();
        let residual = (value - rounded).norm();
        if !(residual < DFT_RESIDUAL_TOLERANCE) {
            return Err(Error::NumericFailure(format!(
                "count at area {a} is {value}, residual {residual:.3e}"
            )));
        }
        if rounded < 0.0 {
            return Err(Error::InvariantViolation(format!(
                "negative count {rounded} at area {a}"
            )));
        }
        let count = BigUint::from_f64(rounded).ok_or_else(|| {
            Error::NumericFailure(format!("count {rounded} at area {a} is not representable"))
        })?;
        dist.add(a, &count);
    }
    Ok(dist)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u32) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn modulus_choice() {
        assert_eq!(area_over_bound(4), 5);
        assert_eq!(dealias_modulus(4), 12);
        assert_eq!(dealias_modulus(12), 44);
        assert_eq!(dealias_modulus(2), 6);
    }

    #[test]
    fn exponent_ranges() {
        let sq = CliffordHamiltonian::square();
        assert_eq!(q_exponent_range(&sq, 4), Some((-1, 1)));
        assert_eq!(q_exponent_range(&sq, 3), None);
        let tri = CliffordHamiltonian::triangular();
        assert_eq!(q_exponent_range(&tri, 3), Some((-1, 1)));
        assert_eq!(q_exponent_range(&tri, 4), None);
    }

    #[test]
    fn small_square_lengths() {
        assert_eq!(
            extract_distribution_dft(4, 7).unwrap(),
            AreaDistribution::from_counts(4, [(-1, big(4)), (0, big(28)), (1, big(4))])
        );
        assert_eq!(
            extract_distribution_dft(2, 5).unwrap(),
            AreaDistribution::from_counts(2, [(0, big(4))])
        );
        assert!(extract_distribution_dft(4, 4).is_err());
        assert!(extract_distribution_dft(3, 7).unwrap().is_empty());
    }
}
