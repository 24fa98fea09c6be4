//! Closed chiral walks on the triangular lattice.
//!
//! The three hops satisfy `V U = Q^2 U V` and `W = Q U^-1 V^-1`, realised as
//! `U = -i u v`, `V = i u^-1 v`, `W = v^-2`. The area of a closed word is the
//! power of `Q` left after normal ordering.

use std::fmt;

use num_complex::Complex64;

use crate::distribution::AreaDistribution;
use crate::error::{invalid, Error, Result};
use crate::spectral::{
    cluster_b_compositions, cluster_b_logseries, dealias_modulus, extract_distribution_dft_with,
    z_series, CliffordHamiltonian, RationalFlux, SpectralFunctions,
};

/// Length cap for [`triangular_distribution`].
pub const DEFAULT_TRIANGULAR_LIMIT: u32 = 21;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChiralStep {
    U,
    V,
    W,
}

impl ChiralStep {
    pub const ALL: [ChiralStep; 3] = [ChiralStep::U, ChiralStep::V, ChiralStep::W];

    /// `(coefficient, u power, v power)` in the clock-and-shift form.
    pub fn term(self) -> (Complex64, i64, i64) {
        let i = Complex64::new(0.0, 1.0);
        match self {
            ChiralStep::U => (-i, 1, 1),
            ChiralStep::V => (i, -1, 1),
            ChiralStep::W => (Complex64::new(1.0, 0.0), 0, -2),
        }
    }
}

impl fmt::Display for ChiralStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            ChiralStep::U => 'U',
            ChiralStep::V => 'V',
            ChiralStep::W => 'W',
        };
        write!(f, "{c}")
    }
}

/// `H = U + V + W = i(-u + u^-1) v + v^-2`.
pub fn triangular_hamiltonian() -> CliffordHamiltonian {
    CliffordHamiltonian::new(ChiralStep::ALL.iter().map(|s| s.term()).collect())
}

/// Closed chiral walks of length `n_steps` by area. Empty unless `3 | n`.
pub fn triangular_distribution(n_steps: u32) -> Result<AreaDistribution> {
    triangular_distribution_with_limit(n_steps, DEFAULT_TRIANGULAR_LIMIT)
}

pub fn triangular_distribution_with_limit(n_steps: u32, limit: u32) -> Result<AreaDistribution> {
    if n_steps < 3 {
        return Err(invalid(format!("chiral walks need at least 3 steps, got {n_steps}")));
    }
    if n_steps > limit {
        return Err(Error::ResourceLimit(format!(
            "triangular enumeration capped at {limit} steps, asked for {n_steps}"
        )));
    }
    if n_steps % 3 != 0 {
        return Ok(AreaDistribution::new(n_steps));
    }
    extract_distribution_dft_with(&triangular_hamiltonian(), n_steps, dealias_modulus(n_steps))
}

/// One modulus of [`triangular_cluster_crosscheck`].
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterRow {
    pub flux: RationalFlux,
    /// `b(n)` from 3-compositions.
    pub b_compositions: Complex64,
    /// `b(n)` from the logarithm of `sum Z(m) z^m`.
    pub b_logseries: Complex64,
    /// `sum_A C_{3n}(A) Q^A`.
    pub closed_sum: Complex64,
    /// `closed_sum / (b(n) / q)`.
    pub kappa: Complex64,
}

impl ClusterRow {
    pub fn relative_gap(&self) -> f64 {
        (self.b_compositions - self.b_logseries).norm() / self.b_logseries.norm().max(1e-300)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusterReport {
    pub n: u32,
    pub rows: Vec<ClusterRow>,
}

impl ClusterReport {
    pub fn max_relative_gap(&self) -> f64 {
        self.rows.iter().map(ClusterRow::relative_gap).fold(0.0, f64::max)
    }

    /// Largest distance between measured constants of different moduli.
    pub fn kappa_spread(&self) -> f64 {
        let mut spread: f64 = 0.0;
        for a in &self.rows {
            for b in &self.rows {
                spread = spread.max((a.kappa - b.kappa).norm());
            }
        }
        spread
    }

    pub fn mean_kappa(&self) -> Complex64 {
        let sum: Complex64 = self.rows.iter().map(|r| r.kappa).sum();
        sum / self.rows.len().max(1) as f64
    }
}

/// Compares the two evaluations of `b(n)` for the triangular spectral
/// function at each flux, and measures `sum_A C_{3n}(A) Q^A / (b(n) / q)`.
pub fn triangular_cluster_crosscheck(n: u32, fluxes: &[RationalFlux]) -> Result<ClusterReport> {
    if n == 0 {
        return Err(invalid("cluster order starts at 1"));
    }
    let dist = triangular_distribution(3 * n)?;
    let mut rows = Vec::with_capacity(fluxes.len());
    for &flux in fluxes {
        if 3 * n >= flux.q() {
            return Err(invalid(format!(
                "triangular cross-check needs 3n < q, got n = {n}, q = {}",
                flux.q()
            )));
        }
        let s = SpectralFunctions::triangular(flux).s_table();
        let b_compositions = cluster_b_compositions(n, &s, 3)?;
        let b_logseries = cluster_b_logseries(n, &z_series(n, &s, 3)?)?;
        let closed_sum = dist.contract(flux.phase());
        let kappa = closed_sum / (b_compositions / flux.q() as f64);
        rows.push(ClusterRow {
            flux,
            b_compositions,
            b_logseries,
            closed_sum,
            kappa,
        });
    }
    Ok(ClusterReport { n, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute_force_distribution_triangular;
    use num_bigint::BigUint;

    #[test]
    fn small_lengths() {
        assert!(triangular_distribution(4).unwrap().is_empty());
        assert!(triangular_distribution(2).is_err());
        let d3 = triangular_distribution(3).unwrap();
        assert_eq!(d3.total(), BigUint::from(6u32));
        assert_eq!(d3, brute_force_distribution_triangular(3).unwrap());
        let d6 = triangular_distribution(6).unwrap();
        assert_eq!(d6.total(), BigUint::from(90u32));
        assert_eq!(d6, brute_force_distribution_triangular(6).unwrap());
        assert!(matches!(triangular_distribution(24), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn dft_at_modulus_thirteen() {
        let d = extract_distribution_dft_with(&triangular_hamiltonian(), 6, 13).unwrap();
        assert_eq!(d, brute_force_distribution_triangular(6).unwrap());
    }

    #[test]
    fn first_cluster_coefficient() {
        let flux = RationalFlux::new(1, 13).unwrap();
        let report = triangular_cluster_crosscheck(1, &[flux]).unwrap();
        let s: Complex64 = SpectralFunctions::triangular(flux).s_table().iter().sum();
        assert!((report.rows[0].b_compositions - s).norm() < 1e-12);
        assert!((report.rows[0].b_logseries - s).norm() < 1e-12);
    }

    #[test]
    fn second_order_agreement() {
        let report = triangular_cluster_crosscheck(2, &[RationalFlux::new(1, 11).unwrap()]).unwrap();
        assert!(report.max_relative_gap() < 1e-10);
    }

    #[test]
    fn proportionality_is_flux_independent() {
        let fluxes: Vec<RationalFlux> =
            [13, 17, 19].iter().map(|&q| RationalFlux::new(1, q).unwrap()).collect();
        for n in 1..=3 {
            let report = triangular_cluster_crosscheck(n, &fluxes).unwrap();
            assert!(report.kappa_spread() < 1e-8, "n={n}: {report:?}");
        }
    }

    #[test]
    fn step_terms_round_trip() {
        let h = triangular_hamiltonian();
        assert_eq!(h, CliffordHamiltonian::triangular());
        assert_eq!(ChiralStep::ALL.iter().map(|s| s.to_string()).collect::<String>(), "UVW");
    }
}
