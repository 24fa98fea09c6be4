//! Hamiltonians in the algebra `v u = Q u v` and their `q`-dimensional
//! clock-and-shift matrices.

use std::f64::consts::TAU;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{invalid, Result};

use super::flux::RationalFlux;
use super::nested::cluster_b_compositions;
use super::scalar::{Accumulator, Kahan};

/// `sum coeff * u^a v^b`.
#[derive(Debug, Clone, PartialEq)]
pub struct CliffordHamiltonian {
    terms: Vec<(Complex64, i64, i64)>,
}

impl CliffordHamiltonian {
    pub fn new(terms: Vec<(Complex64, i64, i64)>) -> Self {
        Self { terms }
    }

    /// `u + u^-1 + v + v^-1`.
    pub fn square() -> Self {
        let one = Complex64::new(1.0, 0.0);
        Self::new(vec![(one, 1, 0), (one, -1, 0), (one, 0, 1), (one, 0, -1)])
    }

    /// `-i u v + i u^-1 v + v^-2`.
    pub fn triangular() -> Self {
        let i = Complex64::new(0.0, 1.0);
        Self::new(vec![(-i, 1, 1), (i, -1, 1), (Complex64::new(1.0, 0.0), 0, -2)])
    }

    pub fn terms(&self) -> &[(Complex64, i64, i64)] {
        &self.terms
    }

    /// Largest `|a|` and `|b|` over the terms.
    pub fn max_abs_exponents(&self) -> (i64, i64) {
        self.terms
            .iter()
            .fold((0, 0), |(a, b), &(_, x, y)| (a.max(x.abs()), b.max(y.abs())))
    }

    /// Matrix with `u = e^{-i kx} S` (`S e_r = e_{r+1 mod q}`) and
    /// `v = e^{i ky} diag(Q^1, ..., Q^q)`.
    pub fn matrix(&self, flux: RationalFlux, kx: f64, ky: f64) -> DMatrix<Complex64> {
        let q = flux.q() as usize;
        let mut m = DMatrix::from_element(q, q, Complex64::new(0.0, 0.0));
        for &(c, a, b) in &self.terms {
            let k = Complex64::from_polar(1.0, -kx * a as f64 + ky * b as f64);
            for r in 0..q {
                let row = (r as i64 + a).rem_euclid(q as i64) as usize;
                m[(row, r)] += c * k * flux.q_pow((r as i64 + 1) * b);
            }
        }
        m
    }

    /// `(1/q) tr H^n` at one Bloch momentum.
    pub fn trace_power(&self, flux: RationalFlux, n: u32, kx: f64, ky: f64) -> Complex64 {
        let h = self.matrix(flux, kx, ky);
        h.pow(n).trace() / flux.q() as f64
    }

    /// `(1/q) tr H^n` averaged over an `nx` by `ny` uniform momentum grid,
    /// summed in row-major order with compensation.
    pub fn grid_trace(&self, flux: RationalFlux, n: u32, nx: usize, ny: usize) -> Complex64 {
        let mut acc = Kahan::<Complex64>::default();
        for ix in 0..nx {
            let kx = TAU * ix as f64 / nx as f64;
            for iy in 0..ny {
                let ky = TAU * iy as f64 / ny as f64;
                acc.push(&self.trace_power(flux, n, kx, ky));
            }
        }
        acc.value() / (nx * ny) as f64
    }

    /// Momentum grid on which `(1/q) tr H^n` averages exactly to the sum over
    /// closed words.
    ///
    /// The `kx` dependence of the trace only enters through net `u` powers
    /// that are multiples of `q` with modulus at most `n max|a|`, and
    /// similarly for `ky`, so `n max|a| + 1` points suffice (one point if no
    /// nonzero multiple of `q` is reachable).
    pub fn exact_grid(&self, q: u32, n: u32) -> (usize, usize) {
        let (da, db) = self.max_abs_exponents();
        let pick = |d: i64| {
            let reach = n as i64 * d;
            if reach < q as i64 {
                1
            } else {
                (reach + 1) as usize
            }
        };
        (pick(da), pick(db))
    }

    /// `sum_A C_n(A) Q^A` from the exact grid.
    pub fn closed_word_sum(&self, flux: RationalFlux, n: u32) -> Complex64 {
        let (nx, ny) = self.exact_grid(flux.q(), n);
        self.grid_trace(flux, n, nx, ny)
    }
}

/// The `q x q` Hofstadter matrix: diagonal `Q^j e^{i ky} + Q^-j e^{-i ky}`
/// (`j = 1..q`), hoppings `e^{i kx}` above and `e^{-i kx}` below the
/// diagonal, closed cyclically.
pub fn hofstadter_matrix(flux: RationalFlux, kx: f64, ky: f64) -> DMatrix<Complex64> {
    CliffordHamiltonian::square().matrix(flux, kx, ky)
}

/// Sorted eigenvalues of the Hofstadter matrix.
pub fn hofstadter_spectrum(flux: RationalFlux, kx: f64, ky: f64) -> Vec<f64> {
    let mut ev: Vec<f64> = hofstadter_matrix(flux, kx, ky)
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// `(1/q) tr H_q^n` averaged over an `(n+1) x (n+1)` momentum grid.
pub fn quantum_trace(flux: RationalFlux, n_steps: u32) -> Complex64 {
    let n = n_steps as usize + 1;
    CliffordHamiltonian::square().grid_trace(flux, n_steps, n, n)
}

/// Both sides of `tr H^{2n} = 2n (-1)^(n+1) b(n) / q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceIdentity {
    pub lhs: Complex64,
    pub rhs: f64,
}

impl TraceIdentity {
    pub fn gap(&self) -> f64 {
        (self.lhs - self.rhs).norm()
    }
}

pub fn trace_identity_check(n: u32, flux: RationalFlux) -> Result<TraceIdentity> {
    if n == 0 || 2 * n >= flux.q() {
        return Err(invalid(format!(
            "trace identity needs 1 <= n and 2n < q, got n = {n}, q = {}",
            flux.q()
        )));
    }
    let lhs = quantum_trace(flux, 2 * n);
    let b = cluster_b_compositions(n, &flux.hofstadter_s_table(), 2)?;
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    let rhs = 2.0 * n as f64 * sign * b / flux.q() as f64;
    Ok(TraceIdentity { lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn printed_layout() {
        let f = RationalFlux::new(2, 5).unwrap();
        let (kx, ky) = (0.3, -1.1);
        let h = hofstadter_matrix(f, kx, ky);
        let e = |t: f64| Complex64::from_polar(1.0, t);
        for j in 0..5usize {
            let jj = j as i64 + 1;
            let d = f.q_pow(jj) * e(ky) + f.q_pow(-jj) * e(-ky);
            assert!((h[(j, j)] - d).norm() < 1e-14);
        }
        for j in 0..4usize {
            assert!((h[(j, j + 1)] - e(kx)).norm() < 1e-14);
            assert!((h[(j + 1, j)] - e(-kx)).norm() < 1e-14);
        }
        assert!((h[(0, 4)] - e(-kx)).norm() < 1e-14);
        assert!((h[(4, 0)] - e(kx)).norm() < 1e-14);
        assert!(h[(0, 2)].norm() < 1e-14);
    }

    #[test]
    fn free_lattice_limit() {
        let f = RationalFlux::new(0, 1).unwrap();
        let ev = hofstadter_spectrum(f, 0.4, 1.2);
        assert_eq!(ev.len(), 1);
        assert!((ev[0] - 2.0 * (0.4f64.cos() + 1.2f64.cos())).abs() < 1e-14);
    }

    #[test]
    fn bipartite_spectrum() {
        let ev = hofstadter_spectrum(RationalFlux::new(1, 2).unwrap(), 0.0, 0.0);
        assert!((ev[0] + ev[1]).abs() < 1e-12);
    }

    #[test]
    fn hermitian_everywhere() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = RationalFlux::new(3, 7).unwrap();
        for _ in 0..20 {
            let (kx, ky) = (rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU));
            let h = hofstadter_matrix(f, kx, ky);
            assert!((&h - h.adjoint()).norm() < 1e-13);
        }
    }

    #[test]
    fn fourth_moment_from_eigenvalues() {
        let f = RationalFlux::new(1, 5).unwrap();
        let n = 5;
        let mut acc = 0.0;
        for ix in 0..n {
            for iy in 0..n {
                let kx = TAU * ix as f64 / n as f64;
                let ky = TAU * iy as f64 / n as f64;
                acc += hofstadter_spectrum(f, kx, ky).iter().map(|e| e.powi(4)).sum::<f64>();
            }
        }
        let moment = acc / (n * n) as f64 / 5.0;
        let expected = 28.0 + 8.0 * (TAU / 5.0).cos();
        assert!((moment - expected).abs() < 1e-10);
        assert!((quantum_trace(f, 4) - expected).norm() < 1e-10);
    }

    #[test]
    fn odd_traces_vanish() {
        let f = RationalFlux::new(2, 7).unwrap();
        for n in [1, 3, 5, 9] {
            assert!(quantum_trace(f, n).norm() < 1e-12);
        }
    }

    #[test]
    fn small_trace_identities() {
        let t = trace_identity_check(1, RationalFlux::new(1, 5).unwrap()).unwrap();
        assert!((t.lhs - c(4.0, 0.0)).norm() < 1e-12 && (t.rhs - 4.0).abs() < 1e-12);
        let t = trace_identity_check(2, RationalFlux::new(1, 7).unwrap()).unwrap();
        let expected = 28.0 + 8.0 * (TAU / 7.0).cos();
        assert!((t.lhs.re - expected).abs() < 1e-11 && (t.rhs - expected).abs() < 1e-11);
        assert!(trace_identity_check(3, RationalFlux::new(2, 9).unwrap()).unwrap().gap() < 1e-9);
        assert!(trace_identity_check(3, RationalFlux::new(1, 6).unwrap()).is_err());
    }

    #[test]
    fn exact_grid_sizes() {
        let h = CliffordHamiltonian::triangular();
        assert_eq!(h.exact_grid(44, 12), (1, 1));
        assert_eq!(h.exact_grid(22, 12), (1, 25));
        assert_eq!(h.exact_grid(11, 12), (13, 25));
    }
}
