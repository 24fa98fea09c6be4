//! Secular determinants `det(I - z H)` of cyclic banded matrices.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{invalid, Result};

use super::flux::RationalFlux;
use super::hamiltonian::hofstadter_matrix;

/// Coefficients `c_0 = 1, c_1, ..., c_n` of `det(lambda I - M) =
/// sum_k c_k lambda^(n-k)`, by Berkowitz' division-free recursion.
///
/// Equivalently, `det(I - z M) = sum_k c_k z^k`.
pub fn characteristic_coeffs(m: &DMatrix<Complex64>) -> Vec<Complex64> {
    assert!(m.is_square(), "characteristic polynomial of a non-square matrix");
    let n = m.nrows();
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    if n == 0 {
        return vec![one];
    }
    let mut coeffs = vec![one, -m[(0, 0)]];
    for r in 1..n {
        // leading block A_r, column s = A[0..r, r], row t = A[r, 0..r]
        let block = m.view((0, 0), (r, r));
        let mut col = m.view((0, r), (r, 1)).clone_owned();
        let row = m.view((r, 0), (1, r));
        let mut toeplitz = Vec::with_capacity(r + 2);
        toeplitz.push(one);
        toeplitz.push(-m[(r, r)]);
        for _ in 0..r {
            toeplitz.push(-(row * &col)[(0, 0)]);
            col = block * col;
        }
        let mut next = vec![zero; r + 2];
        for (i, out) in next.iter_mut().enumerate() {
            for (k, c) in coeffs.iter().enumerate().take(i + 1) {
                *out += toeplitz[i - k] * c;
            }
        }
        coeffs = next;
    }
    coeffs
}

/// Coefficients of `det(I_q - z H_q)` in `z`, lowest order first.
pub fn secular_det_coeffs(flux: RationalFlux, kx: f64, ky: f64) -> Vec<Complex64> {
    characteristic_coeffs(&hofstadter_matrix(flux, kx, ky))
}

/// Hopping tables of `H = F(u) v + v^(1-g) G(u)` at rational flux:
/// `f[k-1] = f(k)`, `g[k-1] = g(k)` for residues `k = 1..q`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralFunctions {
    f: Vec<Complex64>,
    g: Vec<Complex64>,
    exclusion: u32,
}

impl SpectralFunctions {
    pub fn new(f: Vec<Complex64>, g: Vec<Complex64>, exclusion: u32) -> Result<Self> {
        if exclusion < 2 {
            return Err(invalid(format!("exclusion order must be >= 2, got {exclusion}")));
        }
        if f.len() != g.len() || f.is_empty() {
            return Err(invalid("f and g tables must be non-empty and of equal length"));
        }
        Ok(Self { f, g, exclusion })
    }

    /// `f(k) = 1 - Q^k`, `g(k) = 1 - Q^-k`, exclusion 2.
    pub fn hofstadter(flux: RationalFlux) -> Self {
        let one = Complex64::new(1.0, 0.0);
        let q = flux.q() as i64;
        Self {
            f: (1..=q).map(|k| one - flux.q_pow(k)).collect(),
            g: (1..=q).map(|k| one - flux.q_pow(-k)).collect(),
            exclusion: 2,
        }
    }

    /// `f(k) = -i (Q^k - Q^-k)`, `g(k) = 1`, exclusion 3.
    pub fn triangular(flux: RationalFlux) -> Self {
        let i = Complex64::new(0.0, 1.0);
        let q = flux.q() as i64;
        Self {
            f: (1..=q).map(|k| -i * (flux.q_pow(k) - flux.q_pow(-k))).collect(),
            g: vec![Complex64::new(1.0, 0.0); q as usize],
            exclusion: 3,
        }
    }

    pub fn q(&self) -> usize {
        self.f.len()
    }

    pub fn exclusion(&self) -> u32 {
        self.exclusion
    }

    /// `f(k)` for any integer `k`, read cyclically.
    pub fn f(&self, k: i64) -> Complex64 {
        self.f[(k - 1).rem_euclid(self.q() as i64) as usize]
    }

    pub fn g(&self, k: i64) -> Complex64 {
        self.g[(k - 1).rem_euclid(self.q() as i64) as usize]
    }

    pub fn set_f(&mut self, k: i64, value: Complex64) {
        let i = (k - 1).rem_euclid(self.q() as i64) as usize;
        self.f[i] = value;
    }

    pub fn set_g(&mut self, k: i64, value: Complex64) {
        let i = (k - 1).rem_euclid(self.q() as i64) as usize;
        self.g[i] = value;
    }

    /// `s_k = g(k) f(k) f(k+1) ... f(k+g-2)`, for `k = 1..q`.
    pub fn s_table(&self) -> Vec<Complex64> {
        (1..=self.q() as i64)
            .map(|k| {
                (0..self.exclusion as i64 - 1).fold(self.g(k), |acc, d| acc * self.f(k + d))
            })
            .collect()
    }

    /// Whether every entry that closes a cycle through the corner vanishes:
    /// `f(q) = 0` and `g(k) = 0` for the `g - 1` wrapped band entries
    /// `k = q-g+2 .. q`. Then the determinant expansion has no umklapp terms
    /// and its `z^{g n}` coefficients are `(-1)^n Z(n)`, all others zero.
    pub fn is_umklapp_free(&self, tol: f64) -> bool {
        let q = self.q() as i64;
        let g = self.exclusion as i64;
        self.f(q).norm() <= tol && (q - g + 2..=q).all(|k| self.g(k).norm() <= tol)
    }

    /// Zero the corner entries listed in [`Self::is_umklapp_free`].
    pub fn without_umklapp(&self) -> Self {
        let mut out = self.clone();
        let q = self.q() as i64;
        let zero = Complex64::new(0.0, 0.0);
        out.set_f(q, zero);
        for k in q - self.exclusion as i64 + 2..=q {
            out.set_g(k, zero);
        }
        out
    }

    /// `H` with `H[k, k+1] = f(k)` and `H[k+g-1, k] = g(k)` (1-based,
    /// indices mod `q`).
    pub fn hopping_matrix(&self) -> Result<DMatrix<Complex64>> {
        let q = self.q();
        if q <= self.exclusion as usize {
            return Err(invalid(format!(
                "secular matrix needs q > g, got q = {q}, g = {}",
                self.exclusion
            )));
        }
        let mut h = DMatrix::from_element(q, q, Complex64::new(0.0, 0.0));
        let g = self.exclusion as usize;
        for k in 0..q {
            h[(k, (k + 1) % q)] += self.f[k];
            h[((k + g - 1) % q, k)] += self.g[k];
        }
        Ok(h)
    }
}

/// `I - z H` for the banded cyclic hopping matrix of `sf`.
pub fn build_secular_matrix(sf: &SpectralFunctions, z: Complex64) -> Result<DMatrix<Complex64>> {
    let h = sf.hopping_matrix()?;
    let q = h.nrows();
    Ok(DMatrix::identity(q, q) - h * z)
}

/// Coefficients of `det(I - z H)` in `z`, lowest order first.
pub fn secular_polynomial(sf: &SpectralFunctions) -> Result<Vec<Complex64>> {
    Ok(characteristic_coeffs(&sf.hopping_matrix()?))
}
