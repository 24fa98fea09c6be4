//! Nested trigonometric sums `Z(n)` and cluster coefficients `b(n)`.

use crate::combinatorics::g_compositions;
use crate::error::{invalid, Result};

use super::flux::RationalFlux;
use super::scalar::{Accumulator, Scalar};

/// `Z(n) = sum over 1 <= x_1 < ... < x_n <= q, consecutive gaps >= g,
/// of s_{x_1} ... s_{x_n}`, with `q = s.len()` and `s[k - 1] = s_k`.
///
/// Evaluated as a prefix-sum recursion in `O(n q)`:
/// `D_1(x) = s_x`, `D_m(x) = s_x * sum_{y <= x - g} D_{m-1}(y)`.
pub fn general_z<T: Scalar>(n: u32, s: &[T], g: u32) -> Result<T> {
    if g < 2 {
        return Err(invalid(format!("exclusion order must be >= 2, got {g}")));
    }
    if n == 0 {
        return Ok(T::one());
    }
    let q = s.len() as u64;
    let g = g as usize;
    if (g as u64) * (n as u64) - g as u64 + 1 > q {
        return Err(invalid(format!(
            "{n} particles with exclusion {g} do not fit in {q} sites"
        )));
    }
    let mut d: Vec<T> = s.to_vec();
    for _ in 1..n {
        let mut next = vec![T::zero(); s.len()];
        let mut prefix = T::Sum::default();
        for x in 0..s.len() {
            if x >= g {
                prefix.push(&d[x - g]);
            }
            next[x] = s[x].mul(&prefix.value());
        }
        d = next;
    }
    Ok(T::sum(&d))
}

/// `Z(n)` of the square lattice: gaps of 2 and `s_k = 4 sin^2(pi k p / q)`.
pub fn kreft_z(n: u32, flux: RationalFlux) -> Result<f64> {
    let q = flux.q();
    if n > q / 2 {
        return Err(invalid(format!("Z({n}) needs n <= floor(q/2) = {}", q / 2)));
    }
    general_z(n, &flux.hofstadter_s_table(), 2)
}

/// `Z(0..=n_max)` for the given table; every order must be in range.
pub fn z_series<T: Scalar>(n_max: u32, s: &[T], g: u32) -> Result<Vec<T>> {
    (0..=n_max).map(|n| general_z(n, s, g)).collect()
}

/// `n`-th coefficient of `log(sum_m Z(m) z^m)`.
///
/// Uses `b_m = Z_m - (1/m) sum_{k<m} k b_k Z_{m-k}`.
pub fn cluster_b_logseries<T: Scalar>(n: u32, z: &[T]) -> Result<T> {
    Ok(cluster_b_all(n, z)?.pop().unwrap_or_else(T::zero))
}

/// `b(0) = 0, b(1), ..., b(n)`.
pub fn cluster_b_all<T: Scalar>(n: u32, z: &[T]) -> Result<Vec<T>> {
    let n = n as usize;
    if z.len() <= n {
        return Err(invalid(format!("need Z(0..={n}), got {} values", z.len())));
    }
    if !z[0].is_one() {
        return Err(invalid("log series needs Z(0) = 1"));
    }
    let mut b = vec![T::zero(); n + 1];
    for m in 1..=n {
        let mut acc = T::Sum::default();
        for k in 1..m {
            acc.push(&T::from_i64(k as i64).mul(&b[k]).mul(&z[m - k]));
        }
        let inv_m = T::from_rational(&num_rational::BigRational::new(1.into(), (m as i64).into()));
        b[m] = z[m].sub(&inv_m.mul(&acc.value()));
    }
    Ok(b)
}

/// `b(n) = (-1)^(n+1) sum over g-compositions (l_1..l_j) of n of
/// c_g(l) * sum_{k=1}^{q-j+1} s_k^{l_1} s_{k+1}^{l_2} ... s_{k+j-1}^{l_j}`.
pub fn cluster_b_compositions<T: Scalar>(n: u32, s: &[T], g: u32) -> Result<T> {
    if n == 0 {
        return Err(invalid("cluster coefficients start at n = 1"));
    }
    let q = s.len() as u64;
    if (g as u64) * (n as u64) - g as u64 + 1 > q {
        return Err(invalid(format!(
            "{n} particles with exclusion {g} do not fit in {q} sites"
        )));
    }
    // powers[l][k] = s_k^l
    let mut powers: Vec<Vec<T>> = vec![vec![T::one(); s.len()]];
    for l in 1..=n as usize {
        let row = powers[l - 1].iter().zip(s).map(|(a, b)| a.mul(b)).collect();
        powers.push(row);
    }
    let mut total = T::Sum::default();
    for comp in g_compositions(n, g)? {
        let parts = comp.parts();
        let j = parts.len();
        let mut single = T::Sum::default();
        for k in 0..=(s.len() - j) {
            let mut term = T::one();
            for (i, &l) in parts.iter().enumerate() {
                if l > 0 {
                    term = term.mul(&powers[l as usize][k + i]);
                }
            }
            single.push(&term);
        }
        total.push(&T::from_rational(&comp.coeff()).mul(&single.value()));
    }
    let sum = total.value();
    Ok(if n % 2 == 1 { sum } else { sum.neg() })
}
