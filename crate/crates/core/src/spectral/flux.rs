use std::f64::consts::{PI, TAU};
use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;

use crate::error::{invalid, Result};

/// Rational flux `p/q` with `Q = exp(2 pi i p / q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalFlux {
    p: u32,
    q: u32,
}

impl RationalFlux {
    pub fn new(p: u32, q: u32) -> Result<Self> {
        if q == 0 {
            return Err(invalid("flux denominator must be positive"));
        }
        if p.gcd(&q) != 1 {
            return Err(invalid(format!("flux {p}/{q} is not in lowest terms")));
        }
        Ok(Self { p, q })
    }

    /// `p/q` reduced to lowest terms; handy when sweeping all numerators.
    pub fn reduced(p: u32, q: u32) -> Result<Self> {
        if q == 0 {
            return Err(invalid("flux denominator must be positive"));
        }
        let d = p.gcd(&q);
        Self::new(p / d, q / d)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Fraction of a full turn carried by `Q`.
    pub fn phase(&self) -> f64 {
        self.p as f64 / self.q as f64
    }

    /// `Q^k`, reducing `k p` modulo `q` before taking the exponential.
    pub fn q_pow(&self, k: i64) -> Complex64 {
        let r = (k * self.p as i64).rem_euclid(self.q as i64);
        Complex64::from_polar(1.0, TAU * r as f64 / self.q as f64)
    }

    /// `4 sin^2(pi k p / q)`.
    pub fn s_hofstadter(&self, k: i64) -> f64 {
        let r = (k * self.p as i64).rem_euclid(self.q as i64);
        let s = (PI * r as f64 / self.q as f64).sin();
        4.0 * s * s
    }

    /// `s_1 .. s_q` of the square lattice.
    pub fn hofstadter_s_table(&self) -> Vec<f64> {
        (1..=self.q as i64).map(|k| self.s_hofstadter(k)).collect()
    }

    /// All fluxes `p/q` with `1 <= p < q` coprime to `q`.
    pub fn coprime_numerators(q: u32) -> impl Iterator<Item = RationalFlux> {
        (1..q.max(2)).filter_map(move |p| RationalFlux::new(p, q).ok())
    }
}

impl fmt::Display for RationalFlux {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}
