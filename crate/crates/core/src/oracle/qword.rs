//! Symbolic expansion in the algebra generated by `u`, `v` (and inverses)
//! with `v u = Q u v`.
//!
//! Monomials are kept in normal form `coeff * u^a v^b Q^c`, which makes the
//! product rule
//!
//! `(u^a v^b Q^c)(u^a' v^b' Q^c') = u^(a+a') v^(b+b') Q^(c+c'+b a')`
//!
//! since `v^b u^a' = Q^(b a') u^a' v^b`. Coefficients are Gaussian integers.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg};

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};

use crate::distribution::AreaDistribution;
use crate::error::{Error, Result};

/// Default length cap for the triangular word expander.
pub const DEFAULT_TRIANGULAR_WORD_LIMIT: u32 = 21;

/// Exact `re + i im`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussianInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        Self {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn i() -> Self {
        Self::new(0, 1)
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl Zero for GaussianInt {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianInt {
    fn one() -> Self {
        Self::new(1, 0)
    }
}

impl Add for GaussianInt {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl<'a> AddAssign<&'a GaussianInt> for GaussianInt {
    fn add_assign(&mut self, rhs: &'a GaussianInt) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl<'a> Mul<&'a GaussianInt> for &'a GaussianInt {
    type Output = GaussianInt;

    fn mul(self, rhs: &'a GaussianInt) -> GaussianInt {
        GaussianInt {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Mul for GaussianInt {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl Neg for GaussianInt {
    type Output = Self;

    fn neg(self) -> Self {
        Self {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) if self.im.is_negative() => write!(f, "{}-{}i", self.re, -&self.im),
            (false, false) => write!(f, "{}+{}i", self.re, self.im),
        }
    }
}

/// Exponents of a normal-ordered monomial `u^u v^v Q^q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponents {
    pub u: i64,
    pub v: i64,
    pub q: i64,
}

impl Exponents {
    pub const IDENTITY: Exponents = Exponents { u: 0, v: 0, q: 0 };

    fn compose(self, rhs: Exponents) -> Exponents {
        Exponents {
            u: self.u + rhs.u,
            v: self.v + rhs.v,
            q: self.q + rhs.q + self.v * rhs.u,
        }
    }
}

/// A single normal-ordered term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMonomial {
    pub coeff: GaussianInt,
    pub exp: Exponents,
}

impl QMonomial {
    pub fn new(coeff: GaussianInt, u: i64, v: i64, q: i64) -> Self {
        Self {
            coeff,
            exp: Exponents { u, v, q },
        }
    }
}

impl<'a> Mul<&'a QMonomial> for &'a QMonomial {
    type Output = QMonomial;

    fn mul(self, rhs: &'a QMonomial) -> QMonomial {
        QMonomial {
            coeff: &self.coeff * &rhs.coeff,
            exp: self.exp.compose(rhs.exp),
        }
    }
}

/// Finite sum of normal-ordered monomials; zero coefficients are never kept.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QPolynomial {
    terms: BTreeMap<Exponents, GaussianInt>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(QMonomial::new(GaussianInt::one(), 0, 0, 0))
    }

    pub fn monomial(m: QMonomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m.exp, &m.coeff);
        p
    }

    /// `coeff * u^a v^b`.
    pub fn word(coeff: GaussianInt, a: i64, b: i64) -> Self {
        Self::monomial(QMonomial::new(coeff, a, b, 0))
    }

    pub fn u() -> Self {
        Self::word(GaussianInt::one(), 1, 0)
    }

    pub fn u_inv() -> Self {
        Self::word(GaussianInt::one(), -1, 0)
    }

    pub fn v() -> Self {
        Self::word(GaussianInt::one(), 0, 1)
    }

    pub fn v_inv() -> Self {
        Self::word(GaussianInt::one(), 0, -1)
    }

    pub fn add_term(&mut self, exp: Exponents, coeff: &GaussianInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_default();
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = QMonomial> + '_ {
        self.terms.iter().map(|(e, c)| QMonomial {
            coeff: c.clone(),
            exp: *e,
        })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exp: Exponents) -> GaussianInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    /// The `u`- and `v`-free part, as `Q`-exponent -> coefficient.
    pub fn identity_component(&self) -> BTreeMap<i64, GaussianInt> {
        self.terms
            .iter()
            .filter(|(e, _)| e.u == 0 && e.v == 0)
            .map(|(e, c)| (e.q, c.clone()))
            .collect()
    }

    fn mul_pruned(&self, rhs: &QPolynomial, keep: impl Fn(Exponents) -> bool) -> QPolynomial {
        let mut out = QPolynomial::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.compose(*eb);
                if keep(e) {
                    out.add_term(e, &(ca * cb));
                }
            }
        }
        out
    }

    fn max_abs_exponents(&self) -> (i64, i64) {
        self.terms
            .keys()
            .fold((0, 0), |(a, b), e| (a.max(e.u.abs()), b.max(e.v.abs())))
    }
}

impl<'a> Add<&'a QPolynomial> for &'a QPolynomial {
    type Output = QPolynomial;

    fn add(self, rhs: &'a QPolynomial) -> QPolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c);
        }
        out
    }
}

impl<'a> Mul<&'a QPolynomial> for &'a QPolynomial {
    type Output = QPolynomial;

    fn mul(self, rhs: &'a QPolynomial) -> QPolynomial {
        self.mul_pruned(rhs, |_| true)
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}) u^{} v^{} Q^{}", e.u, e.v, e.q)?;
        }
        Ok(())
    }
}

fn sum_of(generators: &[QPolynomial]) -> QPolynomial {
    generators
        .iter()
        .fold(QPolynomial::zero(), |acc, g| &acc + g)
}

/// Normal-ordered `(g_1 + ... + g_k)^n`.
pub fn expand_power(generators: &[QPolynomial], n: u32) -> QPolynomial {
    let h = sum_of(generators);
    let mut acc = QPolynomial::one();
    for _ in 0..n {
        acc = &acc * &h;
    }
    acc
}

/// Identity component of `(g_1 + ... + g_k)^n`, dropping partial products
/// that can no longer return to `u^0 v^0` in the remaining factors.
pub fn identity_of_power(generators: &[QPolynomial], n: u32) -> BTreeMap<i64, GaussianInt> {
    let h = sum_of(generators);
    let (du, dv) = h.max_abs_exponents();
    let mut acc = QPolynomial::one();
    for step in 1..=n as i64 {
        let left = n as i64 - step;
        acc = acc.mul_pruned(&h, |e| e.u.abs() <= left * du && e.v.abs() <= left * dv);
    }
    acc.identity_component()
}

/// `u + u^-1 + v + v^-1`.
pub fn square_generators() -> Vec<QPolynomial> {
    vec![
        QPolynomial::u(),
        QPolynomial::u_inv(),
        QPolynomial::v(),
        QPolynomial::v_inv(),
    ]
}

/// Chiral hops `U = -i u v`, `V = i u^-1 v`, `W = Q U^-1 V^-1 = v^-2`.
pub fn triangular_generators() -> Vec<QPolynomial> {
    vec![
        QPolynomial::word(-GaussianInt::i(), 1, 1),
        QPolynomial::word(GaussianInt::i(), -1, 1),
        QPolynomial::word(GaussianInt::one(), 0, -2),
    ]
}

fn to_distribution(n_steps: u32, identity: BTreeMap<i64, GaussianInt>) -> Result<AreaDistribution> {
    let mut dist = AreaDistribution::new(n_steps);
    for (q, c) in identity {
        if !c.is_real() {
            return Err(Error::InvariantViolation(format!(
                "closed word coefficient {c} at Q^{q} is not real"
            )));
        }
        let count: BigUint = match c.re.sign() {
            Sign::Minus => {
                return Err(Error::InvariantViolation(format!(
                    "negative closed word count {c} at Q^{q}"
                )))
            }
            _ => c.re.magnitude().clone(),
        };
        dist.add(q, &count);
    }
    Ok(dist)
}

/// Square-lattice distribution read off the identity component of
/// `(u + u^-1 + v + v^-1)^n`.
pub fn word_distribution_square(n_steps: u32) -> Result<AreaDistribution> {
    to_distribution(n_steps, identity_of_power(&square_generators(), n_steps))
}

/// Closed chiral triangular words by `Q`-exponent, from `(U + V + W)^n`.
/// Lengths not divisible by 3 give the empty distribution.
pub fn brute_force_distribution_triangular(n_steps: u32) -> Result<AreaDistribution> {
    brute_force_distribution_triangular_with_limit(n_steps, DEFAULT_TRIANGULAR_WORD_LIMIT)
}

pub fn brute_force_distribution_triangular_with_limit(
    n_steps: u32,
    limit: u32,
) -> Result<AreaDistribution> {
    if n_steps > limit {
        return Err(Error::ResourceLimit(format!(
            "triangular word expansion capped at {limit} steps, asked for {n_steps}"
        )));
    }
    if n_steps % 3 != 0 {
        return Ok(AreaDistribution::new(n_steps));
    }
    to_distribution(n_steps, identity_of_power(&triangular_generators(), n_steps))
}
