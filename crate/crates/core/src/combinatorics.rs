//! Integer compositions, g-compositions (multicompositions) and the rational
//! coefficients `c` and `c_g` that weight the composition sums.
//!
//! Compositions of `n` are enumerated by a bitmask over the `n - 1` gaps
//! between `n` unit cells: bit `i` set means "cut at gap `i`", with the low
//! bit being the leftmost gap. g-compositions generalise the bitmask to a
//! base-`g` digit per gap: digit `0` merges the two neighbouring cells,
//! digit `d >= 1` cuts and inserts `d - 1` zero parts. This yields exactly
//! `g^(n-1)` items, and for `g = 2` it coincides with the bitmask order.
//!
//! The coefficients are related to Dyck path counting (up to a factor
//! `l_1`); no bijection is implemented here.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{invalid, Error, Result};

/// An ordered list of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(invalid("a composition needs at least one part"));
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(invalid("composition parts must be positive"));
        }
        Ok(Self(parts))
    }

    /// Builds the composition of `n` encoded by `mask` (bit `i` = cut after
    /// the `i + 1`-th unit).
    pub fn from_mask(n: u32, mask: u64) -> Self {
        debug_assert!(n >= 1 && n <= 64);
        let mut parts = Vec::with_capacity(mask.count_ones() as usize + 1);
        let mut run = 1u32;
        for gap in 0..n - 1 {
            if mask >> gap & 1 == 1 {
                parts.push(run);
                run = 1;
            } else {
                run += 1;
            }
        }
        parts.push(run);
        Self(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn reversed(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }

    pub fn is_palindrome(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    /// `c(l_1, ..., l_j)`; see [`coeff_c`].
    pub fn coeff(&self) -> BigRational {
        coeff_c(&self.0).expect("validated composition")
    }

    pub fn into_parts(self) -> Vec<u32> {
        self.0
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(f, &self.0)
    }
}

/// A composition with interior zero parts allowed, for exclusion order `g`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GComposition {
    parts: Vec<u32>,
    g: u32,
}

impl GComposition {
    pub fn new(parts: Vec<u32>, g: u32) -> Result<Self> {
        validate_g_parts(&parts, g)?;
        Ok(Self { parts, g })
    }

    /// Decodes `index` as base-`g` digits, one per gap, low digit leftmost.
    pub fn from_index(n: u32, g: u32, mut index: u64) -> Self {
        debug_assert!(n >= 1 && g >= 2);
        let mut parts = Vec::with_capacity(n as usize);
        let mut run = 1u32;
        for _ in 0..n - 1 {
            let digit = (index % g as u64) as u32;
            index /= g as u64;
            if digit == 0 {
                run += 1;
            } else {
                parts.push(run);
                parts.extend(std::iter::repeat(0).take(digit as usize - 1));
                run = 1;
            }
        }
        parts.push(run);
        Self { parts, g }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn exclusion(&self) -> u32 {
        self.g
    }

    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `c_g(l_1, ..., l_j)`; see [`coeff_cg`].
    pub fn coeff(&self) -> BigRational {
        coeff_cg(&self.parts, self.g).expect("validated g-composition")
    }
}

impl fmt::Display for GComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(f, &self.parts)
    }
}

fn write_parts(f: &mut fmt::Formatter<'_>, parts: &[u32]) -> fmt::Result {
    write!(f, "(")?;
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{p}")?;
    }
    write!(f, ")")
}

fn validate_g_parts(parts: &[u32], g: u32) -> Result<()> {
    if g < 2 {
        return Err(invalid(format!("exclusion order must be >= 2, got {g}")));
    }
    let (Some(&first), Some(&last)) = (parts.first(), parts.last()) else {
        return Err(invalid("a g-composition needs at least one part"));
    };
    if first == 0 || last == 0 {
        return Err(invalid("first and last parts must be positive"));
    }
    let mut zero_run = 0u32;
    for &p in parts {
        if p == 0 {
            zero_run += 1;
            if zero_run > g - 2 {
                return Err(invalid(format!(
                    "run of {zero_run} zeros exceeds g - 2 = {}",
                    g - 2
                )));
            }
        } else {
            zero_run = 0;
        }
    }
    Ok(())
}

/// Iterator over the compositions of `n` in bitmask order.
#[derive(Debug, Clone)]
pub struct Compositions {
    n: u32,
    next: u64,
    end: u64,
}

impl Compositions {
    /// Restricts the stream to masks `start..end`; used for chunked
    /// parallel reductions.
    pub fn range(n: u32, start: u64, end: u64) -> Self {
        let total = composition_count(n);
        Self {
            n,
            next: start.min(total),
            end: end.min(total),
        }
    }
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        if self.next >= self.end {
            return None;
        }
        let c = Composition::from_mask(self.n, self.next);
        self.next += 1;
        Some(c)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Compositions {}

/// Number of compositions of `n`: `2^(n-1)`, and `0` for `n = 0`.
pub fn composition_count(n: u32) -> u64 {
    if n == 0 {
        0
    } else {
        1u64 << (n - 1)
    }
}

/// All compositions of `n`. `n = 0` gives an empty stream.
pub fn compositions(n: u32) -> Compositions {
    assert!(n <= 64, "compositions of n > 64 cannot be mask-indexed");
    Compositions::range(n, 0, composition_count(n))
}

/// Iterator over g-compositions in base-`g` gap-digit order.
#[derive(Debug, Clone)]
pub struct GCompositions {
    n: u32,
    g: u32,
    next: u64,
    end: u64,
}

impl Iterator for GCompositions {
    type Item = GComposition;

    fn next(&mut self) -> Option<GComposition> {
        if self.next >= self.end {
            return None;
        }
        let c = GComposition::from_index(self.n, self.g, self.next);
        self.next += 1;
        Some(c)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for GCompositions {}

/// All g-compositions of `n` for exclusion order `g`; `g^(n-1)` items.
pub fn g_compositions(n: u32, g: u32) -> Result<GCompositions> {
    if g < 2 {
        return Err(invalid(format!("exclusion order must be >= 2, got {g}")));
    }
    let end = if n == 0 {
        0
    } else {
        (g as u64)
            .checked_pow(n - 1)
            .ok_or_else(|| Error::ResourceLimit(format!("{g}^{} g-compositions", n - 1)))?
    };
    Ok(GCompositions { n, g, next: 0, end })
}

/// `C(n, k)`, zero whenever `k < 0`, `k > n` or `n < 0`.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, i| acc * i)
}

fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// The coefficient `c(l_1, ..., l_j)` weighting composition `l` in the
/// cluster sum:
///
/// `C(l_1+l_2, l_1)/(l_1+l_2) * prod_{i=2}^{j-1} l_i C(l_i+l_{i+1}, l_i)/(l_i+l_{i+1})`
///
/// A single part gives `1/l_1`, matching `c_g` at `g = 2`.
pub fn coeff_c(parts: &[u32]) -> Result<BigRational> {
    if parts.is_empty() {
        return Err(invalid("coefficient of an empty composition"));
    }
    if parts.iter().any(|&p| p == 0) {
        return Err(invalid("composition parts must be positive"));
    }
    if parts.len() == 1 {
        return Ok(ratio(BigUint::one(), BigUint::from(parts[0])));
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for (i, w) in parts.windows(2).enumerate() {
        let (a, b) = (w[0] as i64, w[1] as i64);
        num *= binomial(a + b, a);
        den *= (a + b) as u64;
        if i > 0 {
            num *= a as u64;
        }
    }
    Ok(ratio(num, den))
}

/// The g-exclusion coefficient
///
/// `c_g(l) = (l_1+...+l_{g-1}-1)! / (l_1! ... l_{g-1}!) * prod_{i=1}^{j-g+1} C(l_i+...+l_{i+g-1}-1, l_{i+g-1})`
///
/// Prefactor slots beyond `j` are padded with zeros.
pub fn coeff_cg(parts: &[u32], g: u32) -> Result<BigRational> {
    validate_g_parts(parts, g)?;
    let g = g as usize;
    let slot = |i: usize| parts.get(i).copied().unwrap_or(0) as u64;

    let head: u64 = (0..g - 1).map(slot).sum();
    // head >= l_1 >= 1
    let mut num = factorial(head - 1);
    let mut den = BigUint::one();
    for i in 0..g - 1 {
        den *= factorial(slot(i));
    }
    if parts.len() >= g {
        for window in parts.windows(g) {
            let sum: u64 = window.iter().map(|&p| p as u64).sum();
            if sum == 0 {
                return Err(Error::InvariantViolation(
                    "empty window in g-composition".into(),
                ));
            }
            num *= binomial(sum as i64 - 1, window[g - 1] as i64);
        }
    }
    Ok(ratio(num, den))
}

/// Pascal rows `C(m, 0..=m)` for `m <= max`, for hot loops that need many
/// small binomials.
#[derive(Debug, Clone)]
pub struct BinomialTable {
    rows: Vec<Vec<BigUint>>,
}

impl BinomialTable {
    pub fn new(max: usize) -> Self {
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(max + 1);
        for m in 0..=max {
            let mut row = vec![BigUint::one(); m + 1];
            for k in 1..m {
                row[k] = &rows[m - 1][k - 1] + &rows[m - 1][k];
            }
            rows.push(row);
        }
        Self { rows }
    }

    /// `C(n, k)` with the zero convention outside `0 <= k <= n`.
    pub fn get(&self, n: i64, k: i64) -> Option<&BigUint> {
        if n < 0 || k < 0 || k > n {
            return None;
        }
        Some(&self.rows[n as usize][k as usize])
    }

    pub fn max(&self) -> usize {
        self.rows.len() - 1
    }
}
