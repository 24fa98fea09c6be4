//! Closed square-lattice paths counted by algebraic area through the
//! explicit composition sum
//!
//! `C_n(A) = 2n sum_{l composition of n} c(l) S_l(A)`,
//!
//! where `S_l(A)` is the per-composition double-binomial sum
//!
//! `S_l(A) = sum_{k_3..k_j} prod_{i>=3} C(2l_i, k_i)
//!           C(2l_1, l_1 + A + sum (i-2)(k_i-l_i)) C(2l_2, l_2 - A - sum (i-1)(k_i-l_i))`.
//!
//! The `k` loops are folded into a dynamic program over the two shift
//! accumulators, so the cost per composition is polynomial in `n` instead of
//! `prod (2 l_i + 1)`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::combinatorics::{composition_count, BinomialTable, Composition};
use crate::distribution::AreaDistribution;
use crate::error::{invalid, Error, Result};

/// Masks handed to one rayon task at a time.
const CHUNK: u64 = 64;

fn half_length(n_steps: u32) -> Result<u32> {
    if n_steps < 2 || n_steps % 2 != 0 {
        return Err(invalid(format!(
            "square-lattice closed paths need an even length >= 2, got {n_steps}"
        )));
    }
    let n = n_steps / 2;
    if n > 64 {
        return Err(Error::ResourceLimit(format!(
            "2^{} compositions cannot be indexed",
            n - 1
        )));
    }
    Ok(n)
}

/// Per-composition profile `A -> S_l(A)`, before the `2n c(l)` weight.
pub fn single_sum_expansion(parts: &Composition) -> BTreeMap<i64, BigUint> {
    let max = 2 * parts.parts().iter().copied().max().unwrap_or(0) as usize;
    single_sum_with(parts.parts(), &BinomialTable::new(max))
}

fn single_sum_with(parts: &[u32], binom: &BinomialTable) -> BTreeMap<i64, BigUint> {
    let l1 = parts[0] as i64;
    if parts.len() == 1 {
        return BTreeMap::from([(0, binom.get(2 * l1, l1).unwrap().clone())]);
    }
    let l2 = parts[1] as i64;

    // (shift on the l_1 binomial, shift on the l_2 binomial) -> weight
    let mut shifts: HashMap<(i64, i64), BigUint> = HashMap::new();
    shifts.insert((0, 0), BigUint::from(1u32));
    for (idx, &li) in parts.iter().enumerate().skip(2) {
        let i = idx as i64 + 1;
        let li = li as i64;
        let mut next: HashMap<(i64, i64), BigUint> = HashMap::with_capacity(shifts.len() * 3);
        for ((s1, s2), w) in &shifts {
            for k in 0..=2 * li {
                let d = k - li;
                let weight = w * binom.get(2 * li, k).unwrap();
                *next.entry((s1 + (i - 2) * d, s2 + (i - 1) * d)).or_default() += weight;
            }
        }
        shifts = next;
    }

    let mut acc: BTreeMap<i64, BigUint> = BTreeMap::new();
    for ((s1, s2), w) in shifts {
        let lo = (-l1 - s1).max(-l2 - s2);
        let hi = (l1 - s1).min(l2 - s2);
        for area in lo..=hi {
            let a = binom.get(2 * l1, l1 + area + s1).unwrap();
            let b = binom.get(2 * l2, l2 - area - s2).unwrap();
            *acc.entry(area).or_default() += &w * a * b;
        }
    }
    acc.retain(|_, v| !v.is_zero());
    acc
}

type RationalProfile = BTreeMap<i64, BigRational>;

fn accumulate(into: &mut RationalProfile, profile: &BTreeMap<i64, BigUint>, weight: &BigRational) {
    for (&a, v) in profile {
        let term = weight * BigRational::from_integer(BigInt::from(v.clone()));
        *into.entry(a).or_insert_with(BigRational::zero) += term;
    }
}

fn merge(mut a: RationalProfile, b: RationalProfile) -> RationalProfile {
    for (k, v) in b {
        *a.entry(k).or_insert_with(BigRational::zero) += v;
    }
    a
}

/// Sums `weight(l) c(l) S_l` over compositions, where `select` maps a
/// composition to its multiplicity (0 skips it).
fn composition_sum(n: u32, select: impl Fn(&Composition) -> u32 + Sync) -> RationalProfile {
    let binom = BinomialTable::new(2 * n as usize);
    let total = composition_count(n);
    let chunks = total.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut acc = RationalProfile::new();
            for mask in chunk * CHUNK..((chunk + 1) * CHUNK).min(total) {
                let comp = Composition::from_mask(n, mask);
                let mult = select(&comp);
                if mult == 0 {
                    continue;
                }
                let weight = comp.coeff() * BigRational::from_integer(mult.into());
                accumulate(&mut acc, &single_sum_with(comp.parts(), &binom), &weight);
            }
            acc
        })
        .reduce(RationalProfile::new, merge)
}

fn finish(n_steps: u32, profile: RationalProfile) -> Result<AreaDistribution> {
    let scale = BigRational::from_integer(BigInt::from(n_steps));
    let mut dist = AreaDistribution::new(n_steps);
    for (area, v) in profile {
        let v = v * &scale;
        if !v.is_integer() {
            return Err(Error::InvariantViolation(format!(
                "non-integer count {v} at area {area}"
            )));
        }
        let count = v.to_integer().to_biguint().ok_or_else(|| {
            Error::InvariantViolation(format!("negative count at area {area}"))
        })?;
        dist.add(area, &count);
    }
    Ok(dist)
}

/// Full distribution of closed `n_steps`-step paths over algebraic area.
pub fn area_distribution_square(n_steps: u32) -> Result<AreaDistribution> {
    let n = half_length(n_steps)?;
    finish(n_steps, composition_sum(n, |_| 1))
}

/// Same as [`area_distribution_square`], visiting one representative of
/// each `{l, reversed(l)}` pair and counting non-palindromes twice.
pub fn area_distribution_square_mirror_reduced(n_steps: u32) -> Result<AreaDistribution> {
    let n = half_length(n_steps)?;
    let profile = composition_sum(n, |c| {
        let parts = c.parts();
        match parts.iter().cmp(parts.iter().rev()) {
            std::cmp::Ordering::Less => 2,
            std::cmp::Ordering::Equal => 1,
            std::cmp::Ordering::Greater => 0,
        }
    });
    finish(n_steps, profile)
}

/// Number of closed `n_steps`-step paths enclosing algebraic area `area`.
pub fn count_closed_paths_square(n_steps: u32, area: i64) -> Result<BigUint> {
    Ok(area_distribution_square(n_steps)?.get(area))
}

pub fn count_closed_paths_square_mirror_reduced(n_steps: u32, area: i64) -> Result<BigUint> {
    Ok(area_distribution_square_mirror_reduced(n_steps)?.get(area))
}

/// One row of the comparison against the continuum area law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevyRow {
    pub area: i64,
    /// `n C_n(A) / C(n, n/2)^2`
    pub scaled: f64,
    /// `pi / cosh^2(2 pi A / n)`
    pub levy: f64,
    pub abs_error: f64,
}

/// Continuum density at lattice spacing 1 and time `n/2`.
pub fn levy_density(n_steps: u32, area: f64) -> f64 {
    let c = (std::f64::consts::TAU * area / n_steps as f64).cosh();
    std::f64::consts::PI / (c * c)
}

/// Compares a square-lattice distribution with the area law, one row per
/// area in its support.
pub fn levy_comparison(dist: &AreaDistribution) -> Result<Vec<LevyRow>> {
    let n_steps = dist.n_steps();
    if n_steps < 4 || n_steps % 2 != 0 {
        return Err(invalid(format!(
            "area-law comparison needs an even length >= 4, got {n_steps}"
        )));
    }
    let total = dist.total();
    if total.is_zero() {
        return Err(invalid("empty distribution"));
    }
    let (lo, hi) = dist.support().expect("nonempty");
    let rows = (lo..=hi)
        .map(|area| {
            let num = BigInt::from(dist.get(area) * n_steps);
            let scaled = BigRational::new(num, BigInt::from(total.clone()))
                .to_f64()
                .unwrap_or(f64::NAN);
            let levy = levy_density(n_steps, area as f64);
            LevyRow {
                area,
                scaled,
                levy,
                abs_error: (scaled - levy).abs(),
            }
        })
        .collect();
    Ok(rows)
}

pub fn sup_error(rows: &[LevyRow]) -> f64 {
    rows.iter().map(|r| r.abs_error).fold(0.0, f64::max)
}
