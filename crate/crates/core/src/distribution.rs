use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

/// Exact path counts indexed by algebraic area.
///
/// Zero counts are never stored, so two distributions are equal exactly when
/// they agree at every area.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AreaDistribution {
    n_steps: u32,
    counts: BTreeMap<i64, BigUint>,
}

impl AreaDistribution {
    pub fn new(n_steps: u32) -> Self {
        Self {
            n_steps,
            counts: BTreeMap::new(),
        }
    }

    pub fn from_counts(n_steps: u32, counts: impl IntoIterator<Item = (i64, BigUint)>) -> Self {
        let mut d = Self::new(n_steps);
        for (a, c) in counts {
            d.add(a, &c);
        }
        d
    }

    pub fn n_steps(&self) -> u32 {
        self.n_steps
    }

    pub fn add(&mut self, area: i64, count: &BigUint) {
        if count.is_zero() {
            return;
        }
        *self.counts.entry(area).or_default() += count;
    }

    pub fn get(&self, area: i64) -> BigUint {
        self.counts.get(&area).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigUint)> + '_ {
        self.counts.iter().map(|(&a, c)| (a, c))
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    /// Smallest and largest area with a nonzero count.
    pub fn support(&self) -> Option<(i64, i64)> {
        let lo = *self.counts.keys().next()?;
        let hi = *self.counts.keys().next_back()?;
        Some((lo, hi))
    }

    pub fn is_reflection_symmetric(&self) -> bool {
        self.counts.iter().all(|(&a, c)| self.counts.get(&-a) == Some(c))
    }

    /// `sum_A C(A) Q^A` at `Q = exp(2 pi i phase)`.
    pub fn contract(&self, phase: f64) -> Complex64 {
        self.counts
            .iter()
            .map(|(&a, c)| {
                let w = c.to_f64().unwrap_or(f64::INFINITY);
                Complex64::from_polar(w, std::f64::consts::TAU * phase * a as f64)
            })
            .sum()
    }
}

impl fmt::Display for AreaDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (a, c)) in self.counts.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}: {c}")?;
        }
        write!(f, "}}")
    }
}
