//! Dynamic-programming counter for closed square-lattice walks over the
//! state `(x, y, accumulated area)`.
//!
//! The area increment of a step is `x` for Up, `-x` for Down and zero for
//! horizontal steps. States that can no longer return to the origin
//! (`|x| + |y|` larger than the remaining budget) are dropped, which also
//! bounds every live accumulated area by `n^2 / 16`: closing the prefix with
//! a horizontal then a vertical segment along the axes adds no area and
//! gives a closed path of length at most `n`.

use std::ops::AddAssign;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::distribution::AreaDistribution;
use crate::error::{invalid, Error, Result};

/// Default length cap for the walk counter.
pub const DEFAULT_WALK_LIMIT: u32 = 30;

/// Largest length for which every live count fits in a `u128`:
/// `C(66, 33)^2 < 2^128`.
const U128_LIMIT: u32 = 66;

trait Count: Clone + Zero + One + for<'a> AddAssign<&'a Self> {
    fn into_big(self) -> BigUint;
}

impl Count for u128 {
    fn into_big(self) -> BigUint {
        BigUint::from(self)
    }
}

impl Count for BigUint {
    fn into_big(self) -> BigUint {
        self
    }
}

/// Exact area distribution of closed `n_steps`-step square-lattice walks,
/// capped at [`DEFAULT_WALK_LIMIT`].
pub fn brute_force_distribution_square(n_steps: u32) -> Result<AreaDistribution> {
    brute_force_distribution_square_with_limit(n_steps, DEFAULT_WALK_LIMIT)
}

pub fn brute_force_distribution_square_with_limit(
    n_steps: u32,
    limit: u32,
) -> Result<AreaDistribution> {
    if n_steps < 2 || n_steps % 2 != 0 {
        return Err(invalid(format!(
            "closed square-lattice walks need an even length >= 2, got {n_steps}"
        )));
    }
    if n_steps > limit {
        return Err(Error::ResourceLimit(format!(
            "walk counter capped at {limit} steps, asked for {n_steps}"
        )));
    }
    let counts: Vec<(i64, BigUint)> = if n_steps <= U128_LIMIT {
        widen(run::<u128>(n_steps)?)
    } else {
        run::<BigUint>(n_steps)?
    };
    Ok(AreaDistribution::from_counts(n_steps, counts))
}

fn widen<C: Count>(counts: Vec<(i64, C)>) -> Vec<(i64, BigUint)> {
    counts.into_iter().map(|(a, c)| (a, c.into_big())).collect()
}

fn run<C: Count>(n_steps: u32) -> Result<Vec<(i64, C)>> {
    let n = n_steps as i64;
    let h = n / 2;
    let side = (2 * h + 1) as usize;
    let amax = n * n / 16;
    let width = (2 * amax + 1) as usize;
    let idx = |x: i64, y: i64, a: i64| -> usize {
        (((x + h) as usize * side) + (y + h) as usize) * width + (a + amax) as usize
    };

    let mut cur = vec![C::zero(); side * side * width];
    let mut next = cur.clone();
    cur[idx(0, 0, 0)] = C::one();

    for t in 0..n {
        let reach = t.min(n - t);
        let budget = n - t - 1;
        for x in -reach..=reach {
            let yr = reach - x.abs();
            for y in -yr..=yr {
                if (x + y - t).rem_euclid(2) != 0 {
                    continue;
                }
                let base = idx(x, y, -amax);
                for off in 0..width {
                    let c = &cur[base + off];
                    if c.is_zero() {
                        continue;
                    }
                    let a = off as i64 - amax;
                    for (dx, dy, da) in [(1, 0, 0), (-1, 0, 0), (0, 1, x), (0, -1, -x)] {
                        let (nx, ny, na) = (x + dx, y + dy, a + da);
                        if nx.abs() + ny.abs() > budget {
                            continue;
                        }
                        if na.abs() > amax {
                            return Err(Error::InvariantViolation(format!(
                                "live walk state with area {na} beyond bound {amax}"
                            )));
                        }
                        next[idx(nx, ny, na)] += c;
                    }
                }
            }
        }
        std::mem::swap(&mut cur, &mut next);
        for v in next.iter_mut() {
            if !v.is_zero() {
                *v = C::zero();
            }
        }
    }

    let base = idx(0, 0, -amax);
    Ok((0..width)
        .filter(|&off| !cur[base + off].is_zero())
        .map(|off| (off as i64 - amax, cur[base + off].clone()))
        .collect())
}
