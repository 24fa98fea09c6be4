//! Number types accepted by the nested-sum and cluster routines.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Field operations plus a summation strategy. Floating types sum with
/// Kahan compensation; exact types sum exactly.
pub trait Scalar: Clone + Send + Sync + std::fmt::Debug {
    type Sum: Accumulator<Self>;

    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rational(r: &BigRational) -> Self;
    fn from_i64(v: i64) -> Self;
    /// Exact equality for exact types, `1e-12` relative otherwise.
    fn is_one(&self) -> bool;

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    fn sum<'a, I: IntoIterator<Item = &'a Self>>(items: I) -> Self
    where
        Self: 'a,
    {
        let mut acc = Self::Sum::default();
        for x in items {
            acc.push(x);
        }
        acc.value()
    }
}

pub trait Accumulator<T>: Default {
    fn push(&mut self, x: &T);
    fn value(&self) -> T;
}

/// Compensated summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct Kahan<T> {
    sum: T,
    comp: T,
}

macro_rules! kahan_impl {
    ($t:ty) => {
        impl Accumulator<$t> for Kahan<$t> {
            fn push(&mut self, x: &$t) {
                let y = *x - self.comp;
                let t = self.sum + y;
                self.comp = (t - self.sum) - y;
                self.sum = t;
            }

            fn value(&self) -> $t {
                self.sum
            }
        }
    };
}

kahan_impl!(f64);
kahan_impl!(Complex64);

impl Scalar for f64 {
    type Sum = Kahan<f64>;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rational(r: &BigRational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn is_one(&self) -> bool {
        (self - 1.0).abs() <= 1e-12
    }
}

impl Scalar for Complex64 {
    type Sum = Kahan<Complex64>;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rational(r: &BigRational) -> Self {
        Complex64::new(f64::from_rational(r), 0.0)
    }
    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
    fn is_one(&self) -> bool {
        (self - 1.0).norm() <= 1e-12
    }
}

#[derive(Debug, Clone, Default)]
pub struct ExactSum(BigRational);

impl Accumulator<BigRational> for ExactSum {
    fn push(&mut self, x: &BigRational) {
        self.0 += x;
    }

    fn value(&self) -> BigRational {
        self.0.clone()
    }
}

impl Scalar for BigRational {
    type Sum = ExactSum;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(v.into())
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
}
