use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Rational;

/// A Q-module element usable as a coefficient of series and polynomials.
///
/// There is no free-standing `zero()`: truncated series carry their order, so
/// every zero is produced from an existing value of the same shape.
pub trait Scalar: Clone + PartialEq + Debug + Display + Send + Sync {
    fn zero_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn scale(&self, c: &Rational) -> Self;

    fn add_assign_ref(&mut self, other: &Self) {
        *self = self.add_ref(other);
    }

    fn sub_assign_ref(&mut self, other: &Self) {
        *self = self.sub_ref(other);
    }
}

/// A commutative ring on top of [`Scalar`].
pub trait RingScalar: Scalar {
    fn one_like(&self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
}

impl Scalar for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }
}

impl RingScalar for Rational {
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}

/// Integers only admit scaling by integral rationals; anything else panics.
impl Scalar for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, c: &Rational) -> Self {
        let n = c.to_integer().expect("BigInt scaled by a non-integral rational");
        self * n
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }
}

impl RingScalar for BigInt {
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
}
