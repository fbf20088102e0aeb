use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{Rational, RingScalar, Scalar, SymbolicScalar};
use crate::error::{Error, Result};

/// Power series in `q` known modulo `q^(order+1)`.
///
/// Coefficients past the order are unknown and never read; every binary
/// operation truncates to the smaller order of its operands.
#[derive(Clone, PartialEq)]
pub struct QSeries<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> QSeries<S> {
    /// The zero series of the given order, using `zero` as the coefficient prototype.
    pub fn zero_with(order: usize, zero: &S) -> Self {
        QSeries { coeffs: vec![zero.zero_like(); order + 1] }
    }

    /// Builds a series from leading coefficients; missing ones are zero and
    /// coefficients past `order` are dropped.
    pub fn from_coeffs_with(order: usize, coeffs: Vec<S>, zero: &S) -> Self {
        let mut c = coeffs;
        c.truncate(order + 1);
        while c.len() < order + 1 {
            c.push(zero.zero_like());
        }
        QSeries { coeffs: c }
    }

    pub fn constant_with(order: usize, value: S) -> Self {
        let mut s = Self::zero_with(order, &value);
        s.coeffs[0] = value;
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `q^n`. Panics if `n` exceeds the order.
    pub fn coeff(&self, n: usize) -> &S {
        assert!(n <= self.order(), "coefficient q^{n} beyond order {}", self.order());
        &self.coeffs[n]
    }

    pub fn get(&self, n: usize) -> Option<&S> {
        self.coeffs.get(n)
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn set(&mut self, n: usize, value: S) {
        assert!(n <= self.order(), "coefficient q^{n} beyond order {}", self.order());
        self.coeffs[n] = value;
    }

    pub fn add_to_coeff(&mut self, n: usize, value: &S) {
        if n <= self.order() {
            self.coeffs[n].add_assign_ref(value);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        QSeries { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn add_series(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        QSeries { coeffs: (0..=n).map(|i| self.coeffs[i].add_ref(&other.coeffs[i])).collect() }
    }

    pub fn sub_series(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        QSeries { coeffs: (0..=n).map(|i| self.coeffs[i].sub_ref(&other.coeffs[i])).collect() }
    }

    pub fn neg_series(&self) -> Self {
        QSeries { coeffs: self.coeffs.iter().map(Scalar::neg_ref).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        QSeries { coeffs: self.coeffs.iter().map(|x| x.scale(c)).collect() }
    }

    /// Multiplies by `q^k`, keeping the order.
    pub fn shift_up(&self, k: usize) -> Self {
        let zero = self.coeffs[0].zero_like();
        let n = self.order();
        QSeries {
            coeffs: (0..=n)
                .map(|i| if i < k { zero.clone() } else { self.coeffs[i - k].clone() })
                .collect(),
        }
    }

    /// Substitutes `q -> q^m`.
    pub fn dilate(&self, m: usize) -> Self {
        assert!(m >= 1);
        let mut out = Self::zero_with(self.order(), &self.coeffs[0]);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i * m > self.order() {
                break;
            }
            out.coeffs[i * m] = c.clone();
        }
        out
    }

    /// First index `n` at which the two series differ, within the common order.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let n = self.order().min(other.order());
        (0..=n).find(|&i| self.coeffs[i] != other.coeffs[i])
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> QSeries<T> {
        QSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }
}

impl<S: RingScalar> QSeries<S> {
    pub fn mul_series(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                out[i + j].add_assign_ref(&a.mul_ref(b));
            }
        }
        QSeries { coeffs: out }
    }

    pub fn one_with(order: usize, proto: &S) -> Self {
        Self::constant_with(order, proto.one_like())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one_with(self.order(), &self.coeffs[0]);
        for _ in 0..e {
            acc = acc.mul_series(self);
        }
        acc
    }
}

impl QSeries<Rational> {
    pub fn zero(order: usize) -> Self {
        Self::zero_with(order, &Rational::zero())
    }

    pub fn constant(order: usize, c: Rational) -> Self {
        Self::constant_with(order, c)
    }

    pub fn from_coeffs(order: usize, coeffs: Vec<Rational>) -> Self {
        Self::from_coeffs_with(order, coeffs, &Rational::zero())
    }

    /// `s * self` coefficientwise, for a scalar `s` of any Q-module.
    pub fn tensor<T: Scalar>(&self, s: &T) -> QSeries<T> {
        self.map(|c| s.scale(c))
    }
}

impl QSeries<SymbolicScalar> {
    pub fn zero_symbolic(order: usize) -> Self {
        Self::zero_with(order, &SymbolicScalar::zero())
    }
}

impl<S: Scalar> Scalar for QSeries<S> {
    fn zero_like(&self) -> Self {
        Self::zero_with(self.order(), &self.coeffs[0])
    }
    fn is_zero(&self) -> bool {
        QSeries::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self.add_series(other)
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.sub_series(other)
    }
    fn neg_ref(&self) -> Self {
        self.neg_series()
    }
    fn scale(&self, c: &Rational) -> Self {
        QSeries::scale(self, c)
    }
}

impl<S: RingScalar> RingScalar for QSeries<S> {
    fn one_like(&self) -> Self {
        Self::one_with(self.order(), &self.coeffs[0])
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.mul_series(other)
    }
}

impl<'a, S: Scalar> Add for &'a QSeries<S> {
    type Output = QSeries<S>;
    fn add(self, rhs: Self) -> QSeries<S> {
        self.add_series(rhs)
    }
}

impl<'a, S: Scalar> Sub for &'a QSeries<S> {
    type Output = QSeries<S>;
    fn sub(self, rhs: Self) -> QSeries<S> {
        self.sub_series(rhs)
    }
}

impl<'a, S: Scalar> Neg for &'a QSeries<S> {
    type Output = QSeries<S>;
    fn neg(self) -> QSeries<S> {
        self.neg_series()
    }
}

impl<'a, S: RingScalar> Mul for &'a QSeries<S> {
    type Output = QSeries<S>;
    fn mul(self, rhs: Self) -> QSeries<S> {
        self.mul_series(rhs)
    }
}

impl<S: Scalar> fmt::Debug for QSeries<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<S: Scalar> fmt::Display for QSeries<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*q")?,
                _ => write!(f, "({c})*q^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

impl<S: Scalar + Serialize> Serialize for QSeries<S> {
    fn serialize<Z: Serializer>(&self, serializer: Z) -> std::result::Result<Z::Ok, Z::Error> {
        let mut st = serializer.serialize_struct("QSeries", 2)?;
        st.serialize_field("order", &self.order())?;
        st.serialize_field("coeffs", &self.coeffs)?;
        st.end()
    }
}

/// A series whose coefficient ring is only known at run time.
#[derive(Clone, Debug, PartialEq)]
pub enum DynSeries {
    Rational(QSeries<Rational>),
    Symbolic(QSeries<SymbolicScalar>),
}

impl DynSeries {
    fn ring(&self) -> &'static str {
        match self {
            DynSeries::Rational(_) => "Q",
            DynSeries::Symbolic(_) => "Q[symbols]",
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (DynSeries::Rational(a), DynSeries::Rational(b)) => Ok(DynSeries::Rational(a + b)),
            (DynSeries::Symbolic(a), DynSeries::Symbolic(b)) => Ok(DynSeries::Symbolic(a + b)),
            _ => Err(Error::RingMismatch(format!("{} + {}", self.ring(), other.ring()))),
        }
    }

    /// Products are defined over Q only; symbolic coefficients form a module.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (DynSeries::Rational(a), DynSeries::Rational(b)) => Ok(DynSeries::Rational(a * b)),
            _ => Err(Error::RingMismatch(format!("{} * {}", self.ring(), other.ring()))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Symbol;

    fn geometric(order: usize) -> QSeries<Rational> {
        QSeries::from_coeffs(order, vec![Rational::one(); order + 1])
    }

    #[test]
    fn product_truncates_to_min_order() {
        let a = geometric(10);
        let b = geometric(5);
        let c = &a * &b;
        assert_eq!(c.order(), 5);
        // 1/(1-q)^2 = sum (n+1) q^n
        for n in 0..=5 {
            assert_eq!(c.coeff(n), &Rational::from(n as i64 + 1));
        }
    }

    #[test]
    fn inverse_of_one_minus_q() {
        let mut one_minus_q = QSeries::constant(8, Rational::one());
        one_minus_q.set(1, Rational::from(-1));
        let p = &one_minus_q * &geometric(8);
        assert_eq!(p, QSeries::constant(8, Rational::one()));
    }

    #[test]
    fn dynamic_ring_mismatch() {
        let a = DynSeries::Rational(geometric(3));
        let s = DynSeries::Symbolic(geometric(3).tensor(&SymbolicScalar::symbol(Symbol::Zo(3))));
        assert!(matches!(a.mul(&s), Err(Error::RingMismatch(_))));
        assert!(matches!(s.mul(&s), Err(Error::RingMismatch(_))));
        assert!(a.mul(&a).is_ok());
    }

    #[test]
    fn dilation_and_shift() {
        let g = geometric(6);
        let d = g.dilate(2);
        assert_eq!(d.coeffs().iter().filter(|c| !c.is_zero()).count(), 4);
        let s = g.shift_up(2);
        assert!(s.coeff(1).is_zero());
        assert_eq!(s.coeff(2), &Rational::one());
    }
}
