use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exact::Rational;

/// Fixed-point real number `mantissa / 2^bits`.
///
/// Operands of a binary operation must share the same `bits`; every result
/// is rounded to nearest.
#[derive(Clone, PartialEq, Eq)]
pub struct BigReal {
    m: BigInt,
    bits: u32,
}

/// Working precision in bits for `digits` decimal digits plus guard digits.
pub fn bits_for_digits(digits: u32) -> u32 {
    ((digits as f64 + 20.0) * std::f64::consts::LOG2_10).ceil() as u32 + 32
}

fn div_round(n: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = n.div_mod_floor(d);
    // round half away from zero relative to the floor quotient
    if (r * 2u8).abs() >= d.abs() {
        if d.is_positive() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

fn shr_round(n: &BigInt, s: u32) -> BigInt {
    if s == 0 {
        return n.clone();
    }
    let half = BigInt::one() << (s - 1);
    (n + half) >> s
}

impl BigReal {
    pub fn zero(bits: u32) -> Self {
        BigReal { m: BigInt::zero(), bits }
    }

    pub fn from_int(n: impl Into<BigInt>, bits: u32) -> Self {
        BigReal { m: n.into() << bits, bits }
    }

    pub fn from_ratio(n: &BigInt, d: &BigInt, bits: u32) -> Self {
        assert!(!d.is_zero(), "division by zero");
        BigReal { m: div_round(&(n << bits), d), bits }
    }

    pub fn from_rational(r: &Rational, bits: u32) -> Self {
        Self::from_ratio(r.numer(), r.denom(), bits)
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.m
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.m.is_negative()
    }

    pub fn abs(&self) -> Self {
        BigReal { m: self.m.abs(), bits: self.bits }
    }

    /// The unit in the last place.
    pub fn ulp(bits: u32) -> Self {
        BigReal { m: BigInt::one(), bits }
    }

    /// `10^(-d)` at this precision.
    pub fn ten_pow_neg(d: u32, bits: u32) -> Self {
        Self::from_ratio(&BigInt::one(), &BigInt::from(10).pow(d), bits)
    }

    pub fn mul_rational(&self, r: &Rational) -> Self {
        BigReal { m: div_round(&(&self.m * r.numer()), r.denom()), bits: self.bits }
    }

    pub fn mul_int(&self, n: i64) -> Self {
        BigReal { m: &self.m * n, bits: self.bits }
    }

    pub fn div_int(&self, n: i64) -> Self {
        BigReal { m: div_round(&self.m, &BigInt::from(n)), bits: self.bits }
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        let one = BigInt::one() << (2 * self.bits);
        BigReal { m: div_round(&one, &self.m), bits: self.bits }
    }

    pub fn powi(&self, e: i32) -> Self {
        if e < 0 {
            return self.powi(-e).recip();
        }
        let mut base = self.clone();
        let mut acc = BigReal::from_int(1, self.bits);
        let mut e = e as u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Re-expresses the value at another precision.
    pub fn with_bits(&self, bits: u32) -> Self {
        match bits.cmp(&self.bits) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => BigReal { m: &self.m << (bits - self.bits), bits },
            Ordering::Less => BigReal { m: shr_round(&self.m, self.bits - bits), bits },
        }
    }

    pub fn to_f64(&self) -> f64 {
        let excess = self.m.bits().saturating_sub(60) as u32;
        let shift = excess.min(self.bits);
        let top = (&self.m >> shift).to_f64().unwrap_or(f64::NAN);
        top * 2f64.powi(shift as i32 - self.bits as i32)
    }

    /// Decimal expansion rounded to `digits` places after the point.
    pub fn to_decimal(&self, digits: u32) -> String {
        let scale = BigInt::from(10).pow(digits);
        let v = shr_round(&(&self.m * &scale), self.bits);
        let neg = v.sign() == Sign::Minus;
        let s = v.abs().to_string();
        let s = if s.len() <= digits as usize {
            format!("{}{}", "0".repeat(digits as usize + 1 - s.len()), s)
        } else {
            s
        };
        let (int, frac) = s.split_at(s.len() - digits as usize);
        let sign = if neg { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    }

    /// `|self - other| <= tol`.
    pub fn close_to(&self, other: &BigReal, tol: &BigReal) -> bool {
        (self - other).abs() <= *tol
    }

    fn check(&self, o: &BigReal) {
        assert_eq!(self.bits, o.bits, "precision mismatch");
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigReal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.check(other);
        self.m.cmp(&other.m)
    }
}

impl<'a> Add for &'a BigReal {
    type Output = BigReal;
    fn add(self, o: &BigReal) -> BigReal {
        self.check(o);
        BigReal { m: &self.m + &o.m, bits: self.bits }
    }
}

impl<'a> Sub for &'a BigReal {
    type Output = BigReal;
    fn sub(self, o: &BigReal) -> BigReal {
        self.check(o);
        BigReal { m: &self.m - &o.m, bits: self.bits }
    }
}

impl<'a> Mul for &'a BigReal {
    type Output = BigReal;
    fn mul(self, o: &BigReal) -> BigReal {
        self.check(o);
        BigReal { m: shr_round(&(&self.m * &o.m), self.bits), bits: self.bits }
    }
}

impl<'a> Div for &'a BigReal {
    type Output = BigReal;
    fn div(self, o: &BigReal) -> BigReal {
        self.check(o);
        assert!(!o.is_zero(), "division by zero");
        BigReal { m: div_round(&(&self.m << self.bits), &o.m), bits: self.bits }
    }
}

impl<'a> Neg for &'a BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal { m: -&self.m, bits: self.bits }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for BigReal {
            type Output = BigReal;
            fn $m(self, o: BigReal) -> BigReal {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a BigReal> for BigReal {
            type Output = BigReal;
            fn $m(self, o: &'a BigReal) -> BigReal {
                (&self).$m(o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        -&self
    }
}

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = ((self.bits.saturating_sub(32)) as f64 / std::f64::consts::LOG2_10) as u32;
        write!(f, "{}", self.to_decimal(digits.min(60)))
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `sum_k (-1)^k / ((2k+1) n^(2k+1))` if `alternate`, else without signs.
fn arc_series(n: u64, alternate: bool, bits: u32) -> BigReal {
    let guard = 16;
    let b = bits + guard;
    let one = BigInt::one() << b;
    let n2 = BigInt::from(n * n);
    let mut power = one / BigInt::from(n); // 1/n^(2k+1)
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if alternate && k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        power /= &n2;
        k += 1;
    }
    BigReal { m: shr_round(&sum, guard), bits }
}

/// `pi` via Machin's formula.
pub fn pi(bits: u32) -> BigReal {
    let a = arc_series(5, true, bits + 8).mul_int(16);
    let b = arc_series(239, true, bits + 8).mul_int(4);
    (a - b).with_bits(bits)
}

/// `log 2 = 2 atanh(1/3)`.
pub fn ln2(bits: u32) -> BigReal {
    arc_series(3, false, bits + 8).mul_int(2).with_bits(bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_and_log2_digits() {
        let b = bits_for_digits(50);
        assert_eq!(pi(b).to_decimal(40), "3.1415926535897932384626433832795028841972");
        assert_eq!(ln2(b).to_decimal(40), "0.6931471805599453094172321214581765680755");
    }

    #[test]
    fn arithmetic_round_trip() {
        let b = bits_for_digits(30);
        let third = BigReal::from_rational(&Rational::new(1, 3), b);
        let one = &third * &BigReal::from_int(3, b);
        assert!(one.close_to(&BigReal::from_int(1, b), &BigReal::ten_pow_neg(40, b)));
        let x = BigReal::from_rational(&Rational::new(-7, 4), b);
        assert_eq!(x.to_decimal(3), "-1.750");
        assert_eq!((&x / &x).to_decimal(5), "1.00000");
        assert!((x.powi(-2).to_f64() - 16.0 / 49.0).abs() < 1e-15);
        assert_eq!(BigReal::from_rational(&Rational::new(1, 8), b).to_decimal(2), "0.13");
        assert_eq!(BigReal::from_rational(&Rational::new(1, 1000), b).to_decimal(2), "0.00");
    }
}
