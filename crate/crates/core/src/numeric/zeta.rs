use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::bigreal::{bits_for_digits, ln2, BigReal};
use crate::eisenstein_q::{bernoulli, factorial_q};
use crate::error::{Error, Result};
use crate::exact::{binomial_q, Rational};
use crate::parity::{Kind, Parity};

/// Which single zeta value: restricted to odd or even integers, or all.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SingleKind {
    E,
    O,
    Full,
}

impl From<Parity> for SingleKind {
    fn from(p: Parity) -> Self {
        match p {
            Parity::E => SingleKind::E,
            Parity::O => SingleKind::O,
        }
    }
}

/// `c0 + c1 T`, the shape of every regularized value.
#[derive(Clone, PartialEq)]
pub struct RegularizedValue {
    pub c0: BigReal,
    pub c1: BigReal,
}

impl RegularizedValue {
    pub fn convergent(v: BigReal) -> Self {
        let bits = v.bits();
        RegularizedValue { c0: v, c1: BigReal::zero(bits) }
    }

    pub fn bits(&self) -> u32 {
        self.c0.bits()
    }

    pub fn is_convergent(&self) -> bool {
        self.c1.is_zero()
    }

    pub fn at(&self, t: i64) -> BigReal {
        &self.c0 + &self.c1.mul_int(t)
    }

    pub fn add(&self, o: &Self) -> Self {
        RegularizedValue { c0: &self.c0 + &o.c0, c1: &self.c1 + &o.c1 }
    }

    pub fn sub(&self, o: &Self) -> Self {
        RegularizedValue { c0: &self.c0 - &o.c0, c1: &self.c1 - &o.c1 }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        RegularizedValue { c0: self.c0.mul_rational(r), c1: self.c1.mul_rational(r) }
    }

    /// Product of two affine values; fails if the result would be quadratic in `T`.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        if !self.c1.is_zero() && !o.c1.is_zero() {
            return Err(Error::Divergent("product of two regularized values is quadratic in T".into()));
        }
        Ok(RegularizedValue { c0: &self.c0 * &o.c0, c1: &(&self.c0 * &o.c1) + &(&self.c1 * &o.c0) })
    }

    pub fn zero(bits: u32) -> Self {
        RegularizedValue { c0: BigReal::zero(bits), c1: BigReal::zero(bits) }
    }

    /// Both coefficients within `tol`.
    pub fn close_to(&self, o: &Self, tol: &BigReal) -> bool {
        self.c0.close_to(&o.c0, tol) && self.c1.close_to(&o.c1, tol)
    }
}

impl fmt::Debug for RegularizedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c1.is_zero() {
            write!(f, "{:?}", self.c0)
        } else {
            write!(f, "{:?} + ({:?})*T", self.c0, self.c1)
        }
    }
}

/// Numeric context: precision in bits and the target decimal digits.
#[derive(Clone, Copy, Debug)]
pub struct Precision {
    pub digits: u32,
    pub bits: u32,
}

impl Precision {
    pub fn new(digits: u32) -> Self {
        Precision { digits, bits: bits_for_digits(digits) }
    }

    /// Below which terms are dropped.
    fn eps(&self) -> BigReal {
        BigReal::ulp(self.bits)
    }

    /// Asymptotic expansions are used from this point on.
    fn switch_point(&self) -> u64 {
        2 * self.digits as u64 + 20
    }

    /// `10^(-(digits - 10))`, the standard comparison tolerance.
    pub fn tolerance(&self) -> BigReal {
        BigReal::ten_pow_neg(self.digits.saturating_sub(10), self.bits)
    }
}

/// `RegularizedValue` with its decimal rendering, for reports.
#[derive(Clone, Debug)]
pub struct TaggedValue {
    pub tag: String,
    pub value: RegularizedValue,
    pub digits: u32,
}

impl Serialize for TaggedValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("TaggedValue", 3)?;
        st.serialize_field("tag", &self.tag)?;
        st.serialize_field("c0", &self.value.c0.to_decimal(self.digits))?;
        st.serialize_field("c1", &self.value.c1.to_decimal(self.digits))?;
        st.end()
    }
}

/// Euler-Maclaurin coefficients of `zeta_H(n, x) ~ sum_m e_m x^(-(n-1+m))`:
/// `e_0 = 1/(n-1)`, `e_1 = 1/2`, `e_2k = B_2k (n)_(2k-1) / (2k)!`.
fn em_coefficient(n: u32, m: u32) -> Rational {
    match m {
        0 => Rational::new(1, n as i64 - 1),
        1 => Rational::new(1, 2),
        _ if m % 2 == 1 => Rational::zero(),
        _ => {
            let rising: Rational = (0..m - 1).map(|i| Rational::from(n as i64 + i as i64)).product();
            bernoulli(m as usize) * rising / factorial_q(m)
        }
    }
}

/// `zeta_H(n, x) = sum_{j>=0} (x+j)^(-n)` for large `x` by its asymptotic expansion.
fn hurwitz_asymptotic(n: u32, x: &Rational, p: &Precision) -> BigReal {
    let eps = p.eps();
    let inv = BigReal::from_rational(&x.recip().expect("x > 0"), p.bits);
    // x^(-(n-1))
    let mut power = inv.powi(n as i32 - 1);
    let mut acc = BigReal::zero(p.bits);
    let mut small_run = 0;
    for m in 0.. {
        let c = em_coefficient(n, m);
        if !c.is_zero() {
            let term = power.mul_rational(&c);
            if term.abs() < eps {
                small_run += 1;
                if small_run >= 2 {
                    break;
                }
            } else {
                small_run = 0;
            }
            acc = &acc + &term;
        }
        power = &power * &inv;
        if power.is_zero() || m > 4 * p.digits + 200 {
            break;
        }
    }
    acc
}

/// `sum_{j>=0} (x+j)^(-n)` for rational `x > 0`, `n >= 2`.
pub fn hurwitz_zeta(n: u32, x: &Rational, p: &Precision) -> BigReal {
    assert!(n >= 2);
    let start = Rational::from(p.switch_point());
    let mut shift = 0u64;
    let mut y = x.clone();
    while y < start {
        y += Rational::one();
        shift += 1;
    }
    let mut acc = hurwitz_asymptotic(n, &y, p);
    for j in 0..shift {
        let base = x + &Rational::from(j);
        acc = &acc + &BigReal::from_rational(&base.pow(-(n as i32)), p.bits);
    }
    acc
}

/// `D(r, s; b, d) = sum_{j>=0} (j+b)^(-s) zeta_H(r, j+b+d)` for `r >= 2`, `s >= 1`.
fn double_hurwitz(r: u32, s: u32, b: &Rational, d: &Rational, p: &Precision) -> BigReal {
    let big_j = p.switch_point();
    let x_big = b + &Rational::from(big_j);
    // direct part, walking zeta_H(r, j+b+d) downward
    let mut z = hurwitz_zeta(r, &(&x_big + d), p);
    let mut direct = BigReal::zero(p.bits);
    for j in (0..big_j).rev() {
        let x = b + &Rational::from(j);
        z = &z + &BigReal::from_rational(&(&x + d).pow(-(r as i32)), p.bits);
        direct = &direct + &(&z * &BigReal::from_rational(&x.pow(-(s as i32)), p.bits));
    }
    // tail: sum_{x >= X} x^(-s) zeta_H(r, x+d) = sum_n d_n zeta_H(n, X)
    let eps = p.eps();
    let n0 = r + s - 1;
    let mut tail = BigReal::zero(p.bits);
    let mut small_run = 0;
    for n in n0..n0 + 4 * p.digits + 200 {
        let e = n - n0;
        let mut coeff = Rational::zero();
        for m in 0..=e {
            let l = e - m;
            let em = em_coefficient(r, m);
            if em.is_zero() {
                continue;
            }
            let t = (r - 1 + m) as i64;
            coeff += em * binomial_q(-t, l as i64) * d.pow(l as i32);
        }
        if coeff.is_zero() {
            continue;
        }
        let term = hurwitz_asymptotic(n.max(2), &x_big, p).mul_rational(&coeff);
        if term.abs() < eps {
            small_run += 1;
            if small_run >= 3 {
                break;
            }
        } else {
            small_run = 0;
        }
        tail = &tail + &term;
    }
    &direct + &tail
}

/// Convergent single values `zeta^*(k)`, `k >= 2`.
pub fn zeta_single_convergent(kind: SingleKind, k: u32, p: &Precision) -> BigReal {
    assert!(k >= 2);
    let z = match kind {
        SingleKind::Full => hurwitz_zeta(k, &Rational::one(), p),
        SingleKind::E => hurwitz_zeta(k, &Rational::one(), p).mul_rational(&Rational::from(2).pow(-(k as i32))),
        SingleKind::O => hurwitz_zeta(k, &Rational::new(1, 2), p).mul_rational(&Rational::from(2).pow(-(k as i32))),
    };
    z
}

/// `zeta^o(k)`, `zeta^e(k)` or `zeta(k)`, regularized at `k = 1` with
/// `zeta^o(1) = (T + log 2)/2`, `zeta^e(1) = (T - log 2)/2`, `zeta(1) = T`.
pub fn zeta_single(kind: SingleKind, k: u32, digits: u32) -> Result<RegularizedValue> {
    let p = Precision::new(digits);
    zeta_single_p(kind, k, &p)
}

pub(crate) fn zeta_single_p(kind: SingleKind, k: u32, p: &Precision) -> Result<RegularizedValue> {
    if k == 0 {
        return Err(Error::InvalidIndex("zeta(0) is not a series value".into()));
    }
    if k >= 2 {
        return Ok(RegularizedValue::convergent(zeta_single_convergent(kind, k, p)));
    }
    let half = BigReal::from_rational(&Rational::new(1, 2), p.bits);
    let l = ln2(p.bits).mul_rational(&Rational::new(1, 2));
    Ok(match kind {
        SingleKind::Full => RegularizedValue { c0: BigReal::zero(p.bits), c1: BigReal::from_int(1, p.bits) },
        SingleKind::O => RegularizedValue { c0: l, c1: half },
        SingleKind::E => RegularizedValue { c0: -l, c1: half },
    })
}

/// `zeta^{ab}(r, s)` for `r >= 2`, `s >= 1`.
pub fn double_zeta_level2(kind: Kind, r: u32, s: u32, digits: u32) -> Result<BigReal> {
    double_zeta_level2_p(kind, r, s, &Precision::new(digits))
}

pub(crate) fn double_zeta_level2_p(kind: Kind, r: u32, s: u32, p: &Precision) -> Result<BigReal> {
    if r < 2 || s < 1 {
        return Err(Error::Divergent(format!("zeta^{kind}({r},{s}) needs r >= 2, s >= 1")));
    }
    let (a, b) = kind.parities();
    let b_shift = match b {
        Parity::O => Rational::new(1, 2),
        Parity::E => Rational::one(),
    };
    let d = if a == b { Rational::one() } else { Rational::new(1, 2) };
    let v = double_hurwitz(r, s, &b_shift, &d, p);
    Ok(v.mul_rational(&Rational::from(2).pow(-((r + s) as i32))))
}

/// `zeta(r, s) = sum_{m>n>0} m^(-r) n^(-s)`.
pub fn double_zeta_level1(r: u32, s: u32, digits: u32) -> Result<BigReal> {
    double_zeta_level1_p(r, s, &Precision::new(digits))
}

pub(crate) fn double_zeta_level1_p(r: u32, s: u32, p: &Precision) -> Result<BigReal> {
    if r < 2 || s < 1 {
        return Err(Error::Divergent(format!("zeta({r},{s}) needs r >= 2, s >= 1")));
    }
    Ok(double_hurwitz(r, s, &Rational::one(), &Rational::one(), p))
}

/// Level 2 double zeta value with the shuffle regularization at `r = 1`.
pub fn regularized_dzv(kind: Kind, r: u32, s: u32, digits: u32) -> Result<RegularizedValue> {
    regularized_dzv_p(kind, r, s, &Precision::new(digits))
}

pub(crate) fn regularized_dzv_p(kind: Kind, r: u32, s: u32, p: &Precision) -> Result<RegularizedValue> {
    if r == 0 || s == 0 {
        return Err(Error::InvalidIndex(format!("indices must be positive, got ({r},{s})")));
    }
    if r >= 2 {
        return Ok(RegularizedValue::convergent(double_zeta_level2_p(kind, r, s, p)?));
    }
    if s == 1 {
        return Err(Error::Divergent("(1,1) has no regularized value".into()));
    }
    let half_log2 = ln2(p.bits).mul_rational(&Rational::new(1, 2));
    let half = Rational::new(1, 2);
    let zo = zeta_single_convergent(SingleKind::O, s, p);
    let ze = zeta_single_convergent(SingleKind::E, s, p);
    // L = L_sh(1;1) = -log 2
    Ok(match kind {
        Kind::EO => RegularizedValue {
            c1: zo.mul_rational(&half),
            c0: &(-&(&half_log2 * &zo)) - &double_zeta_level2_p(Kind::OE, s, 1, p)?,
        },
        Kind::OE => RegularizedValue {
            c1: ze.mul_rational(&half),
            c0: &(&half_log2 * &ze) - &double_zeta_level2_p(Kind::EO, s, 1, p)?,
        },
        Kind::OO => RegularizedValue {
            c1: zo.mul_rational(&half),
            c0: &(&(&half_log2 * &zo) - &double_zeta_level2_p(Kind::OO, s, 1, p)?)
                - &zeta_single_convergent(SingleKind::O, s + 1, p),
        },
    })
}

/// `zeta(k)` including the value `zeta(0) = -1/2` used in the KMT identity.
pub(crate) fn zeta_full_with_zero(k: u32, p: &Precision) -> BigReal {
    if k == 0 {
        BigReal::from_rational(&Rational::new(-1, 2), p.bits)
    } else {
        zeta_single_convergent(SingleKind::Full, k, p)
    }
}


#[cfg(test)]
mod tests {
    use super::super::bigreal::pi;
    use super::*;

    #[test]
    fn zeta_two_and_four() {
        let p = Precision::new(40);
        let pi = pi(p.bits);
        let z2 = zeta_single_convergent(SingleKind::Full, 2, &p);
        let expect = (&pi * &pi).div_int(6);
        assert!(z2.close_to(&expect, &BigReal::ten_pow_neg(38, p.bits)));
        let zo2 = zeta_single_convergent(SingleKind::O, 2, &p);
        assert!(zo2.close_to(&(&pi * &pi).div_int(8), &BigReal::ten_pow_neg(38, p.bits)));
        let ze4 = zeta_single_convergent(SingleKind::E, 4, &p);
        let z4 = zeta_single_convergent(SingleKind::Full, 4, &p);
        assert!(ze4.close_to(&z4.div_int(16), &BigReal::ten_pow_neg(38, p.bits)));
    }

    #[test]
    fn regularized_single() {
        let v = zeta_single(SingleKind::O, 1, 30).unwrap();
        let b = v.bits();
        assert_eq!(v.c1, BigReal::from_rational(&Rational::new(1, 2), b));
        assert!(v.c0.close_to(&ln2(b).div_int(2), &BigReal::ten_pow_neg(35, b)));
    }

    #[test]
    fn euler_identity_level1() {
        let p = Precision::new(30);
        let z21 = double_zeta_level1_p(2, 1, &p).unwrap();
        let z3 = zeta_single_convergent(SingleKind::Full, 3, &p);
        assert!(z21.close_to(&z3, &BigReal::ten_pow_neg(28, p.bits)), "{z21:?} vs {z3:?}");
    }

    #[test]
    fn divergent_requests_rejected() {
        assert!(double_zeta_level2(Kind::OO, 1, 3, 20).is_err());
        assert!(regularized_dzv(Kind::OO, 1, 1, 20).is_err());
        assert!(double_zeta_level1(1, 2, 20).is_err());
    }
}
