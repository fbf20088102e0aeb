use std::collections::HashMap;
use std::sync::Mutex;

use serde::Serialize;

use super::bigreal::BigReal;
use super::zeta::{
    double_zeta_level1_p, regularized_dzv_p, zeta_full_with_zero, zeta_single_p, Precision,
    RegularizedValue, SingleKind,
};
use crate::error::{invalid_weight, Error, Result};
use crate::exact::{binomial_q, Rational};
use crate::parity::Kind;

/// Memoized zeta values at one precision, safe to share between threads.
pub struct ZetaTable {
    p: Precision,
    double: Mutex<HashMap<(Kind, u32, u32), RegularizedValue>>,
    single: Mutex<HashMap<(SingleKind, u32), RegularizedValue>>,
}

impl ZetaTable {
    pub fn new(digits: u32) -> Self {
        ZetaTable { p: Precision::new(digits), double: Mutex::default(), single: Mutex::default() }
    }

    pub fn precision(&self) -> Precision {
        self.p
    }

    pub fn bits(&self) -> u32 {
        self.p.bits
    }

    pub fn tolerance(&self) -> BigReal {
        self.p.tolerance()
    }

    /// Regularized `zeta^{kind}(r, s)`.
    pub fn dz(&self, kind: Kind, r: u32, s: u32) -> Result<RegularizedValue> {
        if let Some(v) = self.double.lock().unwrap_or_else(|e| e.into_inner()).get(&(kind, r, s)) {
            return Ok(v.clone());
        }
        let v = regularized_dzv_p(kind, r, s, &self.p)?;
        self.double.lock().unwrap_or_else(|e| e.into_inner()).insert((kind, r, s), v.clone());
        Ok(v)
    }

    /// Regularized `zeta^*(k)`.
    pub fn single(&self, kind: SingleKind, k: u32) -> Result<RegularizedValue> {
        if let Some(v) = self.single.lock().unwrap_or_else(|e| e.into_inner()).get(&(kind, k)) {
            return Ok(v.clone());
        }
        let v = zeta_single_p(kind, k, &self.p)?;
        self.single.lock().unwrap_or_else(|e| e.into_inner()).insert((kind, k), v.clone());
        Ok(v)
    }
}

/// One numeric comparison, with decimal renderings for the report.
#[derive(Clone, Debug, Serialize)]
pub struct NumericCheck {
    pub name: String,
    pub pass: bool,
    pub lhs: String,
    pub rhs: String,
    pub abs_difference: String,
}

impl NumericCheck {
    pub fn compare(name: impl Into<String>, lhs: &BigReal, rhs: &BigReal, tol: &BigReal, digits: u32) -> Self {
        let diff = (lhs - rhs).abs();
        NumericCheck {
            name: name.into(),
            pass: diff <= *tol,
            lhs: lhs.to_decimal(digits),
            rhs: rhs.to_decimal(digits),
            abs_difference: format!("{:.3e}", diff.to_f64()),
        }
    }

    /// Compares the constant and the `T` coefficient separately.
    pub fn compare_regularized(
        name: &str,
        lhs: &RegularizedValue,
        rhs: &RegularizedValue,
        tol: &BigReal,
        digits: u32,
    ) -> Vec<Self> {
        let mut out = vec![Self::compare(format!("{name} [T^0]"), &lhs.c0, &rhs.c0, tol, digits)];
        if !lhs.is_convergent() || !rhs.is_convergent() {
            out.push(Self::compare(format!("{name} [T^1]"), &lhs.c1, &rhs.c1, tol, digits));
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NumericReport {
    pub name: String,
    pub digits: u32,
    pub pass: bool,
    pub checks: Vec<NumericCheck>,
}

impl NumericReport {
    fn new(name: String, digits: u32, checks: Vec<NumericCheck>) -> Self {
        NumericReport { name, digits, pass: checks.iter().all(|c| c.pass), checks }
    }
}

fn sum_values(bits: u32, terms: impl IntoIterator<Item = (Rational, RegularizedValue)>) -> RegularizedValue {
    terms
        .into_iter()
        .fold(RegularizedValue::zero(bits), |acc, (c, v)| acc.add(&v.scale(&c)))
}

/// The three sides of both relations for `zeta^o(r) zeta^e(s)` and
/// `zeta^o(r) zeta^o(s)`, as regularized values. Order: product, stuffle, shuffle.
pub fn prop1_sides(
    table: &ZetaTable,
    r: u32,
    s: u32,
) -> Result<[[RegularizedValue; 3]; 2]> {
    if r == 0 || s == 0 || (r == 1 && s == 1) {
        return Err(Error::InvalidIndex(format!("({r},{s}) is outside the regularized range")));
    }
    let k = r + s;
    let bits = table.bits();
    let zo_r = table.single(SingleKind::O, r)?;
    let ze_s = table.single(SingleKind::E, s)?;
    let zo_s = table.single(SingleKind::O, s)?;
    let ij = |f: &dyn Fn(u32, u32) -> Result<Vec<(Rational, RegularizedValue)>>| -> Result<RegularizedValue> {
        let mut terms = Vec::new();
        for i in 1..k {
            terms.extend(f(i, k - i)?);
        }
        Ok(sum_values(bits, terms))
    };
    let b = |i: u32, r: u32| binomial_q(i as i64 - 1, r as i64 - 1);

    let prod1 = zo_r.mul(&ze_s)?;
    let stuffle1 = table.dz(Kind::OE, r, s)?.add(&table.dz(Kind::EO, s, r)?);
    let shuffle1 = ij(&|i, j| {
        let mut v = Vec::new();
        if !b(i, r).is_zero() {
            v.push((b(i, r), table.dz(Kind::OE, i, j)?));
        }
        if !b(i, s).is_zero() {
            v.push((b(i, s), table.dz(Kind::OO, i, j)?));
        }
        Ok(v)
    })?;

    let prod2 = zo_r.mul(&zo_s)?;
    let stuffle2 = table
        .dz(Kind::OO, r, s)?
        .add(&table.dz(Kind::OO, s, r)?)
        .add(&table.single(SingleKind::O, k)?);
    let shuffle2 = ij(&|i, j| {
        let c = b(i, r) + b(i, s);
        if c.is_zero() {
            return Ok(vec![]);
        }
        Ok(vec![(c, table.dz(Kind::EO, i, j)?)])
    })?;
    Ok([[prod1, stuffle1, shuffle1], [prod2, stuffle2, shuffle2]])
}

/// Both double shuffle relations for level 2 zeta values at `(r, s)`,
/// in regularized form when one index is 1.
pub fn verify_prop1(r: u32, s: u32, digits: u32) -> Result<NumericReport> {
    let table = ZetaTable::new(digits);
    verify_prop1_with(&table, r, s)
}

pub fn verify_prop1_with(table: &ZetaTable, r: u32, s: u32) -> Result<NumericReport> {
    let sides = prop1_sides(table, r, s)?;
    let tol = table.tolerance();
    let d = table.precision().digits;
    let mut checks = Vec::new();
    for (name, [p, st, sh]) in ["zo*ze", "zo*zo"].iter().zip(sides.iter()) {
        checks.extend(NumericCheck::compare_regularized(&format!("{name}: product = stuffle"), p, st, &tol, d));
        checks.extend(NumericCheck::compare_regularized(&format!("{name}: stuffle = shuffle"), st, sh, &tol, d));
    }
    Ok(NumericReport::new(format!("double shuffle ({r},{s})"), d, checks))
}

/// `sum_{r even} zeta^oo(r, k-r) = zeta^o(k)/4`.
pub fn verify_sum_formula_numeric(k: u32, digits: u32) -> Result<NumericReport> {
    if k < 4 || k % 2 != 0 {
        return Err(invalid_weight(k, "sum formula needs an even weight >= 4"));
    }
    let table = ZetaTable::new(digits);
    let bits = table.bits();
    let mut lhs = BigReal::zero(bits);
    for r in (2..=k - 2).step_by(2) {
        lhs = &lhs + &table.dz(Kind::OO, r, k - r)?.c0;
    }
    let rhs = table.single(SingleKind::O, k)?.c0.mul_rational(&Rational::new(1, 4));
    let check = NumericCheck::compare(format!("sum zeta^oo(even, even) = zeta^o({k})/4"), &lhs, &rhs, &table.tolerance(), digits);
    Ok(NumericReport::new(format!("sum formula k={k}"), digits, vec![check]))
}

/// `zeta_2(r, s) = zeta^oo(r, s) + 2^(-r-s) zeta(r, s)`.
pub fn zeta2(table: &ZetaTable, r: u32, s: u32) -> Result<BigReal> {
    let p = table.precision();
    let oo = table.dz(Kind::OO, r, s)?.c0;
    let ee = double_zeta_level1_p(r, s, &p)?.mul_rational(&Rational::from(2).pow(-((r + s) as i32)));
    Ok(&oo + &ee)
}

/// The Komori-Matsumoto-Tsumura identity for odd `k = r + s`, with `zeta(0) = -1/2`.
///
/// The identity holds with the arguments of [`zeta2`] transposed, i.e. with
/// `sum 1/(m^r (m+2n)^s)` in place of `zeta_2(r, s)`.
pub fn verify_kmt(r: u32, s: u32, digits: u32) -> Result<NumericReport> {
    let k = r + s;
    if k % 2 == 0 {
        return Err(invalid_weight(k, "the identity needs an odd weight"));
    }
    if r < 2 || s < 2 {
        return Err(Error::InvalidIndex(format!("({r},{s}) needs r, s >= 2")));
    }
    let table = ZetaTable::new(digits);
    let p = table.precision();
    let sign = |e: u32| if e % 2 == 0 { 2 } else { 0 };
    let lhs = &zeta2(&table, s, r)?.mul_int(sign(r)) + &zeta2(&table, r, s)?.mul_int(sign(s));
    let mut rhs = -zeta_full_with_zero(k, &p);
    for i in (0..=k - 3).step_by(2) {
        let c = (binomial_q((k - i - 1) as i64, r as i64 - 1) + binomial_q((k - i - 1) as i64, s as i64 - 1))
            * Rational::from(2).pow(-(k as i32) + i as i32 + 1);
        let term = &zeta_full_with_zero(i, &p) * &zeta_full_with_zero(k - i, &p);
        rhs = &rhs + &term.mul_rational(&c);
    }
    let check = NumericCheck::compare(format!("KMT ({r},{s})"), &lhs, &rhs, &table.tolerance(), digits);
    Ok(NumericReport::new(format!("KMT identity ({r},{s})"), digits, vec![check]))
}

/// `(2^(r+s) - 1) zeta^ee(r,s) = zeta^eo + zeta^oe + zeta^oo`.
pub fn verify_parity_partition(r: u32, s: u32, digits: u32) -> Result<NumericReport> {
    let table = ZetaTable::new(digits);
    let p = table.precision();
    let k = (r + s) as i32;
    let ee = double_zeta_level1_p(r, s, &p)?.mul_rational(&Rational::from(2).pow(-k));
    let lhs = ee.mul_rational(&(Rational::from(2).pow(k) - Rational::one()));
    let mut rhs = BigReal::zero(p.bits);
    for kind in Kind::ALL {
        rhs = &rhs + &table.dz(kind, r, s)?.c0;
    }
    let check = NumericCheck::compare(format!("parity partition ({r},{s})"), &lhs, &rhs, &table.tolerance(), digits);
    Ok(NumericReport::new(format!("parity partition ({r},{s})"), digits, vec![check]))
}
