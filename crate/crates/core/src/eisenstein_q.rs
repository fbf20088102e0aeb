//! Single Eisenstein-type q-series: Bernoulli constants, the building blocks
//! `g_r`, `gbar_r`, the level 1 and level 2 Eisenstein series, and `Delta`.
//!
//! Nothing here is normalized by powers of `2 pi i`; constants that are not
//! rational are carried as [`Symbol`]s.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, QSeries, Rational, Symbol, SymbolicScalar};
pub use crate::parity::Parity;

static BERNOULLI: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// `B_n` from `X/(e^X - 1)`, so `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> Rational {
    let mut cache = BERNOULLI.lock().unwrap_or_else(|e| e.into_inner());
    while cache.len() <= n {
        let m = cache.len();
        if m == 0 {
            cache.push(Rational::one());
            continue;
        }
        if m > 1 && m % 2 == 1 {
            cache.push(Rational::zero());
            continue;
        }
        // sum_{j<=m} C(m+1, j) B_j = 0
        let s: Rational = (0..m)
            .map(|j| &cache[j] * &Rational::from(binomial(m as i64 + 1, j as i64)))
            .sum();
        cache.push(-s / Rational::from(m as i64 + 1));
    }
    cache[n].clone()
}

pub fn factorial_q(n: u32) -> Rational {
    Rational::from(factorial(n))
}

pub fn pow2(e: i32) -> Rational {
    Rational::from(2).pow(e)
}

/// `zeta~(k) = -B_k / (2 k!)`, the rational part of `(2 pi i)^(-k) zeta(k)` for even `k`.
pub fn zeta_tilde_even(k: u32) -> Rational {
    -bernoulli(k as usize) / (Rational::from(2) * factorial_q(k))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BetaConstants {
    pub r: u32,
    pub beta_e: Rational,
    pub beta_o: Rational,
    pub beta: Rational,
}

/// `beta_r = -B_r/(2 r!)`, `beta^e_r = 2^(-r) beta_r`, `beta^o_r = (1 - 2^(-r)) beta_r`.
pub fn beta_constants(r: u32) -> Result<BetaConstants> {
    if r == 0 {
        return Err(Error::InvalidIndex("beta constants need r >= 1".into()));
    }
    let b = bernoulli(r as usize);
    let fact = factorial_q(r);
    let two_r = pow2(r as i32);
    let beta = -&b / (Rational::from(2) * &fact);
    let beta_e = -&b / (&two_r * Rational::from(2) * &fact);
    let beta_o = -(Rational::one() - two_r.recip()?) * &b / (Rational::from(2) * &fact);
    Ok(BetaConstants { r, beta_e, beta_o, beta })
}

pub fn beta(parity: Parity, r: u32) -> Rational {
    let b = beta_constants(r).expect("r >= 1");
    match parity {
        Parity::E => b.beta_e,
        Parity::O => b.beta_o,
    }
}

/// `c_r = (-1)^r / (2^r (r-1)!)`, the prefactor of `phi_r`.
pub fn phi_prefactor(r: u32) -> Rational {
    assert!(r >= 1);
    let sign = if r % 2 == 0 { 1 } else { -1 };
    Rational::from(sign) / (pow2(r as i32) * factorial_q(r - 1))
}

/// Divisor lists for `1..=max`, built once and read-only afterwards.
#[derive(Clone, Debug)]
pub struct DivisorTable {
    divisors: Vec<Vec<u64>>,
}

impl DivisorTable {
    pub fn new(max: usize) -> Self {
        let mut divisors = vec![Vec::new(); max + 1];
        for d in 1..=max {
            for m in (d..=max).step_by(d) {
                divisors[m].push(d as u64);
            }
        }
        DivisorTable { divisors }
    }

    pub fn max(&self) -> usize {
        self.divisors.len() - 1
    }

    pub fn divisors(&self, n: usize) -> &[u64] {
        &self.divisors[n]
    }

    /// `sigma_j(n)`.
    pub fn sigma(&self, j: u32, n: usize) -> BigInt {
        self.divisors[n].iter().map(|&d| BigInt::from(d).pow(j)).sum()
    }

    /// `sum_{d|n} (-1)^d d^j`.
    pub fn signed_sum(&self, j: u32, n: usize) -> BigInt {
        self.divisors[n]
            .iter()
            .map(|&d| BigInt::from(Parity::O.sign(d)) * BigInt::from(d).pow(j))
            .sum()
    }

    /// `sum_{d|n, n/d odd} d^j`.
    pub fn odd_cofactor_sum(&self, j: u32, n: usize) -> BigInt {
        self.divisors[n]
            .iter()
            .filter(|&&d| (n as u64 / d) % 2 == 1)
            .map(|&d| BigInt::from(d).pow(j))
            .sum()
    }

    /// `sum_{d|n} (+-1)^d d^j` for the given parity.
    pub fn parity_sum(&self, parity: Parity, j: u32, n: usize) -> BigInt {
        match parity {
            Parity::E => self.sigma(j, n),
            Parity::O => self.signed_sum(j, n),
        }
    }
}

/// `g_r^{e|o} = c_r sum_{u,m>0} (+-1)^u u^(r-1) q^(um)`.
pub fn g_series(parity: Parity, r: u32, order: usize) -> Result<QSeries<Rational>> {
    if r == 0 {
        return Err(Error::InvalidIndex("g_r needs r >= 1".into()));
    }
    let table = DivisorTable::new(order);
    Ok(g_series_with(&table, parity, r, order))
}

pub(crate) fn g_series_with(table: &DivisorTable, parity: Parity, r: u32, order: usize) -> QSeries<Rational> {
    let c = phi_prefactor(r);
    let mut s = QSeries::zero(order);
    for n in 1..=order {
        s.set(n, &c * &Rational::from(table.parity_sum(parity, r - 1, n)));
    }
    s
}

/// `gbar_r^{e|o} = -c_(r+1) sum_{u,m>0} (+-1)^u u^r m q^(um)`.
pub fn gbar_series(parity: Parity, r: u32, order: usize) -> QSeries<Rational> {
    let table = DivisorTable::new(order);
    gbar_series_with(&table, parity, r, order)
}

pub(crate) fn gbar_series_with(table: &DivisorTable, parity: Parity, r: u32, order: usize) -> QSeries<Rational> {
    let c = -phi_prefactor(r + 1);
    let mut s = QSeries::zero(order);
    for n in 1..=order {
        let sum: BigInt = table
            .divisors(n)
            .iter()
            .map(|&u| BigInt::from(parity.sign(u)) * BigInt::from(u).pow(r) * BigInt::from(n as u64 / u))
            .sum();
        s.set(n, &c * &Rational::from(sum));
    }
    s
}

/// `phi_r^{e|o}(q^(2m)) = c_r sum_u (+-1)^u u^(r-1) q^(um)`.
pub fn phi_at(parity: Parity, r: u32, m: usize, order: usize) -> QSeries<Rational> {
    let c = phi_prefactor(r);
    let mut s = QSeries::zero(order);
    let mut u = 1;
    while u * m <= order {
        let v = Rational::from(parity.sign(u as u64)) * Rational::from(BigInt::from(u).pow(r - 1));
        s.set(u * m, &c * &v);
        u += 1;
    }
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EisensteinKind {
    /// Level 1 series `zeta~(k) + (-1)^k/(k-1)! sum sigma_(k-1)(n) q^n`.
    Full,
    /// Expansion at the cusp `i infinity`, which coincides with `G^o_k`.
    CuspInf,
    /// Expansion at the cusp `0`, normalized, without constant term.
    Cusp0,
    #[serde(rename = "G_o")]
    GO,
    #[serde(rename = "G_e")]
    GE,
}

impl std::str::FromStr for EisensteinKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "full" => EisensteinKind::Full,
            "cusp_inf" | "cusp-inf" => EisensteinKind::CuspInf,
            "cusp_0" | "cusp-0" | "cusp0" => EisensteinKind::Cusp0,
            "G_o" | "Go" | "go" => EisensteinKind::GO,
            "G_e" | "Ge" | "ge" => EisensteinKind::GE,
            _ => return Err(Error::Parse { what: "Eisenstein series kind", input: s.to_string() }),
        })
    }
}

/// A single Eisenstein series: constant term and exact q-part.
#[derive(Clone, Debug, PartialEq)]
pub struct EisensteinSeries {
    pub kind: EisensteinKind,
    pub k: u32,
    pub constant: SymbolicScalar,
    pub q_part: QSeries<Rational>,
}

impl EisensteinSeries {
    /// Full series with the constant as coefficient of `q^0`.
    pub fn to_symbolic(&self) -> QSeries<SymbolicScalar> {
        let mut s = self.q_part.map(|c| SymbolicScalar::from_rational(c.clone()));
        s.set(0, self.constant.clone());
        s
    }

    /// Full series over Q; errors when the constant is not rational.
    pub fn to_rational(&self) -> Result<QSeries<Rational>> {
        if self.constant.symbols().next().is_some() {
            return Err(Error::RingMismatch(format!("constant {} is symbolic", self.constant)));
        }
        let mut s = self.q_part.clone();
        s.set(0, self.constant.rational_part().clone());
        Ok(s)
    }
}

impl Serialize for EisensteinSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = serializer.serialize_map(Some(5))?;
        m.serialize_entry("series", &self.kind)?;
        m.serialize_entry("k", &self.k)?;
        m.serialize_entry("order", &self.q_part.order())?;
        match self.constant.symbols().next() {
            Some(sym) if self.constant.is_purely_symbolic() && self.constant.coefficient(sym).is_one() => {
                m.serialize_entry("constant", &sym)?
            }
            Some(_) => m.serialize_entry("constant", &self.constant)?,
            None => m.serialize_entry("constant", self.constant.rational_part())?,
        }
        let coeffs: Vec<Rational> = self.q_part.coeffs()[1..].to_vec();
        m.serialize_entry("coeffs", &coeffs)?;
        m.end()
    }
}

fn level2_constant(parity: Parity, k: u32) -> SymbolicScalar {
    if k % 2 == 0 {
        SymbolicScalar::from_rational(beta(parity, k))
    } else {
        SymbolicScalar::symbol(parity.symbol(k))
    }
}

pub fn eisenstein_series(kind: EisensteinKind, k: u32, order: usize) -> Result<EisensteinSeries> {
    if k == 0 {
        return Err(crate::error::invalid_weight(0, "weight must be at least 1"));
    }
    let table = DivisorTable::new(order);
    let sign = Rational::from(if k % 2 == 0 { 1 } else { -1 });
    let norm = &sign / &factorial_q(k - 1);
    let (constant, q_part) = match kind {
        EisensteinKind::Full => {
            let constant = if k % 2 == 0 {
                SymbolicScalar::from_rational(zeta_tilde_even(k))
            } else {
                SymbolicScalar::symbol(Symbol::Z(k))
            };
            let mut s = QSeries::zero(order);
            for n in 1..=order {
                s.set(n, &norm * &Rational::from(table.sigma(k - 1, n)));
            }
            (constant, s)
        }
        EisensteinKind::CuspInf | EisensteinKind::GO => {
            (level2_constant(Parity::O, k), g_series_with(&table, Parity::O, k, order))
        }
        EisensteinKind::GE => (level2_constant(Parity::E, k), g_series_with(&table, Parity::E, k, order)),
        EisensteinKind::Cusp0 => {
            let mut s = QSeries::zero(order);
            for n in 1..=order {
                s.set(n, &norm * &Rational::from(table.odd_cofactor_sum(k - 1, n)));
            }
            (SymbolicScalar::zero(), s)
        }
    };
    Ok(EisensteinSeries { kind, k, constant, q_part })
}

/// Ramanujan's `tau(n)`, `n = 0..=order` (with `tau(0) = 0`), from
/// `Delta = q prod (1-q^n)^24`.
///
/// The product `prod (1-q^n)^24 = sum f_n q^n` satisfies
/// `n f_n = -24 sum_{m=1}^n sigma_1(m) f_(n-m)` (logarithmic derivative).
pub fn tau_values(order: usize) -> Vec<BigInt> {
    let table = DivisorTable::new(order.max(1));
    let sigma1: Vec<BigInt> = (0..=order).map(|m| if m == 0 { BigInt::zero() } else { table.sigma(1, m) }).collect();
    let mut f = vec![BigInt::zero(); order.max(1)];
    f[0] = BigInt::one();
    for n in 1..f.len() {
        let s: BigInt = (1..=n).map(|m| &sigma1[m] * &f[n - m]).sum();
        let v = -BigInt::from(24) * s;
        debug_assert!((&v % BigInt::from(n)).is_zero());
        f[n] = v / BigInt::from(n);
    }
    let mut tau = vec![BigInt::zero(); order + 1];
    for n in 1..=order {
        tau[n] = f[n - 1].clone();
    }
    tau
}

pub fn delta_series(order: usize) -> Result<QSeries<Rational>> {
    if order == 0 {
        return Err(Error::InvalidArgument("Delta needs order >= 1".into()));
    }
    Ok(QSeries::from_coeffs(order, tau_values(order).into_iter().map(Rational::from).collect()))
}

/// `rho_{k,l}(n) = sum_{a+b=n} sum_{u|a, v|b, a/u > b/v} u^k v^l`.
pub fn rho(k: u32, l: u32, n: usize) -> BigInt {
    let table = DivisorTable::new(n.max(1));
    rho_with(&table, k, l, n)
}

pub(crate) fn rho_with(table: &DivisorTable, k: u32, l: u32, n: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for a in 1..n {
        let b = n - a;
        for &u in table.divisors(a) {
            let m = a as u64 / u;
            for &v in table.divisors(b) {
                if m > b as u64 / v {
                    acc += BigInt::from(u).pow(k) * BigInt::from(v).pow(l);
                }
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Scalar;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), Rational::one());
        assert_eq!(bernoulli(1), q(-1, 2));
        assert_eq!(bernoulli(2), q(1, 6));
        assert_eq!(bernoulli(3), Rational::zero());
        assert_eq!(bernoulli(12), q(-691, 2730));
    }

    #[test]
    fn beta_values() {
        let b2 = beta_constants(2).unwrap();
        assert_eq!((b2.beta_e, b2.beta_o), (q(-1, 96), q(-1, 32)));
        let b1 = beta_constants(1).unwrap();
        assert_eq!((b1.beta_e, b1.beta_o, b1.beta), (q(1, 8), q(1, 8), q(1, 4)));
        assert_eq!(beta_constants(4).unwrap().beta_o, q(1, 1536));
        assert!(beta_constants(0).is_err());
    }

    #[test]
    fn small_coefficients() {
        assert_eq!(g_series(Parity::E, 2, 5).unwrap().coeff(1), &q(1, 4));
        assert_eq!(g_series(Parity::O, 2, 5).unwrap().coeff(2), &q(1, 4));
        assert!(g_series(Parity::O, 3, 5).unwrap().coeff(0).is_zero());
        assert_eq!(gbar_series(Parity::E, 0, 5).coeff(1), &q(1, 2));
        assert_eq!(gbar_series(Parity::O, 0, 5).coeff(2), &q(-1, 2));
        assert_eq!(gbar_series(Parity::O, 2, 5).coeff(1), &q(-1, 16));
        assert_eq!(g_series(Parity::E, 4, 5).unwrap().coeff(2), &q(3, 32));
    }

    #[test]
    fn phi_sums_reproduce_g() {
        // g_r = sum_m phi_r(q^(2m))
        let n = 20;
        for parity in [Parity::E, Parity::O] {
            let mut acc = QSeries::zero(n);
            for m in 1..=n {
                acc = &acc + &phi_at(parity, 3, m, n);
            }
            assert_eq!(acc, g_series(parity, 3, n).unwrap());
        }
    }

    #[test]
    fn eisenstein_constants() {
        let s = eisenstein_series(EisensteinKind::Cusp0, 6, 10).unwrap();
        assert!(s.constant.is_zero());
        let s = eisenstein_series(EisensteinKind::GO, 8, 10).unwrap();
        assert_eq!(s.constant.rational_part(), &beta(Parity::O, 8));
        let s = eisenstein_series(EisensteinKind::GE, 5, 10).unwrap();
        assert_eq!(s.constant, SymbolicScalar::symbol(Symbol::Ze(5)));
        let j = serde_json::to_value(eisenstein_series(EisensteinKind::GO, 3, 2).unwrap()).unwrap();
        assert_eq!(j["constant"], serde_json::json!({"symbol": "Zo", "p": 3}));
    }

    #[test]
    fn tau_small_values() {
        let t = tau_values(6);
        assert_eq!(t[1], BigInt::from(1));
        assert_eq!(t[2], BigInt::from(-24));
        assert_eq!(t[6], BigInt::from(-6048));
    }

    #[test]
    fn tau_matches_direct_product() {
        let n = 40;
        let mut p = QSeries::constant(n, Rational::one());
        for m in 1..=n {
            let mut f = QSeries::constant(n, Rational::one());
            f.set(m, Rational::from(-1));
            for _ in 0..24 {
                p = &p * &f;
            }
        }
        let d = delta_series(n).unwrap();
        assert_eq!(p.shift_up(1), d);
    }

    #[test]
    fn rho_small_values() {
        assert_eq!(rho(5, 5, 1), BigInt::zero());
        assert_eq!(rho(5, 5, 2), BigInt::zero());
        assert_eq!(rho(5, 5, 3), BigInt::one());
    }
}
