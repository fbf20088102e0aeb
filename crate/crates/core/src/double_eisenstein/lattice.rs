//! Direct lattice sums, and the q-expansion evaluated at the same point.
//!
//! For `lambda = m tau + n`, `mu = m' tau + n'` with `m, m'` even the sum
//! `sum_{lambda > mu > 0} lambda^-r mu^-s` splits by rows: rows with
//! `m > m'` factor into a product of row sums, and the diagonal `m = m'`
//! is a running (suffix) sum along the row.

use num_complex::Complex64;
use serde::Serialize;

use super::g_series_double;
use crate::error::{Error, Result};
use crate::exact::Symbol;
use crate::numeric::{zeta_single, SingleKind};
use crate::parity::{Kind, Parity};

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeValue {
    pub kind: Kind,
    pub r: u32,
    pub s: u32,
    #[serde(serialize_with = "ser_complex")]
    pub tau: Complex64,
    pub cutoff: u32,
    #[serde(serialize_with = "ser_complex")]
    pub value: Complex64,
    /// `|S(M) - S(M/2)|`.
    pub error_estimate: f64,
    /// `2 S(M) - S(M/2)`: the truncation error is dominated by a `1/M` term.
    #[serde(serialize_with = "ser_complex")]
    pub extrapolated: Complex64,
}

#[derive(Clone, Debug, Serialize)]
pub struct QexpValue {
    pub kind: Kind,
    pub r: u32,
    pub s: u32,
    #[serde(serialize_with = "ser_complex")]
    pub tau: Complex64,
    pub order: usize,
    pub digits: u32,
    #[serde(serialize_with = "ser_complex")]
    pub value: Complex64,
}

fn ser_complex<S: serde::Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    pair(*z).serialize(s)
}

fn residue(p: Parity) -> i64 {
    match p {
        Parity::E => 0,
        Parity::O => 1,
    }
}

fn check_convergent(r: u32, s: u32, tau: Complex64) -> Result<()> {
    if r < 3 || s < 2 {
        return Err(Error::Divergent(format!("the lattice sum needs r >= 3 and s >= 2, got ({r},{s})")));
    }
    if tau.im <= 0.0 || !tau.im.is_finite() || !tau.re.is_finite() {
        return Err(Error::InvalidArgument(format!("tau must lie in the upper half plane, got {tau}")));
    }
    Ok(())
}

fn partial_sum(kind: Kind, r: u32, s: u32, tau: Complex64, cutoff: i64) -> Complex64 {
    let (a, b) = kind.parities();
    let (ra, rb) = (residue(a), residue(b));
    let cols = |res: i64| (-cutoff..=cutoff).filter(move |n| n.rem_euclid(2) == res);
    let rows: Vec<i64> = (0..=cutoff).filter(|m| m % 2 == 0).collect();
    let pw = |z: Complex64, e: u32| z.powi(-(e as i32));

    // lambda row sums over all n, and mu row sums over n' with mu > 0
    let lam: Vec<Complex64> = rows
        .iter()
        .map(|&m| cols(ra).map(|n| pw(tau * m as f64 + n as f64, r)).sum())
        .collect();
    let mu: Vec<Complex64> = rows
        .iter()
        .map(|&m| cols(rb).filter(|&n| m > 0 || n > 0).map(|n| pw(tau * m as f64 + n as f64, s)).sum())
        .collect();

    let mut total = Complex64::new(0.0, 0.0);
    // m > m'
    let mut above = Complex64::new(0.0, 0.0);
    for i in (0..rows.len()).rev() {
        total += mu[i] * above;
        above += lam[i];
    }
    // m = m', n > n'
    for &m in &rows {
        let z = tau * m as f64;
        let mut suffix = Complex64::new(0.0, 0.0);
        for n in (-cutoff..=cutoff).rev() {
            if n.rem_euclid(2) == rb && (m > 0 || n > 0) {
                total += pw(z + n as f64, s) * suffix;
            }
            if n.rem_euclid(2) == ra {
                suffix += pw(z + n as f64, r);
            }
        }
    }
    let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
    total * two_pi_i.powi(-((r + s) as i32))
}

/// `(2 pi i)^(-r-s) sum_{lambda > mu > 0} lambda^-r mu^-s` over `|m|, |n| <= cutoff`.
pub fn lattice_eval(kind: Kind, r: u32, s: u32, tau: Complex64, cutoff: u32) -> Result<LatticeValue> {
    check_convergent(r, s, tau)?;
    let value = partial_sum(kind, r, s, tau, cutoff as i64);
    let coarse = partial_sum(kind, r, s, tau, (cutoff / 2) as i64);
    Ok(LatticeValue {
        kind,
        r,
        s,
        tau,
        cutoff,
        value,
        error_estimate: (value - coarse).norm(),
        extrapolated: value * 2.0 - coarse,
    })
}

/// The assembled q-expansion at `tau`, with the constants evaluated at `digits`.
pub fn qexp_eval(kind: Kind, r: u32, s: u32, tau: Complex64, order: usize, digits: u32) -> Result<QexpValue> {
    check_convergent(r, s, tau)?;
    let series = g_series_double(kind, r, s, order, Some(digits))?;
    let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
    let norm = |w: u32| two_pi_i.powi(-(w as i32));
    let constant = series.constant.value.as_ref().map(|v| v.value.at(0).to_f64()).unwrap_or(0.0);
    let mut symbols = Vec::new();
    for (sym, coeffs) in series.imag_by_symbol() {
        let (kind, p) = match sym {
            Symbol::Zo(p) => (SingleKind::O, p),
            Symbol::Ze(p) => (SingleKind::E, p),
            Symbol::Z(p) => (SingleKind::Full, p),
        };
        let z = zeta_single(kind, p, digits)?.at(0).to_f64();
        symbols.push((norm(p) * z, coeffs));
    }
    let q = (two_pi_i * tau).exp();
    let mut value = norm(r + s) * constant;
    let mut qn = Complex64::new(1.0, 0.0);
    for n in 0..=order {
        value += qn * series.comb.coeff(n).to_f64();
        for (z, coeffs) in &symbols {
            value += qn * z * coeffs.coeff(n).to_f64();
        }
        qn *= q;
    }
    Ok(QexpValue { kind, r, s, tau, order, digits, value })
}
