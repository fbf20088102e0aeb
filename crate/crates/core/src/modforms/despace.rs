//! Lower bound for the span of `G^oo_{2i,k-2i}`, `1 <= i <= k/2-1`.
//!
//! The projection to the imaginary stratum has rank `rank Q_k` once the
//! `g^o_3, .., g^o_{k-3}` are independent, and its kernel contains `G^o_k` and
//! the cusp forms on `Gamma_0(2)`. Together: `rank Q_k + [k/4] = k/2 - 1`.

use std::collections::BTreeSet;

use serde::Serialize;

use super::cusp::{cusp_basis, cusp_dim_level2};
use crate::double_eisenstein::{g_series_double_with, SeriesBlocks, TriPartSeries};
use crate::eisenstein_q::{eisenstein_series, EisensteinKind};
use crate::error::{require_even_weight, Error, Result};
use crate::exact::{QMatrix, QSeries, Rational, Symbol};
use crate::numeric::{bits_for_digits, double_zeta_level2, pi, BigReal};
use crate::parity::{Kind, Parity};
use crate::period_poly::{qk_matrix, Level};

const DIGITS: u32 = 30;
const TOLERANCE_DIGITS: u32 = 20;

/// Independence of `g^o_3, .., g^o_{k-3}` read off at `q^p` for odd primes `p`.
#[derive(Clone, Debug, Serialize)]
pub struct PrimeCertificate {
    pub primes: Vec<u64>,
    /// `det (coefficient of q^p in g^o_r)`, rows `r = 3, 5, ..`, columns `p`.
    pub determinant: Rational,
}

/// A target series written as a combination of the `G^oo_{2i,k-2i}`.
#[derive(Clone, Debug, Serialize)]
pub struct KernelMember {
    pub name: String,
    /// Coefficient of `G^oo_{2i,k-2i}` at index `i-1`; `None` if no
    /// combination matches on `q^1 .. q^N`. The match includes every
    /// imaginary coordinate, which must cancel since the target is rational.
    pub coefficients: Option<Vec<Rational>>,
    /// `sum x_i (constant of G^oo_{2i,k-2i})` against the target's constant.
    pub constant_lhs: Option<String>,
    pub constant_rhs: String,
    pub constant_matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DeSpaceEvidence {
    pub k: u32,
    pub order: usize,
    /// Each symbol part of each imaginary stratum is a rational multiple of
    /// the expected `g^o_h`.
    pub strata_are_multiples: bool,
    /// Stacked imaginary strata equal `Q_k`.
    pub imag_matrix_is_qk: bool,
    pub primes: PrimeCertificate,
    pub rank_qk: usize,
    pub kernel_lower_bound: usize,
    pub lower_bound: usize,
    pub expected_dim: usize,
    /// Rank of the `q`-parts themselves, all strata together.
    pub direct_rank: usize,
    pub kernel_members: Vec<KernelMember>,
    pub pass: bool,
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Sliding windows of consecutive odd primes `<= order` until the determinant
/// is nonzero.
fn prime_certificate(b: &SeriesBlocks, k: u32) -> Result<PrimeCertificate> {
    let rs: Vec<u32> = (3..=k - 3).step_by(2).collect();
    let all: Vec<u64> = (3..=b.order() as u64).filter(|&p| is_prime(p)).collect();
    if rs.is_empty() {
        return Ok(PrimeCertificate { primes: vec![], determinant: Rational::one() });
    }
    for window in all.windows(rs.len()) {
        let rows: Vec<Vec<Rational>> =
            rs.iter().map(|&r| window.iter().map(|&p| b.g(Parity::O, r).coeff(p as usize).clone()).collect()).collect();
        let det = QMatrix::from_rows(rs.len(), rows)?.determinant()?;
        if !det.is_zero() {
            return Ok(PrimeCertificate { primes: window.to_vec(), determinant: det });
        }
    }
    Err(Error::SearchExhausted(format!(
        "no window of {} odd primes <= {} gives a nonsingular matrix in weight {k}",
        rs.len(),
        b.order()
    )))
}

/// Row `i` holds the multiple of `zeta~^e(2j+1) g^o_{k-2j-1}` in the
/// imaginary stratum of `G^oo_{2i,k-2i}`.
fn imag_matrix(b: &SeriesBlocks, k: u32, series: &[TriPartSeries]) -> Result<(QMatrix, bool)> {
    let cols = (k / 2 - 2) as usize;
    let mut multiples = true;
    let mut rows = Vec::new();
    for t in series {
        let mut row = vec![Rational::zero(); cols];
        for (sym, part) in t.imag_by_symbol() {
            let p = match sym {
                Symbol::Ze(p) if p % 2 == 1 && (3..=k - 3).contains(&p) => p,
                _ => {
                    multiples = false;
                    continue;
                }
            };
            let g = b.g(Parity::O, k - p);
            let c = part.coeff(1) / g.coeff(1);
            multiples &= g.scale(&c) == part;
            row[((p - 3) / 2) as usize] = c;
        }
        rows.push(row);
    }
    Ok((QMatrix::from_rows(cols, rows)?, multiples))
}

/// Comb coefficients `q^1..q^N`, then each symbol's coefficients.
fn coordinates(comb: &QSeries<Rational>, imag: &[(Symbol, QSeries<Rational>)], symbols: &[Symbol], order: usize) -> Vec<Rational> {
    let mut v: Vec<Rational> = (1..=order).map(|n| comb.coeff(n).clone()).collect();
    for s in symbols {
        match imag.iter().find(|(t, _)| t == s) {
            Some((_, q)) => v.extend((1..=order).map(|n| q.coeff(n).clone())),
            None => v.extend(std::iter::repeat_n(Rational::zero(), order)),
        }
    }
    v
}

/// `zeta~^oo(r,s) = (2 pi i)^-k zeta^oo(r,s)`, plus any rational `q^0` part of the comb stratum.
fn numeric_constant(t: &TriPartSeries, bits: u32, two_pi_inv: &BigReal) -> Result<BigReal> {
    let k = t.r + t.s;
    let z = double_zeta_level2(Kind::OO, t.r, t.s, DIGITS)?;
    let sign = if (k / 2) % 2 == 0 { 1 } else { -1 };
    let v = (&z * &two_pi_inv.powi(k as i32)).mul_int(sign);
    Ok(&v + &BigReal::from_rational(t.comb.coeff(0), bits))
}

pub fn de_space_evidence(k: u32, order: usize) -> Result<DeSpaceEvidence> {
    require_even_weight(k, 6)?;
    let b = SeriesBlocks::new(order);
    let series: Vec<TriPartSeries> =
        (1..k / 2).map(|i| g_series_double_with(&b, Kind::OO, 2 * i, k - 2 * i, None)).collect::<Result<_>>()?;

    let (imag, strata_are_multiples) = imag_matrix(&b, k, &series)?;
    let qk = qk_matrix(k, Level::Two)?;
    let imag_matrix_is_qk = imag == qk.matrix;
    let primes = prime_certificate(&b, k)?;
    let rank_qk = qk.rank();
    let kernel_lower_bound = 1 + cusp_dim_level2(k);
    let expected_dim = (k / 2 - 1) as usize;

    let symbols: Vec<Symbol> = series
        .iter()
        .flat_map(|t| t.imag_by_symbol().into_iter().map(|(s, _)| s))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let coords: Vec<Vec<Rational>> =
        series.iter().map(|t| coordinates(&t.comb, &t.imag_by_symbol(), &symbols, order)).collect();
    let width = order * (1 + symbols.len());
    let span = QMatrix::from_rows(width, coords)?;
    let direct_rank = span.rank();

    let bits = bits_for_digits(DIGITS);
    let two_pi_inv = pi(bits).mul_int(2).recip();
    let tol = BigReal::ten_pow_neg(TOLERANCE_DIGITS, bits);
    let constants: Vec<BigReal> =
        series.iter().map(|t| numeric_constant(t, bits, &two_pi_inv)).collect::<Result<_>>()?;

    let go = eisenstein_series(EisensteinKind::GO, k, order)?.to_rational()?;
    let mut targets = vec![(format!("G^o_{k}"), go)];
    if cusp_dim_level2(k) > 0 {
        for c in cusp_basis(k, order)?.basis {
            targets.push((format!("(2 pi i)^-{k} G^(0)_{} G^(i inf)_{}", c.r, c.s), c.series));
        }
    }
    let mut kernel_members = Vec::new();
    for (name, target) in targets {
        let coefficients = span.row_space_certificate(&coordinates(&target, &[], &symbols, order))?;
        let rhs = BigReal::from_rational(target.coeff(0), bits);
        let lhs = coefficients.as_ref().map(|x| {
            x.iter().zip(&constants).fold(BigReal::zero(bits), |acc, (c, v)| &acc + &v.mul_rational(c))
        });
        kernel_members.push(KernelMember {
            name,
            constant_matches: lhs.as_ref().is_some_and(|l| l.close_to(&rhs, &tol)),
            constant_lhs: lhs.map(|l| l.to_decimal(DIGITS)),
            constant_rhs: rhs.to_decimal(DIGITS),
            coefficients,
        });
    }

    let lower_bound = rank_qk + kernel_lower_bound;
    let pass = strata_are_multiples
        && imag_matrix_is_qk
        && lower_bound == expected_dim
        && direct_rank == expected_dim
        && kernel_members.len() == kernel_lower_bound
        && kernel_members.iter().all(|m| m.coefficients.is_some() && m.constant_matches);
    Ok(DeSpaceEvidence {
        k,
        order,
        strata_are_multiples,
        imag_matrix_is_qk,
        primes,
        rank_qk,
        kernel_lower_bound,
        lower_bound,
        expected_dim,
        direct_rank,
        kernel_members,
        pass,
    })
}
