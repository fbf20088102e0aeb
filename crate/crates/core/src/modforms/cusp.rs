//! Cusp forms on `Gamma_0(2)` from products of the two Eisenstein series.
//!
//! `(2 pi i)^-k G_r^(0) G_s^(i inf)` vanishes at both cusps. Since
//! `G_r^(0)(tau) = G_r(tau) - G_r(2 tau)`, its normalization is
//! `(2^r - 1) G_r^e - G_r^o`, so the product equals
//! `(2^r - 1) G_r^e G_s^o - G_r^o G_s^o`.

use serde::Serialize;

use crate::eisenstein_q::{eisenstein_series, EisensteinKind};
use crate::error::{require_even_weight, Error, Result};
use crate::exact::{QMatrix, QSeries, Rational};

#[derive(Clone, Debug, Serialize)]
pub struct CuspProduct {
    pub r: u32,
    pub s: u32,
    pub series: QSeries<Rational>,
    /// `(2^r - 1) G_r^e G_s^o - G_r^o G_s^o` reproduces the product.
    pub identity_holds: bool,
    /// The variant `(2^r - 1) G_r^o G_s^e - G_r^o G_s^o`.
    pub swapped_identity_holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CuspBasis {
    pub k: u32,
    pub order: usize,
    /// Independent products, in the order they were selected.
    pub basis: Vec<CuspProduct>,
    /// Every product that was examined, including dependent ones.
    pub examined: Vec<(u32, u32)>,
    pub expected_dim: usize,
    /// The coefficients of `q^1 .. q^dim` already have full rank.
    pub leading_block_full_rank: bool,
}

impl CuspBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn series(&self) -> Vec<&QSeries<Rational>> {
        self.basis.iter().map(|b| &b.series).collect()
    }
}

fn full(kind: EisensteinKind, k: u32, order: usize) -> Result<QSeries<Rational>> {
    eisenstein_series(kind, k, order)?.to_rational()
}

pub fn cusp_product(r: u32, s: u32, order: usize) -> Result<CuspProduct> {
    require_even_weight(r, 4)?;
    require_even_weight(s, 4)?;
    let series = full(EisensteinKind::Cusp0, r, order)?.mul_series(&full(EisensteinKind::CuspInf, s, order)?);
    let (ge_r, go_r) = (full(EisensteinKind::GE, r, order)?, full(EisensteinKind::GO, r, order)?);
    let (ge_s, go_s) = (full(EisensteinKind::GE, s, order)?, full(EisensteinKind::GO, s, order)?);
    let c = Rational::from(2).pow(r as i32) - Rational::one();
    let oo = go_r.mul_series(&go_s);
    let identity = ge_r.mul_series(&go_s).scale(&c).sub_series(&oo);
    let swapped = go_r.mul_series(&ge_s).scale(&c).sub_series(&oo);
    Ok(CuspProduct {
        r,
        s,
        identity_holds: identity == series,
        swapped_identity_holds: swapped == series,
        series,
    })
}

/// `[k/4] - 1`.
pub fn cusp_dim_level2(k: u32) -> usize {
    (k / 4).saturating_sub(1) as usize
}

fn coeff_rows(series: &[&QSeries<Rational>], upto: usize) -> Vec<Vec<Rational>> {
    series.iter().map(|s| (1..=upto).map(|n| s.coeff(n).clone()).collect()).collect()
}

/// Products with even `r, s >= 4`, `r + s = k`: first `r <= s`, then `r > s`,
/// keeping each one that raises the rank of `q^1 .. q^order`.
pub fn cusp_basis(k: u32, order: usize) -> Result<CuspBasis> {
    require_even_weight(k, 8)?;
    let expected_dim = cusp_dim_level2(k);
    let mut pairs: Vec<(u32, u32)> = (4..=k / 2).step_by(2).map(|r| (r, k - r)).collect();
    pairs.extend((k / 2 + 1..=k - 4).filter(|r| r % 2 == 0).map(|r| (r, k - r)));
    let mut basis: Vec<CuspProduct> = Vec::new();
    let mut examined = Vec::new();
    for (r, s) in pairs {
        if basis.len() == expected_dim {
            break;
        }
        examined.push((r, s));
        let p = cusp_product(r, s, order)?;
        let mut all: Vec<&QSeries<Rational>> = basis.iter().map(|b| &b.series).collect();
        all.push(&p.series);
        if QMatrix::from_rows(order, coeff_rows(&all, order))?.rank() == all.len() {
            basis.push(p);
        }
    }
    if basis.len() < expected_dim {
        return Err(Error::InsufficientOrder(format!(
            "products reach rank {} of {expected_dim} on q^1..q^{order} in weight {k}",
            basis.len()
        )));
    }
    let lead = QMatrix::from_rows(expected_dim, coeff_rows(&basis.iter().map(|b| &b.series).collect::<Vec<_>>(), expected_dim))?;
    Ok(CuspBasis {
        k,
        order,
        leading_block_full_rank: lead.rank() == expected_dim,
        basis,
        examined,
        expected_dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_12_has_dimension_2() {
        let b = cusp_basis(12, 20).unwrap();
        assert_eq!(b.dim(), 2);
        for p in &b.basis {
            assert!(p.series.coeff(0).is_zero());
        }
    }

    #[test]
    fn product_identity_4_8() {
        let p = cusp_product(4, 8, 60).unwrap();
        assert!(p.identity_holds);
    }

    #[test]
    fn small_order_is_an_error() {
        assert!(matches!(cusp_basis(24, 2), Err(Error::InsufficientOrder(_))));
        assert!(cusp_basis(6, 20).is_err());
    }
}
