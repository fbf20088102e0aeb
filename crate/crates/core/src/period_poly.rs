//! Period polynomial spaces for `Gamma_0(2)` and the matrices `Q_k`, `Q_k^(1)`.
//!
//! `W_k = { P : P | (1-T)(1+M) = 0 }` with `M = [[-1,-1],[2,1]]`, split into
//! even and odd parts by `eps = [[-1,0],[0,1]]`. `W_k^{+,0}` is the part
//! spanned by `x^2, x^4, ..., x^(k-4)`.
//!
//! Kernel vectors of `Q_k` (and of the linear system) are read as
//! polynomials by sending column `j` to `x^(k-2-2j)`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{invalid_weight, require_even_weight, Error, Result};
use crate::exact::{binomial_q, canonical_basis, QMatrix, Rational};
use crate::poly_action::{slash_ring, GroupRingElement, Poly, ProjMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    PlusZero,
    Minus,
    Plus,
}

impl std::str::FromStr for Flavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus_zero" | "plus0" => Ok(Flavor::PlusZero),
            "minus" => Ok(Flavor::Minus),
            "plus" => Ok(Flavor::Plus),
            _ => Err(Error::Parse { what: "flavor", input: s.into() }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Level {
    One,
    Two,
}

impl Level {
    pub fn from_u32(n: u32) -> Result<Self> {
        match n {
            1 => Ok(Level::One),
            2 => Ok(Level::Two),
            _ => Err(Error::InvalidArgument(format!("level must be 1 or 2, got {n}"))),
        }
    }

    pub fn as_u32(self) -> u32 {
        match self {
            Level::One => 1,
            Level::Two => 2,
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u32())
    }
}

impl Serialize for Level {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u32(self.as_u32())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WkSpace {
    pub k: u32,
    pub flavor: Flavor,
    pub basis: Vec<Poly>,
}

impl WkSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Re-checks the defining conditions on every basis element.
    pub fn verify(&self) -> Result<bool> {
        let op = period_operator();
        let eps = ProjMatrix::epsilon();
        for p in &self.basis {
            if !slash_ring(p, &op, self.k)?.is_zero() {
                return Ok(false);
            }
            let pe = crate::poly_action::slash(p, &eps, self.k)?;
            let parity_ok = match self.flavor {
                Flavor::Minus => pe == p.scale(&Rational::from(-1)),
                Flavor::Plus | Flavor::PlusZero => pe == *p,
            };
            if !parity_ok {
                return Ok(false);
            }
            if self.flavor == Flavor::PlusZero && !(p.coeff(0).is_zero() && p.coeff((self.k - 2) as usize).is_zero()) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether `p` lies in the span of the basis.
    pub fn contains(&self, p: &Poly) -> Result<bool> {
        if p.weight() != self.k {
            return Err(Error::DimensionMismatch(format!("weight {} vs {}", p.weight(), self.k)));
        }
        if self.basis.is_empty() {
            return Ok(p.is_zero());
        }
        let m = QMatrix::from_rows((self.k - 1) as usize, self.basis.iter().map(|b| b.coeffs().to_vec()).collect())?;
        m.in_row_space(p.coeffs())
    }
}

/// `(1-T)(1+M)` in the group ring.
pub fn period_operator() -> GroupRingElement {
    GroupRingElement::one_minus(ProjMatrix::t()).mul(&GroupRingElement::one_plus(ProjMatrix::m()))
}

/// Kernel of `P -> P|(1-T)(1+M)` on the span of the given monomials.
fn kernel_on_monomials(k: u32, exponents: &[usize]) -> Result<Vec<Poly>> {
    if exponents.is_empty() {
        return Ok(Vec::new());
    }
    let op = period_operator();
    let n = (k - 1) as usize;
    let images: Vec<Poly> = exponents.iter().map(|&e| slash_ring(&Poly::monomial(k, e), &op, k)).collect::<Result<_>>()?;
    // columns are the images of the domain monomials
    let rows: Vec<Vec<Rational>> = (0..n).map(|i| images.iter().map(|p| p.coeff(i)).collect()).collect();
    let m = QMatrix::from_rows(exponents.len(), rows)?;
    let kernel = canonical_basis(exponents.len(), m.right_kernel());
    kernel
        .into_iter()
        .map(|v| {
            let mut c = vec![Rational::zero(); n];
            for (&e, x) in exponents.iter().zip(v) {
                c[e] = x;
            }
            Poly::new(k, c)
        })
        .collect()
}

pub fn wk_basis(k: u32, flavor: Flavor) -> Result<WkSpace> {
    require_even_weight(k, 4)?;
    let w = (k - 2) as usize;
    let basis = match flavor {
        Flavor::PlusZero => kernel_on_monomials(k, &(2..=w - 2).step_by(2).collect::<Vec<_>>())?,
        Flavor::Minus => kernel_on_monomials(k, &(1..w).step_by(2).collect::<Vec<_>>())?,
        Flavor::Plus => {
            let mut b = vec![Poly::monomial(k, 0), Poly::monomial(k, w)];
            b.extend(wk_basis(k, Flavor::PlusZero)?.basis);
            b
        }
    };
    Ok(WkSpace { k, flavor, basis })
}

/// The full even part computed directly as a kernel on all even monomials.
pub fn wk_plus_direct(k: u32) -> Result<WkSpace> {
    require_even_weight(k, 4)?;
    let basis = kernel_on_monomials(k, &(0..=(k - 2) as usize).step_by(2).collect::<Vec<_>>())?;
    Ok(WkSpace { k, flavor: Flavor::Plus, basis })
}

#[derive(Clone, Debug, Serialize)]
pub struct PlusDecomposition {
    pub k: u32,
    /// `1 | (1-T) = 0`.
    pub one_invariant: bool,
    /// `x^(k-2) | TM = x^(k-2)`.
    pub top_invariant: bool,
    pub direct_dim: usize,
    pub decomposed_dim: usize,
    /// The direct kernel and `Q 1 + Q x^(k-2) + W^{+,0}` are the same subspace.
    pub spans_agree: bool,
}

pub fn plus_decomposition_check(k: u32) -> Result<PlusDecomposition> {
    let direct = wk_plus_direct(k)?;
    let decomposed = wk_basis(k, Flavor::Plus)?;
    let w = (k - 2) as usize;
    let top = Poly::monomial(k, w);
    let tm = ProjMatrix::t().mul(&ProjMatrix::m());
    let one_invariant = slash_ring(&Poly::monomial(k, 0), &GroupRingElement::one_minus(ProjMatrix::t()), k)?.is_zero();
    let top_invariant = crate::poly_action::slash(&top, &tm, k)? == top;
    let mut spans_agree = direct.dim() == decomposed.dim();
    for p in &decomposed.basis {
        spans_agree &= direct.contains(p)?;
    }
    Ok(PlusDecomposition {
        k,
        one_invariant,
        top_invariant,
        direct_dim: direct.dim(),
        decomposed_dim: decomposed.dim(),
        spans_agree,
    })
}

/// Coefficient matrix of the linear system cutting out `W_k^{+,0}`:
/// rows `j = 1, 3, ..., k-3`, columns `i = 2, 4, ..., k-4` (unknown
/// `a_{k-2-i}`), entries `C(i,j) - C(i,k-2-j)`.
pub fn lineq_system(k: u32) -> Result<QMatrix> {
    require_even_weight(k, 4)?;
    let k = k as i64;
    let cols: Vec<i64> = (2..=k - 4).step_by(2).collect();
    let rows = (1..=k - 3)
        .step_by(2)
        .map(|j| cols.iter().map(|&i| binomial_q(i, j) - binomial_q(i, k - 2 - j)).collect())
        .collect();
    QMatrix::from_rows(cols.len(), rows)
}

#[derive(Clone, Debug, Serialize)]
pub struct QkMatrix {
    pub k: u32,
    pub level: Level,
    pub matrix: QMatrix,
}

impl QkMatrix {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

/// `Q_k` (level 2) and `Q_k^(1)` (level 1) as printed.
///
/// Level 2: `(k/2-1) x (k/2-2)`, entries `C(2j,k-2i-1) - C(2j,2i-1)`; this is
/// the negative of the linear system matrix, and row `i` is row `2i-1` of
/// `Q_k^(1)`. Level 1: `(k-3) x (k/2-2)`, entries
/// `(-1)^i C(2j,i) - (-1)^i C(2j,k-2-i) + [k-2-i = 2j]`.
pub fn qk_matrix(k: u32, level: Level) -> Result<QkMatrix> {
    require_even_weight(k, 4)?;
    let kk = k as i64;
    let ncols = (k / 2 - 2) as usize;
    let rows: Vec<Vec<Rational>> = match level {
        Level::Two => (1..kk / 2)
            .map(|i| (1..=ncols as i64).map(|j| binomial_q(2 * j, kk - 2 * i - 1) - binomial_q(2 * j, 2 * i - 1)).collect())
            .collect(),
        Level::One => (1..=kk - 3)
            .map(|i| {
                let sign = Rational::from(if i % 2 == 0 { 1 } else { -1 });
                (1..=ncols as i64)
                    .map(|j| {
                        let delta = if kk - 2 - i == 2 * j { Rational::one() } else { Rational::zero() };
                        &sign * &(binomial_q(2 * j, i) - binomial_q(2 * j, kk - 2 - i)) + delta
                    })
                    .collect()
            })
            .collect(),
    };
    Ok(QkMatrix { k, level, matrix: QMatrix::from_rows(ncols, rows)? })
}

/// Row `i` of `Q_k` equals row `2i-1` of `Q_k^(1)` for every `i`.
pub fn minor_embedding_check(k: u32) -> Result<bool> {
    require_even_weight(k, 6)?;
    let q2 = qk_matrix(k, Level::Two)?.matrix;
    let q1 = qk_matrix(k, Level::One)?.matrix;
    Ok((0..q2.rows()).all(|i| q2.row(i) == q1.row(2 * i)))
}

/// `sum_j v_j x^(k-2-2j)` for a right kernel vector `v` of the level's matrix.
pub fn period_polynomial_from_kernel(k: u32, level: Level, v: &[Rational]) -> Result<Poly> {
    let q = qk_matrix(k, level)?;
    if v.len() != q.matrix.cols() {
        return Err(Error::DimensionMismatch(format!("vector of length {} for {} columns", v.len(), q.matrix.cols())));
    }
    if q.matrix.mul_vec(v)?.iter().any(|x| !x.is_zero()) {
        return Err(Error::InvalidArgument("vector is not in the right kernel".into()));
    }
    let mut c = vec![Rational::zero(); (k - 1) as usize];
    for (j, x) in v.iter().enumerate() {
        c[(k - 2) as usize - 2 * (j + 1)] = x.clone();
    }
    Poly::new(k, c)
}

/// `P | (1+S) = 0` and `P | (1+U+U^2) = 0` with `U = TS`.
pub fn is_level1_period_polynomial(p: &Poly) -> Result<bool> {
    let k = p.weight();
    let s = ProjMatrix::s();
    let u = ProjMatrix::t().mul(&s);
    let one_plus_s = GroupRingElement::one_plus(s);
    let uu = GroupRingElement::one().add(&u.into()).add(&u.mul(&u).into());
    Ok(slash_ring(p, &one_plus_s, k)?.is_zero() && slash_ring(p, &uu, k)?.is_zero())
}

/// `[(k+2)/4] - 1`.
pub fn expected_qk_rank(k: u32) -> Result<usize> {
    require_even_weight(k, 4)?;
    Ok(((k + 2) / 4 - 1) as usize)
}

/// `[k/4] - 1`, the dimension of the cusp forms of weight `k` on `Gamma_0(2)`.
pub fn expected_wk_dim(k: u32) -> Result<usize> {
    require_even_weight(k, 4)?;
    Ok((k / 4 - 1) as usize)
}

#[derive(Clone, Debug, Serialize)]
pub struct PeriodSummary {
    pub k: u32,
    pub rank_qk: usize,
    pub rank_lineq: usize,
    pub dim_plus_zero: usize,
    pub dim_minus: usize,
    pub expected_rank: usize,
    pub expected_dim: usize,
    /// Kernel polynomials of `Q_k` span exactly `W_k^{+,0}`.
    pub kernel_matches_basis: bool,
    pub pass: bool,
}

pub fn period_summary(k: u32) -> Result<PeriodSummary> {
    if k < 6 {
        return Err(invalid_weight(k, "Q_k needs k >= 6"));
    }
    let q = qk_matrix(k, Level::Two)?;
    let lineq = lineq_system(k)?;
    let plus0 = wk_basis(k, Flavor::PlusZero)?;
    let minus = wk_basis(k, Flavor::Minus)?;
    let kernel = q.matrix.right_kernel();
    let mut kernel_matches_basis = kernel.len() == plus0.dim();
    for v in &kernel {
        kernel_matches_basis &= plus0.contains(&period_polynomial_from_kernel(k, Level::Two, v)?)?;
    }
    let (expected_rank, expected_dim) = (expected_qk_rank(k)?, expected_wk_dim(k)?);
    let (rank_qk, rank_lineq) = (q.rank(), lineq.rank());
    let pass = rank_qk == expected_rank
        && rank_lineq == expected_rank
        && plus0.dim() == expected_dim
        && minus.dim() == expected_dim
        && plus0.dim() + rank_lineq == (k / 2 - 2) as usize
        && kernel_matches_basis;
    Ok(PeriodSummary {
        k,
        rank_qk,
        rank_lineq,
        dim_plus_zero: plus0.dim(),
        dim_minus: minus.dim(),
        expected_rank,
        expected_dim,
        kernel_matches_basis,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        let q = qk_matrix(6, Level::Two).unwrap();
        assert_eq!((q.matrix.rows(), q.matrix.cols()), (2, 1));
        let q = qk_matrix(12, Level::One).unwrap();
        assert_eq!((q.matrix.rows(), q.matrix.cols()), (9, 4));
        assert_eq!(qk_matrix(4, Level::Two).unwrap().matrix.cols(), 0);
    }

    #[test]
    fn odd_weight_rejected() {
        assert!(wk_basis(7, Flavor::Minus).is_err());
        assert!(lineq_system(9).is_err());
        assert!(qk_matrix(11, Level::One).is_err());
        assert!(Level::from_u32(3).is_err());
    }

    #[test]
    fn weight_four_is_trivial() {
        assert_eq!(wk_basis(4, Flavor::PlusZero).unwrap().dim(), 0);
        assert_eq!(wk_basis(4, Flavor::Minus).unwrap().dim(), 0);
        assert_eq!(wk_basis(12, Flavor::PlusZero).unwrap().dim(), 2);
    }

    #[test]
    fn zero_vector_maps_to_zero() {
        let v = vec![Rational::zero(); 4];
        assert!(period_polynomial_from_kernel(12, Level::Two, &v).unwrap().is_zero());
        assert!(period_polynomial_from_kernel(12, Level::Two, &v[..3]).is_err());
        let bad: Vec<Rational> = [1, 0, 0, 0].iter().map(|&x| Rational::from(x)).collect();
        assert!(period_polynomial_from_kernel(12, Level::Two, &bad).is_err());
    }

    #[test]
    fn plus_decomposition_small() {
        for k in [4, 8, 12] {
            let d = plus_decomposition_check(k).unwrap();
            assert!(d.one_invariant && d.top_invariant && d.spans_agree, "{d:?}");
        }
    }
}
