//! Relations among `P^oe_{r,k-r}` and `P^oo_{i,j}` (even indices) built from
//! polynomials `f` with `f | T S T eps = f`, and the triangular solve that
//! expresses each `P^oe_{r,k-r}` through `P^oo` and `Z^o_k`.

use serde::Serialize;

use super::{relation_matrix, Certified, DZVector};
use crate::error::{require_even_weight, Error, Result};
use crate::exact::{binomial_q, BiPoly, QMatrix, Rational, Scalar};
use crate::parity::Kind;
use crate::poly_action::{slash, slash_ring, GroupRingElement, Poly, ProjMatrix};

fn tst() -> ProjMatrix {
    ProjMatrix::product(&[ProjMatrix::t(), ProjMatrix::s(), ProjMatrix::t()])
}

fn ts_eps() -> ProjMatrix {
    ProjMatrix::product(&[ProjMatrix::t(), ProjMatrix::s(), ProjMatrix::epsilon()])
}

fn t_eps() -> ProjMatrix {
    ProjMatrix::t().mul(&ProjMatrix::epsilon())
}

fn g(m: ProjMatrix) -> GroupRingElement {
    m.into()
}

#[derive(Clone, Debug, Serialize)]
pub struct Lemma2Coefficients {
    pub k: u32,
    pub f: Poly,
    /// The three slot polynomials `f|delta(1-eps)`, `f|(1-eps)`, `-f|T(1-eps)`.
    pub slots: [Poly; 3],
    /// `a_{i,k-i}`, `b_{i,k-i}`, `c_{i,k-i}` for `i = 1..k-1`.
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
    pub c: Vec<Rational>,
    /// `a_{i,j} = b_{j,i}`.
    pub symmetric_ab: bool,
    /// `c_{i,j} = c_{j,i}`.
    pub symmetric_c: bool,
    /// All coefficients vanish at odd `i`.
    pub odd_vanish: bool,
    /// The long expression with `g = f|T eps / 2` reduces to the three slots.
    pub reduced_form_matches: bool,
    /// The slots agree with the two-polynomial form in homogeneous variables.
    pub homogeneous_form_matches: bool,
    /// The induced vector lies in the relation row space modulo `Q Z^o_k`.
    pub in_row_space_mod_zo: bool,
}

impl Lemma2Coefficients {
    pub fn pass(&self) -> bool {
        self.symmetric_ab
            && self.symmetric_c
            && self.odd_vanish
            && self.reduced_form_matches
            && self.homogeneous_form_matches
            && self.in_row_space_mod_zo
    }

    /// `sum a Z^eo + b Z^oe + c Z^oo`.
    pub fn relation_vector(&self) -> DZVector {
        let mut v = DZVector::zero(self.k);
        for i in 1..self.k {
            let n = (i - 1) as usize;
            v.add_term(Kind::EO, i, &self.a[n]);
            v.add_term(Kind::OE, i, &self.b[n]);
            v.add_term(Kind::OO, i, &self.c[n]);
        }
        v
    }
}

/// Coefficients for `f = x^r (x-2)^(k-2-r)`, `r` even, `0 <= r <= k-4`.
pub fn lemma2_coefficients(k: u32, r: u32) -> Result<Lemma2Coefficients> {
    require_even_weight(k, 4)?;
    if r % 2 != 0 || r + 4 > k {
        return Err(Error::InvalidIndex(format!("r = {r} must be even with 0 <= r <= k-4")));
    }
    lemma2_from_poly(k, &Poly::x_pow_times_x_minus_2_pow(k, r))
}

pub fn lemma2_from_poly(k: u32, f: &Poly) -> Result<Lemma2Coefficients> {
    require_even_weight(k, 4)?;
    let eps = ProjMatrix::epsilon();
    let delta = ProjMatrix::delta();
    let tst_eps = tst().mul(&eps);
    if slash(f, &tst_eps, k)? != *f {
        return Err(Error::InvalidArgument("f is not invariant under T S T eps".into()));
    }
    let gp = slash(f, &t_eps(), k)?.scale(&Rational::new(1, 2));
    let one_minus_eps = GroupRingElement::one_minus(eps);

    let slots = [
        slash_ring(f, &g(delta).mul(&one_minus_eps), k)?,
        slash_ring(f, &one_minus_eps, k)?,
        slash_ring(f, &g(ProjMatrix::t()).mul(&one_minus_eps), k)?.scale(&Rational::from(-1)),
    ];

    // f|delta - g|(TST + TS eps),  f|(1 - TST),  -(f|TS eps - g|(1 + delta))
    let long = [
        slash(f, &delta, k)?.sub(&slash_ring(&gp, &g(tst()).add(&g(ts_eps())), k)?),
        slash_ring(f, &GroupRingElement::one_minus(tst()), k)?,
        slash(f, &ts_eps(), k)?.sub(&slash_ring(&gp, &GroupRingElement::one_plus(delta), k)?).scale(&Rational::from(-1)),
    ];
    let reduced_form_matches = long == slots;

    // F(Y1,X1) - G(X1,X1+Y1) - G(X1+Y1,X1);  F(X2,Y2) - F(X2,X2+Y2);  G(X3,Y3) + G(Y3,X3) - F(X3+Y3,X3)
    let big_f = f.to_homogeneous();
    let big_g = gp.to_homogeneous();
    let sub = |p: &BiPoly<Rational>, x: (i64, i64), y: (i64, i64)| p.substitute_linear(x, y);
    let homog = [
        big_f.swap().sub(&sub(&big_g, (1, 0), (1, 1))).sub(&sub(&big_g, (1, 1), (1, 0))),
        big_f.sub(&sub(&big_f, (1, 0), (1, 1))),
        big_g.add(&big_g.swap()).sub(&sub(&big_f, (1, 1), (1, 0))),
    ];
    let homogeneous_form_matches = homog.iter().zip(&slots).all(|(h, s)| Poly::from_homogeneous(k, h).ok().as_ref() == Some(s));

    let w = (k - 2) as i64;
    let lemma1 = |p: &Poly| -> Vec<Rational> {
        (1..k).map(|i| &p.coeff((i - 1) as usize) / &binomial_q(w, i as i64 - 1)).collect()
    };
    let (a, b, c) = (lemma1(&slots[0]), lemma1(&slots[1]), lemma1(&slots[2]));
    let n = (k - 1) as usize;
    let symmetric_ab = (0..n).all(|i| a[i] == b[n - 1 - i]);
    let symmetric_c = (0..n).all(|i| c[i] == c[n - 1 - i]);
    // index i-1 is even exactly when i is odd
    let odd_vanish = (0..n).step_by(2).all(|i| a[i].is_zero() && b[i].is_zero() && c[i].is_zero());

    let mut out = Lemma2Coefficients {
        k,
        f: f.clone(),
        slots,
        a,
        b,
        c,
        symmetric_ab,
        symmetric_c,
        odd_vanish,
        reduced_form_matches,
        homogeneous_form_matches,
        in_row_space_mod_zo: false,
    };
    let rel = relation_matrix(k)?;
    out.in_row_space_mod_zo = rel.certificate_mod_zo(&out.relation_vector())?.is_some();
    Ok(out)
}

/// `P^oe_{r,k-r} = sum_i poo_i P^oo_{i,k-i} + zo Z^o_k` in the quotient.
#[derive(Clone, Debug, Serialize)]
pub struct PoeExpression {
    pub r: u32,
    /// Coefficients of `P^oo_{i,k-i}` for even `i <= k/2`.
    pub poo: Vec<(u32, Rational)>,
    pub zo: Rational,
    /// `P^oe_{r,k-r} - sum poo P^oo - zo Z^o_k` with its row-space certificate.
    pub certificate: Certified,
}

#[derive(Clone, Debug, Serialize)]
pub struct PoeReduction {
    pub k: u32,
    pub expressions: Vec<PoeExpression>,
    pub all_certified: bool,
}

fn poo_slots(k: u32) -> Vec<u32> {
    (2..=k / 2).step_by(2).collect()
}

fn poo_slot(k: u32, i: u32) -> usize {
    let m = i.min(k - i);
    (m / 2 - 1) as usize
}

/// Expresses every `P^oe_{r,k-r}` (`r` even) through `P^oo` and `Z^o_k`.
///
/// The relation from `x^r (x-2)^(k-2-r)` involves `P^oe_{i,k-i}` only for even
/// `i >= r+2`, with leading coefficient `-C(k-2,r)^-1 (r+1) 2^(k-r-2)`; taking
/// `r = k-4, k-6, ..., 0` solves for `i = k-2, k-4, ..., 2` in turn. The
/// relations hold modulo `Q Z^o_k`; the `Z^o_k` coefficient is then fixed
/// exactly by the relation matrix.
pub fn poe_reduction(k: u32) -> Result<PoeReduction> {
    require_even_weight(k, 4)?;
    let rel = relation_matrix(k)?;
    let slots = poo_slots(k);
    let zero_row = vec![Rational::zero(); slots.len()];
    // solved[i] = coefficients over the P^oo slots, modulo Z^o_k
    let mut solved: std::collections::BTreeMap<u32, Vec<Rational>> = Default::default();
    for r in (0..=k - 4).rev().step_by(2) {
        let lem = lemma2_coefficients(k, r)?;
        if !lem.pass() {
            return Err(Error::InvalidArgument(format!("relation from r = {r} fails its checks")));
        }
        // b_i P^oe_{i,k-i} + sum_i c_i / 2 P^oo_{i,k-i} = 0 (mod Z^o_k)
        let lead_i = r + 2;
        let lead = lem.b[(lead_i - 1) as usize].clone();
        if lead.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let mut rhs = zero_row.clone();
        for i in 1..k {
            let ci = &lem.c[(i - 1) as usize];
            if !ci.is_zero() {
                rhs[poo_slot(k, i)] -= &(ci * &Rational::new(1, 2));
            }
        }
        for i in (lead_i + 2..k).step_by(2) {
            let bi = &lem.b[(i - 1) as usize];
            if bi.is_zero() {
                continue;
            }
            let known = &solved[&i];
            for (slot, v) in rhs.iter_mut().zip(known) {
                *slot -= &(bi * v);
            }
        }
        let inv = lead.recip()?;
        solved.insert(lead_i, rhs.iter().map(|v| v * &inv).collect());
    }

    let zo = DZVector::zo(k);
    let mut with_zo = rel.matrix.clone();
    with_zo.push_row(zo.coords().to_vec())?;
    if rel.certificate(&zo)?.is_some() {
        return Err(Error::InvalidArgument("Z^o_k lies in the relation space".into()));
    }

    let mut expressions = Vec::new();
    for (&r, coeffs) in &solved {
        let mut v = DZVector::p_oe(k, r);
        for (&i, c) in slots.iter().zip(coeffs) {
            v = v.sub_ref(&DZVector::p_oo(k, i).scale(c));
        }
        let zo_coeff = exact_zo_coefficient(&with_zo, &v)?;
        let target = v.sub_ref(&zo.scale(&zo_coeff));
        let certificate = Certified::new(&rel, target)?;
        expressions.push(PoeExpression {
            r,
            poo: slots.iter().copied().zip(coeffs.iter().cloned()).collect(),
            zo: zo_coeff,
            certificate,
        });
    }
    let all_certified = expressions.iter().all(|e| e.certificate.holds());
    Ok(PoeReduction { k, expressions, all_certified })
}

/// The `t` with `v - t Z^o_k` in the relation row space (unique when `Z^o_k` is not).
fn exact_zo_coefficient(with_zo: &QMatrix, v: &DZVector) -> Result<Rational> {
    let c = with_zo
        .row_space_certificate(v.coords())?
        .ok_or_else(|| Error::InvalidArgument(format!("no relation modulo Z^o_{} for {v}", v.weight())))?;
    Ok(c.last().cloned().unwrap_or_else(Rational::zero))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemma2_conditions() {
        for k in [4, 6, 8, 10] {
            for r in (0..=k - 4).step_by(2) {
                let lem = lemma2_coefficients(k, r).unwrap();
                assert!(lem.pass(), "k={k} r={r}: {lem:#?}");
            }
        }
        assert!(lemma2_coefficients(8, 1).is_err());
        assert!(lemma2_coefficients(8, 6).is_err());
    }

    #[test]
    fn second_slot_closed_form() {
        let (k, r) = (10u32, 2u32);
        let lem = lemma2_coefficients(k, r).unwrap();
        let mut expect = vec![Rational::zero(); (k - 1) as usize];
        let norm = binomial_q((k - 2) as i64, r as i64).recip().unwrap();
        for i in (r + 2..=k - 2).step_by(2) {
            let c = binomial_q((k - 2) as i64, i as i64 - 1)
                * binomial_q(i as i64 - 1, r as i64)
                * Rational::from(2i64.pow(k - i));
            expect[(i - 1) as usize] = -(&c * &norm);
        }
        assert_eq!(lem.slots[1].coeffs(), &expect[..]);
    }

    #[test]
    fn non_invariant_input_rejected() {
        let f = Poly::monomial(6, 1);
        assert!(lemma2_from_poly(6, &f).is_err());
    }

    #[test]
    fn reductions_certified() {
        for k in [4, 6, 8] {
            let red = poe_reduction(k).unwrap();
            assert!(red.all_certified, "k={k}");
            assert_eq!(red.expressions.len(), (k / 2 - 1) as usize);
        }
    }
}
