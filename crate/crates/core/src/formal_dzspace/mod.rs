//! The formal double zeta space of level 2 in weight `k`.
//!
//! Vectors live on the basis `Z^eo_{r,k-r}`, `Z^oe_{r,k-r}`, `Z^oo_{r,k-r}`
//! (`r = 1..k-1`, kind-major, `r` ascending) followed by `Z^o_k`; the space is
//! the quotient by the two families of double shuffle relations
//!
//! ```text
//! Z^oe_{r,s} + Z^eo_{s,r}       = sum_{i+j=k} C(i-1,r-1) Z^oe_{i,j} + C(i-1,s-1) Z^oo_{i,j}
//! Z^oo_{r,s} + Z^oo_{s,r} + Z^o = sum_{i+j=k} (C(i-1,r-1) + C(i-1,s-1)) Z^eo_{i,j}
//! ```

mod reduction;

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{invalid_weight, require_even_weight, Result};
use crate::exact::{binomial_q, BiPoly, QMatrix, Rational, Scalar};
use crate::numeric::{BigReal, SingleKind, ZetaTable};
use crate::parity::Kind;

pub use reduction::{
    lemma2_coefficients, lemma2_from_poly, poe_reduction, Lemma2Coefficients, PoeExpression, PoeReduction,
};

/// Element of the ambient space `Q^(3(k-1)+1)` of formal symbols.
#[derive(Clone, PartialEq, Eq)]
pub struct DZVector {
    k: u32,
    coords: Vec<Rational>,
}

impl DZVector {
    pub fn dim(k: u32) -> usize {
        3 * (k as usize - 1) + 1
    }

    pub fn index(k: u32, kind: Kind, r: u32) -> usize {
        assert!(r >= 1 && r < k, "index r = {r} outside 1..{k}");
        kind.index() * (k as usize - 1) + (r as usize - 1)
    }

    pub fn zo_index(k: u32) -> usize {
        3 * (k as usize - 1)
    }

    pub fn zero(k: u32) -> Self {
        DZVector { k, coords: vec![Rational::zero(); Self::dim(k)] }
    }

    pub fn from_coords(k: u32, coords: Vec<Rational>) -> Self {
        assert_eq!(coords.len(), Self::dim(k));
        DZVector { k, coords }
    }

    /// `Z^{kind}_{r,k-r}`.
    pub fn z(k: u32, kind: Kind, r: u32) -> Self {
        let mut v = Self::zero(k);
        v.coords[Self::index(k, kind, r)] = Rational::one();
        v
    }

    /// `Z^o_k`.
    pub fn zo(k: u32) -> Self {
        let mut v = Self::zero(k);
        v.coords[Self::zo_index(k)] = Rational::one();
        v
    }

    /// `P^oe_{r,s} = Z^oe_{r,s} + Z^eo_{s,r}`.
    pub fn p_oe(k: u32, r: u32) -> Self {
        Self::z(k, Kind::OE, r).add_ref(&Self::z(k, Kind::EO, k - r))
    }

    /// `P^oo_{r,s} = Z^oo_{r,s} + Z^oo_{s,r} + Z^o_k`.
    pub fn p_oo(k: u32, r: u32) -> Self {
        Self::z(k, Kind::OO, r).add_ref(&Self::z(k, Kind::OO, k - r)).add_ref(&Self::zo(k))
    }

    pub fn weight(&self) -> u32 {
        self.k
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn get(&self, kind: Kind, r: u32) -> &Rational {
        &self.coords[Self::index(self.k, kind, r)]
    }

    pub fn get_zo(&self) -> &Rational {
        &self.coords[Self::zo_index(self.k)]
    }

    pub fn add_term(&mut self, kind: Kind, r: u32, c: &Rational) {
        let i = Self::index(self.k, kind, r);
        self.coords[i] += c;
    }

    /// Coordinates with the `Z^o_k` entry dropped.
    pub fn without_zo(&self) -> Vec<Rational> {
        self.coords[..Self::zo_index(self.k)].to_vec()
    }

    pub fn labels(k: u32) -> Vec<String> {
        let mut out = Vec::with_capacity(Self::dim(k));
        for kind in Kind::ALL {
            for r in 1..k {
                out.push(format!("Z^{kind}_{{{r},{}}}", k - r));
            }
        }
        out.push(format!("Z^o_{k}"));
        out
    }

    fn binary(&self, o: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        assert_eq!(self.k, o.k, "weights differ");
        DZVector { k: self.k, coords: self.coords.iter().zip(&o.coords).map(|(a, b)| f(a, b)).collect() }
    }
}

impl Scalar for DZVector {
    fn zero_like(&self) -> Self {
        Self::zero(self.k)
    }
    fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
    fn add_ref(&self, other: &Self) -> Self {
        self.binary(other, |a, b| a + b)
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.binary(other, |a, b| a - b)
    }
    fn neg_ref(&self) -> Self {
        DZVector { k: self.k, coords: self.coords.iter().map(|c| -c).collect() }
    }
    fn scale(&self, c: &Rational) -> Self {
        DZVector { k: self.k, coords: self.coords.iter().map(|x| x * c).collect() }
    }
}

impl fmt::Display for DZVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = Self::labels(self.k);
        let mut first = true;
        for (c, label) in self.coords.iter().zip(&labels) {
            if c.is_zero() {
                continue;
            }
            let (sign, abs) = if c.is_negative() { ("-", c.abs()) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if !abs.is_one() {
                write!(f, "{abs} ")?;
            }
            write!(f, "{label}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for DZVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DZVector(k={}: {self})", self.k)
    }
}

impl Serialize for DZVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("DZVector", 3)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("coords", &self.coords)?;
        st.serialize_field("expression", &self.to_string())?;
        st.end()
    }
}

/// The `2(k-1)` defining relations as rows (left side minus right side):
/// first the stuffle-against-shuffle rows for `Z^oe`, then those for `Z^oo`,
/// each with `r = 1..k-1`.
#[derive(Clone, Debug, Serialize)]
pub struct RelationSet {
    pub k: u32,
    pub labels: Vec<String>,
    pub matrix: QMatrix,
}

impl RelationSet {
    pub fn rows(&self) -> Vec<DZVector> {
        self.matrix.row_vectors().into_iter().map(|c| DZVector::from_coords(self.k, c)).collect()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// Coefficients `c` with `sum c_i row_i = v`, if any.
    pub fn certificate(&self, v: &DZVector) -> Result<Option<Vec<Rational>>> {
        self.matrix.row_space_certificate(v.coords())
    }

    /// Membership modulo `Q Z^o_k`: the `Z^o_k` column is deleted first.
    pub fn certificate_mod_zo(&self, v: &DZVector) -> Result<Option<Vec<Rational>>> {
        self.matrix.remove_column(DZVector::zo_index(self.k)).row_space_certificate(&v.without_zo())
    }

    /// `sum c_i row_i`.
    pub fn combine(&self, c: &[Rational]) -> Result<DZVector> {
        Ok(DZVector::from_coords(self.k, self.matrix.vec_mul(c)?))
    }
}

/// `Z^oe_{r,s} + Z^eo_{s,r} - sum (C(i-1,r-1) Z^oe_{i,j} + C(i-1,s-1) Z^oo_{i,j})`.
pub fn first_relation(k: u32, r: u32) -> DZVector {
    let s = k - r;
    let mut v = DZVector::p_oe(k, r);
    for i in 1..k {
        v.add_term(Kind::OE, i, &-binomial_q(i as i64 - 1, r as i64 - 1));
        v.add_term(Kind::OO, i, &-binomial_q(i as i64 - 1, s as i64 - 1));
    }
    v
}

/// `Z^oo_{r,s} + Z^oo_{s,r} + Z^o_k - sum (C(i-1,r-1) + C(i-1,s-1)) Z^eo_{i,j}`.
pub fn second_relation(k: u32, r: u32) -> DZVector {
    let s = k - r;
    let mut v = DZVector::p_oo(k, r);
    for i in 1..k {
        let c = binomial_q(i as i64 - 1, r as i64 - 1) + binomial_q(i as i64 - 1, s as i64 - 1);
        v.add_term(Kind::EO, i, &-c);
    }
    v
}

/// Relations in even weight `k >= 4`.
pub fn relation_matrix(k: u32) -> Result<RelationSet> {
    require_even_weight(k, 4)?;
    Ok(relations(k))
}

/// The same relations for any weight `k >= 3`, odd weights included.
pub fn relation_matrix_any_weight(k: u32) -> Result<RelationSet> {
    if k < 3 {
        return Err(invalid_weight(k, "weight must be at least 3"));
    }
    Ok(relations(k))
}

fn relations(k: u32) -> RelationSet {
    let mut labels = Vec::new();
    let mut rows = Vec::new();
    for r in 1..k {
        labels.push(format!("oe({r},{})", k - r));
        rows.push(first_relation(k, r).coords);
    }
    for r in 1..k {
        labels.push(format!("oo({r},{})", k - r));
        rows.push(second_relation(k, r).coords);
    }
    let matrix = QMatrix::from_rows(DZVector::dim(k), rows).expect("rows of equal length");
    RelationSet { k, labels, matrix }
}

/// A vector together with its expression in the relation rows.
#[derive(Clone, Debug, Serialize)]
pub struct Certified {
    pub vector: DZVector,
    pub in_row_space: bool,
    pub coefficients: Option<Vec<Rational>>,
    /// `sum c_i row_i` recomputed and compared with the vector.
    pub recomputed: bool,
}

impl Certified {
    pub fn new(rel: &RelationSet, vector: DZVector) -> Result<Self> {
        let coefficients = rel.certificate(&vector)?;
        let recomputed = match &coefficients {
            Some(c) => rel.combine(c)? == vector,
            None => false,
        };
        Ok(Certified { in_row_space: coefficients.is_some(), vector, coefficients, recomputed })
    }

    pub fn holds(&self) -> bool {
        self.in_row_space && self.recomputed
    }
}

/// `sum_{r even} Z^oo_{r,k-r} - Z^o_k / 4`, which vanishes in the quotient.
pub fn sum_formula_vector(k: u32) -> DZVector {
    let mut v = DZVector::zo(k).scale(&Rational::new(-1, 4));
    for r in (2..=k - 2).step_by(2) {
        v.add_term(Kind::OO, r, &Rational::one());
    }
    v
}

#[derive(Clone, Debug, Serialize)]
pub struct SumFormulaReport {
    pub k: u32,
    pub holds: bool,
    pub certificate: Certified,
}

/// Shows `sum_{r even} Z^oo_{r,k-r} = Z^o_k / 4` in the quotient with an explicit certificate.
pub fn check_sum_formula(k: u32) -> Result<SumFormulaReport> {
    let rel = relation_matrix(k)?;
    let certificate = Certified::new(&rel, sum_formula_vector(k))?;
    Ok(SumFormulaReport { k, holds: certificate.holds(), certificate })
}

/// `sum Z^{kind}_{r,s} X^(r-1) Y^(s-1)` with vector coefficients.
pub fn generating_function(k: u32, kind: Kind) -> BiPoly<DZVector> {
    let w = (k - 2) as usize;
    let mut p = BiPoly::zero_with(w, &DZVector::zero(k));
    for r in 1..k {
        p.set((r - 1) as usize, (k - 1 - r) as usize, DZVector::z(k, kind, r));
    }
    p
}

fn eval_at(p: &BiPoly<DZVector>, x: i64, y: i64, k: u32) -> DZVector {
    let mut acc = DZVector::zero(k);
    for (i, j, c) in p.terms() {
        let w = Rational::from(x.pow(i as u32) * y.pow(j as u32));
        acc = acc.add_ref(&c.scale(&w));
    }
    acc
}

#[derive(Clone, Debug, Serialize)]
pub struct GenfunRelations {
    pub k: u32,
    /// From the first generating-function identity at `X = 1, Y = 0`.
    pub first: Certified,
    /// From the second generating-function identity at `X = 1, Y = -1`.
    pub second: Certified,
    /// `second / 2 + first` equals `-2 (sum_{r even} Z^oo_{r,k-r} - Z^o_k / 4)`.
    pub combination_matches: bool,
    /// Every coefficient of both identities lies in the row space, and they span it.
    pub coefficients_span_relations: bool,
}

/// The two generating-function identities, as polynomials with vector
/// coefficients (left side minus right side).
pub fn generating_function_identities(k: u32) -> (BiPoly<DZVector>, BiPoly<DZVector>) {
    let (eo, oe, oo) = (generating_function(k, Kind::EO), generating_function(k, Kind::OE), generating_function(k, Kind::OO));
    let at_sy = |p: &BiPoly<DZVector>| p.substitute_linear((1, 1), (0, 1));
    let at_sx = |p: &BiPoly<DZVector>| p.substitute_linear((1, 1), (1, 0));
    let first = oe.add(&eo.swap()).sub(&at_sy(&oe)).sub(&at_sx(&oo));
    // (X^(k-1) - Y^(k-1)) / (X - Y) = sum_{a+b=k-2} X^a Y^b
    let w = (k - 2) as usize;
    let mut divided = BiPoly::zero_with(w, &DZVector::zero(k));
    for a in 0..=w {
        divided.set(a, w - a, DZVector::zo(k));
    }
    let second = oo.add(&oo.swap()).add(&divided).sub(&at_sy(&eo)).sub(&at_sx(&eo));
    (first, second)
}

pub fn genfun_substitution_relations(k: u32) -> Result<GenfunRelations> {
    let rel = relation_matrix(k)?;
    let (first_gf, second_gf) = generating_function_identities(k);
    let first_v = eval_at(&first_gf, 1, 0, k);
    let second_v = eval_at(&second_gf, 1, -1, k);
    let combination = second_v.scale(&Rational::new(1, 2)).add_ref(&first_v);
    let combination_matches = combination == sum_formula_vector(k).scale(&Rational::from(-2));

    let mut coeff_rows = Vec::new();
    for p in [&first_gf, &second_gf] {
        for (_, _, c) in p.terms() {
            if !c.is_zero() {
                coeff_rows.push(c.coords().to_vec());
            }
        }
    }
    let coeff_matrix = QMatrix::from_rows(DZVector::dim(k), coeff_rows)?;
    let inside = coeff_matrix.row_vectors().iter().all(|row| rel.matrix.in_row_space(row).unwrap_or(false));
    let coefficients_span_relations = inside && coeff_matrix.rank() == rel.rank();

    Ok(GenfunRelations {
        k,
        first: Certified::new(&rel, first_v)?,
        second: Certified::new(&rel, second_v)?,
        combination_matches,
        coefficients_span_relations,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct NumericSpecialization {
    pub k: u32,
    pub digits: u32,
    /// Largest `|row . values|` over all rows and `T in {0, 1}`, in decimal.
    pub max_residual: String,
    pub pass: bool,
}

/// Specializes `Z^{kind}_{r,s}` to the (regularized) level-2 double zeta
/// values and `Z^o_k` to `zeta^o(k)`, and evaluates every relation row.
pub fn numeric_specialization(k: u32, table: &ZetaTable) -> Result<NumericSpecialization> {
    let rel = relation_matrix_any_weight(k)?;
    let mut values = Vec::with_capacity(DZVector::dim(k));
    for kind in Kind::ALL {
        for r in 1..k {
            values.push(table.dz(kind, r, k - r)?);
        }
    }
    values.push(table.single(SingleKind::O, k)?);
    let bits = table.bits();
    let mut worst = BigReal::zero(bits);
    for row in rel.matrix.row_vectors() {
        for t in [0, 1] {
            let mut acc = BigReal::zero(bits);
            for (c, v) in row.iter().zip(&values) {
                if !c.is_zero() {
                    acc = &acc + &v.at(t).mul_rational(c);
                }
            }
            if acc.abs() > worst {
                worst = acc.abs();
            }
        }
    }
    let digits = table.precision().digits;
    Ok(NumericSpecialization {
        k,
        digits,
        pass: worst <= table.tolerance(),
        max_residual: worst.to_decimal(digits),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_four_shape() {
        let rel = relation_matrix(4).unwrap();
        assert_eq!((rel.matrix.rows(), rel.matrix.cols()), (6, 10));
        assert!(relation_matrix(5).is_err());
        assert_eq!(relation_matrix_any_weight(5).unwrap().matrix.rows(), 8);
    }

    #[test]
    fn second_relation_at_2_2() {
        // 2 Z^oo_{2,2} + Z^o_4 - (Z^eo_{2,2} + Z^eo_{2,2}) - 2 (Z^eo_{3,1} + Z^eo_{3,1}) ... by binomials
        let v = second_relation(4, 2);
        assert_eq!(v.get(Kind::OO, 2), &Rational::from(2));
        assert_eq!(v.get_zo(), &Rational::one());
        assert_eq!(v.get(Kind::EO, 1), &Rational::zero());
        assert_eq!(v.get(Kind::EO, 2), &Rational::from(-2));
        assert_eq!(v.get(Kind::EO, 3), &Rational::from(-4));
    }

    #[test]
    fn sum_formula_small() {
        for k in [4, 6] {
            let rep = check_sum_formula(k).unwrap();
            assert!(rep.holds);
        }
    }

    #[test]
    fn substitution_relations() {
        let g = genfun_substitution_relations(6).unwrap();
        // Z^eo_{1,k-1} - sum Z^oo_{r,k-r}
        let mut expect = DZVector::z(6, Kind::EO, 1);
        for r in 1..6 {
            expect.add_term(Kind::OO, r, &Rational::from(-1));
        }
        assert_eq!(g.first.vector, expect);
        assert!(g.first.holds() && g.second.holds() && g.combination_matches && g.coefficients_span_relations);
    }

    #[test]
    fn display_vector() {
        let v = DZVector::p_oo(4, 1);
        assert_eq!(v.to_string(), "Z^oo_{1,3} + Z^oo_{3,1} + Z^o_4");
    }
}
