//! Weight `k-2` right action of projective integer matrices on polynomials
//! of degree at most `k-2`:
//!
//! `f | [[a,b],[c,d]] = (cx+d)^(k-2) f((ax+b)/(cx+d))`.
//!
//! With this convention `f|(g h) = (f|g)|h`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::error::{invalid_weight, Error, Result};
use crate::exact::{binomial, BiPoly, Rational};

/// Polynomial of degree at most `k-2` in one variable.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    k: u32,
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero(k: u32) -> Self {
        assert!(k >= 2, "weight below 2");
        Poly { k, coeffs: vec![Rational::zero(); (k - 1) as usize] }
    }

    /// Coefficients of `1, x, ...`; errors if the degree exceeds `k-2`.
    pub fn new(k: u32, coeffs: Vec<Rational>) -> Result<Self> {
        if k < 2 {
            return Err(invalid_weight(k, "weight must be at least 2"));
        }
        let mut p = Poly::zero(k);
        for (i, c) in coeffs.into_iter().enumerate() {
            if i > (k - 2) as usize {
                if c.is_zero() {
                    continue;
                }
                return Err(Error::InvalidArgument(format!("degree {i} exceeds k-2 = {}", k - 2)));
            }
            p.coeffs[i] = c;
        }
        Ok(p)
    }

    pub fn from_i64(k: u32, coeffs: &[i64]) -> Result<Self> {
        Self::new(k, coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn monomial(k: u32, i: usize) -> Self {
        let mut p = Poly::zero(k);
        p.coeffs[i] = Rational::one();
        p
    }

    /// `x^r (x - 2)^(k-2-r)`.
    pub fn x_pow_times_x_minus_2_pow(k: u32, r: u32) -> Self {
        let w = k - 2;
        assert!(r <= w);
        let mut p = Poly::zero(k);
        let s = w - r;
        for t in 0..=s {
            let c = binomial(s as i64, t as i64) * BigInt::from(-2).pow(s - t);
            p.coeffs[(r + t) as usize] = Rational::from(c);
        }
        p
    }

    pub fn weight(&self) -> u32 {
        self.k
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.k, other.k, "weights differ");
        Poly { k: self.k, coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&Rational::from(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly { k: self.k, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn is_even(&self) -> bool {
        self.coeffs.iter().enumerate().all(|(i, c)| i % 2 == 0 || c.is_zero())
    }

    pub fn is_odd(&self) -> bool {
        self.coeffs.iter().enumerate().all(|(i, c)| i % 2 == 1 || c.is_zero())
    }

    /// `F(X, Y) = Y^(k-2) f(X/Y)`.
    pub fn to_homogeneous(&self) -> BiPoly<Rational> {
        let w = (self.k - 2) as usize;
        let mut p = BiPoly::zero(w);
        for (i, c) in self.coeffs.iter().enumerate() {
            p.set(i, w - i, c.clone());
        }
        p
    }

    /// Inverse of [`Poly::to_homogeneous`]; errors on non-homogeneous input.
    pub fn from_homogeneous(k: u32, f: &BiPoly<Rational>) -> Result<Poly> {
        let w = (k - 2) as usize;
        let mut p = Poly::zero(k);
        for (i, j, c) in f.terms() {
            if c.is_zero() {
                continue;
            }
            if i + j != w {
                return Err(Error::InvalidArgument(format!("term X^{i}Y^{j} is not of degree {w}")));
            }
            p.coeffs[i] = c.clone();
        }
        Ok(p)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            parts.push(match (i, c.is_one()) {
                (0, _) => c.to_string(),
                (_, true) => mono,
                _ if *c == Rational::from(-1) => format!("-{mono}"),
                _ => format!("{c}*{mono}"),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
        }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[k={}]({self})", self.k)
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

/// Integer 2x2 matrix with nonzero determinant, up to sign.
///
/// Normalized so that `(c, d)` is lexicographically positive.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjMatrix {
    c: i64,
    d: i64,
    a: i64,
    b: i64,
}

impl ProjMatrix {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if a * d - b * c == 0 {
            return Err(Error::SingularMatrix);
        }
        let flip = c < 0 || (c == 0 && d < 0);
        Ok(if flip {
            ProjMatrix { a: -a, b: -b, c: -c, d: -d }
        } else {
            ProjMatrix { a, b, c, d }
        })
    }

    fn known(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::new(a, b, c, d).expect("nonsingular constant")
    }

    pub fn identity() -> Self {
        Self::known(1, 0, 0, 1)
    }
    pub fn t() -> Self {
        Self::known(1, 1, 0, 1)
    }
    pub fn s() -> Self {
        Self::known(0, -1, 1, 0)
    }
    pub fn epsilon() -> Self {
        Self::known(-1, 0, 0, 1)
    }
    pub fn delta() -> Self {
        Self::known(0, 1, 1, 0)
    }
    pub fn m() -> Self {
        Self::known(-1, -1, 2, 1)
    }
    /// `[[1,0],[-1,1]]`.
    pub fn t_prime() -> Self {
        Self::known(1, 0, -1, 1)
    }
    /// Transpose of `T`.
    pub fn t_transpose() -> Self {
        Self::known(1, 0, 1, 1)
    }

    pub fn entries(&self) -> [[i64; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }

    pub fn determinant(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn mul(&self, o: &ProjMatrix) -> ProjMatrix {
        Self::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
        .expect("product of nonsingular matrices")
    }

    pub fn product(ms: &[ProjMatrix]) -> ProjMatrix {
        ms.iter().fold(Self::identity(), |acc, m| acc.mul(m))
    }
}

impl fmt::Debug for ProjMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl Serialize for ProjMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries().serialize(serializer)
    }
}

/// Finite integer combination of projective matrices.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct GroupRingElement {
    terms: BTreeMap<ProjMatrix, i64>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        ProjMatrix::identity().into()
    }

    pub fn from_terms(terms: &[(i64, ProjMatrix)]) -> Self {
        let mut e = Self::zero();
        for &(c, m) in terms {
            e.add_term(m, c);
        }
        e
    }

    fn add_term(&mut self, m: ProjMatrix, c: i64) {
        let v = self.terms.entry(m).or_insert(0);
        *v += c;
        if *v == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ProjMatrix, &i64)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut e = self.clone();
        for (m, c) in &o.terms {
            e.add_term(*m, *c);
        }
        e
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-1))
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut e = Self::zero();
        for (m, v) in &self.terms {
            e.add_term(*m, v * c);
        }
        e
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut e = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                e.add_term(m1.mul(m2), c1 * c2);
            }
        }
        e
    }

    /// `1 - g`.
    pub fn one_minus(g: ProjMatrix) -> Self {
        Self::one().sub(&g.into())
    }

    /// `1 + g`.
    pub fn one_plus(g: ProjMatrix) -> Self {
        Self::one().add(&g.into())
    }
}

impl From<ProjMatrix> for GroupRingElement {
    fn from(m: ProjMatrix) -> Self {
        Self::from_terms(&[(1, m)])
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("{c}*{m:?}")).collect();
        write!(f, "{}", if parts.is_empty() { "0".to_string() } else { parts.join(" + ") })
    }
}

impl Serialize for GroupRingElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term {
            coeff: i64,
            matrix: ProjMatrix,
        }
        let terms: Vec<Term> = self.terms.iter().map(|(m, c)| Term { coeff: *c, matrix: *m }).collect();
        terms.serialize(serializer)
    }
}

fn check_weight(f: &Poly, k: u32) -> Result<()> {
    if k < 4 || k % 2 != 0 {
        return Err(invalid_weight(k, "slash action needs an even weight >= 4"));
    }
    if f.k != k {
        return Err(invalid_weight(k, format!("polynomial carries weight {}", f.k)));
    }
    Ok(())
}

/// `(cx+d)^(k-2) f((ax+b)/(cx+d))`.
pub fn slash(f: &Poly, g: &ProjMatrix, k: u32) -> Result<Poly> {
    check_weight(f, k)?;
    Ok(slash_unchecked(f, g))
}

fn slash_unchecked(f: &Poly, g: &ProjMatrix) -> Poly {
    let w = (f.k - 2) as usize;
    // powers of (ax+b) and (cx+d) as coefficient vectors
    let lin_pows = |p: i64, q: i64| -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::from(1)]];
        for n in 1..=w {
            let prev = &out[n - 1];
            let mut next = vec![BigInt::from(0); n + 1];
            for (i, c) in prev.iter().enumerate() {
                next[i] += c * q;
                next[i + 1] += c * p;
            }
            out.push(next);
        }
        out
    };
    let num = lin_pows(g.a, g.b);
    let den = lin_pows(g.c, g.d);
    let mut out = vec![Rational::zero(); w + 1];
    for (i, fi) in f.coeffs.iter().enumerate() {
        if fi.is_zero() {
            continue;
        }
        let a = &num[i];
        let b = &den[w - i];
        for (s, x) in a.iter().enumerate() {
            for (t, y) in b.iter().enumerate() {
                let v = x * y;
                if v != BigInt::from(0) {
                    out[s + t] += fi * &Rational::from(v);
                }
            }
        }
    }
    Poly { k: f.k, coeffs: out }
}

/// Linear extension of [`slash`] to the group ring.
pub fn slash_ring(f: &Poly, e: &GroupRingElement, k: u32) -> Result<Poly> {
    check_weight(f, k)?;
    let mut acc = Poly::zero(k);
    for (m, c) in e.terms() {
        acc = acc.add(&slash_unchecked(f, m).scale(&Rational::from(*c)));
    }
    Ok(acc)
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub pass: bool,
}

/// Checks the matrix identities used in the period relations, projectively.
pub fn verify_group_identities() -> Vec<IdentityCheck> {
    use ProjMatrix as P;
    let (t, s, e, d, m) = (P::t(), P::s(), P::epsilon(), P::delta(), P::m());
    let id = P::identity();
    let checks = [
        ("TSTST=S", P::product(&[t, s, t, s, t]) == s),
        ("TeT=e", P::product(&[t, e, t]) == e),
        ("eS=d", e.mul(&s) == d),
        ("de=S", d.mul(&e) == s),
        ("ed=S", e.mul(&d) == s),
        ("M^2=1", m.mul(&m) == id),
        ("(Te)^2=1", P::product(&[t, e, t, e]) == id),
    ];
    checks.iter().map(|(n, p)| IdentityCheck { name: n.to_string(), pass: *p }).collect()
}
