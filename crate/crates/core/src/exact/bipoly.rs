use std::fmt;

use super::{binomial, Rational, RingScalar, Scalar};
use crate::error::{Error, Result};

/// Polynomial in `X, Y` over a coefficient module `S`, truncated at total
/// degree `degree`. Terms of higher total degree are discarded.
#[derive(Clone, PartialEq)]
pub struct BiPoly<S> {
    degree: usize,
    zero: S,
    // rows[i][j] is the coefficient of X^i Y^j, with i + j <= degree
    rows: Vec<Vec<S>>,
}

impl<S: Scalar> BiPoly<S> {
    pub fn zero_with(degree: usize, zero: &S) -> Self {
        let z = zero.zero_like();
        BiPoly {
            degree,
            rows: (0..=degree).map(|i| vec![z.clone(); degree - i + 1]).collect(),
            zero: z,
        }
    }

    pub fn degree_bound(&self) -> usize {
        self.degree
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        if i + j > self.degree {
            return &self.zero;
        }
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: S) {
        if i + j <= self.degree {
            self.rows[i][j] = value;
        }
    }

    pub fn add_term(&mut self, i: usize, j: usize, value: &S) {
        if i + j <= self.degree {
            self.rows[i][j].add_assign_ref(value);
        }
    }

    /// `sum_i coeffs[i] X^i`.
    pub fn from_x_coeffs(degree: usize, coeffs: &[S], zero: &S) -> Self {
        let mut p = Self::zero_with(degree, zero);
        for (i, c) in coeffs.iter().enumerate().take(degree + 1) {
            p.rows[i][0] = c.clone();
        }
        p
    }

    /// `sum_j coeffs[j] Y^j`.
    pub fn from_y_coeffs(degree: usize, coeffs: &[S], zero: &S) -> Self {
        let mut p = Self::zero_with(degree, zero);
        for (j, c) in coeffs.iter().enumerate().take(degree + 1) {
            p.rows[0][j] = c.clone();
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms().all(|(_, _, c)| c.is_zero())
    }

    /// All stored `(i, j, coefficient)` triples, ordered by `i` then `j`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, c)| (i, j, c)))
    }

    pub fn truncate(&self, degree: usize) -> Self {
        let mut p = Self::zero_with(degree, &self.zero);
        for (i, j, c) in self.terms() {
            p.set(i, j, c.clone());
        }
        p
    }

    fn zip(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        let d = self.degree.min(other.degree);
        let mut p = Self::zero_with(d, &self.zero);
        for i in 0..=d {
            for j in 0..=(d - i) {
                p.rows[i][j] = f(&self.rows[i][j], &other.rows[i][j]);
            }
        }
        p
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.add_ref(b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.sub_ref(b))
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg_ref())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|x| x.scale(c))
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> BiPoly<T> {
        let zero = f(&self.zero).zero_like();
        BiPoly {
            degree: self.degree,
            rows: self.rows.iter().map(|r| r.iter().map(&f).collect()).collect(),
            zero,
        }
    }

    /// Multiplies by a rational polynomial.
    pub fn mul_rational(&self, other: &BiPoly<Rational>) -> Self {
        let d = self.degree.min(other.degree);
        let mut p = Self::zero_with(d, &self.zero);
        for (i, j, c) in self.terms() {
            if c.is_zero() || i + j > d {
                continue;
            }
            for (k, l, r) in other.terms() {
                if r.is_zero() || i + j + k + l > d {
                    continue;
                }
                p.rows[i + k][j + l].add_assign_ref(&c.scale(r));
            }
        }
        p
    }

    /// Multiplies by `X^a Y^b`.
    pub fn mul_monomial(&self, a: usize, b: usize) -> Self {
        let mut p = Self::zero_with(self.degree, &self.zero);
        for (i, j, c) in self.terms() {
            p.set(i + a, j + b, c.clone());
        }
        p
    }

    /// Linear change of variables `X -> ax X + ay Y`, `Y -> bx X + by Y`.
    pub fn substitute_linear(&self, x_image: (i64, i64), y_image: (i64, i64)) -> Self {
        let d = self.degree;
        // powers of the image forms, each homogeneous of its degree
        let powers = |form: (i64, i64)| -> Vec<Vec<Rational>> {
            (0..=d)
                .map(|n| {
                    (0..=n)
                        .map(|p| {
                            // coefficient of X^p Y^(n-p) in (a X + b Y)^n
                            let c = binomial(n as i64, p as i64)
                                * num_bigint::BigInt::from(form.0).pow(p as u32)
                                * num_bigint::BigInt::from(form.1).pow((n - p) as u32);
                            Rational::from(c)
                        })
                        .collect()
                })
                .collect()
        };
        let xp = powers(x_image);
        let yp = powers(y_image);
        let mut out = Self::zero_with(d, &self.zero);
        for (i, j, c) in self.terms() {
            if c.is_zero() {
                continue;
            }
            for (p, a) in xp[i].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (q, b) in yp[j].iter().enumerate() {
                    if b.is_zero() {
                        continue;
                    }
                    // X^p Y^(i-p) * X^q Y^(j-q)
                    out.rows[p + q][i + j - p - q].add_assign_ref(&c.scale(&(a * b)));
                }
            }
        }
        out
    }

    /// Substitution by arbitrary polynomial images, which must be
    /// homogeneous linear forms with integer coefficients.
    pub fn substitute(&self, x_image: &BiPoly<Rational>, y_image: &BiPoly<Rational>) -> Result<Self> {
        let fx = linear_form(x_image)?;
        let fy = linear_form(y_image)?;
        Ok(self.substitute_linear(fx, fy))
    }

    /// Swaps the variables.
    pub fn swap(&self) -> Self {
        let mut p = Self::zero_with(self.degree, &self.zero);
        for (i, j, c) in self.terms() {
            p.rows[j][i] = c.clone();
        }
        p
    }

    /// Exact quotient by `X`; the result has degree bound one less.
    pub fn div_by_x(&self) -> Result<Self> {
        if self.degree == 0 {
            return Err(Error::InvalidArgument("cannot divide a degree-0 truncation".into()));
        }
        if let Some(j) = (0..=self.degree).find(|&j| !self.rows[0][j].is_zero()) {
            return Err(Error::InexactDivision(format!("coefficient of Y^{j} is nonzero")));
        }
        let mut p = Self::zero_with(self.degree - 1, &self.zero);
        for (i, j, c) in self.terms() {
            if i >= 1 {
                p.rows[i - 1][j] = c.clone();
            }
        }
        Ok(p)
    }

    /// Exact quotient by `X - Y`; the result has degree bound one less.
    pub fn div_by_x_minus_y(&self) -> Result<Self> {
        if self.degree == 0 {
            return Err(Error::InvalidArgument("cannot divide a degree-0 truncation".into()));
        }
        let mut p = Self::zero_with(self.degree - 1, &self.zero);
        if !self.rows[0][0].is_zero() {
            return Err(Error::InexactDivision("nonzero constant term".into()));
        }
        for n in 1..=self.degree {
            // P_n = (X - Y) Q_{n-1}; coefficient of X^i Y^(n-i) is q_{i-1} - q_i
            let mut prev = self.zero.zero_like();
            for i in 0..n {
                let q_i = prev.sub_ref(&self.rows[i][n - i]);
                p.rows[i][n - 1 - i] = q_i.clone();
                prev = q_i;
            }
            if prev != self.rows[n][0] {
                return Err(Error::InexactDivision(format!("remainder in degree {n}")));
            }
        }
        Ok(p)
    }
}

impl<S: RingScalar> BiPoly<S> {
    pub fn mul(&self, other: &Self) -> Self {
        let d = self.degree.min(other.degree);
        let mut p = Self::zero_with(d, &self.zero);
        for (i, j, c) in self.terms() {
            if c.is_zero() || i + j > d {
                continue;
            }
            for (k, l, r) in other.terms() {
                if r.is_zero() || i + j + k + l > d {
                    continue;
                }
                p.rows[i + k][j + l].add_assign_ref(&c.mul_ref(r));
            }
        }
        p
    }
}

impl BiPoly<Rational> {
    pub fn zero(degree: usize) -> Self {
        Self::zero_with(degree, &Rational::zero())
    }

    pub fn monomial(degree: usize, i: usize, j: usize, c: Rational) -> Self {
        let mut p = Self::zero(degree);
        p.set(i, j, c);
        p
    }

    /// `a X + b Y`.
    pub fn linear(degree: usize, a: i64, b: i64) -> Self {
        let mut p = Self::zero(degree);
        p.set(1, 0, Rational::from(a));
        p.set(0, 1, Rational::from(b));
        p
    }
}

fn linear_form(p: &BiPoly<Rational>) -> Result<(i64, i64)> {
    for (i, j, c) in p.terms() {
        if i + j != 1 && !c.is_zero() {
            return Err(Error::NonlinearSubstitution(format!("term X^{i} Y^{j}")));
        }
    }
    let to_i64 = |c: &Rational| -> Result<i64> {
        c.to_integer()
            .and_then(|n| i64::try_from(n).ok())
            .ok_or_else(|| Error::NonlinearSubstitution(format!("non-integral coefficient {c}")))
    };
    Ok((to_i64(p.get(1, 0))?, to_i64(p.get(0, 1))?))
}

impl<S: Scalar> fmt::Debug for BiPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, j, c) in self.terms() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})X^{i}Y^{j}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rp(terms: &[(usize, usize, i64)], d: usize) -> BiPoly<Rational> {
        let mut p = BiPoly::zero(d);
        for &(i, j, c) in terms {
            p.add_term(i, j, &Rational::from(c));
        }
        p
    }

    #[test]
    fn substitution_expands_binomially() {
        // X^2 with X -> X + Y gives X^2 + 2XY + Y^2
        let p = rp(&[(2, 0, 1)], 4);
        let q = p.substitute_linear((1, 1), (0, 1));
        assert_eq!(q, rp(&[(2, 0, 1), (1, 1, 2), (0, 2, 1)], 4));
    }

    #[test]
    fn nonlinear_substitution_rejected() {
        let p = rp(&[(1, 1, 1)], 4);
        let bad = rp(&[(2, 0, 1)], 4);
        let y = BiPoly::linear(4, 0, 1);
        assert!(matches!(p.substitute(&bad, &y), Err(Error::NonlinearSubstitution(_))));
        let affine = rp(&[(0, 0, 1), (1, 0, 1)], 4);
        assert!(p.substitute(&affine, &y).is_err());
        assert!(p.substitute(&BiPoly::linear(4, 1, 1), &y).is_ok());
    }

    #[test]
    fn division_by_x_minus_y() {
        // X^3 - Y^3 = (X - Y)(X^2 + XY + Y^2)
        let p = rp(&[(3, 0, 1), (0, 3, -1)], 5);
        let q = p.div_by_x_minus_y().unwrap();
        assert_eq!(q, rp(&[(2, 0, 1), (1, 1, 1), (0, 2, 1)], 4));
        let r = rp(&[(3, 0, 1), (0, 3, 1)], 5);
        assert!(matches!(r.div_by_x_minus_y(), Err(Error::InexactDivision(_))));
    }

    #[test]
    fn division_by_x() {
        let p = rp(&[(1, 0, 2), (2, 3, 1)], 6);
        assert_eq!(p.div_by_x().unwrap(), rp(&[(0, 0, 2), (1, 3, 1)], 5));
        assert!(rp(&[(0, 1, 1)], 3).div_by_x().is_err());
    }

    #[test]
    fn multiplication_truncates() {
        let p = rp(&[(1, 0, 1), (0, 1, 1)], 3);
        let sq = p.mul(&p).mul(&p).mul(&p);
        assert!(sq.is_zero());
        let cube = p.mul(&p).mul(&p);
        assert_eq!(cube.get(1, 2), &Rational::from(3));
    }
}
