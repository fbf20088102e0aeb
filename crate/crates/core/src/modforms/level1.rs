//! Double Eisenstein series for `SL_2(Z)`:
//!
//! `G_{r,s} = zeta~(r,s) + g_{r,s}(q) + sum_{p+h=k, p>1} B(p) zeta~(p) g_h(q)`,
//! `B(p) = (-1)^s C(p-1,s-1) + (-1)^(p+r) C(p-1,r-1) + [p = s]`.
//!
//! For even `p` the factor `zeta~(p) = -B_p/(2 p!)` is rational and the term
//! goes to the combinatorial stratum; odd `p` gives the symbol `Z(p)`.

use num_bigint::BigInt;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::double_eisenstein::symbol_components;
use crate::eisenstein_q::{factorial_q, zeta_tilde_even, DivisorTable};
use crate::error::{Error, Result};
use crate::exact::{binomial_q, QSeries, Rational, Symbol, SymbolicScalar};

#[derive(Clone, Debug)]
pub struct Level1Series {
    pub r: u32,
    pub s: u32,
    pub comb: QSeries<Rational>,
    pub imag: QSeries<SymbolicScalar>,
}

impl Level1Series {
    pub fn weight(&self) -> u32 {
        self.r + self.s
    }

    pub fn order(&self) -> usize {
        self.comb.order()
    }

    pub fn constant_tag(&self) -> String {
        format!("zeta~({},{})", self.r, self.s)
    }

    pub fn imag_by_symbol(&self) -> Vec<(Symbol, QSeries<Rational>)> {
        symbol_components(&self.imag)
    }
}

impl Serialize for Level1Series {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let imag: Vec<(String, Vec<Rational>)> = self
            .imag_by_symbol()
            .into_iter()
            .map(|(sym, q)| (sym.to_string(), q.coeffs().to_vec()))
            .collect();
        let mut st = serializer.serialize_struct("Level1Series", 6)?;
        st.serialize_field("r", &self.r)?;
        st.serialize_field("s", &self.s)?;
        st.serialize_field("order", &self.order())?;
        st.serialize_field("constant", &self.constant_tag())?;
        st.serialize_field("comb", self.comb.coeffs())?;
        st.serialize_field("imag", &imag)?;
        st.end()
    }
}

/// `g_h(q) = (-1)^h/(h-1)! sum sigma_(h-1)(n) q^n`.
pub fn g1_series(table: &DivisorTable, h: u32, order: usize) -> QSeries<Rational> {
    let c = Rational::from(if h % 2 == 0 { 1 } else { -1 }) / factorial_q(h - 1);
    let mut s = QSeries::zero(order);
    for n in 1..=order.min(table.max()) {
        s.set(n, &c * &Rational::from(table.sigma(h - 1, n)));
    }
    s
}

/// `g_{r,s}(q) = (-1)^(r+s)/((r-1)!(s-1)!) sum_{m>n>0, u,v>0} u^(r-1) v^(s-1) q^(um+vn)`.
pub fn g1_double(r: u32, s: u32, order: usize) -> QSeries<Rational> {
    let mut acc = vec![BigInt::from(0); order + 1];
    for n in 1..order {
        let mut v = 1;
        while v * n < order {
            let vs = BigInt::from(v).pow(s - 1);
            let rest = order - v * n;
            for m in n + 1..=rest {
                let mut u = 1;
                while u * m <= rest {
                    acc[u * m + v * n] += BigInt::from(u).pow(r - 1) * &vs;
                    u += 1;
                }
            }
            v += 1;
        }
    }
    let c = Rational::from(if (r + s) % 2 == 0 { 1 } else { -1 }) / (factorial_q(r - 1) * factorial_q(s - 1));
    QSeries::from_coeffs(order, acc.into_iter().map(|x| &c * &Rational::from(x)).collect())
}

pub fn bracket(r: u32, s: u32, p: u32) -> Rational {
    let sign = |e: u32| Rational::from(if e % 2 == 0 { 1 } else { -1 });
    let mut b = sign(s) * binomial_q(p as i64 - 1, s as i64 - 1) + sign(p + r) * binomial_q(p as i64 - 1, r as i64 - 1);
    if p == s {
        b = b + Rational::one();
    }
    b
}

pub fn level1_double_eisenstein(r: u32, s: u32, order: usize) -> Result<Level1Series> {
    if r < 3 || s < 2 {
        return Err(Error::Divergent(format!("level 1 double Eisenstein series need r >= 3, s >= 2, got ({r},{s})")));
    }
    let k = r + s;
    let table = DivisorTable::new(order.max(1));
    let mut comb = g1_double(r, s, order);
    let mut imag = QSeries::zero_symbolic(order);
    for p in 2..k {
        let b = bracket(r, s, p);
        if b.is_zero() {
            continue;
        }
        let g = g1_series(&table, k - p, order);
        if p % 2 == 0 {
            comb = comb.add_series(&g.scale(&(&b * &zeta_tilde_even(p))));
        } else {
            imag = imag.add_series(&g.tensor(&SymbolicScalar::symbol_times(Symbol::Z(p), b)));
        }
    }
    Ok(Level1Series { r, s, comb, imag })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_lattice_term() {
        let g = g1_double(3, 2, 5);
        assert_eq!(g.coeff(3), &Rational::new(-1, 2));
        assert!(g.coeff(1).is_zero() && g.coeff(2).is_zero());
    }

    #[test]
    fn imag_symbols_of_g66() {
        let g = level1_double_eisenstein(6, 6, 10).unwrap();
        let syms: Vec<Symbol> = g.imag_by_symbol().into_iter().map(|(s, _)| s).collect();
        for s in &syms {
            let Symbol::Z(p) = s else { panic!("{s:?}") };
            assert!([3, 5, 7, 9].contains(p));
        }
    }

    #[test]
    fn divergent_rejected() {
        assert!(level1_double_eisenstein(2, 4, 5).is_err());
        assert!(level1_double_eisenstein(4, 1, 5).is_err());
    }

    #[test]
    fn delta_term_only_at_s() {
        assert_eq!(bracket(6, 6, 6), Rational::from(3));
        assert_eq!(bracket(4, 8, 8), Rational::from(37));
        assert_eq!(bracket(4, 8, 7), Rational::from(-20));
    }
}
