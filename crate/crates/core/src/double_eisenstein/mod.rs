//! Level 2 double Eisenstein series as truncated q-series, split into a
//! constant, a combinatorial (rational) and an imaginary (symbolic) stratum.
//!
//! Everything is normalized by `(2 pi i)^(-k)`: even single zeta values
//! become rational, odd ones become [`Symbol`]s.

pub mod lattice;
mod lemmas;
mod theorem3;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::eisenstein_q::{beta, g_series_with, gbar_series_with, phi_prefactor, DivisorTable};
use crate::error::{Error, Result};
use crate::exact::{binomial_q, QSeries, Rational, Symbol, SymbolicScalar};
use crate::numeric::{regularized_dzv, TaggedValue};
use crate::parity::{Kind, Parity};

pub use lemmas::{
    imag_generating_function, imag_generating_function_closed, verify_comb_lemma, verify_imag_lemma, LemmaCheck,
    LemmaReport,
};
pub use theorem3::{verify_theorem3, verify_theorem3_with, Failure, StratumCheck, Theorem3Report};
pub use lattice::{lattice_eval, qexp_eval, LatticeValue, QexpValue};

/// Memoized `g_r`, `gbar_r` blocks at one q-order, shared between threads.
pub struct SeriesBlocks {
    order: usize,
    table: DivisorTable,
    g: Mutex<HashMap<(Parity, u32), Arc<QSeries<Rational>>>>,
    gbar: Mutex<HashMap<(Parity, u32), Arc<QSeries<Rational>>>>,
}

impl SeriesBlocks {
    pub fn new(order: usize) -> Self {
        SeriesBlocks {
            order,
            table: DivisorTable::new(order.max(1)),
            g: Mutex::default(),
            gbar: Mutex::default(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn table(&self) -> &DivisorTable {
        &self.table
    }

    /// `g_r^{parity}` for `r >= 1`.
    pub fn g(&self, parity: Parity, r: u32) -> Arc<QSeries<Rational>> {
        assert!(r >= 1, "g_r needs r >= 1");
        if let Some(s) = self.g.lock().unwrap_or_else(|e| e.into_inner()).get(&(parity, r)) {
            return s.clone();
        }
        let s = Arc::new(g_series_with(&self.table, parity, r, self.order));
        self.g.lock().unwrap_or_else(|e| e.into_inner()).insert((parity, r), s.clone());
        s
    }

    /// `gbar_r^{parity}` for `r >= 0`.
    pub fn gbar(&self, parity: Parity, r: u32) -> Arc<QSeries<Rational>> {
        if let Some(s) = self.gbar.lock().unwrap_or_else(|e| e.into_inner()).get(&(parity, r)) {
            return s.clone();
        }
        let s = Arc::new(gbar_series_with(&self.table, parity, r, self.order));
        self.gbar.lock().unwrap_or_else(|e| e.into_inner()).insert((parity, r), s.clone());
        s
    }

    pub fn zero(&self) -> QSeries<Rational> {
        QSeries::zero(self.order)
    }

    /// The constants of `epsilon_{1,1}`: `alpha_1 = gbar_0^o`, `alpha_2 = -alpha_1`,
    /// `alpha_3 = 2 g_2^o`. These are the unique values (given `alpha_2 = -alpha_1`)
    /// for which the generating-function identities hold in degree 0.
    pub fn alpha(&self, i: u8) -> QSeries<Rational> {
        match i {
            1 => (*self.gbar(Parity::O, 0)).clone(),
            2 => self.gbar(Parity::O, 0).neg_series(),
            3 => self.g(Parity::O, 2).scale(&Rational::from(2)),
            _ => panic!("alpha index must be 1, 2 or 3"),
        }
    }

    /// The alternative constants `alpha_1 = gbar_0^o - gbar_0^e/2`,
    /// `alpha_3 = 4 g_2^o + gbar_0^e/2`, kept for comparison.
    pub fn alpha_alternative(&self, i: u8) -> QSeries<Rational> {
        let half = Rational::new(1, 2);
        let a1 = self.gbar(Parity::O, 0).sub_series(&self.gbar(Parity::E, 0).scale(&half));
        match i {
            1 => a1,
            2 => a1.neg_series(),
            3 => self.g(Parity::O, 2).scale(&Rational::from(4)).add_series(&self.gbar(Parity::E, 0).scale(&half)),
            _ => panic!("alpha index must be 1, 2 or 3"),
        }
    }
}

fn check_indices(r: u32, s: u32) -> Result<()> {
    if r == 0 || s == 0 {
        return Err(Error::InvalidIndex(format!("indices must be positive, got ({r},{s})")));
    }
    Ok(())
}

fn check_not_11(r: u32, s: u32) -> Result<()> {
    check_indices(r, s)?;
    if r == 1 && s == 1 {
        return Err(Error::InvalidIndex("(1,1) is excluded".into()));
    }
    Ok(())
}

/// `g_{r,s}^{ab} = sum_{m>m'>0} phi_r^a(q^(2m)) phi_s^b(q^(2m'))`; any pair of letters.
pub fn g2_series(first: Parity, second: Parity, r: u32, s: u32, order: usize) -> Result<QSeries<Rational>> {
    check_indices(r, s)?;
    Ok(g2_series_raw(first, second, r, s, order))
}

pub(crate) fn g2_series_raw(first: Parity, second: Parity, r: u32, s: u32, order: usize) -> QSeries<Rational> {
    let pw = |e: u32| -> Vec<BigInt> { (0..=order).map(|u| BigInt::from(u).pow(e)).collect() };
    let (pr, ps) = (pw(r - 1), pw(s - 1));
    let mut acc = vec![BigInt::zero(); order + 1];
    // exponent u m + v m' with m > m' >= 1 is at least 2 m' + 1
    let mut mp = 1;
    while 2 * mp + 1 <= order {
        let mut v = 1;
        while v * mp + (mp + 1) <= order {
            let base = v * mp;
            let right = BigInt::from(second.sign(v as u64)) * &ps[v];
            let mut m = mp + 1;
            while base + m <= order {
                let mut u = 1;
                while base + u * m <= order {
                    let left = BigInt::from(first.sign(u as u64)) * &pr[u];
                    acc[base + u * m] += &left * &right;
                    u += 1;
                }
                m += 1;
            }
            v += 1;
        }
        mp += 1;
    }
    let c = phi_prefactor(r) * phi_prefactor(s);
    QSeries::from_coeffs(order, acc.into_iter().map(|a| &c * &Rational::from(a)).collect())
}

/// One term `coeff * Z(p) * g_h^{g}` of the bracket shared by `I` and `beta`,
/// where `Z(p)` stands for `zeta~^{constant}(p)` (a symbol for odd `p`, the
/// rational `beta_p^{constant}` in the `beta` series).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BracketTerm {
    pub p: u32,
    pub constant: Parity,
    pub g: Parity,
    pub h: u32,
    pub coeff: Rational,
}

/// All nonzero bracket terms with `p + h = r + s`, `p, h >= 1`.
pub fn bracket_terms(kind: Kind, r: u32, s: u32) -> Vec<BracketTerm> {
    let k = r + s;
    let mut out = Vec::new();
    for p in 1..k {
        let h = k - p;
        let sign = |e: u32| if e % 2 == 0 { Rational::one() } else { -Rational::one() };
        let a = sign(s) * binomial_q(p as i64 - 1, s as i64 - 1);
        let b = sign(p + r) * binomial_q(p as i64 - 1, r as i64 - 1);
        let d = if p == s { Rational::one() } else { Rational::zero() };
        use Parity::{E, O};
        let terms = match kind {
            Kind::EO => vec![(O, E, &a + &d), (O, O, b)],
            Kind::OE => vec![(O, O, a), (E, O, d), (O, E, b)],
            Kind::OO => vec![(E, O, &a + &b), (O, O, d)],
        };
        for (constant, g, coeff) in terms {
            if !coeff.is_zero() {
                out.push(BracketTerm { p, constant, g, h, coeff });
            }
        }
    }
    out
}

/// `I_{r,s}^{kind}`: the bracket over odd `p` with symbolic `zeta~(p)`.
pub fn i_series(kind: Kind, r: u32, s: u32, order: usize) -> Result<QSeries<SymbolicScalar>> {
    check_not_11(r, s)?;
    Ok(i_series_with(&SeriesBlocks::new(order), kind, r, s))
}

pub fn i_series_with(b: &SeriesBlocks, kind: Kind, r: u32, s: u32) -> QSeries<SymbolicScalar> {
    let mut out = QSeries::zero_symbolic(b.order());
    for t in bracket_terms(kind, r, s).into_iter().filter(|t| t.p % 2 == 1) {
        let sym = SymbolicScalar::symbol_times(t.constant.symbol(t.p), t.coeff.clone());
        out = out.add_series(&b.g(t.g, t.h).tensor(&sym));
    }
    out
}

/// `beta_{r,s}^{kind}`: the bracket over all `p` with `beta_p^{e|o}`.
pub fn beta2_series(kind: Kind, r: u32, s: u32, order: usize) -> Result<QSeries<Rational>> {
    check_indices(r, s)?;
    Ok(beta2_series_with(&SeriesBlocks::new(order), kind, r, s))
}

pub fn beta2_series_with(b: &SeriesBlocks, kind: Kind, r: u32, s: u32) -> QSeries<Rational> {
    let mut out = b.zero();
    for t in bracket_terms(kind, r, s) {
        let c = &t.coeff * &beta(t.constant, t.p);
        if !c.is_zero() {
            out = out.add_series(&b.g(t.g, t.h).scale(&c));
        }
    }
    out
}

/// `epsilon_{r,s}^{kind}`, nonzero only when `r <= 2` or `s = 1`.
pub fn epsilon_series(kind: Kind, r: u32, s: u32, order: usize) -> Result<QSeries<Rational>> {
    check_indices(r, s)?;
    Ok(epsilon_series_with(&SeriesBlocks::new(order), kind, r, s))
}

pub fn epsilon_series_with(b: &SeriesBlocks, kind: Kind, r: u32, s: u32) -> QSeries<Rational> {
    let (first, second) = kind.parities();
    let mut out = b.zero();
    if r == 2 {
        out = out.add_series(&b.gbar(second, s));
    }
    if r == 1 {
        out = out.sub_series(&b.gbar(second, s - 1));
    }
    if s == 1 {
        out = out.add_series(&b.gbar(first, r - 1)).add_series(&b.g(first, r));
    }
    if r == 1 && s == 1 {
        let i = match kind {
            Kind::EO => 1,
            Kind::OE => 2,
            Kind::OO => 3,
        };
        out = out.add_series(&b.alpha(i));
    }
    out
}

/// `C = g_{r,s} + beta_{r,s} + epsilon_{r,s}/4`.
pub fn c_series(kind: Kind, r: u32, s: u32, order: usize) -> Result<QSeries<Rational>> {
    check_indices(r, s)?;
    Ok(c_series_with(&SeriesBlocks::new(order), kind, r, s))
}

pub fn c_series_with(b: &SeriesBlocks, kind: Kind, r: u32, s: u32) -> QSeries<Rational> {
    let (first, second) = kind.parities();
    g2_series_raw(first, second, r, s, b.order())
        .add_series(&beta2_series_with(b, kind, r, s))
        .add_series(&epsilon_series_with(b, kind, r, s).scale(&Rational::new(1, 4)))
}

/// The constant term `zeta~^{kind}(r,s)`, optionally with the numeric value
/// of the unnormalized (regularized) double zeta value.
#[derive(Clone, Debug)]
pub struct ConstantTerm {
    pub kind: Kind,
    pub r: u32,
    pub s: u32,
    pub value: Option<TaggedValue>,
}

impl ConstantTerm {
    pub fn tag(&self) -> String {
        format!("zeta~^{}({},{})", self.kind, self.r, self.s)
    }
}

impl Serialize for ConstantTerm {
    fn serialize<Z: Serializer>(&self, serializer: Z) -> std::result::Result<Z::Ok, Z::Error> {
        let mut st = serializer.serialize_struct("ConstantTerm", 3)?;
        st.serialize_field("tag", &self.tag())?;
        st.serialize_field("normalization", &format!("(2 pi i)^-{}", self.r + self.s))?;
        st.serialize_field("value", &self.value)?;
        st.end()
    }
}

/// `G_{r,s}^{kind} = zeta~^{kind}(r,s) + C_{r,s}^{kind} + I_{r,s}^{kind}`.
#[derive(Clone, Debug)]
pub struct TriPartSeries {
    pub kind: Kind,
    pub r: u32,
    pub s: u32,
    pub constant: ConstantTerm,
    pub comb: QSeries<Rational>,
    pub imag: QSeries<SymbolicScalar>,
}

impl TriPartSeries {
    pub fn order(&self) -> usize {
        self.comb.order()
    }

    /// `comb + imag` as one symbolic series (the constant term is left out).
    pub fn q_part(&self) -> QSeries<SymbolicScalar> {
        self.comb.map(|c| SymbolicScalar::from_rational(c.clone())).add_series(&self.imag)
    }

    /// Coefficient series of each symbol in the imaginary stratum.
    pub fn imag_by_symbol(&self) -> Vec<(Symbol, QSeries<Rational>)> {
        symbol_components(&self.imag)
    }
}

/// Splits a symbolic series into one rational series per symbol, ordered by symbol.
pub fn symbol_components(s: &QSeries<SymbolicScalar>) -> Vec<(Symbol, QSeries<Rational>)> {
    let mut map: std::collections::BTreeMap<Symbol, QSeries<Rational>> = Default::default();
    for (n, c) in s.coeffs().iter().enumerate() {
        for (sym, v) in c.terms() {
            map.entry(*sym).or_insert_with(|| QSeries::zero(s.order())).set(n, v.clone());
        }
    }
    map.into_iter().collect()
}

struct ImagEntry<'a>(&'a Symbol, &'a QSeries<Rational>);

impl Serialize for ImagEntry<'_> {
    fn serialize<Z: Serializer>(&self, serializer: Z) -> std::result::Result<Z::Ok, Z::Error> {
        let (name, p) = match self.0 {
            Symbol::Zo(p) => ("Zo", p),
            Symbol::Ze(p) => ("Ze", p),
            Symbol::Z(p) => ("Z", p),
        };
        let mut m = serializer.serialize_map(Some(3))?;
        m.serialize_entry("symbol", name)?;
        m.serialize_entry("p", p)?;
        m.serialize_entry("coeffs", self.1.coeffs())?;
        m.end()
    }
}

impl Serialize for TriPartSeries {
    fn serialize<Z: Serializer>(&self, serializer: Z) -> std::result::Result<Z::Ok, Z::Error> {
        let parts = self.imag_by_symbol();
        let imag: Vec<ImagEntry> = parts.iter().map(|(s, q)| ImagEntry(s, q)).collect();
        let mut st = serializer.serialize_struct("TriPartSeries", 7)?;
        st.serialize_field("kind", &self.kind)?;
        st.serialize_field("r", &self.r)?;
        st.serialize_field("s", &self.s)?;
        st.serialize_field("order", &self.order())?;
        st.serialize_field("constant", &self.constant)?;
        st.serialize_field("comb", self.comb.coeffs())?;
        st.serialize_field("imag", &imag)?;
        st.end()
    }
}

/// Assembles all three strata; with `digits` the constant term carries a numeric value.
pub fn g_series_double(kind: Kind, r: u32, s: u32, order: usize, digits: Option<u32>) -> Result<TriPartSeries> {
    check_not_11(r, s)?;
    let b = SeriesBlocks::new(order);
    g_series_double_with(&b, kind, r, s, digits)
}

pub fn g_series_double_with(
    b: &SeriesBlocks,
    kind: Kind,
    r: u32,
    s: u32,
    digits: Option<u32>,
) -> Result<TriPartSeries> {
    check_not_11(r, s)?;
    let value = match digits {
        Some(d) => Some(TaggedValue {
            tag: format!("zeta^{kind}({r},{s})"),
            value: regularized_dzv(kind, r, s, d)?,
            digits: d,
        }),
        None => None,
    };
    Ok(TriPartSeries {
        kind,
        r,
        s,
        constant: ConstantTerm { kind, r, s, value },
        comb: c_series_with(b, kind, r, s),
        imag: i_series_with(b, kind, r, s),
    })
}
