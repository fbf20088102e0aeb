use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use super::{Rational, Scalar};

/// Transcendental constants that stay symbolic in q-expansions.
///
/// `Zo(p)` and `Ze(p)` stand for the odd/even level-2 zeta values at odd `p`
/// (regularized at `p = 1`); `Z(p)` is the level-1 value `zeta(p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "symbol", content = "p")]
pub enum Symbol {
    Zo(u32),
    Ze(u32),
    Z(u32),
}

impl Symbol {
    pub fn weight(&self) -> u32 {
        match *self {
            Symbol::Zo(p) | Symbol::Ze(p) | Symbol::Z(p) => p,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Zo(p) => write!(f, "Zo({p})"),
            Symbol::Ze(p) => write!(f, "Ze({p})"),
            Symbol::Z(p) => write!(f, "Z({p})"),
        }
    }
}

/// `rational + sum c_i * symbol_i` with exact rational `c_i`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SymbolicScalar {
    rational: Rational,
    terms: BTreeMap<Symbol, Rational>,
}

impl SymbolicScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_rational(r: Rational) -> Self {
        SymbolicScalar { rational: r, terms: BTreeMap::new() }
    }

    pub fn symbol(s: Symbol) -> Self {
        Self::symbol_times(s, Rational::one())
    }

    pub fn symbol_times(s: Symbol, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(s, c);
        }
        SymbolicScalar { rational: Rational::zero(), terms }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rational
    }

    pub fn coefficient(&self, s: Symbol) -> Rational {
        self.terms.get(&s).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Symbol, &Rational)> {
        self.terms.iter()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.terms.keys().copied()
    }

    pub fn is_purely_symbolic(&self) -> bool {
        self.rational.is_zero()
    }

    fn add_term(&mut self, s: Symbol, c: &Rational) {
        let entry = self.terms.entry(s).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&s);
        }
    }
}

impl From<Rational> for SymbolicScalar {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl From<Symbol> for SymbolicScalar {
    fn from(s: Symbol) -> Self {
        Self::symbol(s)
    }
}

impl Scalar for SymbolicScalar {
    fn zero_like(&self) -> Self {
        Self::zero()
    }

    fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.terms.is_empty()
    }

    fn add_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_ref(other);
        out
    }

    fn sub_ref(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.sub_assign_ref(other);
        out
    }

    fn neg_ref(&self) -> Self {
        self.scale(&Rational::from(-1))
    }

    fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SymbolicScalar {
            rational: &self.rational * c,
            terms: self.terms.iter().map(|(s, v)| (*s, v * c)).collect(),
        }
    }

    fn add_assign_ref(&mut self, other: &Self) {
        self.rational += &other.rational;
        for (s, c) in &other.terms {
            self.add_term(*s, c);
        }
    }

    fn sub_assign_ref(&mut self, other: &Self) {
        self.rational -= &other.rational;
        for (s, c) in &other.terms {
            self.add_term(*s, &-c);
        }
    }
}

impl fmt::Display for SymbolicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if !self.rational.is_zero() {
            parts.push(self.rational.to_string());
        }
        for (s, c) in &self.terms {
            if c.is_one() {
                parts.push(s.to_string());
            } else {
                parts.push(format!("{c}*{s}"));
            }
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for SymbolicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Serialized as `{"rational": "p/q", "Zo(3)": "c", ...}`.
impl Serialize for SymbolicScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(1 + self.terms.len()))?;
        map.serialize_entry("rational", &self.rational)?;
        for (s, c) in &self.terms {
            map.serialize_entry(&s.to_string(), c)?;
        }
        map.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_removes_symbols() {
        let a = SymbolicScalar::symbol(Symbol::Zo(3));
        let b = a.scale(&Rational::new(1, 2));
        let c = a.sub_ref(&b).sub_ref(&b);
        assert!(c.is_zero());
        assert_eq!(c.symbols().count(), 0);
    }

    #[test]
    fn display_and_json() {
        let mut a = SymbolicScalar::from_rational(Rational::new(1, 4));
        a.add_assign_ref(&SymbolicScalar::symbol_times(Symbol::Ze(5), Rational::from(-2)));
        assert_eq!(a.to_string(), "1/4 + -2*Ze(5)");
        let j = serde_json::to_string(&a).unwrap();
        assert_eq!(j, r#"{"rational":"1/4","Ze(5)":"-2"}"#);
        let s = serde_json::to_string(&Symbol::Zo(3)).unwrap();
        assert_eq!(s, r#"{"symbol":"Zo","p":3}"#);
    }
}
