//! Parity labels shared by the series, the formal space and the numerics.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;
use crate::exact::Symbol;

/// The two level-2 flavours: `E` sums over all `u`, `O` carries `(-1)^u`.
/// For zeta values `E`/`O` restrict a summation index to even/odd integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Parity {
    #[serde(rename = "e")]
    E,
    #[serde(rename = "o")]
    O,
}

impl Parity {
    /// `1` for `E`, `(-1)^u` for `O`.
    pub fn sign(self, u: u64) -> i64 {
        match self {
            Parity::O if u % 2 == 1 => -1,
            _ => 1,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Parity::E => 'e',
            Parity::O => 'o',
        }
    }

    pub fn symbol(self, p: u32) -> Symbol {
        match self {
            Parity::E => Symbol::Ze(p),
            Parity::O => Symbol::Zo(p),
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Parity pattern of a double zeta value or double Eisenstein series:
/// `EO` means the first (larger) index is even and the second odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Kind {
    #[serde(rename = "eo")]
    EO,
    #[serde(rename = "oe")]
    OE,
    #[serde(rename = "oo")]
    OO,
}

impl Kind {
    pub const ALL: [Kind; 3] = [Kind::EO, Kind::OE, Kind::OO];

    pub fn parities(self) -> (Parity, Parity) {
        match self {
            Kind::EO => (Parity::E, Parity::O),
            Kind::OE => (Parity::O, Parity::E),
            Kind::OO => (Parity::O, Parity::O),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::EO => "eo",
            Kind::OE => "oe",
            Kind::OO => "oo",
        }
    }

    /// Position in the basis order `eo, oe, oo`.
    pub fn index(self) -> usize {
        match self {
            Kind::EO => 0,
            Kind::OE => 1,
            Kind::OO => 2,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "eo" => Ok(Kind::EO),
            "oe" => Ok(Kind::OE),
            "oo" => Ok(Kind::OO),
            _ => Err(Error::Parse { what: "kind (eo|oe|oo)", input: s.to_string() }),
        }
    }
}

impl FromStr for Parity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "e" => Ok(Parity::E),
            "o" => Ok(Parity::O),
            _ => Err(Error::Parse { what: "parity (e|o)", input: s.to_string() }),
        }
    }
}
