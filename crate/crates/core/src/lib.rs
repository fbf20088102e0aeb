//! Exact and numeric machinery for level-2 double zeta values.
//!
//! The crate covers truncated q-series of level-2 (double) Eisenstein series,
//! the formal double zeta space with its double shuffle relations, period
//! polynomials for the Hecke congruence subgroup of level 2, and high precision
//! evaluation of the level-2 multiple zeta values that appear as constant
//! terms.
//!
//! All algebra is exact over `Q`; the only floating point code lives in
//! [`numeric`] (arbitrary precision fixed point) and in the lattice-sum
//! oracle of [`double_eisenstein`].

pub mod error;
pub mod parity;
pub mod exact;
pub mod poly_action;
pub mod eisenstein_q;
pub mod double_eisenstein;
pub mod formal_dzspace;
pub mod period_poly;
pub mod modforms;
pub mod numeric;

pub use error::{Error, Result};
pub use parity::{Kind, Parity};
pub use exact::{
    BiPoly, QMatrix, QSeries, Rational, RingScalar, Scalar, Symbol, SymbolicScalar,
};
pub use poly_action::{GroupRingElement, Poly, ProjMatrix};
pub use eisenstein_q::{EisensteinKind, EisensteinSeries};
pub use double_eisenstein::{ConstantTerm, TriPartSeries};
pub use formal_dzspace::{Certified, DZVector, RelationSet};
pub use period_poly::{Flavor, Level, QkMatrix, WkSpace};
pub use modforms::{CuspBasis, DeSpaceEvidence, Level1Series, TauFormula};
pub use numeric::{BigReal, RegularizedValue};
