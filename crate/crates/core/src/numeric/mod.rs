//! High precision evaluation of level 2 single and double zeta values, their
//! regularizations at index 1, and the numeric identity checks.
//!
//! Double values are reduced to sums of Hurwitz zeta values
//! `zeta^{ab}(r,s) = 2^(-r-s) sum_x x^(-s) zeta_H(r, x + d)`; the first
//! terms are summed directly and the rest through Euler-Maclaurin expansions.

mod bigreal;
mod verify;
mod zeta;

pub use bigreal::{bits_for_digits, ln2, pi, BigReal};
pub use verify::{
    prop1_sides, verify_kmt, verify_parity_partition, verify_prop1, verify_prop1_with,
    verify_sum_formula_numeric, zeta2, NumericCheck, NumericReport, ZetaTable,
};
pub use zeta::{
    double_zeta_level1, double_zeta_level2, hurwitz_zeta, regularized_dzv, zeta_single,
    zeta_single_convergent, Precision, RegularizedValue, SingleKind, TaggedValue,
};

/// Default working precision in decimal digits.
pub const DEFAULT_DIGITS: u32 = 30;
