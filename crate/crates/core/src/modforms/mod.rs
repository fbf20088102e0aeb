//! Modular forms built from Eisenstein series: cusp forms on `Gamma_0(2)`,
//! the level 1 double Eisenstein series, the weight 12 identities and
//! formulas for `tau(n)`, and the dimension of the space spanned by
//! `G^oo_{r,k-r}` with `r` even.

mod appendix;
mod cusp;
mod despace;
mod level1;

pub use appendix::{
    appendix_identity, appendix_identity_check, appendix_identity_check_with, derived_tau_formula, printed_tau_formula,
    ramanujan_congruence, tau_formula, verify_tau, AppendixIdentity, AppendixReport, ConstantCheck, CongruenceReport,
    TauFormula, TauReport,
};
pub use cusp::{cusp_basis, cusp_dim_level2, cusp_product, CuspBasis, CuspProduct};
pub use level1::{bracket, g1_double, g1_series, level1_double_eisenstein, Level1Series};
pub use despace::{de_space_evidence, DeSpaceEvidence, KernelMember, PrimeCertificate};
