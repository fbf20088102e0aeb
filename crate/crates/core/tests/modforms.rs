use std::time::Instant;

use l2dz_core::eisenstein_q::{delta_series, factorial_q, rho, DivisorTable};
use l2dz_core::exact::{QMatrix, Rational, Symbol};
use l2dz_core::modforms::*;
use l2dz_core::period_poly::{qk_matrix, Level};

fn even(lo: u32, hi: u32) -> impl Iterator<Item = u32> {
    (lo..=hi).step_by(2)
}

#[test]
fn tau_formulas_through_200() {
    for w in 1..=3 {
        let r = verify_tau(w, 200).unwrap();
        assert!(r.pass, "{r:?}");
    }
}

#[test]
fn tau_formula_first_values() {
    let delta = delta_series(10).unwrap();
    for w in 1..=3 {
        for n in 1..=10 {
            assert_eq!(&tau_formula(w, n).unwrap(), delta.coeff(n), "formula {w}, n={n}");
        }
    }
    assert_eq!(tau_formula(1, 2).unwrap(), Rational::from(-24));
}

#[test]
fn ramanujan_691_through_1000() {
    let r = ramanujan_congruence(1000);
    assert!(r.pass, "{:?}", r.failures);
}

#[test]
fn weight_12_identities() {
    for w in 1..=3 {
        let r = appendix_identity_check(w, 100).unwrap();
        assert!(r.imag_cancels && r.first_mismatch.is_none(), "identity {w}");
        assert!(r.constant.pass, "identity {w}: {:?}", r.constant);
        assert!(r.kernel_membership && r.proportional_to_kernel, "identity {w}");
        assert!(r.pass, "identity {w}");
    }
    let r1 = appendix_identity_check(1, 20).unwrap();
    assert_eq!(r1.constant.method, "exact");
}

#[test]
fn quoted_third_coefficient_is_off_by_5197_over_5157() {
    let r = appendix_identity_check(3, 20).unwrap();
    assert_eq!(r.fitted_vs_quoted, Rational::new(5197, 5157));
    // sigma_11 coefficient of the tau formula is a / 11!
    let f = printed_tau_formula(3).unwrap();
    assert_eq!(&f.sigma[&11] * &factorial_q(11), r.identity.eisenstein_coeff);
}

#[test]
fn kernel_vectors_span_with_q12_level1() {
    let q1 = qk_matrix(12, Level::One).unwrap().matrix;
    let left = q1.left_kernel();
    assert_eq!(left.len(), 6);
    let span = QMatrix::from_rows(9, left).unwrap();
    for w in 1..=3 {
        let v: Vec<Rational> = appendix_identity(w).unwrap().kernel_vector.iter().map(|&x| Rational::from(x)).collect();
        assert!(span.in_row_space(&v).unwrap(), "vector {w}");
    }
}

#[test]
fn short_order_rejected() {
    assert!(appendix_identity_check(1, 19).is_err());
    assert!(appendix_identity(4).is_err());
}

#[test]
fn cusp_bases_through_weight_24() {
    for k in even(8, 24) {
        let b = cusp_basis(k, 40).unwrap();
        assert_eq!(b.dim(), (k / 4 - 1) as usize, "k={k}");
        assert!(b.leading_block_full_rank, "k={k}");
        for p in &b.basis {
            assert!(p.series.coeff(0).is_zero(), "k={k}");
            assert!(p.identity_holds, "({}, {})", p.r, p.s);
        }
    }
}

#[test]
fn cusp_products_start_at_q1() {
    for (r, s) in [(4, 4), (4, 8), (6, 6), (8, 4)] {
        let p = cusp_product(r, s, 10).unwrap();
        assert!(p.series.coeff(0).is_zero());
        assert!(!p.series.coeff(1).is_zero());
    }
}

#[test]
fn quoted_product_form_only_for_equal_indices() {
    assert!(cusp_product(6, 6, 30).unwrap().swapped_identity_holds);
    for (r, s) in [(4, 8), (8, 4), (4, 12)] {
        let p = cusp_product(r, s, 30).unwrap();
        assert!(p.identity_holds && !p.swapped_identity_holds, "({r},{s})");
    }
}

#[test]
fn de_space_lower_bounds() {
    let start = Instant::now();
    for k in even(6, 20) {
        let e = de_space_evidence(k, 40).unwrap();
        assert!(e.imag_matrix_is_qk && e.strata_are_multiples, "k={k}");
        assert!(!e.primes.determinant.is_zero(), "k={k}");
        assert_eq!(e.primes.primes.len(), (k / 2 - 2) as usize);
        assert_eq!(e.rank_qk, ((k + 2) / 4 - 1) as usize, "k={k}");
        assert_eq!(e.lower_bound, (k / 2 - 1) as usize, "k={k}");
        assert_eq!(e.direct_rank, e.expected_dim, "k={k}");
        assert_eq!(e.kernel_members.len(), (k / 4) as usize, "k={k}");
        for m in &e.kernel_members {
            assert!(m.coefficients.is_some() && m.constant_matches, "k={k}: {m:?}");
        }
        assert!(e.pass, "k={k}");
    }
    assert!(start.elapsed().as_secs() < 30);
}

#[test]
fn g1_double_matches_rho() {
    let n_max = 30;
    for (r, s) in [(3, 2), (4, 8), (5, 7), (6, 6), (9, 3)] {
        let g = g1_double(r, s, n_max);
        let c = Rational::from(if (r + s) % 2 == 0 { 1 } else { -1 }) / (factorial_q(r - 1) * factorial_q(s - 1));
        for n in 1..=n_max {
            assert_eq!(g.coeff(n), &(&c * &Rational::from(rho(r - 1, s - 1, n))), "({r},{s}) n={n}");
        }
    }
}

#[test]
fn g1_single_is_divisor_sum() {
    let t = DivisorTable::new(12);
    let g = g1_series(&t, 4, 12);
    // g_4 = (1/3!) sum sigma_3(n) q^n
    assert_eq!(g.coeff(2), &Rational::new(9, 6));
}

/// Rows `r = 3 .. k-2` of `Q_k^(1)` from the `Z(p)` strata, column `j` read as `Z(2j+1) g_{k-2j-1}`.
#[test]
fn level1_imag_strata_give_qk1() {
    for k in even(8, 16) {
        let order = 8;
        let t = DivisorTable::new(order);
        let q1 = qk_matrix(k, Level::One).unwrap().matrix;
        for r in 3..=k - 2 {
            let g = level1_double_eisenstein(r, k - r, order).unwrap();
            let mut row = vec![Rational::zero(); q1.cols()];
            for (sym, part) in g.imag_by_symbol() {
                let Symbol::Z(p) = sym else { panic!("{sym:?}") };
                let h = g1_series(&t, k - p, order);
                let c = part.coeff(1) / h.coeff(1);
                assert_eq!(h.scale(&c), part);
                row[((p - 3) / 2) as usize] = c;
            }
            assert_eq!(row.as_slice(), q1.row((r - 2) as usize), "k={k}, r={r}");
        }
    }
}

#[test]
fn level1_rejects_divergent() {
    assert!(level1_double_eisenstein(2, 10, 5).is_err());
}
