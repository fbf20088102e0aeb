use proptest::prelude::*;

use l2dz_core::eisenstein_q::{delta_series, rho, DivisorTable};
use l2dz_core::exact::{QMatrix, QSeries, Rational};
use l2dz_core::formal_dzspace::check_sum_formula;
use l2dz_core::modforms::{cusp_product, g1_double};
use l2dz_core::numeric::double_zeta_level2;
use l2dz_core::period_poly::{expected_wk_dim, wk_basis, Flavor};
use l2dz_core::poly_action::{slash, Poly, ProjMatrix};
use l2dz_core::{BigReal, Kind};

fn rat() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Rational::new(n, d))
}

fn series(order: usize) -> impl Strategy<Value = QSeries<Rational>> {
    prop::collection::vec(rat(), order + 1).prop_map(move |c| QSeries::from_coeffs(order, c))
}

fn generator() -> impl Strategy<Value = ProjMatrix> {
    prop::sample::select(vec![
        ProjMatrix::t(),
        ProjMatrix::s(),
        ProjMatrix::epsilon(),
        ProjMatrix::delta(),
        ProjMatrix::m(),
        ProjMatrix::t_prime(),
    ])
}

fn even_weight(lo: u32, hi: u32) -> impl Strategy<Value = u32> {
    (lo / 2..=hi / 2).prop_map(|h| 2 * h)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn series_ring_laws(a in series(8), b in series(8), c in series(8)) {
        prop_assert_eq!(a.mul_series(&b), b.mul_series(&a));
        prop_assert_eq!(a.mul_series(&b.add_series(&c)), a.mul_series(&b).add_series(&a.mul_series(&c)));
        prop_assert_eq!(a.mul_series(&b).mul_series(&c), a.mul_series(&b.mul_series(&c)));
    }

    #[test]
    fn rank_nullity(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 1..6)) {
        let m = QMatrix::from_i64_rows(&rows).unwrap();
        let ker = m.right_kernel();
        prop_assert_eq!(m.rank() + ker.len(), m.cols());
        for v in &ker {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn slash_is_a_right_action(
        k in even_weight(4, 14),
        coeffs in prop::collection::vec(-5i64..=5, 13),
        g in generator(),
        h in generator(),
    ) {
        let f = Poly::from_i64(k, &coeffs[..(k - 1) as usize]).unwrap();
        let lhs = slash(&f, &g.mul(&h), k).unwrap();
        let rhs = slash(&slash(&f, &g, k).unwrap(), &h, k).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn sum_formula_certified(k in even_weight(4, 30)) {
        prop_assert!(check_sum_formula(k).unwrap().holds);
    }

    #[test]
    fn wk_bases_verify(k in even_weight(4, 40), flavor in prop::sample::select(vec![Flavor::PlusZero, Flavor::Minus, Flavor::Plus])) {
        let w = wk_basis(k, flavor).unwrap();
        prop_assert!(w.verify().unwrap());
        if flavor != Flavor::Plus {
            prop_assert_eq!(w.dim(), expected_wk_dim(k).unwrap());
        }
    }

    #[test]
    fn cusp_product_identity(r in even_weight(4, 12), s in even_weight(4, 12)) {
        let p = cusp_product(r, s, 15).unwrap();
        prop_assert!(p.identity_holds);
        prop_assert!(p.series.coeff(0).is_zero());
    }

    #[test]
    fn level1_double_series_is_rho(r in 3u32..=8, s in 2u32..=8) {
        let g = g1_double(r, s, 15);
        let ratio = g.coeff(15) / &Rational::from(rho(r - 1, s - 1, 15));
        for n in 1..=15 {
            prop_assert_eq!(g.coeff(n), &(&ratio * &Rational::from(rho(r - 1, s - 1, n))));
        }
    }

    #[test]
    fn divisor_sums_multiplicative(m in 1usize..=30, n in 1usize..=30, j in 0u32..=11) {
        prop_assume!(num_integer::gcd(m, n) == 1);
        let t = DivisorTable::new(900);
        prop_assert_eq!(t.sigma(j, m * n), t.sigma(j, m) * t.sigma(j, n));
    }

    #[test]
    fn precision_doubling_agrees(r in 2u32..=5, s in 1u32..=4, kind in prop::sample::select(vec![Kind::EO, Kind::OE, Kind::OO])) {
        let lo = double_zeta_level2(kind, r, s, 15).unwrap();
        let hi = double_zeta_level2(kind, r, s, 30).unwrap();
        let bits = hi.bits();
        prop_assert!(lo.with_bits(bits).close_to(&hi, &BigReal::ten_pow_neg(13, bits)));
    }
}

#[test]
fn tau_multiplicative() {
    let d = delta_series(200).unwrap();
    for m in 2..=14usize {
        for n in 2..=14usize {
            if num_integer::gcd(m, n) == 1 {
                assert_eq!(d.coeff(m * n), &(d.coeff(m) * d.coeff(n)), "m={m}, n={n}");
            }
        }
    }
}
