use l2dz_core::numeric::{
    double_zeta_level1, double_zeta_level2, pi, regularized_dzv, verify_kmt, verify_parity_partition,
    verify_prop1, verify_sum_formula_numeric, zeta_single, BigReal, Precision, SingleKind,
};
use l2dz_core::{Kind, Rational};

fn close(a: &BigReal, b: &BigReal, digits: u32) -> bool {
    a.close_to(b, &BigReal::ten_pow_neg(digits, a.bits()))
}

#[test]
fn zeta_oo_2_2_is_pi4_over_384() {
    let v = double_zeta_level2(Kind::OO, 2, 2, 30).unwrap();
    let p = pi(v.bits());
    let expect = p.powi(4).div_int(384);
    assert!(close(&v, &expect, 25), "{v:?} vs {expect:?}");
}

#[test]
fn stuffle_oe_plus_eo_is_pi4_over_192() {
    let a = double_zeta_level2(Kind::OE, 2, 2, 30).unwrap();
    let b = double_zeta_level2(Kind::EO, 2, 2, 30).unwrap();
    let p = pi(a.bits());
    assert!(close(&(&a + &b), &p.powi(4).div_int(192), 25));
}

#[test]
fn zeta_oo_3_2_bounds() {
    let v = double_zeta_level2(Kind::OO, 3, 2, 30).unwrap();
    let zo3 = zeta_single(SingleKind::O, 3, 30).unwrap().c0;
    let zo2 = zeta_single(SingleKind::O, 2, 30).unwrap().c0;
    assert!(!v.is_negative() && !v.is_zero());
    assert!(v < &zo3 * &zo2);
}

#[test]
fn level1_symmetry_and_bounds() {
    let z66 = double_zeta_level1(6, 6, 30).unwrap();
    let b = z66.bits();
    let z6 = zeta_single(SingleKind::Full, 6, 30).unwrap().c0;
    let z12 = zeta_single(SingleKind::Full, 12, 30).unwrap().c0;
    let expect = (&(&z6 * &z6) - &z12).mul_rational(&Rational::new(1, 2));
    assert!(close(&z66, &expect, 25));
    assert!(z66 < &z6 * &z6);
    let _ = b;
}

#[test]
fn regularized_coefficients() {
    let zo3 = zeta_single(SingleKind::O, 3, 30).unwrap().c0;
    let ze3 = zeta_single(SingleKind::E, 3, 30).unwrap().c0;
    let half = Rational::new(1, 2);
    let eo = regularized_dzv(Kind::EO, 1, 3, 30).unwrap();
    assert!(close(&eo.c1, &zo3.mul_rational(&half), 28));
    let oe = regularized_dzv(Kind::OE, 1, 3, 30).unwrap();
    assert!(close(&oe.c1, &ze3.mul_rational(&half), 28));
    let oo = regularized_dzv(Kind::OO, 1, 3, 30).unwrap();
    let oo31 = double_zeta_level2(Kind::OO, 3, 1, 30).unwrap();
    let zo4 = zeta_single(SingleKind::O, 4, 30).unwrap().c0;
    let log2 = l2dz_core::numeric::ln2(zo3.bits());
    let expect = &(&(&log2 * &zo3).mul_rational(&half) - &oo31) - &zo4;
    assert!(close(&oo.c0, &expect, 28));
}

/// Brute-force partial sums in f64 with the tail bracketed by
/// `[x^(1-r)/(r-1) ... ]`-style bounds on the omitted outer terms.
fn brute_force(kind: Kind, r: u32, s: u32, limit: u64) -> (f64, f64) {
    let (a, b) = kind.parities();
    let ok = |n: u64, p: l2dz_core::Parity| match p {
        l2dz_core::Parity::E => n % 2 == 0,
        l2dz_core::Parity::O => n % 2 == 1,
    };
    let mut inner = 0.0; // sum over admissible n < m of n^-s
    let mut sum = 0.0;
    for m in 1..=limit {
        if ok(m, a) {
            sum += inner / (m as f64).powi(r as i32);
        }
        if ok(m, b) {
            inner += 1.0 / (m as f64).powi(s as i32);
        }
    }
    // omitted terms: m > limit, each inner sum lies in [inner, total inner]
    let zeta_b: f64 = (1..200_000u64).filter(|&n| ok(n, b)).map(|n| 1.0 / (n as f64).powi(s as i32)).sum();
    let tail_m: f64 = (limit + 1..limit * 50).filter(|&n| ok(n, a)).map(|n| 1.0 / (n as f64).powi(r as i32)).sum::<f64>()
        + 1.0 / ((r as f64 - 1.0) * ((limit * 50) as f64).powi(r as i32 - 1));
    (sum + inner * tail_m, sum + zeta_b * tail_m * 1.0001)
}

#[test]
fn euler_maclaurin_matches_bracketed_brute_force() {
    for kind in Kind::ALL {
        let v = double_zeta_level2(kind, 3, 2, 20).unwrap().to_f64();
        let (lo, hi) = brute_force(kind, 3, 2, 20_000);
        assert!(lo - 1e-10 <= v && v <= hi + 1e-10, "{kind}: {lo} <= {v} <= {hi}");
        assert!(hi - lo < 1e-8);
    }
}

#[test]
fn doubling_precision_keeps_digits() {
    let a = double_zeta_level2(Kind::EO, 4, 3, 25).unwrap();
    let b = double_zeta_level2(Kind::EO, 4, 3, 50).unwrap();
    let b = b.with_bits(a.bits());
    assert!(close(&a, &b, 23));
    let p = Precision::new(25);
    assert_eq!(p.digits, 25);
}

#[test]
fn double_shuffle_relations_numerically() {
    for (r, s) in [(2, 2), (3, 2), (1, 2), (2, 1), (1, 4), (4, 1), (2, 5)] {
        let rep = verify_prop1(r, s, 30).unwrap();
        assert!(rep.pass, "{rep:#?}");
    }
    assert!(verify_prop1(1, 1, 30).is_err());
}

#[test]
fn sum_formula_numeric() {
    for k in [4, 6, 8, 10] {
        let rep = verify_sum_formula_numeric(k, 30).unwrap();
        assert!(rep.pass, "{rep:#?}");
    }
}

#[test]
fn kmt_identity() {
    for (r, s) in [(2, 3), (3, 4), (2, 5)] {
        let rep = verify_kmt(r, s, 30).unwrap();
        assert!(rep.pass, "{rep:#?}");
    }
    assert!(verify_kmt(2, 2, 30).is_err());
}

#[test]
fn zeta2_matches_definition() {
    // sum_{m,n>=1} (m+2n)^-2 m^-3, with M = m+2n: the inner sums over N < M, N = M mod 2
    // converge to zeta^o(3), zeta^e(3); the omitted tail over M > L is bracketed.
    let t = l2dz_core::numeric::ZetaTable::new(30);
    let v = l2dz_core::numeric::zeta2(&t, 2, 3).unwrap().to_f64();
    let limit = 2_000_000u64;
    let mut inner = [0.0f64; 2];
    let mut sum = 0.0;
    for m in 1..=limit {
        let p = (m % 2) as usize;
        sum += inner[p] / (m as f64).powi(2);
        inner[p] += 1.0 / (m as f64).powi(3);
    }
    let zo3 = 1.0517997902646449; // (7/8) zeta(3)
    let ze3 = 0.1502571128949493; // zeta(3)/8
    // sum_{M > L, M odd or even} M^-2 lies within 1/(2L) +- 1/L^2
    let lo = sum + (inner[1] + inner[0]) * (1.0 / (2.0 * limit as f64) - 1.0 / (limit as f64).powi(2));
    let hi = sum + (zo3 + ze3) * (1.0 / (2.0 * limit as f64) + 1.0 / (limit as f64).powi(2));
    assert!(lo - 1e-10 <= v && v <= hi + 1e-10, "{lo} <= {v} <= {hi}");
    assert!((v - 0.26146369363737162476).abs() < 1e-15);
}

#[test]
fn parity_partition() {
    for (r, s) in [(2, 2), (3, 2), (4, 3)] {
        assert!(verify_parity_partition(r, s, 30).unwrap().pass);
    }
}
