use l2dz_core::double_eisenstein::i_series;
use l2dz_core::eisenstein_q::g_series;
use l2dz_core::exact::{QMatrix, Rational, Symbol};
use l2dz_core::period_poly::*;
use l2dz_core::poly_action::Poly;
use l2dz_core::{Kind, Parity};

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from(x)).collect()
}

fn golden_q12() -> QMatrix {
    QMatrix::from_i64_rows(&[
        vec![-2, -4, -6, -8],
        vec![0, -4, -20, -48],
        vec![0, 0, 0, 0],
        vec![0, 4, 20, 48],
        vec![2, 4, 6, 8],
    ])
    .unwrap()
}

fn golden_q12_level1() -> QMatrix {
    QMatrix::from_i64_rows(&[
        vec![-2, -4, -6, -8],
        vec![1, 6, 15, 28],
        vec![0, -4, -20, -48],
        vec![0, 1, 15, 42],
        vec![0, 0, 0, 0],
        vec![0, 0, -14, -42],
        vec![0, 4, 20, 48],
        vec![0, -6, -15, -27],
        vec![2, 4, 6, 8],
    ])
    .unwrap()
}

fn even(lo: u32, hi: u32) -> impl Iterator<Item = u32> {
    (lo..=hi).step_by(2)
}

#[test]
fn golden_matrices_weight_12() {
    assert_eq!(qk_matrix(12, Level::Two).unwrap().matrix, golden_q12());
    assert_eq!(qk_matrix(12, Level::One).unwrap().matrix, golden_q12_level1());
}

#[test]
fn linear_system_is_negated_qk() {
    for k in even(6, 40) {
        let l = lineq_system(k).unwrap();
        let q = qk_matrix(k, Level::Two).unwrap().matrix;
        for i in 0..q.rows() {
            let neg: Vec<Rational> = q.row(i).iter().map(|x| -x.clone()).collect();
            assert_eq!(l.row(i), &neg[..], "k={k} row {i}");
        }
        // rows j and k-2-j have opposite signs
        let n = l.rows();
        for i in 0..n {
            let neg: Vec<Rational> = l.row(n - 1 - i).iter().map(|x| -x.clone()).collect();
            assert_eq!(l.row(i), &neg[..], "k={k}");
        }
        // for j <= k/2-1 the coefficient of a_{k-2-i} vanishes when i < j and not on the diagonal
        for (r, j) in (1..k / 2).step_by(2).enumerate() {
            if 2 * j == k - 2 {
                continue;
            }
            let first = l.row(r).iter().position(|x| !x.is_zero()).unwrap();
            assert_eq!(2 * (first as u32 + 1), j + 1, "k={k} j={j}");
        }
    }
}

#[test]
fn ranks_and_dimensions_through_weight_60() {
    for k in even(6, 60) {
        let s = period_summary(k).unwrap();
        assert!(s.pass, "{s:?}");
        assert_eq!(s.rank_qk, ((k + 2) / 4 - 1) as usize);
    }
    for k in even(4, 60) {
        let want = (k / 4 - 1) as usize;
        assert_eq!(wk_basis(k, Flavor::PlusZero).unwrap().dim(), want, "k={k}");
        assert_eq!(wk_basis(k, Flavor::Minus).unwrap().dim(), want, "k={k}");
        let l = lineq_system(k).unwrap();
        assert_eq!(want + l.rank(), (k / 2 - 2) as usize);
    }
}

#[test]
fn bases_satisfy_their_conditions() {
    for k in even(4, 30) {
        for f in [Flavor::PlusZero, Flavor::Minus, Flavor::Plus] {
            assert!(wk_basis(k, f).unwrap().verify().unwrap(), "k={k} {f:?}");
        }
        let d = plus_decomposition_check(k).unwrap();
        assert!(d.one_invariant && d.top_invariant && d.spans_agree, "{d:?}");
        assert_eq!(d.direct_dim, (k / 4 + 1) as usize);
    }
}

#[test]
fn minor_embedding_through_weight_40() {
    for k in even(6, 40) {
        assert!(minor_embedding_check(k).unwrap(), "k={k}");
    }
}

#[test]
fn level1_kernel_weight_12() {
    let q = qk_matrix(12, Level::One).unwrap().matrix;
    let right = q.right_kernel();
    assert_eq!(right.len(), 1);
    let v = ints(&[1, -3, 3, -1]);
    assert!(q.mul_vec(&v).unwrap().iter().all(|x| x.is_zero()));
    let p = period_polynomial_from_kernel(12, Level::One, &v).unwrap();
    assert_eq!(p, Poly::from_i64(12, &[0, 0, -1, 0, 3, 0, -3, 0, 1, 0, 0]).unwrap());
    assert!(is_level1_period_polynomial(&p).unwrap());

    assert_eq!(q.left_kernel().len(), 6);
    for c in [
        [0, 0, 0, 0, 1, 0, 0, 0, 0],
        [0, 0, 7, 28, 0, 20, 0, 0, 0],
        [0, 0, 0, 168, 0, 150, 0, 28, 0],
    ] {
        assert!(q.vec_mul(&ints(&c)).unwrap().iter().all(|x| x.is_zero()), "{c:?}");
    }
}

#[test]
fn level1_kernels_are_period_polynomials() {
    // dim S_k(SL2(Z)) for even k
    let cusp_dim = |k: u32| if k % 12 == 2 { k / 12 - 1 } else { k / 12 } as usize;
    for k in even(6, 36) {
        let q = qk_matrix(k, Level::One).unwrap().matrix;
        let right = q.right_kernel();
        assert_eq!(right.len(), cusp_dim(k), "k={k}");
        for v in &right {
            let p = period_polynomial_from_kernel(k, Level::One, v).unwrap();
            assert!(is_level1_period_polynomial(&p).unwrap(), "k={k}");
        }
    }
}

#[test]
fn level2_kernel_weight_12_lands_in_plus_zero() {
    let q = qk_matrix(12, Level::Two).unwrap().matrix;
    let right = q.right_kernel();
    assert_eq!(right.len(), 2);
    let w = wk_basis(12, Flavor::PlusZero).unwrap();
    let polys: Vec<Poly> = right.iter().map(|v| period_polynomial_from_kernel(12, Level::Two, v).unwrap()).collect();
    for p in &polys {
        assert!(w.contains(p).unwrap());
    }
    let m = QMatrix::from_rows(11, polys.iter().map(|p| p.coeffs().to_vec()).collect()).unwrap();
    assert_eq!(m.rank(), 2);
}

/// Reads off `pi(G^oo_{2i,k-2i})` in the basis `zeta~^e(p) g^o_{k-p}`, `p` odd.
fn imag_matrix(k: u32, order: usize) -> QMatrix {
    let cols = (k / 2 - 2) as usize;
    let mut rows = Vec::new();
    for i in 1..k / 2 {
        let imag = i_series(Kind::OO, 2 * i, k - 2 * i, order).unwrap();
        let mut row = vec![Rational::zero(); cols];
        for n in 1..=order {
            for (sym, c) in imag.coeff(n).terms() {
                let Symbol::Ze(p) = *sym else { panic!("unexpected symbol {sym:?} in k={k}") };
                assert!(p % 2 == 1 && p >= 3 && p <= k - 3, "p={p}");
                // column j <-> zeta~^e(2j+1) g^o_{k-2j-1}
                let j = ((p - 1) / 2 - 1) as usize;
                let g = g_series(Parity::O, k - p, order).unwrap();
                let ratio = c / g.coeff(n);
                if n == 1 {
                    row[j] = ratio;
                } else {
                    assert_eq!(ratio, row[j], "not a multiple of g^o_{} (k={k})", k - p);
                }
            }
        }
        rows.push(row);
    }
    QMatrix::from_rows(cols, rows).unwrap()
}

#[test]
fn qk_emerges_from_imaginary_strata() {
    for k in even(6, 20) {
        assert_eq!(imag_matrix(k, 12), qk_matrix(k, Level::Two).unwrap().matrix, "k={k}");
    }
}
