use std::collections::BTreeMap;

use l2dz_core::double_eisenstein::{
    g_series_double_with, verify_comb_lemma, verify_imag_lemma, verify_theorem3_with, SeriesBlocks,
};
use l2dz_core::numeric::ZetaTable;
use l2dz_core::{Kind, Parity, Rational, Symbol};
use num_bigint::BigInt;

fn bernoulli_table(n: usize) -> Vec<Rational> {
    // sum_{j<=m} binom(m+1, j) B_j = 0
    let mut b = vec![Rational::one()];
    for m in 1..=n {
        let mut acc = Rational::zero();
        let mut binom = BigInt::from(1);
        for (j, bj) in b.iter().enumerate() {
            acc = &acc + &(&Rational::from(binom.clone()) * bj);
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(&-acc / &Rational::from_int(m as i64 + 1));
    }
    b
}

fn fact(n: u32) -> i128 {
    (1..=n as i128).product()
}

fn sign(p: Parity, u: i128) -> i128 {
    match p {
        Parity::O if u % 2 == 1 => -1,
        _ => 1,
    }
}

fn prefactor(r: u32) -> Rational {
    Rational::new(if r % 2 == 0 { 1 } else { -1 }, 2i128.pow(r) * fact(r - 1))
}

/// `g_h^{e|o}` by a direct loop over `u m = n`.
fn g_direct(p: Parity, h: u32, order: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); order + 1];
    for (n, slot) in out.iter_mut().enumerate().skip(1) {
        let mut acc = 0i128;
        for u in 1..=n as i128 {
            if n as i128 % u == 0 {
                acc += sign(p, u) * u.pow(h - 1);
            }
        }
        *slot = &prefactor(h) * &Rational::from_int(acc);
    }
    out
}

/// The double series `sum_{m>m'>0, u,v>0} (+-1)^u (+-1)^v u^(r-1) v^(s-1) q^(um+vm')`.
fn g2_direct(a: Parity, b: Parity, r: u32, s: u32, order: usize) -> Vec<Rational> {
    let n = order as i128;
    let mut acc = vec![0i128; order + 1];
    for mp in 1..n {
        for m in mp + 1..=n {
            for u in 1..=n / m {
                for v in 1..=(n - u * m) / mp {
                    acc[(u * m + v * mp) as usize] += sign(a, u) * sign(b, v) * u.pow(r - 1) * v.pow(s - 1);
                }
            }
        }
    }
    let c = &prefactor(r) * &prefactor(s);
    acc.into_iter().map(|x| &c * &Rational::from_int(x)).collect()
}

/// The q-expansion of the convergent double Eisenstein series assembled term by
/// term: rational part, and the coefficient series of each odd zeta symbol.
fn expansion_oracle(kind: Kind, r: u32, s: u32, order: usize) -> (Vec<Rational>, BTreeMap<Symbol, Vec<Rational>>) {
    let bern = bernoulli_table(r as usize + s as usize);
    let k = r + s;
    let (a, b) = kind.parities();
    let mut rational = g2_direct(a, b, r, s, order);
    let mut symbols: BTreeMap<Symbol, Vec<Rational>> = BTreeMap::new();
    let bin = |n: u32, j: u32| -> i128 {
        if j > n {
            0
        } else {
            fact(n) / (fact(j) * fact(n - j))
        }
    };
    let neg = |e: u32| if e % 2 == 0 { 1 } else { -1 };
    for p in 2..k {
        let h = k - p;
        let a_coef = neg(s) * bin(p - 1, s - 1);
        let b_coef = neg(p + r) * bin(p - 1, r - 1);
        let d = (p == s) as i128;
        // (zeta letter, g letter, coefficient)
        let terms: Vec<(Parity, Parity, i128)> = match kind {
            Kind::EO => vec![(Parity::O, Parity::E, a_coef + d), (Parity::O, Parity::O, b_coef)],
            Kind::OE => vec![(Parity::O, Parity::O, a_coef), (Parity::E, Parity::O, d), (Parity::O, Parity::E, b_coef)],
            Kind::OO => vec![(Parity::E, Parity::O, a_coef + b_coef), (Parity::O, Parity::O, d)],
        };
        for (z, g, c) in terms {
            if c == 0 {
                continue;
            }
            let gh = g_direct(g, h, order);
            if p % 2 == 0 {
                // zeta(p) (2 pi i)^-p = -B_p / (2 p!), split by parity of the summation index
                let full = &(-&bern[p as usize]) / &Rational::from_int(2 * fact(p));
                let half_p = Rational::new(1, 2i128.pow(p));
                let z_val = match z {
                    Parity::E => &full * &half_p,
                    Parity::O => &full * &(&Rational::one() - &half_p),
                };
                let w = &z_val * &Rational::from_int(c);
                for n in 0..=order {
                    rational[n] = &rational[n] + &(&w * &gh[n]);
                }
            } else {
                let sym = match z {
                    Parity::E => Symbol::Ze(p),
                    Parity::O => Symbol::Zo(p),
                };
                let slot = symbols.entry(sym).or_insert_with(|| vec![Rational::zero(); order + 1]);
                for n in 0..=order {
                    slot[n] = &slot[n] + &(&Rational::from_int(c) * &gh[n]);
                }
            }
        }
    }
    symbols.retain(|_, v| v.iter().any(|x| !x.is_zero()));
    (rational, symbols)
}

#[test]
fn assembled_series_match_the_convergent_expansion() {
    let order = 30;
    let blocks = SeriesBlocks::new(order);
    for k in 5..=12u32 {
        for r in 3..=k - 2 {
            let s = k - r;
            for kind in Kind::ALL {
                let g = g_series_double_with(&blocks, kind, r, s, None).unwrap();
                let (rational, symbols) = expansion_oracle(kind, r, s, order);
                assert_eq!(g.comb.coeffs(), &rational[..], "{kind} ({r},{s}) rational part");
                let got: BTreeMap<Symbol, Vec<Rational>> =
                    g.imag_by_symbol().into_iter().map(|(sym, series)| (sym, series.coeffs().to_vec())).collect();
                assert_eq!(got, symbols, "{kind} ({r},{s}) symbols");
                assert!(g.imag.coeffs().iter().all(|c| c.rational_part().is_zero()));
            }
        }
    }
}

#[test]
fn double_shuffle_for_all_small_weights() {
    let blocks = SeriesBlocks::new(40);
    let table = ZetaTable::new(30);
    for k in 3..=12u32 {
        for r in 1..k {
            let rep = verify_theorem3_with(&blocks, &table, r, k - r).unwrap();
            assert_eq!(rep.checks.len(), 12);
            assert!(rep.pass, "({r},{}) {:#?}", k - r, rep.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>());
        }
    }
}

#[test]
fn generating_function_lemmas() {
    for k in 3..=10 {
        let imag = verify_imag_lemma(k, 20).unwrap();
        assert!(imag.pass, "imaginary k={k}");
        let comb = verify_comb_lemma(k, 20).unwrap();
        assert!(comb.pass, "combinatorial k={k}: {:?}", comb.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>());
    }
}

#[test]
fn lemma_notes_record_readings() {
    let imag = verify_imag_lemma(6, 12).unwrap();
    assert!(imag.notes.iter().any(|n| n == "display 1: the left-hand side holds with g"));
    let comb = verify_comb_lemma(6, 12).unwrap();
    assert!(comb.notes.iter().any(|n| n == "bracket with 4 g_2^o divisible by X: false"));
    assert!(comb.notes.iter().any(|n| n == "bracket with 4 g_2^e divisible by X: true"));
}

#[test]
fn lattice_sums_match_q_expansion_off_axis() {
    use l2dz_core::double_eisenstein::{lattice_eval, qexp_eval};
    use num_complex::Complex64;
    let tau = Complex64::new(0.3, 0.8);
    for (kind, r, s) in [(Kind::OE, 3, 2), (Kind::OO, 3, 3), (Kind::EO, 5, 2)] {
        let lat = lattice_eval(kind, r, s, tau, 200).unwrap();
        let q = qexp_eval(kind, r, s, tau, 60, 25).unwrap();
        let rel = (lat.extrapolated - q.value).norm() / q.value.norm();
        assert!(rel < 1e-3, "{kind} ({r},{s}): relative error {rel:e}");
        // the raw truncation error is about the size of the reported estimate
        assert!((lat.value - q.value).norm() < 4.0 * lat.error_estimate);
    }
}
