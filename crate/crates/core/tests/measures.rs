use proptest::prelude::*;
use rsk_painleve::combinatorics::*;
use rsk_painleve::measures::*;
use rug::{Complete, Integer, Rational};
use std::collections::HashMap;

fn part(v: &[i64]) -> Partition {
    Partition::new(v).unwrap()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

#[test]
fn word_measure_examples() {
    let wm = |l: &[i64], p, ell| word_measure(&Partition::from_padded(l).unwrap(), WordMeasureParams::new(p, ell).unwrap()).unwrap();
    assert_eq!(wm(&[2], 2, 2), q(3, 4));
    assert_eq!(wm(&[1, 1], 2, 2), q(1, 4));
    assert_eq!(wm(&[1, 1], 1, 2), 0);
    assert_eq!(wm(&[4, 3], 2, 7), q(28, 128));
    assert!(word_measure(&part(&[2]), WordMeasureParams::new(2, 3).unwrap()).is_err());
}

#[test]
fn word_measure_normalizes() {
    for p in 1..=4 {
        for ell in 0..=12 {
            let total: Rational = enumerate_partitions(ell, p as usize, None)
                .map(|l| word_measure(&l, WordMeasureParams::new(p, ell).unwrap()).unwrap())
                .sum();
            assert_eq!(total, 1, "p={p} ell={ell}");
        }
    }
}

#[test]
fn word_measure_matches_shape_frequencies() {
    for p in 1..=3u32 {
        for ell in 0..=8usize {
            let total = (p as u64).pow(ell as u32);
            let mut freq: HashMap<Partition, u64> = HashMap::new();
            for idx in 0..total {
                *freq.entry(rsk_shape(&Word::from_index(idx, ell, p))).or_default() += 1;
            }
            for l in enumerate_partitions(ell as u64, p as usize, None) {
                let got = Rational::from((freq.get(&l).copied().unwrap_or(0), total));
                assert_eq!(got, word_measure(&l, WordMeasureParams::new(p, ell as u64).unwrap()).unwrap());
            }
        }
    }
}

#[test]
fn poissonized_examples() {
    let x = 0.7;
    assert!((poissonized_measure(&Partition::empty(), 3, x).unwrap() - (-3.0 * x).exp()).abs() < 1e-15);
    assert!((poissonized_measure(&part(&[1]), 1, x).unwrap() - x * (-x).exp()).abs() < 1e-15);
    let v = poissonized_measure(&part(&[2, 2]), 2, 1.0).unwrap();
    assert!((v - (-2.0f64).exp() / 12.0).abs() < 1e-15);
    assert!(poissonized_measure(&part(&[1]), 1, 0.0).is_err());
}

#[test]
fn poissonized_truncated_mass() {
    for p in 1..=3u32 {
        for x in [0.5, 5.0, 20.0, 50.0] {
            let mean = p as f64 * x;
            let hi = (mean + 12.0 * mean.sqrt()).floor() as u64;
            let lo = (mean - 12.0 * mean.sqrt()).max(0.0).ceil() as u64;
            let mut total = 0.0;
            for ell in lo..=hi {
                let mut layer = 0.0;
                for l in enumerate_partitions(ell, p as usize, None) {
                    layer += ln_poissonized_measure(&l, p, x).exp();
                }
                total += layer;
            }
            assert!((total - 1.0).abs() < 1e-8, "p={p} x={x} total={total}");
        }
    }
}

#[test]
fn log_space_measure_matches_exact() {
    for l in enumerate_partitions(9, 3, None) {
        let a = poissonized_measure(&l, 3, 2.5).unwrap();
        let b = ln_poissonized_measure(&l, 3, 2.5).exp();
        assert!((a - b).abs() <= 1e-13 * a.max(1e-300), "{l}");
    }
}

#[test]
fn strip_expectation_examples() {
    let s = StripFunctionalParams::new(5, 1, 3).unwrap();
    assert_eq!(strip_expectation(3, s), 0);
    for k in 0..6u64 {
        let want = Integer::factorial(k as u32 + 2).complete() / Integer::factorial(k as u32).complete();
        assert_eq!(strip_expectation(4 + k, s), Rational::from(want));
    }
    let s = StripFunctionalParams::new(4, 2, 2).unwrap();
    assert_eq!(strip_expectation(4, s), q(1, 8));
    assert!(StripFunctionalParams::new(3, 2, 4).is_err());
}

#[test]
fn chi_square_moments() {
    assert_eq!(chi2_moment(6, 0).unwrap(), 1);
    assert_eq!(chi2_moment(8, 1).unwrap(), 4);
    assert_eq!(chi2_moment(4, 2).unwrap(), 6);
    assert!(chi2_moment(3, 1).is_err());
    // k! [t^k] (1-t)^{-m/2}, built by repeated multiplication with 1/(1-t)
    for m in (2..=20).step_by(2) {
        let mut series = vec![Rational::from(1); 11];
        for _ in 1..m / 2 {
            for k in 1..series.len() {
                let prev = series[k - 1].clone();
                series[k] += prev;
            }
        }
        for k in 0..=10u32 {
            let want = Rational::from(Integer::factorial(k).complete()) * &series[k as usize];
            assert_eq!(chi2_moment(m, k).unwrap(), want, "m={m} k={k}");
        }
    }
}

#[test]
fn limit_constants() {
    for qq in 1..5 {
        for k in 0..5 {
            let c = limit_constant(1, qq, k).unwrap();
            let want = Integer::factorial(k + qq - 1).complete() / Integer::factorial(k).complete();
            assert_eq!(c.rational, Rational::from(want));
            // single-row strip expectation
            let s = StripFunctionalParams::new(qq + 3, 1, qq).unwrap();
            assert_eq!(strip_expectation(qq as u64 + 2 + k as u64, s), c.rational);
        }
    }
    let c = limit_constant(2, 2, 0).unwrap();
    assert!((c.value - 1.0 / std::f64::consts::PI.sqrt()).abs() < 1e-15);
    for (p, qq) in [(2, 3), (3, 3)] {
        for k in 0..6 {
            let a = limit_constant(p, qq, k).unwrap().rational;
            let b = limit_constant(p, qq, k + 1).unwrap().rational;
            assert_eq!(b / a, q((p * qq + k) as i64, (k + 1) as i64));
        }
    }
}

#[test]
fn hypergeometric_coefficients() {
    let s = hypergeom_2f1_restricted(2, 3, 5, 4).unwrap();
    assert_eq!(s.coeff(0), 1);
    assert_eq!(s.coeff(1), q(6, 5));
    // p = q = 1: only one-row partitions survive, (1)_k^2/(k!^2 (n)_k) = 1/(n)_k
    let s = hypergeom_2f1_restricted(1, 1, 3, 6).unwrap();
    let mut poch = Integer::from(1);
    for k in 0..=6u32 {
        assert_eq!(s.coeff(k as usize), Rational::from((1, poch.clone())));
        poch *= 3 + k;
    }
}

#[test]
fn cauchy_identity() {
    assert!(cauchy_truncated(1, 1, 10).holds);
    for p in 1..=3 {
        for qq in 1..=4 {
            let r = cauchy_truncated(p, qq, 8);
            assert!(r.holds && r.max_order_verified == 8, "p={p} q={qq}");
        }
    }
}

#[test]
fn strip_series_identity() {
    for p in 1..=2 {
        for qq in p..=4 {
            for n in qq..=6 {
                let r = strip_series_check(StripFunctionalParams::new(n, p, qq).unwrap(), 6).unwrap();
                assert!(r.identity_holds, "p={p} q={qq} n={n} mismatch {:?}", r.first_mismatch);
                assert!(r.constant_matches_footnote);
            }
        }
    }
    let r = strip_series_check(StripFunctionalParams::new(4, 2, 2).unwrap(), 5).unwrap();
    assert_eq!(r.fitted_constant, q(1, 12));
    let r = strip_series_check(StripFunctionalParams::new(2, 1, 1).unwrap(), 8).unwrap();
    assert!(r.identity_holds);
}

#[test]
fn series_roundtrip_json() {
    let s = hypergeom_2f1_restricted(2, 2, 4, 3).unwrap();
    let js = serde_json::to_string(&s).unwrap();
    assert!(js.contains("\"1/1\""));
    let back: RationalSeries = serde_json::from_str(&js).unwrap();
    assert_eq!(back, s);
}

proptest! {
    #[test]
    fn series_inverse_is_inverse(c in prop::collection::vec(-20i64..20, 1..8)) {
        let mut c = c;
        if c[0] == 0 { c[0] = 1; }
        let s = RationalSeries::new(c.iter().map(|&v| Rational::from(v)).collect());
        let prod = s.mul(&s.inverse().unwrap());
        prop_assert_eq!(prod.coeff(0), 1);
        for k in 1..prod.len() { prop_assert_eq!(prod.coeff(k), 0); }
    }

    #[test]
    fn strip_expectation_vanishes_below_rectangle(n in 2u32..6, ell in 0u64..4) {
        let s = StripFunctionalParams::new(n, 2, 2).unwrap();
        if ell < s.rectangle_weight() {
            prop_assert_eq!(strip_expectation(ell, s), 0);
        }
    }
}
