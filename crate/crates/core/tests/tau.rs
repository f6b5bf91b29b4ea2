use rsk_painleve::hp::Precision;
use rsk_painleve::tau::direct::direct_tau;
use rsk_painleve::tau::*;
use rug::Float;

const P: Precision = Precision { digits: 60 };

fn f(v: f64) -> Float {
    Float::with_val(P.bits(), v)
}

fn close(a: &Float, b: f64, tol: f64) -> bool {
    let d = (a.to_f64() - b).abs();
    d <= tol * b.abs().max(1.0)
}

fn gauss_real() -> WeightSpec {
    WeightSpec::GaussianPower { a_exp: 0.0, support: GaussianSupport::RealLine }
}

fn jacobi(alpha: f64, beta: f64) -> WeightSpec {
    WeightSpec::JacobiExp { a: 0.0, b: 1.0, alpha, beta, gamma: 0.0 }
}

#[test]
fn moment_examples() {
    let sqrt_pi = std::f64::consts::PI.sqrt();
    for method in [MomentMethod::Quadrature, MomentMethod::Auto] {
        let m = moments(&gauss_real(), &Deformation::linear(&f(0.0)), 4, P, method).unwrap();
        assert!(close(&m[0], sqrt_pi, 1e-15));
        assert!(m[1].to_f64().abs() < 1e-50);
        assert!(close(&m[2], sqrt_pi / 2.0, 1e-15));
    }
    let unit = WeightSpec::LaguerreJacobi { a_exp: 0.0, b_exp: 0.0, support: UnitSupport::UnitInterval };
    let m = moment(&unit, 2, 0.0, P).unwrap();
    assert!((m - Float::with_val(P.bits(), 1) / 3u32).abs() < 1e-55);
}

#[test]
fn recurrence_matches_quadrature_to_working_precision() {
    for support in [GaussianSupport::RealLine, GaussianSupport::PositiveHalfLine, GaussianSupport::NegativeHalfLine] {
        for a_exp in [0.0, 1.0, 2.0] {
            if support == GaussianSupport::RealLine && a_exp == 1.0 {
                continue;
            }
            let w = WeightSpec::GaussianPower { a_exp, support };
            for x in [-4.0, -0.5, 0.0, 1.25, 6.0] {
                let d = Deformation::linear(&f(x));
                let r = moments(&w, &d, 7, P, MomentMethod::Recurrence).unwrap();
                let q = moments(&w, &d, 7, P, MomentMethod::Quadrature).unwrap();
                for k in 0..7 {
                    let scale = Float::with_val(P.bits(), r[k].abs_ref()).max(&Float::with_val(P.bits(), r[0].abs_ref()));
                    let rel = Float::with_val(P.bits(), &r[k] - &q[k]).abs() / scale;
                    assert!(rel < 1e-50, "{support:?} a={a_exp} x={x} k={k} rel={rel}");
                }
            }
        }
    }
}

#[test]
fn singular_jacobi_moments_match_beta_function() {
    // int_0^1 z^{k+alpha} (1-z)^beta dz = B(k+alpha+1, beta+1)
    let bits = P.bits();
    for (alpha, beta) in [(-0.5, -0.5), (-0.5, 2.0), (1.0, -0.5), (0.0, 0.0)] {
        let m = moments(&jacobi(alpha, beta), &Deformation::linear(&f(0.0)), 5, P, MomentMethod::Quadrature).unwrap();
        for k in 0..5 {
            let a = Float::with_val(bits, k as f64 + alpha + 1.0);
            let b = Float::with_val(bits, beta + 1.0);
            let ab = Float::with_val(bits, &a + &b);
            let beta_fn = (a.ln_gamma() + b.ln_gamma() - ab.ln_gamma()).exp();
            let rel = Float::with_val(bits, &m[k] - &beta_fn).abs() / &beta_fn;
            assert!(rel < 1e-55, "alpha={alpha} beta={beta} k={k} rel={rel}");
        }
    }
}

#[test]
fn tau_examples() {
    let sqrt_pi = std::f64::consts::PI.sqrt();
    let t1 = TauEvaluator::new(gauss_real(), 1, P).unwrap();
    for x in [-2.0, 0.0, 1.5] {
        assert!(close(&t1.tau(&f(x)).unwrap(), sqrt_pi * (x * x / 4.0).exp(), 1e-15));
        // g = x/2, g' = 1/2
        let g = t1.log_deriv_g(&f(x), 0, DerivativeRoute::Richardson).unwrap();
        assert!((g - f(x / 2.0)).abs() < 1e-50);
        let g1 = t1.log_deriv_g(&f(x), 1, DerivativeRoute::Richardson).unwrap();
        assert!((g1 - f(0.5)).abs() < 1e-50);
    }
    let t2 = TauEvaluator::new(gauss_real(), 2, P).unwrap();
    assert!(close(&t2.tau(&f(0.0)).unwrap(), std::f64::consts::PI, 1e-15));
    let direct = direct_tau(&jacobi(0.0, 0.0), 1, [0.0; 3], 1.0 / 16.0).unwrap();
    assert!((direct - 1.0).abs() < 1e-13);
    let t0 = TauEvaluator::new(jacobi(0.0, 0.0), 0, P).unwrap();
    assert_eq!(t0.tau(&f(3.0)).unwrap(), 1);
    assert_eq!(t0.log_deriv_g(&f(3.0), 2, DerivativeRoute::Richardson).unwrap(), 0);
}

#[test]
fn hankel_identity_against_direct_quadrature() {
    let weights = [
        jacobi(0.0, 0.0),
        jacobi(-0.5, 1.0),
        jacobi(2.0, -0.5),
        WeightSpec::JacobiExp { a: -1.0, b: 2.0, alpha: 0.5, beta: 0.0, gamma: 0.7 },
        WeightSpec::LaguerreJacobi { a_exp: 1.0, b_exp: 0.5, support: UnitSupport::UnitInterval },
    ];
    for w in &weights {
        for n in 1..=3 {
            let ev = TauEvaluator::new(w.clone(), n, P).unwrap();
            for t in [[0.0, 0.0, 0.0], [0.8, 0.0, 0.0], [0.1, -0.2, 0.05]] {
                let d = Deformation::new(f(t[0]), f(t[1]), f(t[2]));
                let hankel = ev.generalized_tau(&d).unwrap().to_f64();
                let direct = direct_tau(w, n, t, 1.0 / 16.0).unwrap();
                assert!(((hankel - direct) / hankel).abs() < 1e-8, "{w:?} n={n} t={t:?}: {hankel} vs {direct}");
            }
        }
    }
}

#[test]
fn exact_and_difference_derivatives_agree() {
    let weights = [
        jacobi(0.0, 0.0),
        jacobi(-0.5, 2.0),
        gauss_real(),
        WeightSpec::GaussianPower { a_exp: 1.0, support: GaussianSupport::PositiveHalfLine },
        WeightSpec::LaguerreJacobi { a_exp: 0.5, b_exp: 0.0, support: UnitSupport::UnitInterval },
    ];
    for w in &weights {
        for n in [1usize, 2, 4] {
            let ev = TauEvaluator::new(w.clone(), n, P).unwrap();
            for x in [-4.0, -1.0, 0.5, 4.0] {
                let exact = ev.log_derivatives_exact(&f(x)).unwrap();
                let fd = ev.g_by_differences(&f(x), rsk_painleve::diff::Stencil::default()).unwrap();
                let d = Float::with_val(P.bits(), &exact[0] - &fd).abs().to_f64();
                assert!(d < 1e-7, "{w:?} n={n} x={x}: {d}");
                for order in 2..=3 {
                    let r = ev.log_deriv_g(&f(x), order, DerivativeRoute::Richardson).unwrap();
                    let d = Float::with_val(P.bits(), &exact[order] - &r).abs().to_f64();
                    assert!(d < 1e-12 * exact[order].to_f64().abs().max(1.0), "{w:?} n={n} x={x} order={order}: {d}");
                }
            }
        }
    }
}

#[test]
fn tau_is_positive() {
    for w in [jacobi(-0.5, -0.5), gauss_real()] {
        for n in 1..=4 {
            let ev = TauEvaluator::new(w.clone(), n, P).unwrap();
            for x in [-3.0, 0.0, 3.0] {
                assert!(ev.tau(&f(x)).unwrap() > 0);
            }
        }
    }
}

#[test]
fn divergent_deformations_rejected() {
    let ev = TauEvaluator::new(gauss_real(), 1, P).unwrap();
    let d = Deformation::new(f(0.0), f(0.0), f(0.1));
    assert!(matches!(ev.generalized_tau(&d), Err(rsk_painleve::Error::DivergentIntegral(_))));
    let d = Deformation::new(f(0.0), f(1.5), f(0.0));
    assert!(ev.generalized_tau(&d).is_err());
    let lag = WeightSpec::LaguerreJacobi { a_exp: 0.0, b_exp: 0.0, support: UnitSupport::AboveOne };
    assert!(moment(&lag, 0, 0.5, P).is_err());
    assert!(TauEvaluator::new(jacobi(-1.0, 0.0), 1, P).is_err());
}

#[test]
fn generalized_tau_reduces_on_linear_locus() {
    let ev = TauEvaluator::new(jacobi(0.0, 0.0), 2, P).unwrap();
    let a = ev.tau(&f(0.3)).unwrap();
    let b = ev.generalized_tau(&Deformation::new(f(0.3), f(0.0), f(0.0))).unwrap();
    assert_eq!(a, b);
    let one = TauEvaluator::new(jacobi(0.0, 0.0), 1, P).unwrap();
    assert!(close(&one.generalized_tau(&Deformation::new(f(0.0), f(0.0), f(0.0))).unwrap(), 1.0, 1e-15));
}

#[test]
fn painleve_inputs_closed_forms() {
    let bits = P.bits();
    let sqrt_pi = Float::with_val(bits, rug::float::Constant::Pi).sqrt();
    for s in [-2.0, -0.5, 0.0, 1.0, 2.0, 5.0] {
        let h = painleve_input_h(1, 0.0, HInterval::BelowS, s, P).unwrap();
        // e^{-s^2} / int_{-inf}^s e^{-t^2} dt
        let denom = Float::with_val(bits, &sqrt_pi * Float::with_val(bits, -f(s)).erfc()) / 2u32;
        let want = (Float::with_val(bits, -s * s)).exp() / denom;
        let rel = Float::with_val(bits, &h - &want).abs() / &want;
        assert!(rel < 1e-50, "s={s}: rel {rel}");
    }
    for s in [0.5, 1.0, 2.5, 4.0] {
        let k = painleve_input_k(1, 0.0, 0.0, KInterval::ZeroToS, s, P).unwrap();
        let want = s * (-s).exp() / (1.0 - (-s).exp());
        assert!((k.to_f64() - want).abs() < 1e-14, "s={s}");
    }
    let k = painleve_input_k(1, 0.0, 0.0, KInterval::ZeroToS, 1e-6, P).unwrap();
    assert!((k.to_f64() - 1.0).abs() < 1e-6);
    assert_eq!(painleve_input_h(0, 0.0, HInterval::BelowS, 0.3, P).unwrap(), 0);
    assert_eq!(painleve_input_k(0, 0.0, 0.0, KInterval::ZeroToS, 0.3, P).unwrap(), 0);
}

#[test]
fn hermitian_ratio_examples() {
    let r = hermitian_ratio(1, 1, 0.0, P).unwrap();
    assert!((r.to_f64() - 0.5).abs() < 1e-15);
    for s in [-1.0, 0.7, 2.0] {
        let r = hermitian_ratio(1, 1, s, P).unwrap();
        let want = Float::with_val(P.bits(), f(s).erfc()) / 2u32;
        assert!((r - want).abs() < 1e-50);
    }
    let r = hermitian_ratio(2, 2, -6.0, P).unwrap();
    assert!((r.to_f64() - 2.0).abs() < 1e-6);
    assert!(hermitian_ratio(2, 1, 0.0, P).is_err());
}

#[test]
fn selberg_aomoto() {
    for n in 1..=3 {
        for alpha in [-0.5, 0.0, 1.0, 2.0] {
            for beta in [-0.5, 0.0, 1.0, 2.0] {
                let r = selberg_aomoto_mean(n, alpha, beta, 0.0, 1.0, P).unwrap();
                assert!(r.abs_diff < 1e-10, "n={n} a={alpha} b={beta}: {}", r.abs_diff);
            }
        }
    }
    let r = selberg_aomoto_mean(1, 1.0, 0.0, 0.0, 1.0, P).unwrap();
    assert_eq!(r.exact, rug::Rational::from((2, 3)));
    let r = selberg_aomoto_mean(2, 0.0, 0.0, 0.0, 1.0, P).unwrap();
    assert_eq!(r.exact, rug::Rational::from((1, 2)));
    let r = selberg_aomoto_mean(2, 0.5, -0.5, -1.0, 3.0, P).unwrap();
    assert!(r.abs_diff < 1e-10);
}

#[test]
fn gaussian_normalization_reading() {
    let r = gaussian_normalization(1, P).unwrap();
    assert_eq!(r.matches, NormalizationReading::Both);
    assert!((r.quadrature - std::f64::consts::PI.sqrt()).abs() < 1e-14);
    let r = gaussian_normalization(2, P).unwrap();
    assert!((r.quadrature - std::f64::consts::PI).abs() < 1e-14);
    for p in 2..=3 {
        let r = gaussian_normalization(p, P).unwrap();
        assert_eq!(r.matches, NormalizationReading::FactorialsInNumerator);
        assert!(r.numerator_rel_err < 1e-8);
    }
}

mod properties {
    use super::*;
    use proptest::prelude::*;
    use rsk_painleve::diff::Stencil;

    fn jacobi(alpha: f64, beta: f64) -> WeightSpec {
        WeightSpec::JacobiExp { a: -1.0, b: 1.0, alpha, beta, gamma: 0.0 }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]

        #[test]
        fn tau_is_positive(n in 1usize..4, x in -4.0f64..4.0, alpha in -0.5f64..2.0, beta in -0.5f64..2.0) {
            let tau = TauEvaluator::new(jacobi(alpha, beta), n, Precision { digits: 30 }).unwrap();
            prop_assert!(tau.tau(&Float::with_val(tau.bits(), x)).unwrap() > 0);
        }

        #[test]
        fn exact_g_matches_differences(n in 1usize..5, x in -4.0f64..4.0, alpha in 0.0f64..2.0) {
            let tau = TauEvaluator::new(jacobi(alpha, 0.5), n, Precision { digits: 30 }).unwrap();
            let xf = Float::with_val(tau.bits(), x);
            let exact = tau.log_deriv_g(&xf, 0, DerivativeRoute::Exact).unwrap();
            let fd = tau.g_by_differences(&xf, Stencil { step: 1e-2, levels: 2 }).unwrap();
            prop_assert!((exact.to_f64() - fd.to_f64()).abs() <= 1e-7 * exact.to_f64().abs().max(1.0));
        }
    }
}
