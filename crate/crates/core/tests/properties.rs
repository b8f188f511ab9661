use approx::assert_relative_eq;
use proptest::prelude::*;

use weno3::reconstruction::interface_flux;
use weno3::weights::{compute_weights, gradient_ratio, StencilValues, RATIO_MAX};
use weno3::{LimiterKind, WeightScheme};

fn scheme_strategy() -> impl Strategy<Value = WeightScheme> {
    prop_oneof![
        Just(WeightScheme::Limiter(LimiterKind::Chi1)),
        Just(WeightScheme::Limiter(LimiterKind::Chi2)),
        Just(WeightScheme::Limiter(LimiterKind::Chi3)),
        Just(WeightScheme::Limiter(LimiterKind::Chi4)),
        (1.0f64..=3.0).prop_map(|k| WeightScheme::Limiter(LimiterKind::chi5(k).unwrap())),
        Just(WeightScheme::js3()),
        Just(WeightScheme::z3()),
        Just(WeightScheme::n3()),
        Just(WeightScheme::pplus3()),
    ]
}

fn limiter_strategy() -> impl Strategy<Value = LimiterKind> {
    prop_oneof![
        Just(LimiterKind::Chi1),
        Just(LimiterKind::Chi2),
        Just(LimiterKind::Chi3),
        Just(LimiterKind::Chi4),
        (0.5f64..10.0).prop_map(|k| LimiterKind::chi5_unrestricted(k).unwrap()),
    ]
}

fn value() -> impl Strategy<Value = f64> {
    prop_oneof![-1e6f64..1e6, -1.0f64..1.0, Just(0.0), Just(1.0)]
}

fn stencil() -> impl Strategy<Value = StencilValues> {
    (value(), value(), value()).prop_map(|(a, b, c)| StencilValues::new(a, b, c))
}

proptest! {
    #[test]
    fn weights_are_convex(scheme in scheme_strategy(), s in stencil(), dx in 1e-4f64..1.0) {
        let w = compute_weights(scheme, &s, dx).unwrap();
        prop_assert!((0.0..=1.0).contains(&w.w0));
        prop_assert!((0.0..=1.0).contains(&w.w1));
        prop_assert_eq!(w.w0 + w.w1, 1.0);
    }

    #[test]
    fn limiters_are_even_and_bounded(kind in limiter_strategy(), r in -1e8f64..1e8) {
        let chi = kind.eval(r);
        prop_assert!((0.0..=1.5).contains(&chi));
        prop_assert_eq!(chi, kind.eval(-r));
    }

    #[test]
    fn limiter_weights_ignore_data_scale(
        kind in limiter_strategy(),
        s in stencil(),
        c in prop_oneof![1e-6f64..1e6, -1e6f64..-1e-6],
    ) {
        let scheme = WeightScheme::Limiter(kind);
        let a = compute_weights(scheme, &s, 0.1).unwrap();
        let b = compute_weights(scheme, &s.scaled(c), 0.1).unwrap();
        assert_relative_eq!(a.w0, b.w0, epsilon = 1e-12, max_relative = 1e-9);
    }

    #[test]
    fn ratio_matches_division_away_from_regularization(a in -1e3f64..1e3, b in -1e3f64..1e3, c in -1e3f64..1e3) {
        let s = StencilValues::new(a, b, c);
        let back = b - a;
        let fwd = c - b;
        prop_assume!(fwd.abs() > 1e-6 * back.abs().max(1e-12));
        prop_assert_eq!(gradient_ratio(&s), back / fwd);
    }

    #[test]
    fn ratio_saturates_on_flat_forward_difference(a in -1e3f64..1e3, jump in 1e-3f64..1e3) {
        let s = StencilValues::new(a - jump, a, a);
        prop_assert_eq!(gradient_ratio(&s), RATIO_MAX);
    }

    #[test]
    fn constant_data_reconstructs_exactly(scheme in scheme_strategy(), v in -1e3f64..1e3) {
        let s = StencilValues::new(v, v, v);
        let f = interface_flux(&s, scheme, 0.01).unwrap();
        assert_relative_eq!(f, v, epsilon = 1e-12, max_relative = 1e-14);
    }

    #[test]
    fn js3_matches_direct_transcription(s in stencil()) {
        let b0 = (s.f0 - s.fm1).powi(2);
        let b1 = (s.fp1 - s.f0).powi(2);
        let a0 = (1.0 / 3.0) / (1e-6 + b0).powi(2);
        let a1 = (2.0 / 3.0) / (1e-6 + b1).powi(2);
        prop_assume!((a0 + a1).is_finite() && a0 + a1 > 0.0);
        let w = compute_weights(WeightScheme::js3(), &s, 0.1).unwrap();
        assert_relative_eq!(w.w0, a0 / (a0 + a1), epsilon = 1e-14);
    }
}

#[test]
fn nonfinite_stencils_are_rejected() {
    let s = StencilValues::new(f64::NAN, 0.0, 1.0);
    assert!(compute_weights(WeightScheme::js3(), &s, 0.1).is_err());
    let s = StencilValues::new(0.0, f64::INFINITY, 1.0);
    assert!(interface_flux(&s, WeightScheme::default(), 0.1).is_err());
}
