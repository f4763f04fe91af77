use proptest::prelude::*;
use shikit::bounds::{improvement_margin, tanh_margin};
use shikit::{
    cosh_bounds, quadrature_shi, shi, shi_derivative, shi_envelope, sinhc, tanh_bound, tanh_bound_eval, EvalConfig,
};

fn cfg() -> EvalConfig {
    EvalConfig::default()
}

fn positive() -> impl Strategy<Value = f64> {
    (-3.0f64..1.5).prop_map(|e| 10f64.powf(e))
}

proptest! {
    #[test]
    fn shi_is_odd_bitwise(z in -30.0f64..30.0) {
        prop_assert_eq!(shi(-z, &cfg()).unwrap().value, -shi(z, &cfg()).unwrap().value);
    }

    #[test]
    fn shi_increases(z in positive(), dz in 1e-3f64..1.0) {
        prop_assert!(shi(z + dz, &cfg()).unwrap().value > shi(z, &cfg()).unwrap().value);
    }

    #[test]
    fn shi_between_z_and_sinh(z in positive()) {
        let v = shi(z, &cfg()).unwrap().value;
        prop_assert!(z < v && v < z.sinh());
    }

    #[test]
    fn superadditive(u in positive(), v in positive()) {
        let c = cfg();
        let lhs = shi(u + v, &c).unwrap().value;
        let rhs = shi(u, &c).unwrap().value + shi(v, &c).unwrap().value;
        prop_assert!(lhs > rhs * (1.0 - 1e-14));
    }

    #[test]
    fn series_error_estimate_is_sound(z in positive()) {
        let e = shi(z, &cfg()).unwrap();
        let q = quadrature_shi(z, 1e-14).unwrap();
        prop_assert!((e.value - q).abs() <= 10.0 * e.abs_err_estimate + 1e-14 * q.abs());
    }

    #[test]
    fn derivatives_positive(m in 0u32..=64, z in (-3.0f64..2.8).prop_map(|e| 10f64.powf(e))) {
        prop_assert!(shi_derivative(m, z, &cfg()).unwrap().value > 0.0);
    }

    #[test]
    fn derivative_parity(m in 0u32..=20, z in 0.01f64..50.0) {
        let c = cfg();
        let pos = shi_derivative(m, z, &c).unwrap().value;
        let neg = shi_derivative(m, -z, &c).unwrap().value;
        if m % 2 == 0 {
            prop_assert_eq!(neg, -pos);
        } else {
            prop_assert_eq!(neg, pos);
        }
    }

    #[test]
    fn sinhc_even_and_at_least_one(z in -700.0f64..700.0) {
        let s = sinhc(z).unwrap();
        prop_assert!(s >= 1.0);
        prop_assert_eq!(s, sinhc(-z).unwrap());
    }

    #[test]
    fn tanh_bounds_bracket(m in 3u32..=20, z in positive()) {
        let b = tanh_bound(m).unwrap();
        let margin = tanh_margin(&b, z).unwrap();
        prop_assert!(margin.certain && margin.relative > 0.0, "m = {}, z = {}", m, z);
        // No order does worse than the coarsest bound of the same kind.
        let coarse = tanh_bound(3 + (m + 1) % 2).unwrap();
        let t = z.tanh();
        let gap = (tanh_bound_eval(&b, z).unwrap() - t).abs();
        let coarse_gap = (tanh_bound_eval(&coarse, z).unwrap() - t).abs();
        prop_assert!(gap <= coarse_gap + 4.0 * f64::EPSILON * t);
    }

    #[test]
    fn tanh_bounds_improve(m in 3u32..=18, z in positive()) {
        let loose = tanh_bound(m).unwrap();
        let tight = tanh_bound(m + 2).unwrap();
        let margin = improvement_margin(&tight, &loose, z).unwrap();
        prop_assert!(margin.relative > 0.0);
    }

    #[test]
    fn envelopes_bracket(z in (-2.0f64..1.7).prop_map(|e| 10f64.powf(e))) {
        let c = cosh_bounds(z).unwrap();
        prop_assert!(c.lower <= z.cosh() && z.cosh() <= c.upper);
        let s = shi_envelope(z).unwrap();
        let v = shi(z, &cfg()).unwrap().value;
        prop_assert!(s.lower <= v && v <= s.upper);
    }
}
