use num_bigint::BigInt;
use shikit::verify::integrate;
use shikit::{derivative_polynomials, eval_closed_form, shi_derivative, EvalConfig, IntPolynomial};

fn poly(c: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64s(c)
}

/// Published closed forms `(cosh multiplier, sinh multiplier)` for orders
/// 3 through 10, lowest degree first.
fn displayed(m: u32) -> (IntPolynomial, IntPolynomial) {
    match m {
        3 => (poly(&[0, -2]), poly(&[2, 0, 1])),
        4 => (poly(&[0, 6, 0, 1]), poly(&[-6, 0, -3])),
        5 => (poly(&[0, -24, 0, -4]), poly(&[24, 0, 12, 0, 1])),
        6 => (poly(&[0, 120, 0, 20, 0, 1]), poly(&[-120, 0, -60, 0, -5])),
        7 => (poly(&[0, -720, 0, -120, 0, -6]), poly(&[720, 0, 360, 0, 30, 0, 1])),
        8 => (poly(&[0, 5040, 0, 840, 0, 42, 0, 1]), poly(&[-5040, 0, -2520, 0, -210, 0, -7])),
        9 => (
            poly(&[0, -40320, 0, -6720, 0, -336, 0, -8]),
            poly(&[40320, 0, 20160, 0, 1680, 0, 56, 0, 1]),
        ),
        // The printed cosh side runs "60480z^3362880z"; the missing "+"
        // is restored here.
        10 => (
            poly(&[0, 362880, 0, 60480, 0, 3024, 0, 72, 0, 1]),
            poly(&[-362880, 0, -181440, 0, -15120, 0, -504, 0, -9]),
        ),
        _ => unreachable!(),
    }
}

#[test]
fn generated_forms_match_published_ones() {
    for m in 3..=10 {
        let cf = derivative_polynomials(m).unwrap();
        let (cosh, sinh) = displayed(m);
        assert_eq!(cf.cosh_poly, cosh, "m = {m}");
        assert_eq!(cf.sinh_poly, sinh, "m = {m}");
    }
}

#[test]
fn low_orders() {
    let one = derivative_polynomials(1).unwrap();
    assert!(one.cosh_poly.is_zero());
    assert_eq!(one.sinh_poly, poly(&[1]));
    assert_eq!(one.cosh_poly.to_list_string(), "[]");
    let two = derivative_polynomials(2).unwrap();
    assert_eq!(two.cosh_poly, poly(&[0, 1]));
    assert_eq!(two.sinh_poly, poly(&[-1]));
}

#[test]
fn order_64_coefficients_exceed_u64() {
    let cf = derivative_polynomials(64).unwrap();
    // Constant term of the sinh side is -63!.
    let fact: BigInt = (1..=63u32).map(BigInt::from).product();
    assert_eq!(cf.sinh_poly.coeff(0), -fact);
    assert!(cf.sinh_poly.max_abs_coeff() > BigInt::from(u64::MAX));
}

/// Integral form of `Shi^(m)`: ∫₀¹ t^(m-1) sinh(zt) dt (even m) or cosh (odd m).
fn by_quadrature(m: u32, z: f64) -> f64 {
    let f = move |t: f64| {
        let w = t.powi(m as i32 - 1);
        if m.is_multiple_of(2) {
            w * (z * t).sinh()
        } else {
            w * (z * t).cosh()
        }
    };
    integrate(f, 0.0, 1.0, 1e-14).unwrap().value
}

#[test]
fn closed_forms_agree_with_quadrature() {
    for m in 1..=12 {
        let cf = derivative_polynomials(m).unwrap();
        for z in [0.5, 1.0, 2.0, 5.0, 10.0] {
            let q = by_quadrature(m, z);
            let c = eval_closed_form(&cf, z).unwrap();
            assert!(((c - q) / q).abs() <= 1e-9, "m = {m}, z = {z}: {c} vs {q}");
        }
    }
}

#[test]
fn series_and_closed_form_paths_meet_at_cutoff() {
    let cfg = EvalConfig::default();
    for m in 1..=30 {
        let below = shi_derivative(m, 4.0, &cfg).unwrap();
        let above = eval_closed_form(&derivative_polynomials(m).unwrap(), 4.0).unwrap();
        assert!(((below.value - above) / above).abs() < 1e-13, "m = {m}");
    }
}
