use shikit::verify::{find_case, Axis, Interval};
use shikit::{catalog, quadrature_shi, shi, verify_all, verify_case, EvalConfig, GridDefaults, GridSpec, Status};

fn cfg() -> EvalConfig {
    EvalConfig::default()
}

#[test]
fn catalog_shape() {
    let cases = catalog();
    assert!(cases.len() >= 21);
    for id in [
        "SUPERADD", "SUM_GT", "RATIO_LE", "STARSHAPED", "STARSHAPED_REV", "RECIP_SUM", "RECIP_PROD", "SHI_LT_SINH",
        "T_MONO", "K_MONO", "SANDWICH", "SANDWICH_TANH", "SHI_ENV", "HARMONIC", "GEO_CONVEX", "SHI_GT_Z",
        "SHI_OVER_Z_MONO", "TANH_BOUNDS_3", "TANH_BOUNDS_10", "BOUND_IMPROVE", "COSH_ENV",
    ] {
        assert!(cases.iter().any(|c| c.id == id), "{id} missing");
    }
    // Reciprocal-argument cases keep 0 out of their domain.
    for id in ["RECIP_SUM", "RECIP_PROD", "HARMONIC"] {
        let c = find_case(id).unwrap();
        assert!(!c.domain[0].contains(0.0));
        assert_eq!(c.equality_at, Some(vec![1.0]));
    }
}

#[test]
fn superadditivity_on_square_grid() {
    let axis = Axis::log(0.01, 10.0, 50);
    let r = verify_case("SUPERADD", &GridSpec::new(vec![axis, axis]), &cfg()).unwrap();
    assert_eq!(r.status, Status::Pass);
    assert_eq!(r.samples_evaluated, 2500);
    assert!(r.min_margin.unwrap() > 0.0);
}

#[test]
fn equality_values_at_one() {
    let s1 = shi(1.0, &cfg()).unwrap().value;
    for (id, value) in [("RECIP_SUM", 2.11450), ("RECIP_PROD", 1.11778), ("HARMONIC", 1.05725)] {
        let grid = GridSpec::new(vec![Axis::log(0.5, 2.0, 3)]);
        let r = verify_case(id, &grid, &cfg()).unwrap();
        assert_eq!(r.status, Status::Pass, "{id}");
        let eq = r.equality.unwrap();
        assert!(eq.holds && eq.margin.abs() <= 1e-12, "{id}");
        let at_one = match id {
            "RECIP_SUM" => 2.0 * s1,
            "RECIP_PROD" => s1 * s1,
            _ => s1,
        };
        assert!((at_one - value).abs() < 1e-5, "{id}");
    }
}

#[test]
fn reciprocal_margins_away_from_one() {
    for id in ["RECIP_SUM", "RECIP_PROD", "HARMONIC"] {
        for z in [0.5, 2.0] {
            let grid = GridSpec::new(vec![Axis::linear(z, z, 2)]);
            let r = verify_case(id, &grid, &cfg()).unwrap();
            assert!(r.min_margin.unwrap() > 1e-6, "{id} at {z}");
        }
    }
}

#[test]
fn seeded_runs_repeat() {
    let d = GridDefaults { points_1d: 32, points_2d: 8, points_3d: 4, points_k: 3, random_points: 16, seed: 7 };
    assert_eq!(verify_all(&d, &cfg()).unwrap(), verify_all(&d, &cfg()).unwrap());
}

#[test]
fn grid_outside_domain_rejected() {
    let grid = GridSpec::new(vec![Axis::log(0.1, 1.0, 4), Axis::linear(0.5, 1.0, 4)]);
    assert!(verify_case("STARSHAPED", &grid, &cfg()).is_err());
    assert_eq!(find_case("STARSHAPED").unwrap().domain[1], Interval::open(0.0, 1.0));
}

// The starshaped claim as stated (Shi(λz) > λ Shi(z) for 0 < λ < 1, reversed
// for λ > 1) points the wrong way: Shi is convex with Shi(0) = 0, so
// Shi(λz) <= λ Shi(z) on (0, 1). The verifier must report that, and the
// quadrature oracle confirms the counterexample independently of the series.
#[test]
fn starshaped_claim_is_refuted() {
    let lhs = quadrature_shi(0.5, 1e-14).unwrap();
    let rhs = 0.5 * quadrature_shi(1.0, 1e-14).unwrap();
    assert!(lhs < rhs - 0.02, "Shi(0.5) = {lhs}, Shi(1)/2 = {rhs}");

    let grid = GridSpec::new(vec![Axis::log(0.01, 10.0, 16), Axis::linear(0.1, 0.9, 9)]);
    let r = verify_case("STARSHAPED", &grid, &cfg()).unwrap();
    assert_eq!(r.status, Status::Fail);
    assert_eq!(r.failure_count, r.samples_evaluated);

    // λ = 2 on z in (0, 1): Shi(2z) > 2 Shi(z) by superadditivity.
    let grid = GridSpec::new(vec![Axis::log(0.01, 0.99, 16), Axis::linear(2.0, 2.0, 2)]);
    let r = verify_case("STARSHAPED_REV", &grid, &cfg()).unwrap();
    assert_eq!(r.status, Status::Fail);
}

#[test]
fn reversed_starshaped_respects_product_cap() {
    let grid = GridSpec::new(vec![Axis::linear(100.0, 400.0, 4), Axis::linear(1.5, 3.0, 4)]);
    let r = verify_case("STARSHAPED_REV", &grid, &cfg()).unwrap();
    assert!(r.skipped > 0);
    assert_eq!(r.skipped + r.samples_evaluated, 16);
    assert_eq!(r.eval_errors, 0);
}

#[test]
fn certified_cases_on_dense_grid() {
    let grid = GridSpec::new(vec![Axis::log(1e-3, 30.0, 200)]);
    for id in ["TANH_BOUNDS_3", "TANH_BOUNDS_10", "BOUND_IMPROVE", "COSH_ENV"] {
        let r = verify_case(id, &grid, &cfg()).unwrap();
        assert_eq!(r.status, Status::Pass, "{id}");
        assert!(r.certified, "{id}");
    }
}

#[test]
fn short_term_budget_makes_cases_inconclusive() {
    let tight = EvalConfig { max_terms: 8, ..cfg() };
    let r = verify_case("SHI_GT_Z", &GridSpec::new(vec![Axis::log(1e-3, 30.0, 64)]), &tight).unwrap();
    assert!(r.eval_errors > 0);
    assert_eq!(r.status, Status::Inconclusive);
    assert!(r.first_error.is_some());
}
