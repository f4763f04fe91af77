//! Grid verification of the inequality catalog.
//!
//! Each sample yields one or more `(greater, lesser)` pairs; the sample margin
//! is the smallest `(greater - lesser) / max(|greater|, |lesser|)`. Margins
//! below `-FAIL_TOL` are violations. For strict claims, margins in
//! `[-FAIL_TOL, STRICT_TOL)` cannot be told apart from rounding and are
//! counted as inconclusive. Cases backed by exact or extended-precision
//! arithmetic are decided by the certified sign instead.

mod catalog;
pub mod grid;
mod quadrature;
mod report;

use std::cell::RefCell;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

pub use catalog::{catalog, find_case, InequalityCase};
pub use grid::{Axis, GridSpec, Interval, Sampling};
pub use quadrature::{integrate, quadrature_shi, QuadResult};
pub use report::{ConfigEcho, EqualityCheck, ReportDocument, Status, Summary, VerificationReport, Violation};

use crate::bounds::{self, CertifiedMargin};
use crate::error::{Error, Result};
use crate::shi::{self, EvalConfig};
use catalog::{Check, Side, Source, CHAIN_LOWER, CHAIN_UPPER};

pub const FAIL_TOL: f64 = 1e-13;
pub const STRICT_TOL: f64 = 1e-14;
pub const EQUALITY_TOL: f64 = 1e-12;
pub const ORACLE_TOL: f64 = 1e-9;
/// Fraction of samples recomputed with quadrature.
pub const ORACLE_FRACTION: f64 = 0.05;
/// Quadrature tolerance used by the cross-check.
pub const ORACLE_QUAD_TOL: f64 = 1e-13;
/// Error rate above which a case is reported inconclusive.
pub const MAX_ERROR_RATE: f64 = 0.01;
const MAX_LISTED_FAILURES: usize = 16;

/// Grid sizes and seed used by [`verify_all`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GridDefaults {
    pub points_1d: usize,
    pub points_2d: usize,
    pub points_3d: usize,
    /// Samples of the exponent `k` in three-variable cases.
    pub points_k: usize,
    pub random_points: usize,
    pub seed: u64,
}

impl Default for GridDefaults {
    fn default() -> Self {
        GridDefaults { points_1d: 512, points_2d: 64, points_3d: 16, points_k: 9, random_points: 256, seed: 42 }
    }
}

/// Per-case RNG seed, stable across runs and platforms (FNV-1a of the id).
fn case_seed(seed: u64, id: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in id.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    seed ^ h
}

#[derive(Debug, Clone, Copy)]
struct Margin {
    value: f64,
    certain: bool,
}

impl From<CertifiedMargin> for Margin {
    fn from(m: CertifiedMargin) -> Self {
        Margin { value: m.relative, certain: m.certain }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

fn classify(m: Margin, strict: bool) -> Verdict {
    if m.certain {
        if m.value > 0.0 || (!strict && m.value >= 0.0) {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    } else if m.value < -FAIL_TOL {
        Verdict::Fail
    } else if strict && m.value < STRICT_TOL {
        Verdict::Inconclusive
    } else {
        Verdict::Pass
    }
}

fn sides_margin(sides: &[Side]) -> Result<Option<Margin>> {
    let mut worst: Option<f64> = None;
    for s in sides {
        if !(s.greater.is_finite() && s.lesser.is_finite()) {
            return Err(Error::Domain(format!(
                "non-finite sides ({}, {})",
                s.greater, s.lesser
            )));
        }
        let m = s.relative_margin();
        worst = Some(worst.map_or(m, |w: f64| w.min(m)));
    }
    Ok(worst.map(|value| Margin { value, certain: false }))
}

fn min_certified(ms: impl IntoIterator<Item = Result<CertifiedMargin>>) -> Result<Option<Margin>> {
    let mut worst: Option<Margin> = None;
    for m in ms {
        let m: Margin = m?.into();
        worst = match worst {
            Some(w) if w.value <= m.value => Some(Margin { value: w.value, certain: w.certain && m.certain }),
            Some(w) => Some(Margin { value: m.value, certain: w.certain && m.certain }),
            None => Some(m),
        };
    }
    Ok(worst)
}

fn chain_margin(z: f64) -> Result<Option<Margin>> {
    let lower: Vec<_> = CHAIN_LOWER.iter().map(|&m| bounds::tanh_bound(m)).collect::<Result<_>>()?;
    let upper: Vec<_> = CHAIN_UPPER.iter().map(|&m| bounds::tanh_bound(m)).collect::<Result<_>>()?;
    let pairs = lower.windows(2).chain(upper.windows(2));
    min_certified(pairs.map(|w| bounds::improvement_margin(&w[1], &w[0], z)))
}

/// Margin at one point; `Ok(None)` for points outside the evaluated region.
fn point_margin(check: &Check, p: &[f64], src: &Source) -> Result<Option<Margin>> {
    match check {
        Check::Pointwise(f) => sides_margin(&f(p, src)?),
        Check::TanhBound(m) => {
            let b = bounds::tanh_bound(*m)?;
            Ok(Some(bounds::tanh_margin(&b, p[0])?.into()))
        }
        Check::BoundChain => chain_margin(p[0]),
        Check::CoshEnvelope => {
            let (lo, hi) = bounds::cosh_margins(p[0])?;
            min_certified([Ok(lo), Ok(hi)])
        }
        Check::Monotone { .. } => unreachable!("monotone cases are evaluated pairwise"),
    }
}

/// Arguments at which the check evaluates `Shi` for the sample `p`.
fn shi_arguments(check: &Check, p: &[f64], cfg: &EvalConfig) -> Result<Vec<f64>> {
    let seen = RefCell::new(Vec::new());
    let src = Source::Recording(*cfg, &seen);
    match check {
        Check::Pointwise(f) => {
            f(p, &src)?;
        }
        Check::Monotone { f, .. } => {
            for &x in p {
                f(x, &src)?;
            }
        }
        _ => {}
    }
    Ok(seen.into_inner())
}

/// Largest relative deviation between series and quadrature `Shi` values
/// over the arguments used at one sample.
fn oracle_deviation(check: &Check, p: &[f64], cfg: &EvalConfig) -> Result<f64> {
    let mut worst = 0.0f64;
    for z in shi_arguments(check, p, cfg)? {
        let series = shi::shi(z, cfg)?.value;
        let quad = quadrature_shi(z, ORACLE_QUAD_TOL)?;
        worst = worst.max(rel_dev(series, quad));
    }
    Ok(worst)
}

fn rel_dev(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

struct Sample {
    point: Vec<f64>,
    outcome: Result<Option<Margin>>,
}

fn evaluate(case: &InequalityCase, points: Vec<Vec<f64>>, cfg: &EvalConfig) -> Vec<Sample> {
    // Built per task: the recording variant of `Source` is not `Sync`.
    let src = || Source::Series(*cfg);
    match case.check {
        Check::Monotone { f, increasing } => {
            let mut xs: Vec<f64> = points.into_iter().map(|p| p[0]).collect();
            xs.sort_by(f64::total_cmp);
            xs.dedup();
            let values: Vec<Result<f64>> = xs.par_iter().map(|&x| f(x, &src())).collect();
            (0..xs.len().saturating_sub(1))
                .map(|i| {
                    let outcome = match (&values[i], &values[i + 1]) {
                        (Ok(a), Ok(b)) => {
                            let side = if increasing { Side { greater: *b, lesser: *a } } else { Side { greater: *a, lesser: *b } };
                            sides_margin(&[side])
                        }
                        (Err(e), _) | (_, Err(e)) => Err(e.clone()),
                    };
                    Sample { point: vec![xs[i], xs[i + 1]], outcome }
                })
                .collect()
        }
        check => points
            .into_par_iter()
            .map(|p| {
                let outcome = point_margin(&check, &p, &src());
                Sample { point: p, outcome }
            })
            .collect(),
    }
}

/// Verifies one case on `grid`.
pub fn verify_case(id: &str, grid: &GridSpec, cfg: &EvalConfig) -> Result<VerificationReport> {
    let case = find_case(id)?;
    verify_with(&case, grid, cfg)
}

/// Verifies every cataloged case on its default grid.
pub fn verify_all(defaults: &GridDefaults, cfg: &EvalConfig) -> Result<Vec<VerificationReport>> {
    cfg.validate()?;
    catalog().iter().map(|case| verify_with(case, &case.default_grid(defaults), cfg)).collect()
}

/// Verifies the cases named in `ids` (all of them for `["all"]` or an empty
/// list) on their default grids and assembles the report document.
pub fn verify_document<S: AsRef<str>>(ids: &[S], defaults: &GridDefaults, cfg: &EvalConfig) -> Result<ReportDocument> {
    cfg.validate()?;
    let all = catalog();
    let ids: Vec<&str> = ids.iter().map(AsRef::as_ref).collect();
    let selected: Vec<&InequalityCase> = if ids.is_empty() || ids == ["all"] {
        all.iter().collect()
    } else {
        if ids.contains(&"all") {
            return Err(Error::UnknownCase("`all` cannot be combined with case ids".into()));
        }
        let mut picked: Vec<&InequalityCase> = Vec::new();
        for id in ids {
            let case = all.iter().find(|c| c.id == id).ok_or_else(|| Error::UnknownCase(id.to_string()))?;
            if !picked.iter().any(|p| p.id == case.id) {
                picked.push(case);
            }
        }
        picked
    };
    let reports = selected
        .iter()
        .map(|case| verify_with(case, &case.default_grid(defaults), cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(ReportDocument {
        tool_version: crate::TOOL_VERSION,
        config_echo: ConfigEcho {
            eval: *cfg,
            grid: *defaults,
            cases: selected.iter().map(|c| c.id.to_string()).collect(),
            fail_tol: FAIL_TOL,
            strict_tol: STRICT_TOL,
            equality_tol: EQUALITY_TOL,
            oracle_tol: ORACLE_TOL,
            oracle_fraction: ORACLE_FRACTION,
        },
        summary: Summary::tally(&reports),
        reports,
    })
}

pub(crate) fn verify_with(case: &InequalityCase, grid: &GridSpec, cfg: &EvalConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    grid.validate(&case.domain)?;
    let src = Source::Series(*cfg);
    let mut rng = ChaCha8Rng::seed_from_u64(case_seed(grid.rng_seed, case.id));
    let points = grid.points(&mut rng);
    let samples = evaluate(case, points, cfg);

    let mut r = VerificationReport::empty(case.id);
    r.certified = matches!(case.check, Check::TanhBound(_) | Check::BoundChain | Check::CoshEnvelope);
    let mut evaluated: Vec<usize> = Vec::new();
    for (i, s) in samples.iter().enumerate() {
        match &s.outcome {
            Err(e) => {
                r.eval_errors += 1;
                if r.first_error.is_none() {
                    r.first_error = Some(format!("at {:?}: {e}", s.point));
                }
            }
            Ok(None) => r.skipped += 1,
            Ok(Some(m)) => {
                evaluated.push(i);
                r.certified &= m.certain;
                if r.min_margin.is_none_or(|w| m.value < w) {
                    r.min_margin = Some(m.value);
                    r.argmin = Some(s.point.clone());
                }
                match classify(*m, case.strict) {
                    Verdict::Pass => {}
                    Verdict::Inconclusive => r.inconclusive_samples += 1,
                    Verdict::Fail => {
                        r.failure_count += 1;
                        if r.failures.len() < MAX_LISTED_FAILURES {
                            r.failures.push(Violation { point: s.point.clone(), margin: m.value });
                        }
                    }
                }
            }
        }
    }
    r.samples_evaluated = evaluated.len();

    if let Some(at) = &case.equality_at {
        let outcome = point_margin(&case.check, at, &src)?;
        let margin = outcome.map_or(f64::NAN, |m| m.value);
        r.equality = Some(EqualityCheck { at: at.clone(), margin, holds: margin.abs() <= EQUALITY_TOL });
    }

    let mut oracle_ok = true;
    if case.uses_shi && !evaluated.is_empty() {
        let n = ((evaluated.len() as f64 * ORACLE_FRACTION).ceil() as usize).max(1);
        let picks: Vec<usize> = index::sample(&mut rng, evaluated.len(), n).into_iter().map(|k| evaluated[k]).collect();
        let devs: Vec<Result<f64>> =
            picks.par_iter().map(|&i| oracle_deviation(&case.check, &samples[i].point, cfg)).collect();
        r.oracle_checks = devs.len();
        let mut worst = 0.0f64;
        for d in devs {
            match d {
                Ok(d) => worst = worst.max(d),
                Err(e) => {
                    oracle_ok = false;
                    r.notes.push(format!("oracle evaluation failed: {e}"));
                }
            }
        }
        r.oracle_max_rel_dev = Some(worst);
        if worst > ORACLE_TOL {
            oracle_ok = false;
            r.notes.push(format!("series and quadrature disagree by {worst:e}"));
        }
    }

    let total = samples.len() - r.skipped;
    let error_rate = if total == 0 { 0.0 } else { r.eval_errors as f64 / total as f64 };
    if error_rate > MAX_ERROR_RATE {
        r.notes.push(format!("{} of {} samples failed to evaluate", r.eval_errors, total));
    }
    if r.skipped > 0 {
        r.notes.push(format!("{} grid points outside the evaluated region were skipped", r.skipped));
    }
    let equality_broken = r.equality.as_ref().is_some_and(|e| !e.holds);
    r.status = if r.failure_count > 0 || equality_broken {
        Status::Fail
    } else if r.samples_evaluated == 0 || r.inconclusive_samples > 0 || error_rate > MAX_ERROR_RATE || !oracle_ok {
        Status::Inconclusive
    } else {
        Status::Pass
    };
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification() {
        let m = |value, certain| Margin { value, certain };
        assert_eq!(classify(m(1e-3, false), true), Verdict::Pass);
        assert_eq!(classify(m(1e-15, false), true), Verdict::Inconclusive);
        assert_eq!(classify(m(-1e-15, false), true), Verdict::Inconclusive);
        assert_eq!(classify(m(-1e-15, false), false), Verdict::Pass);
        assert_eq!(classify(m(-1e-12, false), false), Verdict::Fail);
        assert_eq!(classify(m(1e-40, true), true), Verdict::Pass);
        assert_eq!(classify(m(0.0, true), true), Verdict::Fail);
        assert_eq!(classify(m(0.0, true), false), Verdict::Pass);
        assert_eq!(classify(m(-1e-40, true), false), Verdict::Fail);
    }

    #[test]
    fn seeds_differ_per_case() {
        assert_ne!(case_seed(42, "SUPERADD"), case_seed(42, "SUM_GT"));
        assert_eq!(case_seed(42, "SUPERADD"), case_seed(42, "SUPERADD"));
    }

    #[test]
    fn small_grid_passes() {
        let grid = GridSpec::new(vec![Axis::log(0.01, 10.0, 32)]);
        let r = verify_case("SHI_GT_Z", &grid, &EvalConfig::default()).unwrap();
        assert_eq!(r.status, Status::Pass, "{r:?}");
        assert_eq!(r.samples_evaluated, 32);
        assert!(r.oracle_checks >= 1);
        assert!(r.oracle_max_rel_dev.unwrap() < ORACLE_TOL);
    }

    #[test]
    fn grid_mismatch_rejected() {
        let grid = GridSpec::new(vec![Axis::log(0.01, 10.0, 8)]);
        assert!(verify_case("SUPERADD", &grid, &EvalConfig::default()).is_err());
    }

    #[test]
    fn monotone_pairs() {
        let grid = GridSpec::new(vec![Axis::log(0.01, 10.0, 16)]);
        let r = verify_case("K_MONO", &grid, &EvalConfig::default()).unwrap();
        assert_eq!(r.samples_evaluated, 15);
        assert_eq!(r.status, Status::Pass, "{r:?}");
    }

    #[test]
    fn equality_point_recorded() {
        let grid = GridSpec::new(vec![Axis::log(0.5, 2.0, 9)]);
        let r = verify_case("RECIP_PROD", &grid, &EvalConfig::default()).unwrap();
        let eq = r.equality.unwrap();
        assert!(eq.holds);
        assert_eq!(eq.margin, 0.0);
    }

    #[test]
    fn certified_case() {
        let grid = GridSpec::new(vec![Axis::log(1e-3, 30.0, 16)]);
        let r = verify_case("TANH_BOUNDS_9", &grid, &EvalConfig::default()).unwrap();
        assert_eq!(r.status, Status::Pass, "{r:?}");
        assert!(r.certified);
        assert_eq!(r.oracle_checks, 0);
    }
}
