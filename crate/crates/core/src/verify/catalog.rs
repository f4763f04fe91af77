//! The inequality catalog: one entry per claim about `Shi`, `tanh` and `cosh`.

use std::cell::RefCell;

use serde::Serialize;

use super::grid::{Axis, GridSpec, Interval};
use super::GridDefaults;
use crate::bounds;
use crate::error::{Error, Result};
use crate::shi::{self, EvalConfig};

/// Where `Shi` values come from while checking a case.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Source<'a> {
    Series(EvalConfig),
    /// Series values, remembering every argument asked for.
    Recording(EvalConfig, &'a RefCell<Vec<f64>>),
}

impl Source<'_> {
    pub(crate) fn shi(&self, z: f64) -> Result<f64> {
        match self {
            Source::Series(cfg) => shi::shi(z, cfg).map(|e| e.value),
            Source::Recording(cfg, seen) => {
                seen.borrow_mut().push(z);
                shi::shi(z, cfg).map(|e| e.value)
            }
        }
    }
}

/// One side of an inequality at a sample: `greater` should exceed `lesser`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Side {
    pub greater: f64,
    pub lesser: f64,
}

impl Side {
    fn new(greater: f64, lesser: f64) -> Self {
        Side { greater, lesser }
    }

    pub(crate) fn scale(&self) -> f64 {
        self.greater.abs().max(self.lesser.abs())
    }

    pub(crate) fn relative_margin(&self) -> f64 {
        let scale = self.scale();
        if scale == 0.0 {
            0.0
        } else {
            (self.greater - self.lesser) / scale
        }
    }
}

/// An empty result marks a point outside the evaluated region.
type Pointwise = fn(&[f64], &Source<'_>) -> Result<Vec<Side>>;
type Scalar = fn(f64, &Source<'_>) -> Result<f64>;

#[derive(Debug, Clone, Copy)]
pub(crate) enum Check {
    Pointwise(Pointwise),
    /// Discrete monotonicity over consecutive grid points.
    Monotone { f: Scalar, increasing: bool },
    TanhBound(u32),
    BoundChain,
    CoshEnvelope,
}

/// Default sampling layouts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub(crate) enum Layout {
    Positive,
    Reciprocal,
    Pair,
    Starshaped,
    StarshapedReversed,
    GeoConvex,
}

/// A cataloged claim.
#[derive(Debug, Clone, Serialize)]
pub struct InequalityCase {
    pub id: &'static str,
    pub arity: usize,
    pub variables: Vec<&'static str>,
    pub domain: Vec<Interval>,
    pub strict: bool,
    pub description: &'static str,
    pub statement: &'static str,
    /// A point where the claim holds with equality.
    pub equality_at: Option<Vec<f64>>,
    /// Whether `Shi` enters the claim (and so the quadrature cross-check applies).
    pub uses_shi: bool,
    #[serde(skip)]
    pub(crate) check: Check,
    #[serde(skip)]
    pub(crate) layout: Layout,
}

/// Orders compared by the improvement-chain case.
pub(crate) const CHAIN_LOWER: [u32; 5] = [3, 5, 7, 9, 11];
pub(crate) const CHAIN_UPPER: [u32; 5] = [4, 6, 8, 10, 12];

/// Largest `λz` evaluated by the reversed starshaped case.
pub(crate) const STARSHAPED_PRODUCT_CAP: f64 = 700.0;

const ENDPOINT_GAP: f64 = 1e-3;
const GRID_LO: f64 = 1e-3;
const GRID_HI: f64 = 30.0;

impl InequalityCase {
    pub fn default_grid(&self, d: &GridDefaults) -> GridSpec {
        let log = |n| Axis::log(GRID_LO, GRID_HI, n);
        let (axes, random) = match self.layout {
            Layout::Positive => (vec![log(d.points_1d)], 0),
            // Odd count so the equality point z = 1 sits in the middle.
            Layout::Reciprocal => (vec![Axis::log(1.0 / GRID_HI, GRID_HI, d.points_1d | 1)], 0),
            Layout::Pair => (vec![log(d.points_2d), log(d.points_2d)], d.random_points),
            Layout::Starshaped => (
                vec![log(d.points_2d), Axis::linear(ENDPOINT_GAP, 1.0 - ENDPOINT_GAP, d.points_2d)],
                d.random_points,
            ),
            Layout::StarshapedReversed => (
                vec![log(d.points_2d), Axis::linear(1.0 + ENDPOINT_GAP, 20.0, d.points_2d)],
                d.random_points,
            ),
            Layout::GeoConvex => (
                vec![log(d.points_3d), log(d.points_3d), Axis::linear(0.0, 1.0, d.points_k)],
                d.random_points,
            ),
        };
        GridSpec { axes, random_points: random, rng_seed: d.seed }
    }
}

fn sh(src: &Source, z: f64) -> Result<f64> {
    src.shi(z)
}

fn superadd(p: &[f64], s: &Source) -> Result<Vec<Side>> {
    let (u, v) = (p[0], p[1]);
    Ok(vec![Side::new(sh(s, u + v)?, sh(s, u)? + sh(s, v)?)])
}

fn sum_gt(p: &[f64], s: &Source) -> Result<Vec<Side>> {
    let (u, v) = (p[0], p[1]);
    Ok(vec![Side::new(sh(s, u)? + sh(s, v)?, u + v)])
}

fn ratio_le(p: &[f64], s: &Source) -> Result<Vec<Side>> {
    let (u, v) = (p[0].min(p[1]), p[0].max(p[1]));
    Ok(vec![Side::new(u / v, sh(s, u)? / sh(s, v)?)])
}

fn starshaped(p: &[f64], s: &Source) -> Result<Vec<Side>> {
    let (z, lambda) = (p[0], p[1]);
    Ok(vec![Side::new(sh(s, lambda * z)?, lambda * sh(s, z)?)])
}

fn starshaped_rev(p: &[f64], s: &Source) -> Result<Vec<Side>> {
    let (z, lambda) = (p[0], p[1]);
    if lambda * z > STARSHAPED_PRODUCT_CAP {
        return Ok(Vec::new());
    }
    Ok(vec![Side::new(lambda * sh(s, z)?, sh(s, lambda * z)?)])
}

fn recip_sum(p: &[f64], s: &Source) -> Result<Vec<Side>> {
    let z = p[0];
    Ok(vec![Side::new(sh(s, z)? + sh(s, 1.0 / z)?, 2.0 * sh(s, 1.0)?)])
}

fn recip_prod(p: &[f64], s: &Source) -> Result<Vec<Side>> {
    let z = p[0];
    let one = sh(s, 1.0)?;
    Ok(vec![Side::new(sh(s, z)? * sh(s, 1.0 / z)?, one * one)])
}

fn harmonic(p: &[f64], s: &Source) -> Result<Vec<Side>> {
    let z = p[0];
    let (a, b) = (sh(s, z)?, sh(s, 1.0 / z)?);
    Ok(vec![Side::new(sh(s, 1.0)?, 2.0 * a * b / (a + b))])
}

fn shi_lt_sinh(p: &[f64], s: &Source) -> Result<Vec<Side>> {
    Ok(vec![Side::new(p[0].sinh(), sh(s, p[0])?)])
}

fn sinhc_lt_cosh(p: &[f64], _: &Source) -> Result<Vec<Side>> {
    Ok(vec![Side::new(p[0].cosh(), shi::sinhc(p[0])?)])
}

fn shi_gt_z(p: &[f64], s: &Source) -> Result<Vec<Side>> {
    Ok(vec![Side::new(sh(s, p[0])?, p[0])])
}

fn sandwich(p: &[f64], s: &Source) -> Result<Vec<Side>> {
    let z = p[0];
    let mid = z * sh(s, z)? * z.cosh();
    let sq = z.sinh() * z.sinh();
    Ok(vec![Side::new(mid, sq), Side::new(2.0 * sq, mid)])
}

fn sandwich_tanh(p: &[f64], s: &Source) -> Result<Vec<Side>> {
    let z = p[0];
    let mid = sh(s, z)? / z.sinh();
    let t = z.tanh() / z;
    Ok(vec![Side::new(mid, t), Side::new(2.0 * t, mid)])
}

fn shi_env(p: &[f64], s: &Source) -> Result<Vec<Side>> {
    let z = p[0];
    let env = bounds::shi_envelope(z)?;
    let v = sh(s, z)?;
    Ok(vec![Side::new(v, env.lower), Side::new(env.upper, v)])
}

fn geo_convex(p: &[f64], s: &Source) -> Result<Vec<Side>> {
    let (u, v, k) = (p[0], p[1], p[2]);
    let mixed = u.powf(k) * v.powf(1.0 - k);
    Ok(vec![Side::new(sh(s, u)?.powf(k) * sh(s, v)?.powf(1.0 - k), sh(s, mixed)?)])
}

fn sinh_over_shi(z: f64, s: &Source) -> Result<f64> {
    Ok(z.sinh() / sh(s, z)?)
}

fn sinh_over_shi_sq(z: f64, s: &Source) -> Result<f64> {
    let v = sh(s, z)?;
    Ok(z.sinh() / (v * v))
}

fn shi_over_z(z: f64, s: &Source) -> Result<f64> {
    Ok(sh(s, z)? / z)
}

fn shi_minus_sinh(z: f64, s: &Source) -> Result<f64> {
    Ok(sh(s, z)? - z.sinh())
}

struct Entry {
    id: &'static str,
    variables: &'static [&'static str],
    domain: Vec<Interval>,
    strict: bool,
    description: &'static str,
    statement: &'static str,
    equality_at: Option<Vec<f64>>,
    uses_shi: bool,
    check: Check,
    layout: Layout,
}

impl From<Entry> for InequalityCase {
    fn from(e: Entry) -> Self {
        InequalityCase {
            id: e.id,
            arity: e.variables.len(),
            variables: e.variables.to_vec(),
            domain: e.domain,
            strict: e.strict,
            description: e.description,
            statement: e.statement,
            equality_at: e.equality_at,
            uses_shi: e.uses_shi,
            check: e.check,
            layout: e.layout,
        }
    }
}

const TANH_IDS: [&str; 8] = [
    "TANH_BOUNDS_3",
    "TANH_BOUNDS_4",
    "TANH_BOUNDS_5",
    "TANH_BOUNDS_6",
    "TANH_BOUNDS_7",
    "TANH_BOUNDS_8",
    "TANH_BOUNDS_9",
    "TANH_BOUNDS_10",
];

/// Every cataloged claim, sorted by id.
pub fn catalog() -> Vec<InequalityCase> {
    let pos = Interval::positive;
    let one = |id, statement, description, strict, check, uses_shi| Entry {
        id,
        variables: &["z"],
        domain: vec![pos()],
        strict,
        description,
        statement,
        equality_at: None,
        uses_shi,
        check,
        layout: Layout::Positive,
    };
    let pair = |id, statement, description, strict, f| Entry {
        id,
        variables: &["u", "v"],
        domain: vec![pos(), pos()],
        strict,
        description,
        statement,
        equality_at: None,
        uses_shi: true,
        check: Check::Pointwise(f),
        layout: Layout::Pair,
    };
    let recip = |id, statement, description, f| Entry {
        id,
        variables: &["z"],
        domain: vec![pos()],
        strict: false,
        description,
        statement,
        equality_at: Some(vec![1.0]),
        uses_shi: true,
        check: Check::Pointwise(f),
        layout: Layout::Reciprocal,
    };

    let mut entries = vec![
        pair(
            "SUPERADD",
            "Shi(u+v) > Shi(u) + Shi(v)",
            "Shi is superadditive on the positive axis",
            true,
            superadd as Pointwise,
        ),
        pair("SUM_GT", "Shi(u) + Shi(v) > u + v", "Shi(u) + Shi(v) exceeds u + v", true, sum_gt),
        pair(
            "RATIO_LE",
            "Shi(u)/Shi(v) <= u/v for 0 < u <= v",
            "ratio of Shi values is dominated by the ratio of arguments",
            false,
            ratio_le,
        ),
        Entry {
            id: "STARSHAPED",
            variables: &["z", "lambda"],
            domain: vec![pos(), Interval::open(0.0, 1.0)],
            strict: true,
            description: "starshaped comparison for scale factors below one",
            statement: "Shi(lambda z) > lambda Shi(z), 0 < lambda < 1",
            equality_at: None,
            uses_shi: true,
            check: Check::Pointwise(starshaped),
            layout: Layout::Starshaped,
        },
        Entry {
            id: "STARSHAPED_REV",
            variables: &["z", "lambda"],
            domain: vec![pos(), Interval::open(1.0, f64::INFINITY)],
            strict: true,
            description: "starshaped comparison reverses for scale factors above one (lambda z <= 700)",
            statement: "Shi(lambda z) < lambda Shi(z), lambda > 1",
            equality_at: None,
            uses_shi: true,
            check: Check::Pointwise(starshaped_rev),
            layout: Layout::StarshapedReversed,
        },
        recip(
            "RECIP_SUM",
            "Shi(z) + Shi(1/z) >= 2 Shi(1)",
            "sum with the reciprocal argument is minimal at z = 1",
            recip_sum as Pointwise,
        ),
        recip(
            "RECIP_PROD",
            "Shi(z) Shi(1/z) >= Shi(1)^2",
            "product with the reciprocal argument is minimal at z = 1",
            recip_prod,
        ),
        recip(
            "HARMONIC",
            "2 Shi(z) Shi(1/z) / (Shi(z) + Shi(1/z)) <= Shi(1)",
            "harmonic mean of Shi(z) and Shi(1/z) never exceeds Shi(1)",
            harmonic,
        ),
        one(
            "SHI_LT_SINH",
            "Shi(z) < sinh(z)",
            "Shi stays below sinh",
            true,
            Check::Pointwise(shi_lt_sinh),
            true,
        ),
        one(
            "SINHC_LT_COSH",
            "sinh(z)/z < cosh(z)",
            "sinhc stays below cosh",
            true,
            Check::Pointwise(sinhc_lt_cosh),
            false,
        ),
        one("SHI_GT_Z", "Shi(z) > z", "Shi exceeds the identity", true, Check::Pointwise(shi_gt_z), true),
        one(
            "SHI_OVER_Z_MONO",
            "Shi(z)/z is increasing",
            "Shi(z)/z increases on the positive axis",
            true,
            Check::Monotone { f: shi_over_z, increasing: true },
            true,
        ),
        one(
            "T_MONO",
            "sinh(z)/Shi(z) is increasing",
            "sinh/Shi increases on the positive axis",
            true,
            Check::Monotone { f: sinh_over_shi, increasing: true },
            true,
        ),
        one(
            "K_MONO",
            "sinh(z)/Shi(z)^2 is decreasing",
            "sinh/Shi^2 decreases on the positive axis",
            true,
            Check::Monotone { f: sinh_over_shi_sq, increasing: false },
            true,
        ),
        one(
            "V_MONO",
            "Shi(z) - sinh(z) is decreasing",
            "Shi - sinh decreases on the positive axis",
            true,
            Check::Monotone { f: shi_minus_sinh, increasing: false },
            true,
        ),
        one(
            "SANDWICH",
            "sinh(z)^2 < z Shi(z) cosh(z) < 2 sinh(z)^2",
            "z Shi(z) cosh(z) lies between sinh^2 and twice sinh^2",
            true,
            Check::Pointwise(sandwich),
            true,
        ),
        one(
            "SANDWICH_TANH",
            "tanh(z)/z < Shi(z)/sinh(z) < 2 tanh(z)/z",
            "Shi/sinh lies between tanh(z)/z and twice that",
            true,
            Check::Pointwise(sandwich_tanh),
            true,
        ),
        one(
            "SHI_ENV",
            "z/2 + (cosh z - 1)/z < Shi(z) < 2 (cosh z - 1)/z",
            "elementary envelope of Shi",
            true,
            Check::Pointwise(shi_env),
            true,
        ),
        Entry {
            id: "GEO_CONVEX",
            variables: &["u", "v", "k"],
            domain: vec![pos(), pos(), Interval::closed(0.0, 1.0)],
            strict: false,
            description: "Shi is geometrically convex",
            statement: "Shi(u^k v^(1-k)) <= Shi(u)^k Shi(v)^(1-k), 0 <= k <= 1",
            equality_at: None,
            uses_shi: true,
            check: Check::Pointwise(geo_convex),
            layout: Layout::GeoConvex,
        },
        one(
            "BOUND_IMPROVE",
            "lower bounds increase and upper bounds decrease with the order",
            "rational tanh bounds tighten as the order grows (orders 3..=12)",
            true,
            Check::BoundChain,
            false,
        ),
        Entry {
            domain: vec![Interval { lo: 0.0, hi: bounds::COSH_BOUND_CAP, lo_open: true, hi_open: false }],
            ..one(
                "COSH_ENV",
                "(z^2+2)/2 < cosh(z) < exp(z^2/6) ((z^2+2)/2)^(2/3)",
                "cosh envelope obtained by integrating the order-3/4 tanh bounds",
                true,
                Check::CoshEnvelope,
                false,
            )
        },
    ];
    for (i, id) in TANH_IDS.iter().enumerate() {
        let m = i as u32 + 3;
        let (statement, description) = if m % 2 == 1 {
            ("p'(z)/p(z) < tanh(z)", "rational lower bound for tanh from an odd derivative order")
        } else {
            ("tanh(z) < q(z)/q'(z)", "rational upper bound for tanh from an even derivative order")
        };
        entries.push(one(id, statement, description, true, Check::TanhBound(m), false));
    }

    let mut cases: Vec<InequalityCase> = entries.into_iter().map(Into::into).collect();
    cases.sort_by(|a, b| a.id.cmp(b.id));
    cases
}

/// Looks a case up by id.
pub fn find_case(id: &str) -> Result<InequalityCase> {
    catalog().into_iter().find(|c| c.id == id).ok_or_else(|| Error::UnknownCase(id.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn ids_unique_and_sorted() {
        let cases = catalog();
        assert!(cases.len() >= 21);
        let ids: HashSet<_> = cases.iter().map(|c| c.id).collect();
        assert_eq!(ids.len(), cases.len());
        assert!(cases.windows(2).all(|w| w[0].id < w[1].id));
    }

    #[test]
    fn expected_shapes() {
        let sup = find_case("SUPERADD").unwrap();
        assert_eq!(sup.arity, 2);
        assert!(sup.strict);
        assert_eq!(sup.domain, vec![Interval::positive(); 2]);

        let geo = find_case("GEO_CONVEX").unwrap();
        assert_eq!(geo.arity, 3);
        assert!(!geo.strict);
        assert_eq!(geo.domain[2], Interval::closed(0.0, 1.0));

        let rs = find_case("RECIP_SUM").unwrap();
        assert_eq!(rs.equality_at, Some(vec![1.0]));

        assert!(matches!(find_case("NO_SUCH"), Err(Error::UnknownCase(_))));
    }

    #[test]
    fn default_grids_fit_domains() {
        let d = GridDefaults::default();
        for case in catalog() {
            let g = case.default_grid(&d);
            g.validate(&case.domain).unwrap_or_else(|e| panic!("{}: {e}", case.id));
        }
    }

    #[test]
    fn spot_margins() {
        let src = Source::Series(EvalConfig::default());
        let s = superadd(&[0.5, 2.0], &src).unwrap()[0];
        // mpmath: Shi(2.5) - Shi(0.5) - Shi(2) = 0.54077622304979238640
        assert!((s.greater - s.lesser - 0.5407762230497924).abs() < 1e-13);
        let r = recip_sum(&[1.0], &src).unwrap()[0];
        assert_eq!(r.greater - r.lesser, 0.0);
        assert!((r.lesser - 2.11450).abs() < 1e-5);
    }
}
