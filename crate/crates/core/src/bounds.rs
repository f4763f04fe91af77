//! Rational bounds for `tanh`, the matching envelope for `cosh`, and the
//! elementary envelope for `Shi`.
//!
//! Positivity of `Shi^(m)` on `z > 0` rearranges, using the closed forms of
//! [`crate::poly`], into `tanh(z) > -A_m(z)/B_m(z)` for odd `m` and
//! `tanh(z) < A_m(z)/(-B_m(z))` for even `m`. The lower bounds have the shape
//! `p'/p` and the upper bounds `q/q'` for integer polynomials `p`, `q`.
//!
//! Near the origin the gap between `tanh` and a high-order bound drops far
//! below double precision (about `z^(2m)`), so the margin helpers here work
//! in exact or extended arithmetic and only round the final ratio.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hiprec::{self, Dyadic};
use crate::poly::{self, IntPolynomial};

pub const MIN_TANH_ORDER: u32 = 3;
/// `z^2/6` must stay representable in the exponent of the `cosh` upper bound.
pub const COSH_BOUND_CAP: f64 = 60.0;

const START_PREC: u64 = 128;
const MAX_PREC: u64 = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Lower,
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundTarget {
    Tanh,
}

/// `numerator(z) / denominator(z)`, a one-sided bound for `target` on `z > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RationalBound {
    pub target: BoundTarget,
    pub kind: BoundKind,
    pub order: u32,
    pub numerator: IntPolynomial,
    pub denominator: IntPolynomial,
}

impl RationalBound {
    pub fn eval(&self, z: f64) -> Result<f64> {
        tanh_bound_eval(self, z)
    }

    /// Lower bounds are `p'/p`, upper bounds `q/q'`, compared exactly.
    pub fn has_derivative_structure(&self) -> bool {
        match self.kind {
            BoundKind::Lower => self.numerator == self.denominator.derivative(),
            BoundKind::Upper => self.denominator == self.numerator.derivative(),
        }
    }

    fn exact_parts(&self, z: &Dyadic) -> (Dyadic, Dyadic) {
        (self.numerator.eval_exact(z), self.denominator.eval_exact(z))
    }
}

/// The order-`m` bound; odd orders bound `tanh` from below, even from above.
pub fn tanh_bound(m: u32) -> Result<RationalBound> {
    if !(MIN_TANH_ORDER..=poly::MAX_ORDER).contains(&m) {
        return Err(Error::OrderOutOfRange { m, min: MIN_TANH_ORDER, max: poly::MAX_ORDER });
    }
    let cf = poly::cached(m);
    let (kind, numerator, denominator) = if m % 2 == 1 {
        (BoundKind::Lower, cf.cosh_poly.neg(), cf.sinh_poly.clone())
    } else {
        (BoundKind::Upper, cf.cosh_poly.clone(), cf.sinh_poly.neg())
    };
    let g = num_integer::Integer::gcd(&numerator.content(), &denominator.content());
    let numerator = numerator.div_exact(&g).expect("content divides");
    let denominator = denominator.div_exact(&g).expect("content divides");
    Ok(RationalBound { target: BoundTarget::Tanh, kind, order: m, numerator, denominator })
}

/// Evaluates the bound at `z > 0`.
pub fn tanh_bound_eval(b: &RationalBound, z: f64) -> Result<f64> {
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::Domain(format!("bound needs a finite z > 0, got {z}")));
    }
    if z <= 1.0 {
        return Ok(b.numerator.eval_f64(z) / b.denominator.eval_f64(z));
    }
    // Horner in 1/z keeps every intermediate bounded for large z.
    let w = 1.0 / z;
    let rev = |p: &IntPolynomial| {
        p.coeffs().iter().fold(0.0, |acc, c| acc * w + poly::big_to_f64(c))
    };
    let shift = b.numerator.degree().unwrap_or(0) as i32 - b.denominator.degree().unwrap_or(0) as i32;
    Ok(rev(&b.numerator) / rev(&b.denominator) * z.powi(shift))
}

/// A two-sided bound evaluated at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnvelopeResult {
    pub lower: f64,
    pub upper: f64,
    pub at: f64,
}

impl EnvelopeResult {
    pub fn contains(&self, v: f64) -> bool {
        self.lower < v && v < self.upper
    }
}

/// `(z²+2)/2 < cosh z < exp(z²/6)·((z²+2)/2)^(2/3)` for `0 < z <= 60`.
pub fn cosh_bounds(z: f64) -> Result<EnvelopeResult> {
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::Domain(format!("cosh bounds need a finite z > 0, got {z}")));
    }
    if z > COSH_BOUND_CAP {
        return Err(Error::Overflow { z, cap: COSH_BOUND_CAP });
    }
    let base = (z * z + 2.0) / 2.0;
    let upper = (z * z / 6.0).exp() * base.powf(2.0 / 3.0);
    Ok(EnvelopeResult { lower: base, upper, at: z })
}

/// `z/2 + (cosh z - 1)/z < Shi(z) < 2 (cosh z - 1)/z` for `0 < z <= 700`.
///
/// Below `z ≈ 1e-7` both sides round to `z` in double precision.
pub fn shi_envelope(z: f64) -> Result<EnvelopeResult> {
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::Domain(format!("Shi envelope needs a finite z > 0, got {z}")));
    }
    if z > crate::shi::DEFAULT_OVERFLOW_CAP {
        return Err(Error::Overflow { z, cap: crate::shi::DEFAULT_OVERFLOW_CAP });
    }
    // cosh z - 1 = 2 sinh²(z/2), free of cancellation at small z.
    let half = (0.5 * z).sinh();
    let h = 2.0 * half * half / z;
    Ok(EnvelopeResult { lower: 0.5 * z + h, upper: 2.0 * h, at: z })
}

/// Signed relative margin of an inequality, positive when it holds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CertifiedMargin {
    /// `(greater - lesser) / scale`, rounded to double.
    pub relative: f64,
    /// The sign of `relative` is exact (exact arithmetic or precision
    /// escalated until the error bound is smaller than the margin).
    pub certain: bool,
}

/// Margin by which `b` holds at `z`: `tanh - b` for lower bounds, `b - tanh`
/// for upper ones, relative to `tanh(z)`.
pub fn tanh_margin(b: &RationalBound, z: f64) -> Result<CertifiedMargin> {
    let zd = positive_dyadic(z)?;
    let (num, den) = b.exact_parts(&zd);
    let mut prec = START_PREC;
    loop {
        let scaled = hiprec::tanh(&zd, prec).mul(&den);
        let diff = match b.kind {
            BoundKind::Lower => scaled.sub(&num),
            BoundKind::Upper => num.sub(&scaled),
        };
        let resolved = !diff.is_zero() && diff.magnitude() > scaled.magnitude() - prec as i64 + 8;
        if resolved || prec >= MAX_PREC {
            return Ok(CertifiedMargin { relative: ratio(&diff, &scaled), certain: resolved });
        }
        prec *= 2;
    }
}

/// Exact margin between two bounds of the same kind at `z`.
///
/// Positive when `tighter` is strictly closer to `tanh` than `looser`, i.e.
/// larger for lower bounds and smaller for upper bounds. Relative to `looser`.
pub fn improvement_margin(tighter: &RationalBound, looser: &RationalBound, z: f64) -> Result<CertifiedMargin> {
    if tighter.kind != looser.kind {
        return Err(Error::Domain("bounds of different kinds are not comparable".into()));
    }
    let zd = positive_dyadic(z)?;
    let (tn, td) = tighter.exact_parts(&zd);
    let (ln, ld) = looser.exact_parts(&zd);
    // tighter - looser = (tn·ld - ln·td) / (td·ld), denominators positive.
    let cross = tn.mul(&ld).sub(&ln.mul(&td));
    let diff = match tighter.kind {
        BoundKind::Lower => cross,
        BoundKind::Upper => cross.neg(),
    };
    let scale = ln.mul(&td);
    Ok(CertifiedMargin { relative: ratio(&diff, &scale), certain: true })
}

/// Margins of the `cosh` envelope at `z`: `(cosh - lower, upper - cosh)`,
/// each relative to the bound.
pub fn cosh_margins(z: f64) -> Result<(CertifiedMargin, CertifiedMargin)> {
    let env = cosh_bounds(z)?;
    let zd = positive_dyadic(z)?;
    let z2 = zd.mul(&zd);
    let base = z2.add(&Dyadic::from_i64(2)).mul_pow2(-1);

    // lower: exact polynomial against extended cosh.
    let mut prec = START_PREC;
    let lower = loop {
        let (c, _) = hiprec::cosh_sinh(&zd, prec);
        let diff = c.sub(&base);
        let resolved = !diff.is_zero() && diff.magnitude() > c.magnitude() - prec as i64 + 8;
        if resolved || prec >= MAX_PREC {
            break CertifiedMargin { relative: ratio(&diff, &base), certain: resolved };
        }
        prec *= 2;
    };

    // upper: compare cubes, upper³ = exp(z²/2)·base², avoiding the 2/3 power.
    let mut prec = START_PREC;
    let upper = loop {
        let (c, _) = hiprec::cosh_sinh(&zd, prec);
        let u3 = hiprec::exp(&z2.mul_pow2(-1), prec).mul(&base).mul(&base);
        let diff = u3.sub(&c.mul(&c).mul(&c));
        let resolved = !diff.is_zero() && diff.magnitude() > u3.magnitude() - prec as i64 + 8;
        if resolved || prec >= MAX_PREC {
            // (U - C)/U = (U³ - C³)/U³ / (1 + r + r²) with r = C/U.
            let r = z.cosh() / env.upper;
            let rel = ratio(&diff, &u3) / (1.0 + r + r * r);
            break CertifiedMargin { relative: rel, certain: resolved };
        }
        prec *= 2;
    };
    Ok((lower, upper))
}

fn positive_dyadic(z: f64) -> Result<Dyadic> {
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::Domain(format!("margin needs a finite z > 0, got {z}")));
    }
    Ok(Dyadic::from_f64(z).expect("finite"))
}

fn ratio(num: &Dyadic, den: &Dyadic) -> f64 {
    if num.is_zero() {
        0.0
    } else {
        num.div(den, 64).to_f64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn low_order_bounds_match_printed_forms() {
        let b3 = tanh_bound(3).unwrap();
        assert_eq!(b3.kind, BoundKind::Lower);
        assert_eq!((b3.numerator.clone(), b3.denominator.clone()), (p(&[0, 2]), p(&[2, 0, 1])));
        let b6 = tanh_bound(6).unwrap();
        assert_eq!(b6.kind, BoundKind::Upper);
        assert_eq!(b6.numerator, p(&[0, 120, 0, 20, 0, 1]));
        assert_eq!(b6.denominator, p(&[120, 0, 60, 0, 5]));
        let b8 = tanh_bound(8).unwrap();
        assert_eq!(b8.numerator, p(&[0, 5040, 0, 840, 0, 42, 0, 1]));
        assert_eq!(b8.denominator, p(&[5040, 0, 2520, 0, 210, 0, 7]));
    }

    #[test]
    fn order_range() {
        assert!(matches!(tanh_bound(2), Err(Error::OrderOutOfRange { .. })));
        assert!(matches!(tanh_bound(65), Err(Error::OrderOutOfRange { .. })));
        assert!(tanh_bound(64).unwrap().has_derivative_structure());
    }

    #[test]
    fn evaluations_at_one() {
        assert!((tanh_bound(3).unwrap().eval(1.0).unwrap() - 2.0 / 3.0).abs() < 1e-16);
        assert!((tanh_bound(4).unwrap().eval(1.0).unwrap() - 7.0 / 9.0).abs() < 1e-16);
        let b9 = tanh_bound(9).unwrap().eval(1.0).unwrap();
        assert_eq!(b9, 47384.0 / 62217.0);
        assert!(b9 < 1f64.tanh());
        assert!(matches!(tanh_bound(3).unwrap().eval(0.0), Err(Error::Domain(_))));
        assert!(matches!(tanh_bound(3).unwrap().eval(-1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn large_arguments_stay_finite() {
        let b = tanh_bound(64).unwrap();
        let v = b.eval(1e6).unwrap();
        assert!(v.is_finite() && v > 1.0);
        let small = tanh_bound(63).unwrap().eval(1e6).unwrap();
        assert!(small > 0.0 && small < 1.0);
    }

    #[test]
    fn cosh_bounds_at_one() {
        let e = cosh_bounds(1.0).unwrap();
        assert_eq!(e.lower, 1.5);
        // mpmath: e^(1/6) * 1.5^(2/3)
        assert!((e.upper - 1.5480200677383554).abs() < 1e-15);
        assert!(e.contains(1f64.cosh()));
        assert!(matches!(cosh_bounds(60.5), Err(Error::Overflow { .. })));
        assert!(matches!(cosh_bounds(0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn shi_envelope_values() {
        let e = shi_envelope(1.0).unwrap();
        assert!((e.lower - 1.0430806348152437).abs() < 1e-15);
        assert!((e.upper - 1.0861612696304876).abs() < 1e-15);
        assert!(e.contains(1.0572508753757286));
        let tiny = shi_envelope(1e-12).unwrap();
        assert!(tiny.lower <= 1e-12 * (1.0 + 1e-15) && tiny.upper >= 1e-12 * (1.0 - 1e-15));
        assert!(matches!(shi_envelope(700.5), Err(Error::Overflow { .. })));
        let top = shi_envelope(700.0).unwrap();
        assert!(top.upper.is_finite() && top.lower < top.upper);
    }

    #[test]
    fn margins_resolve_far_below_double_precision() {
        let b10 = tanh_bound(10).unwrap();
        let m = tanh_margin(&b10, 1e-3).unwrap();
        assert!(m.certain && m.relative > 0.0 && m.relative < 1e-30, "{m:?}");
        let b3 = tanh_bound(3).unwrap();
        let m = tanh_margin(&b3, 1e-3).unwrap();
        // tanh - 2z/(z²+2) ≈ z³/6, relative ≈ z²/6.
        assert!((m.relative / (1e-6 / 6.0) - 1.0).abs() < 1e-3);
    }

    #[test]
    fn improvement_between_orders() {
        let (b3, b5) = (tanh_bound(3).unwrap(), tanh_bound(5).unwrap());
        let m = improvement_margin(&b5, &b3, 0.5).unwrap();
        assert!(m.certain && m.relative > 0.0);
        let reversed = improvement_margin(&b3, &b5, 0.5).unwrap();
        assert!(reversed.relative < 0.0);
        assert!(improvement_margin(&b3, &tanh_bound(4).unwrap(), 0.5).is_err());
    }

    #[test]
    fn cosh_margins_are_positive_near_zero() {
        let (lo, hi) = cosh_margins(1e-3).unwrap();
        assert!(lo.certain && lo.relative > 0.0);
        // upper - cosh ≈ z⁶/180 relative.
        assert!(hi.certain && (hi.relative / (1e-18 / 180.0) - 1.0).abs() < 1e-3, "{hi:?}");
    }
}
