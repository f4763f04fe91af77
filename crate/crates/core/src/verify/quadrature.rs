//! Adaptive Gauss–Kronrod quadrature, used as an oracle for `Shi`.
//!
//! Integrates `sinh(t)/t` directly, so it shares nothing with the series path
//! in [`crate::shi`].

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::shi::DEFAULT_OVERFLOW_CAP;

// 15-point Kronrod abscissae on [-1, 1] (non-negative half, descending) and
// weights; every other abscissa belongs to the embedded 7-point Gauss rule.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_INTERVALS: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (i, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * x;
        let pair = f(center - dx) + f(center + dx);
        kronrod += w * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    Segment {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// Adaptive G7/K15 integration of `f` over `[a, b]`.
///
/// Bisects the interval with the largest error estimate until the summed
/// estimate is at most `tol * max(1, |integral|)`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadResult> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Domain(format!("quadrature tolerance must be positive, got {tol}")));
    }
    if a == b {
        return Ok(QuadResult { value: 0.0, error_estimate: 0.0, intervals: 0 });
    }
    let mut heap = BinaryHeap::new();
    let first = gauss_kronrod(&f, a, b);
    let mut total = first.value;
    let mut error = first.error;
    heap.push(first);
    while error > tol * total.abs().max(1.0) {
        if heap.len() >= MAX_INTERVALS {
            return Err(Error::ToleranceNotMet { tol, estimate: error });
        }
        let worst = heap.pop().expect("heap never empties");
        let mid = 0.5 * (worst.a + worst.b);
        let left = gauss_kronrod(&f, worst.a, mid);
        let right = gauss_kronrod(&f, mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        if !total.is_finite() {
            return Err(Error::ToleranceNotMet { tol, estimate: f64::INFINITY });
        }
    }
    // Re-add from the segments to shed the drift of the running total.
    let mut segments: Vec<Segment> = heap.into_vec();
    segments.sort_by(|x, y| x.a.total_cmp(&y.a));
    let value = segments.iter().map(|s| s.value).sum();
    let error_estimate = segments.iter().map(|s| s.error).sum();
    Ok(QuadResult { value, error_estimate, intervals: segments.len() })
}

fn sinh_over_t(t: f64) -> f64 {
    if t == 0.0 {
        1.0
    } else {
        t.sinh() / t
    }
}

/// `Shi(z)` by adaptive quadrature of `sinh(t)/t` over `[0, z]`.
///
/// `tol` is a mixed absolute/relative tolerance: the error estimate is driven
/// below `tol * max(1, |Shi(z)|)`.
pub fn quadrature_shi(z: f64, tol: f64) -> Result<f64> {
    if !z.is_finite() {
        return Err(Error::Domain(format!("argument must be finite, got {z}")));
    }
    if z.abs() > DEFAULT_OVERFLOW_CAP {
        return Err(Error::Overflow { z, cap: DEFAULT_OVERFLOW_CAP });
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    let r = integrate(sinh_over_t, 0.0, z.abs(), tol)?;
    Ok(if z < 0.0 { -r.value } else { r.value })
}
