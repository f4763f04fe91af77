//! Evaluation of `sinhc`, `Shi` and the derivatives `Shi^(m)` on the real line.
//!
//! `Shi` and all its derivatives share one series. Inserting the Maclaurin
//! series of `sinh`/`cosh` into `Shi^(m)(z) = ∫₀¹ t^(m-1) {sinh, cosh}(zt) dt`
//! gives
//!
//! ```text
//! Shi^(m)(z) = Σ_n z^n / (n! (m + n))      n ≡ m + 1 (mod 2)
//! ```
//!
//! which for `m = 0` is the familiar `Σ z^(2r+1) / ((2r+1)(2r+1)!)`. Every
//! term is positive for `z > 0`, so the partial sums suffer no cancellation.
//! For `|z| > 4` and `m >= 1` the closed forms of [`crate::poly`] are cheaper.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly;

pub const DEFAULT_OVERFLOW_CAP: f64 = 700.0;
pub const DEFAULT_REL_TOL: f64 = 1e-15;
pub const DEFAULT_MAX_TERMS: usize = 600;
pub const MIN_REL_TOL: f64 = 1e-16;
pub const MIN_MAX_TERMS: usize = 8;

/// Above this magnitude derivatives of order >= 1 use the closed form.
pub const SERIES_CUTOFF: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalConfig {
    pub rel_tol: f64,
    pub max_terms: usize,
    pub z_overflow_cap: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            rel_tol: DEFAULT_REL_TOL,
            max_terms: DEFAULT_MAX_TERMS,
            z_overflow_cap: DEFAULT_OVERFLOW_CAP,
        }
    }
}

impl EvalConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol >= MIN_REL_TOL && self.rel_tol < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "rel_tol must lie in [{MIN_REL_TOL:e}, 1), got {}",
                self.rel_tol
            )));
        }
        if self.max_terms < MIN_MAX_TERMS {
            return Err(Error::InvalidConfig(format!(
                "max_terms must be at least {MIN_MAX_TERMS}, got {}",
                self.max_terms
            )));
        }
        if !(self.z_overflow_cap > 0.0 && self.z_overflow_cap <= 710.0) {
            return Err(Error::InvalidConfig(format!(
                "z_overflow_cap must lie in (0, 710], got {}",
                self.z_overflow_cap
            )));
        }
        Ok(())
    }

    fn check_arg(&self, z: f64) -> Result<()> {
        if !z.is_finite() {
            return Err(Error::Domain(format!("argument must be finite, got {z}")));
        }
        if z.abs() > self.z_overflow_cap {
            return Err(Error::Overflow { z, cap: self.z_overflow_cap });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Series,
    ClosedForm,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Series => "series",
            Method::ClosedForm => "closed_form",
        }
    }
}

/// A function value with an a posteriori bound on its absolute error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShiEval {
    pub value: f64,
    pub abs_err_estimate: f64,
    /// Series terms summed; zero for closed-form evaluations.
    pub terms_used: usize,
    pub method: Method,
}

impl ShiEval {
    fn negated(self) -> Self {
        ShiEval { value: -self.value, ..self }
    }
}

/// `sinh(z)/z`, with the value 1 at the origin.
pub fn sinhc(z: f64) -> Result<f64> {
    EvalConfig::default().check_arg(z)?;
    if z == 0.0 {
        return Ok(1.0);
    }
    let a = z.abs();
    Ok(a.sinh() / a)
}

/// Hyperbolic sine integral `Shi(z) = ∫₀^z sinh(t)/t dt`.
pub fn shi(z: f64, cfg: &EvalConfig) -> Result<ShiEval> {
    shi_derivative(0, z, cfg)
}

/// `m`-th derivative of `Shi`, `0 <= m <= 64`.
pub fn shi_derivative(m: u32, z: f64, cfg: &EvalConfig) -> Result<ShiEval> {
    cfg.validate()?;
    if m > poly::MAX_ORDER {
        return Err(Error::OrderOutOfRange { m, min: 0, max: poly::MAX_ORDER });
    }
    cfg.check_arg(z)?;
    let a = z.abs();
    let at_abs = if m == 0 || a <= SERIES_CUTOFF {
        derivative_series(m, a, cfg)?
    } else {
        let (value, err) = poly::eval_with_error(poly::cached(m), a)?;
        ShiEval { value, abs_err_estimate: err, terms_used: 0, method: Method::ClosedForm }
    };
    // Even orders are odd functions and vice versa.
    if z.is_sign_negative() && m.is_multiple_of(2) && z != 0.0 {
        Ok(at_abs.negated())
    } else {
        Ok(at_abs)
    }
}

/// Sums `Σ z^n / (n! (m+n))` over `n ≡ m+1 (mod 2)` for `z >= 0`.
///
/// Stops once the next term is below `rel_tol` times the partial sum and the
/// term ratio beyond it is at most 1/2, so the omitted tail is bounded by
/// twice the next term.
fn derivative_series(m: u32, z: f64, cfg: &EvalConfig) -> Result<ShiEval> {
    debug_assert!(z >= 0.0);
    let m = m as f64;
    let mut n: f64 = if (m as u32).is_multiple_of(2) { 1.0 } else { 0.0 };
    // power = z^n / n!, carried in double-double so the rounding of the
    // recurrence does not build up over hundreds of terms.
    let mut power = DoubleDouble::from(if n == 0.0 { 1.0 } else { z });
    let mut sum = DoubleDouble::default();
    let mut terms = 0;
    loop {
        sum = sum.add(power.div(m + n));
        terms += 1;
        let next_power = power.mul(z).div(n + 1.0).mul(z).div(n + 2.0);
        let next_term = next_power.hi / (m + n + 2.0);
        let partial = sum.hi + sum.lo;
        let tail_ratio = (z / (n + 3.0)) * (z / (n + 4.0));
        if next_term <= cfg.rel_tol * partial && tail_ratio <= 0.5 {
            return Ok(ShiEval {
                value: partial,
                abs_err_estimate: 2.0 * next_term + 4.0 * f64::EPSILON * partial,
                terms_used: terms,
                method: Method::Series,
            });
        }
        if terms >= cfg.max_terms {
            return Err(Error::NonConvergence { z, terms });
        }
        power = next_power;
        n += 2.0;
    }
}

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`.
#[derive(Debug, Default, Clone, Copy)]
struct DoubleDouble {
    hi: f64,
    lo: f64,
}

impl From<f64> for DoubleDouble {
    fn from(hi: f64) -> Self {
        DoubleDouble { hi, lo: 0.0 }
    }
}

impl DoubleDouble {
    fn renormalized(hi: f64, lo: f64) -> Self {
        let s = hi + lo;
        DoubleDouble { hi: s, lo: lo - (s - hi) }
    }

    fn add(self, other: DoubleDouble) -> Self {
        let s = self.hi + other.hi;
        let bb = s - self.hi;
        let err = (self.hi - (s - bb)) + (other.hi - bb);
        DoubleDouble::renormalized(s, err + self.lo + other.lo)
    }

    fn mul(self, b: f64) -> Self {
        let p = self.hi * b;
        let err = self.hi.mul_add(b, -p);
        DoubleDouble::renormalized(p, err + self.lo * b)
    }

    fn div(self, b: f64) -> Self {
        let q = self.hi / b;
        // Exact remainder self - q*b, up to the lo part.
        let p = q * b;
        let p_err = q.mul_add(b, -p);
        let r = ((self.hi - p) - p_err) + self.lo;
        DoubleDouble::renormalized(q, r / b)
    }
}
