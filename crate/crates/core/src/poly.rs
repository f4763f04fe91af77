//! Exact closed forms for the derivatives of Shi.
//!
//! For every order `m >= 1` there are integer polynomials `A_m`, `B_m` with
//!
//! ```text
//! Shi^(m)(z) = (A_m(z) cosh z + B_m(z) sinh z) / z^m
//! ```
//!
//! The pair follows from integrating by parts. Writing
//! `C_k = ∫₀¹ t^(k-1) cosh(zt) dt` and `S_k = ∫₀¹ t^(k-1) sinh(zt) dt`,
//! so that `Shi^(m) = C_m` for odd `m` and `S_m` for even `m`:
//!
//! ```text
//! C_1 = sinh(z)/z
//! S_k = cosh(z)/z - (k-1)/z · C_(k-1)      (k >= 2)
//! C_k = sinh(z)/z - (k-1)/z · S_(k-1)      (k >= 2)
//! ```
//!
//! Multiplying through by `z^k` gives the coefficient recurrence
//!
//! ```text
//! even k:  A_k = z^(k-1) - (k-1) A_(k-1),   B_k = -(k-1) B_(k-1)
//! odd k:   A_k = -(k-1) A_(k-1),            B_k = z^(k-1) - (k-1) B_(k-1)
//! ```
//!
//! Coefficients grow like `(m-1)!` and leave 64-bit range near `m = 21`, so
//! they are kept as big integers.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hiprec::{self, Dyadic};
use crate::shi::DEFAULT_OVERFLOW_CAP;

pub const MAX_ORDER: u32 = 64;

/// Polynomial with exact integer coefficients, lowest degree first.
///
/// The highest stored coefficient is never zero; the zero polynomial has no
/// coefficients at all.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial::default()
    }

    /// `c · z^degree`
    pub fn monomial(c: BigInt, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = c;
        IntPolynomial::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn coeff(&self, power: usize) -> BigInt {
        self.coeffs.get(power).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &IntPolynomial) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        IntPolynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        IntPolynomial::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Non-negative gcd of all coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides every coefficient by `k`; `None` unless all divisions are exact.
    pub fn div_exact(&self, k: &BigInt) -> Option<Self> {
        if k.is_zero() {
            return None;
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(IntPolynomial::new(out))
    }

    /// `Some(0)` if only even powers are present, `Some(1)` if only odd ones.
    pub fn parity(&self) -> Option<usize> {
        let mut powers = self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i % 2);
        let first = powers.next()?;
        powers.all(|p| p == first).then_some(first)
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn eval_f64(&self, z: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * z + big_to_f64(c))
    }

    pub(crate) fn eval_abs_f64(&self, z: f64) -> f64 {
        let z = z.abs();
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * z + big_to_f64(c).abs())
    }

    pub fn eval_exact(&self, z: &Dyadic) -> Dyadic {
        hiprec::eval_poly(&self.coeffs, z)
    }

    /// Decimal coefficient list such as `[2,0,1]`.
    pub fn to_list_string(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(","))
    }
}

pub(crate) fn big_to_f64(c: &BigInt) -> f64 {
    c.to_f64().unwrap_or(f64::NAN)
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (power, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            if power == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match power {
                0 => {}
                1 => f.write_str("z")?,
                p => write!(f, "z^{p}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        // Decimal strings: coefficients overflow every JSON number type.
        s.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

/// `Shi^(m)(z) = (cosh_poly(z)·cosh z + sinh_poly(z)·sinh z) / z^m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivClosedForm {
    pub order: u32,
    pub cosh_poly: IntPolynomial,
    pub sinh_poly: IntPolynomial,
}

impl DerivClosedForm {
    pub fn eval(&self, z: f64) -> Result<f64> {
        eval_closed_form(self, z)
    }

    /// Human-readable formula, e.g.
    /// `Shi^(3)(z) = ((-2z)*cosh(z) + (z^2 + 2)*sinh(z)) / z^3`.
    pub fn formula(&self) -> String {
        let mut terms = Vec::new();
        for (poly, name) in [(&self.cosh_poly, "cosh(z)"), (&self.sinh_poly, "sinh(z)")] {
            if poly.is_zero() {
                continue;
            }
            if *poly == IntPolynomial::from_i64s(&[1]) {
                terms.push(name.to_string());
            } else {
                terms.push(format!("({poly})*{name}"));
            }
        }
        let numer = if terms.len() == 1 { terms.remove(0) } else { format!("({})", terms.join(" + ")) };
        let denom = if self.order == 1 { "z".to_string() } else { format!("z^{}", self.order) };
        format!("Shi^({})(z) = {numer} / {denom}", self.order)
    }
}

/// Closed-form pair `(A_m, B_m)` for `1 <= m <= 64`.
pub fn derivative_polynomials(m: u32) -> Result<DerivClosedForm> {
    if !(1..=MAX_ORDER).contains(&m) {
        return Err(Error::OrderOutOfRange { m, min: 1, max: MAX_ORDER });
    }
    let mut cosh_poly = IntPolynomial::zero();
    let mut sinh_poly = IntPolynomial::from_i64s(&[1]);
    for k in 2..=m {
        let factor = BigInt::from(-(k as i64 - 1));
        let lead = IntPolynomial::monomial(BigInt::one(), (k - 1) as usize);
        if k % 2 == 0 {
            cosh_poly = lead.add(&cosh_poly.scale(&factor));
            sinh_poly = sinh_poly.scale(&factor);
        } else {
            cosh_poly = cosh_poly.scale(&factor);
            sinh_poly = lead.add(&sinh_poly.scale(&factor));
        }
    }
    Ok(DerivClosedForm { order: m, cosh_poly, sinh_poly })
}

/// Memoized closed forms for orders `1..=64`, built on first use.
pub(crate) fn cached(m: u32) -> &'static DerivClosedForm {
    static TABLE: OnceLock<Vec<DerivClosedForm>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        (1..=MAX_ORDER).map(|k| derivative_polynomials(k).expect("order in range")).collect()
    });
    &table[m as usize - 1]
}

/// Evaluates a closed form at `z != 0`, `|z| <= 700`.
pub fn eval_closed_form(cf: &DerivClosedForm, z: f64) -> Result<f64> {
    eval_with_error(cf, z).map(|(v, _)| v)
}

// Largest accepted ratio between the summed term magnitudes and the result
// for the double-precision path.
const MAX_F64_CANCELLATION: f64 = 16.0;

/// Value and an estimate of its absolute error.
pub(crate) fn eval_with_error(cf: &DerivClosedForm, z: f64) -> Result<(f64, f64)> {
    if !z.is_finite() {
        return Err(Error::Domain(format!("closed form needs a finite argument, got {z}")));
    }
    if z == 0.0 {
        return Err(Error::Domain("closed form is singular at z = 0".into()));
    }
    if z.abs() > DEFAULT_OVERFLOW_CAP {
        return Err(Error::Overflow { z, cap: DEFAULT_OVERFLOW_CAP });
    }

    let zm = z.powi(cf.order as i32);
    let a = cf.cosh_poly.eval_f64(z) / zm;
    let b = cf.sinh_poly.eval_f64(z) / zm;
    let (c, s) = (z.cosh(), z.sinh());
    let value = a * c + b * s;
    let zm_abs = zm.abs();
    let magnitude = cf.cosh_poly.eval_abs_f64(z) / zm_abs * c + cf.sinh_poly.eval_abs_f64(z) / zm_abs * s.abs();
    if value.is_finite() && magnitude.is_finite() && value != 0.0 && magnitude <= MAX_F64_CANCELLATION * value.abs() {
        let err = 2.0 * (cf.order as f64 + 4.0) * f64::EPSILON * magnitude;
        return Ok((value, err));
    }

    let value = eval_extended(cf, z)?;
    Ok((value, 2.0 * f64::EPSILON * value.abs()))
}

/// Extended-precision evaluation for arguments where the two terms cancel.
fn eval_extended(cf: &DerivClosedForm, z: f64) -> Result<f64> {
    let zd = Dyadic::from_f64(z).expect("finite");
    let a = cf.cosh_poly.eval_exact(&zd);
    let b = cf.sinh_poly.eval_exact(&zd);
    let zm = zd.powi(cf.order);
    let mut prec: u64 = 96;
    loop {
        let (c, s) = hiprec::cosh_sinh(&zd, prec);
        let ta = a.mul(&c);
        let tb = b.mul(&s);
        let numer = ta.add(&tb);
        let top = ta.magnitude().max(tb.magnitude());
        let lost = top.saturating_sub(numer.magnitude());
        if !numer.is_zero() && lost + 64 <= prec as i64 {
            return Ok(numer.div(&zm, 64).to_f64());
        }
        if prec > 1 << 18 {
            return Err(Error::Domain(format!(
                "closed form of order {} cannot be resolved at z = {z}",
                cf.order
            )));
        }
        prec = (prec * 2).max(lost.max(0) as u64 + 96);
    }
}
