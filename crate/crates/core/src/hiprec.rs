//! Binary floating point with big-integer mantissas.
//!
//! A [`Dyadic`] is `mant * 2^exp` with an arbitrary-size mantissa. Ring
//! operations are exact; division and the exponential family round to a
//! requested number of significant bits. This is used where double
//! precision cannot resolve a quantity: the cancelling closed forms of
//! high-order derivatives at small arguments and the sign of margins between
//! `tanh` and its rational bounds, which can fall below `1e-50`.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { mant: BigInt::one(), exp: 0 }
    }

    pub fn from_int(mant: BigInt) -> Self {
        Dyadic { mant, exp: 0 }
    }

    pub fn from_i64(v: i64) -> Self {
        Dyadic::from_int(BigInt::from(v))
    }

    /// Exact conversion. Returns `None` for NaN and infinities.
    pub fn from_f64(x: f64) -> Option<Self> {
        if !x.is_finite() {
            return None;
        }
        if x == 0.0 {
            return Some(Dyadic::zero());
        }
        let bits = x.to_bits();
        let negative = bits >> 63 == 1;
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if biased == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), biased - 1075)
        };
        let mant = if negative { -BigInt::from(m) } else { BigInt::from(m) };
        Some(Dyadic { mant, exp: e }.normalized())
    }

    fn normalized(mut self) -> Self {
        if self.mant.is_zero() {
            self.exp = 0;
            return self;
        }
        if let Some(tz) = self.mant.trailing_zeros() {
            if tz > 0 {
                self.mant >>= tz;
                self.exp += tz as i64;
            }
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.sign() == Sign::Minus
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// `e` such that `2^(e-1) <= |self| < 2^e`; `i64::MIN` for zero.
    pub fn magnitude(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.mant.bits() as i64 + self.exp
        }
    }

    pub fn neg(&self) -> Self {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }

    pub fn abs(&self) -> Self {
        Dyadic { mant: self.mant.abs(), exp: self.exp }
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        Dyadic { mant: self.mant.clone(), exp: self.exp + k }
    }

    pub fn add(&self, other: &Dyadic) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let exp = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - exp) as u64;
        let b = &other.mant << (other.exp - exp) as u64;
        Dyadic { mant: a + b, exp }.normalized()
    }

    pub fn sub(&self, other: &Dyadic) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Dyadic) -> Self {
        Dyadic { mant: &self.mant * &other.mant, exp: self.exp + other.exp }.normalized()
    }

    pub fn powi(&self, n: u32) -> Self {
        Dyadic { mant: num_traits::pow(self.mant.clone(), n as usize), exp: self.exp * n as i64 }
    }

    /// Truncates toward zero to at most `bits` significant bits.
    pub fn round(&self, bits: u64) -> Self {
        let n = self.mant.bits();
        if n <= bits {
            return self.clone();
        }
        let shift = n - bits;
        let mag = self.mant.magnitude() >> shift;
        let mant = BigInt::from_biguint(self.mant.sign(), mag);
        Dyadic { mant, exp: self.exp + shift as i64 }.normalized()
    }

    /// Quotient truncated to roughly `bits` significant bits.
    ///
    /// Panics on division by zero.
    pub fn div(&self, other: &Dyadic, bits: u64) -> Self {
        assert!(!other.is_zero(), "division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let k = (bits as i64 + other.mant.bits() as i64 - self.mant.bits() as i64 + 1).max(0);
        let num = &self.mant << k as u64;
        Dyadic { mant: num / &other.mant, exp: self.exp - other.exp - k }.normalized()
    }

    /// Nearest double (up to one extra rounding in the last place).
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let r = self.round(64);
        let m = r.mant.magnitude().to_u64().unwrap_or(u64::MAX) as f64;
        let v = ldexp(m, r.exp);
        if r.is_negative() {
            -v
        } else {
            v
        }
    }

    pub fn cmp_value(&self, other: &Dyadic) -> Ordering {
        self.sub(other).signum().cmp(&0)
    }
}

/// `x * 2^k` without intermediate overflow of the scale factor.
pub(crate) fn ldexp(mut x: f64, mut k: i64) -> f64 {
    const STEP: i64 = 1000;
    while k > STEP {
        x *= 2f64.powi(STEP as i32);
        k -= STEP;
        if x.is_infinite() {
            return x;
        }
    }
    while k < -STEP {
        x *= 2f64.powi(-STEP as i32);
        k += STEP;
        if x == 0.0 {
            return x;
        }
    }
    x * 2f64.powi(k as i32)
}

/// `exp(x)` with relative error well below `2^-prec`.
pub fn exp(x: &Dyadic, prec: u64) -> Dyadic {
    if x.is_zero() {
        return Dyadic::one();
    }
    if x.is_negative() {
        let e = exp(&x.neg(), prec + 8);
        return Dyadic::one().div(&e, prec + 8);
    }
    // Scale the argument below 2^-12 so the Taylor series converges quickly,
    // then square back up. Each squaring doubles the relative error.
    let squarings = (x.magnitude() + 12).max(0) as u64;
    let work = prec + squarings + 24;
    let y = x.mul_pow2(-(squarings as i64)).round(work);

    let floor = -(work as i64) - 4;
    let mut sum = Dyadic::one();
    let mut term = Dyadic::one();
    let mut k: i64 = 1;
    loop {
        term = term.mul(&y).div(&Dyadic::from_i64(k), work);
        if term.is_zero() || term.magnitude() < floor {
            break;
        }
        sum = sum.add(&term).round(work + 8);
        k += 1;
    }
    for _ in 0..squarings {
        sum = sum.mul(&sum).round(work);
    }
    sum.round(prec + 16)
}

/// `(cosh x, sinh x)` with relative error well below `2^-prec` in each.
pub fn cosh_sinh(x: &Dyadic, prec: u64) -> (Dyadic, Dyadic) {
    if x.is_zero() {
        return (Dyadic::one(), Dyadic::zero());
    }
    // sinh loses about -log2|x| bits to cancellation for small x.
    let extra = (-x.magnitude()).max(0) as u64 + 16;
    let p = prec + extra;
    let e = exp(&x.abs(), p);
    let inv = Dyadic::one().div(&e, p);
    let cosh = e.add(&inv).mul_pow2(-1);
    let mut sinh = e.sub(&inv).mul_pow2(-1);
    if x.is_negative() {
        sinh = sinh.neg();
    }
    (cosh.round(prec + 16), sinh.round(prec + 16))
}

pub fn tanh(x: &Dyadic, prec: u64) -> Dyadic {
    let (c, s) = cosh_sinh(x, prec + 8);
    s.div(&c, prec + 8)
}

/// Exact Horner evaluation of an integer polynomial, lowest degree first.
pub fn eval_poly(coeffs: &[BigInt], z: &Dyadic) -> Dyadic {
    coeffs
        .iter()
        .rev()
        .fold(Dyadic::zero(), |acc, c| acc.mul(z).add(&Dyadic::from_int(c.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Digits from mpmath at 40 significant digits.

    fn close(a: &Dyadic, expect_digits: &str, tol_bits: i64) {
        // Compare against a decimal string by scaling both to integers.
        let (int_part, frac_part) = expect_digits.split_once('.').unwrap();
        let digits = format!("{int_part}{frac_part}");
        let expect = BigInt::parse_bytes(digits.as_bytes(), 10).unwrap();
        let scale = num_traits::pow(BigInt::from(10), frac_part.len());
        // a * 10^n  vs expect
        let lhs = a.mul(&Dyadic::from_int(scale));
        let diff = lhs.sub(&Dyadic::from_int(expect)).abs();
        let rel = diff.magnitude() - lhs.magnitude();
        assert!(rel <= -tol_bits, "relative error 2^{rel} too large");
    }

    #[test]
    fn exp_one_matches_reference() {
        let e = exp(&Dyadic::one(), 200);
        close(&e, "2.718281828459045235360287471352662497757", 120);
        assert_eq!(e.to_f64(), std::f64::consts::E);
    }

    #[test]
    fn cosh_sinh_tanh_at_one() {
        let (c, s) = cosh_sinh(&Dyadic::one(), 200);
        close(&c, "1.543080634815243778477905620757061682602", 120);
        close(&s, "1.175201193643801456882381850595600815156", 120);
        close(&tanh(&Dyadic::one(), 200), "0.7615941559557648881194582826047935904128", 120);
    }

    #[test]
    fn sinh_keeps_relative_accuracy_near_zero() {
        let x = Dyadic::from_f64(1e-30).unwrap();
        let (_, s) = cosh_sinh(&x, 256);
        // sinh(x)/x - 1 = x^2/6 + ... is about 1.7e-61, so 2^-256 relative
        // accuracy resolves it.
        let rel = s.sub(&x).div(&x, 120);
        assert!(rel.to_f64() > 1.6e-61 && rel.to_f64() < 1.7e-61, "{}", rel.to_f64());
    }

    #[test]
    fn negative_exponent_is_reciprocal() {
        let x = Dyadic::from_f64(-3.25).unwrap();
        let prod = exp(&x, 150).mul(&exp(&x.neg(), 150));
        let err = prod.sub(&Dyadic::one()).abs();
        assert!(err.is_zero() || err.magnitude() < -140);
    }

    #[test]
    fn large_argument_exp() {
        let e = exp(&Dyadic::from_f64(700.0).unwrap(), 80).to_f64();
        assert!((e / 700f64.exp() - 1.0).abs() < 4e-16);
    }

    #[test]
    fn ldexp_handles_extreme_scales() {
        assert_eq!(ldexp(1.0, 1023), 2f64.powi(1023));
        assert_eq!(ldexp(1.0, -1074), f64::from_bits(1));
        assert_eq!(ldexp(3.0, 2100), f64::INFINITY);
    }

    proptest! {
        #[test]
        fn f64_round_trip(x in prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL | prop::num::f64::ZERO) {
            let d = Dyadic::from_f64(x).unwrap();
            prop_assert_eq!(d.to_f64().to_bits(), x.to_bits() & !(if x == 0.0 { 1u64 << 63 } else { 0 }));
        }

        #[test]
        fn ring_ops_are_exact(a in -1e6f64..1e6, b in -1e6f64..1e6) {
            let (da, db) = (Dyadic::from_f64(a).unwrap(), Dyadic::from_f64(b).unwrap());
            prop_assert_eq!(da.add(&db).sub(&db), da.clone());
            let q = da.mul(&db);
            if b != 0.0 {
                prop_assert_eq!(q.div(&db, 200), da);
            }
        }

        #[test]
        fn hyperbolic_identity(x in -50f64..50.0) {
            let d = Dyadic::from_f64(x).unwrap();
            let (c, s) = cosh_sinh(&d, 160);
            let one = c.mul(&c).sub(&s.mul(&s));
            let err = one.sub(&Dyadic::one()).abs();
            // The identity loses the squared magnitude of cosh.
            prop_assert!(err.is_zero() || err.magnitude() < -150 + 2 * c.magnitude());
        }
    }
}
