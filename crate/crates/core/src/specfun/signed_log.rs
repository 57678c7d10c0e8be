//! Values in sign/log-magnitude form and their compensated summation.
//!
//! Terms are rescaled by the largest magnitude, exponentiated and accumulated
//! in double-double arithmetic (about 32 significant digits), so sums whose
//! largest term exceeds the result by many orders of magnitude stay accurate
//! relative to the exactly represented inputs.
#![allow(clippy::excessive_precision)]

use std::cmp::Ordering;

/// A real number stored as `sign * exp(log_magnitude)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedLogValue {
    sign: i8,
    log_magnitude: f64,
}

impl SignedLogValue {
    pub const ZERO: Self = Self {
        sign: 0,
        log_magnitude: f64::NEG_INFINITY,
    };

    /// Builds a value from a sign in {-1, 0, +1} and `ln|value|`.
    pub fn new(sign: i8, log_magnitude: f64) -> Self {
        match sign.cmp(&0) {
            Ordering::Equal => Self::ZERO,
            Ordering::Greater => Self {
                sign: 1,
                log_magnitude,
            },
            Ordering::Less => Self {
                sign: -1,
                log_magnitude,
            },
        }
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            Self::new(if x > 0.0 { 1 } else { -1 }, x.abs().ln())
        }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// Meaningless (negative infinity) when the value is zero.
    pub fn log_magnitude(&self) -> f64 {
        self.log_magnitude
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn to_f64(&self) -> f64 {
        f64::from(self.sign) * self.log_magnitude.exp()
    }

    pub fn mul(self, other: Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::ZERO;
        }
        Self::new(
            self.sign * other.sign,
            self.log_magnitude + other.log_magnitude,
        )
    }

    pub fn neg(self) -> Self {
        Self {
            sign: -self.sign,
            ..self
        }
    }
}

/// Sum of signed-log terms; an exact cancellation yields sign 0.
pub fn signed_log_sum(terms: &[SignedLogValue]) -> SignedLogValue {
    let Some(max_log) = terms
        .iter()
        .filter(|t| !t.is_zero())
        .map(|t| t.log_magnitude)
        .max_by(f64::total_cmp)
    else {
        return SignedLogValue::ZERO;
    };
    let mut acc = DoubleDouble::ZERO;
    for t in terms.iter().filter(|t| !t.is_zero()) {
        let shift = DoubleDouble::two_diff(t.log_magnitude, max_log);
        let scaled = shift.exp();
        acc = if t.sign > 0 {
            acc.add(scaled)
        } else {
            acc.sub(scaled)
        };
    }
    if acc.hi == 0.0 {
        return SignedLogValue::ZERO;
    }
    let sign = if acc.hi > 0.0 { 1 } else { -1 };
    let mag = acc.abs();
    SignedLogValue::new(sign, max_log + mag.hi.ln() + (mag.lo / mag.hi).ln_1p())
}

/// Signed-log sum with a first-order bound on the error propagated from
/// per-term relative uncertainties.
///
/// Returns the sum and a bound on `|error| / |sum|` (infinite when the sum
/// cancels to zero).
pub fn signed_log_sum_with_bound(terms: &[(SignedLogValue, f64)]) -> (SignedLogValue, f64) {
    let values: Vec<SignedLogValue> = terms.iter().map(|(v, _)| *v).collect();
    let sum = signed_log_sum(&values);
    if sum.is_zero() {
        return (sum, f64::INFINITY);
    }
    // sum_i |t_i| * err_i / |S|, evaluated relative to |S| to stay in range
    let mut bound = 0.0;
    for (v, rel_err) in terms.iter().filter(|(v, _)| !v.is_zero()) {
        bound += rel_err * (v.log_magnitude - sum.log_magnitude).exp();
    }
    // rounding of the double-double accumulation
    let max_log = values
        .iter()
        .filter(|v| !v.is_zero())
        .map(|v| v.log_magnitude)
        .fold(f64::NEG_INFINITY, f64::max);
    bound += values.len() as f64 * 1e-30 * (max_log - sum.log_magnitude).exp();
    (sum, bound)
}

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

const LN2: DoubleDouble = DoubleDouble {
    hi: std::f64::consts::LN_2,
    lo: 2.319_046_813_846_299_6e-17,
};

impl DoubleDouble {
    pub const ZERO: Self = Self { hi: 0.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    fn two_sum(a: f64, b: f64) -> Self {
        let s = a + b;
        let bb = s - a;
        let err = (a - (s - bb)) + (b - bb);
        Self { hi: s, lo: err }
    }

    fn quick_two_sum(a: f64, b: f64) -> Self {
        let s = a + b;
        Self {
            hi: s,
            lo: b - (s - a),
        }
    }

    /// Exact `a - b`.
    pub fn two_diff(a: f64, b: f64) -> Self {
        Self::two_sum(a, -b)
    }

    fn two_prod(a: f64, b: f64) -> Self {
        let p = a * b;
        Self {
            hi: p,
            lo: a.mul_add(b, -p),
        }
    }

    pub fn add(self, other: Self) -> Self {
        let s = Self::two_sum(self.hi, other.hi);
        let t = Self::two_sum(self.lo, other.lo);
        let v = Self::quick_two_sum(s.hi, s.lo + t.hi);
        Self::quick_two_sum(v.hi, v.lo + t.lo)
    }

    pub fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub fn sub(self, other: Self) -> Self {
        self.add(other.neg())
    }

    pub fn mul(self, other: Self) -> Self {
        let p = Self::two_prod(self.hi, other.hi);
        let lo = p.lo + (self.hi * other.lo + self.lo * other.hi);
        Self::quick_two_sum(p.hi, lo)
    }

    pub fn mul_f64(self, b: f64) -> Self {
        let p = Self::two_prod(self.hi, b);
        Self::quick_two_sum(p.hi, p.lo + self.lo * b)
    }

    pub fn div_f64(self, b: f64) -> Self {
        let q1 = self.hi / b;
        let r = self.sub(Self::two_prod(q1, b));
        let q2 = (r.hi + r.lo) / b;
        Self::quick_two_sum(q1, q2)
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            self.neg()
        } else {
            self
        }
    }

    fn ldexp(self, k: i32) -> Self {
        let scale = |x: f64| {
            // split the power so that 2^k never overflows on its own
            let half = k / 2;
            x * 2f64.powi(half) * 2f64.powi(k - half)
        };
        Self {
            hi: scale(self.hi),
            lo: scale(self.lo),
        }
    }

    /// `exp(self)` to roughly double-double precision.
    pub fn exp(self) -> Self {
        if self.hi < -760.0 {
            return Self::ZERO;
        }
        if self.hi > 709.0 {
            return Self {
                hi: f64::INFINITY,
                lo: 0.0,
            };
        }
        let k = (self.hi / LN2.hi).round();
        let r = self.sub(LN2.mul_f64(k));
        // exp(r) = (exp(r / 2^10))^(2^10)
        let s = r.ldexp(-10);
        let mut term = Self::from_f64(1.0);
        let mut sum = Self::from_f64(1.0);
        for i in 1..=12 {
            term = term.mul(s).div_f64(f64::from(i));
            sum = sum.add(term);
            if term.hi.abs() < 1e-36 {
                break;
            }
        }
        for _ in 0..10 {
            sum = sum.mul(sum);
        }
        sum.ldexp(k as i32)
    }
}
