//! Strong-field (`e B hbar c^2 >> m0^2 c^4`) closed forms for the
//! `U_n + U_{n+2}` family.
//!
//! Both crossed moments reduce to double sums over the Laguerre coefficients
//! with `a = n/2`, `b = a + 1`, `m = i + j + 1`:
//!
//! ```text
//! A = sum_ij (-1)^(i+j) C(a,i) C(b,j) Gamma(m + 1/2) / (i! j!)
//! B = sum_ij (-1)^(i+j) C(a,i) C(b,j) Gamma(m + 1/2) (m + 1/2) / (i! j! (i+1) (j+1))
//! ```
//!
//! with `beta <n,0|rho|n+2,0> = -A` and
//! `beta <n+1,1|rho|n+3,1> = -sqrt((a+1)(a+2)) B`. The terms alternate and
//! the largest exceeds the result by about 1e61 at `n = 132`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::landau::FieldConfig;
use crate::specfun::{
    ln_binomial, ln_factorial, log_gamma, signed_log_sum_with_bound, SignedLogValue,
};

/// Relative accuracy every reported strong-field value is certified to.
pub const CERTIFIED_RELATIVE_ERROR: f64 = 1e-6;

const SQRT_PI: f64 = 1.772_453_850_905_516;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumMethod {
    SignedLog,
    ExactRational,
}

/// Dimensionless crossed moments `beta <n,0|rho|n+2,0>` and
/// `beta <n+1,1|rho|n+3,1>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrongFieldMoments {
    pub n: u32,
    pub s_wave: f64,
    pub p_wave: f64,
    /// Bound on the relative error of each moment and of their sum.
    pub relative_bound: f64,
    pub method: SumMethod,
}

impl StrongFieldMoments {
    /// `beta` times the maximum displacement.
    pub fn scaled_displacement(&self) -> f64 {
        (self.s_wave + self.p_wave).abs()
    }
}

fn check_even(n: u32) -> Result<()> {
    if n % 2 == 0 {
        Ok(())
    } else {
        Err(Error::InvalidState {
            n,
            m_l: 0,
            reason: "the strong-field family uses even n",
        })
    }
}

fn p_wave_factor(n: u32) -> f64 {
    let a = f64::from(n / 2);
    ((a + 1.0) * (a + 2.0)).sqrt()
}

/// Evaluates both sums in signed-log form with a propagated error bound.
///
/// Fails with [`Error::PrecisionExhausted`] when the bound on the combined
/// result exceeds [`CERTIFIED_RELATIVE_ERROR`].
pub fn strong_field_moments_signed_log(n: u32) -> Result<StrongFieldMoments> {
    check_even(n)?;
    let (a, b) = (n / 2, n / 2 + 1);
    let eps = f64::EPSILON;
    let mut s_terms = Vec::with_capacity(((a + 1) * (b + 1)) as usize);
    let mut p_terms = Vec::with_capacity(s_terms.capacity());
    for i in 0..=a {
        for j in 0..=b {
            let m = i + j + 1;
            let parts = [
                ln_binomial(a, i),
                ln_binomial(b, j),
                -ln_factorial(i),
                -ln_factorial(j),
                log_gamma(f64::from(m) + 0.5)?,
            ];
            let log_t: f64 = parts.iter().sum();
            // each ln-factorial carries a few ulp of absolute error
            let scale: f64 =
                ln_factorial(a) + ln_factorial(b) + 2.0 * ln_factorial(i.max(j)) + parts[4].abs();
            let err = 16.0 * eps * (1.0 + scale);
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            s_terms.push((SignedLogValue::new(sign, log_t), err));
            let extra = (f64::from(m) + 0.5).ln() - f64::from(i + 1).ln() - f64::from(j + 1).ln();
            p_terms.push((
                SignedLogValue::new(sign, log_t + extra),
                err + 8.0 * eps * (1.0 + extra.abs()),
            ));
        }
    }
    let (sa, ea) = signed_log_sum_with_bound(&s_terms);
    let (sb, eb) = signed_log_sum_with_bound(&p_terms);
    let s_wave = -sa.to_f64();
    let p_wave = -p_wave_factor(n) * sb.to_f64();
    let total = (s_wave + p_wave).abs();
    // the antiparticle speed uses the s-wave sum alone, so each sum must
    // meet the target as well as their combination
    let bound = ((s_wave.abs() * ea + p_wave.abs() * eb) / total)
        .max(ea)
        .max(eb)
        + 4.0 * eps;
    if !(bound <= CERTIFIED_RELATIVE_ERROR) {
        return Err(Error::PrecisionExhausted {
            n,
            relative_bound: bound,
        });
    }
    Ok(StrongFieldMoments {
        n,
        s_wave,
        p_wave,
        relative_bound: bound,
        method: SumMethod::SignedLog,
    })
}

/// Evaluates both sums exactly; `Gamma(m + 1/2) = sqrt(pi) (2m)! / (4^m m!)`
/// makes every term a rational multiple of `sqrt(pi)`.
pub fn strong_field_moments_exact(n: u32) -> Result<StrongFieldMoments> {
    check_even(n)?;
    let (a, b) = (n / 2, n / 2 + 1);
    let big_m = a + b + 1;
    let mut fact = vec![BigInt::one()];
    for k in 1..=(2 * big_m + 2) {
        let next = &fact[k as usize - 1] * BigInt::from(k);
        fact.push(next);
    }
    let f = |k: u32| &fact[k as usize];
    let binom = |top: u32, k: u32| f(top) / (f(k) * f(top - k));
    let four_pow = |k: u32| BigInt::one() << (2 * k);

    // common denominators: a! b! 4^M M! and 2 (a+1)! (b+1)! 4^M M!
    let w: Vec<BigInt> = (0..=big_m)
        .map(|m| f(2 * m) * four_pow(big_m - m) * (f(big_m) / f(m)))
        .collect();
    let mut s_num = BigInt::zero();
    let mut p_num = BigInt::zero();
    for i in 0..=a {
        let ci = binom(a, i);
        let us = &ci * (f(a) / f(i));
        let up = &ci * (f(a + 1) / f(i + 1));
        for j in 0..=b {
            let cj = binom(b, j);
            let m = i + j + 1;
            let mut ts = &us * (&cj * (f(b) / f(j))) * &w[m as usize];
            let mut tp =
                &up * (&cj * (f(b + 1) / f(j + 1))) * &w[m as usize] * BigInt::from(2 * m + 1);
            if (i + j) % 2 == 1 {
                ts = -ts;
                tp = -tp;
            }
            s_num += ts;
            p_num += tp;
        }
    }
    let s_den = f(a) * f(b) * four_pow(big_m) * f(big_m);
    let p_den = BigInt::from(2) * f(a + 1) * f(b + 1) * four_pow(big_m) * f(big_m);
    let to_f64 = |num: BigInt, den: BigInt| {
        BigRational::new(num, den).to_f64().ok_or_else(|| {
            Error::Domain(format!("strong-field sum for n = {n} is not representable"))
        })
    };
    let s_wave = -SQRT_PI * to_f64(s_num, s_den)?;
    let p_wave = -SQRT_PI * p_wave_factor(n) * to_f64(p_num, p_den)?;
    Ok(StrongFieldMoments {
        n,
        s_wave,
        p_wave,
        relative_bound: 8.0 * f64::EPSILON,
        method: SumMethod::ExactRational,
    })
}

/// Signed-log evaluation, escalating to exact arithmetic when it cannot be
/// certified.
pub fn strong_field_moments(n: u32) -> Result<StrongFieldMoments> {
    match strong_field_moments_signed_log(n) {
        Err(Error::PrecisionExhausted { .. }) => strong_field_moments_exact(n),
        other => other,
    }
}

/// Maximum radial displacement of `(U_n + U_{n+2}) / sqrt(2)` as `B -> inf`.
pub fn displacement_strong_field_closed_form(n: u32, field: &FieldConfig) -> Result<f64> {
    Ok(strong_field_moments(n)?.scaled_displacement() / field.beta())
}

/// `sqrt(n + 4) - sqrt(n + 2)` without cancellation.
fn level_root_gap(n: u32) -> f64 {
    2.0 / (f64::from(n + 4).sqrt() + f64::from(n + 2).sqrt())
}

/// Strong-field `v/c` of the particle-particle superposition; independent
/// of `B`.
pub fn speed_strong_field(n: u32) -> Result<f64> {
    let d = strong_field_moments(n)?.scaled_displacement();
    Ok(d * level_root_gap(n) * std::f64::consts::SQRT_2 / std::f64::consts::PI)
}

/// Strong-field `v/c` of the antiparticle-particle superposition at
/// `p0 = q beta hbar` (sharp momentum, `m0 c^2` neglected).
pub fn speed_strong_field_antiparticle(n: u32, q: f64) -> Result<f64> {
    if !q.is_finite() {
        return Err(Error::Domain(format!("momentum must be finite, got {q}")));
    }
    let s = strong_field_moments(n)?.s_wave.abs();
    let (hi, lo) = (f64::from(2 * n + 8), f64::from(2 * n + 4));
    let q2 = q * q;
    Ok(4.0 * q.abs() * s / (std::f64::consts::PI * (q2 + hi).sqrt() * (q2 + lo).sqrt()))
}

/// Strong-field antiparticle-particle displacement at `p0 = q beta hbar`.
pub fn displacement_strong_field_antiparticle(n: u32, q: f64, field: &FieldConfig) -> Result<f64> {
    if !q.is_finite() {
        return Err(Error::Domain(format!("momentum must be finite, got {q}")));
    }
    let s = strong_field_moments(n)?.s_wave.abs();
    let q2 = q * q;
    let (hi, lo) = (
        (q2 + f64::from(2 * n + 8)).sqrt(),
        (q2 + f64::from(2 * n + 4)).sqrt(),
    );
    Ok(4.0 * q.abs() * s / (field.beta() * hi * lo * (hi + lo)))
}

/// The `q` maximizing [`speed_strong_field_antiparticle`]: `((2n+8)(2n+4))^(1/4)`.
pub fn optimal_antiparticle_momentum(n: u32) -> f64 {
    (f64::from(2 * n + 8) * f64::from(2 * n + 4)).sqrt().sqrt()
}

/// [`speed_strong_field_antiparticle`] at its optimal momentum.
pub fn speed_strong_field_antiparticle_max(n: u32) -> Result<f64> {
    let s = strong_field_moments(n)?.s_wave.abs();
    let (hi, lo) = (f64::from(2 * n + 8).sqrt(), f64::from(2 * n + 4).sqrt());
    Ok(4.0 * s / (std::f64::consts::PI * (hi + lo)))
}
