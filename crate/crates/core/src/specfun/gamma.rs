//! Natural logarithm of the Gamma function.
#![allow(clippy::excessive_precision)]

use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_61;
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_741_78;

/// zeta(2) ..= zeta(25)
const ZETA: [f64; 24] = [
    1.644_934_066_848_226_436_5,
    1.202_056_903_159_594_285_4,
    1.082_323_233_711_138_191_5,
    1.036_927_755_143_369_926_3,
    1.017_343_061_984_449_139_7,
    1.008_349_277_381_922_826_8,
    1.004_077_356_197_944_339_4,
    1.002_008_392_826_082_214_4,
    1.000_994_575_127_818_085_3,
    1.000_494_188_604_119_464_6,
    1.000_246_086_553_308_048_3,
    1.000_122_713_347_578_489_1,
    1.000_061_248_135_058_704_8,
    1.000_030_588_236_307_020_5,
    1.000_015_282_259_408_651_9,
    1.000_007_637_197_637_899_8,
    1.000_003_817_293_264_999_8,
    1.000_001_908_212_716_553_9,
    1.000_000_953_962_033_872_8,
    1.000_000_476_932_986_787_8,
    1.000_000_238_450_502_727_7,
    1.000_000_119_219_925_965_3,
    1.000_000_059_608_189_051_3,
    1.000_000_029_803_503_514_7,
];

fn zeta_int(k: usize) -> f64 {
    if k <= 25 {
        ZETA[k - 2]
    } else {
        let kf = k as f64;
        1.0 + 2f64.powf(-kf) + 3f64.powf(-kf) + 4f64.powf(-kf)
    }
}

/// ln Gamma(1 + z) for |z| <= 1/2 from its Taylor series about 1.
fn ln_gamma_1p(z: f64) -> f64 {
    let mut sum = -EULER_GAMMA * z;
    // (-z)^k
    let mut zpow = -z;
    for k in 2..=60 {
        zpow *= -z;
        let term = zeta_int(k) * zpow / k as f64;
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1e-300) {
            break;
        }
    }
    sum
}

fn stirling(x: f64) -> f64 {
    // Bernoulli corrections B_2k / (2k (2k-1) x^(2k-1))
    const C: [f64; 8] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360_360.0,
        1.0 / 156.0,
        -3617.0 / 122_400.0,
    ];
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut p = inv;
    for c in C {
        series += c * p;
        p *= inv2;
    }
    (x - 0.5) * x.ln() - x + HALF_LN_2PI + series
}

/// `ln Gamma(x)` for `x > 0`.
///
/// Near the zeros at 1 and 2 a Taylor series keeps the relative error
/// small; elsewhere the argument is shifted above 10 and the Stirling series
/// is used.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!(
            "log_gamma requires a finite positive argument, got {x}"
        )));
    }
    if (0.5..=1.5).contains(&x) {
        return Ok(ln_gamma_1p(x - 1.0));
    }
    if (1.5..=2.5).contains(&x) {
        let z = x - 2.0;
        return Ok(ln_gamma_1p(z) + z.ln_1p());
    }
    if x < 0.5 {
        // Gamma(x) = Gamma(x + 1) / x
        return Ok(log_gamma(x + 1.0)? - x.ln());
    }
    if x >= 10.0 {
        return Ok(stirling(x));
    }
    let mut shifted = x;
    let mut prod = 1.0;
    while shifted < 10.0 {
        prod *= shifted;
        shifted += 1.0;
    }
    Ok(stirling(shifted) - prod.ln())
}

/// `ln(k!)` for non-negative integer `k`.
pub fn ln_factorial(k: u32) -> f64 {
    if k < 2 {
        return 0.0;
    }
    log_gamma(f64::from(k) + 1.0).expect("positive argument")
}

/// `ln C(n, k)`; `k <= n` is required.
pub fn ln_binomial(n: u32, k: u32) -> f64 {
    debug_assert!(k <= n);
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}
