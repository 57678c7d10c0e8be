//! Radial and momentum quadrature.
#![allow(clippy::excessive_precision)]

use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::landau::PacketSpec;

/// Tolerances and sizes for every numerical integral in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub relative_tolerance: f64,
    pub max_subdivisions: usize,
    /// Number of Gauss-Hermite nodes for packet averages.
    pub momentum_node_count: usize,
    /// Multiplier on `sqrt(2 n_max + 4) / beta`, the classical orbit radius.
    pub radial_cutoff_factor: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            relative_tolerance: 1e-10,
            max_subdivisions: 2000,
            momentum_node_count: 64,
            radial_cutoff_factor: 6.0,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.relative_tolerance > 0.0 && self.relative_tolerance < 1e-3) {
            return Err(Error::InvalidConfig(format!(
                "relative_tolerance must lie in (0, 1e-3), got {}",
                self.relative_tolerance
            )));
        }
        if self.momentum_node_count < 16 {
            return Err(Error::InvalidConfig(format!(
                "momentum_node_count must be at least 16, got {}",
                self.momentum_node_count
            )));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::InvalidConfig(
                "max_subdivisions must be positive".into(),
            ));
        }
        if !(self.radial_cutoff_factor > 0.0) {
            return Err(Error::InvalidConfig(
                "radial_cutoff_factor must be positive".into(),
            ));
        }
        Ok(())
    }
}

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1].
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    abs_value: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error).is_eq()
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut abs_value = WGK[7] * fc.abs();
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        kronrod += WGK[j] * (f1 + f2);
        abs_value += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    Segment {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
        abs_value: abs_value * half.abs(),
    }
}

/// Globally adaptive Gauss-Kronrod quadrature of `f` over `[a, b]`.
///
/// Converged when the summed error estimate is below
/// `tol * max(|I|, integral of |f|)`, which keeps integrals that cancel to
/// zero (orthogonality) from demanding unattainable relative accuracy.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
    max_subdivisions: usize,
) -> Result<f64> {
    adaptive(&f, a, b, tol, max_subdivisions).map(|(value, _)| value)
}

/// Returns the integral and the integral of `|f|`.
fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    max_subdivisions: usize,
) -> Result<(f64, f64)> {
    let initial = 8;
    let width = (b - a) / initial as f64;
    let mut heap = BinaryHeap::new();
    for i in 0..initial {
        let lo = a + width * i as f64;
        let hi = if i + 1 == initial {
            b
        } else {
            a + width * (i + 1) as f64
        };
        heap.push(gauss_kronrod(f, lo, hi));
    }
    let mut subdivisions = 0;
    loop {
        let (value, error, abs_value) = heap.iter().fold((0.0, 0.0, 0.0), |(v, e, s), seg| {
            (v + seg.value, e + seg.error, s + seg.abs_value)
        });
        if !value.is_finite() {
            return Err(Error::Convergence {
                estimate: value,
                error_bound: error,
                reason: "non-finite integrand",
            });
        }
        let scale = value.abs().max(abs_value);
        if error <= tol * scale || scale == 0.0 {
            return Ok((value, abs_value));
        }
        if subdivisions >= max_subdivisions {
            return Err(Error::Convergence {
                estimate: value,
                error_bound: error,
                reason: "subdivision limit reached",
            });
        }
        let worst = heap.pop().expect("non-empty heap");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval cannot be split further in floating point
            return Err(Error::Convergence {
                estimate: value,
                error_bound: error,
                reason: "interval underflow",
            });
        }
        heap.push(gauss_kronrod(f, worst.a, mid));
        heap.push(gauss_kronrod(f, mid, worst.b));
        subdivisions += 1;
    }
}

/// Integral of `f` over `[0, R]` with
/// `R = radial_cutoff_factor * sqrt(2 n_max + 4) / beta`.
///
/// The integrand is probed beyond the cutoff; if it has not decayed there
/// the truncation is reported as a convergence error.
pub fn integrate_radial<F: Fn(f64) -> f64>(
    f: F,
    beta: f64,
    n_max: u32,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    cfg.validate()?;
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::Domain(format!("beta must be positive, got {beta}")));
    }
    let cutoff = cfg.radial_cutoff_factor * (2.0 * f64::from(n_max) + 4.0).sqrt() / beta;
    let (value, abs_value) = adaptive(
        &f,
        0.0,
        cutoff,
        cfg.relative_tolerance,
        cfg.max_subdivisions,
    )?;

    // tail check: f(r) * r approximates the mass near r
    let scale = value.abs().max(abs_value).max(f64::MIN_POSITIVE);
    let mut tail = 0.0_f64;
    for factor in [1.0, 1.5, 2.0, 4.0, 8.0] {
        let r = cutoff * factor;
        tail = tail.max((f(r) * r).abs());
    }
    if !(tail <= cfg.relative_tolerance * scale) {
        return Err(Error::Convergence {
            estimate: value,
            error_bound: tail,
            reason: "integrand has not decayed at the radial cutoff",
        });
    }
    Ok(value)
}

/// Gauss-Hermite nodes and weights for the weight `exp(-x^2)`, in ascending
/// node order and exactly mirror-symmetric.
pub fn gauss_hermite(count: usize) -> (Vec<f64>, Vec<f64>) {
    let n = count;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let pim4 = std::f64::consts::PI.powf(-0.25);
    let m = n.div_ceil(2);
    let nf = n as f64;
    let mut z = 0.0;
    for i in 0..m {
        // initial guesses for the largest roots first
        z = match i {
            0 => (2.0 * nf + 1.0).sqrt() - 1.855_75 * (2.0 * nf + 1.0).powf(-0.166_67),
            1 => z - 1.14 * nf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * nodes[0],
            3 => 1.91 * z - 0.91 * nodes[1],
            _ => 2.0 * z - nodes[i - 2],
        };
        let mut pp = 0.0;
        for _ in 0..100 {
            // orthonormal Hermite recurrence
            let mut p1 = pim4;
            let mut p2 = 0.0;
            for j in 1..=n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = z * (2.0 / jf).sqrt() * p2 - ((jf - 1.0) / jf).sqrt() * p3;
            }
            pp = (2.0 * nf).sqrt() * p2;
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        nodes[i] = z;
        weights[i] = 2.0 / (pp * pp);
    }
    // nodes[0..m] hold the non-negative roots in descending order
    let mut xs = vec![0.0; n];
    let mut ws = vec![0.0; n];
    for i in 0..m {
        xs[i] = -nodes[i];
        ws[i] = weights[i];
        xs[n - 1 - i] = nodes[i];
        ws[n - 1 - i] = weights[i];
    }
    if n % 2 == 1 {
        xs[m - 1] = 0.0;
    }
    (xs, ws)
}

/// Mean of `g` under the packet's normalized Gaussian momentum density.
///
/// Nodes further than 8 standard deviations from the center are dropped.
/// Mirror-image nodes are accumulated pairwise so that odd integrands about
/// `p0` cancel exactly.
pub fn integrate_momentum<G: Fn(f64) -> f64>(
    g: G,
    packet: &PacketSpec,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    try_integrate_momentum(|p| Ok(g(p)), packet, cfg)
}

/// [`integrate_momentum`] for an integrand that can fail; the first error is
/// returned.
pub fn try_integrate_momentum<G: FnMut(f64) -> Result<f64>>(
    mut g: G,
    packet: &PacketSpec,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    cfg.validate()?;
    let (xs, ws) = gauss_hermite(cfg.momentum_node_count);
    let n = xs.len();
    let sigma = packet.sigma_p();
    let step = std::f64::consts::SQRT_2 * sigma;
    let cut = 8.0 / std::f64::consts::SQRT_2;
    let mut sum = 0.0;
    for i in 0..n / 2 {
        let x = xs[n - 1 - i];
        if x > cut {
            continue;
        }
        sum += ws[i] * (g(packet.p0 - step * x)? + g(packet.p0 + step * x)?);
    }
    if n % 2 == 1 {
        sum += ws[n / 2] * g(packet.p0)?;
    }
    Ok(sum / std::f64::consts::PI.sqrt())
}
