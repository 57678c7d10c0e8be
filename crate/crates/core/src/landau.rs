//! Non-relativistic electron in a uniform magnetic field (symmetric gauge).
//!
//! Eigenfunctions are labelled by the 2D oscillator quantum number `n`, the
//! orbital projection `m_l` (`n - m_l` even, `|m_l| <= n`), the spin
//! projection and the axial momentum. Only the real radial factor of each
//! eigenfunction is ever evaluated: the azimuthal phase `exp(i m_l phi)`
//! integrates to a Kronecker delta and is applied as a selection rule.

use crate::error::{Error, Result};
use crate::specfun::{integrate_radial, laguerre, ln_binomial, ln_factorial, QuadratureConfig};

/// Physical constants in a consistent unit system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Elementary charge (absolute value of the electron charge).
    pub e: f64,
    /// Electron rest mass.
    pub m0: f64,
    pub hbar: f64,
    pub c: f64,
}

impl PhysicalConstants {
    /// CODATA 2018 SI values.
    pub const fn codata() -> Self {
        Self {
            e: 1.602_176_634e-19,
            m0: 9.109_383_701_5e-31,
            hbar: 1.054_571_817e-34,
            c: 299_792_458.0,
        }
    }

    /// `e = m0 = hbar = c = 1`.
    pub const fn natural() -> Self {
        Self {
            e: 1.0,
            m0: 1.0,
            hbar: 1.0,
            c: 1.0,
        }
    }

    pub fn new(e: f64, m0: f64, hbar: f64, c: f64) -> Result<Self> {
        let c = Self { e, m0, hbar, c };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("e", self.e),
            ("m0", self.m0),
            ("hbar", self.hbar),
            ("c", self.c),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidConfig(format!(
                    "constant {name} must be positive, got {v}"
                )));
            }
        }
        Ok(())
    }

    /// Rest energy `m0 c^2`.
    pub fn rest_energy(&self) -> f64 {
        self.m0 * self.c * self.c
    }

    /// Field at which the non-relativistic average radial speed equals `c`:
    /// `2 pi m0^2 c^2 / (e hbar)`.
    pub fn superluminal_field(&self) -> f64 {
        2.0 * std::f64::consts::PI * (self.m0 * self.c).powi(2) / (self.e * self.hbar)
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::codata()
    }
}

/// A field strength together with its derived scales.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldConfig {
    b: f64,
    constants: PhysicalConstants,
    beta: f64,
    omega: f64,
    curly_e: f64,
}

impl FieldConfig {
    pub fn new(b: f64, constants: PhysicalConstants) -> Result<Self> {
        constants.validate()?;
        if !(b > 0.0 && b.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "field strength must be positive, got {b}"
            )));
        }
        let omega = constants.e * b / (2.0 * constants.m0);
        Ok(Self {
            b,
            constants,
            beta: (constants.e * b / (2.0 * constants.hbar)).sqrt(),
            omega,
            curly_e: 2.0 * omega,
        })
    }

    /// Field in SI units with CODATA constants.
    pub fn si(b_tesla: f64) -> Result<Self> {
        Self::new(b_tesla, PhysicalConstants::codata())
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn constants(&self) -> &PhysicalConstants {
        &self.constants
    }

    /// Inverse magnetic length `sqrt(e B / 2 hbar)`.
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `e B / 2 m0`; the Landau level spacing is `2 hbar omega`.
    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// `e B / m0`, the angular frequency of the radial breathing between
    /// levels `n` and `n + 2`.
    pub fn curly_e(&self) -> f64 {
        self.curly_e
    }

    /// `beta * hbar`, the natural momentum scale of the field.
    pub fn momentum_scale(&self) -> f64 {
        self.beta * self.constants.hbar
    }

    /// `e B hbar c^2`, the magnetic contribution per unit level index to `E^2`.
    pub fn magnetic_energy_sq(&self) -> f64 {
        let c = &self.constants;
        c.e * self.b * c.hbar * c.c * c.c
    }
}

/// Spin projection along the field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    /// `2 m_s`, i.e. +1 or -1.
    pub fn twice_projection(self) -> i64 {
        match self {
            Spin::Up => 1,
            Spin::Down => -1,
        }
    }

    pub fn projection(self) -> f64 {
        0.5 * self.twice_projection() as f64
    }
}

/// Sign of a Dirac eigenenergy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EnergySign {
    Positive,
    Negative,
}

impl EnergySign {
    pub fn factor(self) -> f64 {
        match self {
            EnergySign::Positive => 1.0,
            EnergySign::Negative => -1.0,
        }
    }
}

/// Transverse quantum numbers `(n, m_l)` of one radial eigenfunction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Orbital {
    n: u32,
    m_l: i32,
}

impl Orbital {
    pub fn new(n: u32, m_l: i32) -> Result<Self> {
        if m_l.unsigned_abs() > n {
            return Err(Error::InvalidState {
                n,
                m_l,
                reason: "|m_l| exceeds n",
            });
        }
        if (i64::from(n) - i64::from(m_l)) % 2 != 0 {
            return Err(Error::InvalidState {
                n,
                m_l,
                reason: "n - m_l must be even",
            });
        }
        Ok(Self { n, m_l })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m_l(&self) -> i32 {
        self.m_l
    }

    /// Laguerre degree `(n - |m_l|) / 2`.
    pub fn radial_degree(&self) -> u32 {
        (self.n - self.m_l.unsigned_abs()) / 2
    }

    /// The radial factor as a reusable function of `rho`.
    pub fn radial(&self, field: &FieldConfig) -> RadialFunction {
        let k = self.radial_degree();
        let alpha = self.m_l.unsigned_abs();
        // (-1)^k k! / sqrt(pi (k+|m|)! k!) = (-1)^k sqrt(k! / (pi (k+|m|)!))
        let ln_norm = 0.5 * (ln_factorial(k) - ln_factorial(k + alpha) - std::f64::consts::PI.ln());
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        RadialFunction {
            k,
            alpha,
            beta: field.beta(),
            prefactor: sign * ln_norm.exp() * field.beta(),
            ln_bound: ln_binomial(k + alpha, k) + ln_norm,
        }
    }
}

/// Real radial factor of a Landau eigenfunction, `F_{n,m_l}(rho)` without
/// the azimuthal phase.
#[derive(Debug, Clone, Copy)]
pub struct RadialFunction {
    k: u32,
    alpha: u32,
    beta: f64,
    prefactor: f64,
    ln_bound: f64,
}

impl RadialFunction {
    pub fn eval(&self, rho: f64) -> f64 {
        let br = self.beta * rho;
        let x = br * br;
        // |L^a_k(x)| <= (1 + x)^(k + a): skip points where the product underflows
        let ln_upper = self.ln_bound
            + 0.5 * f64::from(self.alpha) * x.max(f64::MIN_POSITIVE).ln()
            + f64::from(self.k + self.alpha) * x.ln_1p()
            - 0.5 * x;
        if ln_upper < -740.0 {
            return 0.0;
        }
        self.prefactor
            * br.powi(self.alpha as i32)
            * laguerre(self.k, self.alpha, x)
            * (-0.5 * x).exp()
    }
}

/// Quantum numbers of one eigenstate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LandauState {
    orbital: Orbital,
    pub spin: Spin,
    /// Axial momentum `p`.
    pub p: f64,
    /// Energy sign; only meaningful for the Dirac spectrum.
    pub sign: EnergySign,
}

impl LandauState {
    pub fn new(n: u32, m_l: i32, spin: Spin, p: f64) -> Result<Self> {
        Ok(Self {
            orbital: Orbital::new(n, m_l)?,
            spin,
            p,
            sign: EnergySign::Positive,
        })
    }

    pub fn with_sign(mut self, sign: EnergySign) -> Self {
        self.sign = sign;
        self
    }

    pub fn n(&self) -> u32 {
        self.orbital.n
    }

    pub fn m_l(&self) -> i32 {
        self.orbital.m_l
    }

    pub fn orbital(&self) -> Orbital {
        self.orbital
    }

    /// `n + m_l + 2 m_s + 1`, the integer multiplying the field in both spectra.
    pub fn level_index(&self) -> i64 {
        i64::from(self.orbital.n) + i64::from(self.orbital.m_l) + self.spin.twice_projection() + 1
    }
}

/// Gaussian axial wave packet with mean momentum `p0` and position width `d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PacketSpec {
    pub p0: f64,
    d: f64,
    sigma_p: f64,
}

impl PacketSpec {
    pub fn new(p0: f64, d: f64, constants: &PhysicalConstants) -> Result<Self> {
        if !(d > 0.0 && d.is_finite()) || !p0.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "packet needs finite p0 and d > 0, got p0 = {p0}, d = {d}"
            )));
        }
        Ok(Self {
            p0,
            d,
            sigma_p: constants.hbar / (2.0 * d),
        })
    }

    /// Default width `d = 50 / beta`, i.e. `sigma_p = beta hbar / 100`.
    pub fn default_for(p0: f64, field: &FieldConfig) -> Self {
        Self::new(
            p0,
            DEFAULT_WIDTH_OVER_INV_BETA / field.beta(),
            field.constants(),
        )
        .expect("positive width")
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    /// Momentum standard deviation `hbar / (2 d)`.
    pub fn sigma_p(&self) -> f64 {
        self.sigma_p
    }
}

/// Default packet width in units of `1 / beta`.
pub const DEFAULT_WIDTH_OVER_INV_BETA: f64 = 50.0;

/// Real radial factor of `F_{n,m_l}(rho, phi)`.
pub fn radial_wavefunction(state: &LandauState, field: &FieldConfig, rho: f64) -> Result<f64> {
    if !(rho >= 0.0) {
        return Err(Error::Domain(format!(
            "rho must be non-negative, got {rho}"
        )));
    }
    Ok(state.orbital.radial(field).eval(rho))
}

/// Schrodinger-Pauli eigenenergy `p^2 / 2 m0 + hbar omega (n + m_l + 2 m_s + 1)`.
pub fn nonrel_energy(state: &LandauState, field: &FieldConfig) -> f64 {
    let c = field.constants();
    state.p * state.p / (2.0 * c.m0) + c.hbar * field.omega() * state.level_index() as f64
}

/// `2 pi * integral of F_a rho^power F_b rho drho` between radial
/// eigenfunctions; exactly zero when the orbital projections differ.
pub fn orbital_moment(
    a: Orbital,
    b: Orbital,
    field: &FieldConfig,
    power: u32,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    if a.m_l != b.m_l {
        return Ok(0.0);
    }
    let fa = a.radial(field);
    let fb = b.radial(field);
    let two_pi = 2.0 * std::f64::consts::PI;
    integrate_radial(
        |r| two_pi * fa.eval(r) * fb.eval(r) * r.powi(power as i32 + 1),
        field.beta(),
        a.n.max(b.n),
        cfg,
    )
}

/// Radial matrix element `<a| rho^power |b>` of two eigenstates.
///
/// Only the transverse part is integrated; spin and axial momentum are left
/// to the caller.
pub fn radial_moment(
    a: &LandauState,
    b: &LandauState,
    field: &FieldConfig,
    power: u32,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    orbital_moment(a.orbital, b.orbital, field, power, cfg)
}

/// Mean radial position at time `t` of `(F_{0,0} + F_{2,0}) / sqrt(2)`
/// (spin up, `p0 = 0`).
pub fn mean_rho_nonrel(field: &FieldConfig, t: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let ground = Orbital::new(0, 0)?;
    let excited = Orbital::new(2, 0)?;
    let aa = orbital_moment(ground, ground, field, 1, cfg)?;
    let bb = orbital_moment(excited, excited, field, 1, cfg)?;
    let ab = orbital_moment(ground, excited, field, 1, cfg)?;
    Ok(0.5 * (aa + bb + 2.0 * ab * (field.curly_e() * t).cos()))
}

/// Normalized Gaussian momentum density `|alpha(p)|^2` of the packet.
pub fn momentum_density(packet: &PacketSpec, p: f64) -> f64 {
    let s = packet.sigma_p();
    let z = (p - packet.p0) / s;
    (-0.5 * z * z).exp() / (s * (2.0 * std::f64::consts::PI).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQRT_PI: f64 = 1.772_453_850_905_516;

    fn up(n: u32, m_l: i32) -> LandauState {
        LandauState::new(n, m_l, Spin::Up, 0.0).unwrap()
    }

    #[test]
    fn ground_state_at_origin() {
        let field = FieldConfig::si(3.0).unwrap();
        let v = radial_wavefunction(&up(0, 0), &field, 0.0).unwrap();
        assert!((v - field.beta() / SQRT_PI).abs() < 1e-15 * v);
    }

    #[test]
    fn parity_violations_are_rejected() {
        assert!(matches!(
            LandauState::new(2, 1, Spin::Up, 0.0),
            Err(Error::InvalidState { .. })
        ));
        assert!(matches!(
            Orbital::new(1, 3),
            Err(Error::InvalidState { .. })
        ));
        assert!(Orbital::new(3, -1).is_ok());
    }

    #[test]
    fn derived_scales_are_consistent() {
        let field = FieldConfig::si(1.0).unwrap();
        let c = field.constants();
        let back = field.beta().powi(2) * 2.0 * c.hbar / c.e;
        assert!((back - 1.0).abs() < 1e-15);
        assert_eq!(field.curly_e(), 2.0 * field.omega());
        assert!((field.omega() / 8.794e10 - 1.0).abs() < 1e-3);
        assert!(FieldConfig::si(0.0).is_err());
        assert!(FieldConfig::si(-2.0).is_err());
    }

    #[test]
    fn spectrum_examples() {
        let field = FieldConfig::si(1.0).unwrap();
        let hw = field.constants().hbar * field.omega();
        let e0 = nonrel_energy(&up(0, 0), &field);
        assert!((e0 - 2.0 * hw).abs() < 1e-15 * e0);
        let down = LandauState::new(0, 0, Spin::Down, 0.0).unwrap();
        assert_eq!(nonrel_energy(&down, &field), 0.0);
        for n in [0, 2, 10, 40] {
            let gap = nonrel_energy(&up(n + 2, 0), &field) - nonrel_energy(&up(n, 0), &field);
            let want = c_hbar(&field) * field.curly_e();
            assert!((gap - want).abs() < 1e-9 * want);
        }
    }

    fn c_hbar(field: &FieldConfig) -> f64 {
        field.constants().hbar
    }

    #[test]
    fn closed_form_moments() {
        let field = FieldConfig::si(1.0).unwrap();
        let cfg = QuadratureConfig::default();
        let beta = field.beta();
        let cross = radial_moment(&up(0, 0), &up(2, 0), &field, 1, &cfg).unwrap();
        assert!((cross / (SQRT_PI / (4.0 * beta)) - 1.0).abs() < 1e-10);
        let diag = radial_moment(&up(0, 0), &up(0, 0), &field, 1, &cfg).unwrap();
        assert!((diag / (SQRT_PI / (2.0 * beta)) - 1.0).abs() < 1e-10);
        let zero = radial_moment(&up(0, 0), &up(1, 1), &field, 1, &cfg).unwrap();
        assert_eq!(zero, 0.0);
    }

    #[test]
    fn excited_state_is_normalized() {
        let field = FieldConfig::si(7.0).unwrap();
        let cfg = QuadratureConfig::default();
        let norm = radial_moment(&up(3, 1), &up(3, 1), &field, 0, &cfg).unwrap();
        assert!((norm - 1.0).abs() < 1e-10);
    }

    #[test]
    fn orthonormal_up_to_n_10() {
        let field = FieldConfig::new(2.0, PhysicalConstants::natural()).unwrap();
        let cfg = QuadratureConfig::default();
        for m_l in -2..=2i32 {
            for n in 0..=10u32 {
                for n2 in n..=10u32 {
                    let (Ok(a), Ok(b)) = (Orbital::new(n, m_l), Orbital::new(n2, m_l)) else {
                        continue;
                    };
                    let g = orbital_moment(a, b, &field, 0, &cfg).unwrap();
                    let want = if n == n2 { 1.0 } else { 0.0 };
                    assert!((g - want).abs() < 1e-8, "({n},{n2},{m_l}) = {g}");
                }
            }
        }
    }

    #[test]
    fn breathing_mode_displacement() {
        let field = FieldConfig::si(1.0).unwrap();
        let cfg = QuadratureConfig::default();
        let period = 2.0 * std::f64::consts::PI / field.curly_e();
        let r0 = mean_rho_nonrel(&field, 0.0, &cfg).unwrap();
        let r_period = mean_rho_nonrel(&field, period, &cfg).unwrap();
        assert!((r0 - r_period).abs() < 1e-12 * r0);
        let c = field.constants();
        let t_min = std::f64::consts::PI * c.m0 / (c.e * field.b());
        let shift = (mean_rho_nonrel(&field, t_min, &cfg).unwrap() - r0).abs();
        let want = (std::f64::consts::PI * c.hbar / (2.0 * c.e * field.b())).sqrt();
        assert!((shift / want - 1.0).abs() < 1e-9);
        assert!((shift / 3.216e-8 - 1.0).abs() < 2e-4);
    }

    #[test]
    fn packet_density_moments() {
        let c = PhysicalConstants::codata();
        let field = FieldConfig::si(10.0).unwrap();
        let packet =
            PacketSpec::new(3.0 * field.momentum_scale(), 40.0 / field.beta(), &c).unwrap();
        let s = packet.sigma_p();
        assert!((s * packet.d() / c.hbar - 0.5).abs() < 1e-15);
        // Riemann sums over +-10 sigma
        let n = 4000;
        let h = 20.0 * s / n as f64;
        let (mut m0, mut m1, mut m2) = (0.0, 0.0, 0.0);
        for i in 0..n {
            let p = packet.p0 - 10.0 * s + (i as f64 + 0.5) * h;
            let w = momentum_density(&packet, p) * h;
            m0 += w;
            m1 += w * p;
            m2 += w * (p - packet.p0).powi(2);
        }
        assert!((m0 - 1.0).abs() < 1e-12);
        assert!((m1 / packet.p0 - 1.0).abs() < 1e-12);
        assert!((m2 / (c.hbar * c.hbar / (4.0 * packet.d().powi(2))) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn default_packet_width() {
        let field = FieldConfig::si(1e9).unwrap();
        let packet = PacketSpec::default_for(0.0, &field);
        assert!((packet.sigma_p() / (field.momentum_scale() / 100.0) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn superluminal_threshold_field() {
        let b = PhysicalConstants::codata().superluminal_field();
        assert!((b / 2.774e10 - 1.0).abs() < 1e-3);
    }
}
