//! Dirac eigenenergies and analytic four-component spinors.
//!
//! Only the spin-up, `m_l = 0`, even-`n` family is built. Each spinor
//! component is a short list of weighted radial eigenfunctions, so inner
//! products reduce to radial moments between Landau eigenfunctions. The
//! lower (upper) pair of a positive (negative) energy spinor is
//! `c sigma.Pi / (E +- m0 c^2)` applied to the Pauli spinor `(F_{n,0}, 0)`.

use std::cell::RefCell;
use std::collections::HashMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::landau::{orbital_moment, EnergySign, FieldConfig, LandauState, Orbital, Spin};
use crate::specfun::QuadratureConfig;

/// Dirac eigenenergy `j sqrt(m0^2 c^4 + p^2 c^2 + e B hbar c^2 (n + m_l + 2 m_s + 1))`.
pub fn rel_energy(state: &LandauState, field: &FieldConfig) -> f64 {
    let rest = field.constants().rest_energy();
    state.sign.factor() * (rest * rest + excitation_sq(state, field)).sqrt()
}

/// `E^2 - m0^2 c^4` for the state.
pub fn excitation_sq(state: &LandauState, field: &FieldConfig) -> f64 {
    let c = field.constants().c;
    let pc = state.p * c;
    pc * pc + field.magnetic_energy_sq() * state.level_index() as f64
}

/// `|E| - m0 c^2`, evaluated without cancellation at weak field.
pub fn rel_kinetic_energy(state: &LandauState, field: &FieldConfig) -> f64 {
    let rest = field.constants().rest_energy();
    let x = excitation_sq(state, field);
    x / ((rest * rest + x).sqrt() + rest)
}

/// Radial moments between Landau eigenfunctions, memoized for one field and
/// quadrature configuration.
///
/// Not shareable across threads; build one per computation.
pub struct MomentTable<'a> {
    field: &'a FieldConfig,
    cfg: &'a QuadratureConfig,
    cache: RefCell<HashMap<(Orbital, Orbital, u32), f64>>,
}

impl<'a> MomentTable<'a> {
    pub fn new(field: &'a FieldConfig, cfg: &'a QuadratureConfig) -> Self {
        Self {
            field,
            cfg,
            cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn field(&self) -> &FieldConfig {
        self.field
    }

    /// `2 pi * integral of F_a rho^power F_b rho drho`.
    pub fn moment(&self, a: Orbital, b: Orbital, power: u32) -> Result<f64> {
        if a.m_l() != b.m_l() {
            return Ok(0.0);
        }
        let key = if a <= b { (a, b, power) } else { (b, a, power) };
        if let Some(v) = self.cache.borrow().get(&key) {
            return Ok(*v);
        }
        let v = orbital_moment(key.0, key.1, self.field, power, self.cfg)?;
        self.cache.borrow_mut().insert(key, v);
        Ok(v)
    }
}

/// One weighted radial eigenfunction inside a spinor component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinorTerm {
    pub weight: Complex64,
    pub orbital: Orbital,
}

/// A four-component Dirac spinor in closed form.
///
/// Stored weights exclude the normalization constant; [`AnalyticSpinor::terms`]
/// yields the normalized ones.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticSpinor {
    components: [Vec<SpinorTerm>; 4],
    norm_constant: f64,
    energy: f64,
    p: f64,
}

impl AnalyticSpinor {
    pub fn norm_constant(&self) -> f64 {
        self.norm_constant
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Unnormalized terms of component `k` (0..4).
    pub fn raw_component(&self, k: usize) -> &[SpinorTerm] {
        &self.components[k]
    }

    /// Normalized terms of component `k`.
    pub fn terms(&self, k: usize) -> impl Iterator<Item = SpinorTerm> + '_ {
        let n = self.norm_constant;
        self.components[k].iter().map(move |t| SpinorTerm {
            weight: t.weight * n,
            orbital: t.orbital,
        })
    }
}

fn family_state(n: u32, p: f64, sign: EnergySign) -> Result<LandauState> {
    if n % 2 != 0 {
        return Err(Error::UnsupportedFamily(format!(
            "only even n with m_l = 0 and spin up is supported, got n = {n}"
        )));
    }
    Ok(LandauState::new(n, 0, Spin::Up, p)?.with_sign(sign))
}

/// Weight of the `F_{n+1,1}` term, `i sqrt(2) c hbar beta sqrt(n + 2) / denom`.
fn ladder_weight(n: u32, field: &FieldConfig, denom: f64) -> Complex64 {
    let c = field.constants();
    let mag =
        std::f64::consts::SQRT_2 * c.c * c.hbar * field.beta() * f64::from(n + 2).sqrt() / denom;
    Complex64::new(0.0, mag)
}

fn build(
    components: [Vec<SpinorTerm>; 4],
    energy: f64,
    p: f64,
    table: &MomentTable<'_>,
) -> Result<AnalyticSpinor> {
    let mut spinor = AnalyticSpinor {
        components,
        norm_constant: 1.0,
        energy,
        p,
    };
    let norm_sq = spinor_overlap(&spinor, &spinor, table)?;
    spinor.norm_constant = 1.0 / norm_sq.re.sqrt();
    Ok(spinor)
}

/// Positive-energy spinor of the `(n, m_l = 0, spin up)` family with axial
/// momentum `p`, normalized by quadrature.
pub fn positive_spinor_with(n: u32, p: f64, table: &MomentTable<'_>) -> Result<AnalyticSpinor> {
    let field = table.field();
    let state = family_state(n, p, EnergySign::Positive)?;
    let energy = rel_energy(&state, field);
    let c = field.constants();
    let denom = energy + c.rest_energy();
    let s_wave = Orbital::new(n, 0)?;
    let p_wave = Orbital::new(n + 1, 1)?;
    let components = [
        vec![SpinorTerm {
            weight: Complex64::new(1.0, 0.0),
            orbital: s_wave,
        }],
        Vec::new(),
        vec![SpinorTerm {
            weight: Complex64::new(c.c * p / denom, 0.0),
            orbital: s_wave,
        }],
        vec![SpinorTerm {
            weight: ladder_weight(n, field, denom),
            orbital: p_wave,
        }],
    ];
    build(components, energy, p, table)
}

/// Negative-energy spinor of the `(n, m_l = 0, spin up)` family.
pub fn negative_spinor_with(n: u32, p: f64, table: &MomentTable<'_>) -> Result<AnalyticSpinor> {
    let field = table.field();
    let state = family_state(n, p, EnergySign::Negative)?;
    let energy = rel_energy(&state, field);
    let c = field.constants();
    // E < 0, so this is -(|E| + m0 c^2)
    let denom = energy - c.rest_energy();
    let s_wave = Orbital::new(n, 0)?;
    let p_wave = Orbital::new(n + 1, 1)?;
    let components = [
        vec![SpinorTerm {
            weight: Complex64::new(c.c * p / denom, 0.0),
            orbital: s_wave,
        }],
        vec![SpinorTerm {
            weight: ladder_weight(n, field, denom),
            orbital: p_wave,
        }],
        vec![SpinorTerm {
            weight: Complex64::new(1.0, 0.0),
            orbital: s_wave,
        }],
        Vec::new(),
    ];
    build(components, energy, p, table)
}

pub fn positive_spinor(n: u32, field: &FieldConfig, p: f64) -> Result<AnalyticSpinor> {
    let cfg = QuadratureConfig::default();
    positive_spinor_with(n, p, &MomentTable::new(field, &cfg))
}

pub fn negative_spinor(n: u32, field: &FieldConfig, p: f64) -> Result<AnalyticSpinor> {
    let cfg = QuadratureConfig::default();
    negative_spinor_with(n, p, &MomentTable::new(field, &cfg))
}

/// Closed-form normalization constant
/// `[1 + ((c p)^2 + 2 c^2 hbar^2 beta^2 (n + 2)) / (E +- m0 c^2)^2]^(-1/2)`.
pub fn closed_form_norm_constant(
    n: u32,
    field: &FieldConfig,
    p: f64,
    sign: EnergySign,
) -> Result<f64> {
    let state = family_state(n, p, sign)?;
    let energy = rel_energy(&state, field);
    let c = field.constants();
    let denom = match sign {
        EnergySign::Positive => energy + c.rest_energy(),
        EnergySign::Negative => energy - c.rest_energy(),
    };
    let ladder = c.c * c.hbar * field.beta();
    let extra = ((c.c * p).powi(2) + 2.0 * ladder * ladder * f64::from(n + 2)) / (denom * denom);
    Ok(1.0 / (1.0 + extra).sqrt())
}

fn component_sum(
    a: &AnalyticSpinor,
    b: &AnalyticSpinor,
    power: u32,
    table: &MomentTable<'_>,
) -> Result<Complex64> {
    let mut total = Complex64::new(0.0, 0.0);
    for k in 0..4 {
        for ta in a.terms(k) {
            for tb in b.terms(k) {
                if ta.weight == Complex64::new(0.0, 0.0) || tb.weight == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let m = table.moment(ta.orbital, tb.orbital, power)?;
                total += ta.weight.conj() * tb.weight * m;
            }
        }
    }
    Ok(total)
}

/// `<a|b>` including the transverse integration.
pub fn spinor_overlap(
    a: &AnalyticSpinor,
    b: &AnalyticSpinor,
    table: &MomentTable<'_>,
) -> Result<Complex64> {
    component_sum(a, b, 0, table)
}

/// Crossed radial term `2 pi * integral of (sum_k a_k^dagger b_k) rho^2 drho`.
///
/// Every spinor of the implemented family has weights of a common phase per
/// component, so the result is real.
pub fn spinor_crossed_term_with(
    a: &AnalyticSpinor,
    b: &AnalyticSpinor,
    table: &MomentTable<'_>,
) -> Result<f64> {
    Ok(component_sum(a, b, 1, table)?.re)
}

pub fn spinor_crossed_term(
    a: &AnalyticSpinor,
    b: &AnalyticSpinor,
    field: &FieldConfig,
) -> Result<f64> {
    let cfg = QuadratureConfig::default();
    spinor_crossed_term_with(a, b, &MomentTable::new(field, &cfg))
}
