//! Radial displacement of the mean position and average radial speed.
//!
//! The displacement is `|<rho>(T_min) - <rho>(0)|` for the equal
//! superposition; only the crossed term `D` changes in time, so at fixed
//! momentum it equals `|D (cos(dE T_min / hbar) - 1)|`.

mod strong_field;

pub use strong_field::{
    displacement_strong_field_antiparticle, displacement_strong_field_closed_form,
    optimal_antiparticle_momentum, speed_strong_field, speed_strong_field_antiparticle,
    speed_strong_field_antiparticle_max, strong_field_moments, strong_field_moments_exact,
    strong_field_moments_signed_log, StrongFieldMoments, SumMethod, CERTIFIED_RELATIVE_ERROR,
};

use crate::dirac::{
    negative_spinor_with, positive_spinor_with, spinor_crossed_term_with, MomentTable,
};
use crate::error::{Error, Result};
use crate::landau::{nonrel_energy, orbital_moment, FieldConfig, LandauState, Orbital, PacketSpec};
use crate::qsl::{qsl_time, qsl_time_for_energies, SuperpositionKind, SuperpositionSpec};
use crate::specfun::{try_integrate_momentum, QuadratureConfig};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpeedResult {
    pub t_min: f64,
    pub displacement: f64,
    pub v_bar_over_c: f64,
    pub scenario: SuperpositionSpec,
}

impl SpeedResult {
    pub fn new(t_min: f64, displacement: f64, scenario: SuperpositionSpec) -> Self {
        let c = scenario.field.constants().c;
        Self {
            t_min,
            displacement,
            v_bar_over_c: displacement / (t_min * c),
            scenario,
        }
    }
}

/// `sqrt(pi hbar / 2 e B)` for `(F_{0,0} + F_{2,0}) / sqrt(2)`.
pub fn displacement_nonrel(field: &FieldConfig) -> f64 {
    let c = field.constants();
    (std::f64::consts::PI * c.hbar / (2.0 * c.e * field.b())).sqrt()
}

pub fn speed_nonrel(field: &FieldConfig) -> SpeedResult {
    let spec =
        SuperpositionSpec::with_default_packet(SuperpositionKind::Nonrelativistic, 0, 0.0, *field)
            .expect("n = 0 is even");
    let t_min = qsl_time(&spec)
        .expect("Landau levels are non-degenerate")
        .t_min;
    SpeedResult::new(t_min, displacement_nonrel(field), spec)
}

/// Displacement at `T_min` of `(a + b) / sqrt(2)` for two Pauli eigenstates.
///
/// Exactly zero unless both states share `m_l` and spin, since `rho` is
/// diagonal in both.
pub fn pair_displacement_nonrel(
    a: &LandauState,
    b: &LandauState,
    field: &FieldConfig,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    if a.m_l() != b.m_l() || a.spin != b.spin {
        return Ok(0.0);
    }
    let (ea, eb) = (nonrel_energy(a, field), nonrel_energy(b, field));
    let t_min = qsl_time_for_energies(ea, eb, field.constants().hbar)?.t_min;
    let crossed = orbital_moment(a.orbital(), b.orbital(), field, 1, cfg)?;
    let phase = (eb - ea) * t_min / field.constants().hbar;
    Ok((crossed * (phase.cos() - 1.0)).abs())
}

/// `D(p) (cos(dE(p) t / hbar) - 1)` at one axial momentum.
fn crossed_change(
    spec: &SuperpositionSpec,
    p: f64,
    t: f64,
    table: &MomentTable<'_>,
) -> Result<f64> {
    let n = spec.n();
    let crossed = match spec.kind {
        SuperpositionKind::Nonrelativistic => {
            table.moment(Orbital::new(n, 0)?, Orbital::new(n + 2, 0)?, 1)?
        }
        SuperpositionKind::ParticleParticle => {
            let a = positive_spinor_with(n, p, table)?;
            let b = positive_spinor_with(n + 2, p, table)?;
            spinor_crossed_term_with(&a, &b, table)?
        }
        SuperpositionKind::AntiparticleParticle => {
            let a = negative_spinor_with(n, p, table)?;
            let b = positive_spinor_with(n + 2, p, table)?;
            spinor_crossed_term_with(&a, &b, table)?
        }
    };
    let phase = spec.energy_gap(p) * t / spec.field.constants().hbar;
    Ok(crossed * (phase.cos() - 1.0))
}

/// Packet-averaged displacement of the mean radial position between `0` and
/// `T_min`; the phase is evaluated at every momentum node.
pub fn displacement_rel(spec: &SuperpositionSpec, cfg: &QuadratureConfig) -> Result<f64> {
    let t_min = qsl_time(spec)?.t_min;
    if spec.kind == SuperpositionKind::Nonrelativistic {
        return displacement_rel_sharp(spec, cfg);
    }
    let table = MomentTable::new(&spec.field, cfg);
    let value = try_integrate_momentum(
        |p| crossed_change(spec, p, t_min, &table),
        &spec.packet,
        cfg,
    )?;
    Ok(value.abs())
}

/// Displacement for a sharp axial momentum `p0` (the infinitely wide packet).
pub fn displacement_rel_sharp(spec: &SuperpositionSpec, cfg: &QuadratureConfig) -> Result<f64> {
    cfg.validate()?;
    let t_min = qsl_time(spec)?.t_min;
    let table = MomentTable::new(&spec.field, cfg);
    Ok(crossed_change(spec, spec.packet.p0, t_min, &table)?.abs())
}

pub fn speed_rel(spec: &SuperpositionSpec, cfg: &QuadratureConfig) -> Result<SpeedResult> {
    let t_min = qsl_time(spec)?.t_min;
    Ok(SpeedResult::new(t_min, displacement_rel(spec, cfg)?, *spec))
}

pub fn speed_rel_sharp(spec: &SuperpositionSpec, cfg: &QuadratureConfig) -> Result<SpeedResult> {
    let t_min = qsl_time(spec)?.t_min;
    Ok(SpeedResult::new(
        t_min,
        displacement_rel_sharp(spec, cfg)?,
        *spec,
    ))
}

/// Speed of `kind` at `(n, B, p0 = q beta hbar)` with the default packet.
pub fn speed_at(
    kind: SuperpositionKind,
    n: u32,
    field: &FieldConfig,
    q: f64,
    cfg: &QuadratureConfig,
) -> Result<SpeedResult> {
    if !q.is_finite() {
        return Err(Error::Domain(format!("momentum must be finite, got {q}")));
    }
    let packet = PacketSpec::default_for(q * field.momentum_scale(), field);
    speed_rel(&SuperpositionSpec::new(kind, n, packet, *field)?, cfg)
}
