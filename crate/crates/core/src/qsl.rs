//! Minimum orthogonalization times of equal two-level superpositions.

use std::fmt;
use std::str::FromStr;

use crate::dirac::{excitation_sq, rel_energy};
use crate::error::{Error, Result};
use crate::landau::{nonrel_energy, EnergySign, FieldConfig, LandauState, PacketSpec, Spin};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SuperpositionKind {
    Nonrelativistic,
    ParticleParticle,
    /// Negative-energy state `n` with positive-energy state `n + 2`.
    AntiparticleParticle,
}

impl SuperpositionKind {
    pub fn label(self) -> &'static str {
        match self {
            Self::Nonrelativistic => "nonrelativistic",
            Self::ParticleParticle => "particle_particle",
            Self::AntiparticleParticle => "antiparticle_particle",
        }
    }

    pub fn is_relativistic(self) -> bool {
        !matches!(self, Self::Nonrelativistic)
    }
}

impl fmt::Display for SuperpositionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for SuperpositionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nonrelativistic" | "nonrel" => Ok(Self::Nonrelativistic),
            "particle_particle" | "pp" => Ok(Self::ParticleParticle),
            "antiparticle_particle" | "ap" => Ok(Self::AntiparticleParticle),
            other => Err(Error::InvalidConfig(format!(
                "unknown superposition kind {other:?}"
            ))),
        }
    }
}

/// Equal-weight superposition of the `(n, 0, up)` and `(n + 2, 0, up)` states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuperpositionSpec {
    pub kind: SuperpositionKind,
    n: u32,
    pub packet: PacketSpec,
    pub field: FieldConfig,
}

impl SuperpositionSpec {
    pub fn new(
        kind: SuperpositionKind,
        n: u32,
        packet: PacketSpec,
        field: FieldConfig,
    ) -> Result<Self> {
        if n % 2 != 0 {
            return Err(Error::InvalidState {
                n,
                m_l: 0,
                reason: "superpositions use even n",
            });
        }
        Ok(Self {
            kind,
            n,
            packet,
            field,
        })
    }

    /// Superposition with the default packet width centred on `p0`.
    pub fn with_default_packet(
        kind: SuperpositionKind,
        n: u32,
        p0: f64,
        field: FieldConfig,
    ) -> Result<Self> {
        Self::new(kind, n, PacketSpec::default_for(p0, &field), field)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Lower and upper states at axial momentum `p`.
    pub fn states(&self, p: f64) -> (LandauState, LandauState) {
        let lower =
            LandauState::new(self.n, 0, Spin::Up, p).expect("even n is a valid m_l = 0 state");
        let upper =
            LandauState::new(self.n + 2, 0, Spin::Up, p).expect("even n is a valid m_l = 0 state");
        match self.kind {
            SuperpositionKind::AntiparticleParticle => {
                (lower.with_sign(EnergySign::Negative), upper)
            }
            _ => (lower, upper),
        }
    }

    pub fn energies(&self, p: f64) -> (f64, f64) {
        let (a, b) = self.states(p);
        match self.kind {
            SuperpositionKind::Nonrelativistic => (
                nonrel_energy(&a, &self.field),
                nonrel_energy(&b, &self.field),
            ),
            _ => (rel_energy(&a, &self.field), rel_energy(&b, &self.field)),
        }
    }

    /// `|E2 - E1|` at momentum `p`, free of the cancellation in the direct
    /// difference.
    pub fn energy_gap(&self, p: f64) -> f64 {
        let (a, b) = self.states(p);
        let field = &self.field;
        match self.kind {
            SuperpositionKind::Nonrelativistic => {
                field.constants().hbar * field.omega() * (b.level_index() - a.level_index()) as f64
            }
            SuperpositionKind::ParticleParticle => {
                let (e1, e2) = (rel_energy(&a, field), rel_energy(&b, field));
                (excitation_sq(&b, field) - excitation_sq(&a, field)) / (e1 + e2)
            }
            SuperpositionKind::AntiparticleParticle => {
                rel_energy(&b, field) - rel_energy(&a, field)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QslResult {
    pub delta_h: f64,
    pub t_min: f64,
    pub energies: (f64, f64),
}

fn result_for_gap(gap: f64, energies: (f64, f64), hbar: f64) -> Result<QslResult> {
    if !(gap.abs() > 0.0) {
        return Err(Error::NoOrthogonalEvolution { energy: energies.0 });
    }
    let gap = gap.abs();
    Ok(QslResult {
        delta_h: gap / 2.0,
        t_min: std::f64::consts::PI * hbar / gap,
        energies,
    })
}

/// `T_min = pi hbar / |E2 - E1|` with both energies taken at `p0`.
pub fn qsl_time(spec: &SuperpositionSpec) -> Result<QslResult> {
    let p0 = spec.packet.p0;
    result_for_gap(
        spec.energy_gap(p0),
        spec.energies(p0),
        spec.field.constants().hbar,
    )
}

/// The same bound for two arbitrary energies.
pub fn qsl_time_for_energies(e1: f64, e2: f64, hbar: f64) -> Result<QslResult> {
    result_for_gap(e2 - e1, (e1, e2), hbar)
}

/// Strong-field particle-particle time `pi / ((sqrt(n + 4) - sqrt(n + 2)) sqrt(2) c beta)`.
pub fn qsl_time_strong_field(n: u32, field: &FieldConfig) -> f64 {
    let (a, b) = (f64::from(n + 4), f64::from(n + 2));
    // sqrt(a) - sqrt(b) = 2 / (sqrt(a) + sqrt(b))
    let diff = 2.0 / (a.sqrt() + b.sqrt());
    std::f64::consts::PI / (diff * std::f64::consts::SQRT_2 * field.constants().c * field.beta())
}

/// Strong-field antiparticle-particle time at `p0 = q beta hbar`,
/// `pi / (c beta (sqrt(q^2 + 2n + 8) + sqrt(q^2 + 2n + 4)))`.
pub fn qsl_time_strong_field_antiparticle(n: u32, q: f64, field: &FieldConfig) -> f64 {
    let q2 = q * q;
    let sum = (q2 + f64::from(2 * n + 8)).sqrt() + (q2 + f64::from(2 * n + 4)).sqrt();
    std::f64::consts::PI / (field.constants().c * field.beta() * sum)
}

/// Ratio of the relativistic to the non-relativistic `T_min` at `n = 0`, `p0 = 0`.
pub fn weak_field_correspondence(field: &FieldConfig) -> Result<f64> {
    let packet = PacketSpec::default_for(0.0, field);
    let rel = SuperpositionSpec::new(SuperpositionKind::ParticleParticle, 0, packet, *field)?;
    let nonrel = SuperpositionSpec::new(SuperpositionKind::Nonrelativistic, 0, packet, *field)?;
    Ok(qsl_time(&rel)?.t_min / qsl_time(&nonrel)?.t_min)
}
