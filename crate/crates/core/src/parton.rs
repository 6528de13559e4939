//! Decoherence metrics for a hadron boosted to beam rapidity η.
//!
//! The internal oscillation period dilates like e^{η} while the time an
//! external probe moving along the opposite light cone spends crossing the
//! hadron contracts like e^{−η}; their ratio e^{−2η} measures how little
//! the probe can resolve the quark-quark interaction. These are combined
//! with the entropy of the unobserved time-separation variable and the
//! longitudinal widths of the squeezed wave functions.

use serde::Serialize;

use crate::entanglement::{effective_temperature, entropy};
use crate::error::{Error, Result};
use crate::lorentz::{marginal_width, BoostedOscillatorState, MarginalAxis};
use crate::oscillator::Squeeze;

/// Proton mass in GeV.
pub const PROTON_MASS_GEV: f64 = 0.938;

/// Order-of-magnitude interaction ratio quoted in the literature for
/// 900 GeV protons.
pub const REFERENCE_INTERACTION_RATIO: f64 = 1e-6;

/// Whether a beam figure is the total energy or the momentum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EnergyConvention {
    #[default]
    Total,
    Momentum,
}

/// η = ln((E + p)/m) with p = √(E² − m²).
pub fn rapidity_from_beam(beam_energy: f64, mass: f64) -> Result<f64> {
    check_mass(mass)?;
    if !beam_energy.is_finite() {
        return Err(Error::invalid(
            "beam_energy",
            format!("must be finite, got {beam_energy}"),
        ));
    }
    if beam_energy < mass {
        return Err(Error::domain(format!(
            "beam energy {beam_energy} GeV is below the rest mass {mass} GeV"
        )));
    }
    let p = ((beam_energy - mass) * (beam_energy + mass)).sqrt();
    Ok(((beam_energy + p) / mass).ln())
}

fn check_mass(mass: f64) -> Result<()> {
    if mass.is_finite() && mass > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(
            "mass",
            format!("must be positive, got {mass}"),
        ))
    }
}

/// Beam kinematics of the boosted hadron.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartonKinematics {
    beam_energy: f64,
    mass: f64,
    rapidity: f64,
}

impl PartonKinematics {
    /// Total beam energy `beam_energy` (GeV) for a hadron of mass `mass` (GeV).
    pub fn new(beam_energy: f64, mass: f64) -> Result<Self> {
        let rapidity = rapidity_from_beam(beam_energy, mass)?;
        Ok(Self {
            beam_energy,
            mass,
            rapidity,
        })
    }

    /// Reads `beam` according to `convention`.
    pub fn with_convention(beam: f64, mass: f64, convention: EnergyConvention) -> Result<Self> {
        match convention {
            EnergyConvention::Total => Self::new(beam, mass),
            EnergyConvention::Momentum => {
                check_mass(mass)?;
                if !(beam.is_finite() && beam >= 0.0) {
                    return Err(Error::domain(format!(
                        "beam momentum must be non-negative, got {beam}"
                    )));
                }
                Self::new(beam.hypot(mass), mass)
            }
        }
    }

    pub fn beam_energy(&self) -> f64 {
        self.beam_energy
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn momentum(&self) -> f64 {
        ((self.beam_energy - self.mass) * (self.beam_energy + self.mass)).sqrt()
    }

    pub fn rapidity(&self) -> f64 {
        self.rapidity
    }

    /// β = p/E.
    pub fn velocity(&self) -> f64 {
        self.momentum() / self.beam_energy
    }
}

/// Aggregated decoherence metrics at one beam energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PartonReport {
    pub rapidity: f64,
    /// e^{η}
    pub period_dilation: f64,
    /// e^{−2η}
    pub interaction_ratio: f64,
    /// S(η)
    pub entropy: f64,
    /// Var z under |ψ_η|²
    pub var_z: f64,
    /// Var q_z under |φ_η|²
    pub var_qz: f64,
    /// S(2η): entropy left after tracing t out of ψ_η(z, t) itself.
    pub time_trace_entropy: f64,
    /// Effective temperature of S(η) at the supplied ω.
    pub temperature: f64,
}

pub fn parton_report(kin: &PartonKinematics, omega: f64) -> Result<PartonReport> {
    let eta = kin.rapidity;
    let thermal = effective_temperature(eta, omega)?;
    let state = BoostedOscillatorState::new(Squeeze::new(eta)?);
    Ok(PartonReport {
        rapidity: eta,
        period_dilation: eta.exp(),
        interaction_ratio: (-2.0 * eta).exp(),
        entropy: entropy(eta),
        var_z: marginal_width(&state, MarginalAxis::SpaceZ)?,
        var_qz: marginal_width(&state, MarginalAxis::MomentumQz)?,
        time_trace_entropy: entropy(2.0 * eta),
        temperature: thermal.temperature,
    })
}
