//! Single-particle extinction (Mie and Rayleigh) and its integration over
//! drop-size distributions into specific attenuation.

mod distribution;
pub mod mie;
pub mod refractive;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constants::{wavelength, DB_PER_NEPER, KM};
use crate::error::{domain, ensure_positive, Result};
use crate::quadrature::adaptive_simpson;

pub use distribution::{SizeDistribution, MARSHALL_PALMER_N0};
pub use mie::{mie_efficiencies, MieSolver};
pub use refractive::{water_refractive_index, RefractiveIndexModel};

/// Size parameter below which the Rayleigh approximation is used.
pub const RAYLEIGH_LIMIT: f64 = 0.1;

/// Dimensionless extinction, scattering and absorption efficiencies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Efficiencies {
    pub q_ext: f64,
    pub q_sca: f64,
    pub q_abs: f64,
}

impl Efficiencies {
    pub(crate) fn from_ext_sca(q_ext: f64, q_sca: f64) -> Self {
        // Round-off can push a lossless sphere's q_abs a hair below zero.
        let q_abs = (q_ext - q_sca).max(0.0);
        Self {
            q_ext: q_sca + q_abs,
            q_sca,
            q_abs,
        }
    }

    /// Scales efficiencies by the geometric cross-section of a sphere.
    pub fn with_radius(self, radius_m: f64) -> MieResult {
        let area = PI * radius_m * radius_m;
        MieResult {
            q_ext: self.q_ext,
            q_sca: self.q_sca,
            q_abs: self.q_abs,
            sigma_ext: self.q_ext * area,
            sigma_sca: self.q_sca * area,
            sigma_abs: self.q_abs * area,
        }
    }
}

/// Efficiencies together with absolute cross-sections in m^2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MieResult {
    pub q_ext: f64,
    pub q_sca: f64,
    pub q_abs: f64,
    pub sigma_ext: f64,
    pub sigma_sca: f64,
    pub sigma_abs: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Rayleigh,
    Mie,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::Rayleigh => "rayleigh",
            Regime::Mie => "mie",
        }
    }
}

/// `2 pi r / lambda`.
pub fn size_parameter(radius_m: f64, wavelength_m: f64) -> Result<f64> {
    ensure_positive("radius", radius_m)?;
    ensure_positive("wavelength", wavelength_m)?;
    Ok(2.0 * PI * radius_m / wavelength_m)
}

/// Rayleigh below 0.1, Mie at and above it.
pub fn regime(alpha: f64) -> Regime {
    if alpha < RAYLEIGH_LIMIT {
        Regime::Rayleigh
    } else {
        Regime::Mie
    }
}

/// Small-particle limit: `Q_sca = 8/3 a^4 |K|^2`, `Q_abs = 4 a Im K`,
/// `K = (m^2 - 1)/(m^2 + 2)`.
pub fn rayleigh_efficiencies(alpha: f64, m: Complex64) -> Result<Efficiencies> {
    ensure_positive("size parameter", alpha)?;
    let m2 = m * m;
    let denom = m2 + 2.0;
    if denom.norm() < 1e-12 {
        return Err(domain(format!("m^2 = -2 is a Rayleigh resonance (m = {m})")));
    }
    let k = (m2 - 1.0) / denom;
    let q_sca = 8.0 / 3.0 * alpha.powi(4) * k.norm_sqr();
    let q_abs = 4.0 * alpha * k.im;
    Ok(Efficiencies {
        q_ext: q_sca + q_abs,
        q_sca,
        q_abs,
    })
}

/// Hydrometeor or aerosol species a population describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Species {
    Rain,
    Fog,
    Cloud,
    Aerosol,
}

impl Species {
    pub fn name(self) -> &'static str {
        match self {
            Species::Rain => "rain",
            Species::Fog => "fog",
            Species::Cloud => "cloud",
            Species::Aerosol => "aerosol",
        }
    }
}

impl std::str::FromStr for Species {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "rain" => Ok(Species::Rain),
            "fog" => Ok(Species::Fog),
            "cloud" => Ok(Species::Cloud),
            "aerosol" => Ok(Species::Aerosol),
            other => Err(format!("unknown species '{other}' (rain|fog|cloud|aerosol)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParticlePopulation {
    pub species: Species,
    pub distribution: SizeDistribution,
    #[serde(default)]
    pub refractive_index: RefractiveIndexModel,
}

/// How single-particle extinction is evaluated inside distribution integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtinctionModel {
    pub mie: MieSolver,
    /// Above this size parameter the extinction-paradox limit `Q_ext = 2`
    /// replaces the series.
    pub geometric_limit_alpha: f64,
    /// Relative tolerance of the adaptive radius quadrature.
    pub rel_tol: f64,
    pub max_depth: u32,
}

impl Default for ExtinctionModel {
    fn default() -> Self {
        Self {
            mie: MieSolver::default(),
            geometric_limit_alpha: 2_000.0,
            rel_tol: 1e-6,
            max_depth: 40,
        }
    }
}

impl ExtinctionModel {
    /// Efficiencies dispatched on [`regime`].
    pub fn efficiencies(&self, alpha: f64, m: Complex64) -> Result<Efficiencies> {
        match regime(alpha) {
            Regime::Rayleigh => rayleigh_efficiencies(alpha, m),
            Regime::Mie if alpha > self.geometric_limit_alpha => {
                // Diffraction removes one geometric cross-section; the other is
                // intercepted, and absorbed unless the sphere is lossless.
                let q_sca = if m.im == 0.0 { 2.0 } else { 1.0 };
                Ok(Efficiencies::from_ext_sca(2.0, q_sca))
            }
            Regime::Mie => self.mie.efficiencies(alpha, m),
        }
    }

    /// Extinction cross-section in m^2 for one particle.
    pub fn sigma_ext(&self, radius_m: f64, wavelength_m: f64, m: Complex64) -> Result<f64> {
        let alpha = size_parameter(radius_m, wavelength_m)?;
        Ok(self.efficiencies(alpha, m)?.q_ext * PI * radius_m * radius_m)
    }

    /// Specific attenuation in dB/km of `pop` at `frequency_hz`.
    pub fn specific_attenuation(&self, pop: &ParticlePopulation, frequency_hz: f64) -> Result<f64> {
        ensure_positive("frequency", frequency_hz)?;
        pop.distribution.validate()?;
        pop.refractive_index.validate()?;
        let lambda = wavelength(frequency_hz);
        let m = pop.refractive_index.index(frequency_hz)?;
        if pop.distribution.total_number_density() == 0.0 {
            return Ok(0.0);
        }
        let per_metre = match pop.distribution {
            SizeDistribution::Monodisperse {
                radius_m,
                number_density_m3,
            } => number_density_m3 * self.sigma_ext(radius_m, lambda, m)?,
            ref dist => {
                let (lo, hi) = dist.integration_range();
                // Evaluate once up front so errors surface instead of NaNs.
                self.sigma_ext(lo, lambda, m)?;
                self.sigma_ext(hi, lambda, m)?;
                let integrand = |r: f64| {
                    dist.density(r) * self.sigma_ext(r, lambda, m).unwrap_or(f64::NAN)
                };
                let v = adaptive_simpson(integrand, lo, hi, self.rel_tol, self.max_depth);
                if !v.is_finite() {
                    return Err(crate::error::config(format!(
                        "size-distribution integral for {} did not converge",
                        pop.species.name()
                    )));
                }
                v
            }
        };
        Ok(DB_PER_NEPER * KM * per_metre)
    }
}

/// Specific attenuation (dB/km) with the default extinction model.
pub fn specific_attenuation(pop: &ParticlePopulation, frequency_hz: f64) -> Result<f64> {
    ExtinctionModel::default().specific_attenuation(pop, frequency_hz)
}
