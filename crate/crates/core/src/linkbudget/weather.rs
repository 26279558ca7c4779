//! Hydrometeor and aerosol extinction along the path.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::atmosphere::{WeatherCondition, WeatherKind};
use crate::error::{config, Result};
use crate::scattering::{
    ExtinctionModel, ParticlePopulation, RefractiveIndexModel, SizeDistribution, Species,
    MARSHALL_PALMER_N0,
};

use super::{BandConfig, Factor, LinkGeometry};

/// How a drop-size distribution is built from a weather intensity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum SizeModel {
    /// Rain only: `Lambda = 4.1 R^-0.21` from the rain rate.
    MarshallPalmer {
        #[serde(default = "default_n0")]
        n0_per_m3_mm: f64,
    },
    /// One radius, number density from the liquid-water content.
    Monodisperse { radius_m: f64 },
    /// Modified gamma in radius, total density from the liquid-water content.
    ModifiedGamma { shape: f64, scale_m: f64 },
}

fn default_n0() -> f64 {
    MARSHALL_PALMER_N0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HydrometeorModel {
    pub size: SizeModel,
    #[serde(default)]
    pub refractive_index: RefractiveIndexModel,
}

impl HydrometeorModel {
    /// Population for `species` at rain rate (mm/h) or liquid-water content
    /// (g/m^3) `intensity`.
    pub fn population(&self, species: Species, intensity: f64) -> Result<ParticlePopulation> {
        let distribution = match (species, self.size) {
            (Species::Rain, SizeModel::MarshallPalmer { n0_per_m3_mm }) => {
                match SizeDistribution::marshall_palmer(intensity) {
                    SizeDistribution::MarshallPalmer { lambda_per_mm, .. } => {
                        SizeDistribution::MarshallPalmer {
                            n0_per_m3_mm,
                            lambda_per_mm,
                        }
                    }
                    other => other,
                }
            }
            (Species::Rain, _) => {
                return Err(config(
                    "populations.rain: rain is parameterized by rate and needs the marshall_palmer family",
                ))
            }
            (_, SizeModel::MarshallPalmer { .. }) => {
                return Err(config(format!(
                    "populations.{}: marshall_palmer applies to rain only",
                    species.name()
                )))
            }
            (_, SizeModel::Monodisperse { radius_m }) => {
                SizeDistribution::monodisperse_from_lwc(radius_m, intensity)
            }
            (_, SizeModel::ModifiedGamma { shape, scale_m }) => {
                SizeDistribution::gamma_from_lwc(shape, scale_m, intensity)
            }
        };
        Ok(ParticlePopulation {
            species,
            distribution,
            refractive_index: self.refractive_index,
        })
    }
}

/// Background aerosol filling a fixed slab regardless of the weather.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AerosolLayer {
    pub distribution: SizeDistribution,
    pub refractive_index: RefractiveIndexModel,
    #[serde(default)]
    pub base_km: f64,
    pub top_km: f64,
}

impl AerosolLayer {
    pub fn population(&self) -> ParticlePopulation {
        ParticlePopulation {
            species: Species::Aerosol,
            distribution: self.distribution,
            refractive_index: self.refractive_index,
        }
    }

    /// Continental-haze style default: 0.5 µm mineral particles in the
    /// lowest 2 km.
    pub fn haze() -> Self {
        Self {
            distribution: SizeDistribution::Monodisperse {
                radius_m: 0.5e-6,
                number_density_m3: 2.35e7,
            },
            refractive_index: RefractiveIndexModel::Constant { re: 1.5, im: 1e-3 },
            base_km: 0.0,
            top_km: 2.0,
        }
    }
}

/// Particle populations keyed by the weather that activates them.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Populations {
    #[serde(default)]
    pub rain: Option<HydrometeorModel>,
    #[serde(default)]
    pub fog: Option<HydrometeorModel>,
    #[serde(default)]
    pub cloud: Option<HydrometeorModel>,
    #[serde(default)]
    pub aerosol: Option<AerosolLayer>,
}

impl Populations {
    /// Marshall–Palmer rain, 20 µm fog, 10 µm cloud droplets, haze.
    pub fn standard() -> Self {
        let water = RefractiveIndexModel::default();
        Self {
            rain: Some(HydrometeorModel {
                size: SizeModel::MarshallPalmer {
                    n0_per_m3_mm: MARSHALL_PALMER_N0,
                },
                refractive_index: water,
            }),
            fog: Some(HydrometeorModel {
                size: SizeModel::Monodisperse { radius_m: 20e-6 },
                refractive_index: water,
            }),
            cloud: Some(HydrometeorModel {
                size: SizeModel::Monodisperse { radius_m: 10e-6 },
                refractive_index: water,
            }),
            aerosol: Some(AerosolLayer::haze()),
        }
    }

    fn model(&self, kind: WeatherKind) -> Option<&HydrometeorModel> {
        match kind {
            WeatherKind::Clear => None,
            WeatherKind::Rain => self.rain.as_ref(),
            WeatherKind::Fog => self.fog.as_ref(),
            WeatherKind::Cloud => self.cloud.as_ref(),
        }
    }

    /// Population active under `weather`, `None` in clear sky.
    pub fn active(&self, weather: &WeatherCondition) -> Result<Option<ParticlePopulation>> {
        let kind = weather.kind();
        let species = match kind {
            WeatherKind::Clear => return Ok(None),
            WeatherKind::Rain => Species::Rain,
            WeatherKind::Fog => Species::Fog,
            WeatherKind::Cloud => Species::Cloud,
        };
        let model = self.model(kind).ok_or_else(|| {
            config(format!(
                "weather is {} but populations.{} is not defined",
                kind.name(),
                kind.name()
            ))
        })?;
        model.population(species, weather.intensity()).map(Some)
    }
}

pub(crate) fn weather_factor(kind: WeatherKind) -> Option<Factor> {
    match kind {
        WeatherKind::Clear => None,
        WeatherKind::Rain => Some(Factor::Rain),
        WeatherKind::Fog => Some(Factor::Fog),
        WeatherKind::Cloud => Some(Factor::Cloud),
    }
}

/// Length (km) of vertical overlap between `[a, b]` and `[c, d]`.
pub(crate) fn overlap(a: f64, b: f64, c: f64, d: f64) -> f64 {
    (b.min(d) - a.max(c)).max(0.0)
}

/// Cloud, fog and rain losses (dB) for `band` along `geometry`. Keys are
/// always present; the inactive ones are zero.
pub fn weather_loss(
    weather: &WeatherCondition,
    band: &BandConfig,
    geometry: &LinkGeometry,
    populations: &Populations,
) -> Result<BTreeMap<Factor, f64>> {
    geometry.validate()?;
    let mut out: BTreeMap<Factor, f64> = [Factor::Cloud, Factor::Fog, Factor::Rain]
        .into_iter()
        .map(|f| (f, 0.0))
        .collect();
    if let (Some(pop), Some((lo, hi))) = (populations.active(weather)?, weather.vertical_extent()) {
        let gamma = ExtinctionModel::default().specific_attenuation(&pop, band.carrier_frequency_hz)?;
        let span = overlap(lo, hi, geometry.ground_altitude_km, geometry.platform_altitude_km);
        let factor = weather_factor(weather.kind()).expect("non-clear weather has a factor");
        out.insert(factor, gamma * span * geometry.secant());
    }
    Ok(out)
}
