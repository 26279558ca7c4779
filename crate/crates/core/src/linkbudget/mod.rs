//! Ground-to-platform link budgets: free-space loss plus every
//! medium-induced loss, attributed to factors and to atmospheric layers,
//! followed by SNR and Shannon capacity.

pub mod plasma;
pub mod turbulence;
pub mod weather;

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::absorption::MolecularAbsorption;
use crate::atmosphere::{AtmosphereProfile, WeatherCondition, WeatherKind};
use crate::constants::{BOLTZMANN, KM, SPEED_OF_LIGHT};
use crate::error::{config, ensure_positive, Error, Result};
use crate::quadrature::AltitudeGrid;
use crate::scattering::ExtinctionModel;

pub use plasma::{peak_coefficient_db_per_km, plasma_frequency, plasma_loss, PlasmaModel};
pub use turbulence::{turbulence_loss, CnSquaredProfile};
pub use weather::{weather_loss, AerosolLayer, HydrometeorModel, Populations, SizeModel};

/// Losses below this many dB are flagged as negligible.
pub const SUB_THRESHOLD_DB: f64 = 0.1;

/// Free-space path loss in dB for frequency `f` (Hz) over `d` metres.
pub fn fspl(f: f64, d: f64) -> Result<f64> {
    ensure_positive("frequency", f)?;
    ensure_positive("distance", d)?;
    Ok(20.0 * (4.0 * PI * d * f / SPEED_OF_LIGHT).log10())
}

/// Straight path from a ground terminal up to a platform, flat-earth
/// geometry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkGeometry {
    pub ground_altitude_km: f64,
    pub platform_altitude_km: f64,
    #[serde(default = "zenith_deg")]
    pub elevation_deg: f64,
}

fn zenith_deg() -> f64 {
    90.0
}

impl LinkGeometry {
    pub fn new(ground_altitude_km: f64, platform_altitude_km: f64, elevation_deg: f64) -> Result<Self> {
        let g = Self {
            ground_altitude_km,
            platform_altitude_km,
            elevation_deg,
        };
        g.validate()?;
        Ok(g)
    }

    /// Vertical path.
    ///
    /// # Panics
    /// If the altitudes are not ordered and non-negative.
    pub fn zenith(ground_altitude_km: f64, platform_altitude_km: f64) -> Self {
        Self::new(ground_altitude_km, platform_altitude_km, 90.0).expect("invalid zenith geometry")
    }

    pub fn validate(&self) -> Result<()> {
        let (g, p, el) = (self.ground_altitude_km, self.platform_altitude_km, self.elevation_deg);
        if !(g.is_finite() && g >= 0.0 && p.is_finite() && p > g) {
            return Err(config(format!(
                "geometry: need platform_altitude_km > ground_altitude_km >= 0, got {p} and {g}"
            )));
        }
        if !(el > 0.0 && el <= 90.0) {
            return Err(config(format!("geometry.elevation_deg must lie in (0, 90], got {el}")));
        }
        Ok(())
    }

    /// Slant-to-vertical length ratio.
    pub fn secant(&self) -> f64 {
        if self.elevation_deg == 90.0 {
            1.0
        } else {
            1.0 / self.elevation_deg.to_radians().sin()
        }
    }

    pub fn path_length_km(&self) -> f64 {
        (self.platform_altitude_km - self.ground_altitude_km) * self.secant()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BandLabel {
    #[serde(rename = "mmWave")]
    MmWave,
    #[serde(rename = "THz")]
    Thz,
    #[serde(rename = "FSO")]
    Fso,
}

impl BandLabel {
    pub fn name(self) -> &'static str {
        match self {
            BandLabel::MmWave => "mmWave",
            BandLabel::Thz => "THz",
            BandLabel::Fso => "FSO",
        }
    }
}

/// Radio or optical terminal pair operating on one carrier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BandConfig {
    pub label: BandLabel,
    pub carrier_frequency_hz: f64,
    pub bandwidth_hz: f64,
    pub tx_power_dbm: f64,
    pub tx_gain_dbi: f64,
    pub rx_gain_dbi: f64,
    pub noise_figure_db: f64,
    pub system_temperature_k: f64,
    /// Sea-level molecular absorption (dB/km) for carriers outside the line
    /// catalog; scaled with the water-vapour profile.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_of_catalog_absorption_db_per_km: Option<f64>,
    /// Where the numbers come from, e.g. "CALIBRATED".
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

impl BandConfig {
    /// 20 GHz terminals (calibrated).
    pub fn mmwave() -> Self {
        Self {
            label: BandLabel::MmWave,
            carrier_frequency_hz: 20e9,
            bandwidth_hz: 1e9,
            tx_power_dbm: 30.0,
            tx_gain_dbi: 35.0,
            rx_gain_dbi: 35.0,
            noise_figure_db: 5.0,
            system_temperature_k: 290.0,
            out_of_catalog_absorption_db_per_km: None,
            provenance: Some("CALIBRATED".into()),
        }
    }

    /// 0.3 THz terminals (calibrated).
    pub fn thz() -> Self {
        Self {
            label: BandLabel::Thz,
            carrier_frequency_hz: 0.3e12,
            bandwidth_hz: 10e9,
            tx_power_dbm: 30.0,
            tx_gain_dbi: 75.0,
            rx_gain_dbi: 75.0,
            noise_figure_db: 10.0,
            system_temperature_k: 290.0,
            out_of_catalog_absorption_db_per_km: None,
            provenance: Some("CALIBRATED".into()),
        }
    }

    /// 1550 nm optical terminals (calibrated).
    pub fn fso() -> Self {
        Self {
            label: BandLabel::Fso,
            carrier_frequency_hz: 193.4e12,
            bandwidth_hz: 10e9,
            tx_power_dbm: 20.0,
            tx_gain_dbi: 101.0,
            rx_gain_dbi: 101.0,
            noise_figure_db: 20.0,
            system_temperature_k: 290.0,
            out_of_catalog_absorption_db_per_km: Some(0.1),
            provenance: Some("CALIBRATED".into()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let who = self.label.name();
        for (name, v) in [
            ("carrier_frequency_hz", self.carrier_frequency_hz),
            ("bandwidth_hz", self.bandwidth_hz),
            ("system_temperature_k", self.system_temperature_k),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(config(format!("band {who}: {name} must be finite and > 0, got {v}")));
            }
        }
        for (name, v) in [
            ("tx_power_dbm", self.tx_power_dbm),
            ("tx_gain_dbi", self.tx_gain_dbi),
            ("rx_gain_dbi", self.rx_gain_dbi),
            ("noise_figure_db", self.noise_figure_db),
        ] {
            if !v.is_finite() {
                return Err(config(format!("band {who}: {name} must be finite, got {v}")));
            }
        }
        if self.noise_figure_db < 0.0 {
            return Err(config(format!("band {who}: noise_figure_db must be >= 0")));
        }
        if let Some(k) = self.out_of_catalog_absorption_db_per_km {
            if !(k.is_finite() && k >= 0.0) {
                return Err(config(format!(
                    "band {who}: out_of_catalog_absorption_db_per_km must be >= 0, got {k}"
                )));
            }
        }
        Ok(())
    }
}

/// Loss mechanisms reported in a breakdown.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Factor {
    #[serde(rename = "FSPL")]
    Fspl,
    MolecularAbsorption,
    Cloud,
    Fog,
    Rain,
    Ionosphere,
    Turbulence,
    MieScattering,
}

impl Factor {
    pub const ALL: [Factor; 8] = [
        Factor::Fspl,
        Factor::MolecularAbsorption,
        Factor::Cloud,
        Factor::Fog,
        Factor::Rain,
        Factor::Ionosphere,
        Factor::Turbulence,
        Factor::MieScattering,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Factor::Fspl => "FSPL",
            Factor::MolecularAbsorption => "MolecularAbsorption",
            Factor::Cloud => "Cloud",
            Factor::Fog => "Fog",
            Factor::Rain => "Rain",
            Factor::Ionosphere => "Ionosphere",
            Factor::Turbulence => "Turbulence",
            Factor::MieScattering => "MieScattering",
        }
    }
}

/// Layers that medium-induced loss is attributed to. The gap between the
/// stratopause and the ionosphere is counted as stratosphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum MediumLayer {
    Troposphere,
    Stratosphere,
    Ionosphere,
}

impl MediumLayer {
    pub const ALL: [MediumLayer; 3] = [
        MediumLayer::Troposphere,
        MediumLayer::Stratosphere,
        MediumLayer::Ionosphere,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MediumLayer::Troposphere => "Troposphere",
            MediumLayer::Stratosphere => "Stratosphere",
            MediumLayer::Ionosphere => "Ionosphere",
        }
    }
}

/// Vertical segments of the path, one per medium layer it crosses.
pub fn layer_segments(profile: &AtmosphereProfile, geometry: &LinkGeometry) -> Vec<(MediumLayer, f64, f64)> {
    let b = profile.layer_bounds;
    let (g, p) = (geometry.ground_altitude_km, geometry.platform_altitude_km);
    [
        (MediumLayer::Troposphere, 0.0, b.troposphere_top_km),
        (MediumLayer::Stratosphere, b.troposphere_top_km, b.ionosphere_bottom_km),
        (MediumLayer::Ionosphere, b.ionosphere_bottom_km, b.ionosphere_top_km),
    ]
    .into_iter()
    .filter_map(|(layer, lo, hi)| {
        let (a, z) = (lo.max(g), hi.min(p));
        (z > a).then_some((layer, a, z))
    })
    .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttenuationBreakdown {
    pub band: BandLabel,
    pub carrier_frequency_hz: f64,
    pub weather: WeatherKind,
    pub path_length_km: f64,
    pub per_factor: BTreeMap<Factor, f64>,
    /// Medium-induced loss only; free-space loss belongs to no layer.
    pub per_layer: BTreeMap<MediumLayer, f64>,
    pub total_db: f64,
    /// Factors below [`SUB_THRESHOLD_DB`].
    pub sub_threshold: Vec<Factor>,
}

impl AttenuationBreakdown {
    pub fn factor(&self, f: Factor) -> f64 {
        self.per_factor.get(&f).copied().unwrap_or(0.0)
    }

    pub fn medium_loss_db(&self) -> f64 {
        self.per_layer.values().sum()
    }

    /// Largest factor other than free-space loss.
    pub fn dominant_medium_factor(&self) -> Option<(Factor, f64)> {
        self.per_factor
            .iter()
            .filter(|(f, _)| **f != Factor::Fspl)
            .map(|(f, v)| (*f, *v))
            .max_by(|a, b| a.1.total_cmp(&b.1))
    }
}

/// Everything about the medium a link budget needs besides the link itself.
#[derive(Debug, Clone, PartialEq)]
pub struct Propagation {
    pub profile: AtmosphereProfile,
    pub populations: Populations,
    pub turbulence: CnSquaredProfile,
    pub plasma: PlasmaModel,
    pub absorption: MolecularAbsorption,
    pub extinction: ExtinctionModel,
    pub grid: AltitudeGrid,
}

impl Default for Propagation {
    fn default() -> Self {
        Self {
            profile: AtmosphereProfile::default(),
            populations: Populations::standard(),
            turbulence: CnSquaredProfile::default(),
            plasma: PlasmaModel::default(),
            absorption: MolecularAbsorption::default(),
            extinction: ExtinctionModel::default(),
            grid: AltitudeGrid::default(),
        }
    }
}

impl Propagation {
    fn molecular_segment(&self, band: &BandConfig, geometry: &LinkGeometry, a: f64, b: f64) -> Result<f64> {
        let f = band.carrier_frequency_hz;
        if self.absorption.covers(f) {
            return self.absorption.path_absorption(&self.profile, f, a, b, geometry.elevation_deg);
        }
        let Some(k0) = band.out_of_catalog_absorption_db_per_km else {
            return Err(Error::OutOfRange(format!(
                "band {}: {f:.4e} Hz is outside the line catalog and no out_of_catalog_absorption_db_per_km is set",
                band.label.name()
            )));
        };
        // k0 rho(h) / rho0 integrated in closed form.
        let h = self.profile.water_vapor_scale_height_km;
        let top = b.min(self.absorption.absorber_top_km);
        if top <= a {
            return Ok(0.0);
        }
        Ok(k0 * h * ((-a / h).exp() - (-top / h).exp()) * geometry.secant())
    }

    /// Full breakdown for `band` under `weather`.
    pub fn link_budget(
        &self,
        geometry: &LinkGeometry,
        band: &BandConfig,
        weather: &WeatherCondition,
    ) -> Result<AttenuationBreakdown> {
        geometry.validate()?;
        band.validate()?;
        self.profile.validate()?;
        weather.validate(&self.profile)?;
        self.turbulence.validate()?;
        self.plasma.validate()?;
        let f = band.carrier_frequency_hz;
        let sec = geometry.secant();

        let hydrometeor = match (self.populations.active(weather)?, weather.vertical_extent()) {
            (Some(pop), Some(extent)) => {
                let gamma = self.extinction.specific_attenuation(&pop, f)?;
                let factor = weather::weather_factor(weather.kind()).expect("non-clear weather has a factor");
                Some((factor, gamma, extent))
            }
            _ => None,
        };
        let aerosol = match &self.populations.aerosol {
            Some(layer) => {
                let gamma = self.extinction.specific_attenuation(&layer.population(), f)?;
                Some((gamma, (layer.base_km, layer.top_km)))
            }
            None => None,
        };

        let mut per_factor: BTreeMap<Factor, f64> = Factor::ALL.iter().map(|&k| (k, 0.0)).collect();
        let mut per_layer: BTreeMap<MediumLayer, f64> = MediumLayer::ALL.iter().map(|&k| (k, 0.0)).collect();
        for (layer, a, b) in layer_segments(&self.profile, geometry) {
            let mut pieces = vec![
                (Factor::MolecularAbsorption, self.molecular_segment(band, geometry, a, b)?),
                (
                    Factor::Ionosphere,
                    plasma::segment_loss(f, geometry, &self.profile, &self.plasma, a, b, &self.grid)?,
                ),
                (
                    Factor::Turbulence,
                    turbulence::segment_loss(f, geometry, &self.turbulence, a, b, &self.grid),
                ),
            ];
            if let Some((factor, gamma, (lo, hi))) = hydrometeor {
                pieces.push((factor, gamma * weather::overlap(lo, hi, a, b) * sec));
            }
            if let Some((gamma, (lo, hi))) = aerosol {
                pieces.push((Factor::MieScattering, gamma * weather::overlap(lo, hi, a, b) * sec));
            }
            for (factor, db) in pieces {
                if !(db.is_finite() && db >= 0.0) {
                    return Err(crate::error::domain(format!(
                        "{} loss in the {} evaluated to {db}",
                        factor.name(),
                        layer.name()
                    )));
                }
                *per_factor.get_mut(&factor).expect("all factors present") += db;
                *per_layer.get_mut(&layer).expect("all layers present") += db;
            }
        }
        let path_length_km = geometry.path_length_km();
        per_factor.insert(Factor::Fspl, fspl(f, path_length_km * KM)?);

        let total_db = per_factor.values().sum();
        let sub_threshold = per_factor
            .iter()
            .filter(|(_, v)| **v < SUB_THRESHOLD_DB)
            .map(|(k, _)| *k)
            .collect();
        Ok(AttenuationBreakdown {
            band: band.label,
            carrier_frequency_hz: f,
            weather: weather.kind(),
            path_length_km,
            per_factor,
            per_layer,
            total_db,
            sub_threshold,
        })
    }
}

/// Breakdown with standard populations, HV 5/7 turbulence and the shipped
/// line catalog.
pub fn link_budget(
    geometry: &LinkGeometry,
    band: &BandConfig,
    weather: &WeatherCondition,
    profile: &AtmosphereProfile,
    populations: &Populations,
) -> Result<AttenuationBreakdown> {
    Propagation {
        profile: profile.clone(),
        populations: populations.clone(),
        ..Propagation::default()
    }
    .link_budget(geometry, band, weather)
}

/// Per-layer share (percent) of the medium-induced loss.
pub fn layer_shares(b: &AttenuationBreakdown) -> Result<BTreeMap<MediumLayer, f64>> {
    let medium = b.medium_loss_db();
    if !(medium > 0.0) {
        return Err(Error::UndefinedShare(format!(
            "band {} has no medium-induced loss to share out",
            b.band.name()
        )));
    }
    Ok(b.per_layer.iter().map(|(k, v)| (*k, 100.0 * v / medium)).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Capacity {
    pub band: BandLabel,
    pub weather: WeatherKind,
    pub snr_db: f64,
    pub bits_per_s: f64,
    pub spectral_efficiency_bps_hz: f64,
}

/// Thermal noise power in dBm over `bandwidth_hz` at `temperature_k`.
pub fn noise_power_dbm(temperature_k: f64, bandwidth_hz: f64) -> f64 {
    10.0 * (BOLTZMANN * temperature_k * bandwidth_hz).log10() + 30.0
}

/// SNR and Shannon capacity of `band` after losing `b.total_db`.
pub fn capacity(b: &AttenuationBreakdown, band: &BandConfig) -> Result<Capacity> {
    band.validate()?;
    let snr_db = band.tx_power_dbm + band.tx_gain_dbi + band.rx_gain_dbi
        - b.total_db
        - noise_power_dbm(band.system_temperature_k, band.bandwidth_hz)
        - band.noise_figure_db;
    let efficiency = (10f64.powf(snr_db / 10.0)).ln_1p() / std::f64::consts::LN_2;
    Ok(Capacity {
        band: band.label,
        weather: b.weather,
        snr_db,
        bits_per_s: band.bandwidth_hz * efficiency,
        spectral_efficiency_bps_hz: efficiency,
    })
}
