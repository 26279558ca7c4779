//! Scenario files: one JSON document describing the link, the bands, the
//! weather and the medium.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::absorption::{LineDatabase, MolecularAbsorption};
use crate::atmosphere::{AtmosphereProfile, WeatherCondition, WeatherKind};
use crate::error::{config, Error, Result};
use crate::linkbudget::{
    capacity, AttenuationBreakdown, BandConfig, Capacity, CnSquaredProfile, LinkGeometry, PlasmaModel,
    Populations, Propagation,
};

/// Major version of the scenario format this build reads.
pub const SCENARIO_VERSION: &str = "1.0";

/// The shipped default scenario.
pub const DEFAULT_SCENARIO_JSON: &str = include_str!("../scenarios/default.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSettings {
    #[serde(default)]
    pub format: OutputFormat,
    #[serde(default)]
    pub path: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbsorptionSettings {
    #[serde(default)]
    pub include_oxygen: bool,
    /// Alternative line catalog, relative to the scenario file.
    #[serde(default)]
    pub catalog: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub version: String,
    /// Free-form annotations, e.g. which numbers are calibrated.
    #[serde(default)]
    pub notes: BTreeMap<String, String>,
    pub geometry: LinkGeometry,
    pub bands: Vec<BandConfig>,
    pub weather: WeatherCondition,
    /// Conditions visited by weather sweeps; defaults to `weather` alone.
    #[serde(default)]
    pub weather_sweep: Vec<WeatherCondition>,
    #[serde(default)]
    pub atmosphere: AtmosphereProfile,
    pub populations: Populations,
    #[serde(default)]
    pub turbulence: CnSquaredProfile,
    #[serde(default)]
    pub plasma: PlasmaModel,
    #[serde(default)]
    pub absorption: AbsorptionSettings,
    #[serde(default)]
    pub output: Option<OutputSettings>,
    #[serde(skip)]
    base_dir: Option<PathBuf>,
}

impl Scenario {
    /// Parses and validates a scenario. Errors name the offending field.
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let scenario: Scenario = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            config(format!("scenario field `{path}`: {}", e.into_inner()))
        })?;
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| config(format!("cannot read scenario {}: {e}", path.display())))?;
        let mut s = Self::from_json(&text)?;
        s.base_dir = path.parent().map(Path::to_path_buf);
        Ok(s)
    }

    pub fn shipped() -> Self {
        Self::from_json(DEFAULT_SCENARIO_JSON).expect("shipped scenario is valid")
    }

    pub fn validate(&self) -> Result<()> {
        let major = self.version.split('.').next().unwrap_or("");
        if major != SCENARIO_VERSION.split('.').next().unwrap_or("") {
            return Err(config(format!(
                "scenario field `version`: unsupported version {:?} (this build reads {SCENARIO_VERSION})",
                self.version
            )));
        }
        self.geometry.validate()?;
        if self.bands.is_empty() {
            return Err(config("scenario field `bands`: at least one band is required"));
        }
        for (i, b) in self.bands.iter().enumerate() {
            b.validate()
                .map_err(|e| config(format!("scenario field `bands[{i}]`: {}", inner(&e))))?;
        }
        self.atmosphere.validate()?;
        self.turbulence.validate()?;
        self.plasma.validate()?;
        for w in self.weathers() {
            w.validate(&self.atmosphere)?;
            self.populations.active(&w)?;
        }
        Ok(())
    }

    /// Weather conditions visited by a sweep.
    pub fn weathers(&self) -> Vec<WeatherCondition> {
        if self.weather_sweep.is_empty() {
            vec![self.weather]
        } else {
            self.weather_sweep.clone()
        }
    }

    /// First configured condition of `kind`, looking at `weather` and then
    /// the sweep.
    pub fn weather_of(&self, kind: WeatherKind) -> Option<WeatherCondition> {
        std::iter::once(self.weather)
            .chain(self.weather_sweep.iter().copied())
            .find(|w| w.kind() == kind)
    }

    pub fn band(&self, label: crate::linkbudget::BandLabel) -> Option<&BandConfig> {
        self.bands.iter().find(|b| b.label == label)
    }

    pub fn propagation(&self) -> Result<Propagation> {
        let database = match &self.absorption.catalog {
            None => LineDatabase::shipped(),
            Some(p) => {
                let full = match &self.base_dir {
                    Some(dir) if p.is_relative() => dir.join(p),
                    _ => p.clone(),
                };
                let text = std::fs::read_to_string(&full)
                    .map_err(|e| config(format!("cannot read line catalog {}: {e}", full.display())))?;
                LineDatabase::from_json(&text)?
            }
        };
        Ok(Propagation {
            profile: self.atmosphere.clone(),
            populations: self.populations.clone(),
            turbulence: self.turbulence,
            plasma: self.plasma,
            absorption: MolecularAbsorption::new(database).with_oxygen(self.absorption.include_oxygen),
            ..Propagation::default()
        })
    }

    /// One breakdown per band under `weather`, in band order.
    pub fn budgets(&self, weather: &WeatherCondition) -> Result<Vec<AttenuationBreakdown>> {
        let prop = self.propagation()?;
        self.bands
            .par_iter()
            .map(|b| prop.link_budget(&self.geometry, b, weather))
            .collect()
    }

    /// Capacity per band under `weather`, in band order.
    pub fn capacities(&self, weather: &WeatherCondition) -> Result<Vec<Capacity>> {
        self.budgets(weather)?
            .iter()
            .zip(&self.bands)
            .map(|(b, band)| capacity(b, band))
            .collect()
    }
}

fn inner(e: &Error) -> String {
    match e {
        Error::Config(m) | Error::Domain(m) => m.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkbudget::BandLabel;

    #[test]
    fn shipped_scenario_loads() {
        let s = Scenario::shipped();
        assert_eq!(s.bands.len(), 3);
        assert!(s.bands.iter().all(|b| b.provenance.as_deref() == Some("CALIBRATED")));
        assert_eq!(s.weather.kind(), WeatherKind::Rain);
        for k in [WeatherKind::Clear, WeatherKind::Rain, WeatherKind::Fog, WeatherKind::Cloud] {
            assert!(s.weather_of(k).is_some(), "{k:?}");
        }
        assert!(s.band(BandLabel::Thz).is_some());
    }

    #[test]
    fn type_errors_name_the_field() {
        let text = DEFAULT_SCENARIO_JSON.replacen("\"bandwidth_hz\": 1000000000.0", "\"bandwidth_hz\": \"wide\"", 1);
        assert_ne!(text, DEFAULT_SCENARIO_JSON);
        let err = Scenario::from_json(&text).unwrap_err().to_string();
        assert!(err.contains("bands[0].bandwidth_hz"), "{err}");
    }

    #[test]
    fn zero_bandwidth_is_rejected() {
        let text = DEFAULT_SCENARIO_JSON.replacen("\"bandwidth_hz\": 1000000000.0", "\"bandwidth_hz\": 0.0", 1);
        let err = Scenario::from_json(&text).unwrap_err().to_string();
        assert!(err.contains("bands[0]") && err.contains("bandwidth_hz"), "{err}");
    }

    #[test]
    fn unknown_fields_and_versions_are_rejected() {
        let text = DEFAULT_SCENARIO_JSON.replacen("\"version\": \"1.0\"", "\"version\": \"2.0\"", 1);
        assert!(Scenario::from_json(&text).unwrap_err().to_string().contains("version"));
        let text = DEFAULT_SCENARIO_JSON.replacen("\"geometry\": {", "\"geometry\": {\"altitude\": 3,", 1);
        let err = Scenario::from_json(&text).unwrap_err().to_string();
        assert!(err.contains("geometry") && err.contains("altitude"), "{err}");
    }

    #[test]
    fn missing_population_for_weather() {
        let mut s = Scenario::shipped();
        s.populations.fog = None;
        assert!(matches!(s.validate(), Err(Error::Config(_))));
    }

    #[test]
    fn empty_band_list() {
        let mut s = Scenario::shipped();
        s.bands.clear();
        assert!(s.validate().unwrap_err().to_string().contains("bands"));
    }
}
