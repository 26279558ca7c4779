use serde::{Deserialize, Serialize};

use crate::error::{config, Result};

/// The catalog shipped with the crate.
pub const DEFAULT_CATALOG_JSON: &str = include_str!("../../data/line_catalog.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Absorber {
    H2O,
    O2,
}

/// One rotational transition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectralLine {
    pub center_frequency_hz: f64,
    /// Integrated intensity per molecule at the catalog reference temperature.
    pub line_intensity_hz_m2: f64,
    /// Halfwidth per unit dry-air pressure.
    pub air_broadening_hz_per_pa: f64,
    /// Halfwidth per unit absorber partial pressure.
    #[serde(default)]
    pub self_broadening_hz_per_pa: f64,
    /// Air-broadened halfwidth scales as `(T_ref / T)^temperature_exponent`.
    pub temperature_exponent: f64,
    #[serde(default = "one")]
    pub self_temperature_exponent: f64,
    pub lower_state_energy_j: f64,
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineCatalog {
    pub species: Absorber,
    pub reference_temperature_k: f64,
    pub reference_pressure_pa: f64,
    /// Line intensity scales as `(T_ref / T)^x exp(-E''/k (1/T - 1/T_ref))`.
    pub intensity_temperature_exponent: f64,
    pub lines: Vec<SpectralLine>,
}

impl LineCatalog {
    pub fn validate(&self) -> Result<()> {
        let name = format!("{:?}", self.species);
        if self.lines.is_empty() {
            return Err(config(format!("{name} catalog has no lines")));
        }
        if !(self.reference_temperature_k > 0.0 && self.reference_pressure_pa > 0.0) {
            return Err(config(format!("{name} catalog reference state must be positive")));
        }
        for (i, l) in self.lines.iter().enumerate() {
            if !(l.center_frequency_hz > 0.0
                && l.line_intensity_hz_m2 >= 0.0
                && l.air_broadening_hz_per_pa > 0.0
                && l.self_broadening_hz_per_pa >= 0.0)
            {
                return Err(config(format!("{name} line {i} has non-physical parameters")));
            }
        }
        if self
            .lines
            .windows(2)
            .any(|w| w[1].center_frequency_hz < w[0].center_frequency_hz)
        {
            return Err(config(format!("{name} lines must be sorted by center frequency")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogMetadata {
    pub title: String,
    pub version: u32,
    pub provenance: String,
    pub reference_temperature_k: f64,
    /// Frequencies (Hz) at which the line list is considered complete.
    pub coverage_hz: [f64; 2],
    pub line_shape: String,
    #[serde(default)]
    pub units: serde_json::Value,
}

/// A catalog file: provenance header plus one line list per absorber.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LineDatabase {
    pub metadata: CatalogMetadata,
    pub catalogs: Vec<LineCatalog>,
}

impl LineDatabase {
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let db: LineDatabase = serde_path_to_error::deserialize(de)
            .map_err(|e| config(format!("line catalog: {} at {}", e.inner(), e.path())))?;
        db.validate()?;
        Ok(db)
    }

    pub fn shipped() -> Self {
        Self::from_json(DEFAULT_CATALOG_JSON).expect("shipped line catalog is valid")
    }

    pub fn validate(&self) -> Result<()> {
        let [lo, hi] = self.metadata.coverage_hz;
        if !(lo > 0.0 && hi > lo) {
            return Err(config("metadata.coverage_hz must be an increasing positive pair"));
        }
        for c in &self.catalogs {
            c.validate()?;
        }
        Ok(())
    }

    pub fn catalog(&self, species: Absorber) -> Option<&LineCatalog> {
        self.catalogs.iter().find(|c| c.species == species)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_catalog_loads() {
        let db = LineDatabase::shipped();
        let h2o = db.catalog(Absorber::H2O).unwrap();
        let o2 = db.catalog(Absorber::O2).unwrap();
        assert!(h2o.lines.len() >= 30);
        assert!(o2.lines.len() >= 10);
        assert!(h2o.lines.iter().all(|l| l.center_frequency_hz < 1.1e12));
    }

    #[test]
    fn unsorted_catalog_is_rejected() {
        let mut db = LineDatabase::shipped();
        db.catalogs[0].lines.swap(0, 1);
        assert!(db.validate().is_err());
    }

    #[test]
    fn bad_json_names_the_field() {
        let text = DEFAULT_CATALOG_JSON.replacen("\"center_frequency_hz\": 22235080000.0", "\"centre_hz\": 22235080000.0", 1);
        let err = LineDatabase::from_json(&text).unwrap_err().to_string();
        assert!(err.contains("catalogs[0].lines[0]"), "{err}");
    }
}
