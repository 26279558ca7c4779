//! Line-by-line molecular absorption and its integration along slant paths.
//!
//! Each line contributes `n S(T) g(f)` to the power absorption coefficient,
//! with `g` the Van Vleck–Weisskopf shape
//!
//! ```text
//! g(f) = (1/pi) (f/f0)^2 [ D / ((f - f0)^2 + D^2) + D / ((f + f0)^2 + D^2) ]
//! ```
//!
//! and `D` the pressure-broadened halfwidth. No continuum term is included.

mod catalog;

use std::f64::consts::PI;

use crate::atmosphere::AtmosphereProfile;
use crate::constants::{
    AVOGADRO, BOLTZMANN, DB_PER_NEPER, KM, OXYGEN_FRACTION, WATER_MOLAR_MASS,
};
use crate::error::{domain, ensure_non_negative, ensure_positive, Error, Result};
use crate::quadrature::AltitudeGrid;

pub use catalog::{
    Absorber, CatalogMetadata, LineCatalog, LineDatabase, SpectralLine, DEFAULT_CATALOG_JSON,
};

/// Thermodynamic state of an air parcel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AirState {
    pub temperature_k: f64,
    /// Total pressure, Pa.
    pub pressure_pa: f64,
    pub water_vapor_g_m3: f64,
}

impl AirState {
    /// Water-vapour number density, molecules/m^3.
    pub fn water_number_density(&self) -> f64 {
        self.water_vapor_g_m3 / (WATER_MOLAR_MASS * 1e3) * AVOGADRO
    }

    /// Water-vapour partial pressure, Pa.
    pub fn vapor_pressure(&self) -> f64 {
        self.water_number_density() * BOLTZMANN * self.temperature_k
    }

    /// Dry-air partial pressure, Pa.
    pub fn dry_pressure(&self) -> f64 {
        (self.pressure_pa - self.vapor_pressure()).max(0.0)
    }

    fn validate(&self) -> Result<()> {
        ensure_positive("temperature", self.temperature_k)?;
        ensure_positive("pressure", self.pressure_pa)?;
        ensure_non_negative("water vapour density", self.water_vapor_g_m3)
    }
}

fn absorber_number_density(species: Absorber, state: &AirState) -> f64 {
    match species {
        Absorber::H2O => state.water_number_density(),
        Absorber::O2 => OXYGEN_FRACTION * state.dry_pressure() / (BOLTZMANN * state.temperature_k),
    }
}

fn line_contribution(catalog: &LineCatalog, line: &SpectralLine, f: f64, state: &AirState) -> f64 {
    let t = state.temperature_k;
    let ratio = catalog.reference_temperature_k / t;
    let strength = line.line_intensity_hz_m2
        * ratio.powf(catalog.intensity_temperature_exponent)
        * (-line.lower_state_energy_j / BOLTZMANN * (1.0 / t - 1.0 / catalog.reference_temperature_k)).exp();
    let absorber_pressure = match catalog.species {
        Absorber::H2O => state.vapor_pressure(),
        Absorber::O2 => OXYGEN_FRACTION * state.dry_pressure(),
    };
    let halfwidth = line.air_broadening_hz_per_pa
        * state.dry_pressure()
        * ratio.powf(line.temperature_exponent)
        + line.self_broadening_hz_per_pa
            * absorber_pressure
            * ratio.powf(line.self_temperature_exponent);
    let f0 = line.center_frequency_hz;
    let shape = (f / f0).powi(2) / PI
        * (halfwidth / ((f - f0).powi(2) + halfwidth.powi(2))
            + halfwidth / ((f + f0).powi(2) + halfwidth.powi(2)));
    strength * shape
}

/// Absorption coefficient (dB/km) of one absorber's lines at `f` Hz.
///
/// Frequency coverage is not checked here; see [`MolecularAbsorption`].
pub fn catalog_coefficient(catalog: &LineCatalog, f: f64, state: &AirState) -> Result<f64> {
    ensure_positive("frequency", f)?;
    state.validate()?;
    let n = absorber_number_density(catalog.species, state);
    if n == 0.0 {
        return Ok(0.0);
    }
    let sum: f64 = catalog
        .lines
        .iter()
        .map(|line| line_contribution(catalog, line, f, state))
        .sum();
    Ok(DB_PER_NEPER * KM * n * sum)
}

/// Molecular absorption model: the shipped (or a loaded) line database plus
/// switches for which absorbers are active.
#[derive(Debug, Clone, PartialEq)]
pub struct MolecularAbsorption {
    pub database: LineDatabase,
    pub include_oxygen: bool,
    /// Tolerance beyond the catalog coverage before frequencies are rejected.
    pub coverage_margin_hz: f64,
    /// Altitude (km) above which the gas is treated as absent.
    pub absorber_top_km: f64,
    pub grid: AltitudeGrid,
}

impl Default for MolecularAbsorption {
    fn default() -> Self {
        Self::new(LineDatabase::shipped())
    }
}

impl MolecularAbsorption {
    pub fn new(database: LineDatabase) -> Self {
        Self {
            database,
            include_oxygen: false,
            coverage_margin_hz: 0.0,
            absorber_top_km: 100.0,
            grid: AltitudeGrid::default(),
        }
    }

    pub fn with_oxygen(mut self, include: bool) -> Self {
        self.include_oxygen = include;
        self
    }

    pub fn covers(&self, f: f64) -> bool {
        let [lo, hi] = self.database.metadata.coverage_hz;
        f >= lo - self.coverage_margin_hz && f <= hi + self.coverage_margin_hz
    }

    fn check_coverage(&self, f: f64) -> Result<()> {
        if self.covers(f) {
            Ok(())
        } else {
            let [lo, hi] = self.database.metadata.coverage_hz;
            Err(Error::OutOfRange(format!(
                "{f:.4e} Hz is outside the line catalog coverage [{lo:.3e}, {hi:.3e}] Hz"
            )))
        }
    }

    /// Contribution of a single absorber at `f`, dB/km.
    pub fn species_coefficient(&self, species: Absorber, f: f64, state: &AirState) -> Result<f64> {
        self.check_coverage(f)?;
        match self.database.catalog(species) {
            Some(c) => catalog_coefficient(c, f, state),
            None => Err(crate::error::config(format!(
                "line database has no {species:?} catalog"
            ))),
        }
    }

    /// Total absorption coefficient (dB/km) at `f` for the given air state.
    pub fn absorption_coefficient(&self, f: f64, state: &AirState) -> Result<f64> {
        let mut k = self.species_coefficient(Absorber::H2O, f, state)?;
        if self.include_oxygen {
            k += self.species_coefficient(Absorber::O2, f, state)?;
        }
        Ok(k)
    }

    /// Air state of `profile` at altitude `h` km.
    pub fn state_at(profile: &AtmosphereProfile, h: f64) -> Result<AirState> {
        Ok(AirState {
            temperature_k: profile.temperature(h)?,
            pressure_pa: profile.pressure(h)?,
            water_vapor_g_m3: profile.water_vapor_density(h)?,
        })
    }

    /// Absorption (dB) along a straight slant path between altitudes `h0`
    /// and `h1` km at elevation `elevation_deg`, using flat-earth secant
    /// scaling of the vertical integral.
    pub fn path_absorption(
        &self,
        profile: &AtmosphereProfile,
        f: f64,
        h0: f64,
        h1: f64,
        elevation_deg: f64,
    ) -> Result<f64> {
        if !(h0 >= 0.0 && h1 >= h0) {
            return Err(domain(format!("path altitudes must satisfy 0 <= h0 <= h1, got [{h0}, {h1}]")));
        }
        if !(elevation_deg > 0.0 && elevation_deg <= 90.0) {
            return Err(domain(format!("elevation must lie in (0, 90] deg, got {elevation_deg}")));
        }
        self.check_coverage(f)?;
        let top = h1.min(self.absorber_top_km);
        if top <= h0 {
            return Ok(0.0);
        }
        // Surface errors from the integrand before integrating.
        self.absorption_coefficient(f, &Self::state_at(profile, h0)?)?;
        let zenith = self.grid.integrate(
            |h| {
                Self::state_at(profile, h)
                    .and_then(|s| self.absorption_coefficient(f, &s))
                    .unwrap_or(f64::NAN)
            },
            h0,
            top,
        );
        if !zenith.is_finite() {
            return Err(domain("absorption integrand evaluated to a non-finite value"));
        }
        Ok(zenith / elevation_deg.to_radians().sin())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sea_level() -> AirState {
        AirState {
            temperature_k: 288.0,
            pressure_pa: 101_325.0,
            water_vapor_g_m3: 7.5,
        }
    }

    #[test]
    fn no_absorbers_no_absorption() {
        let m = MolecularAbsorption::default();
        let dry = AirState {
            water_vapor_g_m3: 0.0,
            ..sea_level()
        };
        assert_eq!(m.absorption_coefficient(0.3e12, &dry).unwrap(), 0.0);
    }

    #[test]
    fn linear_in_water_vapour() {
        // Exact at trace humidity with self-broadening off: only the number
        // density changes and the dry pressure barely moves.
        let mut db = LineDatabase::shipped();
        for c in &mut db.catalogs {
            for l in &mut c.lines {
                l.self_broadening_hz_per_pa = 0.0;
            }
        }
        let m = MolecularAbsorption::new(db);
        let at = |rho| AirState {
            water_vapor_g_m3: rho,
            ..sea_level()
        };
        let k1 = m.absorption_coefficient(0.3e12, &at(1e-6)).unwrap();
        let k2 = m.absorption_coefficient(0.3e12, &at(2e-6)).unwrap();
        assert!((k2 / k1 - 2.0).abs() < 1e-8, "{}", k2 / k1);

        // Self-broadening makes it mildly superlinear at realistic humidity.
        let m = MolecularAbsorption::default();
        let k1 = m.absorption_coefficient(0.3e12, &at(7.5)).unwrap();
        let k2 = m.absorption_coefficient(0.3e12, &at(15.0)).unwrap();
        assert!((2.0..2.15).contains(&(k2 / k1)), "{}", k2 / k1);
    }

    #[test]
    fn sea_level_thz_value_in_expected_band() {
        let m = MolecularAbsorption::default();
        let k = m.absorption_coefficient(0.3e12, &sea_level()).unwrap();
        assert!((1.0..=10.0).contains(&k), "{k}");
    }

    #[test]
    fn out_of_coverage_is_an_error_not_zero() {
        let m = MolecularAbsorption::default();
        assert!(matches!(
            m.absorption_coefficient(193.4e12, &sea_level()),
            Err(Error::OutOfRange(_))
        ));
        let p = AtmosphereProfile::default();
        assert!(m.path_absorption(&p, 2e12, 0.0, 10.0, 90.0).is_err());
    }

    #[test]
    fn empty_path_is_zero() {
        let m = MolecularAbsorption::default();
        let p = AtmosphereProfile::default();
        assert_eq!(m.path_absorption(&p, 0.3e12, 3.0, 3.0, 45.0).unwrap(), 0.0);
    }

    #[test]
    fn secant_law_at_thirty_degrees() {
        let m = MolecularAbsorption::default();
        let p = AtmosphereProfile::default();
        let zen = m.path_absorption(&p, 0.3e12, 0.0, 100.0, 90.0).unwrap();
        let slant = m.path_absorption(&p, 0.3e12, 0.0, 100.0, 30.0).unwrap();
        assert!((slant / zen - 2.0).abs() < 1e-12);
    }

    #[test]
    fn bad_geometry_rejected() {
        let m = MolecularAbsorption::default();
        let p = AtmosphereProfile::default();
        assert!(m.path_absorption(&p, 0.3e12, 5.0, 1.0, 90.0).is_err());
        assert!(m.path_absorption(&p, 0.3e12, 0.0, 1.0, 0.0).is_err());
        assert!(m.path_absorption(&p, 0.3e12, 0.0, 1.0, 91.0).is_err());
    }
}
