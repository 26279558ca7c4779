//! Collisional absorption in the ionospheric plasma.
//!
//! For `omega` well above the plasma frequency the imaginary part of the
//! Appleton–Hartree index (no magnetic field) gives a power absorption
//! coefficient `omega_p^2 nu / (c (omega^2 + nu^2))` Np/m.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::atmosphere::AtmosphereProfile;
use crate::constants::{
    DB_PER_NEPER, ELECTRON_MASS, ELEMENTARY_CHARGE, KM, SPEED_OF_LIGHT, VACUUM_PERMITTIVITY,
};
use crate::error::{config, domain, ensure_positive, Result};
use crate::quadrature::AltitudeGrid;

use super::LinkGeometry;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlasmaModel {
    /// Effective electron collision frequency, s^-1.
    pub collision_frequency_hz: f64,
}

impl Default for PlasmaModel {
    fn default() -> Self {
        Self {
            collision_frequency_hz: 1.0e4,
        }
    }
}

impl PlasmaModel {
    pub fn validate(&self) -> Result<()> {
        let v = self.collision_frequency_hz;
        if v.is_finite() && v >= 0.0 {
            Ok(())
        } else {
            Err(config(format!("plasma.collision_frequency_hz must be finite and >= 0, got {v}")))
        }
    }

    /// Absorption coefficient in dB/km at electron density `n_e` (m^-3).
    pub fn coefficient_db_per_km(&self, f: f64, n_e: f64) -> f64 {
        let omega = 2.0 * PI * f;
        let nu = self.collision_frequency_hz;
        let np_per_m = plasma_angular_frequency_sq(n_e) * nu / (SPEED_OF_LIGHT * (omega * omega + nu * nu));
        DB_PER_NEPER * KM * np_per_m
    }
}

fn plasma_angular_frequency_sq(n_e: f64) -> f64 {
    n_e * ELEMENTARY_CHARGE * ELEMENTARY_CHARGE / (VACUUM_PERMITTIVITY * ELECTRON_MASS)
}

/// Plasma frequency in Hz (about `8.98 sqrt(n_e)`).
pub fn plasma_frequency(n_e: f64) -> f64 {
    plasma_angular_frequency_sq(n_e).sqrt() / (2.0 * PI)
}

fn check_above_plasma_frequency(f: f64, profile: &AtmosphereProfile) -> Result<()> {
    ensure_positive("frequency", f)?;
    let fp = plasma_frequency(profile.electron_profile.peak_electron_density_m3);
    if f <= fp {
        return Err(domain(format!(
            "{f:.4e} Hz is at or below the peak plasma frequency {fp:.4e} Hz; the wave is reflected"
        )));
    }
    Ok(())
}

/// Largest per-km coefficient met along the ionospheric part of the path.
pub fn peak_coefficient_db_per_km(
    f: f64,
    geometry: &LinkGeometry,
    profile: &AtmosphereProfile,
    model: &PlasmaModel,
) -> Result<f64> {
    check_above_plasma_frequency(f, profile)?;
    let b = profile.layer_bounds;
    let lo = geometry.ground_altitude_km.max(b.ionosphere_bottom_km);
    let hi = geometry.platform_altitude_km.min(b.ionosphere_top_km);
    let mut peak: f64 = 0.0;
    if hi > lo {
        // The Chapman peak may sit between samples; include it explicitly.
        let hm = profile.electron_profile.peak_altitude_km.clamp(lo, hi);
        let samples = (0..=2000).map(|i| lo + (hi - lo) * i as f64 / 2000.0).chain([hm]);
        for h in samples {
            peak = peak.max(model.coefficient_db_per_km(f, profile.electron_density(h)?));
        }
    }
    Ok(peak)
}

/// Plasma loss (dB) accrued between altitudes `a_km` and `b_km`.
pub(crate) fn segment_loss(
    f: f64,
    geometry: &LinkGeometry,
    profile: &AtmosphereProfile,
    model: &PlasmaModel,
    a_km: f64,
    b_km: f64,
    grid: &AltitudeGrid,
) -> Result<f64> {
    check_above_plasma_frequency(f, profile)?;
    model.validate()?;
    let b = profile.layer_bounds;
    let (lo, hi) = (a_km.max(b.ionosphere_bottom_km), b_km.min(b.ionosphere_top_km));
    if hi <= lo {
        return Ok(0.0);
    }
    profile.electron_density(lo)?;
    let vertical = grid.integrate(
        |h| model.coefficient_db_per_km(f, profile.electron_density(h).unwrap_or(f64::NAN)),
        lo,
        hi,
    );
    Ok(vertical * geometry.secant())
}

/// Collisional absorption (dB) over the ionospheric segment of the path.
pub fn plasma_loss(f: f64, geometry: &LinkGeometry, profile: &AtmosphereProfile, model: &PlasmaModel) -> Result<f64> {
    geometry.validate()?;
    profile.validate()?;
    segment_loss(
        f,
        geometry,
        profile,
        model,
        geometry.ground_altitude_km,
        geometry.platform_altitude_km,
        &AltitudeGrid::default(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atmosphere::ChapmanParams;
    use proptest::prelude::*;

    fn zenith() -> LinkGeometry {
        LinkGeometry::zenith(0.0, 2000.0)
    }

    #[test]
    fn plasma_frequency_rule_of_thumb() {
        assert!((plasma_frequency(1e12) / (8.98 * 1e6) - 1.0).abs() < 1e-3);
    }

    #[test]
    fn no_electrons_no_loss() {
        let mut p = AtmosphereProfile::default();
        p.electron_profile = ChapmanParams {
            peak_electron_density_m3: 0.0,
            ..ChapmanParams::default()
        };
        assert_eq!(plasma_loss(0.02e12, &zenith(), &p, &PlasmaModel::default()).unwrap(), 0.0);
    }

    #[test]
    fn reflection_below_plasma_frequency() {
        let p = AtmosphereProfile::default();
        assert!(plasma_loss(5e6, &zenith(), &p, &PlasmaModel::default()).is_err());
    }

    #[test]
    fn coefficient_bound_at_mmwave() {
        let p = AtmosphereProfile::default();
        let c = peak_coefficient_db_per_km(0.02e12, &zenith(), &p, &PlasmaModel::default()).unwrap();
        assert!(c > 0.0 && c < 1e-3, "{c}");
    }

    #[test]
    fn decreasing_in_frequency_and_matches_brute_force() {
        let p = AtmosphereProfile::default();
        let m = PlasmaModel::default();
        let lo = plasma_loss(0.02e12, &zenith(), &p, &m).unwrap();
        let hi = plasma_loss(0.3e12, &zenith(), &p, &m).unwrap();
        assert!(hi < lo);
        // Midpoint rule on 10 m steps.
        let step = 0.01;
        let n = ((1000.0 - 60.0) / step) as usize;
        let brute: f64 = (0..n)
            .map(|i| {
                let h = 60.0 + (i as f64 + 0.5) * step;
                m.coefficient_db_per_km(0.02e12, p.electron_density(h).unwrap()) * step
            })
            .sum();
        assert!((lo - brute).abs() / brute < 1e-6, "{lo} vs {brute}");
    }

    proptest! {
        #[test]
        fn bound_holds_above_twenty_ghz(f in 0.02e12f64..200e12) {
            let p = AtmosphereProfile::default();
            let c = peak_coefficient_db_per_km(f, &zenith(), &p, &PlasmaModel::default()).unwrap();
            prop_assert!(c < 1e-3);
        }
    }
}
