//! Scintillation loss from a Hufnagel–Valley refractive-index structure
//! profile.
//!
//! The slant-path Rytov variance is
//!
//! ```text
//! sigma_R^2 = 2.25 k^(7/6) sec(zeta)^(11/6) ∫ Cn2(h) (h - h0)^(5/6) dh
//! ```
//!
//! which reduces to `1.23 Cn2 k^(7/6) L^(11/6)` for a uniform profile. The
//! loss reported is `10 log10(exp(sigma_R^2 / 2))`, so it scales exactly as
//! `f^(7/6)` at fixed geometry.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::constants::{wavelength, DB_PER_NEPER, KM};
use crate::error::{config, ensure_positive, Result};
use crate::quadrature::AltitudeGrid;

use super::LinkGeometry;

/// Turbulence is negligible above this altitude (km) for any HV profile.
pub const TURBULENCE_TOP_KM: f64 = 30.0;

/// Hufnagel–Valley `Cn2(h)` with configurable ground strength and
/// high-altitude wind speed. Setting every strength to zero switches
/// turbulence off.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CnSquaredProfile {
    /// Surface-layer strength `A`, m^(-2/3).
    pub ground_cn2_m_23: f64,
    /// RMS upper-atmosphere wind speed, m/s.
    pub wind_speed_m_s: f64,
    /// Free-troposphere term, m^(-2/3).
    #[serde(default = "default_background")]
    pub background_cn2_m_23: f64,
}

fn default_background() -> f64 {
    2.7e-16
}

impl Default for CnSquaredProfile {
    /// The HV 5/7 profile.
    fn default() -> Self {
        Self {
            ground_cn2_m_23: 1.7e-14,
            wind_speed_m_s: 21.0,
            background_cn2_m_23: default_background(),
        }
    }
}

impl CnSquaredProfile {
    pub fn none() -> Self {
        Self {
            ground_cn2_m_23: 0.0,
            wind_speed_m_s: 0.0,
            background_cn2_m_23: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("ground_cn2_m_23", self.ground_cn2_m_23),
            ("wind_speed_m_s", self.wind_speed_m_s),
            ("background_cn2_m_23", self.background_cn2_m_23),
        ] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(config(format!("turbulence.{name} must be finite and >= 0, got {v}")));
            }
        }
        Ok(())
    }

    /// `Cn2` at height `h_m` metres above the ground terminal.
    pub fn cn2(&self, h_m: f64) -> f64 {
        let h = h_m.max(0.0);
        0.00594 * (self.wind_speed_m_s / 27.0).powi(2) * (1e-5 * h).powi(10) * (-h / 1000.0).exp()
            + self.background_cn2_m_23 * (-h / 1500.0).exp()
            + self.ground_cn2_m_23 * (-h / 100.0).exp()
    }
}

/// `2.25 sec^(11/6) ∫ Cn2 (h - h0)^(5/6) dh` over `[a, b]` km of altitude,
/// with `k^(7/6)` left out. Units m^(-7/6).
pub fn path_weight<F: Fn(f64) -> f64>(
    cn2: F,
    geometry: &LinkGeometry,
    a_km: f64,
    b_km: f64,
    grid: &AltitudeGrid,
) -> f64 {
    let h0 = geometry.ground_altitude_km;
    let (lo, hi) = (a_km.max(h0), b_km.min(TURBULENCE_TOP_KM));
    if hi <= lo {
        return 0.0;
    }
    let integral_km = grid.integrate(
        |h| {
            let above_m = (h - h0) * KM;
            cn2(above_m) * above_m.powf(5.0 / 6.0)
        },
        lo,
        hi,
    );
    2.25 * geometry.secant().powf(11.0 / 6.0) * integral_km * KM
}

fn wavenumber_factor(f: f64) -> f64 {
    (2.0 * PI / wavelength(f)).powf(7.0 / 6.0)
}

/// Converts a Rytov variance to dB.
pub fn rytov_to_db(sigma_r2: f64) -> f64 {
    0.5 * DB_PER_NEPER * sigma_r2
}

/// Rytov variance over the whole turbulent part of the path.
pub fn rytov_variance(f: f64, geometry: &LinkGeometry, profile: &CnSquaredProfile) -> Result<f64> {
    ensure_positive("frequency", f)?;
    geometry.validate()?;
    profile.validate()?;
    let w = path_weight(
        |h| profile.cn2(h),
        geometry,
        geometry.ground_altitude_km,
        geometry.platform_altitude_km,
        &AltitudeGrid::default(),
    );
    Ok(wavenumber_factor(f) * w)
}

/// Turbulence loss in dB; exactly proportional to `f^(7/6)`.
pub fn turbulence_loss(f: f64, geometry: &LinkGeometry, profile: &CnSquaredProfile) -> Result<f64> {
    Ok(rytov_to_db(rytov_variance(f, geometry, profile)?))
}

/// Loss accrued between altitudes `a_km` and `b_km`.
pub(crate) fn segment_loss(
    f: f64,
    geometry: &LinkGeometry,
    profile: &CnSquaredProfile,
    a_km: f64,
    b_km: f64,
    grid: &AltitudeGrid,
) -> f64 {
    rytov_to_db(wavenumber_factor(f) * path_weight(|h| profile.cn2(h), geometry, a_km, b_km, grid))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn zenith() -> LinkGeometry {
        LinkGeometry::zenith(0.0, 2000.0)
    }

    #[test]
    fn no_turbulence_no_loss() {
        assert_eq!(turbulence_loss(0.3e12, &zenith(), &CnSquaredProfile::none()).unwrap(), 0.0);
    }

    #[test]
    fn band_ratio() {
        let p = CnSquaredProfile::default();
        let a = turbulence_loss(0.02e12, &zenith(), &p).unwrap();
        let b = turbulence_loss(0.3e12, &zenith(), &p).unwrap();
        assert!(((b / a) - 15f64.powf(7.0 / 6.0)).abs() / 15f64.powf(7.0 / 6.0) < 1e-12);
        assert!((b / a - 23.56).abs() < 0.01);
        let fso = turbulence_loss(193.4e12, &zenith(), &p).unwrap();
        assert!(fso >= 10.0 * b);
    }

    #[test]
    fn hv57_ground_value() {
        let p = CnSquaredProfile::default();
        assert!((p.cn2(0.0) - (1.7e-14 + 2.7e-16)).abs() < 1e-24);
    }

    #[test]
    fn uniform_profile_reduces_to_plane_wave_form() {
        // Horizontal-equivalent check: constant Cn2 up to the turbulence top.
        let g = LinkGeometry::zenith(0.0, 20.0);
        let cn2 = 1e-15;
        let w = path_weight(|_| cn2, &g, 0.0, 20.0, &AltitudeGrid::default());
        let l = 20.0 * KM;
        let expected = 2.25 / (11.0 / 6.0) * cn2 * l.powf(11.0 / 6.0);
        assert!((w - expected).abs() / expected < 1e-5, "{w} vs {expected}");
        assert!((2.25f64 / (11.0 / 6.0) - 1.23).abs() < 0.005);
    }

    #[test]
    fn slant_scaling() {
        let p = CnSquaredProfile::default();
        let z = turbulence_loss(1e12, &zenith(), &p).unwrap();
        let s = turbulence_loss(1e12, &LinkGeometry::new(0.0, 2000.0, 30.0).unwrap(), &p).unwrap();
        assert!((s / z - 2f64.powf(11.0 / 6.0)).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn seven_sixths_law(f1 in 1e9f64..2e14, f2 in 1e9f64..2e14, el in 10.0f64..90.0) {
            let g = LinkGeometry::new(0.0, 2000.0, el).unwrap();
            let p = CnSquaredProfile::default();
            let a = turbulence_loss(f1, &g, &p).unwrap();
            let b = turbulence_loss(f2, &g, &p).unwrap();
            let want = (f2 / f1).powf(7.0 / 6.0);
            prop_assert!(((b / a) - want).abs() / want < 1e-9);
        }
    }
}
