use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::constants::LIQUID_WATER_DENSITY;
use crate::error::{config, Result};

/// Number of particles per unit volume per unit radius.
///
/// Marshall–Palmer parameters use the customary drop-*diameter* convention:
/// `N(D) = N0 exp(-Lambda D)` with `N0` in m^-3 mm^-1 and `Lambda` in mm^-1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SizeDistribution {
    Monodisperse {
        radius_m: f64,
        number_density_m3: f64,
    },
    MarshallPalmer {
        n0_per_m3_mm: f64,
        lambda_per_mm: f64,
    },
    /// `n(r) = N_T r^shape exp(-r/scale) / (Gamma(shape + 1) scale^(shape + 1))`.
    ModifiedGamma {
        shape: f64,
        scale_m: f64,
        total_density_m3: f64,
    },
}

pub const MARSHALL_PALMER_N0: f64 = 8_000.0;

impl SizeDistribution {
    /// Marshall–Palmer rain with `Lambda = 4.1 R^-0.21`.
    pub fn marshall_palmer(rain_rate_mm_per_h: f64) -> Self {
        SizeDistribution::MarshallPalmer {
            n0_per_m3_mm: MARSHALL_PALMER_N0,
            lambda_per_mm: 4.1 * rain_rate_mm_per_h.powf(-0.21),
        }
    }

    /// Monodisperse droplets holding `liquid_water_g_m3` of water.
    pub fn monodisperse_from_lwc(radius_m: f64, liquid_water_g_m3: f64) -> Self {
        let mass = LIQUID_WATER_DENSITY * 4.0 / 3.0 * PI * radius_m.powi(3);
        SizeDistribution::Monodisperse {
            radius_m,
            number_density_m3: liquid_water_g_m3 / mass,
        }
    }

    /// Modified-gamma droplets holding `liquid_water_g_m3` of water.
    pub fn gamma_from_lwc(shape: f64, scale_m: f64, liquid_water_g_m3: f64) -> Self {
        // E[r^3] = scale^3 Gamma(shape + 4) / Gamma(shape + 1)
        let mean_r3 = scale_m.powi(3) * (ln_gamma(shape + 4.0) - ln_gamma(shape + 1.0)).exp();
        let mass = LIQUID_WATER_DENSITY * 4.0 / 3.0 * PI * mean_r3;
        SizeDistribution::ModifiedGamma {
            shape,
            scale_m,
            total_density_m3: liquid_water_g_m3 / mass,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            SizeDistribution::Monodisperse {
                radius_m,
                number_density_m3,
            } => radius_m > 0.0 && number_density_m3 >= 0.0 && number_density_m3.is_finite(),
            SizeDistribution::MarshallPalmer {
                n0_per_m3_mm,
                lambda_per_mm,
            } => n0_per_m3_mm >= 0.0 && n0_per_m3_mm.is_finite() && lambda_per_mm > 0.0 && lambda_per_mm.is_finite(),
            SizeDistribution::ModifiedGamma {
                shape,
                scale_m,
                total_density_m3,
            } => shape >= 0.0 && scale_m > 0.0 && total_density_m3 >= 0.0 && total_density_m3.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(config(format!("invalid size distribution {self:?}")))
        }
    }

    /// Particles per m^3.
    pub fn total_number_density(&self) -> f64 {
        match *self {
            SizeDistribution::Monodisperse {
                number_density_m3, ..
            } => number_density_m3,
            SizeDistribution::MarshallPalmer {
                n0_per_m3_mm,
                lambda_per_mm,
            } => n0_per_m3_mm / lambda_per_mm,
            SizeDistribution::ModifiedGamma {
                total_density_m3, ..
            } => total_density_m3,
        }
    }

    /// Density per m^3 per metre of radius at radius `r` (m).
    pub fn density(&self, r: f64) -> f64 {
        match *self {
            // A delta; only meaningful through the collapsed integral.
            SizeDistribution::Monodisperse { .. } => 0.0,
            SizeDistribution::MarshallPalmer {
                n0_per_m3_mm,
                lambda_per_mm,
            } => {
                let d_mm = 2.0e3 * r;
                // dD/dr = 2000 mm per metre of radius
                2.0e3 * n0_per_m3_mm * (-lambda_per_mm * d_mm).exp()
            }
            SizeDistribution::ModifiedGamma {
                shape,
                scale_m,
                total_density_m3,
            } => {
                let ln = shape * (r / scale_m).ln() - r / scale_m - ln_gamma(shape + 1.0);
                total_density_m3 * ln.exp() / scale_m
            }
        }
    }

    /// Radius (m) at which the cross-section-weighted density `r^2 n(r)`
    /// peaks.
    pub fn area_weighted_mode(&self) -> f64 {
        match *self {
            SizeDistribution::Monodisperse { radius_m, .. } => radius_m,
            // r^2 exp(-2000 Lambda r) peaks at r = 1 / (1000 Lambda) m
            SizeDistribution::MarshallPalmer { lambda_per_mm, .. } => 1.0e-3 / lambda_per_mm,
            SizeDistribution::ModifiedGamma { shape, scale_m, .. } => (shape + 2.0) * scale_m,
        }
    }

    /// Radius interval `[0.01, 10] x` the area-weighted mode.
    pub fn integration_range(&self) -> (f64, f64) {
        let mode = self.area_weighted_mode();
        (0.01 * mode, 10.0 * mode)
    }
}
