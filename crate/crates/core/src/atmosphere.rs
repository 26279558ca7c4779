//! Altitude-parameterized atmospheric state and layering.
//!
//! Water vapour falls off exponentially with a single scale height,
//! temperature follows a piecewise-linear table, pressure follows from
//! hydrostatic balance over that table, and free electrons follow a single
//! Chapman layer gated to the ionosphere.

use serde::{Deserialize, Serialize};

use crate::constants::{AIR_MOLAR_MASS, GAS_CONSTANT, STANDARD_GRAVITY};
use crate::error::{config, domain, ensure_non_negative, ensure_positive, Result};

/// Atmospheric layer an altitude belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Layer {
    Troposphere,
    Stratosphere,
    /// Between the stratopause and the bottom of the ionosphere.
    Gap,
    Ionosphere,
    Space,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayerBounds {
    pub troposphere_top_km: f64,
    pub stratosphere_top_km: f64,
    pub ionosphere_bottom_km: f64,
    pub ionosphere_top_km: f64,
}

impl Default for LayerBounds {
    fn default() -> Self {
        Self {
            troposphere_top_km: 12.0,
            stratosphere_top_km: 50.0,
            ionosphere_bottom_km: 60.0,
            ionosphere_top_km: 1000.0,
        }
    }
}

/// Single-peak ionospheric electron density profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChapmanParams {
    pub peak_electron_density_m3: f64,
    pub peak_altitude_km: f64,
    pub scale_height_km: f64,
}

impl Default for ChapmanParams {
    fn default() -> Self {
        Self {
            peak_electron_density_m3: 1.0e12,
            peak_altitude_km: 300.0,
            scale_height_km: 75.0,
        }
    }
}

/// One node of the temperature table; linear interpolation between nodes,
/// constant above the last one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TemperatureNode {
    pub altitude_km: f64,
    pub temperature_k: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtmosphereProfile {
    pub surface_temperature_k: f64,
    pub surface_pressure_pa: f64,
    pub surface_water_vapor_density_g_m3: f64,
    pub water_vapor_scale_height_km: f64,
    /// Nodes above the surface, strictly increasing in altitude.
    pub temperature_nodes: Vec<TemperatureNode>,
    pub electron_profile: ChapmanParams,
    pub layer_bounds: LayerBounds,
}

impl Default for AtmosphereProfile {
    /// 6.5 K/km lapse to 11 km then isothermal, 7.5 g/m^3 of water vapour
    /// with a 2.1 km scale height.
    fn default() -> Self {
        Self {
            surface_temperature_k: 288.15,
            surface_pressure_pa: 101_325.0,
            surface_water_vapor_density_g_m3: 7.5,
            water_vapor_scale_height_km: 2.1,
            temperature_nodes: vec![TemperatureNode {
                altitude_km: 11.0,
                temperature_k: 216.65,
            }],
            electron_profile: ChapmanParams::default(),
            layer_bounds: LayerBounds::default(),
        }
    }
}

fn check_altitude(h: f64) -> Result<()> {
    if h.is_finite() && h >= 0.0 {
        Ok(())
    } else {
        Err(domain(format!("altitude must be >= 0 km, got {h}")))
    }
}

impl AtmosphereProfile {
    pub fn validate(&self) -> Result<()> {
        let pos = |name: &str, v: f64| ensure_positive(name, v).map_err(|e| config(e.to_string()));
        pos("surface_temperature_k", self.surface_temperature_k)?;
        pos("surface_pressure_pa", self.surface_pressure_pa)?;
        pos(
            "surface_water_vapor_density_g_m3",
            self.surface_water_vapor_density_g_m3,
        )?;
        pos("water_vapor_scale_height_km", self.water_vapor_scale_height_km)?;
        let mut last = 0.0;
        for (i, node) in self.temperature_nodes.iter().enumerate() {
            if !(node.altitude_km > last) {
                return Err(config(format!(
                    "temperature_nodes[{i}].altitude_km must be strictly increasing and > 0"
                )));
            }
            pos(&format!("temperature_nodes[{i}].temperature_k"), node.temperature_k)?;
            last = node.altitude_km;
        }
        let b = &self.layer_bounds;
        let ordered = 0.0 < b.troposphere_top_km
            && b.troposphere_top_km < b.stratosphere_top_km
            && b.stratosphere_top_km <= b.ionosphere_bottom_km
            && b.ionosphere_bottom_km < b.ionosphere_top_km;
        if !ordered {
            return Err(config(
                "layer_bounds must satisfy 0 < troposphere_top < stratosphere_top <= ionosphere_bottom < ionosphere_top",
            ));
        }
        let e = &self.electron_profile;
        ensure_non_negative("electron_profile.peak_electron_density_m3", e.peak_electron_density_m3)
            .map_err(|e| config(e.to_string()))?;
        pos("electron_profile.scale_height_km", e.scale_height_km)?;
        if e.peak_altitude_km < b.ionosphere_bottom_km || e.peak_altitude_km > b.ionosphere_top_km {
            return Err(config(
                "electron_profile.peak_altitude_km must lie within the ionosphere bounds",
            ));
        }
        Ok(())
    }

    /// Water-vapour density in g/m^3 at altitude `h` km.
    pub fn water_vapor_density(&self, h: f64) -> Result<f64> {
        check_altitude(h)?;
        Ok(self.surface_water_vapor_density_g_m3 * (-h / self.water_vapor_scale_height_km).exp())
    }

    /// Free-electron density in m^-3 at altitude `h` km.
    pub fn electron_density(&self, h: f64) -> Result<f64> {
        check_altitude(h)?;
        let b = &self.layer_bounds;
        if h < b.ionosphere_bottom_km || h > b.ionosphere_top_km {
            return Ok(0.0);
        }
        let c = &self.electron_profile;
        let z = (h - c.peak_altitude_km) / c.scale_height_km;
        Ok(c.peak_electron_density_m3 * (0.5 * (1.0 - z - (-z).exp())).exp())
    }

    /// Layer containing `h`; an altitude exactly on a bound belongs to the
    /// lower layer.
    pub fn layer_of(&self, h: f64) -> Result<Layer> {
        check_altitude(h)?;
        let b = &self.layer_bounds;
        Ok(if h <= b.troposphere_top_km {
            Layer::Troposphere
        } else if h <= b.stratosphere_top_km {
            Layer::Stratosphere
        } else if h <= b.ionosphere_bottom_km {
            Layer::Gap
        } else if h <= b.ionosphere_top_km {
            Layer::Ionosphere
        } else {
            Layer::Space
        })
    }

    /// (altitude, temperature) breakpoints including the surface.
    fn nodes(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        std::iter::once((0.0, self.surface_temperature_k)).chain(
            self.temperature_nodes
                .iter()
                .map(|n| (n.altitude_km, n.temperature_k)),
        )
    }

    /// Temperature in K at altitude `h` km.
    pub fn temperature(&self, h: f64) -> Result<f64> {
        check_altitude(h)?;
        let mut prev = (0.0, self.surface_temperature_k);
        for (alt, t) in self.nodes().skip(1) {
            if h <= alt {
                let frac = (h - prev.0) / (alt - prev.0);
                return Ok(prev.1 + frac * (t - prev.1));
            }
            prev = (alt, t);
        }
        Ok(prev.1)
    }

    /// Total pressure in Pa at altitude `h` km, from hydrostatic balance over
    /// the temperature table.
    pub fn pressure(&self, h: f64) -> Result<f64> {
        check_altitude(h)?;
        // g M / R in K per metre.
        let gmr = STANDARD_GRAVITY * AIR_MOLAR_MASS / GAS_CONSTANT;
        let mut p = self.surface_pressure_pa;
        let mut base = (0.0, self.surface_temperature_k);
        let mut nodes = self.nodes().skip(1).peekable();
        loop {
            let (top_alt, top_t) = nodes.peek().copied().unwrap_or((f64::INFINITY, base.1));
            let seg_top = h.min(top_alt);
            let dz_m = (seg_top - base.0) * 1e3;
            let lapse = if top_alt.is_finite() {
                (top_t - base.1) / ((top_alt - base.0) * 1e3)
            } else {
                0.0
            };
            if lapse.abs() < 1e-12 {
                p *= (-gmr * dz_m / base.1).exp();
            } else {
                let t_top = base.1 + lapse * dz_m;
                p *= (t_top / base.1).powf(-gmr / lapse);
            }
            if h <= top_alt {
                return Ok(p);
            }
            base = (top_alt, top_t);
            nodes.next();
        }
    }
}

/// Coarse weather category, used to key hydrometeor populations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeatherKind {
    Clear,
    Rain,
    Fog,
    Cloud,
}

impl WeatherKind {
    pub fn name(self) -> &'static str {
        match self {
            WeatherKind::Clear => "clear",
            WeatherKind::Rain => "rain",
            WeatherKind::Fog => "fog",
            WeatherKind::Cloud => "cloud",
        }
    }
}

fn default_rain_top() -> f64 {
    4.0
}
fn default_fog_top() -> f64 {
    0.3
}
fn default_cloud_base() -> f64 {
    1.0
}
fn default_cloud_top() -> f64 {
    3.0
}

/// Weather along the path. Hydrometeors fill a vertical slab of the
/// troposphere uniformly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum WeatherCondition {
    Clear,
    Rain {
        rain_rate_mm_per_h: f64,
        #[serde(default = "default_rain_top")]
        rain_top_km: f64,
    },
    Fog {
        liquid_water_g_m3: f64,
        #[serde(default = "default_fog_top")]
        fog_top_km: f64,
    },
    Cloud {
        liquid_water_g_m3: f64,
        #[serde(default = "default_cloud_base")]
        cloud_base_km: f64,
        #[serde(default = "default_cloud_top")]
        cloud_top_km: f64,
    },
}

impl WeatherCondition {
    pub fn rain(rain_rate_mm_per_h: f64) -> Self {
        WeatherCondition::Rain {
            rain_rate_mm_per_h,
            rain_top_km: default_rain_top(),
        }
    }

    pub fn fog(liquid_water_g_m3: f64) -> Self {
        WeatherCondition::Fog {
            liquid_water_g_m3,
            fog_top_km: default_fog_top(),
        }
    }

    pub fn cloud(liquid_water_g_m3: f64) -> Self {
        WeatherCondition::Cloud {
            liquid_water_g_m3,
            cloud_base_km: default_cloud_base(),
            cloud_top_km: default_cloud_top(),
        }
    }

    pub fn kind(&self) -> WeatherKind {
        match self {
            WeatherCondition::Clear => WeatherKind::Clear,
            WeatherCondition::Rain { .. } => WeatherKind::Rain,
            WeatherCondition::Fog { .. } => WeatherKind::Fog,
            WeatherCondition::Cloud { .. } => WeatherKind::Cloud,
        }
    }

    /// Vertical slab `(bottom, top)` in km occupied by hydrometeors.
    pub fn vertical_extent(&self) -> Option<(f64, f64)> {
        match *self {
            WeatherCondition::Clear => None,
            WeatherCondition::Rain { rain_top_km, .. } => Some((0.0, rain_top_km)),
            WeatherCondition::Fog { fog_top_km, .. } => Some((0.0, fog_top_km)),
            WeatherCondition::Cloud {
                cloud_base_km,
                cloud_top_km,
                ..
            } => Some((cloud_base_km, cloud_top_km)),
        }
    }

    /// Rain rate (mm/h) or liquid-water content (g/m^3), depending on kind.
    pub fn intensity(&self) -> f64 {
        match *self {
            WeatherCondition::Clear => 0.0,
            WeatherCondition::Rain {
                rain_rate_mm_per_h, ..
            } => rain_rate_mm_per_h,
            WeatherCondition::Fog {
                liquid_water_g_m3, ..
            }
            | WeatherCondition::Cloud {
                liquid_water_g_m3, ..
            } => liquid_water_g_m3,
        }
    }

    pub fn validate(&self, profile: &AtmosphereProfile) -> Result<()> {
        let what = self.kind().name();
        let intensity = self.intensity();
        if !(intensity.is_finite() && intensity >= 0.0) {
            return Err(config(format!("weather ({what}): rate/content must be >= 0")));
        }
        if let Some((lo, hi)) = self.vertical_extent() {
            if !(lo >= 0.0 && hi > lo && hi <= profile.layer_bounds.troposphere_top_km) {
                return Err(config(format!(
                    "weather ({what}): vertical extent [{lo}, {hi}] km must be ordered and inside the troposphere"
                )));
            }
        }
        Ok(())
    }
}
