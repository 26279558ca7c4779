//! Complex refractive index models for hydrometeors and aerosols.
//!
//! Sign convention: `m = n + i k` with `k >= 0` for an absorbing medium.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constants::wavelength;
use crate::error::{Error, Result};

/// Lowest frequency covered by the double-Debye water model, Hz.
pub const DEBYE_MIN_HZ: f64 = 1.0e9;
/// Highest frequency covered by the double-Debye water model, Hz.
pub const DEBYE_MAX_HZ: f64 = 1.0e12;
/// Near-infrared window where a tabulated water index is used, metres.
pub const OPTICAL_WINDOW_M: (f64, f64) = (1.50e-6, 1.60e-6);
/// Liquid water near 1550 nm.
pub const WATER_INDEX_1550NM: Complex64 = Complex64::new(1.315, 1.0e-4);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum RefractiveIndexModel {
    /// Liquid water: double-Debye permittivity between 1 GHz and 1 THz,
    /// tabulated value in the 1.50–1.60 µm window.
    Water { temperature_k: f64 },
    /// Frequency-independent index.
    Constant { re: f64, im: f64 },
}

impl Default for RefractiveIndexModel {
    fn default() -> Self {
        RefractiveIndexModel::Water {
            temperature_k: 288.15,
        }
    }
}

impl RefractiveIndexModel {
    pub fn index(&self, frequency_hz: f64) -> Result<Complex64> {
        match *self {
            RefractiveIndexModel::Water { temperature_k } => {
                water_refractive_index(frequency_hz, temperature_k)
            }
            RefractiveIndexModel::Constant { re, im } => Ok(Complex64::new(re, im)),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            RefractiveIndexModel::Water { temperature_k } if temperature_k > 0.0 => Ok(()),
            RefractiveIndexModel::Constant { re, im } if re.is_finite() && im >= 0.0 => Ok(()),
            _ => Err(Error::Config(format!(
                "refractive index model {self:?} is not physical (need T > 0 or Im(m) >= 0)"
            ))),
        }
    }
}

/// Double-Debye relative permittivity of liquid water, `eps' + i eps''`.
pub fn water_permittivity(frequency_hz: f64, temperature_k: f64) -> Complex64 {
    let f = frequency_hz * 1e-9;
    let theta = 300.0 / temperature_k;
    let eps0 = 77.66 + 103.3 * (theta - 1.0);
    let eps1 = 0.0671 * eps0;
    let eps2 = 3.52;
    // Principal and secondary relaxation frequencies, GHz.
    let fp = 20.20 - 146.0 * (theta - 1.0) + 316.0 * (theta - 1.0).powi(2);
    let fs = 39.8 * fp;
    let rp = 1.0 + (f / fp).powi(2);
    let rs = 1.0 + (f / fs).powi(2);
    let re = (eps0 - eps1) / rp + (eps1 - eps2) / rs + eps2;
    let im = f * (eps0 - eps1) / (fp * rp) + f * (eps1 - eps2) / (fs * rs);
    Complex64::new(re, im)
}

/// Complex refractive index of liquid water at `frequency_hz`.
pub fn water_refractive_index(frequency_hz: f64, temperature_k: f64) -> Result<Complex64> {
    if (DEBYE_MIN_HZ..=DEBYE_MAX_HZ).contains(&frequency_hz) {
        let m = water_permittivity(frequency_hz, temperature_k).sqrt();
        // principal sqrt already has Re > 0; Im >= 0 follows from eps'' >= 0
        return Ok(m);
    }
    let lambda = wavelength(frequency_hz);
    if (OPTICAL_WINDOW_M.0..=OPTICAL_WINDOW_M.1).contains(&lambda) {
        return Ok(WATER_INDEX_1550NM);
    }
    Err(Error::OutOfRange(format!(
        "no water refractive index for {frequency_hz:.4e} Hz (covered: 1 GHz–1 THz and 1.50–1.60 µm)"
    )))
}
