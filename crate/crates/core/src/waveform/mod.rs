//! Multicarrier, delay-Doppler, chirp-domain and radar waveforms with the
//! metrics used to compare them: PAPR, ambiguity surfaces and Doppler.

pub mod ambiguity;
pub mod dft;
mod afdm;
mod channel;
mod fmcw;
mod montecarlo;
mod ofdm;
mod otfs;
mod spec;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::constants::SPEED_OF_LIGHT;
use crate::error::{domain, Error, Result};

pub use afdm::{afdm_c1_for_doppler, afdm_demodulate, afdm_modulate};
pub use ambiguity::{ambiguity, cross_ambiguity, AmbiguitySurface, PeakCell};
pub use channel::{DelayDopplerChannel, PathTap};
pub use fmcw::{fmcw_chirp, matched_filter, ChirpDirection};
pub use montecarlo::{oversampled, papr_samples, percentile, PaprExperiment, PaprStats, DEFAULT_SEED};
pub use ofdm::{dft_spread, dfts_demodulate, dfts_modulate, ofdm_demodulate, ofdm_modulate, oversample};
pub use otfs::{otfs_demodulate, otfs_modulate};
pub use spec::WaveformSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WaveformFamily {
    #[serde(rename = "OFDM")]
    Ofdm,
    #[serde(rename = "DFTS_OFDM")]
    DftsOfdm,
    #[serde(rename = "OTFS")]
    Otfs,
    #[serde(rename = "AFDM")]
    Afdm,
    #[serde(rename = "FMCW")]
    Fmcw,
}

impl WaveformFamily {
    pub fn name(self) -> &'static str {
        match self {
            WaveformFamily::Ofdm => "OFDM",
            WaveformFamily::DftsOfdm => "DFTS_OFDM",
            WaveformFamily::Otfs => "OTFS",
            WaveformFamily::Afdm => "AFDM",
            WaveformFamily::Fmcw => "FMCW",
        }
    }
}

/// Family-specific layout of a frame, enough to invert it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "layout", rename_all = "snake_case")]
pub enum FrameGrid {
    Multicarrier {
        subcarriers: usize,
        cp_len: usize,
        symbols: usize,
        /// DFT-spread block length; equal to `subcarriers` for plain OFDM.
        spread_len: usize,
    },
    DelayDoppler {
        delay_bins: usize,
        doppler_bins: usize,
    },
    Chirp {
        c1: f64,
        c2: f64,
        len: usize,
    },
    Sweep {
        bandwidth_hz: f64,
        duration_s: f64,
        direction: ChirpDirection,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct WaveformFrame {
    pub samples: Vec<Complex64>,
    pub sample_rate_hz: f64,
    pub family: WaveformFamily,
    pub grid: FrameGrid,
}

impl WaveformFrame {
    pub fn energy(&self) -> f64 {
        energy(&self.samples)
    }

    pub fn duration_s(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate_hz
    }
}

pub(crate) fn energy(x: &[Complex64]) -> f64 {
    x.iter().map(Complex64::norm_sqr).sum()
}

pub(crate) fn check_rate(sample_rate_hz: f64) -> Result<()> {
    if sample_rate_hz.is_finite() && sample_rate_hz > 0.0 {
        Ok(())
    } else {
        Err(Error::Config(format!("sample rate must be > 0, got {sample_rate_hz}")))
    }
}

/// Peak-to-average power ratio in dB.
pub fn papr(samples: &[Complex64]) -> Result<f64> {
    if samples.is_empty() {
        return Err(domain("PAPR of an empty frame"));
    }
    let peak = samples.iter().map(Complex64::norm_sqr).fold(0.0, f64::max);
    if peak == 0.0 {
        return Err(domain("PAPR of an all-zero frame"));
    }
    let mean = energy(samples) / samples.len() as f64;
    Ok((10.0 * (peak / mean).log10()).max(0.0))
}

/// Doppler shift (Hz) seen at carrier `fc` for radial speed `v` (m/s).
pub fn doppler_shift(fc: f64, v: f64) -> f64 {
    fc * v / SPEED_OF_LIGHT
}

/// Unit-energy QPSK symbols.
pub fn qpsk<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Complex64> {
    let a = std::f64::consts::FRAC_1_SQRT_2;
    (0..n)
        .map(|_| {
            let bits: u8 = rng.gen_range(0..4);
            Complex64::new(
                if bits & 1 == 0 { a } else { -a },
                if bits & 2 == 0 { a } else { -a },
            )
        })
        .collect()
}
