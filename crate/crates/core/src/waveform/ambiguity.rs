//! Discrete (cross-)ambiguity surfaces
//! `|sum_n r[n] s*[n - tau] exp(-j 2 pi nu n / fs)|`, peak-normalized.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::WaveformFrame;
use crate::error::{config, domain, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AmbiguitySurface {
    pub delay_axis_s: Vec<f64>,
    pub doppler_axis_hz: Vec<f64>,
    /// `magnitude[i][j]` at Doppler `i`, delay `j`; the largest entry is 1.
    pub magnitude: Vec<Vec<f64>>,
}

/// Location of the largest cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeakCell {
    pub doppler_index: usize,
    pub delay_index: usize,
    pub delay_s: f64,
    pub doppler_hz: f64,
}

impl AmbiguitySurface {
    pub fn peak(&self) -> PeakCell {
        let mut best = (0, 0, f64::MIN);
        for (i, row) in self.magnitude.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v > best.2 {
                    best = (i, j, v);
                }
            }
        }
        PeakCell {
            doppler_index: best.0,
            delay_index: best.1,
            delay_s: self.delay_axis_s[best.1],
            doppler_hz: self.doppler_axis_hz[best.0],
        }
    }

    /// Value at the grid cell nearest to `(delay_s, doppler_hz)`.
    pub fn at(&self, delay_s: f64, doppler_hz: f64) -> f64 {
        let nearest = |axis: &[f64], v: f64| {
            axis.iter()
                .enumerate()
                .min_by(|a, b| (a.1 - v).abs().total_cmp(&(b.1 - v).abs()))
                .map(|(i, _)| i)
                .unwrap_or(0)
        };
        self.magnitude[nearest(&self.doppler_axis_hz, doppler_hz)][nearest(&self.delay_axis_s, delay_s)]
    }
}

fn delay_in_samples(tau: f64, fs: f64, len: usize) -> Result<isize> {
    let d = tau * fs;
    let k = d.round();
    if (d - k).abs() > 1e-6 {
        return Err(config(format!("delay {tau} s is not a whole number of samples at {fs} Hz")));
    }
    if k.abs() >= len as f64 {
        return Err(config(format!("delay {tau} s lies outside the frame support")));
    }
    Ok(k as isize)
}

fn surface(
    reference: &[Complex64],
    received: &[Complex64],
    fs: f64,
    delays_s: &[f64],
    dopplers_hz: &[f64],
) -> Result<AmbiguitySurface> {
    if delays_s.is_empty() || dopplers_hz.is_empty() {
        return Err(config("ambiguity grid needs at least one delay and one Doppler value"));
    }
    if reference.is_empty() || received.is_empty() {
        return Err(config("ambiguity of an empty frame"));
    }
    let lags = delays_s
        .iter()
        .map(|&t| delay_in_samples(t, fs, reference.len().max(received.len())))
        .collect::<Result<Vec<_>>>()?;
    // Products r[n] s*[n - tau] per lag, then one DTFT per Doppler value.
    let products: Vec<Vec<(usize, Complex64)>> = lags
        .par_iter()
        .map(|&lag| {
            (0..received.len())
                .filter_map(|n| {
                    let m = n as isize - lag;
                    (m >= 0 && (m as usize) < reference.len()).then(|| (n, received[n] * reference[m as usize].conj()))
                })
                .collect()
        })
        .collect();
    let mut magnitude: Vec<Vec<f64>> = dopplers_hz
        .par_iter()
        .map(|&nu| {
            let w = -2.0 * PI * nu / fs;
            products
                .iter()
                .map(|p| {
                    p.iter()
                        .map(|&(n, v)| v * Complex64::from_polar(1.0, w * n as f64))
                        .sum::<Complex64>()
                        .norm()
                })
                .collect()
        })
        .collect();
    let peak = magnitude.iter().flatten().copied().fold(0.0, f64::max);
    if !(peak > 0.0) {
        return Err(domain("ambiguity surface is identically zero on the requested grid"));
    }
    magnitude.iter_mut().flatten().for_each(|v| *v /= peak);
    Ok(AmbiguitySurface {
        delay_axis_s: delays_s.to_vec(),
        doppler_axis_hz: dopplers_hz.to_vec(),
        magnitude,
    })
}

/// Auto-ambiguity of `frame` on the given grid.
pub fn ambiguity(frame: &WaveformFrame, delays_s: &[f64], dopplers_hz: &[f64]) -> Result<AmbiguitySurface> {
    surface(&frame.samples, &frame.samples, frame.sample_rate_hz, delays_s, dopplers_hz)
}

/// Cross-ambiguity of a received signal against the transmitted frame.
pub fn cross_ambiguity(
    reference: &WaveformFrame,
    received: &[Complex64],
    delays_s: &[f64],
    dopplers_hz: &[f64],
) -> Result<AmbiguitySurface> {
    surface(&reference.samples, received, reference.sample_rate_hz, delays_s, dopplers_hz)
}
