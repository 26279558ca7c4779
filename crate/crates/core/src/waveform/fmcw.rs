//! Linear-chirp FMCW frames and matched filtering.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{check_rate, FrameGrid, WaveformFamily, WaveformFrame};
use crate::error::{config, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChirpDirection {
    #[default]
    Up,
    Down,
}

/// Complex-baseband chirp `exp(+-j pi (B/T) t^2)` sampled at `fs` over
/// `[0, T)`. Requires `fs >= B`.
pub fn fmcw_chirp(
    bandwidth_hz: f64,
    duration_s: f64,
    sample_rate_hz: f64,
    direction: ChirpDirection,
) -> Result<WaveformFrame> {
    check_rate(sample_rate_hz)?;
    if !(bandwidth_hz.is_finite() && bandwidth_hz > 0.0 && duration_s.is_finite() && duration_s > 0.0) {
        return Err(config(format!(
            "chirp needs B > 0 and T > 0, got B = {bandwidth_hz}, T = {duration_s}"
        )));
    }
    if sample_rate_hz < bandwidth_hz {
        return Err(config(format!(
            "sample rate {sample_rate_hz} Hz undersamples a {bandwidth_hz} Hz sweep"
        )));
    }
    let len = (duration_s * sample_rate_hz).round() as usize;
    if len < 2 {
        return Err(config("chirp shorter than two samples"));
    }
    let sign = match direction {
        ChirpDirection::Up => 1.0,
        ChirpDirection::Down => -1.0,
    };
    let slope = bandwidth_hz / duration_s;
    let samples = (0..len)
        .map(|n| {
            let t = n as f64 / sample_rate_hz;
            Complex64::from_polar(1.0, sign * PI * slope * t * t)
        })
        .collect();
    Ok(WaveformFrame {
        samples,
        sample_rate_hz,
        family: WaveformFamily::Fmcw,
        grid: FrameGrid::Sweep {
            bandwidth_hz,
            duration_s,
            direction,
        },
    })
}

/// `|sum_n r[n + lag] s*[n]|` for lags `0..r.len()`.
pub fn matched_filter(reference: &[Complex64], received: &[Complex64]) -> Vec<f64> {
    (0..received.len())
        .map(|lag| {
            received[lag..]
                .iter()
                .zip(reference)
                .map(|(r, s)| r * s.conj())
                .sum::<Complex64>()
                .norm()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::SPEED_OF_LIGHT;
    use crate::waveform::papr;

    #[test]
    fn constant_envelope() {
        let f = fmcw_chirp(100e6, 10e-6, 400e6, ChirpDirection::Up).unwrap();
        assert_eq!(f.samples.len(), 4000);
        assert!(f.samples.iter().all(|s| (s.norm() - 1.0).abs() < 1e-12));
        assert!(papr(&f.samples).unwrap().abs() < 1e-12);
    }

    #[test]
    fn sweep_ends_at_bandwidth() {
        let (b, t, fs) = (100e6, 10e-6, 1e9);
        for (dir, sign) in [(ChirpDirection::Up, 1.0), (ChirpDirection::Down, -1.0)] {
            let f = fmcw_chirp(b, t, fs, dir).unwrap();
            let n = f.samples.len();
            // Phase increment between the last two samples, centred half a
            // sample before the end of the sweep.
            let dphi = (f.samples[n - 1] * f.samples[n - 2].conj()).arg();
            let inst = dphi * fs / (2.0 * PI);
            let t_mid = (n as f64 - 1.5) / fs;
            assert!((inst - sign * b * t_mid / t).abs() < 1.0, "{inst}");
            assert!((inst.abs() - b).abs() / b < 2e-3);
        }
    }

    #[test]
    fn undersampling_is_rejected() {
        assert!(fmcw_chirp(100e6, 1e-6, 50e6, ChirpDirection::Up).is_err());
        assert!(fmcw_chirp(100e6, 1e-6, 100e6, ChirpDirection::Up).is_ok());
        assert!(fmcw_chirp(0.0, 1e-6, 100e6, ChirpDirection::Up).is_err());
    }

    #[test]
    fn resolves_targets_one_resolution_cell_apart() {
        let (b, t, fs) = (100e6, 5e-6, 400e6);
        let s = fmcw_chirp(b, t, fs, ChirpDirection::Up).unwrap().samples;
        let resolution_m = SPEED_OF_LIGHT / (2.0 * b);
        // Round-trip delay difference of one resolution cell is 1/B.
        let gap = (2.0 * resolution_m / SPEED_OF_LIGHT * fs).round() as usize;
        assert_eq!(gap, 4);
        let d1 = 100;
        let echo = |targets: &[(usize, Complex64)]| {
            let mut rx = vec![Complex64::new(0.0, 0.0); s.len() + 200];
            for &(d, g) in targets {
                for (i, v) in s.iter().enumerate() {
                    rx[d + i] += g * v;
                }
            }
            matched_filter(&s, &rx)
        };
        // Rayleigh criterion: one target's first null sits one cell away.
        let single = echo(&[(d1, Complex64::new(1.0, 0.0))]);
        let peak = single[d1];
        assert!(single[d1 + gap] < 1e-2 * peak && single[d1 - gap] < 1e-2 * peak);
        assert!((1..gap).all(|k| single[d1 + k] > single[d1 + k + 1]));
        // Two targets in quadrature: peaks at both true delays with a dip
        // between them.
        let mf = echo(&[(d1, Complex64::new(1.0, 0.0)), (d1 + gap, Complex64::new(0.0, 1.0))]);
        let local_max = |i: usize| mf[i] > mf[i - 1] && mf[i] > mf[i + 1];
        assert!(local_max(d1) && local_max(d1 + gap));
        assert!(mf[d1 + gap / 2] < 0.95 * mf[d1].min(mf[d1 + gap]));
    }
}
