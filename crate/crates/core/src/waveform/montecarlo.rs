//! Seeded Monte Carlo PAPR statistics.
//!
//! Frame `i` draws its symbols from a ChaCha8 stream selected by `i` under
//! the experiment seed, so results do not depend on the worker count.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{dft, fmcw_chirp, oversample, papr, FrameGrid, WaveformFrame, WaveformSpec};
use crate::error::{config, Result};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 20_240_917;

/// Band-limited interpolation of a frame by `factor`.
///
/// Multicarrier and delay-Doppler frames are interpolated block by block,
/// since each block is one inverse DFT. FMCW is resampled from its
/// closed form. AFDM is interpolated over the whole frame.
pub fn oversampled(frame: &WaveformFrame, factor: usize) -> Result<Vec<Complex64>> {
    let factor = factor.max(1);
    if factor == 1 {
        return Ok(frame.samples.clone());
    }
    let interp = |block: &[Complex64]| {
        let mut f = block.to_vec();
        dft::forward(&mut f);
        oversample(&f, factor)
    };
    Ok(match frame.grid {
        FrameGrid::Multicarrier {
            subcarriers, cp_len, ..
        } => frame
            .samples
            .chunks(subcarriers + cp_len)
            .flat_map(|chunk| {
                let body = interp(&chunk[cp_len..]);
                let tail = body[body.len() - cp_len * factor..].to_vec();
                tail.into_iter().chain(body)
            })
            .collect(),
        FrameGrid::DelayDoppler { delay_bins, .. } => frame.samples.chunks(delay_bins).flat_map(interp).collect(),
        FrameGrid::Chirp { .. } => interp(&frame.samples),
        FrameGrid::Sweep {
            bandwidth_hz,
            duration_s,
            direction,
        } => fmcw_chirp(bandwidth_hz, duration_s, frame.sample_rate_hz * factor as f64, direction)?.samples,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PaprExperiment {
    pub waveform: WaveformSpec,
    #[serde(default = "unit_rate")]
    pub sample_rate_hz: f64,
    #[serde(default = "four")]
    pub oversampling: usize,
    pub frames: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

fn unit_rate() -> f64 {
    1.0
}
fn four() -> usize {
    4
}
fn default_seed() -> u64 {
    DEFAULT_SEED
}

impl PaprExperiment {
    pub fn new(waveform: WaveformSpec, frames: usize, seed: u64) -> Self {
        Self {
            waveform,
            sample_rate_hz: 1.0,
            oversampling: 4,
            frames,
            seed,
        }
    }
}

/// Per-frame PAPR (dB), in frame order.
pub fn papr_samples(exp: &PaprExperiment) -> Result<Vec<f64>> {
    if exp.frames == 0 {
        return Err(config("PAPR experiment needs at least one frame"));
    }
    (0..exp.frames)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(exp.seed);
            rng.set_stream(i as u64);
            let frame = exp.waveform.random_frame(&mut rng, exp.sample_rate_hz)?;
            papr(&oversampled(&frame, exp.oversampling)?)
        })
        .collect()
}

/// Nearest-rank percentile (`p` in percent) of unsorted data.
pub fn percentile(data: &[f64], p: f64) -> f64 {
    if data.is_empty() {
        return f64::NAN;
    }
    let mut v = data.to_vec();
    v.sort_by(f64::total_cmp);
    let rank = ((p / 100.0) * v.len() as f64).ceil() as usize;
    v[rank.clamp(1, v.len()) - 1]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PaprStats {
    pub frames: usize,
    pub mean_db: f64,
    pub median_db: f64,
    pub p90_db: f64,
    pub p99_db: f64,
    pub p999_db: f64,
    pub max_db: f64,
}

impl PaprStats {
    pub fn from_samples(samples: &[f64]) -> Self {
        Self {
            frames: samples.len(),
            mean_db: samples.iter().sum::<f64>() / samples.len() as f64,
            median_db: percentile(samples, 50.0),
            p90_db: percentile(samples, 90.0),
            p99_db: percentile(samples, 99.0),
            p999_db: percentile(samples, 99.9),
            max_db: samples.iter().copied().fold(f64::MIN, f64::max),
        }
    }

    pub fn run(exp: &PaprExperiment) -> Result<Self> {
        Ok(Self::from_samples(&papr_samples(exp)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::waveform::ChirpDirection;

    fn ofdm(n: usize) -> WaveformSpec {
        WaveformSpec::Ofdm {
            subcarriers: n,
            cp_len: 0,
            symbols: 1,
        }
    }

    fn dfts(n: usize) -> WaveformSpec {
        WaveformSpec::DftsOfdm {
            subcarriers: n,
            spread_len: None,
            cp_len: 0,
            symbols: 1,
        }
    }

    #[test]
    fn nearest_rank() {
        let d: Vec<f64> = (1..=100).rev().map(f64::from).collect();
        assert_eq!(percentile(&d, 99.0), 99.0);
        assert_eq!(percentile(&d, 100.0), 100.0);
        assert_eq!(percentile(&d, 0.0), 1.0);
        assert_eq!(percentile(&[3.0], 50.0), 3.0);
    }

    #[test]
    fn ofdm_tail_and_dft_spreading_gain() {
        let o = PaprStats::run(&PaprExperiment::new(ofdm(256), 10_000, DEFAULT_SEED)).unwrap();
        let d = PaprStats::run(&PaprExperiment::new(dfts(256), 10_000, DEFAULT_SEED)).unwrap();
        assert!((9.0..=12.0).contains(&o.p99_db), "{o:?}");
        assert!(o.p99_db - d.p99_db >= 2.0, "{o:?} {d:?}");
    }

    #[test]
    fn constant_envelope_chirp_stays_flat_when_oversampled() {
        let spec = WaveformSpec::Fmcw {
            bandwidth_hz: 1e6,
            duration_s: 1e-4,
            direction: ChirpDirection::Up,
        };
        let mut exp = PaprExperiment::new(spec, 3, 1);
        exp.sample_rate_hz = 2e6;
        assert!(papr_samples(&exp).unwrap().iter().all(|p| p.abs() < 1e-9));
    }

    #[test]
    fn oversampling_keeps_cyclic_prefix_and_slot_structure() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let f = WaveformSpec::Ofdm {
            subcarriers: 16,
            cp_len: 4,
            symbols: 2,
        }
        .random_frame(&mut rng, 1.0)
        .unwrap();
        let o = oversampled(&f, 4).unwrap();
        assert_eq!(o.len(), 4 * f.samples.len());
        // Decimating recovers the original samples up to the 1/2 gain.
        for (i, s) in f.samples.iter().enumerate() {
            assert!((o[4 * i] * 2.0 - s).norm() < 1e-12);
        }
        let g = WaveformSpec::Otfs {
            delay_bins: 8,
            doppler_bins: 4,
        }
        .random_frame(&mut rng, 1.0)
        .unwrap();
        assert_eq!(oversampled(&g, 4).unwrap().len(), 128);
    }

    #[test]
    fn independent_of_thread_count() {
        let exp = PaprExperiment::new(ofdm(64), 500, 77);
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| papr_samples(&exp).unwrap())
        };
        let one = run(1);
        assert_eq!(one, run(4));
        assert_ne!(one, papr_samples(&PaprExperiment::new(ofdm(64), 500, 78)).unwrap());
    }
}
