//! Sparse delay-Doppler channel acting cyclically on a frame, as if the
//! frame carried a prefix at least as long as the largest delay.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::WaveformFrame;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathTap {
    pub gain: Complex64,
    pub delay_samples: usize,
    pub doppler_hz: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct DelayDopplerChannel {
    pub taps: Vec<PathTap>,
}

impl DelayDopplerChannel {
    /// `r[t] = sum_p g_p s[(t - d_p) mod L] exp(j 2 pi nu_p t / fs)`.
    pub fn apply(&self, frame: &WaveformFrame) -> WaveformFrame {
        let len = frame.samples.len();
        let mut out = vec![Complex64::new(0.0, 0.0); len];
        for tap in &self.taps {
            let step = 2.0 * PI * tap.doppler_hz / frame.sample_rate_hz;
            for (t, r) in out.iter_mut().enumerate() {
                let src = (t + len - tap.delay_samples % len) % len;
                *r += tap.gain * frame.samples[src] * Complex64::from_polar(1.0, step * t as f64);
            }
        }
        WaveformFrame {
            samples: out,
            ..frame.clone()
        }
    }
}
