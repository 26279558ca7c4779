//! OTFS: symbols on an `M x N` delay-Doppler grid, moved to the
//! time-frequency plane by the inverse symplectic finite Fourier transform
//! and transmitted slot by slot with a rectangular pulse.
//!
//! Grid layout is row-major in delay: `x[l * N + k]` holds delay bin `l`,
//! Doppler bin `k`. The frame carries `N` slots of `M` samples.

use num_complex::Complex64;

use super::{check_rate, dft, FrameGrid, WaveformFamily, WaveformFrame};
use crate::error::{Error, Result};

fn check_grid(len: usize, m: usize, n: usize) -> Result<()> {
    if m < 2 || n < 2 {
        return Err(Error::Dimension(format!("delay-Doppler grid must be at least 2 x 2, got {m} x {n}")));
    }
    if len != m * n {
        return Err(Error::Dimension(format!("{len} symbols do not fill a {m} x {n} grid")));
    }
    Ok(())
}

/// `X[m, n] = (MN)^-1/2 sum_{l,k} x[l, k] exp(j 2 pi (n k / N - m l / M))`,
/// stored as `X[m * N + n]`.
fn isfft(x: &[Complex64], m: usize, n: usize) -> Vec<Complex64> {
    let mut out = x.to_vec();
    // Doppler -> time: inverse DFT along k for each delay row.
    out.chunks_mut(n).for_each(dft::inverse);
    // Delay -> frequency: forward DFT along l for each column.
    let mut col = vec![Complex64::new(0.0, 0.0); m];
    for c in 0..n {
        for r in 0..m {
            col[r] = out[r * n + c];
        }
        dft::forward(&mut col);
        for r in 0..m {
            out[r * n + c] = col[r];
        }
    }
    out
}

fn sfft(tf: &[Complex64], m: usize, n: usize) -> Vec<Complex64> {
    let mut out = tf.to_vec();
    let mut col = vec![Complex64::new(0.0, 0.0); m];
    for c in 0..n {
        for r in 0..m {
            col[r] = out[r * n + c];
        }
        dft::inverse(&mut col);
        for r in 0..m {
            out[r * n + c] = col[r];
        }
    }
    out.chunks_mut(n).for_each(dft::forward);
    out
}

pub fn otfs_modulate(
    dd_symbols: &[Complex64],
    delay_bins: usize,
    doppler_bins: usize,
    sample_rate_hz: f64,
) -> Result<WaveformFrame> {
    check_rate(sample_rate_hz)?;
    let (m, n) = (delay_bins, doppler_bins);
    check_grid(dd_symbols.len(), m, n)?;
    let tf = isfft(dd_symbols, m, n);
    // Heisenberg transform: one M-point inverse DFT per time slot.
    let mut samples = Vec::with_capacity(m * n);
    let mut slot = vec![Complex64::new(0.0, 0.0); m];
    for t in 0..n {
        for f in 0..m {
            slot[f] = tf[f * n + t];
        }
        dft::inverse(&mut slot);
        samples.extend_from_slice(&slot);
    }
    Ok(WaveformFrame {
        samples,
        sample_rate_hz,
        family: WaveformFamily::Otfs,
        grid: FrameGrid::DelayDoppler {
            delay_bins: m,
            doppler_bins: n,
        },
    })
}

pub fn otfs_demodulate(frame: &WaveformFrame) -> Result<Vec<Complex64>> {
    let FrameGrid::DelayDoppler {
        delay_bins: m,
        doppler_bins: n,
    } = frame.grid
    else {
        return Err(Error::Dimension(format!("expected a delay-Doppler frame, got {:?}", frame.grid)));
    };
    check_grid(frame.samples.len(), m, n)?;
    let mut tf = vec![Complex64::new(0.0, 0.0); m * n];
    for (t, slot) in frame.samples.chunks(m).enumerate() {
        let mut s = slot.to_vec();
        dft::forward(&mut s);
        for f in 0..m {
            tf[f * n + t] = s[f];
        }
    }
    Ok(sfft(&tf, m, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::waveform::{energy, qpsk, DelayDopplerChannel, PathTap};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    #[test]
    fn round_trip_and_parseval() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (m, n) in [(16, 8), (2, 2), (32, 16), (12, 10)] {
            let x = qpsk(&mut rng, m * n);
            let f = otfs_modulate(&x, m, n, 1e6).unwrap();
            assert!((f.energy() - energy(&x)).abs() / energy(&x) < 1e-10);
            let y = otfs_demodulate(&f).unwrap();
            let err = x.iter().zip(&y).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            assert!(err < 1e-10);
        }
    }

    #[test]
    fn isfft_matches_definition() {
        let (m, n) = (4, 3);
        let x: Vec<Complex64> = (0..12).map(|i| Complex64::new(i as f64, -(i as f64) / 3.0)).collect();
        let tf = isfft(&x, m, n);
        for mm in 0..m {
            for nn in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for l in 0..m {
                    for k in 0..n {
                        let ph = 2.0 * PI * ((nn * k) as f64 / n as f64 - (mm * l) as f64 / m as f64);
                        acc += x[l * n + k] * Complex64::from_polar(1.0, ph);
                    }
                }
                acc /= ((m * n) as f64).sqrt();
                assert!((tf[mm * n + nn] - acc).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_degenerate_grids() {
        let x = vec![Complex64::new(1.0, 0.0); 8];
        assert!(otfs_modulate(&x, 1, 8, 1.0).is_err());
        assert!(otfs_modulate(&x, 4, 4, 1.0).is_err());
    }

    #[test]
    fn impulse_through_one_tap_channel_stays_an_impulse() {
        let (m, n) = (16, 8);
        let fs = 1.0e6;
        let (l1, k1) = (3usize, 2usize);
        let mut x = vec![Complex64::new(0.0, 0.0); m * n];
        x[l1 * n + k1] = Complex64::new(1.0, 0.0);
        let f = otfs_modulate(&x, m, n, fs).unwrap();
        // On-grid tap: 5 samples of delay, 3 Doppler bins of fs / (M N).
        let (l0, k0) = (5usize, 3usize);
        let ch = DelayDopplerChannel {
            taps: vec![PathTap {
                gain: Complex64::new(0.8, 0.0),
                delay_samples: l0,
                doppler_hz: k0 as f64 * fs / (m * n) as f64,
            }],
        };
        let y = otfs_demodulate(&ch.apply(&f)).unwrap();
        let target = ((l1 + l0) % m) * n + (k1 + k0) % n;
        for (i, v) in y.iter().enumerate() {
            if i == target {
                assert!((v.norm() - 0.8).abs() < 1e-10, "{v}");
            } else {
                assert!(v.norm() < 1e-10, "leak at {i}: {v}");
            }
        }
    }
}
