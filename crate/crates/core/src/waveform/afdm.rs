//! AFDM: `x = L(c1)^H F^H L(c2)^H s` with `L(c) = diag(exp(-j 2 pi c n^2))`
//! and `F` the unitary DFT.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{check_rate, dft, FrameGrid, WaveformFamily, WaveformFrame};
use crate::error::{Error, Result};

/// First chirp rate for a maximum Doppler of `max_doppler_bins` (in units
/// of the subcarrier spacing) on `n` subcarriers: `(2 a + 1) / (2 N)`.
pub fn afdm_c1_for_doppler(max_doppler_bins: f64, n: usize) -> f64 {
    (2.0 * max_doppler_bins + 1.0) / (2.0 * n as f64)
}

fn chirp(c: f64, len: usize, sign: f64) -> impl Iterator<Item = Complex64> {
    (0..len).map(move |i| {
        let n = i as f64;
        // Reduce c n^2 modulo 1 before scaling to keep the phase accurate.
        Complex64::from_polar(1.0, sign * 2.0 * PI * (c * n * n).fract())
    })
}

fn check(len: usize, c1: f64, c2: f64) -> Result<()> {
    if len < 2 {
        return Err(Error::Dimension(format!("AFDM needs at least 2 symbols, got {len}")));
    }
    if !(c1.is_finite() && c2.is_finite()) {
        return Err(Error::Config(format!("chirp rates must be finite, got c1 = {c1}, c2 = {c2}")));
    }
    Ok(())
}

pub fn afdm_modulate(symbols: &[Complex64], c1: f64, c2: f64, sample_rate_hz: f64) -> Result<WaveformFrame> {
    check_rate(sample_rate_hz)?;
    let n = symbols.len();
    check(n, c1, c2)?;
    let mut x: Vec<Complex64> = if c2 == 0.0 {
        symbols.to_vec()
    } else {
        symbols.iter().zip(chirp(c2, n, 1.0)).map(|(s, p)| s * p).collect()
    };
    dft::inverse(&mut x);
    if c1 != 0.0 {
        x.iter_mut().zip(chirp(c1, n, 1.0)).for_each(|(v, p)| *v *= p);
    }
    Ok(WaveformFrame {
        samples: x,
        sample_rate_hz,
        family: WaveformFamily::Afdm,
        grid: FrameGrid::Chirp { c1, c2, len: n },
    })
}

pub fn afdm_demodulate(frame: &WaveformFrame) -> Result<Vec<Complex64>> {
    let FrameGrid::Chirp { c1, c2, len } = frame.grid else {
        return Err(Error::Dimension(format!("expected a chirp-domain frame, got {:?}", frame.grid)));
    };
    if frame.samples.len() != len {
        return Err(Error::Dimension(format!("frame holds {} samples, expected {len}", frame.samples.len())));
    }
    check(len, c1, c2)?;
    let mut s: Vec<Complex64> = frame.samples.iter().zip(chirp(c1, len, -1.0)).map(|(v, p)| v * p).collect();
    dft::forward(&mut s);
    s.iter_mut().zip(chirp(c2, len, -1.0)).for_each(|(v, p)| *v *= p);
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::waveform::{energy, ofdm_modulate, qpsk};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_chirps_are_the_ofdm_core() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let s = qpsk(&mut rng, 128);
        let a = afdm_modulate(&s, 0.0, 0.0, 1.0).unwrap();
        let o = ofdm_modulate(&s, 128, 0, 1.0).unwrap();
        for (x, y) in a.samples.iter().zip(&o.samples) {
            assert!((x - y).norm() <= 1e-12);
        }
    }

    #[test]
    fn matches_matrix_definition() {
        let n = 8;
        let (c1, c2) = (afdm_c1_for_doppler(1.0, n), 0.05);
        let s: Vec<Complex64> = (0..n).map(|i| Complex64::new(1.0 + i as f64, 0.5)).collect();
        let x = afdm_modulate(&s, c1, c2, 1.0).unwrap().samples;
        for (t, xt) in x.iter().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (m, sm) in s.iter().enumerate() {
                let ph = 2.0 * PI * (c1 * (t * t) as f64 + c2 * (m * m) as f64 + (t * m) as f64 / n as f64);
                acc += sm * Complex64::from_polar(1.0, ph);
            }
            acc /= (n as f64).sqrt();
            assert!((xt - acc).norm() < 1e-12);
        }
    }

    #[test]
    fn c1_rule() {
        assert!((afdm_c1_for_doppler(2.0, 64) - 5.0 / 128.0).abs() < 1e-15);
        assert!(afdm_modulate(&[Complex64::new(1.0, 0.0)], 0.0, 0.0, 1.0).is_err());
    }

    proptest! {
        #[test]
        fn unitary_round_trip(seed in 0u64..1000, n in 2usize..300, c1 in 0.0f64..0.5, c2 in 0.0f64..0.5) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let s = qpsk(&mut rng, n);
            let f = afdm_modulate(&s, c1, c2, 1.0).unwrap();
            prop_assert!((f.energy() - energy(&s)).abs() / energy(&s) < 1e-10);
            let back = afdm_demodulate(&f).unwrap();
            let err = s.iter().zip(&back).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            prop_assert!(err < 1e-10);
        }
    }
}
