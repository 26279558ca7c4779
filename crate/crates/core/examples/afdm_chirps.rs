//! AFDM with the chirp rate tuned to the Doppler spread, and its reduction
//! to plain OFDM when both chirps vanish.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sagin_core::waveform::{afdm_c1_for_doppler, afdm_demodulate, afdm_modulate, ofdm_modulate, qpsk};

fn main() -> sagin_core::Result<()> {
    let n = 128;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let s = qpsk(&mut rng, n);
    let c1 = afdm_c1_for_doppler(2.0, n);
    let frame = afdm_modulate(&s, c1, 0.0, 1e6)?;
    let back = afdm_demodulate(&frame)?;
    let err = s.iter().zip(&back).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    println!("c1 = {c1:.6}, round-trip error {err:.2e}");
    let plain = afdm_modulate(&s, 0.0, 0.0, 1e6)?;
    let ofdm = ofdm_modulate(&s, n, 0, 1e6)?;
    let gap = plain.samples.iter().zip(&ofdm.samples).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    println!("c1 = c2 = 0 vs OFDM: max difference {gap:.2e}");
    Ok(())
}
