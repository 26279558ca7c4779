//! FMCW chirp: range resolution through the matched filter, and the
//! delay-Doppler ridge of its ambiguity surface.

use sagin_core::constants::SPEED_OF_LIGHT;
use sagin_core::waveform::{ambiguity, fmcw_chirp, matched_filter, papr, ChirpDirection};

fn main() -> sagin_core::Result<()> {
    let (b, t, fs) = (100e6, 5e-6, 400e6);
    let chirp = fmcw_chirp(b, t, fs, ChirpDirection::Up)?;
    println!("PAPR {:.3e} dB, range resolution {:.2} m", papr(&chirp.samples)?, SPEED_OF_LIGHT / (2.0 * b));
    let mf = matched_filter(&chirp.samples, &chirp.samples);
    println!("matched filter, first lags: {:?}", mf.iter().take(6).map(|v| v.round()).collect::<Vec<_>>());

    let short = fmcw_chirp(1e6, 64e-6, 1e6, ChirpDirection::Up)?;
    let delays: Vec<f64> = (-10..=10).map(|k| k as f64 / 1e6).collect();
    for k in [-2.0, 0.0, 3.0] {
        let nu = k / 64e-6;
        let s = ambiguity(&short, &delays, &[nu])?;
        println!("Doppler {nu:>9.1} Hz -> peak delay {:>5.1} us", s.peak().delay_s * 1e6);
    }
    Ok(())
}
