//! PAPR tails of OFDM, DFT-spread OFDM, OTFS and AFDM from seeded Monte
//! Carlo runs on 4x oversampled frames.

use sagin_core::waveform::{PaprExperiment, PaprStats, WaveformSpec, DEFAULT_SEED};

fn main() -> sagin_core::Result<()> {
    let specs = [
        WaveformSpec::Ofdm { subcarriers: 256, cp_len: 0, symbols: 1 },
        WaveformSpec::DftsOfdm { subcarriers: 256, spread_len: None, cp_len: 0, symbols: 1 },
        WaveformSpec::DftsOfdm { subcarriers: 256, spread_len: Some(64), cp_len: 0, symbols: 1 },
        WaveformSpec::Otfs { delay_bins: 16, doppler_bins: 16 },
        WaveformSpec::Afdm { len: 256, c1: None, max_doppler_bins: 2.0, c2: 0.0 },
    ];
    for spec in specs {
        let s = PaprStats::run(&PaprExperiment::new(spec.clone(), 10_000, DEFAULT_SEED))?;
        println!(
            "{:>10} ({} symbols)  median {:>5.2} dB  p99 {:>5.2} dB  max {:>5.2} dB",
            spec.family().name(),
            spec.symbol_count(),
            s.median_db,
            s.p99_db,
            s.max_db
        );
    }
    Ok(())
}
