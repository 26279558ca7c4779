//! Serializable description of one waveform configuration, used to draw
//! random frames for Monte Carlo metrics and by the command-line front end.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{
    afdm_c1_for_doppler, afdm_modulate, dfts_modulate, fmcw_chirp, ofdm_modulate, otfs_modulate, qpsk,
    ChirpDirection, WaveformFamily, WaveformFrame,
};
use crate::error::Result;

fn one() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", deny_unknown_fields)]
pub enum WaveformSpec {
    #[serde(rename = "OFDM")]
    Ofdm {
        subcarriers: usize,
        #[serde(default)]
        cp_len: usize,
        #[serde(default = "one")]
        symbols: usize,
    },
    /// `spread_len` defaults to `subcarriers` (full-band localized mapping).
    #[serde(rename = "DFTS_OFDM")]
    DftsOfdm {
        subcarriers: usize,
        #[serde(default)]
        spread_len: Option<usize>,
        #[serde(default)]
        cp_len: usize,
        #[serde(default = "one")]
        symbols: usize,
    },
    #[serde(rename = "OTFS")]
    Otfs { delay_bins: usize, doppler_bins: usize },
    /// Without an explicit `c1`, the rate is tuned to `max_doppler_bins`.
    #[serde(rename = "AFDM")]
    Afdm {
        len: usize,
        #[serde(default)]
        c1: Option<f64>,
        #[serde(default)]
        max_doppler_bins: f64,
        #[serde(default)]
        c2: f64,
    },
    #[serde(rename = "FMCW")]
    Fmcw {
        bandwidth_hz: f64,
        duration_s: f64,
        #[serde(default)]
        direction: ChirpDirection,
    },
}

impl WaveformSpec {
    pub fn family(&self) -> WaveformFamily {
        match self {
            WaveformSpec::Ofdm { .. } => WaveformFamily::Ofdm,
            WaveformSpec::DftsOfdm { .. } => WaveformFamily::DftsOfdm,
            WaveformSpec::Otfs { .. } => WaveformFamily::Otfs,
            WaveformSpec::Afdm { .. } => WaveformFamily::Afdm,
            WaveformSpec::Fmcw { .. } => WaveformFamily::Fmcw,
        }
    }

    /// Number of data symbols one frame carries (zero for FMCW).
    pub fn symbol_count(&self) -> usize {
        match *self {
            WaveformSpec::Ofdm {
                subcarriers, symbols, ..
            } => subcarriers * symbols,
            WaveformSpec::DftsOfdm {
                subcarriers,
                spread_len,
                symbols,
                ..
            } => spread_len.unwrap_or(subcarriers) * symbols,
            WaveformSpec::Otfs {
                delay_bins,
                doppler_bins,
            } => delay_bins * doppler_bins,
            WaveformSpec::Afdm { len, .. } => len,
            WaveformSpec::Fmcw { .. } => 0,
        }
    }

    /// Modulates the given symbols; FMCW ignores them.
    pub fn modulate(&self, symbols: &[num_complex::Complex64], sample_rate_hz: f64) -> Result<WaveformFrame> {
        match *self {
            WaveformSpec::Ofdm {
                subcarriers, cp_len, ..
            } => ofdm_modulate(symbols, subcarriers, cp_len, sample_rate_hz),
            WaveformSpec::DftsOfdm {
                subcarriers,
                spread_len,
                cp_len,
                ..
            } => dfts_modulate(
                symbols,
                spread_len.unwrap_or(subcarriers),
                subcarriers,
                cp_len,
                sample_rate_hz,
            ),
            WaveformSpec::Otfs {
                delay_bins,
                doppler_bins,
            } => otfs_modulate(symbols, delay_bins, doppler_bins, sample_rate_hz),
            WaveformSpec::Afdm {
                len,
                c1,
                max_doppler_bins,
                c2,
            } => afdm_modulate(
                symbols,
                c1.unwrap_or_else(|| afdm_c1_for_doppler(max_doppler_bins, len)),
                c2,
                sample_rate_hz,
            ),
            WaveformSpec::Fmcw {
                bandwidth_hz,
                duration_s,
                direction,
            } => fmcw_chirp(bandwidth_hz, duration_s, sample_rate_hz, direction),
        }
    }

    /// One frame of fresh unit-energy QPSK.
    pub fn random_frame<R: Rng + ?Sized>(&self, rng: &mut R, sample_rate_hz: f64) -> Result<WaveformFrame> {
        let symbols = qpsk(rng, self.symbol_count());
        self.modulate(&symbols, sample_rate_hz)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn parses_every_family() {
        let cases = [
            (r#"{"family":"OFDM","subcarriers":64}"#, WaveformFamily::Ofdm, 64),
            (r#"{"family":"DFTS_OFDM","subcarriers":64,"spread_len":16,"symbols":2}"#, WaveformFamily::DftsOfdm, 32),
            (r#"{"family":"OTFS","delay_bins":8,"doppler_bins":4}"#, WaveformFamily::Otfs, 32),
            (r#"{"family":"AFDM","len":32,"max_doppler_bins":2}"#, WaveformFamily::Afdm, 32),
            (r#"{"family":"FMCW","bandwidth_hz":1e6,"duration_s":1e-4,"direction":"down"}"#, WaveformFamily::Fmcw, 0),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (json, family, count) in cases {
            let spec: WaveformSpec = serde_json::from_str(json).unwrap();
            assert_eq!(spec.family(), family);
            assert_eq!(spec.symbol_count(), count);
            let frame = spec.random_frame(&mut rng, 1e6).unwrap();
            assert_eq!(frame.family, family);
        }
    }

    #[test]
    fn rejects_unknown_family_and_fields() {
        assert!(serde_json::from_str::<WaveformSpec>(r#"{"family":"CDMA","len":4}"#).is_err());
        assert!(serde_json::from_str::<WaveformSpec>(r#"{"family":"OTFS","delay_bins":4,"doppler_bins":4,"x":1}"#).is_err());
    }
}
