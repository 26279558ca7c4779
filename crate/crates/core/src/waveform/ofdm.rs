//! OFDM and DFT-spread OFDM with a cyclic prefix.

use num_complex::Complex64;

use super::{check_rate, dft, FrameGrid, WaveformFamily, WaveformFrame};
use crate::error::{Error, Result};

fn dimension(msg: String) -> Error {
    Error::Dimension(msg)
}

fn check_layout(len: usize, subcarriers: usize, cp_len: usize) -> Result<usize> {
    if subcarriers < 2 || !subcarriers.is_power_of_two() {
        return Err(dimension(format!("subcarrier count must be a power of two >= 2, got {subcarriers}")));
    }
    if cp_len >= subcarriers {
        return Err(dimension(format!("cyclic prefix {cp_len} must be shorter than {subcarriers}")));
    }
    if len == 0 || !len.is_multiple_of(subcarriers) {
        return Err(dimension(format!(
            "{len} symbols do not fill whole OFDM symbols of {subcarriers} subcarriers"
        )));
    }
    Ok(len / subcarriers)
}

fn modulate_blocks(freq: &[Complex64], subcarriers: usize, cp_len: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(freq.len() / subcarriers * (subcarriers + cp_len));
    for block in freq.chunks(subcarriers) {
        let mut t = block.to_vec();
        dft::inverse(&mut t);
        out.extend_from_slice(&t[subcarriers - cp_len..]);
        out.extend_from_slice(&t);
    }
    out
}

fn demodulate_blocks(samples: &[Complex64], subcarriers: usize, cp_len: usize, symbols: usize) -> Result<Vec<Complex64>> {
    let stride = subcarriers + cp_len;
    if samples.len() != stride * symbols {
        return Err(dimension(format!(
            "frame holds {} samples, expected {symbols} x ({subcarriers} + {cp_len})",
            samples.len()
        )));
    }
    let mut out = Vec::with_capacity(subcarriers * symbols);
    for chunk in samples.chunks(stride) {
        let mut f = chunk[cp_len..].to_vec();
        dft::forward(&mut f);
        out.extend(f);
    }
    Ok(out)
}

/// OFDM: each run of `subcarriers` symbols becomes one inverse-DFT block
/// preceded by its last `cp_len` samples.
pub fn ofdm_modulate(
    symbols: &[Complex64],
    subcarriers: usize,
    cp_len: usize,
    sample_rate_hz: f64,
) -> Result<WaveformFrame> {
    check_rate(sample_rate_hz)?;
    let n_sym = check_layout(symbols.len(), subcarriers, cp_len)?;
    Ok(WaveformFrame {
        samples: modulate_blocks(symbols, subcarriers, cp_len),
        sample_rate_hz,
        family: WaveformFamily::Ofdm,
        grid: FrameGrid::Multicarrier {
            subcarriers,
            cp_len,
            symbols: n_sym,
            spread_len: subcarriers,
        },
    })
}

fn multicarrier_layout(frame: &WaveformFrame) -> Result<(usize, usize, usize, usize)> {
    match frame.grid {
        FrameGrid::Multicarrier {
            subcarriers,
            cp_len,
            symbols,
            spread_len,
        } => Ok((subcarriers, cp_len, symbols, spread_len)),
        other => Err(dimension(format!("expected a multicarrier frame, got {other:?}"))),
    }
}

pub fn ofdm_demodulate(frame: &WaveformFrame) -> Result<Vec<Complex64>> {
    let (n, cp, s, _) = multicarrier_layout(frame)?;
    demodulate_blocks(&frame.samples, n, cp, s)
}

/// Forward unitary DFT of each `block_len` run of symbols.
pub fn dft_spread(symbols: &[Complex64], block_len: usize) -> Result<Vec<Complex64>> {
    if block_len == 0 || symbols.is_empty() || !symbols.len().is_multiple_of(block_len) {
        return Err(dimension(format!(
            "{} symbols do not fill whole spreading blocks of {block_len}",
            symbols.len()
        )));
    }
    let mut out = symbols.to_vec();
    out.chunks_mut(block_len).for_each(dft::forward);
    Ok(out)
}

/// DFT-spread OFDM with localized mapping: each block of `spread_len`
/// symbols is DFT-spread onto the lowest `spread_len` of `subcarriers`
/// subcarriers; the rest stay empty.
pub fn dfts_modulate(
    symbols: &[Complex64],
    spread_len: usize,
    subcarriers: usize,
    cp_len: usize,
    sample_rate_hz: f64,
) -> Result<WaveformFrame> {
    check_rate(sample_rate_hz)?;
    if spread_len > subcarriers {
        return Err(dimension(format!(
            "spreading block {spread_len} exceeds {subcarriers} subcarriers"
        )));
    }
    let spread = dft_spread(symbols, spread_len)?;
    let mut freq = Vec::with_capacity(spread.len() / spread_len * subcarriers);
    for block in spread.chunks(spread_len) {
        freq.extend_from_slice(block);
        freq.resize(freq.len() + subcarriers - spread_len, Complex64::new(0.0, 0.0));
    }
    let n_sym = check_layout(freq.len(), subcarriers, cp_len)?;
    Ok(WaveformFrame {
        samples: modulate_blocks(&freq, subcarriers, cp_len),
        sample_rate_hz,
        family: WaveformFamily::DftsOfdm,
        grid: FrameGrid::Multicarrier {
            subcarriers,
            cp_len,
            symbols: n_sym,
            spread_len,
        },
    })
}

pub fn dfts_demodulate(frame: &WaveformFrame) -> Result<Vec<Complex64>> {
    let (n, cp, s, m) = multicarrier_layout(frame)?;
    let freq = demodulate_blocks(&frame.samples, n, cp, s)?;
    let mut out = Vec::with_capacity(m * s);
    for block in freq.chunks(n) {
        let mut b = block[..m].to_vec();
        dft::inverse(&mut b);
        out.extend(b);
    }
    Ok(out)
}

/// Time-domain samples of one frequency-domain block, interpolated by
/// `factor` through zero padding in the middle of the spectrum.
pub fn oversample(freq: &[Complex64], factor: usize) -> Vec<Complex64> {
    let n = freq.len();
    let factor = factor.max(1);
    let mut padded = vec![Complex64::new(0.0, 0.0); n * factor];
    let half = n.div_ceil(2);
    padded[..half].copy_from_slice(&freq[..half]);
    padded[n * factor - (n - half)..].copy_from_slice(&freq[half..]);
    dft::inverse(&mut padded);
    padded
}
