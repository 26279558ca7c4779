//! Free-space path loss of the three carriers over a 2000 km link.

use sagin_core::linkbudget::fspl;

fn main() -> sagin_core::Result<()> {
    let d = 2_000e3;
    for (name, f) in [("mmWave", 20e9), ("THz", 0.3e12), ("FSO", 193.4e12)] {
        println!("{name:>6}  {f:>10.3e} Hz  {:>8.2} dB", fspl(f, d)?);
    }
    Ok(())
}
