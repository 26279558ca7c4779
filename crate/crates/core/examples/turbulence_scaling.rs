//! Scintillation loss from the Hufnagel-Valley profile and its f^(7/6)
//! growth with carrier frequency.

use sagin_core::linkbudget::{turbulence_loss, CnSquaredProfile, LinkGeometry};

fn main() -> sagin_core::Result<()> {
    let hv = CnSquaredProfile::default();
    for elevation in [90.0, 45.0, 20.0] {
        let g = LinkGeometry::new(0.0, 2000.0, elevation)?;
        let base = turbulence_loss(20e9, &g, &hv)?;
        println!("elevation {elevation:>4} deg");
        for f in [20e9, 0.3e12, 193.4e12] {
            let l = turbulence_loss(f, &g, &hv)?;
            println!("  {f:>10.3e} Hz  {l:>12.4e} dB  ratio {:>10.2}", l / base);
        }
    }
    Ok(())
}
