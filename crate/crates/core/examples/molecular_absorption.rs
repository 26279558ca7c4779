//! Water-vapour absorption: a sea-level spectrum through the 22 and 183 GHz
//! lines, then how a 0.3 THz zenith path accumulates loss with altitude.

use sagin_core::absorption::MolecularAbsorption;
use sagin_core::atmosphere::AtmosphereProfile;

fn main() -> sagin_core::Result<()> {
    let profile = AtmosphereProfile::default();
    let model = MolecularAbsorption::default();
    let surface = MolecularAbsorption::state_at(&profile, 0.0)?;
    println!("sea-level specific absorption");
    for f_ghz in [10.0, 22.235, 60.0, 120.0, 183.31, 250.0, 300.0, 380.2, 448.0, 557.0] {
        let k = model.absorption_coefficient(f_ghz * 1e9, &surface)?;
        println!("  {f_ghz:>8.3} GHz  {k:>10.4} dB/km");
    }
    let f = 0.3e12;
    let total = model.path_absorption(&profile, f, 0.0, 100.0, 90.0)?;
    println!("0.3 THz zenith absorption: {total:.3} dB");
    for top in [1.0, 2.0, 5.0, 10.0] {
        let part = model.path_absorption(&profile, f, 0.0, top, 90.0)?;
        println!("  below {top:>4} km: {:>6.2} %", 100.0 * part / total);
    }
    Ok(())
}
