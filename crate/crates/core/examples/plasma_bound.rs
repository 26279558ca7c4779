//! Collisional plasma absorption in the Chapman ionosphere: the per-km
//! coefficient at the density peak and the whole-path loss.

use sagin_core::atmosphere::AtmosphereProfile;
use sagin_core::linkbudget::{peak_coefficient_db_per_km, plasma_frequency, plasma_loss, LinkGeometry, PlasmaModel};

fn main() -> sagin_core::Result<()> {
    let profile = AtmosphereProfile::default();
    let model = PlasmaModel::default();
    let geometry = LinkGeometry::zenith(0.0, 2000.0);
    let fp = plasma_frequency(profile.electron_profile.peak_electron_density_m3);
    println!("peak plasma frequency {:.3} MHz", fp / 1e6);
    for f in [20e6, 100e6, 1e9, 20e9, 0.3e12, 193.4e12] {
        println!(
            "{f:>10.3e} Hz  peak {:>11.4e} dB/km  path {:>11.4e} dB",
            peak_coefficient_db_per_km(f, &geometry, &profile, &model)?,
            plasma_loss(f, &geometry, &profile, &model)?
        );
    }
    Ok(())
}
