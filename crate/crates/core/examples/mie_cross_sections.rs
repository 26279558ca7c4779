//! Extinction of 2 mm rain drops and 20 um fog droplets at the three
//! carriers: size parameter, regime, efficiency and cross-section.

use sagin_core::constants::wavelength;
use sagin_core::scattering::{regime, size_parameter, water_refractive_index, ExtinctionModel};

fn main() -> sagin_core::Result<()> {
    let model = ExtinctionModel::default();
    println!("{:>11} {:>9} {:>11} {:>9} {:>8} {:>11}", "f_Hz", "r_m", "alpha", "regime", "Q_ext", "sigma_m2");
    for f in [20e9, 0.3e12, 193.4e12] {
        let m = water_refractive_index(f, 288.15)?;
        for r in [2e-3, 20e-6] {
            let alpha = size_parameter(r, wavelength(f))?;
            let q = model.efficiencies(alpha, m)?.with_radius(r);
            println!(
                "{f:>11.3e} {r:>9.1e} {alpha:>11.4} {:>9} {:>8.4} {:>11.4e}",
                regime(alpha).name(),
                q.q_ext,
                q.sigma_ext
            );
        }
    }
    Ok(())
}
