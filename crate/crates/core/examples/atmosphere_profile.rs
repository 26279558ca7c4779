//! Temperature, pressure, water vapour and electron density of the default
//! atmosphere, with the layer each altitude falls in.

use sagin_core::atmosphere::AtmosphereProfile;

fn main() -> sagin_core::Result<()> {
    let p = AtmosphereProfile::default();
    println!("{:>8} {:>9} {:>11} {:>11} {:>11}  layer", "h_km", "T_K", "p_Pa", "rho_g_m3", "n_e_m3");
    for h in [0.0, 2.0, 5.0, 10.0, 12.0, 30.0, 55.0, 100.0, 300.0, 800.0] {
        println!(
            "{h:>8.1} {:>9.2} {:>11.4e} {:>11.4e} {:>11.4e}  {:?}",
            p.temperature(h)?,
            p.pressure(h)?,
            p.water_vapor_density(h)?,
            p.electron_density(h)?,
            p.layer_of(h)?
        );
    }
    Ok(())
}
