//! Specific attenuation of Marshall-Palmer rain and monodisperse fog at
//! mmWave and THz carriers.

use sagin_core::scattering::{
    specific_attenuation, ParticlePopulation, RefractiveIndexModel, SizeDistribution, Species,
};

fn main() -> sagin_core::Result<()> {
    println!("rain (dB/km)");
    for rate in [1.0, 7.5, 25.0, 50.0] {
        let pop = ParticlePopulation {
            species: Species::Rain,
            distribution: SizeDistribution::marshall_palmer(rate),
            refractive_index: RefractiveIndexModel::default(),
        };
        println!(
            "  {rate:>5.1} mm/h   20 GHz {:>7.3}   0.3 THz {:>7.3}",
            specific_attenuation(&pop, 20e9)?,
            specific_attenuation(&pop, 0.3e12)?
        );
    }
    let fog = ParticlePopulation {
        species: Species::Fog,
        distribution: SizeDistribution::monodisperse_from_lwc(20e-6, 0.1),
        refractive_index: RefractiveIndexModel::default(),
    };
    println!(
        "fog 0.1 g/m^3: 20 GHz {:.4} dB/km, 0.3 THz {:.4} dB/km",
        specific_attenuation(&fog, 20e9)?,
        specific_attenuation(&fog, 0.3e12)?
    );
    Ok(())
}
