//! SNR and spectral efficiency of the three bands across weather.

use sagin_core::scenario::Scenario;

fn main() -> sagin_core::Result<()> {
    let scenario = Scenario::shipped();
    for weather in scenario.weathers() {
        let caps = scenario.capacities(&weather)?;
        let best = caps
            .iter()
            .max_by(|a, b| a.spectral_efficiency_bps_hz.total_cmp(&b.spectral_efficiency_bps_hz))
            .expect("at least one band");
        println!("== {} (best: {})", weather.kind().name(), best.band.name());
        for c in &caps {
            println!(
                "  {:>7}  SNR {:>8.2} dB  {:>7.3} bps/Hz  {:>10.3e} bps",
                c.band.name(),
                c.snr_db,
                c.spectral_efficiency_bps_hz,
                c.bits_per_s
            );
        }
    }
    Ok(())
}
