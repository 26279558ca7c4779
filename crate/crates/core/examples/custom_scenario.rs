//! Editing a scenario in code: lower elevations lengthen the path through
//! the rain, and a mistyped field is rejected with its location.

use sagin_core::linkbudget::{BandConfig, Factor, LinkGeometry};
use sagin_core::scenario::{Scenario, DEFAULT_SCENARIO_JSON};

fn main() -> sagin_core::Result<()> {
    let mut scenario = Scenario::shipped();
    scenario.bands = vec![BandConfig::thz()];
    for elevation in [90.0, 45.0, 20.0] {
        scenario.geometry = LinkGeometry::new(0.0, 2000.0, elevation)?;
        scenario.validate()?;
        let b = &scenario.budgets(&scenario.weather)?[0];
        let c = &scenario.capacities(&scenario.weather)?[0];
        println!(
            "elevation {elevation:>4} deg: path {:>7.1} km, rain {:>6.2} dB, total {:>7.2} dB, {:>6.3} bps/Hz",
            b.path_length_km,
            b.factor(Factor::Rain),
            b.total_db,
            c.spectral_efficiency_bps_hz
        );
    }
    let broken = DEFAULT_SCENARIO_JSON.replacen("\"bandwidth_hz\": 1000000000.0", "\"bandwidth_hz\": \"1 GHz\"", 1);
    if let Err(e) = Scenario::from_json(&broken) {
        println!("rejected: {e}");
    }
    Ok(())
}
