//! Attenuation breakdown of every band in the shipped scenario, for each
//! weather condition of its sweep.

use sagin_core::linkbudget::{Factor, SUB_THRESHOLD_DB};
use sagin_core::scenario::Scenario;

fn main() -> sagin_core::Result<()> {
    let scenario = Scenario::shipped();
    for weather in scenario.weathers() {
        println!("== {}", weather.kind().name());
        for b in scenario.budgets(&weather)? {
            print!("{:>7}", b.band.name());
            for f in Factor::ALL {
                let v = b.factor(f);
                if v < SUB_THRESHOLD_DB {
                    print!("  {}=<0.1", f.name());
                } else {
                    print!("  {}={v:.2}", f.name());
                }
            }
            println!("  total={:.2} dB", b.total_db);
        }
    }
    Ok(())
}
