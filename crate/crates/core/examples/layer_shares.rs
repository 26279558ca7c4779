//! Share of medium-induced loss accrued in the troposphere, stratosphere
//! and ionosphere under the scenario's default weather.

use sagin_core::linkbudget::layer_shares;
use sagin_core::scenario::Scenario;

fn main() -> sagin_core::Result<()> {
    let scenario = Scenario::shipped();
    for b in scenario.budgets(&scenario.weather)? {
        let shares = layer_shares(&b)?;
        print!("{:>7} medium loss {:>7.2} dB:", b.band.name(), b.medium_loss_db());
        for (layer, pct) in shares {
            print!("  {} {pct:.3}%", layer.name());
        }
        println!();
    }
    Ok(())
}
