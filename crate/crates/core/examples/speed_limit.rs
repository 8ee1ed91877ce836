// Maximum supported speed from the subcarrier spacing.
//
// ```text
// cargo run --example speed_limit
// ```

use aeromacs::mobility::{SpeedLimitChain, PUBLISHED_MAX_SPEED_MPS};
use aeromacs::params::subcarrier_spacing;
use aeromacs::units::mps_to_kmh;
use aeromacs::OfdmaConfig;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let nominal = 10e3;
    let exact = subcarrier_spacing(&OfdmaConfig::aeromacs());
    for spacing in [nominal, exact] {
        let c = SpeedLimitChain::new(spacing, 5.1e9)?;
        println!(
            "spacing {:.1} Hz -> spread {:.0} Hz -> Tc {:.3} ms -> fD {:.1} Hz -> {:.2} m/s ({:.1} km/h)",
            c.subcarrier_spacing_hz,
            c.doppler_spread_limit_hz,
            c.min_coherence_time_s * 1e3,
            c.max_doppler_hz,
            c.max_speed_mps,
            mps_to_kmh(c.max_speed_mps)
        );
    }
    // The often-quoted figure does not follow from the chain above.
    println!("quoted limit {PUBLISHED_MAX_SPEED_MPS} m/s (inconsistent with the chain)");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
