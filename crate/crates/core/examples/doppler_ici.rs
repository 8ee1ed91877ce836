// Doppler shift, intercarrier interference and coherence time across taxi and take-off speeds.
//
// ```text
// cargo run --example doppler_ici
// ```

use aeromacs::mobility::{ici_normalized, DEFAULT_ES_DBM};
use aeromacs::params::symbol_time;
use aeromacs::units::kmh_to_mps;
use aeromacs::{IciInterpretation, MobilityAnalysis, OfdmaConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = OfdmaConfig::aeromacs();
    let ts = symbol_time(&cfg);
    println!("{:>6} {:>9} {:>9} {:>9} {:>9}", "km/h", "fD Hz", "ICI dBm", "S/I dB", "Tc ms");
    for kmh in [0.0, 30.0, 60.0, 100.0, 150.0] {
        let a = MobilityAnalysis::at_speed(
            kmh_to_mps(kmh),
            5.1e9,
            DEFAULT_ES_DBM,
            ts,
            cfg.n_subcarriers,
            IciInterpretation::SamplePeriod,
        )?;
        let ici = a.ici_power_dbm.map_or("-".to_string(), |v| format!("{v:.2}"));
        println!(
            "{kmh:>6} {:>9.1} {ici:>9} {:>9} {:>9}",
            a.doppler_hz,
            a.signal_to_ici_db.to_string(),
            a.coherence_time_s.map(|t| t * 1e3).to_string()
        );
    }

    // The literal reading saturates near full power at any speed.
    for fd_ts in [0.01, 0.06] {
        println!(
            "fd*Ts={fd_ts}: sample-period {:.3e}, literal {:.3}",
            ici_normalized(fd_ts, cfg.n_subcarriers, IciInterpretation::SamplePeriod),
            ici_normalized(fd_ts, cfg.n_subcarriers, IciInterpretation::Literal)
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
