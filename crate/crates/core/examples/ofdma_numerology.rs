// Numerology, prefix overhead and frame throughput of the default profile.
//
// ```text
// cargo run --example ofdma_numerology
// ```

use aeromacs::params::{
    cp_length, data_rate, frame_throughput, select_cp_ratio, snr_loss_db, subcarrier_spacing,
    symbol_time,
};
use aeromacs::{Direction, McsScheme, OfdmaConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = OfdmaConfig::aeromacs();
    cfg.validate()?;
    let ts = symbol_time(&cfg);
    println!("spacing      {:.2} Hz", subcarrier_spacing(&cfg));
    println!("symbol time  {:.1} us", ts * 1e6);
    println!("prefix       {:.1} us (1/{})", cp_length(&cfg) * 1e6, 1u32 << cfg.cp_ratio_log2);
    println!("SNR loss     {:.4} dB", snr_loss_db(&cfg));
    for bits in [2, 4, 6] {
        println!("raw rate b={bits} {:.3} Mbit/s", data_rate(&cfg, bits) / 1e6);
    }

    // Shortest prefix that still swallows a 10 us echo.
    let k = select_cp_ratio(ts, 10e-6)?;
    println!("10 us spread needs k={k}");

    for mcs in McsScheme::measured_catalog() {
        let dl = frame_throughput(&cfg, &mcs, Direction::Downlink, 12)?;
        let ul = frame_throughput(&cfg, &mcs, Direction::Uplink, 12)?;
        println!(
            "{:<10} DL {:>7.1} kbit/s  UL {:>7.1} kbit/s  (measured {} / {})",
            mcs.name,
            dl / 1e3,
            ul / 1e3,
            measured(&mcs, Direction::Downlink),
            measured(&mcs, Direction::Uplink),
        );
    }
    Ok(())
}

fn measured(mcs: &McsScheme, direction: Direction) -> String {
    mcs.reference_kbps(direction)
        .map_or("-".into(), |v| format!("{v}"))
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
