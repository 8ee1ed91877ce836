// Two-path channel: an echo inside the prefix is harmless, one past it is not.
//
// ```text
// cargo run --release --example cyclic_prefix
// ```

use aeromacs::simulator::{simulate_cp_isi, CpIsiSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (cp, gain) in [(64, 0.5), (32, 0.5), (32, 1.0)] {
        let spec = CpIsiSpec {
            n_subcarriers: 512,
            cp_samples: cp,
            echo_delay_samples: 50,
            echo_gain: gain,
            trials: 500,
            seed: 11,
        };
        let r = simulate_cp_isi(&spec)?;
        println!(
            "cp {cp:>2}, echo 50 @ {gain}: SER {:.2e} ({} / {}, {} nulled)",
            r.symbol_error_rate, r.symbol_errors, r.symbols_counted, r.nulled_subcarriers
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
