// Monte Carlo check of the analytic ICI expression on a 64-subcarrier system.
//
// ```text
// cargo run --release --example ici_monte_carlo
// ```

use aeromacs::simulator::simulate_ici;
use aeromacs::SimulationSpec;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for fd_ts in [0.01, 0.05, 0.1] {
        let spec = SimulationSpec::new(64, fd_ts, 2000, 7);
        let r = simulate_ici(&spec)?;
        let a = r.agreement();
        println!(
            "fd*Ts={fd_ts:<5} empirical {:.4e} ± {:.1e}  analytic {:.4e}  literal {:.3}  diff {:+.3} dB  {}",
            r.empirical_ici_norm,
            r.standard_error,
            r.analytic_ici_norm,
            r.analytic_literal_ici_norm,
            a.difference_db,
            if a.pass { "pass" } else { "fail" }
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
