// Line-of-sight reach, excess-loss cell range and the delay spread at the cell edge.
//
// ```text
// cargo run --example link_coverage
// ```

use aeromacs::params::select_cp_ratio;
use aeromacs::propagation::{
    delay_spread_s, effective_cell_range_m, free_space_path_loss_db, max_los_coverage_m,
};
use aeromacs::{ExcessLossModel, LinkBudget};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let budget = LinkBudget::aeromacs();
    let d_max = max_los_coverage_m(&budget);
    println!("LoS reach at {} dB: {:.2} km", budget.max_path_loss_db, d_max / 1e3);
    println!("FSPL back at that range: {:.9} dB", free_space_path_loss_db(d_max, budget.carrier_freq_hz));

    for alpha in [5.0, 7.5, 10.0] {
        let model = ExcessLossModel::new(alpha)?;
        let range = effective_cell_range_m(&budget, &model);
        let spread = delay_spread_s(range);
        let k = select_cp_ratio(102.4e-6, spread)?;
        println!(
            "alpha {alpha:>4} dB/km: cell {:.3} km, spread {:.2} us, prefix 1/{}",
            range / 1e3,
            spread * 1e6,
            1u32 << k
        );
    }

    // Outside the measured envelope only with an explicit override.
    assert!(ExcessLossModel::new(20.0).is_err());
    let harsh = ExcessLossModel::with_override(20.0)?;
    println!("alpha 20 (override): {:.3} km", effective_cell_range_m(&budget, &harsh) / 1e3);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
