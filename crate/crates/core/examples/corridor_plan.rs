// Ground-station placement along a runway with k-fold coverage.
//
// ```text
// cargo run --example corridor_plan
// ```

use aeromacs::propagation::{plan_corridor, RUNWAY_CELL_RADIUS_M};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for k in [1, 2, 3] {
        let plan = plan_corridor(4000.0, RUNWAY_CELL_RADIUS_M, k)?;
        let pos: Vec<String> = plan.positions_m.iter().map(|p| format!("{p:.0}")).collect();
        println!(
            "k={k}: {} stations every {:.0} m, min coverage {} [{}]",
            plan.positions_m.len(),
            plan.spacing_m,
            plan.min_coverage,
            pos.join(", ")
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
