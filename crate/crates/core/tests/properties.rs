use aeromacs::bessel::bessel_one_minus_j0;
use aeromacs::mobility::ici_normalized;
use aeromacs::params::select_cp_ratio;
use aeromacs::propagation::{
    effective_cell_range_m, free_space_path_loss_db, max_los_coverage_m, min_coverage_count,
    plan_corridor,
};
use aeromacs::{ExcessLossModel, IciInterpretation, LinkBudget};
use proptest::prelude::*;
use std::f64::consts::PI;

fn double_sum(fd_ts: f64, n: u32) -> f64 {
    let mut total = 0.0;
    for k in 0..n {
        for kp in 0..n {
            total += bessel_one_minus_j0(2.0 * PI * fd_ts * (k as f64 - kp as f64) / n as f64);
        }
    }
    total / (n as f64 * n as f64)
}

proptest! {
    #[test]
    fn fspl_round_trip(pl in 40.0f64..200.0, f in 1e8f64..1e11) {
        let budget = LinkBudget::new(pl, f, false).unwrap();
        let back = free_space_path_loss_db(max_los_coverage_m(&budget), f);
        prop_assert!((back - pl).abs() < 1e-9);
    }

    #[test]
    fn fspl_grows_with_distance(d in 1.0f64..1e5, step in 1.0f64..1e4, f in 1e9f64..6e9) {
        prop_assert!(free_space_path_loss_db(d + step, f) > free_space_path_loss_db(d, f));
    }

    #[test]
    fn harsher_terrain_shrinks_cells(a in 0.0f64..30.0, extra in 0.1f64..10.0) {
        let b = LinkBudget::aeromacs();
        let lo = effective_cell_range_m(&b, &ExcessLossModel::with_override(a).unwrap());
        let hi = effective_cell_range_m(&b, &ExcessLossModel::with_override(a + extra).unwrap());
        prop_assert!(hi < lo);
    }

    #[test]
    fn ici_toeplitz_matches_double_sum(fd in 0.0f64..1.0, log2n in 1u32..7) {
        let n = 1 << log2n;
        let fast = ici_normalized(fd, n, IciInterpretation::SamplePeriod);
        let slow = double_sum(fd, n);
        prop_assert!((fast - slow).abs() <= 1e-9 * slow.max(1e-300));
    }

    #[test]
    fn ici_rises_with_doppler(fd in 0.0f64..0.4, extra in 1e-4f64..0.1) {
        let a = ici_normalized(fd, 512, IciInterpretation::SamplePeriod);
        let b = ici_normalized(fd + extra, 512, IciInterpretation::SamplePeriod);
        prop_assert!(b > a);
        prop_assert!((0.0..=1.0).contains(&b));
    }

    #[test]
    fn chosen_prefix_covers_spread(spread in 0.0f64..25.6e-6) {
        let ts = 102.4e-6;
        let k = select_cp_ratio(ts, spread).unwrap();
        prop_assert!(ts / f64::from(1u32 << k) >= spread);
        if k < 8 {
            prop_assert!(ts / f64::from(1u32 << (k + 1)) < spread);
        }
    }

    #[test]
    fn corridor_plans_meet_redundancy(length in 100.0f64..20_000.0, radius in 200.0f64..3000.0, k in 1u32..5) {
        let plan = plan_corridor(length, radius, k).unwrap();
        prop_assert!(plan.min_coverage >= k);
        prop_assert_eq!(min_coverage_count(&plan.positions_m, radius, length), plan.min_coverage);
        prop_assert_eq!(plan.positions_m[0], 0.0);
        prop_assert!((plan.positions_m.last().unwrap() - length).abs() < 1e-6);
    }
}
