//! Link budget, coverage, delay spread and ground-station corridor planning.

use serde::Serialize;
use std::f64::consts::PI;
use thiserror::Error;

use crate::units::SPEED_OF_LIGHT_MPS;

/// Lower edge of the AeroMACS allocation (Hz).
pub const AEROMACS_BAND_LOW_HZ: f64 = 5.091e9;
/// Upper edge of the AeroMACS allocation (Hz).
pub const AEROMACS_BAND_HIGH_HZ: f64 = 5.150e9;
/// Maximum path loss tolerated by an AeroMACS receiver (dB).
pub const AEROMACS_MAX_PATH_LOSS_DB: f64 = 128.0;

pub const DEFAULT_GS_ANTENNA_GAIN_DBI: f64 = 15.0;
pub const DEFAULT_MS_ANTENNA_GAIN_DBI: f64 = 6.0;
/// Transmit power per antenna branch of the 2x2 MIMO ground station.
pub const DEFAULT_TX_POWER_DBM: f64 = 23.0;

/// Excess non-line-of-sight loss envelope, dB per km.
pub const EXCESS_LOSS_MIN_DB_PER_KM: f64 = 5.0;
pub const EXCESS_LOSS_MAX_DB_PER_KM: f64 = 10.0;
pub const EXCESS_LOSS_DEFAULT_DB_PER_KM: f64 = 7.5;

/// Measured delay spread at the reference distance.
pub const REFERENCE_DELAY_SPREAD_S: f64 = 10.2e-6;
/// 10,000 ft.
pub const REFERENCE_DELAY_DISTANCE_M: f64 = 3048.0;

/// Typical cell radius for gate areas (m).
pub const GATE_CELL_RADIUS_M: f64 = 1100.0;
/// Typical cell radius for runway and taxiway areas (m).
pub const RUNWAY_CELL_RADIUS_M: f64 = 2500.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PropagationError {
    #[error("invalid link budget: {0}")]
    InvalidBudget(String),
    #[error("excess loss rate {0} dB/km is outside the [5, 10] dB/km envelope")]
    AlphaOutsideEnvelope(f64),
    #[error("corridor infeasible: station spacing {spacing_m} m is below 1 m")]
    InfeasibleCorridor { spacing_m: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinkBudget {
    pub max_path_loss_db: f64,
    pub carrier_freq_hz: f64,
    pub gs_antenna_gain_dbi: f64,
    pub ms_antenna_gain_dbi: f64,
    pub tx_power_dbm: f64,
}

impl LinkBudget {
    /// Builds a budget with the default antenna gains and transmit power.
    ///
    /// When `aeromacs_band` is set the carrier must lie inside 5.091-5.150 GHz.
    pub fn new(
        max_path_loss_db: f64,
        carrier_freq_hz: f64,
        aeromacs_band: bool,
    ) -> Result<Self, PropagationError> {
        let budget = LinkBudget {
            max_path_loss_db,
            carrier_freq_hz,
            gs_antenna_gain_dbi: DEFAULT_GS_ANTENNA_GAIN_DBI,
            ms_antenna_gain_dbi: DEFAULT_MS_ANTENNA_GAIN_DBI,
            tx_power_dbm: DEFAULT_TX_POWER_DBM,
        };
        budget.validate(aeromacs_band)?;
        Ok(budget)
    }

    pub fn aeromacs() -> Self {
        Self::new(AEROMACS_MAX_PATH_LOSS_DB, 5.1e9, true).unwrap()
    }

    pub fn validate(&self, aeromacs_band: bool) -> Result<(), PropagationError> {
        if !(self.max_path_loss_db.is_finite() && self.max_path_loss_db > 0.0) {
            return Err(PropagationError::InvalidBudget(format!(
                "max_path_loss_db must be positive, got {}",
                self.max_path_loss_db
            )));
        }
        if !(self.carrier_freq_hz.is_finite() && self.carrier_freq_hz > 0.0) {
            return Err(PropagationError::InvalidBudget(format!(
                "carrier_freq_hz must be positive, got {}",
                self.carrier_freq_hz
            )));
        }
        if aeromacs_band
            && !(AEROMACS_BAND_LOW_HZ..=AEROMACS_BAND_HIGH_HZ).contains(&self.carrier_freq_hz)
        {
            return Err(PropagationError::InvalidBudget(format!(
                "carrier_freq_hz {} is outside the AeroMACS band 5.091-5.150 GHz",
                self.carrier_freq_hz
            )));
        }
        Ok(())
    }

    /// EIRP of one ground-station branch; reported alongside the budget, never folded into it.
    pub fn gs_eirp_dbm(&self) -> f64 {
        self.tx_power_dbm + self.gs_antenna_gain_dbi
    }
}

/// Linear excess loss added on top of free space for NLOS airport surfaces.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExcessLossModel {
    pub alpha_db_per_km: f64,
}

impl ExcessLossModel {
    pub fn new(alpha_db_per_km: f64) -> Result<Self, PropagationError> {
        if !(EXCESS_LOSS_MIN_DB_PER_KM..=EXCESS_LOSS_MAX_DB_PER_KM).contains(&alpha_db_per_km) {
            return Err(PropagationError::AlphaOutsideEnvelope(alpha_db_per_km));
        }
        Ok(ExcessLossModel { alpha_db_per_km })
    }

    /// Accepts any non-negative rate, including 0 (pure free space).
    pub fn with_override(alpha_db_per_km: f64) -> Result<Self, PropagationError> {
        if !(alpha_db_per_km.is_finite() && alpha_db_per_km >= 0.0) {
            return Err(PropagationError::InvalidArgument(format!(
                "excess loss rate must be non-negative, got {alpha_db_per_km}"
            )));
        }
        Ok(ExcessLossModel { alpha_db_per_km })
    }

    pub fn excess_loss_db(&self, distance_m: f64) -> f64 {
        self.alpha_db_per_km * distance_m / 1000.0
    }
}

impl Default for ExcessLossModel {
    fn default() -> Self {
        ExcessLossModel {
            alpha_db_per_km: EXCESS_LOSS_DEFAULT_DB_PER_KM,
        }
    }
}

/// Free-space path loss `20 log10(4π d f / c)` in dB.
pub fn free_space_path_loss_db(distance_m: f64, freq_hz: f64) -> f64 {
    20.0 * (4.0 * PI * distance_m * freq_hz / SPEED_OF_LIGHT_MPS).log10()
}

/// Line-of-sight range at which free-space loss reaches the budget:
/// `c / (4π f) · sqrt(PL_max)` with `PL_max` linear.
pub fn max_los_coverage_m(budget: &LinkBudget) -> f64 {
    SPEED_OF_LIGHT_MPS / (4.0 * PI * budget.carrier_freq_hz)
        * 10f64.powf(budget.max_path_loss_db / 20.0)
}

/// Range at which free-space plus excess loss exhausts the budget.
///
/// Total loss is strictly increasing in distance, so the root is unique and
/// bisection on `(0, d_max]` finds it.
pub fn effective_cell_range_m(budget: &LinkBudget, model: &ExcessLossModel) -> f64 {
    let d_max = max_los_coverage_m(budget);
    if model.alpha_db_per_km == 0.0 {
        return d_max;
    }
    let excess = |d: f64| {
        free_space_path_loss_db(d, budget.carrier_freq_hz) + model.excess_loss_db(d)
            - budget.max_path_loss_db
    };
    let mut lo = d_max.min(1.0);
    while excess(lo) > 0.0 {
        lo *= 0.5;
    }
    let mut hi = d_max;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if excess(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Delay spread scaled linearly from 10.2 µs at 3048 m.
pub fn delay_spread_s(distance_m: f64) -> f64 {
    REFERENCE_DELAY_SPREAD_S * distance_m / REFERENCE_DELAY_DISTANCE_M
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorridorPlan {
    pub length_m: f64,
    pub cell_radius_m: f64,
    pub redundancy: u32,
    /// Upper bound on spacing that guarantees the redundancy.
    pub nominal_spacing_m: f64,
    /// Spacing actually used so the last station sits at the corridor end.
    pub spacing_m: f64,
    pub positions_m: Vec<f64>,
    /// Minimum number of stations within range, over a 1 m sampling of the corridor.
    pub min_coverage: u32,
}

/// Places ground stations uniformly along a 1-D corridor so every point has at
/// least `redundancy` stations within `cell_radius_m`.
///
/// Interior points need spacing `<= 2r/k`. Points near either end only see
/// stations on one side, which needs spacing `<= r/(k-1)`; for `k >= 3` that
/// is the tighter bound. The result is checked by sampling at 1 m before it
/// is returned.
pub fn plan_corridor(
    length_m: f64,
    cell_radius_m: f64,
    redundancy: u32,
) -> Result<CorridorPlan, PropagationError> {
    if !(length_m.is_finite() && length_m > 0.0) {
        return Err(PropagationError::InvalidArgument(
            "corridor length must be positive".into(),
        ));
    }
    if !(cell_radius_m.is_finite() && cell_radius_m > 0.0) {
        return Err(PropagationError::InvalidArgument(
            "cell radius must be positive".into(),
        ));
    }
    if redundancy == 0 {
        return Err(PropagationError::InvalidArgument(
            "redundancy must be at least 1".into(),
        ));
    }
    let k = redundancy as f64;
    let nominal = if redundancy <= 2 {
        2.0 * cell_radius_m / k
    } else {
        cell_radius_m / (k - 1.0)
    };
    if nominal < 1.0 {
        return Err(PropagationError::InfeasibleCorridor { spacing_m: nominal });
    }
    let gaps = ((length_m / nominal - 1e-9).ceil() as u64).max(redundancy as u64);
    let spacing = length_m / gaps as f64;
    if spacing < 1.0 {
        return Err(PropagationError::InfeasibleCorridor { spacing_m: spacing });
    }
    let positions: Vec<f64> = (0..=gaps)
        .map(|i| if i == gaps { length_m } else { i as f64 * spacing })
        .collect();
    let min_coverage = min_coverage_count(&positions, cell_radius_m, length_m);
    assert!(
        min_coverage >= redundancy,
        "corridor plan violates its own coverage guarantee ({min_coverage} < {redundancy})"
    );
    Ok(CorridorPlan {
        length_m,
        cell_radius_m,
        redundancy,
        nominal_spacing_m: nominal,
        spacing_m: spacing,
        positions_m: positions,
        min_coverage,
    })
}

/// Smallest number of stations within `radius` of any point of `[0, length]`,
/// sampled every metre (plus the far end).
pub fn min_coverage_count(positions: &[f64], radius: f64, length: f64) -> u32 {
    let samples = length.floor() as u64;
    (0..=samples)
        .map(|i| i as f64)
        .chain(std::iter::once(length))
        .map(|x| {
            positions
                .iter()
                .filter(|&&p| (p - x).abs() <= radius + 1e-9)
                .count() as u32
        })
        .min()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fspl_examples() {
        assert!((free_space_path_loss_db(1000.0, 5.1e9) - 106.598_968_232).abs() < 1e-8);
        let unit = SPEED_OF_LIGHT_MPS / (4.0 * PI * 5.1e9);
        assert!(free_space_path_loss_db(unit, 5.1e9).abs() < 1e-12);
        let doubled = free_space_path_loss_db(2000.0, 5.1e9) - free_space_path_loss_db(1000.0, 5.1e9);
        assert!((doubled - 20.0 * 2f64.log10()).abs() < 1e-12);
        assert!((free_space_path_loss_db(2000.0, 5.1e9) - 112.619_568_145).abs() < 1e-8);
    }

    #[test]
    fn coverage_examples() {
        let b = LinkBudget::aeromacs();
        assert!((max_los_coverage_m(&b) - 11_750.371_253_887).abs() < 1e-6);
        let zero = LinkBudget {
            max_path_loss_db: 0.0,
            ..LinkBudget::aeromacs()
        };
        assert!((max_los_coverage_m(&zero) - SPEED_OF_LIGHT_MPS / (4.0 * PI * 5.1e9)).abs() < 1e-15);
        let low = LinkBudget::new(128.0, 5.091e9, true).unwrap();
        assert!((max_los_coverage_m(&low) - 11_771.143_860_700).abs() < 1e-6);
    }

    #[test]
    fn budget_validation() {
        assert!(LinkBudget::new(0.0, 5.1e9, false).is_err());
        assert!(LinkBudget::new(128.0, -1.0, false).is_err());
        assert!(LinkBudget::new(128.0, 2.4e9, true).is_err());
        assert!(LinkBudget::new(128.0, 2.4e9, false).is_ok());
        assert!(LinkBudget::new(128.0, 5.150e9, true).is_ok());
        assert_eq!(LinkBudget::aeromacs().gs_eirp_dbm(), 38.0);
    }

    #[test]
    fn excess_loss_envelope() {
        assert!(ExcessLossModel::new(4.9).is_err());
        assert!(ExcessLossModel::new(10.1).is_err());
        assert!(ExcessLossModel::new(5.0).is_ok());
        assert_eq!(ExcessLossModel::default().alpha_db_per_km, 7.5);
        assert!(ExcessLossModel::with_override(0.0).is_ok());
        assert!(ExcessLossModel::with_override(-1.0).is_err());
    }

    #[test]
    fn effective_range_examples() {
        let b = LinkBudget::aeromacs();
        // Reference roots from an independent Brent solve of the same equation.
        let r = effective_cell_range_m(&b, &ExcessLossModel::default());
        assert!((r - 2_032.217_226_544).abs() < 1e-6, "{r}");
        let r5 = effective_cell_range_m(&b, &ExcessLossModel::new(5.0).unwrap());
        let r10 = effective_cell_range_m(&b, &ExcessLossModel::new(10.0).unwrap());
        assert!((r5 - 2_612.188_380_420).abs() < 1e-6);
        assert!((r10 - 1_686.256_106_148).abs() < 1e-6);
        assert!(r10 < r && r < r5);
        let none = effective_cell_range_m(&b, &ExcessLossModel::with_override(0.0).unwrap());
        assert_eq!(none, max_los_coverage_m(&b));
    }

    #[test]
    fn effective_range_with_sub_metre_budget() {
        let b = LinkBudget::new(30.0, 5.1e9, false).unwrap();
        let d = effective_cell_range_m(&b, &ExcessLossModel::default());
        assert!(d > 0.0 && d <= max_los_coverage_m(&b));
        let total = free_space_path_loss_db(d, 5.1e9) + 7.5 * d / 1000.0;
        assert!((total - 30.0).abs() < 1e-9);
    }

    #[test]
    fn delay_spread_examples() {
        assert!((delay_spread_s(3048.0) - 10.2e-6).abs() < 1e-18);
        assert_eq!(delay_spread_s(0.0), 0.0);
        assert!((delay_spread_s(3000.0) - 10.039_370_078_740e-6).abs() < 1e-17);
    }

    #[test]
    fn corridor_runway_double_coverage() {
        let plan = plan_corridor(10_000.0, 2500.0, 2).unwrap();
        assert_eq!(plan.positions_m, vec![0.0, 2500.0, 5000.0, 7500.0, 10_000.0]);
        assert_eq!(plan.min_coverage, 2);
    }

    #[test]
    fn corridor_single_coverage_is_touching_chain() {
        let plan = plan_corridor(10_000.0, 1000.0, 1).unwrap();
        assert_eq!(plan.nominal_spacing_m, 2000.0);
        assert_eq!(plan.positions_m.len(), 6);
        assert!(plan.min_coverage >= 1);
    }

    #[test]
    fn corridor_gate_triple_coverage() {
        let plan = plan_corridor(5000.0, GATE_CELL_RADIUS_M, 3).unwrap();
        assert_eq!(plan.nominal_spacing_m, 550.0);
        assert_eq!(plan.positions_m.len(), 11);
        assert_eq!(plan.spacing_m, 500.0);
        assert!(plan.min_coverage >= 3);
        // Uniform 2r/k spacing would leave the corridor ends only double-covered.
        let naive: Vec<f64> = (0..8).map(|i| i as f64 * 5000.0 / 7.0).collect();
        assert_eq!(min_coverage_count(&naive, GATE_CELL_RADIUS_M, 5000.0), 2);
    }

    #[test]
    fn corridor_short_has_k_plus_one_stations() {
        let plan = plan_corridor(100.0, 2500.0, 2).unwrap();
        assert_eq!(plan.positions_m.len(), 3);
        assert_eq!(plan.min_coverage, 3);
    }

    #[test]
    fn corridor_errors() {
        assert!(matches!(
            plan_corridor(1000.0, 0.9, 2),
            Err(PropagationError::InfeasibleCorridor { .. })
        ));
        assert!(matches!(
            plan_corridor(10.0, 5.0, 8),
            Err(PropagationError::InfeasibleCorridor { .. })
        ));
        assert!(plan_corridor(0.0, 10.0, 1).is_err());
        assert!(plan_corridor(10.0, 10.0, 0).is_err());
    }
}
