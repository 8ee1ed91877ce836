//! Doppler shift, Doppler-induced ICI, coherence time and the speed limit they imply.
//!
//! The ICI power of a flat channel whose taps follow a Clarke (J0)
//! autocorrelation is
//!
//! ```text
//! σ² = Es − Es/N² · Σ_k Σ_k' J0(2π f_D τ (k − k'))
//! ```
//!
//! The double sum depends only on `k − k'`, so it collapses to a Toeplitz sum
//! of `2N − 1` terms. The offset `τ` between neighbouring indices is the
//! *sample* period `Ts / N` by default ([`IciInterpretation::SamplePeriod`]),
//! which is what a sample-level simulation of the channel reproduces. Using the
//! full symbol period ([`IciInterpretation::Literal`]) is kept for comparison;
//! it saturates near `Es` for any realistic speed.

use serde::Serialize;
use std::f64::consts::PI;
use thiserror::Error;

pub use crate::bessel::{bessel_j0, bessel_one_minus_j0};
use crate::units::{dbm_to_mw, linear_to_db, mw_to_dbm, Extended, SPEED_OF_LIGHT_MPS};

/// `sqrt(9 / (16π))`, the coherence-time constant usually quoted as 0.423.
pub const COHERENCE_CONSTANT: f64 = 0.423_142_187_660_817_24;

/// Subcarrier spacing must exceed this multiple of the Doppler spread.
pub const SPACING_TO_SPREAD_FACTOR: f64 = 5.0;

/// Average maximum signal power per subcarrier in a typical AeroMACS link (dBm).
pub const DEFAULT_ES_DBM: f64 = 24.0;

/// Published AeroMACS speed limit. It does not follow from the
/// spacing → spread → coherence → Doppler chain implemented in
/// [`max_supported_speed_mps`], which yields about 49.7 m/s at 5.1 GHz.
pub const PUBLISHED_MAX_SPEED_MPS: f64 = 35.9;
pub const PUBLISHED_MAX_SPEED_KMH: f64 = 129.25;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MobilityError {
    #[error("no Doppler shift, so no ICI: the power in dBm is unbounded below")]
    DegenerateIci,
    #[error("no Doppler shift, so the coherence time is unbounded")]
    InfiniteCoherence,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Which time offset separates adjacent indices in the ICI double sum.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IciInterpretation {
    /// Offset `Ts / N` (one DFT sample).
    #[default]
    SamplePeriod,
    /// Offset `Ts` (one full symbol).
    Literal,
}

/// Doppler shift `v f / c` in Hz.
pub fn doppler_shift_hz(speed_mps: f64, freq_hz: f64) -> f64 {
    speed_mps * freq_hz / SPEED_OF_LIGHT_MPS
}

/// Normalized ICI power `σ² / Es` for normalized Doppler `fd_ts = f_D · Ts`.
///
/// Computed as `(2/N²) Σ_{m=1}^{N-1} (N − m)(1 − J0(2π fd_ts m / N))`, which is
/// the double sum folded along its diagonals. Each term is non-negative, so
/// small Dopplers keep full relative precision.
pub fn ici_normalized(fd_ts: f64, n_subcarriers: u32, interpretation: IciInterpretation) -> f64 {
    let n = n_subcarriers as f64;
    let step = match interpretation {
        IciInterpretation::SamplePeriod => 2.0 * PI * fd_ts / n,
        IciInterpretation::Literal => 2.0 * PI * fd_ts,
    };
    let sum: f64 = (1..n_subcarriers)
        .map(|m| (n - m as f64) * bessel_one_minus_j0(step * m as f64))
        .sum();
    (2.0 * sum / (n * n)).clamp(0.0, 1.0)
}

/// ICI power on one subcarrier.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IciPower {
    pub es_mw: f64,
    pub linear_mw: f64,
    /// `linear_mw / es_mw`.
    pub normalized: f64,
}

impl IciPower {
    /// Power in dBm; a static channel has no ICI and no finite dBm value.
    pub fn dbm(&self) -> Result<f64, MobilityError> {
        if self.linear_mw > 0.0 {
            Ok(mw_to_dbm(self.linear_mw))
        } else {
            Err(MobilityError::DegenerateIci)
        }
    }
}

/// ICI power for a given Doppler shift and numerology.
pub fn ici_power(
    es_dbm: f64,
    doppler_hz: f64,
    symbol_time_s: f64,
    n_subcarriers: u32,
    interpretation: IciInterpretation,
) -> Result<IciPower, MobilityError> {
    if n_subcarriers < 2 {
        return Err(MobilityError::InvalidArgument(format!(
            "n_subcarriers must be at least 2, got {n_subcarriers}"
        )));
    }
    if !(doppler_hz.is_finite() && doppler_hz >= 0.0) {
        return Err(MobilityError::InvalidArgument(format!(
            "Doppler shift must be non-negative, got {doppler_hz}"
        )));
    }
    if !(symbol_time_s.is_finite() && symbol_time_s > 0.0) {
        return Err(MobilityError::InvalidArgument(format!(
            "symbol time must be positive, got {symbol_time_s}"
        )));
    }
    if !es_dbm.is_finite() {
        return Err(MobilityError::InvalidArgument("Es must be finite".into()));
    }
    let es_mw = dbm_to_mw(es_dbm);
    let normalized = ici_normalized(doppler_hz * symbol_time_s, n_subcarriers, interpretation);
    Ok(IciPower {
        es_mw,
        linear_mw: es_mw * normalized,
        normalized,
    })
}

/// Signal-to-ICI ratio in dB; unbounded when there is no ICI.
pub fn signal_to_ici_db(ici: &IciPower) -> Extended {
    if ici.linear_mw > 0.0 {
        Extended::Finite(linear_to_db(ici.es_mw / ici.linear_mw))
    } else {
        Extended::Infinite
    }
}

/// Coherence time `sqrt(9 / (16π f_D²))` in seconds.
pub fn coherence_time_s(doppler_hz: f64) -> Result<f64, MobilityError> {
    if doppler_hz == 0.0 {
        return Err(MobilityError::InfiniteCoherence);
    }
    if !(doppler_hz.is_finite() && doppler_hz > 0.0) {
        return Err(MobilityError::InvalidArgument(format!(
            "Doppler shift must be positive, got {doppler_hz}"
        )));
    }
    Ok(COHERENCE_CONSTANT / doppler_hz)
}

/// Largest Doppler spread a subcarrier spacing tolerates (`Δf / 5`).
pub fn doppler_spread_limit_hz(subcarrier_spacing_hz: f64) -> f64 {
    subcarrier_spacing_hz / SPACING_TO_SPREAD_FACTOR
}

/// Every step from subcarrier spacing to the maximum supported speed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpeedLimitChain {
    pub subcarrier_spacing_hz: f64,
    pub carrier_freq_hz: f64,
    /// `Δf / 5`.
    pub doppler_spread_limit_hz: f64,
    /// Reciprocal of the spread limit.
    pub min_coherence_time_s: f64,
    /// Doppler shift whose coherence time equals the minimum.
    pub max_doppler_hz: f64,
    pub max_speed_mps: f64,
}

impl SpeedLimitChain {
    pub fn new(subcarrier_spacing_hz: f64, carrier_freq_hz: f64) -> Result<Self, MobilityError> {
        if !(subcarrier_spacing_hz.is_finite() && subcarrier_spacing_hz > 0.0) {
            return Err(MobilityError::InvalidArgument(
                "subcarrier spacing must be positive".into(),
            ));
        }
        if !(carrier_freq_hz.is_finite() && carrier_freq_hz > 0.0) {
            return Err(MobilityError::InvalidArgument(
                "carrier frequency must be positive".into(),
            ));
        }
        let spread = doppler_spread_limit_hz(subcarrier_spacing_hz);
        let min_coherence = 1.0 / spread;
        let max_doppler = COHERENCE_CONSTANT / min_coherence;
        Ok(SpeedLimitChain {
            subcarrier_spacing_hz,
            carrier_freq_hz,
            doppler_spread_limit_hz: spread,
            min_coherence_time_s: min_coherence,
            max_doppler_hz: max_doppler,
            max_speed_mps: max_doppler * SPEED_OF_LIGHT_MPS / carrier_freq_hz,
        })
    }
}

/// Maximum speed `0.4231 · (Δf / 5) · c / f` in m/s.
pub fn max_supported_speed_mps(subcarrier_spacing_hz: f64, carrier_freq_hz: f64) -> f64 {
    COHERENCE_CONSTANT * doppler_spread_limit_hz(subcarrier_spacing_hz) * SPEED_OF_LIGHT_MPS
        / carrier_freq_hz
}

/// One row of a speed sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MobilityAnalysis {
    pub speed_mps: f64,
    pub carrier_freq_hz: f64,
    pub doppler_hz: f64,
    pub ici_power_mw: f64,
    /// `None` when there is no ICI.
    pub ici_power_dbm: Option<f64>,
    pub signal_to_ici_db: Extended,
    pub coherence_time_s: Extended,
}

impl MobilityAnalysis {
    pub fn at_speed(
        speed_mps: f64,
        carrier_freq_hz: f64,
        es_dbm: f64,
        symbol_time_s: f64,
        n_subcarriers: u32,
        interpretation: IciInterpretation,
    ) -> Result<Self, MobilityError> {
        if !(speed_mps.is_finite() && speed_mps >= 0.0) {
            return Err(MobilityError::InvalidArgument(format!(
                "speed must be non-negative, got {speed_mps}"
            )));
        }
        if !(carrier_freq_hz.is_finite() && carrier_freq_hz > 0.0) {
            return Err(MobilityError::InvalidArgument(
                "carrier frequency must be positive".into(),
            ));
        }
        let doppler_hz = doppler_shift_hz(speed_mps, carrier_freq_hz);
        let ici = ici_power(es_dbm, doppler_hz, symbol_time_s, n_subcarriers, interpretation)?;
        let coherence = match coherence_time_s(doppler_hz) {
            Ok(t) => Extended::Finite(t),
            Err(MobilityError::InfiniteCoherence) => Extended::Infinite,
            Err(e) => return Err(e),
        };
        Ok(MobilityAnalysis {
            speed_mps,
            carrier_freq_hz,
            doppler_hz,
            ici_power_mw: ici.linear_mw,
            ici_power_dbm: ici.dbm().ok(),
            signal_to_ici_db: signal_to_ici_db(&ici),
            coherence_time_s: coherence,
        })
    }
}
