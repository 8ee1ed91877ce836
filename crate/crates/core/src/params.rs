//! OFDMA numerology, rate and overhead formulas, and cyclic-prefix selection.
//!
//! Two notions of "symbol spacing" coexist here on purpose. The subcarrier
//! spacing is `BW / (N + 1)` (9746.6 Hz for the AeroMACS profile) while the
//! useful symbol time is `N / BW` (102.4 µs). The two are not reciprocals of
//! each other; they differ by about 0.2% and both round to "10 kHz".

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Smallest allowed `k` in `G = 1/2^k` (G = 1/4).
pub const MIN_CP_RATIO_LOG2: u32 = 2;
/// Largest allowed `k` in `G = 1/2^k` (G = 1/256).
pub const MAX_CP_RATIO_LOG2: u32 = 8;

/// Name under which [`OfdmaConfig::aeromacs`] is addressable from configuration.
pub const AEROMACS_PROFILE_NAME: &str = "aeromacs-default";

/// Nominal subcarrier spacing quoted for the AeroMACS profile (Hz).
pub const AEROMACS_NOMINAL_SPACING_HZ: f64 = 10_000.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParamsError {
    #[error("invalid OFDMA configuration: {field} {reason}")]
    InvalidConfig { field: &'static str, reason: String },
    #[error("no cyclic-prefix ratio 1/2^k with k in [2, 8] covers a delay spread of {delay_spread_s:e} s (largest CP is {largest_cp_s:e} s)")]
    NoFeasibleRatio { delay_spread_s: f64, largest_cp_s: f64 },
    #[error("{requested} symbols requested but the frame only holds {available}")]
    SymbolBudgetExceeded { requested: u32, available: u32 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Link direction within the TDD frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Downlink,
    Uplink,
}

impl Direction {
    pub fn label(self) -> &'static str {
        match self {
            Direction::Downlink => "DL",
            Direction::Uplink => "UL",
        }
    }
}

/// OFDMA numerology of one channel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OfdmaConfig {
    pub bandwidth_hz: f64,
    /// DFT size.
    pub n_subcarriers: u32,
    /// `k` in `G = CP / Ts = 1/2^k`.
    pub cp_ratio_log2: u32,
    pub frame_symbols: u32,
    pub frame_duration_s: f64,
    pub dl_data_subcarriers: u32,
    pub dl_pilot_subcarriers: u32,
    pub dl_null_subcarriers: u32,
    pub ul_data_subcarriers: u32,
    pub ul_pilot_subcarriers: u32,
    pub ul_null_subcarriers: u32,
}

impl OfdmaConfig {
    /// The AeroMACS profile: 5 MHz, 512-point DFT, G = 1/8, 24-symbol 5 ms frames.
    pub fn aeromacs() -> Self {
        OfdmaConfig {
            bandwidth_hz: 5e6,
            n_subcarriers: 512,
            cp_ratio_log2: 3,
            frame_symbols: 24,
            frame_duration_s: 5e-3,
            dl_data_subcarriers: 360,
            dl_pilot_subcarriers: 60,
            dl_null_subcarriers: 92,
            ul_data_subcarriers: 272,
            ul_pilot_subcarriers: 136,
            ul_null_subcarriers: 104,
        }
    }

    /// Looks up a named profile.
    pub fn named(name: &str) -> Option<Self> {
        (name == AEROMACS_PROFILE_NAME).then(Self::aeromacs)
    }

    pub fn validate(&self) -> Result<(), ParamsError> {
        let invalid = |field, reason: &str| {
            Err(ParamsError::InvalidConfig {
                field,
                reason: reason.to_string(),
            })
        };
        if !(self.bandwidth_hz.is_finite() && self.bandwidth_hz > 0.0) {
            return invalid("bandwidth_hz", "must be a positive finite frequency");
        }
        if self.n_subcarriers < 2 || !self.n_subcarriers.is_power_of_two() {
            return invalid("n_subcarriers", "must be a power of two and at least 2");
        }
        if !(MIN_CP_RATIO_LOG2..=MAX_CP_RATIO_LOG2).contains(&self.cp_ratio_log2) {
            return invalid("cp_ratio_log2", "must lie in [2, 8]");
        }
        if self.frame_symbols == 0 {
            return invalid("frame_symbols", "must be positive");
        }
        if !(self.frame_duration_s.is_finite() && self.frame_duration_s > 0.0) {
            return invalid("frame_duration_s", "must be a positive finite time");
        }
        let dl = self.dl_data_subcarriers as u64
            + self.dl_pilot_subcarriers as u64
            + self.dl_null_subcarriers as u64;
        if dl != self.n_subcarriers as u64 {
            return invalid(
                "dl_data_subcarriers",
                &format!(
                    "data + pilot + null = {dl} does not equal n_subcarriers = {}",
                    self.n_subcarriers
                ),
            );
        }
        let ul = self.ul_data_subcarriers as u64
            + self.ul_pilot_subcarriers as u64
            + self.ul_null_subcarriers as u64;
        if ul != self.n_subcarriers as u64 {
            return invalid(
                "ul_data_subcarriers",
                &format!(
                    "data + pilot + null = {ul} does not equal n_subcarriers = {}",
                    self.n_subcarriers
                ),
            );
        }
        Ok(())
    }

    /// `G = 1/2^k`.
    pub fn cp_ratio(&self) -> f64 {
        1.0 / (1u64 << self.cp_ratio_log2) as f64
    }

    pub fn data_subcarriers(&self, direction: Direction) -> u32 {
        match direction {
            Direction::Downlink => self.dl_data_subcarriers,
            Direction::Uplink => self.ul_data_subcarriers,
        }
    }
}

impl Default for OfdmaConfig {
    fn default() -> Self {
        Self::aeromacs()
    }
}

/// FEC code rate as an exact fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CodingRate {
    pub numerator: u32,
    pub denominator: u32,
}

impl CodingRate {
    pub const HALF: CodingRate = CodingRate::new(1, 2);
    pub const TWO_THIRDS: CodingRate = CodingRate::new(2, 3);
    pub const THREE_QUARTERS: CodingRate = CodingRate::new(3, 4);
    pub const FIVE_SIXTHS: CodingRate = CodingRate::new(5, 6);

    pub const fn new(numerator: u32, denominator: u32) -> Self {
        CodingRate {
            numerator,
            denominator,
        }
    }

    pub fn value(self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }
}

/// A modulation and coding scheme, optionally with measured reference throughputs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McsScheme {
    pub name: &'static str,
    pub bits_per_symbol: u32,
    pub coding_rate: CodingRate,
    pub reference_dl_kbps: Option<f64>,
    pub reference_ul_kbps: Option<f64>,
}

impl McsScheme {
    pub fn new(
        name: &'static str,
        bits_per_symbol: u32,
        coding_rate: CodingRate,
    ) -> Result<Self, ParamsError> {
        if !matches!(bits_per_symbol, 2 | 4 | 6) {
            return Err(ParamsError::InvalidArgument(format!(
                "bits_per_symbol must be 2, 4 or 6, got {bits_per_symbol}"
            )));
        }
        let r = coding_rate;
        if r.denominator == 0 || r.numerator == 0 || r.numerator >= r.denominator {
            return Err(ParamsError::InvalidArgument(format!(
                "coding rate {}/{} is not in (0, 1)",
                r.numerator, r.denominator
            )));
        }
        Ok(McsScheme {
            name,
            bits_per_symbol,
            coding_rate,
            reference_dl_kbps: None,
            reference_ul_kbps: None,
        })
    }

    pub fn with_reference(mut self, dl_kbps: f64, ul_kbps: f64) -> Self {
        self.reference_dl_kbps = Some(dl_kbps);
        self.reference_ul_kbps = Some(ul_kbps);
        self
    }

    pub fn qpsk_half() -> Self {
        Self::new("QPSK 1/2", 2, CodingRate::HALF)
            .unwrap()
            .with_reference(983.3, 532.4)
    }

    pub fn qam16_half() -> Self {
        Self::new("16-QAM 1/2", 4, CodingRate::HALF)
            .unwrap()
            .with_reference(2153.52, 1235.52)
    }

    pub fn qam64_half() -> Self {
        Self::new("64-QAM 1/2", 6, CodingRate::HALF)
            .unwrap()
            .with_reference(3595.04, 1758.48)
    }

    /// The three rate-1/2 schemes with measured AeroMACS throughputs.
    pub fn measured_catalog() -> Vec<McsScheme> {
        vec![Self::qpsk_half(), Self::qam16_half(), Self::qam64_half()]
    }

    /// Every QPSK/16-QAM/64-QAM combination with the 1/2, 2/3, 3/4 and 5/6 code rates.
    pub fn full_catalog() -> Vec<McsScheme> {
        const NAMES: [[&str; 4]; 3] = [
            ["QPSK 1/2", "QPSK 2/3", "QPSK 3/4", "QPSK 5/6"],
            ["16-QAM 1/2", "16-QAM 2/3", "16-QAM 3/4", "16-QAM 5/6"],
            ["64-QAM 1/2", "64-QAM 2/3", "64-QAM 3/4", "64-QAM 5/6"],
        ];
        let rates = [
            CodingRate::HALF,
            CodingRate::TWO_THIRDS,
            CodingRate::THREE_QUARTERS,
            CodingRate::FIVE_SIXTHS,
        ];
        let measured = Self::measured_catalog();
        let mut out = Vec::with_capacity(12);
        for (row, bits) in [2u32, 4, 6].into_iter().enumerate() {
            for (col, rate) in rates.into_iter().enumerate() {
                let name = NAMES[row][col];
                let mcs = measured
                    .iter()
                    .find(|m| m.name == name)
                    .cloned()
                    .unwrap_or_else(|| Self::new(name, bits, rate).unwrap());
                out.push(mcs);
            }
        }
        out
    }

    pub fn reference_kbps(&self, direction: Direction) -> Option<f64> {
        match direction {
            Direction::Downlink => self.reference_dl_kbps,
            Direction::Uplink => self.reference_ul_kbps,
        }
    }
}

/// Subcarrier spacing `BW / (N + 1)` in Hz.
pub fn subcarrier_spacing(cfg: &OfdmaConfig) -> f64 {
    cfg.bandwidth_hz / (cfg.n_subcarriers as f64 + 1.0)
}

/// Useful symbol time `N / BW` in seconds (102.4 µs for AeroMACS).
pub fn symbol_time(cfg: &OfdmaConfig) -> f64 {
    cfg.n_subcarriers as f64 / cfg.bandwidth_hz
}

/// Cyclic-prefix duration `G · Ts`.
pub fn cp_length(cfg: &OfdmaConfig) -> f64 {
    symbol_time(cfg) / (1u64 << cfg.cp_ratio_log2) as f64
}

/// Picks the largest `k` in `[2, 8]` whose prefix `Ts / 2^k` still covers the
/// delay spread, i.e. the least overhead that absorbs it. A prefix exactly
/// equal to the delay spread is accepted.
pub fn select_cp_ratio(symbol_time_s: f64, max_delay_spread_s: f64) -> Result<u32, ParamsError> {
    if !(symbol_time_s > 0.0 && symbol_time_s.is_finite()) {
        return Err(ParamsError::InvalidArgument(
            "symbol time must be positive".into(),
        ));
    }
    if !(max_delay_spread_s > 0.0 && max_delay_spread_s.is_finite()) {
        return Err(ParamsError::InvalidArgument(
            "delay spread must be positive".into(),
        ));
    }
    (MIN_CP_RATIO_LOG2..=MAX_CP_RATIO_LOG2)
        .rev()
        .find(|&k| symbol_time_s / (1u64 << k) as f64 >= max_delay_spread_s)
        .ok_or(ParamsError::NoFeasibleRatio {
            delay_spread_s: max_delay_spread_s,
            largest_cp_s: symbol_time_s / (1u64 << MIN_CP_RATIO_LOG2) as f64,
        })
}

/// Raw (uncoded, all-subcarrier) rate `N · b / (CP + Ts)` in bit/s.
pub fn data_rate(cfg: &OfdmaConfig, bits_per_symbol: u32) -> f64 {
    cfg.n_subcarriers as f64 * bits_per_symbol as f64 / (cp_length(cfg) + symbol_time(cfg))
}

/// SNR penalty of the prefix, `-10 log10(1 - CP / (CP + Ts))`, in dB.
pub fn snr_loss_db(cfg: &OfdmaConfig) -> f64 {
    snr_loss_db_for(cp_length(cfg), symbol_time(cfg))
}

pub(crate) fn snr_loss_db_for(cp_s: f64, symbol_time_s: f64) -> f64 {
    -10.0 * (1.0 - cp_s / (cp_s + symbol_time_s)).log10()
}

/// PHY rate delivered to one direction when it owns `n_symbols` of the frame.
///
/// Preamble, control and guard overheads are not modelled.
pub fn frame_throughput(
    cfg: &OfdmaConfig,
    mcs: &McsScheme,
    direction: Direction,
    n_symbols: u32,
) -> Result<f64, ParamsError> {
    if n_symbols == 0 {
        return Err(ParamsError::InvalidArgument(
            "n_symbols must be at least 1".into(),
        ));
    }
    if n_symbols > cfg.frame_symbols {
        return Err(ParamsError::SymbolBudgetExceeded {
            requested: n_symbols,
            available: cfg.frame_symbols,
        });
    }
    Ok(cfg.data_subcarriers(direction) as f64
        * mcs.bits_per_symbol as f64
        * mcs.coding_rate.value()
        * n_symbols as f64
        / cfg.frame_duration_s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn default_profile_is_valid() {
        OfdmaConfig::aeromacs().validate().unwrap();
        assert_eq!(OfdmaConfig::named("aeromacs-default"), Some(OfdmaConfig::aeromacs()));
        assert_eq!(OfdmaConfig::named("wimax"), None);
    }

    #[test]
    fn validation_names_the_field() {
        let mut cfg = OfdmaConfig::aeromacs();
        cfg.n_subcarriers = 500;
        match cfg.validate() {
            Err(ParamsError::InvalidConfig { field, .. }) => assert_eq!(field, "n_subcarriers"),
            other => panic!("unexpected {other:?}"),
        }
        let mut cfg = OfdmaConfig::aeromacs();
        cfg.cp_ratio_log2 = 9;
        assert!(matches!(
            cfg.validate(),
            Err(ParamsError::InvalidConfig { field: "cp_ratio_log2", .. })
        ));
        let mut cfg = OfdmaConfig::aeromacs();
        cfg.ul_pilot_subcarriers = 135;
        assert!(matches!(
            cfg.validate(),
            Err(ParamsError::InvalidConfig { field: "ul_data_subcarriers", .. })
        ));
        let mut cfg = OfdmaConfig::aeromacs();
        cfg.bandwidth_hz = 0.0;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn spacing_examples() {
        let cfg = OfdmaConfig::aeromacs();
        assert!(close(subcarrier_spacing(&cfg), 9746.588693957, 1e-6));
        let unit = OfdmaConfig {
            bandwidth_hz: 513.0,
            ..OfdmaConfig::aeromacs()
        };
        assert_eq!(subcarrier_spacing(&unit), 1.0);
        let wide = OfdmaConfig {
            bandwidth_hz: 10e6,
            n_subcarriers: 1024,
            ..OfdmaConfig::aeromacs()
        };
        assert!(close(subcarrier_spacing(&wide), 9756.097560976, 1e-6));
    }

    #[test]
    fn symbol_time_examples() {
        let cfg = OfdmaConfig::aeromacs();
        assert!(close(symbol_time(&cfg), 102.4e-6, 1e-18));
        let tiny = OfdmaConfig {
            bandwidth_hz: 1.0,
            n_subcarriers: 2,
            ..OfdmaConfig::aeromacs()
        };
        assert_eq!(symbol_time(&tiny), 2.0);
        let wide = OfdmaConfig {
            bandwidth_hz: 10e6,
            ..OfdmaConfig::aeromacs()
        };
        assert!(close(symbol_time(&wide), 51.2e-6, 1e-18));
    }

    #[test]
    fn cp_examples() {
        let mut cfg = OfdmaConfig::aeromacs();
        assert!(close(cp_length(&cfg), 12.8e-6, 1e-18));
        cfg.cp_ratio_log2 = 2;
        assert!(close(cp_length(&cfg), 25.6e-6, 1e-18));
        // Homogeneous in Ts.
        let mut faster = cfg.clone();
        faster.bandwidth_hz *= 4.0;
        assert!(close(cp_length(&faster) * 4.0, cp_length(&cfg), 1e-18));
    }

    #[test]
    fn cp_selection_examples() {
        assert_eq!(select_cp_ratio(102.4e-6, 10e-6), Ok(3));
        assert!(matches!(
            select_cp_ratio(102.4e-6, 30e-6),
            Err(ParamsError::NoFeasibleRatio { .. })
        ));
        // 102.4 / 256 = 0.4 exactly: boundary is inclusive.
        assert_eq!(select_cp_ratio(102.4e-6, 0.4e-6), Ok(8));
        assert!(select_cp_ratio(0.0, 1e-6).is_err());
        assert!(select_cp_ratio(1e-4, -1.0).is_err());
    }

    #[test]
    fn cp_selection_matches_exhaustive_scan() {
        let ts = 102.4e-6;
        for i in 1..2000 {
            let spread = i as f64 * 0.02e-6;
            let feasible: Vec<u32> = (2..=8)
                .filter(|&k| ts / 2f64.powi(k as i32) >= spread)
                .collect();
            match select_cp_ratio(ts, spread) {
                Ok(k) => {
                    assert_eq!(Some(&k), feasible.iter().max());
                    assert!(k == 8 || ts / 2f64.powi(k as i32 + 1) < spread);
                }
                Err(_) => assert!(feasible.is_empty()),
            }
        }
    }

    #[test]
    fn rate_examples() {
        let cfg = OfdmaConfig::aeromacs();
        assert!(close(data_rate(&cfg, 2), 8_888_888.888_889, 1e-3));
        assert_eq!(data_rate(&cfg, 0), 0.0);
        assert!(close(data_rate(&cfg, 6), 26_666_666.666_667, 1e-3));
    }

    #[test]
    fn rate_decreases_with_cp() {
        let mut prev = f64::INFINITY;
        for k in (2..=8).rev() {
            let cfg = OfdmaConfig {
                cp_ratio_log2: k,
                ..OfdmaConfig::aeromacs()
            };
            let r = data_rate(&cfg, 4);
            // Iterating k downwards means G grows, so rate must shrink.
            assert!(r < prev);
            prev = r;
        }
    }

    #[test]
    fn snr_loss_examples() {
        let mut cfg = OfdmaConfig::aeromacs();
        assert!(close(snr_loss_db(&cfg), 0.511_525_224_5, 1e-9));
        cfg.cp_ratio_log2 = 2;
        assert!(close(snr_loss_db(&cfg), 0.969_100_130_1, 1e-9));
        assert_eq!(snr_loss_db_for(0.0, 1e-4), 0.0);
        let mut prev = 0.0;
        for k in (2..=8).rev() {
            cfg.cp_ratio_log2 = k;
            let loss = snr_loss_db(&cfg);
            assert!(loss > prev);
            prev = loss;
        }
    }

    #[test]
    fn frame_throughput_examples() {
        let cfg = OfdmaConfig::aeromacs();
        let qpsk = McsScheme::qpsk_half();
        let dl = frame_throughput(&cfg, &qpsk, Direction::Downlink, 12).unwrap();
        assert!(close(dl, 864_000.0, 1e-6));
        let full = frame_throughput(&cfg, &qpsk, Direction::Downlink, 24).unwrap();
        assert!(close(full, 1_728_000.0, 1e-6));
        let ul = frame_throughput(&cfg, &qpsk, Direction::Uplink, 12).unwrap();
        assert!(close(ul / dl, 272.0 / 360.0, 1e-12));
        assert!(frame_throughput(&cfg, &qpsk, Direction::Downlink, 0).is_err());
        assert_eq!(
            frame_throughput(&cfg, &qpsk, Direction::Downlink, 25),
            Err(ParamsError::SymbolBudgetExceeded {
                requested: 25,
                available: 24
            })
        );
    }

    #[test]
    fn mcs_validation() {
        assert!(McsScheme::new("8PSK", 3, CodingRate::HALF).is_err());
        assert!(McsScheme::new("bad", 2, CodingRate::new(1, 1)).is_err());
        assert!(McsScheme::new("bad", 2, CodingRate::new(0, 2)).is_err());
        let catalog = McsScheme::full_catalog();
        assert_eq!(catalog.len(), 12);
        assert_eq!(catalog.iter().filter(|m| m.reference_dl_kbps.is_some()).count(), 3);
    }
}
