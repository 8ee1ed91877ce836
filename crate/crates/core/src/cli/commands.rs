use serde::Serialize;
use serde_json::json;

use super::config::RunConfig;
use super::report::{slug, Cell, KeyValues, Report, Table};
use super::CliError;
use crate::mobility::{
    IciInterpretation, MobilityAnalysis, SpeedLimitChain, PUBLISHED_MAX_SPEED_KMH,
    PUBLISHED_MAX_SPEED_MPS,
};
use crate::params::{
    cp_length, data_rate, frame_throughput, select_cp_ratio, snr_loss_db, subcarrier_spacing,
    symbol_time, Direction, McsScheme, AEROMACS_NOMINAL_SPACING_HZ,
};
use crate::propagation::{
    delay_spread_s, effective_cell_range_m, max_los_coverage_m, plan_corridor, ExcessLossModel,
    LinkBudget,
};
use crate::simulator::{simulate_cp_isi, simulate_ici, CpIsiSpec, SimulationSpec};
use crate::units::{mps_to_kmh, Extended};

fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

#[derive(Serialize)]
struct ThroughputEntry<'a> {
    mcs: &'a str,
    bits_per_symbol: u32,
    coding_rate: f64,
    direction: Direction,
    n_symbols: u32,
    rate_bps: f64,
    reference_kbps: Option<f64>,
}

/// Numerology, raw rates, prefix overhead and per-direction frame throughput.
pub fn params_report(cfg: &RunConfig, dl_symbols: u32) -> Result<Report, CliError> {
    let p = &cfg.profile;
    if dl_symbols == 0 || dl_symbols >= p.frame_symbols {
        return Err(CliError::Input(format!(
            "dl_symbols must lie in [1, {}] so both directions get a symbol, got {dl_symbols}",
            p.frame_symbols - 1
        )));
    }
    let ul_symbols = p.frame_symbols - dl_symbols;
    let spacing = subcarrier_spacing(p);
    let ts = symbol_time(p);
    let cp = cp_length(p);

    let mut kv = KeyValues::new();
    kv.add("profile", Cell::Text(cfg.profile_name.clone()), "name")
        .add("bandwidth_hz", p.bandwidth_hz, "Hz")
        .add("n_subcarriers", Cell::Int(p.n_subcarriers as i64), "count")
        .add("subcarrier_spacing_hz", spacing, "Hz")
        .add("subcarrier_spacing_khz", spacing / 1e3, "kHz")
        .add("symbol_time_us", ts * 1e6, "us")
        .add("cp_ratio_log2", Cell::Int(p.cp_ratio_log2 as i64), "k")
        .add("cp_ratio", p.cp_ratio(), "ratio")
        .add("cp_length_us", cp * 1e6, "us")
        .add("snr_loss_db", snr_loss_db(p), "dB");
    let mut raw = Vec::new();
    for bits in [2u32, 4, 6] {
        let rate = data_rate(p, bits);
        kv.add(format!("raw_data_rate_b{bits}_mbps"), rate / 1e6, "Mbit/s");
        raw.push(json!({ "bits_per_symbol": bits, "rate_bps": rate }));
    }
    kv.add("dl_symbols", Cell::Int(dl_symbols as i64), "symbols")
        .add("ul_symbols", Cell::Int(ul_symbols as i64), "symbols");

    let catalog = McsScheme::full_catalog();
    let mut entries = Vec::new();
    for mcs in &catalog {
        for (direction, n_symbols) in [(Direction::Downlink, dl_symbols), (Direction::Uplink, ul_symbols)] {
            let rate = frame_throughput(p, mcs, direction, n_symbols).map_err(input)?;
            let dir = direction.label().to_ascii_lowercase();
            kv.add(
                format!("frame_throughput_{dir}_{}_kbps", slug(mcs.name)),
                rate / 1e3,
                "kbit/s",
            );
            if let Some(reference) = mcs.reference_kbps(direction) {
                kv.add(
                    format!("measured_throughput_{dir}_{}_kbps", slug(mcs.name)),
                    reference,
                    "kbit/s",
                );
            }
            entries.push(ThroughputEntry {
                mcs: mcs.name,
                bits_per_symbol: mcs.bits_per_symbol,
                coding_rate: mcs.coding_rate.value(),
                direction,
                n_symbols,
                rate_bps: rate,
                reference_kbps: mcs.reference_kbps(direction),
            });
        }
    }

    let body = json!({
        "profile_name": cfg.profile_name,
        "profile": p,
        "subcarrier_spacing_hz": spacing,
        "symbol_time_s": ts,
        "cp_ratio_log2": p.cp_ratio_log2,
        "cp_ratio": p.cp_ratio(),
        "cp_length_s": cp,
        "snr_loss_db": snr_loss_db(p),
        "raw_data_rate": raw,
        "dl_symbols": dl_symbols,
        "ul_symbols": ul_symbols,
        "frame_throughput": entries,
    });
    Ok(Report::new("params", kv.into_table(), body))
}

/// LoS coverage, excess-loss cell range, and the prefix that range calls for.
pub fn coverage_report(
    cfg: &RunConfig,
    alpha_override: bool,
    band_check: bool,
) -> Result<Report, CliError> {
    let budget =
        LinkBudget::new(cfg.max_path_loss_db, cfg.carrier_freq_hz, band_check).map_err(input)?;
    let model = if alpha_override {
        ExcessLossModel::with_override(cfg.excess_loss_alpha)
    } else {
        ExcessLossModel::new(cfg.excess_loss_alpha)
    }
    .map_err(input)?;
    let los = max_los_coverage_m(&budget);
    let cell = effective_cell_range_m(&budget, &model);
    let spread = delay_spread_s(cell);
    let ts = symbol_time(&cfg.profile);
    let k = select_cp_ratio(ts, spread).ok();

    let mut kv = KeyValues::new();
    kv.add("max_path_loss_db", budget.max_path_loss_db, "dB")
        .add("carrier_freq_hz", budget.carrier_freq_hz, "Hz")
        .add("max_los_coverage_km", los / 1e3, "km")
        .add("excess_loss_alpha", model.alpha_db_per_km, "dB/km")
        .add("effective_cell_range_km", cell / 1e3, "km")
        .add("delay_spread_at_range_us", spread * 1e6, "us")
        .add(
            "suggested_cp_ratio_log2",
            k.map_or(Cell::Text("none".into()), |k| Cell::Int(k as i64)),
            "k",
        )
        .add("gs_antenna_gain_dbi", budget.gs_antenna_gain_dbi, "dBi")
        .add("ms_antenna_gain_dbi", budget.ms_antenna_gain_dbi, "dBi")
        .add("tx_power_per_branch_dbm", budget.tx_power_dbm, "dBm")
        .add("gs_eirp_per_branch_dbm", budget.gs_eirp_dbm(), "dBm");
    let body = json!({
        "link_budget": budget,
        "excess_loss": model,
        "max_los_coverage_m": los,
        "effective_cell_range_m": cell,
        "delay_spread_at_range_s": spread,
        "suggested_cp_ratio_log2": k,
        "gs_eirp_per_branch_dbm": budget.gs_eirp_dbm(),
    });
    Ok(Report::new("coverage", kv.into_table(), body))
}

/// Inclusive speed range in m/s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRange {
    pub v_min: f64,
    pub v_max: f64,
    pub step: f64,
}

impl SweepRange {
    pub fn new(v_min: f64, v_max: f64, step: f64) -> Result<Self, CliError> {
        if !(v_min >= 0.0 && v_min < v_max && v_max.is_finite()) {
            return Err(CliError::Input(format!(
                "speed range must satisfy 0 <= v_min < v_max, got {v_min}..{v_max}"
            )));
        }
        if !(step > 0.0 && step.is_finite()) {
            return Err(CliError::Input(format!("step must be positive, got {step}")));
        }
        if (v_max - v_min) / step > 1e6 {
            return Err(CliError::Input("sweep would exceed a million rows".into()));
        }
        Ok(SweepRange { v_min, v_max, step })
    }

    /// `v_min + i·step` up to and including `v_max` (within rounding).
    pub fn speeds(&self) -> Vec<f64> {
        let count = ((self.v_max - self.v_min) / self.step + 1e-9).floor() as u64;
        (0..=count)
            .map(|i| self.v_min + i as f64 * self.step)
            .collect()
    }
}

#[derive(Serialize)]
struct SweepRow {
    speed_mps: f64,
    speed_kmh: f64,
    doppler_hz: f64,
    ici_dbm: Option<f64>,
    signal_to_ici_db: Extended,
    coherence_ms: Extended,
}

/// One row per speed: Doppler, ICI, signal-to-ICI and coherence time.
pub fn doppler_sweep(
    cfg: &RunConfig,
    range: &SweepRange,
    interpretation: IciInterpretation,
) -> Result<Report, CliError> {
    let ts = symbol_time(&cfg.profile);
    let n = cfg.profile.n_subcarriers;
    let mut table = Table::new(vec![
        "speed_mps",
        "speed_kmh",
        "doppler_hz",
        "ici_dbm",
        "signal_to_ici_db",
        "coherence_ms",
    ]);
    let mut rows = Vec::new();
    for v in range.speeds() {
        let a = MobilityAnalysis::at_speed(v, cfg.carrier_freq_hz, cfg.es_dbm, ts, n, interpretation)
            .map_err(input)?;
        let row = SweepRow {
            speed_mps: a.speed_mps,
            speed_kmh: mps_to_kmh(a.speed_mps),
            doppler_hz: a.doppler_hz,
            ici_dbm: a.ici_power_dbm,
            signal_to_ici_db: a.signal_to_ici_db,
            coherence_ms: a.coherence_time_s.map(|t| t * 1e3),
        };
        table.push(vec![
            row.speed_mps.into(),
            row.speed_kmh.into(),
            row.doppler_hz.into(),
            row.ici_dbm.into(),
            row.signal_to_ici_db.into(),
            row.coherence_ms.into(),
        ]);
        rows.push(row);
    }
    let body = json!({
        "profile_name": cfg.profile_name,
        "carrier_freq_hz": cfg.carrier_freq_hz,
        "es_dbm": cfg.es_dbm,
        "symbol_time_s": ts,
        "n_subcarriers": n,
        "interpretation": interpretation,
        "rows": rows,
    });
    Ok(Report::new("doppler-sweep", table, body))
}

/// Where the subcarrier spacing for the speed-limit chain comes from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpacingSource {
    /// The nominal 10 kHz quoted for AeroMACS.
    Nominal,
    /// `BW / (N + 1)` of the configured profile.
    Profile,
    Explicit(f64),
}

/// The spacing → spread → coherence → Doppler → speed chain, plus the published limit.
pub fn max_speed_report(cfg: &RunConfig, source: SpacingSource) -> Result<Report, CliError> {
    let (spacing, label) = match source {
        SpacingSource::Nominal => (AEROMACS_NOMINAL_SPACING_HZ, "nominal"),
        SpacingSource::Profile => (subcarrier_spacing(&cfg.profile), "profile"),
        SpacingSource::Explicit(v) => (v, "explicit"),
    };
    let chain = SpeedLimitChain::new(spacing, cfg.carrier_freq_hz).map_err(input)?;
    let mut kv = KeyValues::new();
    kv.add("spacing_source", Cell::Text(label.into()), "label")
        .add("subcarrier_spacing_hz", chain.subcarrier_spacing_hz, "Hz")
        .add("carrier_freq_hz", chain.carrier_freq_hz, "Hz")
        .add("doppler_spread_limit_hz", chain.doppler_spread_limit_hz, "Hz")
        .add("min_coherence_time_ms", chain.min_coherence_time_s * 1e3, "ms")
        .add("max_doppler_hz", chain.max_doppler_hz, "Hz")
        .add("max_speed_mps", chain.max_speed_mps, "m/s")
        .add("max_speed_kmh", mps_to_kmh(chain.max_speed_mps), "km/h")
        .add(
            "published_max_speed_mps",
            PUBLISHED_MAX_SPEED_MPS,
            "m/s (published; inconsistent with chain)",
        )
        .add(
            "published_max_speed_kmh",
            PUBLISHED_MAX_SPEED_KMH,
            "km/h (published; inconsistent with chain)",
        );
    let body = json!({
        "spacing_source": label,
        "chain": chain,
        "max_speed_kmh": mps_to_kmh(chain.max_speed_mps),
        "published_max_speed": {
            "mps": PUBLISHED_MAX_SPEED_MPS,
            "kmh": PUBLISHED_MAX_SPEED_KMH,
            "consistent_with_chain": false,
        },
    });
    Ok(Report::new("max-speed", kv.into_table(), body))
}

pub fn simulate_ici_report(spec: &SimulationSpec) -> Result<Report, CliError> {
    let result = simulate_ici(spec).map_err(input)?;
    if !result.empirical_ici_norm.is_finite() {
        return Err(CliError::Internal("simulation produced a non-finite estimate".into()));
    }
    let agreement = result.agreement();
    let verdict = if agreement.pass { "pass" } else { "fail" };
    let mut kv = KeyValues::new();
    kv.add("n_subcarriers", Cell::Int(spec.n_subcarriers as i64), "count")
        .add("fd_ts", spec.fd_ts, "ratio")
        .add("trials", Cell::Int(spec.trials as i64), "count")
        .add("oscillators", Cell::Int(spec.oscillators as i64), "count")
        .add("seed", Cell::Text(spec.seed.to_string()), "seed")
        .add("empirical_ici_norm", result.empirical_ici_norm, "ratio")
        .add("analytic_ici_norm", result.analytic_ici_norm, "ratio")
        .add("analytic_literal_ici_norm", result.analytic_literal_ici_norm, "ratio")
        .add("standard_error", result.standard_error, "ratio")
        .add("difference_db", agreement.difference_db, "dB")
        .add("tolerance", agreement.tolerance, "ratio")
        .add("verdict", Cell::Text(verdict.into()), "label");
    let body = json!({
        "spec": spec,
        "result": result,
        "agreement": agreement,
        "verdict": verdict,
    });
    Ok(Report::new("simulate ici", kv.into_table(), body))
}

pub fn simulate_cp_report(spec: &CpIsiSpec) -> Result<Report, CliError> {
    let result = simulate_cp_isi(spec).map_err(input)?;
    let mut kv = KeyValues::new();
    kv.add("n_subcarriers", Cell::Int(spec.n_subcarriers as i64), "count")
        .add("cp_samples", Cell::Int(spec.cp_samples as i64), "samples")
        .add("echo_delay_samples", Cell::Int(spec.echo_delay_samples as i64), "samples")
        .add("echo_gain", spec.echo_gain, "ratio")
        .add("trials", Cell::Int(spec.trials as i64), "symbols")
        .add("seed", Cell::Text(spec.seed.to_string()), "seed")
        .add("symbol_error_rate", result.symbol_error_rate, "ratio")
        .add("symbol_errors", Cell::Int(result.symbol_errors as i64), "count")
        .add("symbols_counted", Cell::Int(result.symbols_counted as i64), "count")
        .add("nulled_subcarriers", Cell::Int(result.nulled_subcarriers as i64), "count");
    let body = json!({ "spec": spec, "result": result });
    Ok(Report::new("simulate cp", kv.into_table(), body))
}

pub fn plan_report(length_m: f64, radius_m: f64, redundancy: u32) -> Result<Report, CliError> {
    let plan = plan_corridor(length_m, radius_m, redundancy).map_err(input)?;
    let mut kv = KeyValues::new();
    kv.add("length_m", plan.length_m, "m")
        .add("cell_radius_m", plan.cell_radius_m, "m")
        .add("redundancy", Cell::Int(plan.redundancy as i64), "count")
        .add("nominal_spacing_m", plan.nominal_spacing_m, "m")
        .add("spacing_m", plan.spacing_m, "m")
        .add("station_count", Cell::Int(plan.positions_m.len() as i64), "count")
        .add("min_coverage", Cell::Int(plan.min_coverage as i64), "count");
    for (i, p) in plan.positions_m.iter().enumerate() {
        kv.add(format!("station_{i}_position_m"), *p, "m");
    }
    let body = json!({ "plan": plan });
    Ok(Report::new("plan", kv.into_table(), body))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::report::Format;

    #[test]
    fn sweep_includes_endpoint() {
        let r = SweepRange::new(0.0, 150.0 / 3.6, 5.0 / 3.6).unwrap();
        let speeds = r.speeds();
        assert_eq!(speeds.len(), 31);
        assert!((speeds[30] - 150.0 / 3.6).abs() < 1e-9);
        assert!(SweepRange::new(5.0, 1.0, 1.0).is_err());
        assert!(SweepRange::new(0.0, 1.0, 0.0).is_err());
        assert!(SweepRange::new(-1.0, 1.0, 0.5).is_err());
    }

    #[test]
    fn zero_speed_row_uses_sentinels() {
        let cfg = RunConfig::from_file(Default::default(), Format::Csv).unwrap();
        let range = SweepRange::new(0.0, 1.0, 1.0).unwrap();
        let csv = doppler_sweep(&cfg, &range, IciInterpretation::SamplePeriod)
            .unwrap()
            .render(Format::Csv);
        let first = csv.lines().nth(1).unwrap();
        assert_eq!(first, "0,0,0,,inf,inf");
    }
}
