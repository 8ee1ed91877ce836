use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{generate_fading_with, invalid, qpsk, trial_rng, SimulationError, UnitaryDft};
use crate::mobility::{ici_normalized, IciInterpretation};
use crate::units::linear_to_db;

/// Probe constellation on every subcarrier. Both have unit average power.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Constellation {
    #[default]
    Qpsk,
    Qam16,
}

impl Constellation {
    fn draw<R: Rng + ?Sized>(self, rng: &mut R) -> Complex64 {
        match self {
            Constellation::Qpsk => qpsk(rng),
            Constellation::Qam16 => {
                const LEVELS: [f64; 4] = [-3.0, -1.0, 1.0, 3.0];
                let scale = 1.0 / 10f64.sqrt();
                let re = LEVELS[rng.random_range(0..4)];
                let im = LEVELS[rng.random_range(0..4)];
                Complex64::new(re * scale, im * scale)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationSpec {
    pub n_subcarriers: u32,
    /// Doppler normalized to the useful symbol time, `f_D · Ts`.
    pub fd_ts: f64,
    pub trials: u64,
    pub seed: u64,
    /// Sum-of-sinusoids order.
    pub oscillators: u32,
    pub constellation: Constellation,
}

impl SimulationSpec {
    pub fn new(n_subcarriers: u32, fd_ts: f64, trials: u64, seed: u64) -> Self {
        SimulationSpec {
            n_subcarriers,
            fd_ts,
            trials,
            seed,
            oscillators: 64,
            constellation: Constellation::Qpsk,
        }
    }

    pub fn validate(&self) -> Result<(), SimulationError> {
        if self.n_subcarriers < 2 || !self.n_subcarriers.is_power_of_two() {
            return invalid("n_subcarriers", "must be a power of two and at least 2");
        }
        if !(0.0..=1.0).contains(&self.fd_ts) {
            return invalid("fd_ts", "must lie in [0, 1]");
        }
        if self.trials == 0 {
            return invalid("trials", "must be at least 1");
        }
        if self.oscillators < 8 {
            return invalid("oscillators", "must be at least 8");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationResult {
    /// Mean per-subcarrier ICI power over `Es`.
    pub empirical_ici_norm: f64,
    /// Analytic value with the sample-period offset.
    pub analytic_ici_norm: f64,
    /// Analytic value with the full-symbol offset, for comparison only.
    pub analytic_literal_ici_norm: f64,
    pub standard_error: f64,
    pub trials_run: u64,
}

/// Comparison of a Monte Carlo estimate against the analytic model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Agreement {
    pub difference_db: f64,
    pub absolute_difference: f64,
    /// `max(3 · standard_error, 0.1 dB of the analytic value)`.
    pub tolerance: f64,
    pub pass: bool,
}

impl SimulationResult {
    /// `10 log10(empirical / analytic)`; 0 when both vanish.
    pub fn difference_db(&self) -> f64 {
        if self.empirical_ici_norm == 0.0 && self.analytic_ici_norm == 0.0 {
            0.0
        } else {
            linear_to_db(self.empirical_ici_norm / self.analytic_ici_norm)
        }
    }

    pub fn agreement(&self) -> Agreement {
        let absolute = (self.empirical_ici_norm - self.analytic_ici_norm).abs();
        let db_band = self.analytic_ici_norm * (10f64.powf(0.1 / 10.0) - 1.0);
        let tolerance = (3.0 * self.standard_error).max(db_band);
        Agreement {
            difference_db: self.difference_db(),
            absolute_difference: absolute,
            tolerance,
            pass: absolute <= tolerance,
        }
    }
}

/// Per-trial measurements.
#[derive(Debug, Clone, Copy)]
pub(crate) struct TrialOutcome {
    pub(crate) ici: f64,
    /// Mean leaked power over subcarriers.
    #[cfg_attr(not(test), allow(dead_code))]
    pub(crate) freq_power: f64,
    /// Mean of `|x(n)(h(n) − ḡ)|²` over samples.
    #[cfg_attr(not(test), allow(dead_code))]
    pub(crate) time_power: f64,
}

pub(crate) fn run_trial(spec: &SimulationSpec, dft: &UnitaryDft, trial: u64) -> TrialOutcome {
    let n = spec.n_subcarriers as usize;
    let mut rng = trial_rng(spec.seed, trial);
    let symbols: Vec<Complex64> = (0..n).map(|_| spec.constellation.draw(&mut rng)).collect();
    let mut time = symbols.clone();
    dft.inverse(&mut time);
    let h = generate_fading_with(
        &mut rng,
        n,
        spec.fd_ts / n as f64,
        spec.oscillators as usize,
    );
    // Y_k − ḡ X_k is the DFT of x(n)(h(n) − ḡ); forming it in time keeps a
    // constant channel at exactly zero leakage.
    let g0 = pairwise_sum(&h) / n as f64;
    for (x, g) in time.iter_mut().zip(&h) {
        *x *= g - g0;
    }
    let time_power = time.iter().map(|v| v.norm_sqr()).sum::<f64>() / n as f64;
    let mut leak = time;
    dft.forward(&mut leak);
    let freq_power = leak.iter().map(|v| v.norm_sqr()).sum::<f64>() / n as f64;
    let ici = freq_power;
    TrialOutcome {
        ici,
        freq_power,
        time_power,
    }
}

/// Tree sum; exact for identical terms when the length is a power of two.
fn pairwise_sum(v: &[Complex64]) -> Complex64 {
    match v.len() {
        0 => Complex64::new(0.0, 0.0),
        1 => v[0],
        len => {
            let (a, b) = v.split_at(len / 2);
            pairwise_sum(a) + pairwise_sum(b)
        }
    }
}

/// Estimates the per-subcarrier ICI power of OFDM over Clarke fading.
///
/// Each trial loads every subcarrier with a random unit-power symbol, applies
/// an independently drawn fading sequence sample by sample, and measures what
/// remains after removing the symbol-averaged channel gain from each
/// subcarrier. No noise is added.
pub fn simulate_ici(spec: &SimulationSpec) -> Result<SimulationResult, SimulationError> {
    spec.validate()?;
    let dft = UnitaryDft::new(spec.n_subcarriers as usize);
    let per_trial: Vec<f64> = (0..spec.trials)
        .into_par_iter()
        .map(|t| run_trial(spec, &dft, t).ici)
        .collect();
    let count = per_trial.len() as f64;
    let mean = per_trial.iter().sum::<f64>() / count;
    let standard_error = if per_trial.len() > 1 {
        let var = per_trial.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (count - 1.0);
        (var / count).sqrt()
    } else {
        0.0
    };
    Ok(SimulationResult {
        empirical_ici_norm: mean,
        analytic_ici_norm: ici_normalized(
            spec.fd_ts,
            spec.n_subcarriers,
            IciInterpretation::SamplePeriod,
        ),
        analytic_literal_ici_norm: ici_normalized(
            spec.fd_ts,
            spec.n_subcarriers,
            IciInterpretation::Literal,
        ),
        standard_error,
        trials_run: spec.trials,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn static_channel_has_no_ici() {
        let result = simulate_ici(&SimulationSpec::new(64, 0.0, 50, 1)).unwrap();
        assert_eq!(result.empirical_ici_norm, 0.0);
        assert_eq!(result.analytic_ici_norm, 0.0);
    }

    #[test]
    fn parseval_holds_per_trial() {
        let spec = SimulationSpec::new(64, 0.3, 20, 9);
        let dft = UnitaryDft::new(64);
        for t in 0..20 {
            let out = run_trial(&spec, &dft, t);
            assert!(((out.freq_power - out.time_power) / out.time_power).abs() < 1e-9);
        }
    }

    #[test]
    fn spec_validation() {
        let base = SimulationSpec::new(64, 0.05, 10, 1);
        assert!(base.validate().is_ok());
        assert!(SimulationSpec { n_subcarriers: 48, ..base.clone() }.validate().is_err());
        assert!(SimulationSpec { fd_ts: 1.5, ..base.clone() }.validate().is_err());
        assert!(SimulationSpec { trials: 0, ..base.clone() }.validate().is_err());
        assert!(SimulationSpec { oscillators: 4, ..base }.validate().is_err());
    }

    #[test]
    fn bit_identical_across_thread_counts() {
        let spec = SimulationSpec::new(32, 0.1, 300, 42);
        let one = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| simulate_ici(&spec).unwrap());
        let many = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap()
            .install(|| simulate_ici(&spec).unwrap());
        assert_eq!(one.empirical_ici_norm.to_bits(), many.empirical_ici_norm.to_bits());
        assert_eq!(one.standard_error.to_bits(), many.standard_error.to_bits());
    }

    #[test]
    fn agreement_band() {
        let r = SimulationResult {
            empirical_ici_norm: 1.01e-3,
            analytic_ici_norm: 1.0e-3,
            analytic_literal_ici_norm: 0.5,
            standard_error: 1e-6,
            trials_run: 10,
        };
        // 1% is inside the 0.1 dB (2.33%) band.
        assert!(r.agreement().pass);
        let r = SimulationResult {
            empirical_ici_norm: 1.05e-3,
            ..r
        };
        assert!(!r.agreement().pass);
    }
}
