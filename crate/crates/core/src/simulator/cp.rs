use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

use super::{invalid, qpsk, trial_rng, SimulationError, UnitaryDft};

/// Two-path static channel experiment on back-to-back CP-OFDM symbols.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CpIsiSpec {
    pub n_subcarriers: u32,
    pub cp_samples: u32,
    pub echo_delay_samples: u32,
    pub echo_gain: f64,
    /// Number of OFDM symbols transmitted.
    pub trials: u64,
    pub seed: u64,
}

impl CpIsiSpec {
    pub fn validate(&self) -> Result<(), SimulationError> {
        if self.n_subcarriers < 2 || !self.n_subcarriers.is_power_of_two() {
            return invalid("n_subcarriers", "must be a power of two and at least 2");
        }
        if self.cp_samples >= self.n_subcarriers {
            return invalid("cp_samples", "must be below n_subcarriers");
        }
        if self.echo_delay_samples >= self.n_subcarriers {
            return invalid("echo_delay_samples", "must be below n_subcarriers");
        }
        if !(0.0..=1.0).contains(&self.echo_gain) {
            return invalid("echo_gain", "must lie in [0, 1]");
        }
        if self.trials == 0 {
            return invalid("trials", "must be at least 1");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CpIsiResult {
    pub symbol_error_rate: f64,
    pub symbol_errors: u64,
    pub symbols_counted: u64,
    /// Subcarriers where the echo cancels the direct path exactly; their
    /// symbols are unrecoverable by one-tap equalization and not counted.
    pub nulled_subcarriers: u32,
}

/// Symbol error rate of QPSK-OFDM through `h = δ(n) + g δ(n − d)`.
///
/// The receiver drops the prefix, takes the DFT and divides by the true
/// channel response. With no noise, errors come only from the echo reaching
/// past the prefix into the previous symbol.
pub fn simulate_cp_isi(spec: &CpIsiSpec) -> Result<CpIsiResult, SimulationError> {
    spec.validate()?;
    let n = spec.n_subcarriers as usize;
    let cp = spec.cp_samples as usize;
    let d = spec.echo_delay_samples as usize;
    let block = n + cp;
    let symbols = spec.trials as usize;
    let dft = UnitaryDft::new(n);

    let mut data = Vec::with_capacity(symbols);
    let mut tx = Vec::with_capacity(symbols * block);
    for i in 0..symbols {
        let mut rng = trial_rng(spec.seed, i as u64);
        let freq: Vec<Complex64> = (0..n).map(|_| qpsk(&mut rng)).collect();
        let mut time = freq.clone();
        dft.inverse(&mut time);
        tx.extend_from_slice(&time[n - cp..]);
        tx.extend_from_slice(&time);
        data.push(freq);
    }

    let rx: Vec<Complex64> = (0..tx.len())
        .map(|k| if k >= d { tx[k] + spec.echo_gain * tx[k - d] } else { tx[k] })
        .collect();

    let response: Vec<Complex64> = (0..n)
        .map(|k| {
            let phase = -2.0 * PI * (k * d) as f64 / n as f64;
            Complex64::new(1.0, 0.0) + spec.echo_gain * Complex64::from_polar(1.0, phase)
        })
        .collect();
    let usable: Vec<bool> = response.iter().map(|h| h.norm_sqr() >= 1e-12).collect();
    let nulled = usable.iter().filter(|u| !**u).count() as u32;

    let mut errors = 0u64;
    let mut counted = 0u64;
    let mut window = vec![Complex64::new(0.0, 0.0); n];
    for (i, sent) in data.iter().enumerate() {
        let start = i * block + cp;
        window.copy_from_slice(&rx[start..start + n]);
        dft.forward(&mut window);
        for k in (0..n).filter(|&k| usable[k]) {
            let z = window[k] / response[k];
            let x = sent[k];
            counted += 1;
            if (z.re >= 0.0) != (x.re >= 0.0) || (z.im >= 0.0) != (x.im >= 0.0) {
                errors += 1;
            }
        }
    }

    Ok(CpIsiResult {
        symbol_error_rate: if counted == 0 {
            0.0
        } else {
            errors as f64 / counted as f64
        },
        symbol_errors: errors,
        symbols_counted: counted,
        nulled_subcarriers: nulled,
    })
}
