//! Monte Carlo OFDM simulation used to check the analytic ICI model and the
//! cyclic-prefix sizing rule.
//!
//! Every random draw of trial `i` comes from a ChaCha8 generator seeded with
//! the run seed and switched to stream `i`. Trials never share generator
//! state, so results are identical for any thread count or execution order,
//! and per-trial statistics are combined in trial order.

mod cp;
mod fading;
mod ici;

pub use cp::{simulate_cp_isi, CpIsiResult, CpIsiSpec};
pub use fading::{generate_fading, generate_fading_with};
pub use ici::{simulate_ici, Agreement, Constellation, SimulationResult, SimulationSpec};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimulationError {
    #[error("invalid simulation spec: {field} {reason}")]
    InvalidSpec { field: &'static str, reason: String },
}

pub(crate) fn invalid<T>(field: &'static str, reason: impl Into<String>) -> Result<T, SimulationError> {
    Err(SimulationError::InvalidSpec {
        field,
        reason: reason.into(),
    })
}

/// Generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Unit-power QPSK point.
pub(crate) fn qpsk<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let a = std::f64::consts::FRAC_1_SQRT_2;
    let re = if rng.random::<bool>() { a } else { -a };
    let im = if rng.random::<bool>() { a } else { -a };
    Complex64::new(re, im)
}

/// Forward and inverse DFTs with unitary (1/√N) scaling.
#[derive(Clone)]
pub(crate) struct UnitaryDft {
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    scale: f64,
}

impl UnitaryDft {
    pub(crate) fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        UnitaryDft {
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
            scale: 1.0 / (n as f64).sqrt(),
        }
    }

    pub(crate) fn forward(&self, buf: &mut [Complex64]) {
        self.forward.process(buf);
        buf.iter_mut().for_each(|v| *v *= self.scale);
    }

    pub(crate) fn inverse(&self, buf: &mut [Complex64]) {
        self.inverse.process(buf);
        buf.iter_mut().for_each(|v| *v *= self.scale);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trial_streams_are_independent_of_order() {
        let a: Vec<u64> = (0..4).map(|t| trial_rng(7, t).random()).collect();
        let b: Vec<u64> = (0..4).rev().map(|t| trial_rng(7, t).random()).collect();
        assert_eq!(a, b.into_iter().rev().collect::<Vec<_>>());
        assert_ne!(a[0], a[1]);
        assert_ne!(trial_rng(7, 0).random::<u64>(), trial_rng(8, 0).random::<u64>());
    }

    #[test]
    fn unitary_dft_round_trip() {
        let dft = UnitaryDft::new(16);
        let orig: Vec<Complex64> = (0..16)
            .map(|i| Complex64::new(i as f64, -(i as f64) * 0.5))
            .collect();
        let mut buf = orig.clone();
        dft.inverse(&mut buf);
        let energy: f64 = buf.iter().map(|v| v.norm_sqr()).sum();
        let orig_energy: f64 = orig.iter().map(|v| v.norm_sqr()).sum();
        assert!((energy - orig_energy).abs() < 1e-9 * orig_energy);
        dft.forward(&mut buf);
        for (a, b) in buf.iter().zip(&orig) {
            assert!((a - b).norm() < 1e-12);
        }
    }
}
