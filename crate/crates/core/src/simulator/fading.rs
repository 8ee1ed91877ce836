use num_complex::Complex64;
use rand::Rng;
use std::f64::consts::PI;

use super::trial_rng;

/// Clarke flat-fading sequence from `oscillators` summed sinusoids.
///
/// `h(n) = M^{-1/2} Σ_m exp(j(2π f_D T n cos α_m + φ_m))` with arrival angles
/// `α_m` and phases `φ_m` uniform on `[0, 2π)`. Over random draws,
/// `E[h(n) h*(n')] = J0(2π f_D T (n − n'))` and `E|h|² = 1`.
///
/// The generator is seeded from `trial_seed` alone (stream 0).
pub fn generate_fading(
    n_samples: usize,
    fd_tsamp: f64,
    oscillators: usize,
    trial_seed: u64,
) -> Vec<Complex64> {
    generate_fading_with(&mut trial_rng(trial_seed, 0), n_samples, fd_tsamp, oscillators)
}

/// As [`generate_fading`], drawing angles and phases from `rng`.
pub fn generate_fading_with<R: Rng + ?Sized>(
    rng: &mut R,
    n_samples: usize,
    fd_tsamp: f64,
    oscillators: usize,
) -> Vec<Complex64> {
    let mut h = vec![Complex64::new(0.0, 0.0); n_samples];
    if oscillators == 0 {
        return h;
    }
    let amp = 1.0 / (oscillators as f64).sqrt();
    for _ in 0..oscillators {
        let alpha = 2.0 * PI * rng.random::<f64>();
        let phi = 2.0 * PI * rng.random::<f64>();
        let omega = 2.0 * PI * fd_tsamp * alpha.cos();
        for (n, slot) in h.iter_mut().enumerate() {
            let (s, c) = (omega * n as f64 + phi).sin_cos();
            *slot += Complex64::new(c * amp, s * amp);
        }
    }
    h
}
