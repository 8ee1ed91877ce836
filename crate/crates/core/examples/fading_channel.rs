// Clarke sum-of-sinusoids fading: envelope power and autocorrelation against J0.
//
// ```text
// cargo run --release --example fading_channel
// ```

use aeromacs::bessel::bessel_j0;
use aeromacs::simulator::generate_fading;
use std::f64::consts::PI;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (n, fd, trials, lags) = (128, 0.01, 2000u64, [0usize, 8, 16, 32]);
    let mut power = 0.0;
    let mut acf = [0.0; 4];
    for t in 0..trials {
        let h = generate_fading(n, fd, 64, t);
        power += h.iter().map(|v| v.norm_sqr()).sum::<f64>() / n as f64;
        for (slot, &lag) in acf.iter_mut().zip(&lags) {
            *slot += (h[0] * h[lag].conj()).re;
        }
    }
    println!("mean power {:.4}", power / trials as f64);
    for (a, &lag) in acf.iter().zip(&lags) {
        println!(
            "lag {lag:>2}: empirical {:+.4}  J0 {:+.4}",
            a / trials as f64,
            bessel_j0(2.0 * PI * fd * lag as f64)
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
