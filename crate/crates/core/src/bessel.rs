//! Zeroth-order Bessel function of the first kind.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

const SERIES_LIMIT: f64 = 2.0;
const ASYMPTOTIC_LIMIT: f64 = 25.0;

/// `J0(x)`.
///
/// Power series below |x| = 2, Miller's backward recurrence up to 25, and the
/// Hankel asymptotic expansion beyond. Evaluated on |x|, so `j0(-x)` and
/// `j0(x)` are bit-identical.
pub fn bessel_j0(x: f64) -> f64 {
    let ax = x.abs();
    if ax < SERIES_LIMIT {
        series(ax)
    } else if ax < ASYMPTOTIC_LIMIT {
        miller(ax)
    } else {
        hankel(ax)
    }
}

/// `1 - J0(x)`, accurate where `J0(x)` is close to 1.
///
/// Subtracting [`bessel_j0`] from one would lose most significant digits for
/// small arguments; below |x| = 2 the series is summed without its leading 1.
pub fn bessel_one_minus_j0(x: f64) -> f64 {
    let ax = x.abs();
    if ax < SERIES_LIMIT {
        let q = -0.25 * ax * ax;
        let mut term = 1.0;
        let mut sum = 0.0;
        for m in 1..40 {
            term *= q / (m * m) as f64;
            sum -= term;
            if term.abs() <= 1e-18 * sum.abs() {
                break;
            }
        }
        sum
    } else {
        1.0 - bessel_j0(ax)
    }
}

fn series(x: f64) -> f64 {
    // sum_m (-1)^m (x/2)^{2m} / (m!)^2
    let q = -0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for m in 1..40 {
        term *= q / (m * m) as f64;
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

fn miller(x: f64) -> f64 {
    // Start well above x so J_n(x) has decayed past double precision.
    let start = {
        let n = (x + 30.0 + 8.0 * x.cbrt()).ceil() as usize;
        n + (n & 1)
    };
    let two_over_x = 2.0 / x;
    let mut next = 0.0; // J_{n+1}
    let mut cur = 1e-300; // J_n
    let mut j0 = 0.0;
    let mut norm = 0.0; // J0 + 2 * sum J_{2k}
    for n in (1..=start).rev() {
        let prev = n as f64 * two_over_x * cur - next; // J_{n-1}
        next = cur;
        cur = prev;
        if cur.abs() > 1e250 {
            next *= 1e-250;
            cur *= 1e-250;
            norm *= 1e-250;
        }
        let order = n - 1;
        if order == 0 {
            j0 = cur;
            norm += cur;
        } else if order % 2 == 0 {
            norm += 2.0 * cur;
        }
    }
    j0 / norm
}

fn hankel(x: f64) -> f64 {
    // u_k = a_k(0) / x^k, P = u0 - u2 + u4 - ..., Q = u1 - u3 + ...
    let mut p = 1.0;
    let mut q = 0.0;
    let mut u: f64 = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        let next = u * (-odd * odd) / (8.0 * k as f64 * x);
        if next.abs() >= last || next.abs() < 1e-17 {
            break;
        }
        last = next.abs();
        u = next;
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * u;
        } else {
            q += sign * u;
        }
    }
    let (s, c) = x.sin_cos();
    // cos(x - π/4) and sin(x - π/4) without reducing x - π/4 ourselves.
    let cos_chi = (c + s) * FRAC_1_SQRT_2;
    let sin_chi = (s - c) * FRAC_1_SQRT_2;
    (2.0 / (PI * x)).sqrt() * (p * cos_chi - q * sin_chi)
}
