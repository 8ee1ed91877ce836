//! Unit conversions and the "unbounded" value used for static-channel results.

use serde::{Serialize, Serializer};
use std::fmt;

/// Speed of light used throughout the toolkit, in m/s.
pub const SPEED_OF_LIGHT_MPS: f64 = 2.998e8;

pub fn dbm_to_mw(dbm: f64) -> f64 {
    10f64.powf(dbm / 10.0)
}

pub fn mw_to_dbm(mw: f64) -> f64 {
    10.0 * mw.log10()
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(ratio: f64) -> f64 {
    10.0 * ratio.log10()
}

pub fn kmh_to_mps(kmh: f64) -> f64 {
    kmh / 3.6
}

pub fn mps_to_kmh(mps: f64) -> f64 {
    mps * 3.6
}

/// A quantity that is either finite or unbounded above.
///
/// Static channels produce an infinite coherence time and an infinite
/// signal-to-ICI ratio. Those are carried explicitly rather than as raw
/// floating-point infinities, and serialize as the string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Extended {
    Finite(f64),
    Infinite,
}

impl Extended {
    pub fn finite(self) -> Option<f64> {
        match self {
            Extended::Finite(v) => Some(v),
            Extended::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Extended::Infinite)
    }

    pub fn map(self, f: impl FnOnce(f64) -> f64) -> Extended {
        match self {
            Extended::Finite(v) => Extended::Finite(f(v)),
            Extended::Infinite => Extended::Infinite,
        }
    }
}

impl Serialize for Extended {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Extended::Finite(v) => serializer.serialize_f64(*v),
            Extended::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(v) => write!(f, "{}", format_sig(*v, 6)),
            Extended::Infinite => f.write_str("inf"),
        }
    }
}

/// Formats `value` with `digits` significant digits, in the style of C's `%g`.
///
/// Trailing zeros are trimmed; scientific notation is used when the decimal
/// exponent is below -5 or at least `digits`.
pub fn format_sig(value: f64, digits: usize) -> String {
    if value == 0.0 {
        return "0".to_string();
    }
    if !value.is_finite() {
        return if value.is_nan() {
            "nan".into()
        } else if value > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let digits = digits.max(1);
    // Round first so the exponent reflects the rounded mantissa (9.999995 -> 10).
    let sci = format!("{:.*e}", digits - 1, value);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, value)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig_digits_match_printf_g() {
        assert_eq!(format_sig(102.4, 6), "102.4");
        assert_eq!(format_sig(8888888.888, 6), "8.88889e+06");
        assert_eq!(format_sig(0.000500168, 6), "0.000500168");
        assert_eq!(format_sig(0.0000012345678, 6), "1.23457e-06");
        assert_eq!(format_sig(-17.01134, 6), "-17.0113");
        assert_eq!(format_sig(9.9999996, 6), "10");
        assert_eq!(format_sig(999999.7, 6), "1e+06");
        assert_eq!(format_sig(0.0, 6), "0");
        assert_eq!(format_sig(150.0, 6), "150");
    }

    #[test]
    fn dbm_round_trip() {
        assert!((dbm_to_mw(24.0) - 251.188_643_150_958).abs() < 1e-9);
        assert!((mw_to_dbm(dbm_to_mw(-13.5)) + 13.5).abs() < 1e-12);
    }

    #[test]
    fn extended_serializes_inf_as_string() {
        let json = serde_json::to_string(&vec![Extended::Finite(1.5), Extended::Infinite]).unwrap();
        assert_eq!(json, r#"[1.5,"inf"]"#);
    }
}
