//! Unit conversions and physical constants.
//!
//! Everything inside the engine is carried in linear SI units (W, W/Hz, Hz,
//! m, K). Decibel forms only show up at the API edges and in reports.

use crate::error::{domain, Result};

/// Boltzmann constant, J/K (exact SI value).
pub const BOLTZMANN: f64 = 1.380649e-23;

/// Speed of light in vacuum, m/s (exact SI value).
pub const SPEED_OF_LIGHT: f64 = 2.99792458e8;

pub const GHZ: f64 = 1e9;

/// A ratio expressed in decibels.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Decibel(pub f64);

impl Decibel {
    pub fn from_linear(x: f64) -> Result<Self> {
        to_db(x).map(Decibel)
    }

    pub fn linear(self) -> Result<f64> {
        from_db(self.0)
    }
}

/// `10·log10(x)`. Zero, negative and non-finite ratios are rejected.
pub fn to_db(x: f64) -> Result<f64> {
    if x > 0.0 && x.is_finite() {
        Ok(10.0 * libm::log10(x))
    } else {
        Err(domain("linear ratio", x, "finite and > 0"))
    }
}

/// `10^(x/10)`.
pub fn from_db(x: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(libm::pow(10.0, x / 10.0))
    } else {
        Err(domain("dB value", x, "finite"))
    }
}

pub fn dbm_to_watts(x: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(1e-3 * libm::pow(10.0, x / 10.0))
    } else {
        Err(domain("dBm value", x, "finite"))
    }
}

pub fn watts_to_dbm(w: f64) -> Result<f64> {
    Ok(to_db(w)? + 30.0)
}

/// Power spectral density in W/Hz expressed as dBm/Hz.
pub fn psd_to_dbm_per_hz(psd: f64) -> Result<f64> {
    watts_to_dbm(psd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn db_examples() {
        assert_eq!(to_db(1.0).unwrap(), 0.0);
        assert_relative_eq!(to_db(2.0).unwrap(), 3.0103, epsilon = 1e-4);
        // Table ratio 0.26 maps to the -5.9 dB threshold after rounding.
        assert_relative_eq!(to_db(0.26).unwrap(), -5.85, epsilon = 5e-3);
        assert_eq!(from_db(0.0).unwrap(), 1.0);
        assert_relative_eq!(from_db(1.0).unwrap(), 1.2589, epsilon = 1e-4);
        assert_relative_eq!(from_db(-5.9).unwrap(), 0.257, epsilon = 1e-3);
    }

    #[test]
    fn dbm_examples() {
        assert_relative_eq!(dbm_to_watts(0.0).unwrap(), 1e-3, max_relative = 1e-15);
        assert_relative_eq!(dbm_to_watts(30.0).unwrap(), 1.0, max_relative = 1e-15);
        assert_relative_eq!(dbm_to_watts(25.0).unwrap(), 0.3162, epsilon = 1e-4);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(to_db(0.0).is_err());
        assert!(to_db(-1.0).is_err());
        assert!(to_db(f64::NAN).is_err());
        assert!(from_db(f64::INFINITY).is_err());
        assert!(dbm_to_watts(f64::NAN).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20_000))]
        #[test]
        fn db_round_trip(exp in -30.0f64..30.0, mant in 1.0f64..10.0) {
            let x = mant * libm::pow(10.0, exp);
            let back = from_db(to_db(x).unwrap()).unwrap();
            prop_assert!(((back - x) / x).abs() < 1e-12);
        }

        #[test]
        fn to_db_strictly_increasing(a in 1e-30f64..1e30, factor in 1.000001f64..1e6) {
            prop_assert!(to_db(a * factor).unwrap() > to_db(a).unwrap());
        }

        #[test]
        fn dbm_round_trip(dbm in -200.0f64..100.0) {
            let w = dbm_to_watts(dbm).unwrap();
            let back = dbm_to_watts(watts_to_dbm(w).unwrap()).unwrap();
            prop_assert!(((back - w) / w).abs() < 1e-12);
        }
    }
}
