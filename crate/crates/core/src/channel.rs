//! Propagation loss: free-space spreading plus gaseous absorption.

use crate::atmosphere::{Atmosphere, AtmosphericConditions};
use crate::error::{domain, ensure_within, Result};
use crate::quantities::SPEED_OF_LIGHT;

/// Aperture assumed by [`near_field_warning`], m.
pub const REFERENCE_APERTURE_M: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LinkGeometry {
    pub distance_m: f64,
    pub tx_gain_dbi: f64,
    pub rx_gain_dbi: f64,
}

impl LinkGeometry {
    pub fn new(distance_m: f64, tx_gain_dbi: f64, rx_gain_dbi: f64) -> Result<Self> {
        let g = Self {
            distance_m,
            tx_gain_dbi,
            rx_gain_dbi,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.distance_m > 0.0 && self.distance_m.is_finite()) {
            return Err(domain("distance_m", self.distance_m, "finite and > 0"));
        }
        ensure_within("tx_gain_dbi", self.tx_gain_dbi, -10.0, 80.0, "-10..=80 dBi")?;
        ensure_within("rx_gain_dbi", self.rx_gain_dbi, -10.0, 80.0, "-10..=80 dBi")?;
        Ok(())
    }

    pub fn total_gain_dbi(&self) -> f64 {
        self.tx_gain_dbi + self.rx_gain_dbi
    }
}

/// `20·log10(4π·d·f/c)`. Applied at every distance, so it goes negative
/// when `d < c/(4πf)`.
pub fn fspl_db(d_m: f64, f_hz: f64) -> Result<f64> {
    if !(d_m > 0.0 && d_m.is_finite()) {
        return Err(domain("distance_m", d_m, "finite and > 0"));
    }
    if !(f_hz > 0.0 && f_hz.is_finite()) {
        return Err(domain("frequency_hz", f_hz, "finite and > 0"));
    }
    Ok(20.0 * libm::log10(4.0 * core::f64::consts::PI * d_m * f_hz / SPEED_OF_LIGHT))
}

/// `10·log10(1/τ)`, i.e. `γ·d_km`.
pub fn absorption_loss_db(
    atm: &Atmosphere,
    d_m: f64,
    f_hz: f64,
    cond: &AtmosphericConditions,
) -> Result<f64> {
    atm.prepare(cond)?.absorption_db(d_m, f_hz)
}

pub fn total_path_loss_db(
    atm: &Atmosphere,
    d_m: f64,
    f_hz: f64,
    cond: &AtmosphericConditions,
) -> Result<f64> {
    Ok(fspl_db(d_m, f_hz)? + absorption_loss_db(atm, d_m, f_hz, cond)?)
}

/// `2·D²/λ` for an aperture of size `aperture_m`.
pub fn fraunhofer_distance_m(aperture_m: f64, f_hz: f64) -> f64 {
    2.0 * aperture_m * aperture_m * f_hz / SPEED_OF_LIGHT
}

/// True when `d_m` sits inside the Fraunhofer distance of a
/// [`REFERENCE_APERTURE_M`] antenna. Diagnostic only.
pub fn near_field_warning(d_m: f64, f_hz: f64) -> bool {
    d_m < fraunhofer_distance_m(REFERENCE_APERTURE_M, f_hz)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantities::GHZ;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    const HOT: AtmosphericConditions = AtmosphericConditions::hot();

    #[test]
    fn fspl_examples() {
        let f = 300.0 * GHZ;
        let unit = SPEED_OF_LIGHT / (4.0 * core::f64::consts::PI * f);
        assert!(fspl_db(unit, f).unwrap().abs() < 1e-12);
        // d·f/c = 1 leaves 20·log10(4π).
        let d = SPEED_OF_LIGHT / f;
        assert_relative_eq!(
            fspl_db(d, f).unwrap(),
            21.984197280441926,
            max_relative = 1e-13
        );
        assert_relative_eq!(fspl_db(1e-3, f).unwrap(), 21.99, epsilon = 0.01);
        assert_relative_eq!(fspl_db(100.0, 30.0 * GHZ).unwrap(), 101.99, epsilon = 0.01);
        assert_relative_eq!(fspl_db(100.0, 183.0 * GHZ).unwrap(), 117.7, epsilon = 0.05);
        assert!(fspl_db(1e-3, 30.0 * GHZ).unwrap() > 0.0);
        assert!(fspl_db(1e-4, 30.0 * GHZ).unwrap() < 0.0);
    }

    #[test]
    fn fspl_rejects_bad_inputs() {
        assert!(fspl_db(0.0, GHZ).is_err());
        assert!(fspl_db(1.0, -GHZ).is_err());
        assert!(fspl_db(f64::NAN, GHZ).is_err());
    }

    #[test]
    fn absorption_examples() {
        let atm = Atmosphere::itu_p676();
        assert_eq!(
            absorption_loss_db(&atm, 0.0, 183.31 * GHZ, &HOT).unwrap(),
            0.0
        );
        let a100 = absorption_loss_db(&atm, 100.0, 183.31 * GHZ, &HOT).unwrap();
        assert!((12.0..=18.0).contains(&a100), "{a100}");
        assert!(absorption_loss_db(&atm, 1000.0, 183.31 * GHZ, &HOT).unwrap() > 100.0);
        assert!(absorption_loss_db(&atm, 1000.0, 325.15 * GHZ, &HOT).unwrap() > 180.0);
        let total = total_path_loss_db(&atm, 1e-3, 300.0 * GHZ, &HOT).unwrap();
        assert_relative_eq!(total, 21.99, epsilon = 0.01);
    }

    #[test]
    fn geometry_validation() {
        assert!(LinkGeometry::new(1.0, 0.0, 0.0).is_ok());
        assert!(LinkGeometry::new(0.0, 0.0, 0.0).is_err());
        assert!(LinkGeometry::new(1.0, 81.0, 0.0).is_err());
        assert!(LinkGeometry::new(1.0, 0.0, -11.0).is_err());
    }

    #[test]
    fn near_field_flag() {
        // 0.1 m aperture at 300 GHz: 2·0.01·300e9/c ≈ 20 m.
        assert!(near_field_warning(1.0, 300.0 * GHZ));
        assert!(!near_field_warning(100.0, 300.0 * GHZ));
    }

    #[test]
    fn short_range_absorption_negligible() {
        let atm = Atmosphere::itu_p676();
        for preset in crate::atmosphere::ConditionPreset::ALL {
            let p = atm.prepare(&preset.conditions()).unwrap();
            let mut f = 1.0;
            while f <= 500.0 {
                assert!(p.absorption_db(1e-2, f * GHZ).unwrap() < 0.02);
                f += 0.5;
            }
        }
    }

    proptest! {
        #[test]
        fn fspl_twenty_db_per_decade(d in 1e-4f64..1e4, f in 1.0f64..1000.0) {
            let delta = fspl_db(10.0 * d, f * GHZ).unwrap() - fspl_db(d, f * GHZ).unwrap();
            prop_assert!((delta - 20.0).abs() < 1e-10);
        }

        #[test]
        fn absorption_additive(d1 in 0.0f64..2000.0, d2 in 0.0f64..2000.0, f in 1.0f64..1000.0) {
            let atm = Atmosphere::itu_p676();
            let f = f * GHZ;
            let sum = absorption_loss_db(&atm, d1, f, &HOT).unwrap() + absorption_loss_db(&atm, d2, f, &HOT).unwrap();
            prop_assert!((absorption_loss_db(&atm, d1 + d2, f, &HOT).unwrap() - sum).abs() < 1e-9);
        }

        #[test]
        fn path_loss_increasing_in_distance(d in 1e-3f64..2000.0, extra in 1e-3f64..100.0, f in 1.0f64..1000.0) {
            let atm = Atmosphere::itu_p676();
            let f = f * GHZ;
            prop_assert!(total_path_loss_db(&atm, d + extra, f, &HOT).unwrap() > total_path_loss_db(&atm, d, f, &HOT).unwrap());
        }
    }
}
