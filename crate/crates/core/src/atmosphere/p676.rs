//! Line-by-line specific attenuation of moist air (ITU-R P.676 Annex 1).
//!
//! Line strengths, widths and interference terms depend only on the
//! atmospheric state, so they are folded once into [`GasState`]; evaluating
//! a frequency is then a sum of rational line-shape terms.

use alloc::vec::Vec;

use libm::{exp, pow, sqrt};

use super::lines::LineCatalog;
use super::AtmosphericConditions;

#[derive(Debug, Clone, Copy)]
struct PreparedLine {
    center_ghz: f64,
    strength: f64,
    width_ghz: f64,
    interference: f64,
}

impl PreparedLine {
    // Van Vleck-Weisskopf shape with line mixing.
    fn shape(&self, f_ghz: f64) -> f64 {
        let f0 = self.center_ghz;
        let w = self.width_ghz;
        let below = f0 - f_ghz;
        let above = f0 + f_ghz;
        f_ghz / f0
            * ((w - self.interference * below) / (below * below + w * w)
                + (w - self.interference * above) / (above * above + w * w))
    }
}

/// Line parameters evaluated for one atmospheric state.
#[derive(Debug, Clone)]
pub struct GasState {
    lines: Vec<PreparedLine>,
    dry_pressure_hpa: f64,
    theta: f64,
    continuum_width_ghz: f64,
    dry_continuum: bool,
}

impl GasState {
    pub fn new(catalog: &LineCatalog, cond: &AtmosphericConditions) -> Self {
        let theta = 300.0 / cond.temperature_k;
        let p = cond.dry_pressure_hpa();
        let e = cond.water_vapour_pressure_hpa();

        let oxygen = catalog.oxygen().iter().map(|line| {
            let [a1, a2, a3, a4, a5, a6] = line.coefficients;
            let strength = a1 * 1e-7 * p * pow(theta, 3.0) * exp(a2 * (1.0 - theta));
            let width = a3 * 1e-4 * (p * pow(theta, 0.8 - a4) + 1.1 * e * theta);
            // Zeeman splitting floor.
            let width = sqrt(width * width + 2.25e-6);
            let interference = (a5 + a6 * theta) * 1e-4 * (p + e) * pow(theta, 0.8);
            PreparedLine {
                center_ghz: line.center_ghz,
                strength,
                width_ghz: width,
                interference,
            }
        });

        let water = catalog.water().iter().map(|line| {
            let [b1, b2, b3, b4, b5, b6] = line.coefficients;
            let f0 = line.center_ghz;
            let strength = b1 * 1e-1 * e * pow(theta, 3.5) * exp(b2 * (1.0 - theta));
            let width = b3 * 1e-4 * (p * pow(theta, b4) + b5 * e * pow(theta, b6));
            // Doppler broadening.
            let width = 0.535 * width + sqrt(0.217 * width * width + 2.1316e-12 * f0 * f0 / theta);
            PreparedLine {
                center_ghz: f0,
                strength,
                width_ghz: width,
                interference: 0.0,
            }
        });

        Self {
            lines: oxygen.chain(water).collect(),
            dry_pressure_hpa: p,
            theta,
            continuum_width_ghz: 5.6e-4 * (p + e) * pow(theta, 0.8),
            dry_continuum: catalog.has_dry_continuum(),
        }
    }

    /// Imaginary part of the refractivity from the non-resonant oxygen
    /// (Debye) spectrum and pressure-induced nitrogen absorption.
    fn dry_continuum(&self, f_ghz: f64) -> f64 {
        if !self.dry_continuum {
            return 0.0;
        }
        let p = self.dry_pressure_hpa;
        let th = self.theta;
        let d = self.continuum_width_ghz;
        let ratio = f_ghz / d;
        f_ghz
            * p
            * th
            * th
            * (6.14e-5 / (d * (1.0 + ratio * ratio))
                + 1.4e-12 * p * pow(th, 1.5) / (1.0 + 1.9e-5 * pow(f_ghz, 1.5)))
    }

    /// Specific attenuation in dB/km at `f_ghz`. Range checks are the
    /// caller's job.
    pub fn specific_attenuation_db_per_km(&self, f_ghz: f64) -> f64 {
        let lines: f64 = self.lines.iter().map(|l| l.strength * l.shape(f_ghz)).sum();
        0.1820 * f_ghz * (lines + self.dry_continuum(f_ghz))
    }
}
