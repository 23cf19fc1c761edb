//! Gaseous absorption and molecular re-emission noise.
//!
//! Specific attenuation `γ(f)` comes from the oxygen and water-vapour line
//! tables in [`lines`]. Over a path of length `d` the medium transmits
//! `τ = 10^(−γ·d_km/10)`, absorbs and re-emits the rest (`ε = 1 − τ`), and
//! radiates like a body at the ambient temperature: `T_noise = T·ε`.

pub mod lines;
mod p676;

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{domain, ensure_within, Error, Result};
use crate::quantities::{BOLTZMANN, GHZ};

pub use lines::{LineCatalog, SpectroscopicLine};
pub use p676::GasState;

/// Lowest frequency accepted by the gas model, Hz.
pub const MIN_FREQUENCY_HZ: f64 = 1.0 * GHZ;
/// Highest frequency accepted by the gas model, Hz.
pub const MAX_FREQUENCY_HZ: f64 = 1000.0 * GHZ;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AtmosphericConditions {
    pub temperature_k: f64,
    /// Dry-air pressure handed to the line model.
    pub pressure_pa: f64,
    pub water_vapor_density_g_m3: f64,
}

impl AtmosphericConditions {
    pub fn new(
        temperature_k: f64,
        pressure_pa: f64,
        water_vapor_density_g_m3: f64,
    ) -> Result<Self> {
        let cond = Self {
            temperature_k,
            pressure_pa,
            water_vapor_density_g_m3,
        };
        cond.validate()?;
        Ok(cond)
    }

    pub fn validate(&self) -> Result<()> {
        ensure_within(
            "temperature_k",
            self.temperature_k,
            150.0,
            400.0,
            "150..=400 K",
        )?;
        ensure_within("pressure_pa", self.pressure_pa, 1e3, 2e5, "1e3..=2e5 Pa")?;
        ensure_within(
            "water_vapor_density_g_m3",
            self.water_vapor_density_g_m3,
            0.0,
            100.0,
            "0..=100 g/m^3",
        )?;
        Ok(())
    }

    /// 35 °C, 101190 Pa, 39.6 g/m³.
    pub const fn hot() -> Self {
        Self {
            temperature_k: 308.15,
            pressure_pa: 101_190.0,
            water_vapor_density_g_m3: 39.6,
        }
    }

    /// 15 °C, 101325 Pa, 12.8 g/m³.
    pub const fn moderate() -> Self {
        Self {
            temperature_k: 288.15,
            pressure_pa: 101_325.0,
            water_vapor_density_g_m3: 12.8,
        }
    }

    /// −5 °C, 102100 Pa, 3.4 g/m³.
    pub const fn cold_dry() -> Self {
        Self {
            temperature_k: 268.15,
            pressure_pa: 102_100.0,
            water_vapor_density_g_m3: 3.4,
        }
    }

    pub fn dry_pressure_hpa(&self) -> f64 {
        self.pressure_pa / 100.0
    }

    /// Ideal-gas conversion `e = ρ·T/216.7` (hPa, g/m³, K).
    pub fn water_vapour_pressure_hpa(&self) -> f64 {
        self.water_vapor_density_g_m3 * self.temperature_k / 216.7
    }
}

impl Default for AtmosphericConditions {
    fn default() -> Self {
        Self::hot()
    }
}

/// Named environmental presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ConditionPreset {
    Hot,
    Moderate,
    ColdDry,
}

impl ConditionPreset {
    pub const ALL: [ConditionPreset; 3] = [Self::Hot, Self::Moderate, Self::ColdDry];

    pub fn name(self) -> &'static str {
        match self {
            Self::Hot => "hot",
            Self::Moderate => "moderate",
            Self::ColdDry => "cold_dry",
        }
    }

    pub fn conditions(self) -> AtmosphericConditions {
        match self {
            Self::Hot => AtmosphericConditions::hot(),
            Self::Moderate => AtmosphericConditions::moderate(),
            Self::ColdDry => AtmosphericConditions::cold_dry(),
        }
    }
}

impl fmt::Display for ConditionPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConditionPreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::UnknownName {
                kind: "condition preset",
                name: s.to_string(),
            })
    }
}

/// Tabulated `γ(f)` for one set of conditions.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AbsorptionSpectrum {
    pub conditions: AtmosphericConditions,
    pub frequency_hz: Vec<f64>,
    pub gamma_db_per_km: Vec<f64>,
}

impl AbsorptionSpectrum {
    /// Frequency of the largest `γ` inside `[lo_hz, hi_hz]`.
    pub fn peak_within(&self, lo_hz: f64, hi_hz: f64) -> Option<(f64, f64)> {
        self.frequency_hz
            .iter()
            .zip(&self.gamma_db_per_km)
            .filter(|(f, _)| **f >= lo_hz && **f <= hi_hz)
            .map(|(f, g)| (*f, *g))
            .fold(None, |best, (f, g)| match best {
                Some((_, bg)) if bg >= g => best,
                _ => Some((f, g)),
            })
    }
}

pub(crate) fn check_frequency(f_hz: f64) -> Result<f64> {
    ensure_within(
        "frequency_hz",
        f_hz,
        MIN_FREQUENCY_HZ,
        MAX_FREQUENCY_HZ,
        "1..=1000 GHz",
    )
}

pub(crate) fn check_distance(d_m: f64) -> Result<f64> {
    if d_m >= 0.0 && d_m.is_finite() {
        Ok(d_m)
    } else {
        Err(domain("distance_m", d_m, "finite and >= 0"))
    }
}

/// The gas absorption model: immutable line tables plus the per-path
/// quantities derived from them.
#[derive(Debug, Clone, PartialEq)]
pub struct Atmosphere {
    catalog: LineCatalog,
}

impl Default for Atmosphere {
    fn default() -> Self {
        Self::itu_p676()
    }
}

impl Atmosphere {
    pub fn new(catalog: LineCatalog) -> Self {
        Self { catalog }
    }

    pub fn itu_p676() -> Self {
        Self::new(LineCatalog::itu_p676())
    }

    /// A non-absorbing medium (γ = 0 everywhere).
    pub fn vacuum() -> Self {
        Self::new(LineCatalog::vacuum())
    }

    pub fn catalog(&self) -> &LineCatalog {
        &self.catalog
    }

    /// Folds the line tables for `cond`; use this when evaluating many
    /// frequencies under the same conditions.
    pub fn prepare(&self, cond: &AtmosphericConditions) -> Result<PreparedAtmosphere> {
        cond.validate()?;
        Ok(PreparedAtmosphere {
            conditions: *cond,
            gas: GasState::new(&self.catalog, cond),
        })
    }

    /// Specific attenuation γ in dB/km.
    pub fn specific_attenuation(&self, f_hz: f64, cond: &AtmosphericConditions) -> Result<f64> {
        self.prepare(cond)?.specific_attenuation(f_hz)
    }

    pub fn transmittance(&self, d_m: f64, f_hz: f64, cond: &AtmosphericConditions) -> Result<f64> {
        self.prepare(cond)?.transmittance(d_m, f_hz)
    }

    pub fn emissivity(&self, d_m: f64, f_hz: f64, cond: &AtmosphericConditions) -> Result<f64> {
        self.prepare(cond)?.emissivity(d_m, f_hz)
    }

    pub fn molecular_noise_temperature(
        &self,
        d_m: f64,
        f_hz: f64,
        cond: &AtmosphericConditions,
    ) -> Result<f64> {
        self.prepare(cond)?.molecular_noise_temperature(d_m, f_hz)
    }

    pub fn atmospheric_noise_psd(
        &self,
        d_m: f64,
        f_hz: f64,
        cond: &AtmosphericConditions,
    ) -> Result<f64> {
        self.prepare(cond)?.atmospheric_noise_psd(d_m, f_hz)
    }

    /// γ on a regular grid `start, start + step, ...` up to and including
    /// `stop` (within a hundredth of a step).
    pub fn spectrum(
        &self,
        cond: &AtmosphericConditions,
        start_hz: f64,
        stop_hz: f64,
        step_hz: f64,
    ) -> Result<AbsorptionSpectrum> {
        let prepared = self.prepare(cond)?;
        let frequency_hz = regular_grid(start_hz, stop_hz, step_hz)?;
        let gamma_db_per_km = frequency_hz
            .iter()
            .map(|&f| prepared.specific_attenuation(f))
            .collect::<Result<Vec<_>>>()?;
        Ok(AbsorptionSpectrum {
            conditions: *cond,
            frequency_hz,
            gamma_db_per_km,
        })
    }
}

/// Inclusive regular grid; a zero-length range yields a single point.
pub fn regular_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
        return Err(Error::Degenerate {
            what: "grid",
            reason: "bounds and step must be finite",
        });
    }
    if stop < start {
        return Err(Error::Degenerate {
            what: "grid",
            reason: "stop is below start",
        });
    }
    if start == stop {
        return Ok(alloc::vec![start]);
    }
    if step <= 0.0 {
        return Err(Error::Degenerate {
            what: "grid",
            reason: "step must be positive",
        });
    }
    let n = libm::floor((stop - start) / step + 0.01) as usize;
    Ok((0..=n).map(|i| start + i as f64 * step).collect())
}

/// Atmospheric quantities for fixed conditions.
#[derive(Debug, Clone)]
pub struct PreparedAtmosphere {
    conditions: AtmosphericConditions,
    gas: GasState,
}

impl PreparedAtmosphere {
    pub fn conditions(&self) -> &AtmosphericConditions {
        &self.conditions
    }

    pub fn specific_attenuation(&self, f_hz: f64) -> Result<f64> {
        let f_hz = check_frequency(f_hz)?;
        Ok(self.gas.specific_attenuation_db_per_km(f_hz / GHZ))
    }

    /// Absorption along `d_m` in dB, `γ·d_km`.
    pub fn absorption_db(&self, d_m: f64, f_hz: f64) -> Result<f64> {
        let d_m = check_distance(d_m)?;
        Ok(self.specific_attenuation(f_hz)? * d_m / 1000.0)
    }

    pub fn transmittance(&self, d_m: f64, f_hz: f64) -> Result<f64> {
        Ok(libm::pow(10.0, -self.absorption_db(d_m, f_hz)? / 10.0))
    }

    pub fn emissivity(&self, d_m: f64, f_hz: f64) -> Result<f64> {
        Ok(1.0 - self.transmittance(d_m, f_hz)?)
    }

    /// `T·ε`, with the medium radiating at the ambient temperature.
    pub fn molecular_noise_temperature(&self, d_m: f64, f_hz: f64) -> Result<f64> {
        Ok(self.conditions.temperature_k * self.emissivity(d_m, f_hz)?)
    }

    pub fn atmospheric_noise_psd(&self, d_m: f64, f_hz: f64) -> Result<f64> {
        Ok(BOLTZMANN * self.molecular_noise_temperature(d_m, f_hz)?)
    }
}
