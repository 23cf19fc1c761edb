//! End-to-end link evaluation: received power, band-integrated noise for
//! each noise scenario, SNR, Shannon capacity, and the sweep and grid
//! engines built on top of them.
//!
//! The signal is evaluated at the carrier only. Noise is integrated over a
//! band of width `fractional_bandwidth · f_c` centred on the carrier, with
//! absorption, path loss and the TX chain re-evaluated at every sample.

mod grid;
mod scenario;
mod sweep;

pub use grid::{apply_axis, AxisKind, DegradationGrid, GridAxis};
pub use scenario::{
    LinkScenario, NoiseScenario, PerScenario, ScenarioPreset, TxPowerMode,
    DEFAULT_FRACTIONAL_BANDWIDTH, DEFAULT_INTEGRATION_POINTS,
};
pub use sweep::{SweepResult, SweepRow};

use alloc::vec::Vec;

use crate::atmosphere::{Atmosphere, PreparedAtmosphere};
use crate::channel::{fspl_db, near_field_warning};
use crate::error::{domain, Result};
use crate::noise::{
    classify_tier, dominance_margin_db, dominance_threshold_pathloss_db, snr_degradation_db,
    tx_noise_at_rx_psd, DominanceTier, NoiseBreakdown, DOMINANCE_THRESHOLD_DB,
};
use crate::quantities::{dbm_to_watts, from_db, psd_to_dbm_per_hz, to_db, watts_to_dbm, BOLTZMANN};
use crate::txchain::{ComponentTable, TechnologyProfile};

/// Trapezoid rule over uniformly spaced samples, summed with Neumaier
/// compensation.
pub fn trapezoid(step: f64, samples: &[f64]) -> Result<f64> {
    if samples.len() < 2 {
        return Err(domain("samples", samples.len() as f64, ">= 2 samples"));
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(domain("step", step, "finite and > 0"));
    }
    let last = samples.len() - 1;
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for (i, &y) in samples.iter().enumerate() {
        let term = if i == 0 || i == last { 0.5 * y } else { y };
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }
    Ok((sum + comp) * step)
}

/// Carrier-frequency form of the dominance criterion.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DominanceCheck {
    pub tx_noise_dbm_per_hz: f64,
    pub baseline_noise_dbm_per_hz: f64,
    pub path_loss_db: f64,
    pub threshold_path_loss_db: f64,
    /// `N_TX + G_TX + G_RX − A_PL − N_baseline`, dB.
    pub margin_db: f64,
    /// `margin_db >= −5.87 dB`, equivalently `A_PL <= A_PL,th`.
    pub dominated: bool,
    /// Per-Hz degradation at the carrier.
    pub spot_degradation_db: f64,
}

/// Everything computed for one scenario.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LinkEvaluation {
    pub carrier_frequency_hz: f64,
    pub distance_m: f64,
    pub bandwidth_hz: f64,
    pub tx_power_dbm: f64,
    pub fspl_db: f64,
    pub absorption_db: f64,
    pub path_loss_db: f64,
    /// Received power per scenario; the thermal-only signal sees free-space
    /// loss only.
    pub received_power_dbm: PerScenario<f64>,
    pub noise_power_w: PerScenario<f64>,
    pub snr_db: PerScenario<f64>,
    pub capacity_bps: PerScenario<f64>,
    /// `SNR_baseline − SNR_baseline_plus_tx`, from band-integrated powers.
    pub degradation_db: f64,
    pub tier: DominanceTier,
    pub dominance: DominanceCheck,
    pub near_field: bool,
}

/// Absorption model plus component data; the entry point for scenario
/// evaluation.
#[derive(Debug, Clone, Default)]
pub struct LinkModel {
    pub atmosphere: Atmosphere,
    pub components: ComponentTable,
}

struct Context<'a> {
    scenario: &'a LinkScenario,
    atm: PreparedAtmosphere,
    profile: &'a TechnologyProfile,
}

impl Context<'_> {
    fn t_env(&self) -> f64 {
        self.scenario.conditions.temperature_k
    }

    fn fspl_and_absorption(&self, f_hz: f64) -> Result<(f64, f64)> {
        let d = self.scenario.distance_m();
        Ok((fspl_db(d, f_hz)?, self.atm.absorption_db(d, f_hz)?))
    }

    fn path_loss_db(&self, f_hz: f64) -> Result<f64> {
        match self.scenario.path_loss_override_db {
            Some(pl) => Ok(pl),
            None => {
                let (fs, abs) = self.fspl_and_absorption(f_hz)?;
                Ok(fs + abs)
            }
        }
    }

    fn tx_noise_psd(&self, f_hz: f64) -> Result<f64> {
        match self.scenario.tx_noise_figure_override_db {
            Some(nf) => Ok(BOLTZMANN * self.t_env() * from_db(nf)?),
            None => self.profile.tx_noise_psd_extrapolated(
                f_hz,
                self.t_env(),
                self.scenario.tx_noise_model,
            ),
        }
    }

    fn baseline_psd(&self, f_hz: f64) -> Result<f64> {
        Ok(BOLTZMANN * self.t_env()
            + self
                .atm
                .atmospheric_noise_psd(self.scenario.distance_m(), f_hz)?)
    }

    fn tx_at_rx_psd(&self, f_hz: f64) -> Result<f64> {
        tx_noise_at_rx_psd(
            self.tx_noise_psd(f_hz)?,
            &self.scenario.geometry,
            self.path_loss_db(f_hz)?,
        )
    }

    fn tx_power_dbm(&self) -> Result<f64> {
        match self.scenario.tx_power_mode {
            TxPowerMode::Fixed { dbm } => Ok(dbm),
            TxPowerMode::SaturatedModel => self
                .profile
                .tx_saturated_power_dbm(self.scenario.carrier_frequency_hz),
        }
    }

    /// Integrated (thermal, baseline, tx-at-rx) noise powers, W.
    fn band_noise(&self) -> Result<(f64, f64, f64)> {
        let s = self.scenario;
        let (lo, hi) = s.band_hz();
        let n = s.integration_points;
        let step = (hi - lo) / (n - 1) as f64;
        let mut thermal = Vec::with_capacity(n);
        let mut baseline = Vec::with_capacity(n);
        let mut tx = Vec::with_capacity(n);
        for i in 0..n {
            let f = if i == n - 1 { hi } else { lo + step * i as f64 };
            thermal.push(BOLTZMANN * self.t_env());
            baseline.push(self.baseline_psd(f)?);
            tx.push(self.tx_at_rx_psd(f)?);
        }
        Ok((
            trapezoid(step, &thermal)?,
            trapezoid(step, &baseline)?,
            trapezoid(step, &tx)?,
        ))
    }

    fn dominance(&self) -> Result<DominanceCheck> {
        let s = self.scenario;
        let fc = s.carrier_frequency_hz;
        let n_tx = self.tx_noise_psd(fc)?;
        let n_b = self.baseline_psd(fc)?;
        let a_pl = self.path_loss_db(fc)?;
        let n_tx_db = psd_to_dbm_per_hz(n_tx)?;
        let n_b_db = psd_to_dbm_per_hz(n_b)?;
        let (gt, gr) = (s.geometry.tx_gain_dbi, s.geometry.rx_gain_dbi);
        let margin_db = dominance_margin_db(n_tx_db, gt, gr, a_pl, n_b_db);
        Ok(DominanceCheck {
            tx_noise_dbm_per_hz: n_tx_db,
            baseline_noise_dbm_per_hz: n_b_db,
            path_loss_db: a_pl,
            threshold_path_loss_db: dominance_threshold_pathloss_db(n_tx_db, gt, gr, n_b_db),
            margin_db,
            dominated: margin_db >= DOMINANCE_THRESHOLD_DB,
            spot_degradation_db: snr_degradation_db(
                tx_noise_at_rx_psd(n_tx, &s.geometry, a_pl)?,
                n_b,
            )?,
        })
    }
}

impl LinkModel {
    pub fn new(atmosphere: Atmosphere, components: ComponentTable) -> Self {
        Self {
            atmosphere,
            components,
        }
    }

    /// Line-by-line absorption with the bundled component table.
    pub fn bundled() -> Self {
        Self::default()
    }

    fn context<'a>(&'a self, scenario: &'a LinkScenario) -> Result<Context<'a>> {
        scenario.validate()?;
        Ok(Context {
            scenario,
            atm: self.atmosphere.prepare(&scenario.conditions)?,
            profile: self.components.profile(scenario.technology)?,
        })
    }

    /// `P_TX − A_PL + G_TX + G_RX` at the carrier, dBm.
    pub fn received_power_dbm(&self, scenario: &LinkScenario) -> Result<f64> {
        let ctx = self.context(scenario)?;
        let fc = scenario.carrier_frequency_hz;
        Ok(ctx.tx_power_dbm()? + scenario.geometry.total_gain_dbi() - ctx.path_loss_db(fc)?)
    }

    /// Band-integrated noise power per scenario, W.
    pub fn integrated_noise_power_w(&self, scenario: &LinkScenario) -> Result<PerScenario<f64>> {
        let (thermal, baseline, tx) = self.context(scenario)?.band_noise()?;
        Ok(PerScenario {
            thermal_only: thermal,
            baseline,
            baseline_plus_tx: baseline + tx,
        })
    }

    pub fn snr_db(&self, scenario: &LinkScenario) -> Result<PerScenario<f64>> {
        Ok(self.evaluate(scenario)?.snr_db)
    }

    pub fn capacity_bps(&self, scenario: &LinkScenario) -> Result<PerScenario<f64>> {
        Ok(self.evaluate(scenario)?.capacity_bps)
    }

    /// Carrier-frequency noise PSDs.
    pub fn noise_breakdown(&self, scenario: &LinkScenario) -> Result<NoiseBreakdown> {
        let ctx = self.context(scenario)?;
        let fc = scenario.carrier_frequency_hz;
        Ok(NoiseBreakdown {
            frequency_hz: fc,
            distance_m: scenario.distance_m(),
            thermal_psd: BOLTZMANN * ctx.t_env(),
            atmospheric_psd: ctx.atm.atmospheric_noise_psd(scenario.distance_m(), fc)?,
            tx_at_rx_psd: ctx.tx_at_rx_psd(fc)?,
        })
    }

    pub fn dominance_check(&self, scenario: &LinkScenario) -> Result<DominanceCheck> {
        self.context(scenario)?.dominance()
    }

    pub fn evaluate(&self, scenario: &LinkScenario) -> Result<LinkEvaluation> {
        let ctx = self.context(scenario)?;
        let fc = scenario.carrier_frequency_hz;
        let p_tx = ctx.tx_power_dbm()?;
        let gains = scenario.geometry.total_gain_dbi();
        let (fs, abs) = ctx.fspl_and_absorption(fc)?;
        let path_loss_db = ctx.path_loss_db(fc)?;
        let signal_path_loss = PerScenario {
            thermal_only: scenario.path_loss_override_db.unwrap_or(fs),
            baseline: path_loss_db,
            baseline_plus_tx: path_loss_db,
        };
        let received_power_dbm = signal_path_loss.map(|pl| p_tx + gains - pl);

        let (thermal, baseline, tx) = ctx.band_noise()?;
        let noise_power_w = PerScenario {
            thermal_only: thermal,
            baseline,
            baseline_plus_tx: baseline + tx,
        };
        let snr = |p_dbm: f64, n_w: f64| -> Result<f64> { to_db(dbm_to_watts(p_dbm)? / n_w) };
        let snr_db = PerScenario {
            thermal_only: snr(received_power_dbm.thermal_only, noise_power_w.thermal_only)?,
            baseline: snr(received_power_dbm.baseline, noise_power_w.baseline)?,
            baseline_plus_tx: snr(
                received_power_dbm.baseline_plus_tx,
                noise_power_w.baseline_plus_tx,
            )?,
        };
        let bandwidth_hz = scenario.bandwidth_hz();
        let capacity_bps = snr_db.map(|s| shannon_capacity_bps(bandwidth_hz, s));
        // Same value as the SNR difference, computed without cancellation.
        let degradation_db = snr_degradation_db(tx, baseline)?;

        Ok(LinkEvaluation {
            carrier_frequency_hz: fc,
            distance_m: scenario.distance_m(),
            bandwidth_hz,
            tx_power_dbm: p_tx,
            fspl_db: fs,
            absorption_db: abs,
            path_loss_db,
            received_power_dbm,
            noise_power_w,
            snr_db,
            capacity_bps,
            degradation_db,
            tier: classify_tier(degradation_db)?,
            dominance: ctx.dominance()?,
            near_field: near_field_warning(scenario.distance_m(), fc),
        })
    }
}

/// `Δf · log2(1 + SNR)` with the SNR given in dB.
pub fn shannon_capacity_bps(bandwidth_hz: f64, snr_db: f64) -> f64 {
    let snr = libm::pow(10.0, snr_db / 10.0);
    bandwidth_hz * libm::log1p(snr) / core::f64::consts::LN_2
}

/// Total received noise power expressed in dBm, handy for reports.
pub fn noise_power_dbm(noise: &PerScenario<f64>) -> Result<PerScenario<f64>> {
    Ok(PerScenario {
        thermal_only: watts_to_dbm(noise.thermal_only)?,
        baseline: watts_to_dbm(noise.baseline)?,
        baseline_plus_tx: watts_to_dbm(noise.baseline_plus_tx)?,
    })
}
