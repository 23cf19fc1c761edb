//! Receiver-input noise landscape and the transmitter-noise dominance
//! criterion.
//!
//! With `r = N_TXtoRX / N_baseline` the SNR loss caused by propagated TX
//! noise is `ΔSNR = 10·log10(1 + r)`; the signal power cancels. Setting
//! `ΔSNR = 1 dB` gives `r = 10^0.1 − 1 ≈ 0.259` (−5.87 dB), which in link
//! budget form yields a path-loss threshold below which TX noise dominates.

use core::fmt;

use crate::atmosphere::PreparedAtmosphere;
use crate::channel::LinkGeometry;
use crate::error::{domain, Result};
use crate::quantities::{from_db, to_db, BOLTZMANN};

/// Degradation that marks the onset of TX-noise dominance, dB.
pub const ONSET_DEGRADATION_DB: f64 = 1.0;

/// `10^0.1 − 1`, the TX-to-baseline noise ratio giving exactly 1 dB.
pub const DOMINANCE_RATIO: f64 = 0.258_925_411_794_167_3;

/// `10·log10(10^0.1 − 1)`, used in all internal comparisons.
pub const DOMINANCE_THRESHOLD_DB: f64 = -5.868_253_243_801_154;

/// Rounded ratio as printed in design tables.
pub const DOMINANCE_RATIO_REPORT: f64 = 0.26;

/// Rounded threshold as printed in design tables.
pub const DOMINANCE_THRESHOLD_REPORT_DB: f64 = -5.9;

/// Degradation boundaries between tiers, dB.
pub const TIER_BOUNDARIES_DB: [f64; 3] = [1.0, 3.0, 5.0];

/// Thermal noise PSD `k·T`, W/Hz.
pub fn thermal_noise_psd(t_env_k: f64) -> Result<f64> {
    if t_env_k > 0.0 && t_env_k.is_finite() {
        Ok(BOLTZMANN * t_env_k)
    } else {
        Err(domain("t_env_k", t_env_k, "finite and > 0"))
    }
}

/// Thermal plus atmospheric re-emission PSD at the receiver, W/Hz.
pub fn baseline_noise_psd(atm: &PreparedAtmosphere, d_m: f64, f_hz: f64) -> Result<f64> {
    Ok(
        thermal_noise_psd(atm.conditions().temperature_k)?
            + atm.atmospheric_noise_psd(d_m, f_hz)?,
    )
}

/// TX output noise PSD after both antennas and a path loss of `a_pl_db`.
pub fn tx_noise_at_rx_psd(n_tx: f64, geometry: &LinkGeometry, a_pl_db: f64) -> Result<f64> {
    if !(n_tx >= 0.0 && n_tx.is_finite()) {
        return Err(domain("n_tx", n_tx, "finite and >= 0"));
    }
    Ok(n_tx * from_db(geometry.total_gain_dbi() - a_pl_db)?)
}

/// `10·log10(1 + N_TXtoRX/N_baseline)`.
pub fn snr_degradation_db(n_tx_rx: f64, n_baseline: f64) -> Result<f64> {
    if !(n_baseline > 0.0 && n_baseline.is_finite()) {
        return Err(domain("n_baseline", n_baseline, "finite and > 0"));
    }
    if !(n_tx_rx >= 0.0 && n_tx_rx.is_finite()) {
        return Err(domain("n_tx_rx", n_tx_rx, "finite and >= 0"));
    }
    // ln_1p keeps tiny ratios accurate.
    Ok(10.0 * libm::log1p(n_tx_rx / n_baseline) / core::f64::consts::LN_10)
}

/// Noise ratio in dB that produces a given degradation,
/// `10·log10(10^(ΔSNR/10) − 1)`.
pub fn degradation_to_threshold_db(delta_snr_db: f64) -> Result<f64> {
    if !(delta_snr_db > 0.0 && delta_snr_db.is_finite()) {
        return Err(domain("delta_snr_db", delta_snr_db, "finite and > 0"));
    }
    to_db(libm::expm1(delta_snr_db / 10.0 * core::f64::consts::LN_10))
}

/// Path loss below which TX noise costs more than 1 dB of SNR.
///
/// All PSDs must share one dB reference (dBm/Hz in reports).
pub fn dominance_threshold_pathloss_db(
    n_tx_db: f64,
    g_tx_dbi: f64,
    g_rx_dbi: f64,
    n_baseline_db: f64,
) -> f64 {
    n_tx_db + g_tx_dbi + g_rx_dbi - n_baseline_db - DOMINANCE_THRESHOLD_DB
}

/// Left side of the link-budget form of the criterion,
/// `N_TX + G_TX + G_RX − A_PL − N_baseline` (dB); the link is TX-noise
/// dominated when it reaches [`DOMINANCE_THRESHOLD_DB`].
pub fn dominance_margin_db(
    n_tx_db: f64,
    g_tx_dbi: f64,
    g_rx_dbi: f64,
    a_pl_db: f64,
    n_baseline_db: f64,
) -> f64 {
    n_tx_db + g_tx_dbi + g_rx_dbi - a_pl_db - n_baseline_db
}

/// Severity ladder for TX-noise degradation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum TierLabel {
    Negligible,
    Onset,
    MarginReduction,
    NoiseDoubled,
    Severe,
    Architectural,
}

impl TierLabel {
    pub const ALL: [TierLabel; 6] = [
        TierLabel::Negligible,
        TierLabel::Onset,
        TierLabel::MarginReduction,
        TierLabel::NoiseDoubled,
        TierLabel::Severe,
        TierLabel::Architectural,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TierLabel::Negligible => "negligible",
            TierLabel::Onset => "onset",
            TierLabel::MarginReduction => "margin_reduction",
            TierLabel::NoiseDoubled => "noise_doubled",
            TierLabel::Severe => "severe",
            TierLabel::Architectural => "architectural",
        }
    }

    pub fn guidance(self) -> GuidanceLevel {
        match self {
            TierLabel::Negligible => GuidanceLevel::Low,
            TierLabel::Onset | TierLabel::MarginReduction => GuidanceLevel::Moderate,
            TierLabel::NoiseDoubled | TierLabel::Severe => GuidanceLevel::Significant,
            TierLabel::Architectural => GuidanceLevel::Critical,
        }
    }
}

impl fmt::Display for TierLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Coarse four-level scale used in design guidance matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum GuidanceLevel {
    Low,
    Moderate,
    Significant,
    Critical,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DominanceTier {
    pub label: TierLabel,
    pub delta_snr_db: f64,
    /// `N_TXtoRX / N_baseline`.
    pub ratio: f64,
    /// Ratio in dB, comparable with the link-budget threshold.
    pub threshold_db: f64,
}

// Point tiers (onset, noise doubled) match their boundary to within this.
const BOUNDARY_EPS_DB: f64 = 1e-9;

/// Places a degradation on the tier ladder. A value sitting on a boundary
/// belongs to the more severe tier.
pub fn classify_tier(delta_snr_db: f64) -> Result<DominanceTier> {
    if delta_snr_db.is_nan() || delta_snr_db < 0.0 || delta_snr_db.is_infinite() {
        return Err(domain("delta_snr_db", delta_snr_db, "finite and >= 0"));
    }
    let [onset, doubled, severe] = TIER_BOUNDARIES_DB;
    let near = |b: f64| (delta_snr_db - b).abs() <= BOUNDARY_EPS_DB;
    let label = if near(onset) {
        TierLabel::Onset
    } else if near(doubled) {
        TierLabel::NoiseDoubled
    } else if delta_snr_db >= severe - BOUNDARY_EPS_DB {
        TierLabel::Architectural
    } else if delta_snr_db > doubled {
        TierLabel::Severe
    } else if delta_snr_db > onset {
        TierLabel::MarginReduction
    } else {
        TierLabel::Negligible
    };
    let ratio = libm::expm1(delta_snr_db / 10.0 * core::f64::consts::LN_10);
    let threshold_db = if ratio > 0.0 {
        10.0 * libm::log10(ratio)
    } else {
        f64::NEG_INFINITY
    };
    Ok(DominanceTier {
        label,
        delta_snr_db,
        ratio,
        threshold_db,
    })
}

/// The three receiver-input noise PSDs at one frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NoiseBreakdown {
    pub frequency_hz: f64,
    pub distance_m: f64,
    pub thermal_psd: f64,
    pub atmospheric_psd: f64,
    pub tx_at_rx_psd: f64,
}

impl NoiseBreakdown {
    pub fn baseline_psd(&self) -> f64 {
        self.thermal_psd + self.atmospheric_psd
    }

    pub fn total_psd(&self) -> f64 {
        self.baseline_psd() + self.tx_at_rx_psd
    }

    pub fn degradation_db(&self) -> Result<f64> {
        snr_degradation_db(self.tx_at_rx_psd, self.baseline_psd())
    }
}

impl fmt::Display for DominanceTier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({:.3} dB)", self.label, self.delta_snr_db)
    }
}
