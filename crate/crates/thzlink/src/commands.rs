//! Table builders for each subcommand.

use anyhow::{bail, Result};
use rayon::prelude::*;
use thzlink_core::atmosphere::ConditionPreset;
use thzlink_core::channel::fspl_db;
use thzlink_core::linkbudget::{
    AxisKind, LinkEvaluation, LinkModel, LinkScenario, ScenarioPreset, SweepResult,
};
use thzlink_core::noise::classify_tier;
use thzlink_core::quantities::GHZ;
use thzlink_core::txchain::Technology;

use crate::resolve::{AxisSpec, Resolved};
use crate::table::{Cell, Table};

/// Named tables produced by one command.
pub type Outputs = Vec<(String, Table)>;

const EVAL_COLUMNS: [&str; 28] = [
    "f_ghz",
    "distance_m",
    "bandwidth_ghz",
    "tx_power_dbm",
    "fspl_db",
    "absorption_db",
    "path_loss_db",
    "rx_power_dbm",
    "rx_power_thermal_only_dbm",
    "noise_thermal_only_dbm",
    "noise_baseline_dbm",
    "noise_baseline_plus_tx_dbm",
    "snr_thermal_only_db",
    "snr_baseline_db",
    "snr_baseline_plus_tx_db",
    "capacity_thermal_only_bps",
    "capacity_baseline_bps",
    "capacity_baseline_plus_tx_bps",
    "degradation_db",
    "tier",
    "guidance",
    "tx_noise_dbm_per_hz",
    "baseline_noise_dbm_per_hz",
    "threshold_path_loss_db",
    "dominance_margin_db",
    "dominated",
    "spot_degradation_db",
    "near_field",
];

/// Column holding the axis value; frequency and distance reuse the
/// evaluation columns.
pub fn axis_column(kind: AxisKind) -> &'static str {
    match kind {
        AxisKind::Frequency => "f_ghz",
        AxisKind::Distance => "distance_m",
        AxisKind::NfDbOverride => "nf_override_db",
        AxisKind::TotalPathlossDbOverride => "path_loss_override_db",
    }
}

fn is_override(kind: AxisKind) -> bool {
    matches!(
        kind,
        AxisKind::NfDbOverride | AxisKind::TotalPathlossDbOverride
    )
}

fn guidance_name(e: &LinkEvaluation) -> &'static str {
    use thzlink_core::noise::GuidanceLevel::*;
    match e.tier.label.guidance() {
        Low => "low",
        Moderate => "moderate",
        Significant => "significant",
        Critical => "critical",
    }
}

fn evaluation_cells(e: &LinkEvaluation) -> Result<Vec<Cell>> {
    let noise = thzlink_core::linkbudget::noise_power_dbm(&e.noise_power_w)?;
    let d = &e.dominance;
    Ok(vec![
        (e.carrier_frequency_hz / GHZ).into(),
        e.distance_m.into(),
        (e.bandwidth_hz / GHZ).into(),
        e.tx_power_dbm.into(),
        e.fspl_db.into(),
        e.absorption_db.into(),
        e.path_loss_db.into(),
        e.received_power_dbm.baseline.into(),
        e.received_power_dbm.thermal_only.into(),
        noise.thermal_only.into(),
        noise.baseline.into(),
        noise.baseline_plus_tx.into(),
        e.snr_db.thermal_only.into(),
        e.snr_db.baseline.into(),
        e.snr_db.baseline_plus_tx.into(),
        e.capacity_bps.thermal_only.into(),
        e.capacity_bps.baseline.into(),
        e.capacity_bps.baseline_plus_tx.into(),
        e.degradation_db.into(),
        e.tier.label.name().into(),
        guidance_name(e).into(),
        d.tx_noise_dbm_per_hz.into(),
        d.baseline_noise_dbm_per_hz.into(),
        d.threshold_path_loss_db.into(),
        d.margin_db.into(),
        d.dominated.into(),
        d.spot_degradation_db.into(),
        e.near_field.into(),
    ])
}

fn evaluation_table(
    axis: Option<AxisKind>,
    rows: impl IntoIterator<Item = (f64, LinkEvaluation)>,
) -> Result<Table> {
    let extra = axis.filter(|k| is_override(*k));
    let mut table = Table::new(extra.map(axis_column).into_iter().chain(EVAL_COLUMNS));
    for (value, e) in rows {
        let mut cells = Vec::with_capacity(table.columns.len());
        if extra.is_some() {
            cells.push(value.into());
        }
        cells.extend(evaluation_cells(&e)?);
        table.push(cells)?;
    }
    Ok(table)
}

fn sweep_table(result: &SweepResult) -> Result<Table> {
    evaluation_table(
        Some(result.axis),
        result.rows.iter().map(|r| (r.axis_value, r.evaluation)),
    )
}

/// Sweep with rows evaluated in parallel; row order and values match the
/// sequential [`LinkModel::sweep`].
pub fn par_sweep(
    model: &LinkModel,
    template: &LinkScenario,
    axis: AxisKind,
    values: &[f64],
) -> Result<SweepResult> {
    let rows: Vec<_> = values
        .par_iter()
        .enumerate()
        .map(|(i, &v)| model.sweep_row(template, axis, i, v))
        .collect();
    Ok(LinkModel::collect_sweep(template, axis, rows)?)
}

fn hz(ghz: &[f64]) -> Vec<f64> {
    ghz.iter().map(|f| f * GHZ).collect()
}

fn log_space(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    AxisSpec {
        kind: AxisKind::Distance,
        start: lo,
        stop: hi,
        steps: n,
    }
    .values(true)
}

pub fn absorption(r: &Resolved) -> Result<Outputs> {
    let atm = r.model.atmosphere.prepare(&r.conditions)?;
    let mut table = Table::new([
        "f_ghz",
        "gamma_db_per_km",
        "a_abs_100m_db",
        "a_abs_1km_db",
        "fspl_100m_db",
        "fspl_1km_db",
        "total_100m_db",
        "total_1km_db",
    ]);
    let rows: Vec<Result<Vec<Cell>>> = r
        .frequency_grid_ghz()?
        .par_iter()
        .map(|&f_ghz| {
            let f = f_ghz * GHZ;
            let gamma = atm.specific_attenuation(f)?;
            let (a100, a1k) = (gamma * 0.1, gamma);
            let (l100, l1k) = (fspl_db(100.0, f)?, fspl_db(1000.0, f)?);
            Ok(vec![
                f_ghz.into(),
                gamma.into(),
                a100.into(),
                a1k.into(),
                l100.into(),
                l1k.into(),
                (l100 + a100).into(),
                (l1k + a1k).into(),
            ])
        })
        .collect();
    for row in rows {
        table.push(row?)?;
    }
    Ok(vec![("absorption".into(), table)])
}

pub fn txnf(r: &Resolved) -> Result<Outputs> {
    let techs: Vec<Technology> = match r.config.tech.as_deref() {
        Some("all") | None => Technology::ALL.to_vec(),
        Some(t) => vec![t.parse()?],
    };
    let mut table = Table::new([
        "technology",
        "f_ghz",
        "f_tx_db",
        "chain_gain_db",
        "psat_dbm",
    ]);
    for tech in techs {
        let profile = r.model.components.profile(tech)?;
        for f_ghz in r.frequency_grid_ghz()? {
            let f = f_ghz * GHZ;
            table.push(vec![
                tech.name().into(),
                f_ghz.into(),
                profile.cascaded_tx_noise_figure(f)?.into(),
                profile.chain_gain(f)?.into(),
                profile.tx_saturated_power_dbm(f)?.into(),
            ])?;
        }
    }
    Ok(vec![("txnf".into(), table)])
}

const TABLE_V_FREQS_GHZ: [f64; 4] = [60.0, 140.0, 250.0, 300.0];
const TABLE_V_DISTANCES_M: [f64; 4] = [1e-3, 1e-2, 1e-1, 1.0];

pub fn casestudy(r: &Resolved) -> Result<Outputs> {
    let template = r.scenario()?;
    let model = &r.model;
    let freqs = hz(&r.frequency_grid_ghz()?);
    let mut out = Vec::new();
    match r.preset()? {
        ScenarioPreset::Short => {
            let c = &r.config;
            let (Some(lo), Some(hi), Some(n)) =
                (c.distance_start_m, c.distance_stop_m, c.distance_points)
            else {
                bail!("missing distance range");
            };
            let fc = template.carrier_frequency_hz;
            let sweep = par_sweep(model, &template, AxisKind::Distance, &log_space(lo, hi, n)?)?;
            out.push((
                format!("short_distance_{}ghz", fc / GHZ),
                sweep_table(&sweep)?,
            ));
            for (label, d) in [("1mm", 1e-3), ("1cm", 1e-2)] {
                let sweep = par_sweep(
                    model,
                    &template.with_distance(d),
                    AxisKind::Frequency,
                    &freqs,
                )?;
                out.push((format!("short_frequency_{label}"), sweep_table(&sweep)?));
            }
            let cells: Vec<LinkScenario> = TABLE_V_DISTANCES_M
                .iter()
                .flat_map(|&d| {
                    TABLE_V_FREQS_GHZ
                        .iter()
                        .map(move |&f| template.with_distance(d).with_carrier(f * GHZ))
                })
                .collect();
            let evals: Vec<_> = cells.par_iter().map(|s| model.evaluate(s)).collect();
            let rows = evals
                .into_iter()
                .map(|e| e.map(|e| (e.carrier_frequency_hz, e)))
                .collect::<Result<Vec<_>, _>>()?;
            out.push(("short_table_v".into(), evaluation_table(None, rows)?));
        }
        preset => {
            let d = template.distance_m();
            let sweep = par_sweep(model, &template, AxisKind::Frequency, &freqs)?;
            out.push((
                format!("{}_frequency_{}m", preset.name(), d),
                sweep_table(&sweep)?,
            ));
        }
    }
    Ok(out)
}

pub fn sensitivity(r: &Resolved) -> Result<Outputs> {
    let template = r.scenario()?;
    let freqs = hz(&r.frequency_grid_ghz()?);
    let mut out = Vec::new();
    for preset in ConditionPreset::ALL {
        let t = template.with_conditions(preset.conditions());
        let sweep = par_sweep(&r.model, &t, AxisKind::Frequency, &freqs)?;
        out.push((
            format!("sensitivity_{}", preset.name()),
            sweep_table(&sweep)?,
        ));
    }
    Ok(out)
}

fn one_axis(r: &Resolved, name: &str) -> Result<Outputs> {
    let template = r.scenario()?;
    let (axis, _) = r.axes()?;
    let values = axis.values(r.config.log_spacing.unwrap_or(false))?;
    let sweep = par_sweep(&r.model, &template, axis.kind, &values)?;
    Ok(vec![(name.into(), sweep_table(&sweep)?)])
}

pub fn sweep(r: &Resolved) -> Result<Outputs> {
    one_axis(r, "sweep")
}

pub fn dominance(r: &Resolved) -> Result<Outputs> {
    let (a1, a2) = r.axes()?;
    let Some(a2) = a2 else {
        return one_axis(r, "dominance");
    };
    let template = r.scenario()?;
    let (g1, g2) = (a1.grid()?, a2.grid()?);
    let (v1, v2) = LinkModel::grid_values(&g1, &g2)?;
    let cells: Vec<(f64, f64)> = v1
        .iter()
        .flat_map(|&a| v2.iter().map(move |&b| (a, b)))
        .collect();
    let values: Vec<_> = cells
        .par_iter()
        .map(|&(a, b)| r.model.grid_cell(&template, (&g1, &g2), (a, b)))
        .collect();
    let scale = |kind: AxisKind, v: f64| {
        if kind == AxisKind::Frequency {
            v / GHZ
        } else {
            v
        }
    };
    let mut table = Table::new([
        axis_column(a1.kind),
        axis_column(a2.kind),
        "degradation_db",
        "tier",
        "dominated",
    ]);
    for (&(a, b), deg) in cells.iter().zip(values) {
        let deg = deg?;
        table.push(vec![
            scale(a1.kind, a).into(),
            scale(a2.kind, b).into(),
            deg.into(),
            classify_tier(deg)?.label.name().into(),
            (deg >= 1.0).into(),
        ])?;
    }
    Ok(vec![("dominance_grid".into(), table)])
}
