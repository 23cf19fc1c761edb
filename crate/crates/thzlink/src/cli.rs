use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{RunConfig, TxPowerSetting};

#[derive(Debug, Parser)]
#[command(
    name = "thzlink",
    version,
    about = "Sub-THz link budgets with propagated transmitter noise"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Specific attenuation and path loss versus frequency.
    Absorption {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        range: FrequencyRange,
    },
    /// Cascaded TX noise figure, chain gain and saturated power.
    Txnf {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        range: FrequencyRange,
    },
    /// Distance and frequency sweeps for a short, medium or long link.
    Casestudy {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        range: FrequencyRange,
        #[command(flatten)]
        distances: DistanceRange,
    },
    /// One frequency sweep per atmospheric preset.
    Sensitivity {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        range: FrequencyRange,
    },
    /// Dominance thresholds along one axis, or a degradation grid over two.
    Dominance {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        axes: AxisArgs,
    },
    /// Generic one-axis sweep.
    Sweep {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        axes: AxisArgs,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Absorption { .. } => "absorption",
            Command::Txnf { .. } => "txnf",
            Command::Casestudy { .. } => "casestudy",
            Command::Sensitivity { .. } => "sensitivity",
            Command::Dominance { .. } => "dominance",
            Command::Sweep { .. } => "sweep",
        }
    }

    pub fn common(&self) -> &CommonArgs {
        match self {
            Command::Absorption { common, .. }
            | Command::Txnf { common, .. }
            | Command::Casestudy { common, .. }
            | Command::Sensitivity { common, .. }
            | Command::Dominance { common, .. }
            | Command::Sweep { common, .. } => common,
        }
    }

    /// Flag values as a config layer.
    pub fn to_config(&self) -> RunConfig {
        let mut c = RunConfig {
            command: Some(self.name().to_string()),
            ..Default::default()
        };
        self.common().apply(&mut c);
        match self {
            Command::Absorption { range, .. } | Command::Txnf { range, .. } => range.apply(&mut c),
            Command::Casestudy {
                scenario,
                range,
                distances,
                ..
            } => {
                scenario.apply(&mut c);
                range.apply(&mut c);
                distances.apply(&mut c);
            }
            Command::Sensitivity {
                scenario, range, ..
            } => {
                scenario.apply(&mut c);
                range.apply(&mut c);
            }
            Command::Dominance { scenario, axes, .. } | Command::Sweep { scenario, axes, .. } => {
                scenario.apply(&mut c);
                axes.apply(&mut c);
            }
        }
        c
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Config file (`key = value` lines or JSON); flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Atmospheric preset (hot, moderate, cold_dry) or a conditions file.
    #[arg(long)]
    pub cond: Option<String>,
    #[arg(long)]
    pub temperature_k: Option<f64>,
    #[arg(long)]
    pub pressure_pa: Option<f64>,
    #[arg(long)]
    pub water_vapor_density_g_m3: Option<f64>,
    /// cmos or sige (txnf also accepts all).
    #[arg(long)]
    pub tech: Option<String>,
    /// paper_eq2 or output_referred.
    #[arg(long)]
    pub tx_noise_model: Option<String>,
    /// Component table CSV replacing the bundled one.
    #[arg(long)]
    pub components: Option<String>,
    #[arg(long)]
    pub oxygen_lines: Option<String>,
    #[arg(long)]
    pub water_lines: Option<String>,
    /// Output file, or directory for casestudy and sensitivity.
    #[arg(long)]
    pub out: Option<String>,
    /// csv or json.
    #[arg(long)]
    pub format: Option<String>,
    /// Integration points across the signal band (odd).
    #[arg(long)]
    pub points: Option<usize>,
    /// Worker threads for sweeps; 0 uses all cores. Output does not depend
    /// on it.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
}

impl CommonArgs {
    fn apply(&self, c: &mut RunConfig) {
        set(&mut c.cond, self.cond.clone());
        set(&mut c.temperature_k, self.temperature_k);
        set(&mut c.pressure_pa, self.pressure_pa);
        set(
            &mut c.water_vapor_density_g_m3,
            self.water_vapor_density_g_m3,
        );
        set(&mut c.tech, self.tech.clone());
        set(&mut c.tx_noise_model, self.tx_noise_model.clone());
        set(&mut c.components, self.components.clone());
        set(&mut c.oxygen_lines, self.oxygen_lines.clone());
        set(&mut c.water_lines, self.water_lines.clone());
        set(&mut c.out, self.out.clone());
        set(&mut c.format, self.format.clone());
        set(&mut c.points, self.points);
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct ScenarioArgs {
    /// short, medium or long.
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long)]
    pub distance_m: Option<f64>,
    /// Carrier frequency.
    #[arg(long)]
    pub freq_ghz: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub tx_gain_dbi: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub rx_gain_dbi: Option<f64>,
    /// Fixed power in dBm, or `psat` for the saturated-power trend.
    #[arg(long, allow_hyphen_values = true)]
    pub tx_power: Option<String>,
    #[arg(long)]
    pub fractional_bandwidth: Option<f64>,
}

impl ScenarioArgs {
    fn apply(&self, c: &mut RunConfig) {
        set(&mut c.preset, self.preset.clone());
        set(&mut c.distance_m, self.distance_m);
        set(&mut c.freq_ghz, self.freq_ghz);
        set(&mut c.tx_gain_dbi, self.tx_gain_dbi);
        set(&mut c.rx_gain_dbi, self.rx_gain_dbi);
        set(
            &mut c.tx_power,
            self.tx_power.as_ref().map(|p| match p.parse::<f64>() {
                Ok(v) => TxPowerSetting::Dbm(v),
                Err(_) => TxPowerSetting::Named(p.clone()),
            }),
        );
        set(&mut c.fractional_bandwidth, self.fractional_bandwidth);
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct FrequencyRange {
    #[arg(long)]
    pub start_ghz: Option<f64>,
    #[arg(long)]
    pub stop_ghz: Option<f64>,
    #[arg(long)]
    pub step_ghz: Option<f64>,
}

impl FrequencyRange {
    fn apply(&self, c: &mut RunConfig) {
        set(&mut c.start_ghz, self.start_ghz);
        set(&mut c.stop_ghz, self.stop_ghz);
        set(&mut c.step_ghz, self.step_ghz);
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct DistanceRange {
    #[arg(long)]
    pub distance_start_m: Option<f64>,
    #[arg(long)]
    pub distance_stop_m: Option<f64>,
    /// Log-spaced distance points.
    #[arg(long)]
    pub distance_points: Option<usize>,
}

impl DistanceRange {
    fn apply(&self, c: &mut RunConfig) {
        set(&mut c.distance_start_m, self.distance_start_m);
        set(&mut c.distance_stop_m, self.distance_stop_m);
        set(&mut c.distance_points, self.distance_points);
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct AxisArgs {
    /// `kind:start:stop:steps`; kinds are frequency (GHz), distance (m),
    /// nf_db_override (dB) and total_pathloss_db_override (dB).
    #[arg(long, allow_hyphen_values = true)]
    pub axis: Option<String>,
    /// Second axis; turns dominance into a parametric grid.
    #[arg(long, allow_hyphen_values = true)]
    pub axis2: Option<String>,
    /// Log-spaced points along a one-axis sweep.
    #[arg(long)]
    pub log_spacing: Option<bool>,
}

impl AxisArgs {
    fn apply(&self, c: &mut RunConfig) {
        set(&mut c.axis, self.axis.clone());
        set(&mut c.axis2, self.axis2.clone());
        set(&mut c.log_spacing, self.log_spacing);
    }
}

fn set<T>(slot: &mut Option<T>, value: Option<T>) {
    if value.is_some() {
        *slot = value;
    }
}
