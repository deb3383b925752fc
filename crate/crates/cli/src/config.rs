//! Run configuration: TOML file, presets and command-line overrides, merged
//! with precedence flags > file > preset > defaults.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use afmsync::{Axis, CavityMode, DispersionMetric, FieldUnit, ParamSet, SweepParam};
use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Experiment {
    Sync,
    Sweep,
    Dispersion,
    Stability,
    Materials,
}

impl Experiment {
    pub fn as_str(self) -> &'static str {
        match self {
            Experiment::Sync => "sync",
            Experiment::Sweep => "sweep",
            Experiment::Dispersion => "dispersion",
            Experiment::Stability => "stability",
            Experiment::Materials => "materials",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    /// S12/S21/Siso versus H/H_sp.
    Fig2,
    /// Dispersion versus H/H_sp.
    Fig3,
    /// S12/S21 over g_ab and H/H_sp.
    Fig4,
    /// The Fig4 grid for DPPH, MnF2 and NaNiO2.
    Fig5,
}

/// A linearly spaced sweep axis, written `name:lo:hi:n` on the command line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisConfig {
    pub param: String,
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl AxisConfig {
    fn new(param: &str, lo: f64, hi: f64, n: usize) -> Self {
        AxisConfig {
            param: param.to_string(),
            lo,
            hi,
            n,
        }
    }

    pub fn to_axis(&self) -> Result<Axis, CliError> {
        let param: SweepParam = self.param.parse()?;
        if self.n == 0 {
            return Err(CliError::Config(format!("axis `{}` needs at least one point", self.param)));
        }
        if self.n > 1 && !(self.lo < self.hi) {
            return Err(CliError::Config(format!(
                "axis `{}` must have lo < hi, got {}:{}",
                self.param, self.lo, self.hi
            )));
        }
        Ok(Axis::linspace(param, self.lo, self.hi, self.n)?)
    }
}

impl FromStr for AxisConfig {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [name, lo, hi, n] = parts[..] else {
            return Err(format!("axis `{s}` must look like name:lo:hi:n"));
        };
        let num = |x: &str| x.parse::<f64>().map_err(|_| format!("axis `{s}`: `{x}` is not a number"));
        Ok(AxisConfig {
            param: name.to_string(),
            lo: num(lo)?,
            hi: num(hi)?,
            n: n.parse().map_err(|_| format!("axis `{s}`: `{n}` is not a point count"))?,
        })
    }
}

impl fmt::Display for AxisConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}:{}", self.param, self.lo, self.hi, self.n)
    }
}

/// Partial parameter set; every key matches a [`ParamSet`] field.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize, Args)]
#[serde(deny_unknown_fields)]
pub struct ParamOverrides {
    /// Exchange field (sets the frequency unit).
    #[arg(long = "h_ex", allow_negative_numbers = true)]
    pub h_ex: Option<f64>,
    /// H_an / H_ex.
    #[arg(long = "h_an_ratio", allow_negative_numbers = true)]
    pub h_an_ratio: Option<f64>,
    /// External static field, in `h_unit`.
    #[arg(long = "h", allow_negative_numbers = true)]
    pub h: Option<f64>,
    /// Unit of `h`: Hsp or Hex.
    #[arg(long = "h_unit")]
    pub h_unit: Option<FieldUnit>,
    #[arg(long = "g_ab", allow_negative_numbers = true)]
    pub g_ab: Option<f64>,
    #[arg(long = "g_ac", allow_negative_numbers = true)]
    pub g_ac: Option<f64>,
    #[arg(long = "g_bc", allow_negative_numbers = true)]
    pub g_bc: Option<f64>,
    /// Magnon damping (both sublattices).
    #[arg(long = "kappa", allow_negative_numbers = true)]
    pub kappa: Option<f64>,
    #[arg(long = "kappa_c", allow_negative_numbers = true)]
    pub kappa_c: Option<f64>,
    #[arg(long = "omega_c_over_hsp", allow_negative_numbers = true)]
    pub omega_c_over_hsp: Option<f64>,
    #[arg(long = "delta_f_over_hsp", allow_negative_numbers = true)]
    pub delta_f_over_hsp: Option<f64>,
    /// bright or dark (single-mode experiments).
    #[arg(long = "cavity_mode")]
    pub cavity_mode: Option<CavityMode>,
}

impl ParamOverrides {
    pub fn apply(&self, p: &mut ParamSet) {
        macro_rules! set {
            ($($f:ident),*) => {$(if let Some(v) = self.$f { p.$f = v; })*};
        }
        set!(
            h_ex,
            h_an_ratio,
            h,
            h_unit,
            g_ab,
            g_ac,
            g_bc,
            kappa,
            kappa_c,
            omega_c_over_hsp,
            delta_f_over_hsp,
            cavity_mode
        );
    }
}

/// One configuration source. Every field is optional; unset fields fall
/// through to the next layer.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Layer {
    pub experiment: Option<Experiment>,
    pub preset: Option<Preset>,
    pub output_path: Option<PathBuf>,
    pub plot: Option<bool>,
    pub metric: Option<DispersionMetric>,
    pub materials: Option<Vec<String>>,
    pub axis1: Option<AxisConfig>,
    pub axis2: Option<AxisConfig>,
    #[serde(default)]
    pub params: ParamOverrides,
}

impl Layer {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(one_line(&e.to_string())))
    }
}

/// Fully resolved run configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub experiment: Experiment,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub preset: Option<Preset>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output_path: Option<PathBuf>,
    pub plot: bool,
    pub metric: DispersionMetric,
    pub materials: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axis1: Option<AxisConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axis2: Option<AxisConfig>,
    pub params: ParamSet,
}

impl RunConfig {
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("run configuration serializes to TOML")
    }
}

fn preset_layer(preset: Preset) -> Layer {
    let fig4_axes = (
        Some(AxisConfig::new("g_ab", 0.8, 1.0, 101)),
        Some(AxisConfig::new("h", 0.0, 2.0, 101)),
    );
    let (axis1, axis2, materials) = match preset {
        Preset::Fig2 => (Some(AxisConfig::new("h", 0.0, 0.4, 81)), None, None),
        Preset::Fig3 => (Some(AxisConfig::new("h", 0.0, 0.4, 401)), None, None),
        Preset::Fig4 => (fig4_axes.0, fig4_axes.1, None),
        Preset::Fig5 => (
            fig4_axes.0,
            fig4_axes.1,
            Some(vec!["DPPH".into(), "MnF2".into(), "NaNiO2".into()]),
        ),
    };
    // Every preset uses the reference parameter set in H_sp units.
    Layer {
        axis1,
        axis2,
        materials,
        params: ParamOverrides {
            h_unit: Some(FieldUnit::Hsp),
            ..ParamOverrides::default()
        },
        ..Layer::default()
    }
}

fn merge(into: &mut RunConfig, layer: &Layer) {
    if let Some(e) = layer.experiment {
        into.experiment = e;
    }
    if let Some(p) = &layer.output_path {
        into.output_path = Some(p.clone());
    }
    if let Some(p) = layer.plot {
        into.plot = p;
    }
    if let Some(m) = layer.metric {
        into.metric = m;
    }
    if let Some(m) = &layer.materials {
        into.materials = m.clone();
    }
    if let Some(a) = &layer.axis1 {
        into.axis1 = Some(a.clone());
    }
    if let Some(a) = &layer.axis2 {
        into.axis2 = Some(a.clone());
    }
    layer.params.apply(&mut into.params);
}

/// Merge the file and flag layers over the preset and global defaults, then
/// validate. `file` is TOML text.
pub fn parse_config(file: Option<&str>, flags: &Layer) -> Result<RunConfig, CliError> {
    let file = match file {
        Some(text) => Layer::from_toml(text)?,
        None => Layer::default(),
    };
    let experiment = flags
        .experiment
        .or(file.experiment)
        .ok_or_else(|| CliError::Config("no experiment selected".into()))?;
    let preset = flags.preset.or(file.preset);

    let mut config = RunConfig {
        experiment,
        preset,
        output_path: None,
        plot: false,
        metric: DispersionMetric::default(),
        materials: Vec::new(),
        axis1: None,
        axis2: None,
        params: ParamSet::default(),
    };
    if let Some(p) = preset {
        merge(&mut config, &preset_layer(p));
    }
    merge(&mut config, &file);
    merge(&mut config, flags);
    config.experiment = experiment;
    validate(&config)?;
    Ok(config)
}

fn validate(config: &RunConfig) -> Result<(), CliError> {
    config.params.resolve()?;
    for axis in [&config.axis1, &config.axis2].into_iter().flatten() {
        axis.to_axis()?;
    }
    if config.axis2.is_some() && config.axis1.is_none() {
        return Err(CliError::Config("axis2 given without axis1".into()));
    }
    for name in &config.materials {
        afmsync::sweep::material(name)?;
    }
    Ok(())
}

pub(crate) fn one_line(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}
