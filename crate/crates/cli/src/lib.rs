//! Command-line front end for `afmsync`.
//!
//! Exit codes: 0 success, 1 invalid input or configuration, 2 numerical
//! failure. Diagnostics are printed as a single line on stderr.

pub mod config;
mod plot;

use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use afmsync::bogoliubov::{anticrossing, dispersion_sweep_with};
use afmsync::linalg::DEFAULT_STABILITY_MARGIN;
use afmsync::sweep::{argmax, builtin_materials, material, write_dispersion_csv, write_sweep_csv, SuiteTemplate};
use afmsync::{
    build_drift_matrix, eigenvalues_general, nonreciprocal_pair, run_material_suite, run_sweep, CavityMode,
    DispersionMetric, SweepParam, SweepRow, SweepSpec,
};
use clap::{Args, Parser, Subcommand};

pub use config::{parse_config, AxisConfig, Experiment, Layer, ParamOverrides, Preset, RunConfig};

#[derive(Debug)]
pub enum CliError {
    /// Bad command line, configuration file or parameter value.
    Config(String),
    Model(afmsync::Error),
    Io { path: PathBuf, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Model(e) if e.is_numerical() => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "{msg}"),
            CliError::Model(e) => write!(f, "{e}"),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
        }
    }
}

impl std::error::Error for CliError {}

impl From<afmsync::Error> for CliError {
    fn from(e: afmsync::Error) -> Self {
        CliError::Model(e)
    }
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

#[derive(Parser, Debug)]
#[command(name = "afmsync", version, about = "Nonreciprocal magnon synchronization in an AFM-cavity system")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// S12, S21 and the isolation ratio at one parameter point.
    Sync(Common),
    /// S12/S21/Siso over one or two parameter axes.
    Sweep(Common),
    /// Dressed and bare mode frequencies versus H/H_sp.
    Dispersion(Common),
    /// Drift-matrix stability of both cavity modes.
    Stability(Common),
    /// List the material presets, or sweep them.
    Materials(Common),
}

#[derive(Args, Debug)]
struct Common {
    /// TOML configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    preset: Option<Preset>,
    /// Output CSV file (a directory for material sweeps).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write an SVG plot next to the output.
    #[arg(long)]
    plot: bool,
    /// First sweep axis, `name:lo:hi:n`.
    #[arg(long)]
    axis1: Option<AxisConfig>,
    /// Second sweep axis, `name:lo:hi:n`.
    #[arg(long)]
    axis2: Option<AxisConfig>,
    /// Material to sweep (repeatable or comma separated).
    #[arg(long = "material", value_delimiter = ',')]
    materials: Vec<String>,
    /// Dispersion diagonalization: plain or bosonic.
    #[arg(long)]
    metric: Option<DispersionMetric>,
    #[command(flatten)]
    params: ParamOverrides,
}

impl Command {
    fn split(self) -> (Experiment, Common) {
        match self {
            Command::Sync(c) => (Experiment::Sync, c),
            Command::Sweep(c) => (Experiment::Sweep, c),
            Command::Dispersion(c) => (Experiment::Dispersion, c),
            Command::Stability(c) => (Experiment::Stability, c),
            Command::Materials(c) => (Experiment::Materials, c),
        }
    }
}

impl Common {
    fn layer(self, experiment: Experiment) -> Layer {
        Layer {
            experiment: Some(experiment),
            preset: self.preset,
            output_path: self.out,
            plot: self.plot.then_some(true),
            metric: self.metric,
            materials: (!self.materials.is_empty()).then_some(self.materials),
            axis1: self.axis1,
            axis2: self.axis2,
            params: self.params,
        }
    }
}

/// Run the command line `args` (including the program name), writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            return 0;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments");
            let _ = writeln!(err, "error: {}", first.trim_start_matches("error: ").trim());
            return 1;
        }
    };
    match execute(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {}", config::one_line(&e.to_string()));
            e.exit_code()
        }
    }
}

/// [`run_with`] on the process's stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let (experiment, common) = cli.command.split();
    let file_text = match &common.config {
        Some(path) => Some(fs::read_to_string(path).map_err(io_err(path))?),
        None => None,
    };
    let config = parse_config(file_text.as_deref(), &common.layer(experiment))?;
    match config.experiment {
        Experiment::Sync => cmd_sync(&config, out),
        Experiment::Sweep => cmd_sweep(&config, out),
        Experiment::Dispersion => cmd_dispersion(&config, out),
        Experiment::Stability => cmd_stability(&config, out),
        Experiment::Materials => cmd_materials(&config, out),
    }
}

fn stdout_io(e: io::Error) -> CliError {
    CliError::Io {
        path: PathBuf::from("<stdout>"),
        source: e,
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(io_err(path))
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.12}")).unwrap_or_else(|| "absent".into())
}

fn cmd_sync(config: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let params = config.params.resolve()?;
    let r = nonreciprocal_pair(&params);
    writeln!(out, "S12 = {}", fmt_opt(r.s12)).map_err(stdout_io)?;
    writeln!(out, "S21 = {}", fmt_opt(r.s21)).map_err(stdout_io)?;
    writeln!(out, "Siso_dB = {}", fmt_opt(r.s_iso)).map_err(stdout_io)?;
    if let Some(path) = &config.output_path {
        let row = SweepRow {
            axis1: (SweepParam::H, config.params.h),
            axis2: None,
            s12: r.s12,
            s21: r.s21,
            s_iso: r.s_iso,
            stable_bright: r.stable_bright,
            stable_dark: r.stable_dark,
            min_symplectic: r.min_symplectic_eigenvalue(),
            error: r.first_error().cloned(),
        };
        let mut buf = Vec::new();
        write_sweep_csv(&mut buf, &[row]).map_err(io_err(path))?;
        write_file(path, &buf)?;
    }
    match r.first_error() {
        Some(e) => Err(e.clone().into()),
        None => Ok(()),
    }
}

fn cmd_stability(config: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let params = config.params.resolve()?;
    for mode in [CavityMode::Bright, CavityMode::Dark] {
        let a = build_drift_matrix(&params.with_cavity_mode(mode))?;
        let max_re = eigenvalues_general(a.as_matrix())?.max_real_part;
        let verdict = if max_re < -DEFAULT_STABILITY_MARGIN { "stable" } else { "unstable" };
        writeln!(out, "{}: {verdict} (max Re = {max_re:e})", mode.as_str()).map_err(stdout_io)?;
    }
    Ok(())
}

fn sweep_spec(config: &RunConfig, base: afmsync::SystemParams) -> Result<SweepSpec, CliError> {
    let axis1 = config
        .axis1
        .as_ref()
        .ok_or_else(|| CliError::Config("sweep needs axis1 (use --axis1 name:lo:hi:n or a preset)".into()))?
        .to_axis()?;
    let axis2 = config.axis2.as_ref().map(AxisConfig::to_axis).transpose()?;
    Ok(SweepSpec {
        base,
        axis1,
        axis2,
        h_unit: config.params.h_unit,
    })
}

fn sweep_csv(rows: &[SweepRow]) -> Vec<u8> {
    let mut buf = Vec::new();
    write_sweep_csv(&mut buf, rows).expect("writing to memory");
    buf
}

fn axis_label(spec: &SweepSpec, param: SweepParam) -> String {
    match (param, spec.h_unit) {
        (SweepParam::H, afmsync::FieldUnit::Hsp) => "H/H_sp".into(),
        (p, _) => format!("{p}/H_ex"),
    }
}

fn sweep_plot(spec: &SweepSpec, rows: &[SweepRow], title: &str) -> String {
    match &spec.axis2 {
        None => {
            let xs = rows.iter().map(|r| r.axis1.1);
            let series = [
                plot::Series {
                    label: "S12",
                    points: xs.clone().zip(rows.iter().map(|r| r.s12)).collect(),
                    dashed: false,
                },
                plot::Series {
                    label: "S21",
                    points: xs.zip(rows.iter().map(|r| r.s21)).collect(),
                    dashed: false,
                },
            ];
            plot::line_plot(title, &axis_label(spec, spec.axis1.param), "S", &series)
        }
        Some(a2) => {
            let panels = [
                plot::Panel {
                    label: "S12 (bright)",
                    values: rows.iter().map(|r| r.s12).collect(),
                },
                plot::Panel {
                    label: "S21 (dark)",
                    values: rows.iter().map(|r| r.s21).collect(),
                },
            ];
            plot::heatmaps(
                title,
                &spec.axis1.grid,
                &a2.grid,
                &axis_label(spec, spec.axis1.param),
                &axis_label(spec, a2.param),
                &panels,
            )
        }
    }
}

fn cmd_sweep(config: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let spec = sweep_spec(config, config.params.resolve()?)?;
    let rows = run_sweep(&spec)?;
    let csv = sweep_csv(&rows);
    match &config.output_path {
        Some(path) => {
            write_file(path, &csv)?;
            if config.plot {
                write_file(&path.with_extension("svg"), sweep_plot(&spec, &rows, "Synchronization").as_bytes())?;
            }
            let stable = rows.iter().filter(|r| r.stable_bright && r.stable_dark).count();
            writeln!(out, "wrote {} rows ({stable} stable) to {}", rows.len(), path.display()).map_err(stdout_io)?;
        }
        None => out.write_all(&csv).map_err(stdout_io)?,
    }
    Ok(())
}

fn cmd_dispersion(config: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let params = config.params.resolve()?;
    let axis = config
        .axis1
        .as_ref()
        .ok_or_else(|| CliError::Config("dispersion needs axis1 over h (use --axis1 h:lo:hi:n or a preset)".into()))?;
    if axis.param != "h" {
        return Err(CliError::Config(format!("dispersion axis must be `h`, got `{}`", axis.param)));
    }
    let grid = axis.to_axis()?.grid;
    let points = dispersion_sweep_with(&params, &grid, config.metric)?;
    let mut csv = Vec::new();
    write_dispersion_csv(&mut csv, &points).expect("writing to memory");
    match &config.output_path {
        Some(path) => {
            write_file(path, &csv)?;
            if config.plot {
                let labels = ["omega_1", "omega_2", "omega_3", "omega_alpha", "omega_beta", "omega_cavity"];
                let series: Vec<plot::Series> = (0..6)
                    .map(|k| plot::Series {
                        label: labels[k],
                        points: points
                            .iter()
                            .map(|p| (p.h, Some(if k < 3 { p.dressed[k] } else { p.bare[k - 3] })))
                            .collect(),
                        dashed: k >= 3,
                    })
                    .collect();
                let svg = plot::line_plot("Dispersion", "H/H_sp", "frequency / H_ex", &series);
                write_file(&path.with_extension("svg"), svg.as_bytes())?;
            }
            writeln!(out, "wrote {} points to {}", points.len(), path.display()).map_err(stdout_io)?;
            let mode = params.cavity_mode;
            match anticrossing(&params, mode) {
                Ok(ac) => writeln!(
                    out,
                    "{} anticrossing: h_star = {:.6} H_sp, min gap {:.6e} H_ex at {:.6} H_sp",
                    mode.as_str(),
                    ac.h_star,
                    ac.gap,
                    ac.h_min_gap
                ),
                Err(e) => writeln!(out, "{} anticrossing: {e}", mode.as_str()),
            }
            .map_err(stdout_io)?;
        }
        None => out.write_all(&csv).map_err(stdout_io)?,
    }
    Ok(())
}

fn cmd_materials(config: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    if config.materials.is_empty() {
        writeln!(
            out,
            "{:<8} {:>10} {:>10} {:>10} {:>11} {:>13}",
            "name", "H_ex (T)", "H_an/H_ex", "g/H_ex", "kappa/H_ex", "kappa_c/H_ex"
        )
        .map_err(stdout_io)?;
        for m in builtin_materials() {
            writeln!(
                out,
                "{:<8} {:>10} {:>10} {:>10} {:>11} {:>13}",
                m.name, m.h_ex_tesla, m.h_an_ratio, m.g_ratio, m.kappa_ratio, m.kappa_c_ratio
            )
            .map_err(stdout_io)?;
        }
        return Ok(());
    }

    let presets = config
        .materials
        .iter()
        .map(|n| material(n))
        .collect::<Result<Vec<_>, _>>()?;
    let probe = sweep_spec(config, config.params.resolve()?)?;
    let template = SuiteTemplate {
        base: config.params,
        axis1: probe.axis1,
        axis2: probe.axis2,
    };
    if let Some(dir) = &config.output_path {
        fs::create_dir_all(dir).map_err(io_err(dir))?;
    }
    writeln!(out, "{:<8} {:>8} {:>8} {:>14} {:>14}", "name", "cells", "stable", "max S12", "max S21")
        .map_err(stdout_io)?;
    for sweep in run_material_suite(&presets, &template) {
        let name = &sweep.material.name;
        let rows = match sweep.rows {
            Ok(rows) => rows,
            Err(e) => {
                writeln!(out, "{name:<8} failed: {e}").map_err(stdout_io)?;
                continue;
            }
        };
        let xs: Vec<f64> = (0..rows.len()).map(|i| i as f64).collect();
        let max12 = argmax(&xs, &rows.iter().map(|r| r.s12).collect::<Vec<_>>()).map(|m| m.1);
        let max21 = argmax(&xs, &rows.iter().map(|r| r.s21).collect::<Vec<_>>()).map(|m| m.1);
        let stable = rows.iter().filter(|r| r.stable_bright && r.stable_dark).count();
        writeln!(
            out,
            "{name:<8} {:>8} {stable:>8} {:>14} {:>14}",
            rows.len(),
            max12.map(|v| format!("{v:.6}")).unwrap_or_else(|| "-".into()),
            max21.map(|v| format!("{v:.6}")).unwrap_or_else(|| "-".into())
        )
        .map_err(stdout_io)?;
        if let Some(dir) = &config.output_path {
            let path = dir.join(format!("{name}.csv"));
            write_file(&path, &sweep_csv(&rows))?;
            if config.plot {
                let spec = SweepSpec {
                    base: sweep.material.apply_to(&config.params).resolve()?,
                    axis1: template.axis1.clone(),
                    axis2: template.axis2.clone(),
                    h_unit: config.params.h_unit,
                };
                write_file(&path.with_extension("svg"), sweep_plot(&spec, &rows, name).as_bytes())?;
            }
        }
    }
    Ok(())
}
