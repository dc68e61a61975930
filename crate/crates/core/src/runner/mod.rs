//! Named presets and custom runs: resolve a [`RunConfig`] into series of
//! delay scans, then write one CSV per series and a manifest.

mod config;

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

pub use config::{
    parse_config, parse_config_with, parse_document, Experiment, GridSettings, RunConfig,
    GeometryConfig, ScanSettings, KEYS,
};

use crate::circuit::CircuitGeometry;
use crate::detection::{scan_component, Component, ScanResult};
use crate::oracle::{delay_compensation, dip_positions, fringe_period};
use crate::spectral::{build_grid, sinc_lobe_width, FrequencyGrid};
use crate::{Error, Result};

/// Exact CSV header.
pub const CSV_HEADER: &str = "delta_l_um,p_vv,p_hh,p_hv,p_vh,p_bunch_1,p_bunch_2";

/// Margin around the outermost dips, in dip half-widths, for automatic ranges.
const AUTO_MARGIN_WIDTHS: f64 = 3.0;

/// One curve of an experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub geometry: CircuitGeometry,
    pub component: Component,
}

impl Series {
    fn new(label: impl Into<String>, geometry: GeometryConfig, component: Component) -> Self {
        Self {
            label: label.into(),
            geometry: geometry.to_geometry(),
            component,
        }
    }
}

/// Curves of the configured experiment. Parameters that a preset varies
/// between its curves take precedence over configured values.
pub fn series(config: &RunConfig) -> Vec<Series> {
    let base = config.geometry;
    let with_phi1 = |phi1_rad| GeometryConfig { phi1_rad, ..base };
    let total = Component::Total;
    match config.experiment {
        Experiment::Fig3a => vec![
            Series::new("phi1_0", with_phi1(0.0), total),
            Series::new("phi1_pi2", with_phi1(FRAC_PI_2), total),
        ],
        Experiment::Fig3b => vec![
            Series::new("phi1_3pi8", with_phi1(3.0 * PI / 8.0), total),
            Series::new("phi1_pi2", with_phi1(FRAC_PI_2), total),
        ],
        Experiment::Fig4 => vec![
            Series::new("total", base, total),
            Series::new("psi1", base, Component::Psi1),
            Series::new("psi2", base, Component::Psi2),
        ],
        Experiment::Fig5 => [1.035, 1.5, 3.07]
            .into_iter()
            .flat_map(|cm| {
                let g = GeometryConfig {
                    l_pdc_cm: cm,
                    ..base
                };
                [
                    Series::new(format!("L{cm}cm_total"), g, total),
                    Series::new(format!("L{cm}cm_psi1"), g, Component::Psi1),
                ]
            })
            .collect(),
        Experiment::Fig6a => vec![
            Series::new(
                "L2.07cm_x45210um",
                GeometryConfig {
                    l_pdc_cm: 2.07,
                    x_um: 45_210.0,
                    ..base
                },
                total,
            ),
            Series::new(
                "L6.21cm_x3810um",
                GeometryConfig {
                    l_pdc_cm: 6.21,
                    x_um: 3810.0,
                    ..base
                },
                total,
            ),
        ],
        Experiment::Fig6b => [5810.0, 9810.0]
            .into_iter()
            .map(|y| {
                Series::new(
                    format!("y{y}um"),
                    GeometryConfig {
                        y_um: y,
                        ..base
                    },
                    total,
                )
            })
            .collect(),
        Experiment::Custom => vec![Series::new("custom", base, config.component)],
    }
}

/// Frequency grid centred on degeneracy for one series.
pub fn grid_for(config: &RunConfig, geom: &CircuitGeometry) -> Result<FrequencyGrid> {
    let pump = config.pump()?;
    let half_span = match config.grid.half_span_rad_s {
        Some(span) => span,
        None => config.grid.half_span_lobes * sinc_lobe_width(&config.dispersion, geom.l_pdc),
    };
    build_grid(pump.degenerate_frequency(), half_span, config.grid.n_points)
}

/// Fills automatic scan bounds so that every dip of every series is covered
/// with a margin of a few dip widths.
pub fn resolve_scan(config: &RunConfig) -> Result<RunConfig> {
    let mut resolved = config.clone();
    if config.scan.start_um.is_some() && config.scan.stop_um.is_some() {
        return Ok(resolved);
    }
    let factor = config.dispersion.delay_factor();
    if factor == 0.0 {
        return Err(Error::config(
            "scan.start_um",
            "automatic range needs birefringence; set scan.start_um and scan.stop_um",
        ));
    }
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for s in series(config) {
        let (d1, d2) = dip_positions(&s.geometry, &config.dispersion);
        let width = factor.abs() * 0.5 * s.geometry.l_pdc;
        lo = lo.min(d1.min(d2) - AUTO_MARGIN_WIDTHS * width);
        hi = hi.max(d1.max(d2) + AUTO_MARGIN_WIDTHS * width);
    }
    let start = resolved.scan.start_um.unwrap_or(lo * 1e6);
    let stop = resolved.scan.stop_um.unwrap_or(hi * 1e6);
    if !(stop > start) {
        return Err(Error::config("scan.stop_um", "must exceed scan.start_um"));
    }
    resolved.scan.start_um = Some(start);
    resolved.scan.stop_um = Some(stop);
    Ok(resolved)
}

/// Delay values (m): the coarse grid merged with fine windows around each
/// series' compensation point.
pub fn delta_l_values(config: &RunConfig) -> Result<Vec<f64>> {
    let (Some(start), Some(stop)) = (config.scan.start_um, config.scan.stop_um) else {
        return Err(Error::config("scan.start_um", "scan range is not resolved"));
    };
    let n = config.scan.points;
    let mut values: Vec<f64> = (0..n)
        .map(|k| (start + (stop - start) * k as f64 / (n - 1) as f64) * 1e-6)
        .collect();

    if config.scan.fine_periods > 0 {
        let period = fringe_period(&config.dispersion, &config.pump()?);
        let step = period / config.scan.fine_steps_per_period as f64;
        let half = (config.scan.fine_periods * config.scan.fine_steps_per_period) as i64;
        for s in series(config) {
            let center = delay_compensation(&s.geometry, &config.dispersion);
            values.extend((-half..=half).map(|j| center + j as f64 * step));
        }
    }
    values.sort_by(f64::total_cmp);
    values.dedup_by(|a, b| (*a - *b).abs() < 1e-13);
    Ok(values)
}

/// Result of [`run`]: the resolved configuration and one scan per series.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub config: RunConfig,
    pub series: Vec<(Series, ScanResult)>,
}

pub fn run(config: &RunConfig) -> Result<RunOutput> {
    config.validate()?;
    let config = resolve_scan(config)?;
    let pump = config.pump()?;
    let delta_l = delta_l_values(&config)?;
    let mut out = Vec::new();
    for s in series(&config) {
        let grid = grid_for(&config, &s.geometry)?;
        let scan = scan_component(&s.geometry, &config.dispersion, &pump, &grid, &delta_l, s.component)?;
        out.push((s, scan));
    }
    Ok(RunOutput {
        config,
        series: out,
    })
}

/// Runs and writes outputs to `config.output_dir`.
pub fn execute(config: &RunConfig) -> Result<(RunOutput, Vec<PathBuf>)> {
    let output = run(config)?;
    let files = output.write(&config.output_dir)?;
    Ok((output, files))
}

pub fn format_csv(scan: &ScanResult) -> String {
    let mut s = String::with_capacity(scan.records.len() * 160);
    s.push_str(CSV_HEADER);
    s.push('\n');
    for (dl, r) in scan.delta_l_values.iter().zip(&scan.records) {
        let _ = write!(s, "{:.16e}", dl * 1e6);
        for p in r.as_array() {
            let _ = write!(s, ",{p:.16e}");
        }
        s.push('\n');
    }
    s
}

impl RunOutput {
    pub fn file_name(&self, series: &Series) -> String {
        format!("{}_{}.csv", self.config.experiment, series.label)
    }

    /// Key-value manifest; reading it back with [`parse_config`] reproduces
    /// the run.
    pub fn manifest(&self) -> String {
        let cfg = &self.config;
        let mut m = String::new();
        let _ = writeln!(m, "# run manifest");
        for (k, v) in cfg.key_values() {
            let _ = writeln!(m, "{k} = {v}");
        }
        let _ = writeln!(m, "info.version = {}", env!("CARGO_PKG_VERSION"));
        let _ = writeln!(m, "info.quadrature = {}", FrequencyGrid::QUADRATURE);
        let _ = writeln!(m, "info.scan_points_total = {}", self.series.first().map_or(0, |(_, s)| s.delta_l_values.len()));
        for (k, _) in cfg.key_values() {
            if cfg.is_inferred(k) {
                let _ = writeln!(m, "info.inferred.{k} = true");
            }
        }
        for (s, scan) in &self.series {
            let g = &s.geometry;
            let grid = &scan.metadata.grid;
            let _ = writeln!(
                m,
                "info.series.{} = file={} component={} L_PDC_cm={} x_um={} y_um={} l_um={} phi1_rad={} phi2_rad={}",
                s.label,
                self.file_name(s),
                s.component.label(),
                g.l_pdc * 1e2,
                g.x * 1e6,
                g.y * 1e6,
                g.l * 1e6,
                g.phi1,
                g.phi2
            );
            let _ = writeln!(
                m,
                "info.grid.{} = n_points={} center_rad_s={} half_span_rad_s={}",
                s.label,
                grid.n_points(),
                grid.center(),
                grid.half_span()
            );
            for (i, w) in scan.metadata.warnings.iter().enumerate() {
                let _ = writeln!(m, "info.warning.{}.{} = {}", s.label, i, w);
            }
        }
        m
    }

    /// Writes every CSV and `manifest` into `dir`.
    pub fn write(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        let io = |path: &Path| {
            let path = path.to_path_buf();
            move |source| Error::Io { path, source }
        };
        fs::create_dir_all(dir).map_err(io(dir))?;
        let mut written = Vec::new();
        for (s, scan) in &self.series {
            let path = dir.join(self.file_name(s));
            fs::write(&path, format_csv(scan)).map_err(io(&path))?;
            written.push(path);
        }
        let path = dir.join("manifest");
        fs::write(&path, self.manifest()).map_err(io(&path))?;
        written.push(path);
        Ok(written)
    }
}
