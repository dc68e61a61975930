//! Flat `key = value` configuration with dotted namespaces.
//!
//! Lines starting with `#` are comments. Keys under `info.` are written into
//! run manifests for reference and ignored when read back.

use std::collections::BTreeSet;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::circuit::CircuitGeometry;
use crate::detection::Component;
use crate::spectral::{DispersionModel, PumpSpec};
use crate::{Error, Result, SPEED_OF_LIGHT};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    Fig3a,
    Fig3b,
    Fig4,
    Fig5,
    Fig6a,
    Fig6b,
    Custom,
}

impl Experiment {
    pub const ALL: [Experiment; 7] = [
        Experiment::Fig3a,
        Experiment::Fig3b,
        Experiment::Fig4,
        Experiment::Fig5,
        Experiment::Fig6a,
        Experiment::Fig6b,
        Experiment::Custom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::Fig3a => "fig3a",
            Experiment::Fig3b => "fig3b",
            Experiment::Fig4 => "fig4",
            Experiment::Fig5 => "fig5",
            Experiment::Fig6a => "fig6a",
            Experiment::Fig6b => "fig6b",
            Experiment::Custom => "custom",
        }
    }
}

impl FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| {
                Error::config(
                    "experiment",
                    format!("unknown experiment `{s}` (expected one of fig3a, fig3b, fig4, fig5, fig6a, fig6b, custom)"),
                )
            })
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Circuit geometry in configuration units (lengths in um, `L_PDC` in cm).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometryConfig {
    pub l_pdc_cm: f64,
    pub x_um: f64,
    pub y_um: f64,
    pub l_um: f64,
    pub l_pc1_um: f64,
    pub phi1_rad: f64,
    pub phi2_rad: f64,
}

impl GeometryConfig {
    /// SI geometry with `delta_l = 0`.
    pub fn to_geometry(&self) -> CircuitGeometry {
        CircuitGeometry {
            l_pdc: self.l_pdc_cm * 1e-2,
            x: self.x_um * 1e-6,
            y: self.y_um * 1e-6,
            l: self.l_um * 1e-6,
            delta_l: 0.0,
            l_pc1: self.l_pc1_um * 1e-6,
            phi1: self.phi1_rad,
            phi2: self.phi2_rad,
        }
    }
}

/// Frequency grid settings. The half span is either explicit or a multiple
/// of the sinc lobe width of the series' PDC length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSettings {
    pub n_points: usize,
    pub half_span_lobes: f64,
    pub half_span_rad_s: Option<f64>,
}

/// Delay sweep: a uniform coarse grid plus, optionally, a finely sampled
/// window of `fine_periods` fringe periods either side of each series'
/// compensation point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanSettings {
    pub start_um: Option<f64>,
    pub stop_um: Option<f64>,
    pub points: usize,
    pub fine_periods: usize,
    pub fine_steps_per_period: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub experiment: Experiment,
    pub geometry: GeometryConfig,
    pub dispersion: DispersionModel,
    pub pump_wavelength_nm: f64,
    pub pump_monochromatic: bool,
    pub pump_bandwidth_rad_s: f64,
    pub grid: GridSettings,
    pub scan: ScanSettings,
    pub component: Component,
    pub output_dir: PathBuf,
    /// Keys whose values were set explicitly rather than taken from the preset.
    pub explicit: BTreeSet<String>,
}

/// Every accepted key, in manifest order.
pub const KEYS: &[&str] = &[
    "experiment",
    "geometry.L_PDC_cm",
    "geometry.x_um",
    "geometry.y_um",
    "geometry.l_um",
    "geometry.L_PC1_um",
    "geometry.phi1_rad",
    "geometry.phi2_rad",
    "dispersion.n_H",
    "dispersion.n_V",
    "pump.wavelength_nm",
    "pump.monochromatic",
    "pump.bandwidth_rad_s",
    "grid.n_points",
    "grid.half_span_lobes",
    "grid.half_span_rad_s",
    "scan.start_um",
    "scan.stop_um",
    "scan.points",
    "scan.fine_periods",
    "scan.fine_steps_per_period",
    "custom.component",
    "output.dir",
];

/// Preset values chosen here rather than fixed by the preset itself.
const INFERRED: &[&str] = &[
    "geometry.l_um",
    "dispersion.n_H",
    "dispersion.n_V",
    "pump.wavelength_nm",
    "pump.monochromatic",
    "pump.bandwidth_rad_s",
    "grid.n_points",
    "grid.half_span_lobes",
    "grid.half_span_rad_s",
];

/// Lengths shared with the `fig6b` reference curve for presets that fix no
/// geometry of their own.
const BORROWED_GEOMETRY: &[&str] = &["geometry.L_PDC_cm", "geometry.x_um", "geometry.y_um"];

impl RunConfig {
    /// Preset defaults for `experiment`.
    pub fn preset(experiment: Experiment) -> Self {
        let phi1 = match experiment {
            Experiment::Fig3a => 0.0,
            Experiment::Fig3b => 3.0 * PI / 8.0,
            _ => FRAC_PI_4,
        };
        let (fine_periods, points) = match experiment {
            Experiment::Fig3a | Experiment::Fig3b => (0, 400),
            _ => (12, 400),
        };
        Self {
            experiment,
            geometry: GeometryConfig {
                l_pdc_cm: 2.07,
                x_um: 3810.0,
                y_um: 5810.0,
                l_um: 10_000.0,
                l_pc1_um: 7620.0,
                phi1_rad: phi1,
                phi2_rad: FRAC_PI_2,
            },
            dispersion: DispersionModel::default(),
            pump_wavelength_nm: PumpSpec::DEFAULT_WAVELENGTH * 1e9,
            pump_monochromatic: true,
            pump_bandwidth_rad_s: 0.0,
            grid: GridSettings {
                n_points: 512,
                half_span_lobes: 3.0,
                half_span_rad_s: None,
            },
            scan: ScanSettings {
                start_um: None,
                stop_um: None,
                points,
                fine_periods,
                fine_steps_per_period: 8,
            },
            component: Component::Total,
            output_dir: PathBuf::from("out"),
            explicit: BTreeSet::new(),
        }
    }

    pub fn pump(&self) -> Result<PumpSpec> {
        let omega_p = 2.0 * PI * SPEED_OF_LIGHT / (self.pump_wavelength_nm * 1e-9);
        if self.pump_monochromatic {
            PumpSpec::monochromatic(omega_p)
        } else {
            PumpSpec::gaussian(omega_p, self.pump_bandwidth_rad_s)
        }
    }

    /// Applies one `key = value` override.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let g = &mut self.geometry;
        match key {
            "experiment" => {
                let e: Experiment = value.parse()?;
                if e != self.experiment {
                    return Err(Error::config(key, "experiment must be set before other keys"));
                }
            }
            "geometry.L_PDC_cm" => g.l_pdc_cm = parse_f64(key, value)?,
            "geometry.x_um" => g.x_um = parse_f64(key, value)?,
            "geometry.y_um" => g.y_um = parse_f64(key, value)?,
            "geometry.l_um" => g.l_um = parse_f64(key, value)?,
            "geometry.L_PC1_um" => g.l_pc1_um = parse_f64(key, value)?,
            "geometry.phi1_rad" => g.phi1_rad = parse_angle(key, value)?,
            "geometry.phi2_rad" => g.phi2_rad = parse_angle(key, value)?,
            "dispersion.n_H" => {
                self.dispersion = DispersionModel::new(parse_f64(key, value)?, self.dispersion.n_v())
                    .map_err(|e| Error::config(key, strip(e)))?;
            }
            "dispersion.n_V" => {
                self.dispersion = DispersionModel::new(self.dispersion.n_h(), parse_f64(key, value)?)
                    .map_err(|e| Error::config(key, strip(e)))?;
            }
            "pump.wavelength_nm" => self.pump_wavelength_nm = parse_f64(key, value)?,
            "pump.monochromatic" => self.pump_monochromatic = parse_bool(key, value)?,
            "pump.bandwidth_rad_s" => self.pump_bandwidth_rad_s = parse_f64(key, value)?,
            "grid.n_points" => self.grid.n_points = parse_usize(key, value)?,
            "grid.half_span_lobes" => self.grid.half_span_lobes = parse_f64(key, value)?,
            "grid.half_span_rad_s" => self.grid.half_span_rad_s = parse_auto(key, value)?,
            "scan.start_um" => self.scan.start_um = parse_auto(key, value)?,
            "scan.stop_um" => self.scan.stop_um = parse_auto(key, value)?,
            "scan.points" => self.scan.points = parse_usize(key, value)?,
            "scan.fine_periods" => self.scan.fine_periods = parse_usize(key, value)?,
            "scan.fine_steps_per_period" => self.scan.fine_steps_per_period = parse_usize(key, value)?,
            "custom.component" => {
                self.component = match value {
                    "total" => Component::Total,
                    "psi1" => Component::Psi1,
                    "psi2" => Component::Psi2,
                    _ => return Err(Error::config(key, "expected total, psi1 or psi2")),
                }
            }
            "output.dir" => self.output_dir = PathBuf::from(value),
            _ if key.starts_with("info.") => return Ok(()),
            _ => return Err(Error::config(key, "unknown key")),
        }
        self.explicit.insert(key.to_string());
        Ok(())
    }

    /// Checks every type invariant before any computation.
    pub fn validate(&self) -> Result<()> {
        let g = &self.geometry;
        for (key, v) in [
            ("geometry.L_PDC_cm", g.l_pdc_cm),
            ("geometry.x_um", g.x_um),
            ("geometry.y_um", g.y_um),
            ("geometry.l_um", g.l_um),
            ("geometry.L_PC1_um", g.l_pc1_um),
        ] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::config(key, "length must be non-negative"));
            }
        }
        if !(g.l_pdc_cm > 0.0) {
            return Err(Error::config("geometry.L_PDC_cm", "PDC length must be positive"));
        }
        if !(self.pump_wavelength_nm > 0.0 && self.pump_wavelength_nm.is_finite()) {
            return Err(Error::config("pump.wavelength_nm", "wavelength must be positive"));
        }
        if !self.pump_monochromatic && !(self.pump_bandwidth_rad_s > 0.0) {
            return Err(Error::config(
                "pump.bandwidth_rad_s",
                "bandwidth must be positive when pump.monochromatic = false",
            ));
        }
        if self.grid.n_points < 2 {
            return Err(Error::config("grid.n_points", "need at least 2 grid points"));
        }
        match self.grid.half_span_rad_s {
            Some(span) if !(span > 0.0) => {
                return Err(Error::config("grid.half_span_rad_s", "half span must be positive"))
            }
            Some(_) => {}
            None => {
                if !(self.grid.half_span_lobes > 0.0) {
                    return Err(Error::config("grid.half_span_lobes", "must be positive"));
                }
                if self.dispersion.n_h() == self.dispersion.n_v() {
                    return Err(Error::config(
                        "grid.half_span_lobes",
                        "lobe width is infinite without birefringence; set grid.half_span_rad_s",
                    ));
                }
            }
        }
        if let (Some(a), Some(b)) = (self.scan.start_um, self.scan.stop_um) {
            if !(b > a) {
                return Err(Error::config("scan.stop_um", "must exceed scan.start_um"));
            }
        }
        if self.scan.points < 2 {
            return Err(Error::config("scan.points", "need at least 2 scan points"));
        }
        if self.scan.fine_periods > 0 && self.scan.fine_steps_per_period == 0 {
            return Err(Error::config("scan.fine_steps_per_period", "must be positive"));
        }
        Ok(())
    }

    /// Whether a preset value is an assumption rather than a stated parameter.
    pub fn is_inferred(&self, key: &str) -> bool {
        if self.explicit.contains(key) {
            return false;
        }
        let borrowed = matches!(
            self.experiment,
            Experiment::Fig3a | Experiment::Fig3b | Experiment::Fig4 | Experiment::Custom
        ) && BORROWED_GEOMETRY.contains(&key);
        let fig5_xy = self.experiment == Experiment::Fig5
            && matches!(key, "geometry.x_um" | "geometry.y_um");
        INFERRED.contains(&key) || borrowed || fig5_xy
    }

    /// All keys with their current values, in [`KEYS`] order.
    pub fn key_values(&self) -> Vec<(&'static str, String)> {
        let g = &self.geometry;
        let auto = |v: Option<f64>| v.map_or_else(|| "auto".to_string(), |x| x.to_string());
        KEYS.iter()
            .map(|&k| {
                let v = match k {
                    "experiment" => self.experiment.to_string(),
                    "geometry.L_PDC_cm" => g.l_pdc_cm.to_string(),
                    "geometry.x_um" => g.x_um.to_string(),
                    "geometry.y_um" => g.y_um.to_string(),
                    "geometry.l_um" => g.l_um.to_string(),
                    "geometry.L_PC1_um" => g.l_pc1_um.to_string(),
                    "geometry.phi1_rad" => g.phi1_rad.to_string(),
                    "geometry.phi2_rad" => g.phi2_rad.to_string(),
                    "dispersion.n_H" => self.dispersion.n_h().to_string(),
                    "dispersion.n_V" => self.dispersion.n_v().to_string(),
                    "pump.wavelength_nm" => self.pump_wavelength_nm.to_string(),
                    "pump.monochromatic" => self.pump_monochromatic.to_string(),
                    "pump.bandwidth_rad_s" => self.pump_bandwidth_rad_s.to_string(),
                    "grid.n_points" => self.grid.n_points.to_string(),
                    "grid.half_span_lobes" => self.grid.half_span_lobes.to_string(),
                    "grid.half_span_rad_s" => auto(self.grid.half_span_rad_s),
                    "scan.start_um" => auto(self.scan.start_um),
                    "scan.stop_um" => auto(self.scan.stop_um),
                    "scan.points" => self.scan.points.to_string(),
                    "scan.fine_periods" => self.scan.fine_periods.to_string(),
                    "scan.fine_steps_per_period" => self.scan.fine_steps_per_period.to_string(),
                    "custom.component" => self.component.label().to_string(),
                    "output.dir" => self.output_dir.display().to_string(),
                    _ => unreachable!("key table and match are out of sync: {k}"),
                };
                (k, v)
            })
            .collect()
    }
}

fn strip(e: Error) -> String {
    match e {
        Error::InvalidArgument(m) | Error::InvalidState(m) => m,
        other => other.to_string(),
    }
}

fn parse_f64(key: &str, value: &str) -> Result<f64> {
    let v: f64 = value
        .parse()
        .map_err(|_| Error::config(key, format!("expected a number, got `{value}`")))?;
    if !v.is_finite() {
        return Err(Error::config(key, "value must be finite"));
    }
    Ok(v)
}

fn parse_usize(key: &str, value: &str) -> Result<usize> {
    value
        .parse()
        .map_err(|_| Error::config(key, format!("expected a non-negative integer, got `{value}`")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    value
        .parse()
        .map_err(|_| Error::config(key, format!("expected true or false, got `{value}`")))
}

fn parse_auto(key: &str, value: &str) -> Result<Option<f64>> {
    if value == "auto" {
        Ok(None)
    } else {
        parse_f64(key, value).map(Some)
    }
}

/// Accepts plain radians or multiples of pi such as `pi/4`, `3pi/8`, `-pi`.
fn parse_angle(key: &str, value: &str) -> Result<f64> {
    if value.parse::<f64>().is_ok() {
        return parse_f64(key, value);
    }
    let bad = || Error::config(key, format!("expected an angle in radians or a multiple of pi, got `{value}`"));
    let (numer, denom) = match value.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim().parse::<f64>().map_err(|_| bad())?),
        None => (value, 1.0),
    };
    let factor = numer.strip_suffix("pi").ok_or_else(bad)?.trim().trim_end_matches('*');
    let factor = match factor {
        "" => 1.0,
        "-" => -1.0,
        f => f.parse::<f64>().map_err(|_| bad())?,
    };
    if denom == 0.0 {
        return Err(bad());
    }
    Ok(factor * PI / denom)
}

/// Splits a document into `(key, value)` pairs.
pub fn parse_document(text: &str) -> Result<Vec<(String, String)>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::config(
                format!("line {}", lineno + 1),
                format!("expected `key = value`, got `{line}`"),
            )
        })?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() {
            return Err(Error::config(format!("line {}", lineno + 1), "empty key"));
        }
        if !seen.insert(key.to_string()) {
            return Err(Error::config(key, "duplicate key"));
        }
        out.push((key.to_string(), value.to_string()));
    }
    Ok(out)
}

/// Parses a document: preset defaults first, then the document's values,
/// then `overrides` in order.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    parse_config_with(text, &[])
}

pub fn parse_config_with(text: &str, overrides: &[(String, String)]) -> Result<RunConfig> {
    let entries = parse_document(text)?;
    let experiment = overrides
        .iter()
        .rev()
        .chain(entries.iter())
        .find(|(k, _)| k == "experiment")
        .map(|(_, v)| v.parse::<Experiment>())
        .transpose()?
        .ok_or_else(|| Error::config("experiment", "missing; choose a preset or custom"))?;

    let mut config = RunConfig::preset(experiment);
    for (key, value) in entries.iter().chain(overrides) {
        if key == "experiment" {
            // Resolved above; a later override may replace the file's value.
            value.parse::<Experiment>()?;
            config.explicit.insert(key.clone());
            continue;
        }
        config.set(key, value)?;
    }
    config.validate()?;
    Ok(config)
}
