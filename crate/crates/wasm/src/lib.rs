//! Browser bindings for the simulator.
//!
//! Three operations are exposed: a coincidence scan over the lower-channel
//! excess length, the spatial Schmidt number as a function of the first
//! converter angle, and the joint spectral amplitude with its Schmidt number.
//! Each has a plain Rust entry point (used by the native tests) and a thin
//! `wasm_bindgen` wrapper.

use hom_core::circuit::CircuitGeometry;
use hom_core::detection::{scan_with_jsa, Component};
use hom_core::oracle::{
    delay_compensation, dip_positions, schmidt_number_general, schmidt_number_spatial,
};
use hom_core::spectral::{
    build_grid, build_jsa, schmidt_decompose, sinc_lobe_width, DispersionModel, PumpSpec,
};
use wasm_bindgen::prelude::*;

/// Upper limits that keep a browser tab responsive.
const MAX_NODES: usize = 1024;
const MAX_POINTS: usize = 4000;

/// Circuit parameters shared by the scan and Schmidt operations, in the
/// units of the configuration file.
#[wasm_bindgen]
#[derive(Debug, Clone, Copy)]
pub struct Setup {
    pub l_pdc_cm: f64,
    pub x_um: f64,
    pub y_um: f64,
    pub l_um: f64,
    pub phi1_rad: f64,
    pub n_h: f64,
    pub n_v: f64,
    pub pump_nm: f64,
}

#[wasm_bindgen]
impl Setup {
    #[wasm_bindgen(constructor)]
    pub fn new() -> Setup {
        Setup::default()
    }
}

impl Default for Setup {
    fn default() -> Self {
        Self {
            l_pdc_cm: 2.07,
            x_um: 3810.0,
            y_um: 5810.0,
            l_um: 10_000.0,
            phi1_rad: std::f64::consts::FRAC_PI_4,
            n_h: 2.15,
            n_v: 2.21,
            pump_nm: 775.0,
        }
    }
}

impl Setup {
    fn geometry(&self) -> CircuitGeometry {
        CircuitGeometry {
            l_pdc: self.l_pdc_cm * 1e-2,
            x: self.x_um * 1e-6,
            y: self.y_um * 1e-6,
            l: self.l_um * 1e-6,
            delta_l: 0.0,
            l_pc1: 0.0,
            phi1: self.phi1_rad,
            phi2: std::f64::consts::FRAC_PI_2,
        }
    }

    fn physics(&self) -> Result<(CircuitGeometry, DispersionModel, PumpSpec), String> {
        let disp = DispersionModel::new(self.n_h, self.n_v).map_err(|e| e.to_string())?;
        let pump = PumpSpec::from_wavelength(self.pump_nm * 1e-9).map_err(|e| e.to_string())?;
        let geom = self.geometry();
        geom.validate().map_err(|e| e.to_string())?;
        if !(geom.l_pdc > 0.0) {
            return Err("PDC length must be positive".into());
        }
        Ok((geom, disp, pump))
    }
}

/// Coincidence probabilities `p_VV` for the whole state and for its
/// cross-channel and same-channel parts.
#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct ScanCurve {
    delta_l_um: Vec<f64>,
    total: Vec<f64>,
    psi1: Vec<f64>,
    psi2: Vec<f64>,
    dips_um: Vec<f64>,
    compensation_um: f64,
}

#[wasm_bindgen]
impl ScanCurve {
    #[wasm_bindgen(getter)]
    pub fn delta_l_um(&self) -> Vec<f64> {
        self.delta_l_um.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn total(&self) -> Vec<f64> {
        self.total.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn psi1(&self) -> Vec<f64> {
        self.psi1.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn psi2(&self) -> Vec<f64> {
        self.psi2.clone()
    }

    /// Predicted dip positions.
    #[wasm_bindgen(getter)]
    pub fn dips_um(&self) -> Vec<f64> {
        self.dips_um.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn compensation_um(&self) -> f64 {
        self.compensation_um
    }
}

/// Scans `points` values of the excess length between `start_um` and
/// `stop_um` with a monochromatic pump on `nodes` frequency nodes.
pub fn scan_curve(
    setup: &Setup,
    start_um: f64,
    stop_um: f64,
    points: usize,
    nodes: usize,
) -> Result<ScanCurve, String> {
    if !(2..=MAX_POINTS).contains(&points) {
        return Err(format!("points must be between 2 and {MAX_POINTS}"));
    }
    if !(8..=MAX_NODES).contains(&nodes) {
        return Err(format!("nodes must be between 8 and {MAX_NODES}"));
    }
    if !(stop_um > start_um) {
        return Err("the scan must end after it starts".into());
    }
    let (geom, disp, pump) = setup.physics()?;
    let half_span = 3.0 * sinc_lobe_width(&disp, geom.l_pdc);
    if !half_span.is_finite() {
        return Err("equal indices leave the phase matching unbounded".into());
    }
    let grid = build_grid(pump.degenerate_frequency(), half_span, nodes).map_err(|e| e.to_string())?;
    let jsa = build_jsa(&grid, &grid, &pump, &disp, geom.l_pdc).map_err(|e| e.to_string())?;

    let delta_l_um: Vec<f64> = (0..points)
        .map(|k| start_um + (stop_um - start_um) * k as f64 / (points - 1) as f64)
        .collect();
    let delta_l: Vec<f64> = delta_l_um.iter().map(|d| d * 1e-6).collect();
    let scan = |component| {
        scan_with_jsa(&geom, &disp, &pump, &jsa, &delta_l, component)
            .map(|s| s.p_vv())
            .map_err(|e| e.to_string())
    };
    let (d1, d2) = dip_positions(&geom, &disp);
    Ok(ScanCurve {
        total: scan(Component::Total)?,
        psi1: scan(Component::Psi1)?,
        psi2: scan(Component::Psi2)?,
        delta_l_um,
        dips_um: vec![d1 * 1e6, d2 * 1e6],
        compensation_um: delay_compensation(&geom, &disp) * 1e6,
    })
}

/// Scan range covering both dips with a margin of three dip half-widths.
pub fn auto_range_um(setup: &Setup) -> Result<(f64, f64), String> {
    let (geom, disp, _) = setup.physics()?;
    let (d1, d2) = dip_positions(&geom, &disp);
    let margin = 3.0 * 0.5 * disp.delay_factor().abs() * geom.l_pdc;
    if margin == 0.0 {
        return Err("equal indices: no dips to frame".into());
    }
    Ok(((d1.min(d2) - margin) * 1e6, (d1.max(d2) + margin) * 1e6))
}

/// Excess length that aligns the H and V parts of each photon.
pub fn compensation_um(setup: &Setup) -> Result<f64, String> {
    let (geom, disp, _) = setup.physics()?;
    Ok(delay_compensation(&geom, &disp) * 1e6)
}

/// `K(φ1)` on `points` angles in `[0, π/2]`: the closed form at the
/// compensated delay, then the value at `offset_um` away from it.
/// Returned flat as `[φ..., K_closed..., K_offset...]`.
pub fn schmidt_curve(setup: &Setup, offset_um: f64, points: usize, nodes: usize) -> Result<Vec<f64>, String> {
    if !(2..=MAX_POINTS).contains(&points) {
        return Err(format!("points must be between 2 and {MAX_POINTS}"));
    }
    if !(8..=MAX_NODES).contains(&nodes) {
        return Err(format!("nodes must be between 8 and {MAX_NODES}"));
    }
    let (geom, disp, pump) = setup.physics()?;
    let grid = build_grid(
        pump.degenerate_frequency(),
        3.0 * sinc_lobe_width(&disp, geom.l_pdc),
        nodes,
    )
    .map_err(|e| e.to_string())?;
    let jsa = build_jsa(&grid, &grid, &pump, &disp, geom.l_pdc).map_err(|e| e.to_string())?;
    let shifted = geom.with_delta_l(delay_compensation(&geom, &disp) + offset_um * 1e-6);

    let phis: Vec<f64> = (0..points)
        .map(|k| std::f64::consts::FRAC_PI_2 * k as f64 / (points - 1) as f64)
        .collect();
    let mut out = phis.clone();
    out.extend(phis.iter().map(|&p| schmidt_number_spatial(p)));
    out.extend(phis.iter().map(|&p| schmidt_number_general(p, &shifted, &disp, &jsa)));
    Ok(out)
}

/// Joint spectral amplitude modulus and Schmidt decomposition.
#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct SpectrumView {
    nodes: usize,
    modulus: Vec<f64>,
    coefficients: Vec<f64>,
    schmidt_number: f64,
    half_span_rad_s: f64,
}

#[wasm_bindgen]
impl SpectrumView {
    #[wasm_bindgen(getter)]
    pub fn nodes(&self) -> usize {
        self.nodes
    }

    /// Row-major `|F|` (rows: signal, columns: idler), scaled to a maximum of 1.
    #[wasm_bindgen(getter)]
    pub fn modulus(&self) -> Vec<f64> {
        self.modulus.clone()
    }

    /// Leading Schmidt coefficients.
    #[wasm_bindgen(getter)]
    pub fn coefficients(&self) -> Vec<f64> {
        self.coefficients.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn schmidt_number(&self) -> f64 {
        self.schmidt_number
    }

    #[wasm_bindgen(getter)]
    pub fn half_span_rad_s(&self) -> f64 {
        self.half_span_rad_s
    }
}

/// Amplitude on `nodes × nodes` cells spanning `lobes` sinc lobes either side
/// of degeneracy. A zero `bandwidth_lobes` selects the monochromatic pump,
/// otherwise the Gaussian pump width is given in sinc lobes.
pub fn spectrum(setup: &Setup, bandwidth_lobes: f64, lobes: f64, nodes: usize) -> Result<SpectrumView, String> {
    if !(8..=256).contains(&nodes) {
        return Err("nodes must be between 8 and 256".into());
    }
    if !(lobes > 0.0 && lobes.is_finite()) || !(bandwidth_lobes >= 0.0 && bandwidth_lobes.is_finite()) {
        return Err("span and bandwidth must be finite, span positive".into());
    }
    let (geom, disp, mono) = setup.physics()?;
    let lobe = sinc_lobe_width(&disp, geom.l_pdc);
    let pump = if bandwidth_lobes == 0.0 {
        mono
    } else {
        PumpSpec::gaussian(mono.omega_p(), bandwidth_lobes * lobe).map_err(|e| e.to_string())?
    };
    let half_span = lobes * lobe;
    let grid = build_grid(pump.degenerate_frequency(), half_span, nodes).map_err(|e| e.to_string())?;
    let jsa = build_jsa(&grid, &grid, &pump, &disp, geom.l_pdc).map_err(|e| e.to_string())?;
    let values = jsa.values();
    let peak = values.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let modulus = (0..nodes)
        .flat_map(|a| (0..nodes).map(move |b| (a, b)))
        .map(|(a, b)| values[(a, b)].norm() / peak)
        .collect();
    let schmidt = schmidt_decompose(&jsa).map_err(|e| e.to_string())?;
    Ok(SpectrumView {
        nodes,
        modulus,
        coefficients: schmidt.coefficients().iter().take(32).copied().collect(),
        schmidt_number: schmidt.schmidt_number(),
        half_span_rad_s: half_span,
    })
}

#[wasm_bindgen(js_name = scan)]
pub fn scan_js(setup: &Setup, start_um: f64, stop_um: f64, points: usize, nodes: usize) -> Result<ScanCurve, JsError> {
    scan_curve(setup, start_um, stop_um, points, nodes).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = autoRange)]
pub fn auto_range_js(setup: &Setup) -> Result<Vec<f64>, JsError> {
    auto_range_um(setup)
        .map(|(a, b)| vec![a, b])
        .map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = compensationUm)]
pub fn compensation_js(setup: &Setup) -> Result<f64, JsError> {
    compensation_um(setup).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = schmidtCurve)]
pub fn schmidt_curve_js(setup: &Setup, offset_um: f64, points: usize, nodes: usize) -> Result<Vec<f64>, JsError> {
    schmidt_curve(setup, offset_um, points, nodes).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = spectrum)]
pub fn spectrum_js(setup: &Setup, bandwidth_lobes: f64, lobes: f64, nodes: usize) -> Result<SpectrumView, JsError> {
    spectrum(setup, bandwidth_lobes, lobes, nodes).map_err(|e| JsError::new(&e))
}
