//! Frequency grids, the PDC joint spectral amplitude and its Schmidt spectrum.
//!
//! All angular frequencies are in rad/s and lengths in metres. Signal and
//! idler are detuned from degeneracy by `nu = omega - omega_p / 2`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::phase::unit_phasor;
use crate::{Error, Result, SPEED_OF_LIGHT};

/// Uniform frequency grid with trapezoid quadrature weights.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGrid {
    center: f64,
    half_span: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl FrequencyGrid {
    pub const QUADRATURE: &'static str = "trapezoid";

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn half_span(&self) -> f64 {
        self.half_span
    }

    pub fn n_points(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Node spacing.
    pub fn step(&self) -> f64 {
        2.0 * self.half_span / (self.nodes.len() - 1) as f64
    }

    /// Index of the node mirrored through the grid center.
    #[inline]
    pub fn mirror(&self, k: usize) -> usize {
        self.nodes.len() - 1 - k
    }
}

/// Builds a uniform grid of `n_points` nodes spanning `center ± half_span`.
pub fn build_grid(center: f64, half_span: f64, n_points: usize) -> Result<FrequencyGrid> {
    if n_points < 2 {
        return Err(Error::invalid(format!(
            "grid needs at least 2 points, got {n_points}"
        )));
    }
    if !(half_span > 0.0 && half_span.is_finite()) {
        return Err(Error::invalid(format!(
            "grid half span must be positive, got {half_span}"
        )));
    }
    if !center.is_finite() {
        return Err(Error::invalid("grid center must be finite"));
    }
    let last = (n_points - 1) as f64;
    let step = 2.0 * half_span / last;
    // Offsets are computed from both ends so that the grid is exactly
    // symmetric about its center.
    let nodes = (0..n_points)
        .map(|k| {
            let offset = (2.0 * k as f64 - last) / last * half_span;
            center + offset
        })
        .collect();
    let mut weights = vec![step; n_points];
    weights[0] = 0.5 * step;
    weights[n_points - 1] = 0.5 * step;
    Ok(FrequencyGrid {
        center,
        half_span,
        nodes,
        weights,
    })
}

/// Constant refractive indices for H and V polarized light at `omega_p / 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionModel {
    n_h: f64,
    n_v: f64,
}

impl DispersionModel {
    pub const DEFAULT_N_H: f64 = 2.15;
    pub const DEFAULT_N_V: f64 = 2.21;

    pub fn new(n_h: f64, n_v: f64) -> Result<Self> {
        for (name, n) in [("n_H", n_h), ("n_V", n_v)] {
            if !(n > 1.0 && n.is_finite()) {
                return Err(Error::invalid(format!(
                    "refractive index must exceed 1 ({name} = {n})"
                )));
            }
        }
        Ok(Self { n_h, n_v })
    }

    pub fn n_h(&self) -> f64 {
        self.n_h
    }

    pub fn n_v(&self) -> f64 {
        self.n_v
    }

    pub fn v_h(&self) -> f64 {
        SPEED_OF_LIGHT / self.n_h
    }

    pub fn v_v(&self) -> f64 {
        SPEED_OF_LIGHT / self.n_v
    }

    /// `1/v_H - 1/v_V` in s/m.
    pub fn inverse_velocity_mismatch(&self) -> f64 {
        (self.n_h - self.n_v) / SPEED_OF_LIGHT
    }

    /// `v_V / v_H - 1`, the factor converting path length into delay length.
    pub fn delay_factor(&self) -> f64 {
        self.n_h / self.n_v - 1.0
    }
}

impl Default for DispersionModel {
    fn default() -> Self {
        Self {
            n_h: Self::DEFAULT_N_H,
            n_v: Self::DEFAULT_N_V,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PumpSpec {
    omega_p: f64,
    bandwidth: f64,
    monochromatic: bool,
}

impl PumpSpec {
    pub const DEFAULT_WAVELENGTH: f64 = 775e-9;

    /// Narrowband pump: the pair is confined to `omega_s + omega_i = omega_p`.
    pub fn monochromatic(omega_p: f64) -> Result<Self> {
        Self::check_omega(omega_p)?;
        Ok(Self {
            omega_p,
            bandwidth: 0.0,
            monochromatic: true,
        })
    }

    /// Gaussian pump spectral amplitude with standard deviation `bandwidth`.
    pub fn gaussian(omega_p: f64, bandwidth: f64) -> Result<Self> {
        Self::check_omega(omega_p)?;
        if !(bandwidth > 0.0 && bandwidth.is_finite()) {
            return Err(Error::invalid(format!(
                "pump bandwidth must be positive for a Gaussian pump, got {bandwidth}"
            )));
        }
        Ok(Self {
            omega_p,
            bandwidth,
            monochromatic: false,
        })
    }

    pub fn from_wavelength(wavelength: f64) -> Result<Self> {
        if !(wavelength > 0.0) {
            return Err(Error::invalid("pump wavelength must be positive"));
        }
        Self::monochromatic(2.0 * PI * SPEED_OF_LIGHT / wavelength)
    }

    fn check_omega(omega_p: f64) -> Result<()> {
        if !(omega_p > 0.0 && omega_p.is_finite()) {
            return Err(Error::invalid(format!(
                "pump frequency must be positive, got {omega_p}"
            )));
        }
        Ok(())
    }

    pub fn omega_p(&self) -> f64 {
        self.omega_p
    }

    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }

    pub fn is_monochromatic(&self) -> bool {
        self.monochromatic
    }

    pub fn degenerate_frequency(&self) -> f64 {
        0.5 * self.omega_p
    }
}

impl Default for PumpSpec {
    fn default() -> Self {
        Self::from_wavelength(Self::DEFAULT_WAVELENGTH).expect("default pump is valid")
    }
}

/// Linearized, quasi-phase-matched mismatch `Δk(ω_s, ω_i)` in rad/m.
///
/// Poling cancels the constant mismatch at degeneracy, so only the detunings
/// enter, each weighted by the inverse phase velocity of its polarization
/// (signal H, idler V).
pub fn phase_mismatch(
    omega_s: f64,
    omega_i: f64,
    disp: &DispersionModel,
    pump: &PumpSpec,
) -> f64 {
    let half = pump.degenerate_frequency();
    (omega_s - half) / disp.v_h() + (omega_i - half) / disp.v_v()
}

/// Detuning of the first zero of the phase-matching sinc along the
/// anti-diagonal: `2π / (L_PDC |1/v_H - 1/v_V|)`. Infinite without
/// birefringence.
pub fn sinc_lobe_width(disp: &DispersionModel, l_pdc: f64) -> f64 {
    2.0 * PI / (l_pdc * disp.inverse_velocity_mismatch().abs())
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// Normalized two-photon amplitude on a pair of grids.
#[derive(Debug, Clone)]
pub struct JointSpectralAmplitude {
    grid_s: FrequencyGrid,
    grid_i: FrequencyGrid,
    values: DMatrix<Complex64>,
    warnings: Vec<String>,
}

impl JointSpectralAmplitude {
    /// Wraps `values` (rows: signal, columns: idler) and rescales them to unit
    /// weighted L2 norm.
    pub fn from_values(
        grid_s: FrequencyGrid,
        grid_i: FrequencyGrid,
        mut values: DMatrix<Complex64>,
    ) -> Result<Self> {
        check_shape(&grid_s, &grid_i, &values)?;
        if values.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidState("non-finite amplitude".into()));
        }
        let norm = weighted_norm_sqr(&grid_s, &grid_i, &values).sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::InvalidState(format!(
                "amplitude norm must be positive and finite, got {norm}"
            )));
        }
        values.unscale_mut(norm);
        Ok(Self {
            grid_s,
            grid_i,
            values,
            warnings: Vec::new(),
        })
    }

    /// Wraps `values` without validation or normalization.
    pub fn from_raw_parts(
        grid_s: FrequencyGrid,
        grid_i: FrequencyGrid,
        values: DMatrix<Complex64>,
    ) -> Result<Self> {
        check_shape(&grid_s, &grid_i, &values)?;
        Ok(Self {
            grid_s,
            grid_i,
            values,
            warnings: Vec::new(),
        })
    }

    pub fn grid_s(&self) -> &FrequencyGrid {
        &self.grid_s
    }

    pub fn grid_i(&self) -> &FrequencyGrid {
        &self.grid_i
    }

    pub fn values(&self) -> &DMatrix<Complex64> {
        &self.values
    }

    /// Non-fatal diagnostics recorded during construction.
    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn norm_sqr(&self) -> f64 {
        weighted_norm_sqr(&self.grid_s, &self.grid_i, &self.values)
    }

    /// Same amplitude with signal and idler axes exchanged.
    pub fn transposed(&self) -> Self {
        Self {
            grid_s: self.grid_i.clone(),
            grid_i: self.grid_s.clone(),
            values: self.values.transpose(),
            warnings: self.warnings.clone(),
        }
    }

    /// Same amplitude multiplied by `exp(i * theta)`.
    pub fn with_global_phase(&self, theta: f64) -> Self {
        let mut out = self.clone();
        out.values *= unit_phasor(theta);
        out
    }
}

fn check_shape(
    grid_s: &FrequencyGrid,
    grid_i: &FrequencyGrid,
    values: &DMatrix<Complex64>,
) -> Result<()> {
    if values.nrows() != grid_s.n_points() || values.ncols() != grid_i.n_points() {
        return Err(Error::invalid(format!(
            "amplitude matrix is {}x{} but grids have {} and {} nodes",
            values.nrows(),
            values.ncols(),
            grid_s.n_points(),
            grid_i.n_points()
        )));
    }
    Ok(())
}

fn weighted_norm_sqr(
    grid_s: &FrequencyGrid,
    grid_i: &FrequencyGrid,
    values: &DMatrix<Complex64>,
) -> f64 {
    let mut acc = 0.0;
    for (b, wb) in grid_i.weights().iter().enumerate() {
        for (a, wa) in grid_s.weights().iter().enumerate() {
            acc += wa * wb * values[(a, b)].norm_sqr();
        }
    }
    acc
}

/// Builds the PDC amplitude
/// `exp(-(ω_s+ω_i-ω_p)²/4σ²) · sinc(Δk L/2) · exp(iΔk L/2)` and normalizes it.
///
/// With a monochromatic pump the Gaussian is replaced by a mask keeping one
/// cell per row on the anti-diagonal `ω_s + ω_i = ω_p`.
pub fn build_jsa(
    grid_s: &FrequencyGrid,
    grid_i: &FrequencyGrid,
    pump: &PumpSpec,
    disp: &DispersionModel,
    l_pdc: f64,
) -> Result<JointSpectralAmplitude> {
    if !(l_pdc > 0.0 && l_pdc.is_finite()) {
        return Err(Error::invalid(format!(
            "PDC length must be positive, got {l_pdc}"
        )));
    }
    let omega_p = pump.omega_p();
    let half_l = 0.5 * l_pdc;
    let amplitude = |ws: f64, wi: f64| {
        let dk_half = phase_mismatch(ws, wi, disp, pump) * half_l;
        unit_phasor(dk_half) * sinc(dk_half)
    };

    let (ns, ni) = (grid_s.n_points(), grid_i.n_points());
    let mut values = DMatrix::<Complex64>::zeros(ns, ni);
    let mut warnings = Vec::new();

    if pump.is_monochromatic() {
        let cell = grid_i.step();
        for (a, &ws) in grid_s.nodes().iter().enumerate() {
            let target = omega_p - ws;
            let b = nearest_node(grid_i, target);
            if (grid_i.nodes()[b] - target).abs() <= 0.5 * cell * (1.0 + 1e-9) {
                values[(a, b)] = amplitude(ws, grid_i.nodes()[b]);
            }
        }
    } else {
        let inv_four_var = 1.0 / (4.0 * pump.bandwidth() * pump.bandwidth());
        for (b, &wi) in grid_i.nodes().iter().enumerate() {
            for (a, &ws) in grid_s.nodes().iter().enumerate() {
                let detune = ws + wi - omega_p;
                values[(a, b)] = amplitude(ws, wi) * (-detune * detune * inv_four_var).exp();
            }
        }
    }

    let lobe = sinc_lobe_width(disp, l_pdc);
    let covered = grid_s
        .half_span()
        .min(grid_i.half_span())
        .min((grid_s.center() - grid_s.nodes()[0]).abs());
    if lobe.is_finite() && covered < lobe {
        warnings.push(format!(
            "grid half span {covered:.4e} rad/s does not contain the main sinc lobe ({lobe:.4e} rad/s)"
        ));
    }

    let mut jsa = JointSpectralAmplitude::from_values(grid_s.clone(), grid_i.clone(), values)?;
    jsa.warnings = warnings;
    Ok(jsa)
}

fn nearest_node(grid: &FrequencyGrid, omega: f64) -> usize {
    let k = ((omega - grid.nodes()[0]) / grid.step()).round();
    k.clamp(0.0, (grid.n_points() - 1) as f64) as usize
}

/// Schmidt coefficients of a two-photon amplitude.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtSpectrum {
    coefficients: Vec<f64>,
    schmidt_number: f64,
}

impl SchmidtSpectrum {
    /// Non-increasing, squares summing to one.
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn schmidt_number(&self) -> f64 {
        self.schmidt_number
    }
}

/// Singular value decomposition of `sqrt(w_s) F sqrt(w_i)`.
pub fn schmidt_decompose(jsa: &JointSpectralAmplitude) -> Result<SchmidtSpectrum> {
    let values = jsa.values();
    if values.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::InvalidState(
            "amplitude contains non-finite entries".into(),
        ));
    }
    let ws = jsa.grid_s().weights();
    let wi = jsa.grid_i().weights();
    let weighted = DMatrix::from_fn(values.nrows(), values.ncols(), |a, b| {
        values[(a, b)] * (ws[a] * wi[b]).sqrt()
    });
    let mut singular: Vec<f64> = weighted.singular_values().iter().copied().collect();
    singular.sort_by(|x, y| y.total_cmp(x));

    let total: f64 = singular.iter().map(|s| s * s).sum();
    if !(total > 0.0) {
        return Err(Error::InvalidState("amplitude is identically zero".into()));
    }
    let scale = total.sqrt();
    let coefficients: Vec<f64> = singular.iter().map(|s| s / scale).collect();
    let purity: f64 = coefficients.iter().map(|c| c.powi(4)).sum();
    Ok(SchmidtSpectrum {
        coefficients,
        schmidt_number: 1.0 / purity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn default_grid(n: usize) -> FrequencyGrid {
        let pump = PumpSpec::default();
        let disp = DispersionModel::default();
        let span = 3.0 * sinc_lobe_width(&disp, 0.0207);
        build_grid(pump.degenerate_frequency(), span, n).unwrap()
    }

    #[test]
    fn grid_endpoints_and_middle() {
        let g = build_grid(10.0, 2.0, 2).unwrap();
        assert_eq!(g.nodes(), &[8.0, 12.0]);
        let g = build_grid(10.0, 2.0, 3).unwrap();
        assert_eq!(g.nodes()[1], 10.0);
        assert!(build_grid(10.0, 2.0, 1).is_err());
        assert!(build_grid(10.0, 0.0, 5).is_err());
        assert!(build_grid(10.0, -1.0, 5).is_err());
    }

    #[test]
    fn grid_weights_and_symmetry() {
        let center = 1.2e15;
        let g = build_grid(center, 4.7e12, 512).unwrap();
        let total: f64 = g.weights().iter().sum();
        assert_relative_eq!(total, 2.0 * 4.7e12, max_relative = 1e-12);
        for k in 0..g.n_points() {
            let a = g.nodes()[k] - center;
            let b = center - g.nodes()[g.mirror(k)];
            assert_relative_eq!(a, b, max_relative = 1e-12, epsilon = 1e-3);
        }
        assert!(g.nodes().windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn dispersion_rejects_sub_unity_index() {
        let err = DispersionModel::new(2.1, 0.5).unwrap_err();
        assert!(err.to_string().contains("refractive index must exceed 1"));
        assert!(DispersionModel::new(1.0, 2.0).is_err());
    }

    #[test]
    fn mismatch_vanishes_at_degeneracy() {
        let pump = PumpSpec::default();
        let disp = DispersionModel::default();
        let half = pump.degenerate_frequency();
        assert_eq!(phase_mismatch(half, half, &disp, &pump), 0.0);

        let nu = 3.0e11;
        let expected = nu * (1.0 / disp.v_h() - 1.0 / disp.v_v());
        let got = phase_mismatch(half + nu, half - nu, &disp, &pump);
        assert_relative_eq!(got, expected, max_relative = 1e-6);

        let iso = DispersionModel::new(2.2, 2.2).unwrap();
        assert!(phase_mismatch(half + nu, half - nu, &iso, &pump).abs() < 1e-6);
    }

    #[test]
    fn jsa_is_normalized_anti_diagonal() {
        let g = default_grid(64);
        let pump = PumpSpec::default();
        let disp = DispersionModel::default();
        let jsa = build_jsa(&g, &g, &pump, &disp, 0.0207).unwrap();
        assert!((jsa.norm_sqr() - 1.0).abs() < 1e-10);
        assert!(jsa.warnings().is_empty());
        for a in 0..64 {
            for b in 0..64 {
                if b != g.mirror(a) {
                    assert_eq!(jsa.values()[(a, b)], Complex64::new(0.0, 0.0));
                }
            }
        }
    }

    #[test]
    fn jsa_without_birefringence_is_flat_on_anti_diagonal() {
        let pump = PumpSpec::default();
        let disp = DispersionModel::new(2.2, 2.2).unwrap();
        let g = build_grid(pump.degenerate_frequency(), 1e12, 33).unwrap();
        let jsa = build_jsa(&g, &g, &pump, &disp, 0.02).unwrap();
        let first = jsa.values()[(0, 32)].norm();
        for a in 0..33 {
            assert_relative_eq!(jsa.values()[(a, g.mirror(a))].norm(), first, max_relative = 1e-10);
        }
    }

    #[test]
    fn jsa_first_zero_on_anti_diagonal() {
        let pump = PumpSpec::default();
        let disp = DispersionModel::default();
        let l_pdc = 0.0207;
        let zero = sinc_lobe_width(&disp, l_pdc);
        // 2 * half_span / (n - 1) = zero / 16 puts a node exactly on the zero
        let g = build_grid(pump.degenerate_frequency(), 2.0 * zero, 65).unwrap();
        let jsa = build_jsa(&g, &g, &pump, &disp, l_pdc).unwrap();
        let peak = jsa.values()[(32, 32)].norm();
        let at_zero = jsa.values()[(48, 16)].norm();
        assert!(at_zero < 1e-6 * peak, "{at_zero} vs {peak}");
        assert!(jsa.values()[(47, 17)].norm() > at_zero);
    }

    #[test]
    fn narrow_grid_records_warning() {
        let pump = PumpSpec::default();
        let disp = DispersionModel::default();
        let lobe = sinc_lobe_width(&disp, 0.0207);
        let g = build_grid(pump.degenerate_frequency(), 0.3 * lobe, 16).unwrap();
        let jsa = build_jsa(&g, &g, &pump, &disp, 0.0207).unwrap();
        assert_eq!(jsa.warnings().len(), 1);
    }

    #[test]
    fn gaussian_pump_is_normalized() {
        let pump = PumpSpec::gaussian(PumpSpec::default().omega_p(), 2e11).unwrap();
        let disp = DispersionModel::default();
        let g = default_grid(48);
        let jsa = build_jsa(&g, &g, &pump, &disp, 0.0207).unwrap();
        assert!((jsa.norm_sqr() - 1.0).abs() < 1e-10);
        assert!(PumpSpec::gaussian(1e15, 0.0).is_err());
    }

    #[test]
    fn schmidt_of_product_state_is_one() {
        let g = build_grid(0.0, 3.0, 40).unwrap();
        let f = |x: f64, mu: f64| (-(x - mu).powi(2)).exp();
        let values = DMatrix::from_fn(40, 40, |a, b| {
            Complex64::new(f(g.nodes()[a], 0.3) * f(g.nodes()[b], -0.5), 0.0)
        });
        let jsa = JointSpectralAmplitude::from_values(g.clone(), g, values).unwrap();
        let spectrum = schmidt_decompose(&jsa).unwrap();
        assert!((spectrum.schmidt_number() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn schmidt_of_two_cell_bell_state_is_two() {
        let g = build_grid(0.0, 1.0, 2).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let values = DMatrix::from_row_slice(
            2,
            2,
            &[Complex64::new(h, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(h, 0.0)],
        );
        let jsa = JointSpectralAmplitude::from_values(g.clone(), g, values).unwrap();
        let spectrum = schmidt_decompose(&jsa).unwrap();
        assert_relative_eq!(spectrum.schmidt_number(), 2.0, max_relative = 1e-12);
        let sum: f64 = spectrum.coefficients().iter().map(|c| c * c).sum();
        assert_relative_eq!(sum, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn schmidt_rejects_non_finite() {
        let g = build_grid(0.0, 1.0, 2).unwrap();
        let mut values = DMatrix::from_element(2, 2, Complex64::new(0.5, 0.0));
        values[(0, 1)] = Complex64::new(f64::NAN, 0.0);
        assert!(JointSpectralAmplitude::from_values(g.clone(), g.clone(), values.clone()).is_err());
        let raw = JointSpectralAmplitude::from_raw_parts(g.clone(), g, values).unwrap();
        assert!(matches!(schmidt_decompose(&raw), Err(Error::InvalidState(_))));
    }
}
