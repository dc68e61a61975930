//! Closed-form results for the vertically polarized pair before the final
//! beam splitter, with the second converter at `φ2 = π/2`.
//!
//! These are written independently of the matrix engine in
//! [`crate::circuit`] and serve as its reference.

use std::f64::consts::PI;

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;

use crate::circuit::CircuitGeometry;
use crate::phase::unit_phasor;
use crate::spectral::{DispersionModel, JointSpectralAmplitude, PumpSpec};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `χ(a, b) = exp[i((l + Δl + y) a / v_V + (l + y) b / v_H)]`.
fn chi(a: f64, b: f64, geom: &CircuitGeometry, disp: &DispersionModel) -> Complex64 {
    let upper = geom.l + geom.y;
    let lower = geom.l + geom.delta_l + geom.y;
    unit_phasor(lower / disp.v_v() * a + upper / disp.v_h() * b)
}

/// Phase picked up between the PDC facet and the first converter.
fn entry_phase(omega_s: f64, omega_i: f64, geom: &CircuitGeometry, disp: &DispersionModel) -> Complex64 {
    unit_phasor((omega_s / disp.v_h() + omega_i / disp.v_v()) * geom.x)
}

/// Cross-channel part `ψ1` at one frequency pair, given the PDC amplitude
/// `f = F(ω_s, ω_i)`. Returns the `(2V, 1V)` and `(1V, 2V)` amplitudes.
pub fn psi1_amplitude(
    f: Complex64,
    omega_s: f64,
    omega_i: f64,
    geom: &CircuitGeometry,
    disp: &DispersionModel,
) -> (Complex64, Complex64) {
    let (s, c) = geom.phi1.sin_cos();
    let common = I * f * entry_phase(omega_s, omega_i, geom, disp);
    (
        common * chi(omega_s, omega_i, geom, disp) * (s * s),
        -common * chi(omega_i, omega_s, geom, disp) * (c * c),
    )
}

/// Same-channel part `ψ2` at one frequency pair. Returns the `(1V, 1V)` and
/// `(2V, 2V)` amplitudes.
pub fn psi2_amplitude(
    f: Complex64,
    omega_s: f64,
    omega_i: f64,
    geom: &CircuitGeometry,
    disp: &DispersionModel,
) -> (Complex64, Complex64) {
    let (s, c) = geom.phi1.sin_cos();
    let common = -f * entry_phase(omega_s, omega_i, geom, disp) * (s * c);
    let sum = omega_s + omega_i;
    let upper = geom.l + geom.y;
    let phi_1 = unit_phasor(upper / disp.v_h() * sum);
    let phi_2 = unit_phasor(upper / disp.v_v() * sum + sum * geom.delta_l / disp.v_v());
    (common * phi_1, common * phi_2)
}

/// `ψ1` and `ψ2` tabulated on the grids of a joint spectral amplitude.
#[derive(Debug, Clone)]
pub struct BeforeBsAmplitudes {
    /// Blocks `(2V, 1V)` and `(1V, 2V)`.
    pub psi1: [DMatrix<Complex64>; 2],
    /// Blocks `(1V, 1V)` and `(2V, 2V)`.
    pub psi2: [DMatrix<Complex64>; 2],
}

pub fn before_bs_amplitudes(
    jsa: &JointSpectralAmplitude,
    geom: &CircuitGeometry,
    disp: &DispersionModel,
) -> BeforeBsAmplitudes {
    let ws = jsa.grid_s().nodes();
    let wi = jsa.grid_i().nodes();
    let (ns, ni) = (ws.len(), wi.len());
    let mut psi1 = [DMatrix::zeros(ns, ni), DMatrix::zeros(ns, ni)];
    let mut psi2 = [DMatrix::zeros(ns, ni), DMatrix::zeros(ns, ni)];
    for a in 0..ns {
        for b in 0..ni {
            let f = jsa.values()[(a, b)];
            let (p, q) = psi1_amplitude(f, ws[a], wi[b], geom, disp);
            psi1[0][(a, b)] = p;
            psi1[1][(a, b)] = q;
            let (p, q) = psi2_amplitude(f, ws[a], wi[b], geom, disp);
            psi2[0][(a, b)] = p;
            psi2[1][(a, b)] = q;
        }
    }
    BeforeBsAmplitudes { psi1, psi2 }
}

/// Which photon's frequency carries the off-diagonal phase of `ρ_r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseCarrier {
    Signal,
    Idler,
}

/// Channel-basis density matrix of one photon; entry `(0, 0)` belongs to the
/// channel the photon occupies for `φ1 = π/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedDensityMatrix(pub Matrix2<Complex64>);

impl ReducedDensityMatrix {
    pub fn matrix(&self) -> &Matrix2<Complex64> {
        &self.0
    }

    pub fn trace(&self) -> f64 {
        (self.0[(0, 0)] + self.0[(1, 1)]).re
    }

    pub fn off_diagonal(&self) -> Complex64 {
        self.0[(0, 1)]
    }

    /// `Tr(ρ²)` for a Hermitian 2x2 matrix.
    pub fn purity(&self) -> f64 {
        let m = &self.0;
        m[(0, 0)].re.powi(2) + m[(1, 1)].re.powi(2) + 2.0 * m[(0, 1)].norm_sqr()
    }

    pub fn eigenvalues(&self) -> (f64, f64) {
        let m = &self.0;
        let mean = 0.5 * (m[(0, 0)].re + m[(1, 1)].re);
        let half_diff = 0.5 * (m[(0, 0)].re - m[(1, 1)].re);
        let r = (half_diff * half_diff + m[(0, 1)].norm_sqr()).sqrt();
        (mean - r, mean + r)
    }

    pub fn hermiticity_defect(&self) -> f64 {
        (self.0 - self.0.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// `ρ_r = ∫∫ |F|² [[sin²φ1, A], [A*, cos²φ1]]` with
/// `A = (i/4) sin 4φ1 · exp[iω_s(Δl/v_V − (l+y)(1/v_H − 1/v_V))]`.
pub fn reduced_density_matrix(
    phi1: f64,
    geom: &CircuitGeometry,
    disp: &DispersionModel,
    jsa: &JointSpectralAmplitude,
) -> ReducedDensityMatrix {
    reduced_density_matrix_with(phi1, geom, disp, jsa, PhaseCarrier::Signal)
}

pub fn reduced_density_matrix_with(
    phi1: f64,
    geom: &CircuitGeometry,
    disp: &DispersionModel,
    jsa: &JointSpectralAmplitude,
    carrier: PhaseCarrier,
) -> ReducedDensityMatrix {
    let delay = geom.delta_l / disp.v_v() - (geom.l + geom.y) * disp.inverse_velocity_mismatch();
    let amp = I * (0.25 * (4.0 * phi1).sin());
    let ws = jsa.grid_s();
    let wi = jsa.grid_i();

    let mut weight = 0.0;
    let mut phase_avg = Complex64::new(0.0, 0.0);
    for (b, (&omega_i, &w_b)) in wi.nodes().iter().zip(wi.weights()).enumerate() {
        for (a, (&omega_s, &w_a)) in ws.nodes().iter().zip(ws.weights()).enumerate() {
            let p = w_a * w_b * jsa.values()[(a, b)].norm_sqr();
            if p == 0.0 {
                continue;
            }
            let omega = match carrier {
                PhaseCarrier::Signal => omega_s,
                PhaseCarrier::Idler => omega_i,
            };
            weight += p;
            phase_avg += unit_phasor(omega * delay) * p;
        }
    }
    let (s, c) = phi1.sin_cos();
    let off = amp * phase_avg;
    ReducedDensityMatrix(Matrix2::new(
        Complex64::new(s * s * weight, 0.0),
        off,
        off.conj(),
        Complex64::new(c * c * weight, 0.0),
    ))
}

/// `K = 1 / (cos⁴φ1 + sin⁴φ1 + sin²(4φ1)/8)`, valid at the compensated delay.
pub fn schmidt_number_spatial(phi1: f64) -> f64 {
    let (s, c) = phi1.sin_cos();
    let s4 = (4.0 * phi1).sin();
    1.0 / (c.powi(4) + s.powi(4) + 0.125 * s4 * s4)
}

/// `K = 1 / Tr(ρ_r²)` for an arbitrary delay.
pub fn schmidt_number_general(
    phi1: f64,
    geom: &CircuitGeometry,
    disp: &DispersionModel,
    jsa: &JointSpectralAmplitude,
) -> f64 {
    1.0 / reduced_density_matrix(phi1, geom, disp, jsa).purity()
}

/// Period in `Δl` of the double-frequency fringes, `2π v_V / ω_p`.
pub fn fringe_period(disp: &DispersionModel, pump: &PumpSpec) -> f64 {
    2.0 * PI * disp.v_v() / pump.omega_p()
}

/// Excess lengths at which the two HOM-type dips occur:
/// `(v_V/v_H − 1)(l + y ± (x + L_PDC/2))`.
pub fn dip_positions(geom: &CircuitGeometry, disp: &DispersionModel) -> (f64, f64) {
    let f = disp.v_v() / disp.v_h() - 1.0;
    let arm = geom.l + geom.y;
    let source = geom.x + 0.5 * geom.l_pdc;
    (f * (arm + source), f * (arm - source))
}

/// Excess length `(v_V/v_H − 1)(l + y)` that aligns the H and V parts of
/// each photon at the beam splitter.
pub fn delay_compensation(geom: &CircuitGeometry, disp: &DispersionModel) -> f64 {
    (disp.v_v() / disp.v_h() - 1.0) * (geom.l + geom.y)
}
