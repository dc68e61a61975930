#![allow(dead_code)]

use hom_core::circuit::{compose_before_bs, init_state, propagate, CircuitGeometry, M1H, M1V, M2H, M2V};
use hom_core::oracle::before_bs_amplitudes;
use nalgebra::DMatrix;
use num_complex::Complex64;
use hom_core::spectral::{
    build_grid, build_jsa, sinc_lobe_width, DispersionModel, FrequencyGrid, JointSpectralAmplitude,
    PumpSpec,
};
use std::f64::consts::FRAC_PI_2;

pub fn default_geometry() -> CircuitGeometry {
    CircuitGeometry {
        l_pdc: 2.07e-2,
        x: 3810e-6,
        y: 5810e-6,
        l: 10_000e-6,
        delta_l: 0.0,
        l_pc1: 7620e-6,
        phi1: 0.0,
        phi2: FRAC_PI_2,
    }
}

/// Grid centred on degeneracy spanning `lobes` sinc lobes on each side.
pub fn grid(pump: &PumpSpec, disp: &DispersionModel, l_pdc: f64, n: usize, lobes: f64) -> FrequencyGrid {
    build_grid(
        pump.degenerate_frequency(),
        lobes * sinc_lobe_width(disp, l_pdc),
        n,
    )
    .unwrap()
}

pub fn monochromatic_jsa(n: usize, geom: &CircuitGeometry) -> JointSpectralAmplitude {
    let pump = PumpSpec::default();
    let disp = DispersionModel::default();
    let g = grid(&pump, &disp, geom.l_pdc, n, 3.0);
    build_jsa(&g, &g, &pump, &disp, geom.l_pdc).unwrap()
}

/// Broadband pump whose bandwidth is comparable to the sinc lobe, so the
/// amplitude fills the whole grid.
pub fn broadband_jsa(n: usize, geom: &CircuitGeometry) -> (PumpSpec, JointSpectralAmplitude) {
    let disp = DispersionModel::default();
    let lobe = sinc_lobe_width(&disp, geom.l_pdc);
    let pump = PumpSpec::gaussian(PumpSpec::default().omega_p(), 0.5 * lobe).unwrap();
    let g = grid(&pump, &disp, geom.l_pdc, n, 3.0);
    (pump, build_jsa(&g, &g, &pump, &disp, geom.l_pdc).unwrap())
}

fn max_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest deviation between engine and oracle, relative to `max |F|`.
pub fn worst_deviation(jsa: &JointSpectralAmplitude, phi1: f64, delta_l: f64) -> f64 {
    let disp = DispersionModel::default();
    let geom = default_geometry().with_phi1(phi1).with_delta_l(delta_l);
    let out = propagate(&init_state(jsa), &compose_before_bs(&geom, &disp).unwrap()).unwrap();
    let oracle = before_bs_amplitudes(jsa, &geom, &disp);
    let scale = jsa.values().iter().map(|z| z.norm()).fold(0.0, f64::max);

    let pairs = [
        ((M2V, M1V), &oracle.psi1[0]),
        ((M1V, M2V), &oracle.psi1[1]),
        ((M1V, M1V), &oracle.psi2[0]),
        ((M2V, M2V), &oracle.psi2[1]),
    ];
    let mut worst: f64 = 0.0;
    for ((m, n), expected) in pairs {
        worst = worst.max(max_diff(&out.block_or_zero(m, n), expected) / scale);
    }
    // With the second converter at π/2 nothing is left in H.
    for m in [M1H, M2H] {
        for n in 0..4 {
            for block in [out.block_or_zero(m, n), out.block_or_zero(n, m)] {
                worst = worst.max(block.iter().map(|z| z.norm()).fold(0.0, f64::max) / scale);
            }
        }
    }
    worst
}

