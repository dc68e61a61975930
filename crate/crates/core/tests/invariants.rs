//! Property-based checks of unitarity, norm, composition and symmetry.

mod common;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, TAU};

use hom_core::circuit::{
    bs_matrix, compose_before_bs, compose_full, init_state, pbs_matrix, pc_matrix, propagate,
    unitarity_defect, BiphotonState, CircuitGeometry, Channel, TransferOperator,
};
use hom_core::detection::{scan_component, scan_delay, total_probability, Component};
use hom_core::oracle::{delay_compensation, dip_positions, fringe_period};
use hom_core::spectral::{
    build_grid, build_jsa, schmidt_decompose, sinc_lobe_width, DispersionModel,
    JointSpectralAmplitude, PumpSpec,
};
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

fn geometry_strategy() -> impl Strategy<Value = CircuitGeometry> {
    (
        0.005..0.08f64,
        0.0..0.05f64,
        0.0..0.02f64,
        0.001..0.03f64,
        -0.9..2.0f64,
        0.0..0.01f64,
        -TAU..TAU,
        -TAU..TAU,
    )
        .prop_map(|(l_pdc, x, y, l, frac, l_pc1, phi1, phi2)| CircuitGeometry {
            l_pdc,
            x,
            y,
            l,
            delta_l: frac * l,
            l_pc1,
            phi1,
            phi2,
        })
}

fn dispersion_strategy() -> impl Strategy<Value = DispersionModel> {
    (1.3..2.5f64, 1.3..2.5f64).prop_map(|(h, v)| DispersionModel::new(h, v).unwrap())
}

fn small_state(n: usize, pump: &PumpSpec, disp: &DispersionModel, l_pdc: f64) -> BiphotonState {
    let g = common::grid(pump, disp, l_pdc.max(1e-3), n, 3.0);
    init_state(&build_jsa(&g, &g, pump, disp, l_pdc).unwrap())
}

fn block_diff(a: &BiphotonState, b: &BiphotonState) -> f64 {
    let mut worst: f64 = 0.0;
    for m in 0..4 {
        for n in 0..4 {
            let d = a.block_or_zero(m, n) - b.block_or_zero(m, n);
            worst = worst.max(d.iter().map(|z| z.norm()).fold(0.0, f64::max));
        }
    }
    worst
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn elements_are_unitary(phi in -TAU..TAU) {
        for u in [pc_matrix(phi, Channel::One), pc_matrix(phi, Channel::Two), pbs_matrix(), bs_matrix()] {
            prop_assert!(unitarity_defect(&u) < 1e-12);
        }
    }

    #[test]
    fn full_circuit_is_unitary_on_grid(geom in geometry_strategy(), disp in dispersion_strategy()) {
        let pump = PumpSpec::default();
        let g = common::grid(&pump, &disp, geom.l_pdc, 33, 3.0);
        let sampled = compose_full(&geom, &disp).unwrap().sample(&g);
        prop_assert!(sampled.unitarity_defect() < 1e-12);
    }

    #[test]
    fn propagation_preserves_norm(geom in geometry_strategy(), disp in dispersion_strategy(), broadband in any::<bool>()) {
        let mono = PumpSpec::default();
        let pump = if broadband {
            PumpSpec::gaussian(mono.omega_p(), 0.4 * sinc_lobe_width(&disp, geom.l_pdc)).unwrap()
        } else {
            mono
        };
        let state = small_state(24, &pump, &disp, geom.l_pdc);
        let out = propagate(&state, &compose_full(&geom, &disp).unwrap()).unwrap();
        let p = total_probability(&out).unwrap();
        prop_assert!((p - 1.0).abs() < 1e-10, "total probability {}", p);
    }

    #[test]
    fn propagation_composes(a in geometry_strategy(), b in geometry_strategy(), disp in dispersion_strategy()) {
        let pump = PumpSpec::gaussian(PumpSpec::default().omega_p(), 0.4 * sinc_lobe_width(&disp, a.l_pdc)).unwrap();
        let state = small_state(12, &pump, &disp, a.l_pdc);
        let u1 = compose_full(&a, &disp).unwrap();
        let u2 = compose_before_bs(&b, &disp).unwrap();
        let stepwise = propagate(&propagate(&state, &u1).unwrap(), &u2).unwrap();
        let combined = propagate(&state, &u1.clone().then(&u2)).unwrap();
        prop_assert!(block_diff(&stepwise, &combined) < 1e-12);

        // The same with the composed matrices evaluated up front.
        let g = state.grid_s().clone();
        let product: Vec<_> = g.nodes().iter().map(|&w| u2.evaluate(w) * u1.evaluate(w)).collect();
        let mut worst: f64 = 0.0;
        for (k, &w) in g.nodes().iter().enumerate() {
            let d = product[k] - u1.clone().then(&u2).evaluate(w);
            worst = worst.max(d.iter().map(|z| z.norm()).fold(0.0, f64::max));
        }
        prop_assert!(worst < 1e-12);
    }

    #[test]
    fn schmidt_number_ignores_phase_and_exchange(theta in -TAU..TAU, rows in 3usize..9, cols in 3usize..9, seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let n = rows.max(cols);
        let g = build_grid(1.0e15, 1.0e12, n).unwrap();
        let values = DMatrix::from_fn(n, n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let jsa = JointSpectralAmplitude::from_values(g.clone(), g, values).unwrap();
        let k = schmidt_decompose(&jsa).unwrap().schmidt_number();
        let k_phase = schmidt_decompose(&jsa.with_global_phase(theta)).unwrap().schmidt_number();
        let k_swap = schmidt_decompose(&jsa.transposed()).unwrap().schmidt_number();
        prop_assert!((k - k_phase).abs() < 1e-8);
        prop_assert!((k - k_swap).abs() < 1e-8);
    }

    #[test]
    fn build_jsa_is_normalized(l_pdc in 0.005..0.08f64, disp in dispersion_strategy(), width in 0.1..3.0f64, n in 8usize..64) {
        let mono = PumpSpec::default();
        for pump in [mono, PumpSpec::gaussian(mono.omega_p(), width * sinc_lobe_width(&disp, l_pdc)).unwrap()] {
            let g = common::grid(&pump, &disp, l_pdc, n, 3.0);
            let jsa = build_jsa(&g, &g, &pump, &disp, l_pdc).unwrap();
            prop_assert!((jsa.norm_sqr() - 1.0).abs() < 1e-10);
        }
    }
}

/// With a monochromatic pump the amplitude lives on the anti-diagonal and its
/// modulus is unchanged by the reflection `(ω_s, ω_i) → (ω_p − ω_i, ω_p − ω_s)`.
#[test]
fn monochromatic_amplitude_reflection_symmetry() {
    let jsa = common::monochromatic_jsa(64, &common::default_geometry());
    let g = jsa.grid_s();
    let v = jsa.values();
    for a in 0..g.n_points() {
        for b in 0..g.n_points() {
            let reflected = v[(g.mirror(b), g.mirror(a))].norm();
            assert!((v[(a, b)].norm() - reflected).abs() < 1e-12);
        }
    }
}

/// The Gaussian-pump amplitude is a thin ridge across the anti-diagonal, so
/// convergence is shown on a window narrow enough to resolve it.
#[test]
fn schmidt_number_converges_under_refinement() {
    let disp = DispersionModel::default();
    let l_pdc = common::default_geometry().l_pdc;
    let lobe = sinc_lobe_width(&disp, l_pdc);
    let pump = PumpSpec::gaussian(PumpSpec::default().omega_p(), 0.02 * lobe).unwrap();
    let k: Vec<f64> = [64, 128, 256]
        .into_iter()
        .map(|n| {
            let g = common::grid(&pump, &disp, l_pdc, n, 0.1);
            let jsa = build_jsa(&g, &g, &pump, &disp, l_pdc).unwrap();
            schmidt_decompose(&jsa).unwrap().schmidt_number()
        })
        .collect();
    let change = (k[2] - k[1]).abs() / k[2];
    assert!(change < 0.01, "K = {k:?}");
}

#[test]
fn coincidences_converge_under_refinement() {
    let geom = common::default_geometry().with_phi1(FRAC_PI_4);
    let disp = DispersionModel::default();
    let pump = PumpSpec::default();
    let (d1, _) = dip_positions(&geom, &disp);
    let points = [d1, delay_compensation(&geom, &disp), 0.0];
    let coarse = common::grid(&pump, &disp, geom.l_pdc, 256, 3.0);
    let fine = common::grid(&pump, &disp, geom.l_pdc, 512, 3.0);
    let a = scan_delay(&geom, &disp, &pump, &coarse, &points).unwrap();
    let b = scan_delay(&geom, &disp, &pump, &fine, &points).unwrap();
    for (x, y) in a.p_vv().iter().zip(b.p_vv()) {
        assert!((x - y).abs() / y.max(1e-3) < 0.01, "{x} vs {y}");
    }
}

/// Swapping `φ1 ↔ π/2 − φ1` mirrors the scan about the midpoint of the dips.
#[test]
fn converter_angle_mirror_symmetry() {
    let disp = DispersionModel::default();
    let pump = PumpSpec::default();
    let base = common::default_geometry();
    let g = common::grid(&pump, &disp, base.l_pdc, 256, 3.0);
    let (d1, d2) = dip_positions(&base, &disp);
    let mid = 0.5 * (d1 + d2);
    let offsets: Vec<f64> = (-20..=20).map(|k| k as f64 * 0.03 * (d1 - d2).abs()).collect();
    let plus: Vec<f64> = offsets.iter().map(|d| mid + d).collect();
    let minus: Vec<f64> = offsets.iter().rev().map(|d| mid - d).collect();
    for phi1 in [0.0, 0.3, FRAC_PI_4, 1.1] {
        let a = scan_delay(&base.with_phi1(phi1), &disp, &pump, &g, &plus).unwrap();
        let b = scan_delay(&base.with_phi1(FRAC_PI_2 - phi1), &disp, &pump, &g, &minus).unwrap();
        let (pa, mut pb) = (a.p_vv(), b.p_vv());
        pb.reverse();
        for (x, y) in pa.iter().zip(&pb) {
            assert!((x - y).abs() < 1e-8, "phi1 = {phi1}: {x} vs {y}");
        }
    }
}

/// Without birefringence both dips sit at zero excess length and the
/// same-channel fringes are exactly periodic.
#[test]
fn equal_indices_collapse_dips() {
    let disp = DispersionModel::new(2.21, 2.21).unwrap();
    let pump = PumpSpec::default();
    let geom = common::default_geometry();
    assert_eq!(dip_positions(&geom, &disp), (0.0, 0.0));

    let g = build_grid(pump.degenerate_frequency(), 2.0e12, 64).unwrap();
    let jsa_scan = |phi1: f64, values: &[f64], component| {
        scan_component(&geom.with_phi1(phi1), &disp, &pump, &g, values, component).unwrap()
    };
    let dip = jsa_scan(0.0, &[-2e-6, 0.0, 2e-6], Component::Total).p_vv();
    assert!(dip[1] < 1e-12, "p_vv at zero delay = {}", dip[1]);

    let period = fringe_period(&disp, &pump);
    assert!((period - TAU * hom_core::SPEED_OF_LIGHT / (pump.omega_p() * 2.21)).abs() < 1e-20);
    let starts = [0.0, 0.13e-6, 0.31e-6];
    let shifted: Vec<f64> = starts.iter().map(|s| s + 7.0 * period).collect();
    let a = jsa_scan(FRAC_PI_4, &starts, Component::Psi2).p_vv();
    let b = jsa_scan(FRAC_PI_4, &shifted, Component::Psi2).p_vv();
    for (x, y) in a.iter().zip(&b) {
        assert!((x - y).abs() < 1e-9, "{x} vs {y}");
    }
}

#[test]
fn transfer_operator_identity_is_identity() {
    let disp = DispersionModel::default();
    let state = small_state(8, &PumpSpec::default(), &disp, 0.02);
    let out = propagate(&state, &TransferOperator::identity(disp)).unwrap();
    assert_eq!(block_diff(&state, &out), 0.0);
}
