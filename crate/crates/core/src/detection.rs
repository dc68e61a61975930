//! Polarization-resolved coincidence and bunching probabilities, delay scans.
//!
//! Photons are bosons, so the detector amplitude for a pair of modes
//! `(m, n)` at frequencies `(ω_b, ω_c)` is the symmetrized
//! `A[m, n](ω_b, ω_c) + A[n, m](ω_c, ω_b)`. This requires identical signal and
//! idler grids.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::circuit::{
    bs_matrix, compose_before_bs, init_state, propagate_sampled, BiphotonState, Channel,
    CircuitGeometry, ModeLabel, Polarization, TransferOperator, M1V, M2V,
};
use crate::spectral::{build_jsa, DispersionModel, FrequencyGrid, JointSpectralAmplitude, PumpSpec};
use crate::{Error, Result};

/// Tolerance on the state norm before a warning is attached to a record.
pub const NORM_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoincidenceRecord {
    pub p_vv: f64,
    pub p_hh: f64,
    pub p_hv: f64,
    pub p_vh: f64,
    pub p_bunch_1: f64,
    pub p_bunch_2: f64,
}

impl CoincidenceRecord {
    pub fn total(&self) -> f64 {
        self.p_vv + self.p_hh + self.p_hv + self.p_vh + self.p_bunch_1 + self.p_bunch_2
    }

    pub fn as_array(&self) -> [f64; 6] {
        [
            self.p_vv,
            self.p_hh,
            self.p_hv,
            self.p_vh,
            self.p_bunch_1,
            self.p_bunch_2,
        ]
    }

    fn add(&self, other: &Self) -> Self {
        Self {
            p_vv: self.p_vv + other.p_vv,
            p_hh: self.p_hh + other.p_hh,
            p_hv: self.p_hv + other.p_hv,
            p_vh: self.p_vh + other.p_vh,
            p_bunch_1: self.p_bunch_1 + other.p_bunch_1,
            p_bunch_2: self.p_bunch_2 + other.p_bunch_2,
        }
    }
}

fn check_symmetric_grids(state: &BiphotonState) -> Result<()> {
    if state.grid_s() != state.grid_i() {
        return Err(Error::invalid(
            "coincidence evaluation needs identical signal and idler grids",
        ));
    }
    Ok(())
}

/// `Σ_ab w_a w_b |A[m,n](a,b) + A[n,m](b,a)|²`.
fn symmetrized_weight(state: &BiphotonState, m: usize, n: usize) -> f64 {
    let w = state.grid_s().weights();
    let mut acc = 0.0;
    state.for_each_symmetrized(m, n, |a, b, s| acc += w[a] * w[b] * s.norm_sqr());
    acc
}

fn mode(channel: Channel, polarization: Polarization) -> usize {
    ModeLabel::new(channel, polarization).index()
}

/// Probability that detector `b` (channel 1) sees polarization `pol_b` and
/// detector `c` (channel 2) sees `pol_c`.
pub fn coincidence_probability(
    state: &BiphotonState,
    pol_b: Polarization,
    pol_c: Polarization,
) -> Result<f64> {
    check_symmetric_grids(state)?;
    Ok(symmetrized_weight(
        state,
        mode(Channel::One, pol_b),
        mode(Channel::Two, pol_c),
    ))
}

/// Probability that both photons leave through `channel`.
pub fn bunching_probability(state: &BiphotonState, channel: Channel) -> Result<f64> {
    check_symmetric_grids(state)?;
    let h = mode(channel, Polarization::H);
    let v = mode(channel, Polarization::V);
    // Ordered pairs are counted twice except on the diagonal, where the
    // symmetrized amplitude already carries the factor two.
    let same = 0.5 * (symmetrized_weight(state, h, h) + symmetrized_weight(state, v, v));
    let mixed = symmetrized_weight(state, h, v);
    Ok(same + mixed)
}

pub fn coincidence_record(state: &BiphotonState) -> Result<CoincidenceRecord> {
    use Polarization::{H, V};
    Ok(CoincidenceRecord {
        p_vv: coincidence_probability(state, V, V)?,
        p_hh: coincidence_probability(state, H, H)?,
        p_hv: coincidence_probability(state, H, V)?,
        p_vh: coincidence_probability(state, V, H)?,
        p_bunch_1: bunching_probability(state, Channel::One)?,
        p_bunch_2: bunching_probability(state, Channel::Two)?,
    })
}

/// Sum of all coincidence and bunching probabilities (the two-photon norm).
pub fn total_probability(state: &BiphotonState) -> Result<f64> {
    Ok(coincidence_record(state)?.total())
}

/// Which part of the state reaches the final beam splitter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Component {
    /// The whole state.
    Total,
    /// Photons in different channels: blocks (1V, 2V) and (2V, 1V).
    Psi1,
    /// Photons in the same channel: blocks (1V, 1V) and (2V, 2V).
    Psi2,
}

impl Component {
    pub fn label(self) -> &'static str {
        match self {
            Component::Total => "total",
            Component::Psi1 => "psi1",
            Component::Psi2 => "psi2",
        }
    }

    fn blocks(self) -> Option<&'static [(usize, usize)]> {
        match self {
            Component::Total => None,
            Component::Psi1 => Some(&[(M1V, M2V), (M2V, M1V)]),
            Component::Psi2 => Some(&[(M1V, M1V), (M2V, M2V)]),
        }
    }
}

/// Everything needed to reproduce a scan.
#[derive(Debug, Clone)]
pub struct ScanMetadata {
    pub geometry: CircuitGeometry,
    pub dispersion: DispersionModel,
    pub pump: PumpSpec,
    pub grid: FrequencyGrid,
    pub component: Component,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct ScanResult {
    pub delta_l_values: Vec<f64>,
    pub records: Vec<CoincidenceRecord>,
    pub metadata: ScanMetadata,
}

impl ScanResult {
    pub fn p_vv(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.p_vv).collect()
    }

    /// Pointwise sum of two scans over the same abscissa.
    pub fn sum(&self, other: &ScanResult) -> Result<ScanResult> {
        if self.delta_l_values != other.delta_l_values {
            return Err(Error::invalid("scans have different delta_l values"));
        }
        let mut out = self.clone();
        for (r, o) in out.records.iter_mut().zip(&other.records) {
            *r = r.add(o);
        }
        Ok(out)
    }
}

/// Coincidences after the full circuit for one geometry.
///
/// `component` selects the part of the state kept just before the final beam
/// splitter.
pub fn evaluate_point(
    initial: &BiphotonState,
    geom: &CircuitGeometry,
    disp: &DispersionModel,
    component: Component,
) -> Result<CoincidenceRecord> {
    let before = compose_before_bs(geom, disp)?.sample(initial.grid_s());
    let mut state = propagate_sampled(initial, &before, &before)?;
    if let Some(keep) = component.blocks() {
        state = state.project(keep);
    }
    let bs = TransferOperator::constant(bs_matrix(), *disp).sample(initial.grid_s());
    let out = propagate_sampled(&state, &bs, &bs)?;
    coincidence_record(&out)
}

fn check_range(delta_l_range: &[f64]) -> Result<()> {
    if delta_l_range.is_empty() {
        return Err(Error::invalid("delta_l range is empty"));
    }
    if !delta_l_range.windows(2).all(|w| w[1] > w[0]) {
        return Err(Error::invalid("delta_l range must be strictly increasing"));
    }
    Ok(())
}

/// Sweeps the lower-channel excess length and records coincidences.
pub fn scan_delay(
    geom_template: &CircuitGeometry,
    disp: &DispersionModel,
    pump: &PumpSpec,
    grid: &FrequencyGrid,
    delta_l_range: &[f64],
) -> Result<ScanResult> {
    scan_component(geom_template, disp, pump, grid, delta_l_range, Component::Total)
}

/// Like [`scan_delay`], keeping only one part of the state before the BS.
pub fn scan_component(
    geom_template: &CircuitGeometry,
    disp: &DispersionModel,
    pump: &PumpSpec,
    grid: &FrequencyGrid,
    delta_l_range: &[f64],
    component: Component,
) -> Result<ScanResult> {
    check_range(delta_l_range)?;
    let jsa = build_jsa(grid, grid, pump, disp, geom_template.l_pdc)?;
    scan_with_jsa(geom_template, disp, pump, &jsa, delta_l_range, component)
}

/// Scan with a pre-built amplitude (its grids must be identical).
pub fn scan_with_jsa(
    geom_template: &CircuitGeometry,
    disp: &DispersionModel,
    pump: &PumpSpec,
    jsa: &JointSpectralAmplitude,
    delta_l_range: &[f64],
    component: Component,
) -> Result<ScanResult> {
    check_range(delta_l_range)?;
    let initial = init_state(jsa);
    let mut warnings = jsa.warnings().to_vec();
    let norm = jsa.norm_sqr();
    if (norm - 1.0).abs() > NORM_TOLERANCE {
        warnings.push(format!("input state norm is {norm}, not 1"));
    }

    #[cfg(feature = "parallel")]
    let points = delta_l_range.par_iter();
    #[cfg(not(feature = "parallel"))]
    let points = delta_l_range.iter();
    let records = points
        .enumerate()
        .map(|(index, &delta_l)| {
            evaluate_point(&initial, &geom_template.with_delta_l(delta_l), disp, component)
                .map_err(|e| Error::ScanPoint {
                    index,
                    delta_l_um: delta_l * 1e6,
                    source: Box::new(e),
                })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(ScanResult {
        delta_l_values: delta_l_range.to_vec(),
        records,
        metadata: ScanMetadata {
            geometry: *geom_template,
            dispersion: *disp,
            pump: *pump,
            grid: jsa.grid_s().clone(),
            component,
            warnings,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{compose_full, init_state, propagate, M1H};
    use crate::spectral::{build_grid, build_jsa, sinc_lobe_width, PumpSpec};
    use nalgebra::DMatrix;
    use num_complex::Complex64;

    fn grid(n: usize) -> FrequencyGrid {
        build_grid(0.0, 1.0, n).unwrap()
    }

    fn gaussian(g: &FrequencyGrid, mu: f64, sigma: f64) -> Vec<f64> {
        g.nodes().iter().map(|w| (-(w - mu).powi(2) / (2.0 * sigma * sigma)).exp()).collect()
    }

    fn product_block(g: &FrequencyGrid, f: &[f64], h: &[f64]) -> DMatrix<Complex64> {
        DMatrix::from_fn(g.n_points(), g.n_points(), |a, b| Complex64::new(f[a] * h[b], 0.0))
    }

    fn normalize(state: BiphotonState) -> BiphotonState {
        let t = total_probability(&state).unwrap();
        state.scaled(1.0 / t.sqrt())
    }

    #[test]
    fn distinguishable_photons_in_both_detectors() {
        let g = grid(64);
        let f = gaussian(&g, -0.5, 0.05);
        let h = gaussian(&g, 0.5, 0.05);
        let mut state = BiphotonState::zeros(g.clone(), g.clone());
        state.set_block(M1V, M2V, product_block(&g, &f, &h)).unwrap();
        let state = normalize(state);
        let p = coincidence_probability(&state, Polarization::V, Polarization::V).unwrap();
        assert!((p - 1.0).abs() < 1e-12);
        assert!(bunching_probability(&state, Channel::One).unwrap() < 1e-12);
        assert!(bunching_probability(&state, Channel::Two).unwrap() < 1e-12);
    }

    #[test]
    fn indistinguishable_photons_bunch() {
        let g = grid(64);
        let f = gaussian(&g, 0.0, 0.2);
        let mut state = BiphotonState::zeros(g.clone(), g.clone());
        state.set_block(M1V, M2V, product_block(&g, &f, &f)).unwrap();
        let state = normalize(state);
        let bs = TransferOperator::constant(bs_matrix(), DispersionModel::default());
        let out = propagate(&state, &bs).unwrap();
        let p = coincidence_probability(&out, Polarization::V, Polarization::V).unwrap();
        assert!(p < 1e-12);
        assert!((bunching_probability(&out, Channel::One).unwrap() - 0.5).abs() < 1e-12);
        assert!((bunching_probability(&out, Channel::Two).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn distinguishable_photons_split_half_the_time() {
        // Four BS outcomes with amplitudes t*t, r*r, t*r, r*t for photons
        // entering opposite ports; with disjoint spectra they add in
        // probability: coincidences |t|^4 + |r|^4 = 1/2.
        let g = grid(64);
        let f = gaussian(&g, -0.5, 0.05);
        let h = gaussian(&g, 0.5, 0.05);
        let mut state = BiphotonState::zeros(g.clone(), g.clone());
        state.set_block(M1V, M2V, product_block(&g, &f, &h)).unwrap();
        let state = normalize(state);
        let bs = TransferOperator::constant(bs_matrix(), DispersionModel::default());
        let out = propagate(&state, &bs).unwrap();
        let p = coincidence_probability(&out, Polarization::V, Polarization::V).unwrap();
        let (t, r) = (0.5f64.sqrt(), 0.5f64.sqrt());
        let expected = t.powi(4) + r.powi(4);
        assert!((p - expected).abs() < 1e-12);
    }

    #[test]
    fn total_probability_is_quadratic() {
        let g = grid(16);
        let f = gaussian(&g, 0.0, 0.3);
        let mut state = BiphotonState::zeros(g.clone(), g.clone());
        state.set_block(M1H, M1V, product_block(&g, &f, &f)).unwrap();
        let state = normalize(state);
        assert!((total_probability(&state).unwrap() - 1.0).abs() < 1e-12);
        assert!((total_probability(&state.scaled(0.5)).unwrap() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn scan_rejects_bad_ranges() {
        let g = build_grid(PumpSpec::default().degenerate_frequency(), 1e12, 8).unwrap();
        let geom = CircuitGeometry {
            l_pdc: 0.02,
            x: 0.0,
            y: 0.0,
            l: 1e-2,
            delta_l: 0.0,
            l_pc1: 0.0,
            phi1: 0.0,
            phi2: std::f64::consts::FRAC_PI_2,
        };
        let disp = DispersionModel::default();
        let pump = PumpSpec::default();
        assert!(scan_delay(&geom, &disp, &pump, &g, &[]).is_err());
        assert!(scan_delay(&geom, &disp, &pump, &g, &[1e-6, 0.0]).is_err());
        let err = scan_delay(&geom, &disp, &pump, &g, &[0.0, -0.02]).unwrap_err();
        assert!(err.to_string().contains("invalid") || err.to_string().contains("increasing"));
        let err = scan_delay(&geom, &disp, &pump, &g, &[-0.02, 0.0]).unwrap_err();
        assert!(matches!(err, Error::ScanPoint { index: 0, .. }), "{err}");
    }

    #[test]
    fn sparse_and_dense_storage_agree() {
        let disp = DispersionModel::default();
        let pump = PumpSpec::default();
        let l_pdc = 0.0207;
        let g = build_grid(pump.degenerate_frequency(), 3.0 * sinc_lobe_width(&disp, l_pdc), 40).unwrap();
        let jsa = build_jsa(&g, &g, &pump, &disp, l_pdc).unwrap();
        let sparse = init_state(&jsa);
        assert!(sparse.is_sparse());
        let mut dense = BiphotonState::zeros(g.clone(), g.clone());
        dense.set_block(M1H, M1V, jsa.values().clone()).unwrap();

        let geom = CircuitGeometry {
            l_pdc,
            x: 3810e-6,
            y: 5810e-6,
            l: 0.01,
            delta_l: -2e-4,
            l_pc1: 7620e-6,
            phi1: 0.4,
            phi2: 1.3,
        };
        let op = compose_full(&geom, &disp).unwrap();
        let (a, b) = (propagate(&sparse, &op).unwrap(), propagate(&dense, &op).unwrap());
        for m in 0..4 {
            for n in 0..4 {
                assert_eq!(a.block(m, n), b.block(m, n));
            }
        }
        let (ra, rb) = (coincidence_record(&a).unwrap(), coincidence_record(&b).unwrap());
        for (x, y) in ra.as_array().iter().zip(rb.as_array()) {
            assert!((x - y).abs() < 1e-14);
        }
    }

    #[test]
    fn sparse_support_without_mirror_cells() {
        // A single off-diagonal cell: its transpose is not stored.
        let g = grid(6);
        let mut values = DMatrix::zeros(6, 6);
        values[(1, 4)] = Complex64::new(1.0, 0.0);
        let jsa = JointSpectralAmplitude::from_values(g.clone(), g.clone(), values.clone()).unwrap();
        let sparse = init_state(&jsa);
        assert!(sparse.is_sparse());
        let mut dense = BiphotonState::zeros(g.clone(), g);
        dense.set_block(M1H, M1V, jsa.values().clone()).unwrap();
        let bs = TransferOperator::constant(bs_matrix(), DispersionModel::default());
        let (a, b) = (propagate(&sparse, &bs).unwrap(), propagate(&dense, &bs).unwrap());
        let (ra, rb) = (coincidence_record(&a).unwrap(), coincidence_record(&b).unwrap());
        assert_eq!(ra, rb);
        assert!((ra.total() - 1.0).abs() < 1e-12);
    }
}
