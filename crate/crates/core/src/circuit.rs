//! Mode transfer matrices and biphoton propagation.
//!
//! Every element acts on single-photon creation operators in the mode basis
//! `[1H, 1V, 2H, 2V]`. Column `m` of a matrix is the image of mode `m`, so a
//! two-photon amplitude transforms as
//! `A'[m', n'](ω_s, ω_i) = Σ U[m', m](ω_s) U[n', n](ω_i) A[m, n](ω_s, ω_i)`.
//!
//! Phase conventions (rotation sense, cross-port phases) are those that make
//! the vertically polarized part of the state before the final beam splitter
//! coincide with the closed forms in [`crate::oracle`].

use std::f64::consts::FRAC_1_SQRT_2;
use std::collections::HashMap;
use std::sync::Arc;

use nalgebra::{DMatrix, Matrix4};
use num_complex::Complex64;

use crate::phase::unit_phasor;
use crate::spectral::{DispersionModel, FrequencyGrid, JointSpectralAmplitude};
use crate::{Error, Result, SPEED_OF_LIGHT};

pub type ModeMatrix = Matrix4<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Channel {
    One,
    Two,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarization {
    H,
    V,
}

/// A spatial channel together with a polarization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModeLabel {
    pub channel: Channel,
    pub polarization: Polarization,
}

impl ModeLabel {
    /// Canonical ordering used for all matrix indices.
    pub const ALL: [ModeLabel; 4] = [
        ModeLabel::new(Channel::One, Polarization::H),
        ModeLabel::new(Channel::One, Polarization::V),
        ModeLabel::new(Channel::Two, Polarization::H),
        ModeLabel::new(Channel::Two, Polarization::V),
    ];

    pub const fn new(channel: Channel, polarization: Polarization) -> Self {
        Self {
            channel,
            polarization,
        }
    }

    pub const fn index(self) -> usize {
        let c = match self.channel {
            Channel::One => 0,
            Channel::Two => 2,
        };
        let p = match self.polarization {
            Polarization::H => 0,
            Polarization::V => 1,
        };
        c + p
    }

    pub const fn from_index(index: usize) -> Self {
        Self::ALL[index]
    }
}

pub const M1H: usize = ModeLabel::new(Channel::One, Polarization::H).index();
pub const M1V: usize = ModeLabel::new(Channel::One, Polarization::V).index();
pub const M2H: usize = ModeLabel::new(Channel::Two, Polarization::H).index();
pub const M2V: usize = ModeLabel::new(Channel::Two, Polarization::V).index();

/// Lengths (m) and converter angles (rad) of the circuit.
///
/// `x` runs from the PDC output facet to the centre of the first converter
/// and so already contains half of `l_pc1`; converters are thin elements at
/// their centres.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircuitGeometry {
    pub l_pdc: f64,
    pub x: f64,
    pub y: f64,
    pub l: f64,
    pub delta_l: f64,
    pub l_pc1: f64,
    pub phi1: f64,
    pub phi2: f64,
}

impl CircuitGeometry {
    pub fn validate(&self) -> Result<()> {
        let lengths = [
            ("L_PDC", self.l_pdc),
            ("x", self.x),
            ("y", self.y),
            ("l", self.l),
            ("L_PC1", self.l_pc1),
        ];
        for (name, v) in lengths {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::invalid(format!(
                    "length {name} must be non-negative, got {v}"
                )));
            }
        }
        if !self.delta_l.is_finite() || (self.delta_l < 0.0 && self.delta_l.abs() >= self.l) {
            return Err(Error::invalid(format!(
                "delta_l = {} must satisfy |delta_l| < l = {} when negative",
                self.delta_l, self.l
            )));
        }
        if !self.phi1.is_finite() || !self.phi2.is_finite() {
            return Err(Error::invalid("converter angles must be finite"));
        }
        Ok(())
    }

    /// Length of the lower channel, `l + delta_l`.
    pub fn lower_channel_length(&self) -> f64 {
        self.l + self.delta_l
    }

    pub fn with_delta_l(self, delta_l: f64) -> Self {
        Self { delta_l, ..self }
    }

    pub fn with_phi1(self, phi1: f64) -> Self {
        Self { phi1, ..self }
    }
}

/// Polarization rotation by `phi` in one channel, identity in the other.
pub fn pc_matrix(phi: f64, channel: Channel) -> ModeMatrix {
    let (s, c) = phi.sin_cos();
    let (h, v) = match channel {
        Channel::One => (M1H, M1V),
        Channel::Two => (M2H, M2V),
    };
    let mut m = ModeMatrix::identity();
    m[(h, h)] = Complex64::new(c, 0.0);
    m[(h, v)] = Complex64::new(-s, 0.0);
    m[(v, h)] = Complex64::new(s, 0.0);
    m[(v, v)] = Complex64::new(c, 0.0);
    m
}

/// H is transmitted, V is routed to the other channel with a factor `-i`.
pub fn pbs_matrix() -> ModeMatrix {
    let mut m = ModeMatrix::zeros();
    m[(M1H, M1H)] = ONE;
    m[(M2H, M2H)] = ONE;
    m[(M2V, M1V)] = Complex64::new(0.0, -1.0);
    m[(M1V, M2V)] = Complex64::new(0.0, -1.0);
    m
}

/// Symmetric polarization-preserving 50:50 beam splitter.
pub fn bs_matrix() -> ModeMatrix {
    let t = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let r = Complex64::new(0.0, FRAC_1_SQRT_2);
    let mut m = ModeMatrix::zeros();
    for (c1, c2) in [(M1H, M2H), (M1V, M2V)] {
        m[(c1, c1)] = t;
        m[(c2, c2)] = t;
        m[(c2, c1)] = r;
        m[(c1, c2)] = r;
    }
    m
}

/// Free propagation: `exp(i ω n_pol len_ch / c)` on the diagonal.
pub fn fp_matrix(len_ch1: f64, len_ch2: f64, disp: &DispersionModel, omega: f64) -> ModeMatrix {
    let k_h = omega * disp.n_h() / SPEED_OF_LIGHT;
    let k_v = omega * disp.n_v() / SPEED_OF_LIGHT;
    ModeMatrix::from_diagonal(&nalgebra::Vector4::new(
        unit_phasor(k_h * len_ch1),
        unit_phasor(k_v * len_ch1),
        unit_phasor(k_h * len_ch2),
        unit_phasor(k_v * len_ch2),
    ))
}

#[derive(Debug, Clone, PartialEq)]
enum Stage {
    Fixed(ModeMatrix),
    Free { ch1: f64, ch2: f64 },
}

/// Frequency-dependent mode transformation built from an ordered list of
/// elements (first element acts first).
#[derive(Debug, Clone, PartialEq)]
pub struct TransferOperator {
    stages: Vec<Stage>,
    disp: DispersionModel,
}

impl TransferOperator {
    pub fn identity(disp: DispersionModel) -> Self {
        Self {
            stages: Vec::new(),
            disp,
        }
    }

    /// Frequency-independent operator.
    pub fn constant(matrix: ModeMatrix, disp: DispersionModel) -> Self {
        Self::identity(disp).then_matrix(matrix)
    }

    pub fn then_matrix(mut self, matrix: ModeMatrix) -> Self {
        self.stages.push(Stage::Fixed(matrix));
        self
    }

    pub fn then_free(mut self, len_ch1: f64, len_ch2: f64) -> Self {
        self.stages.push(Stage::Free {
            ch1: len_ch1,
            ch2: len_ch2,
        });
        self
    }

    /// `next · self`: applies `self` first, then `next`.
    pub fn then(mut self, next: &TransferOperator) -> Self {
        self.stages.extend(next.stages.iter().cloned());
        self
    }

    pub fn evaluate(&self, omega: f64) -> ModeMatrix {
        self.stages
            .iter()
            .fold(ModeMatrix::identity(), |acc, stage| match stage {
                Stage::Fixed(m) => m * acc,
                Stage::Free { ch1, ch2 } => fp_matrix(*ch1, *ch2, &self.disp, omega) * acc,
            })
    }

    /// Evaluates the operator at every node of `grid`.
    pub fn sample(&self, grid: &FrequencyGrid) -> SampledOperator {
        SampledOperator {
            grid: grid.clone(),
            matrices: grid.nodes().iter().map(|&w| self.evaluate(w)).collect(),
        }
    }
}

/// A transfer operator evaluated on the nodes of one grid.
#[derive(Debug, Clone)]
pub struct SampledOperator {
    grid: FrequencyGrid,
    matrices: Vec<ModeMatrix>,
}

impl SampledOperator {
    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn matrices(&self) -> &[ModeMatrix] {
        &self.matrices
    }

    /// Largest `|U†U - I|` entry over all nodes.
    pub fn unitarity_defect(&self) -> f64 {
        self.matrices
            .iter()
            .map(|u| unitarity_defect(u))
            .fold(0.0, f64::max)
    }

    fn entry_is_zero(&self, row: usize, col: usize) -> bool {
        self.matrices.iter().all(|u| u[(row, col)] == ZERO)
    }
}

pub fn unitarity_defect(u: &ModeMatrix) -> f64 {
    let d = u.adjoint() * u - ModeMatrix::identity();
    d.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn free_lengths(geom: &CircuitGeometry) -> [(f64, f64); 4] {
    // FP_2 carries the full channel lengths and PC_2 sits at the BS end of
    // channel 1, so FP_3 is empty.
    [
        (geom.x, geom.x),
        (geom.y, geom.y),
        (geom.l, geom.lower_channel_length()),
        (0.0, 0.0),
    ]
}

/// `FP_3 · PC_2 · FP_2 · PBS · FP_1 · PC_1 · FP_0`.
pub fn compose_before_bs(geom: &CircuitGeometry, disp: &DispersionModel) -> Result<TransferOperator> {
    geom.validate()?;
    let [fp0, fp1, fp2, fp3] = free_lengths(geom);
    Ok(TransferOperator::identity(*disp)
        .then_free(fp0.0, fp0.1)
        .then_matrix(pc_matrix(geom.phi1, Channel::One))
        .then_free(fp1.0, fp1.1)
        .then_matrix(pbs_matrix())
        .then_free(fp2.0, fp2.1)
        .then_matrix(pc_matrix(geom.phi2, Channel::One))
        .then_free(fp3.0, fp3.1))
}

/// `BS · FP_3 · PC_2 · FP_2 · PBS · FP_1 · PC_1 · FP_0`.
pub fn compose_full(geom: &CircuitGeometry, disp: &DispersionModel) -> Result<TransferOperator> {
    Ok(compose_before_bs(geom, disp)?.then_matrix(bs_matrix()))
}

/// Two-photon amplitude tensor `A[mode_s, mode_i](ω_s, ω_i)`.
///
/// Blocks that are structurally zero are not stored. A state built from a
/// sparse amplitude (a narrowband pump fills one cell per row) keeps only the
/// frequency cells it occupies: propagation acts cell by cell and never
/// leaves them.
#[derive(Debug, Clone)]
pub struct BiphotonState {
    grid_s: FrequencyGrid,
    grid_i: FrequencyGrid,
    layout: Layout,
    blocks: [Option<Vec<Complex64>>; 16],
}

#[derive(Debug, Clone, PartialEq)]
enum Layout {
    /// Column-major `n_s × n_i` storage.
    Dense,
    /// Values stored per listed cell; `transpose[k]` is the position of the
    /// mirrored cell `(b, a)`, if it is listed.
    Cells(Arc<CellIndex>),
}

#[derive(Debug, PartialEq)]
struct CellIndex {
    cells: Vec<(usize, usize)>,
    transpose: Vec<Option<usize>>,
}

/// Below this fill fraction an amplitude is stored sparsely.
const SPARSE_FILL: f64 = 0.25;

#[inline]
fn slot(m: usize, n: usize) -> usize {
    4 * m + n
}

impl BiphotonState {
    pub fn zeros(grid_s: FrequencyGrid, grid_i: FrequencyGrid) -> Self {
        Self {
            grid_s,
            grid_i,
            layout: Layout::Dense,
            blocks: Default::default(),
        }
    }

    fn empty_like(&self) -> Self {
        Self {
            grid_s: self.grid_s.clone(),
            grid_i: self.grid_i.clone(),
            layout: self.layout.clone(),
            blocks: Default::default(),
        }
    }

    pub fn grid_s(&self) -> &FrequencyGrid {
        &self.grid_s
    }

    pub fn grid_i(&self) -> &FrequencyGrid {
        &self.grid_i
    }

    /// True if only a subset of frequency cells is stored.
    pub fn is_sparse(&self) -> bool {
        matches!(self.layout, Layout::Cells(_))
    }

    fn stored_len(&self) -> usize {
        match &self.layout {
            Layout::Dense => self.grid_s.n_points() * self.grid_i.n_points(),
            Layout::Cells(index) => index.cells.len(),
        }
    }

    /// Dense copy of the block for signal mode `m` and idler mode `n`, `None`
    /// if it is structurally zero.
    pub fn block(&self, m: usize, n: usize) -> Option<DMatrix<Complex64>> {
        let values = self.blocks[slot(m, n)].as_ref()?;
        let (ns, ni) = (self.grid_s.n_points(), self.grid_i.n_points());
        Some(match &self.layout {
            Layout::Dense => DMatrix::from_column_slice(ns, ni, values),
            Layout::Cells(index) => {
                let mut out = DMatrix::zeros(ns, ni);
                for (&(a, b), &v) in index.cells.iter().zip(values) {
                    out[(a, b)] = v;
                }
                out
            }
        })
    }

    pub fn block_or_zero(&self, m: usize, n: usize) -> DMatrix<Complex64> {
        self.block(m, n).unwrap_or_else(|| {
            DMatrix::zeros(self.grid_s.n_points(), self.grid_i.n_points())
        })
    }

    /// Replaces a block; the state is converted to dense storage first.
    pub fn set_block(&mut self, m: usize, n: usize, values: DMatrix<Complex64>) -> Result<()> {
        if values.nrows() != self.grid_s.n_points() || values.ncols() != self.grid_i.n_points() {
            return Err(Error::invalid("block shape does not match the grids"));
        }
        if self.is_sparse() {
            let dense: Vec<_> = (0..16)
                .map(|k| self.block(k / 4, k % 4).map(|b| b.as_slice().to_vec()))
                .collect();
            self.blocks = dense.try_into().expect("16 blocks");
            self.layout = Layout::Dense;
        }
        self.blocks[slot(m, n)] = Some(values.as_slice().to_vec());
        Ok(())
    }

    /// Keeps only the listed `(signal mode, idler mode)` blocks.
    pub fn project(&self, keep: &[(usize, usize)]) -> Self {
        let mut out = self.empty_like();
        for &(m, n) in keep {
            out.blocks[slot(m, n)] = self.blocks[slot(m, n)].clone();
        }
        out
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = self.clone();
        for block in out.blocks.iter_mut().flatten() {
            for v in block.iter_mut() {
                *v *= factor;
            }
        }
        out
    }

    /// Visits every cell `(a, b)` where the exchange-symmetrized amplitude
    /// `A[m, n](a, b) + A[n, m](b, a)` can be non-zero, with its value.
    /// Requires identical signal and idler grids.
    pub fn for_each_symmetrized(&self, m: usize, n: usize, mut f: impl FnMut(usize, usize, Complex64)) {
        let direct = self.blocks[slot(m, n)].as_deref();
        let swapped = self.blocks[slot(n, m)].as_deref();
        if direct.is_none() && swapped.is_none() {
            return;
        }
        let zero = Complex64::new(0.0, 0.0);
        let at = |blk: Option<&[Complex64]>, k: usize| blk.map_or(zero, |x| x[k]);
        match &self.layout {
            Layout::Dense => {
                let size = self.grid_s.n_points();
                for b in 0..size {
                    for a in 0..size {
                        f(a, b, at(direct, a + size * b) + at(swapped, b + size * a));
                    }
                }
            }
            Layout::Cells(index) => {
                for (k, &(a, b)) in index.cells.iter().enumerate() {
                    let mirrored = index.transpose[k].map_or(zero, |t| at(swapped, t));
                    f(a, b, at(direct, k) + mirrored);
                    if index.transpose[k].is_none() {
                        // (b, a) is outside the support, so only the swapped
                        // block contributes there.
                        f(b, a, at(swapped, k));
                    }
                }
            }
        }
    }
}

fn cell_index(cells: Vec<(usize, usize)>) -> CellIndex {
    let position: HashMap<(usize, usize), usize> =
        cells.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let transpose = cells.iter().map(|&(a, b)| position.get(&(b, a)).copied()).collect();
    CellIndex { cells, transpose }
}

/// PDC pair: signal in 1H, idler in 1V.
pub fn init_state(jsa: &JointSpectralAmplitude) -> BiphotonState {
    let mut state = BiphotonState::zeros(jsa.grid_s().clone(), jsa.grid_i().clone());
    let values = jsa.values();
    let cells: Vec<(usize, usize)> = (0..values.ncols())
        .flat_map(|b| (0..values.nrows()).map(move |a| (a, b)))
        .filter(|&(a, b)| values[(a, b)] != Complex64::new(0.0, 0.0))
        .collect();
    if (cells.len() as f64) < SPARSE_FILL * values.len() as f64 {
        state.blocks[slot(M1H, M1V)] = Some(cells.iter().map(|&c| values[c]).collect());
        state.layout = Layout::Cells(Arc::new(cell_index(cells)));
    } else {
        state.blocks[slot(M1H, M1V)] = Some(values.as_slice().to_vec());
    }
    state
}

/// Applies `op` to both photons.
pub fn propagate(state: &BiphotonState, op: &TransferOperator) -> Result<BiphotonState> {
    let on_s = op.sample(&state.grid_s);
    if state.grid_i == state.grid_s {
        propagate_sampled(state, &on_s, &on_s)
    } else {
        propagate_sampled(state, &on_s, &op.sample(&state.grid_i))
    }
}

/// Applies pre-sampled operators to the signal and idler photons.
pub fn propagate_sampled(
    state: &BiphotonState,
    on_signal: &SampledOperator,
    on_idler: &SampledOperator,
) -> Result<BiphotonState> {
    if on_signal.grid != state.grid_s || on_idler.grid != state.grid_i {
        return Err(Error::invalid(
            "operator was sampled on a different grid than the state",
        ));
    }
    let len = state.stored_len();
    let ns = state.grid_s.n_points();
    // Frequency indices of every stored value.
    let cell = |k: usize| match &state.layout {
        Layout::Dense => (k % ns, k / ns),
        Layout::Cells(index) => index.cells[k],
    };

    // Signal index: values are scaled by U[m', m](ω_s).
    let mut half = state.empty_like();
    for m in 0..4 {
        for n in 0..4 {
            let Some(src) = state.blocks[slot(m, n)].as_ref() else { continue };
            for mp in 0..4 {
                if on_signal.entry_is_zero(mp, m) {
                    continue;
                }
                let dst = half.blocks[slot(mp, n)].get_or_insert_with(|| vec![Complex64::new(0.0, 0.0); len]);
                for (k, (d, s)) in dst.iter_mut().zip(src).enumerate() {
                    *d += on_signal.matrices[cell(k).0][(mp, m)] * s;
                }
            }
        }
    }

    // Idler index: values are scaled by U[n', n](ω_i).
    let mut out = state.empty_like();
    for mp in 0..4 {
        for n in 0..4 {
            let Some(src) = half.blocks[slot(mp, n)].as_ref() else { continue };
            for np in 0..4 {
                if on_idler.entry_is_zero(np, n) {
                    continue;
                }
                let dst = out.blocks[slot(mp, np)].get_or_insert_with(|| vec![Complex64::new(0.0, 0.0); len]);
                for (k, (d, s)) in dst.iter_mut().zip(src).enumerate() {
                    *d += on_idler.matrices[cell(k).1][(np, n)] * s;
                }
            }
        }
    }
    Ok(out)
}
