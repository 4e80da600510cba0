//! Orthogonal Matching Pursuit.
//!
//! At step `k + 1` the atom with the largest `|<v, R^k>|` is selected and
//! orthogonalized against the orthonormal vectors `Q_k` of the current span
//! by classical Gram-Schmidt followed by exactly one re-orthogonalization
//! pass:
//!
//! ```text
//! q <- v - Q_k Q_k^T v
//! q <- q - Q_k Q_k^T q
//! ```
//!
//! The dual (biorthogonal) vectors are then updated recursively,
//!
//! ```text
//! w_{k+1} = q / |q|^2
//! w_i    <- w_i - w_{k+1} <v, w_i>,   i <= k
//! ```
//!
//! so that `<w_i, v_j> = delta_ij` over the selected atoms and the
//! orthogonal projection coefficients are simply `c_i = <w_i, f>`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Relative norm below which a newly orthogonalized atom is considered
/// linearly dependent on the selected ones.
pub const DEFAULT_DEPENDENCE_TOL: f64 = 1e-9;

/// A finite family of atoms in `R^signal_len`, indexed `0..atom_count`.
pub trait AtomSet {
    fn signal_len(&self) -> usize;

    fn atom_count(&self) -> usize;

    /// Writes atom `index` into `out` (length `signal_len`).
    fn write_atom(&self, index: usize, out: &mut [f64]);

    /// Writes `<atom_i, residual>` for every atom into `out`.
    fn correlate(&self, residual: &[f64], out: &mut [f64]);
}

/// Atoms stored explicitly as the columns of a dense matrix. Columns are
/// used as given, so callers wanting `|correlation|` to be a fair selection
/// rule should normalize them.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseDictionary {
    signal_len: usize,
    atoms: Vec<Vec<f64>>,
}

impl DenseDictionary {
    pub fn new(atoms: Vec<Vec<f64>>) -> Result<Self> {
        let signal_len = atoms.first().map_or(0, Vec::len);
        if let Some(bad) = atoms.iter().find(|a| a.len() != signal_len) {
            return Err(Error::DimensionMismatch {
                expected: format!("atoms of length {signal_len}"),
                found: format!("atom of length {}", bad.len()),
            });
        }
        Ok(DenseDictionary { signal_len, atoms })
    }

    pub fn atom(&self, index: usize) -> &[f64] {
        &self.atoms[index]
    }
}

impl AtomSet for DenseDictionary {
    fn signal_len(&self) -> usize {
        self.signal_len
    }

    fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    fn write_atom(&self, index: usize, out: &mut [f64]) {
        out.copy_from_slice(&self.atoms[index]);
    }

    fn correlate(&self, residual: &[f64], out: &mut [f64]) {
        for (dst, atom) in out.iter_mut().zip(&self.atoms) {
            *dst = dot(atom, residual);
        }
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopMode {
    TargetSse,
    MaxAtoms,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StoppingRule {
    pub mode: StopMode,
    pub sse_threshold: f64,
    pub atom_cap: usize,
}

impl StoppingRule {
    /// Stop once the residual sum of squares is at most `sse`.
    pub fn target_sse(sse: f64) -> Self {
        StoppingRule {
            mode: StopMode::TargetSse,
            sse_threshold: sse,
            atom_cap: usize::MAX,
        }
    }

    pub fn max_atoms(cap: usize) -> Self {
        StoppingRule {
            mode: StopMode::MaxAtoms,
            sse_threshold: 0.0,
            atom_cap: cap,
        }
    }

    pub fn both(sse: f64, cap: usize) -> Self {
        StoppingRule {
            mode: StopMode::Both,
            sse_threshold: sse,
            atom_cap: cap,
        }
    }

    /// The effective cap for signals of length `dim`: never more atoms than
    /// the dimension.
    fn cap_for(&self, dim: usize) -> usize {
        match self.mode {
            StopMode::TargetSse => dim,
            _ => self.atom_cap.min(dim),
        }
    }

    fn validate(&self, dim: usize) -> Result<()> {
        let uses_sse = self.mode != StopMode::MaxAtoms;
        if uses_sse && (self.sse_threshold.is_nan() || self.sse_threshold < 0.0) {
            return Err(Error::Config(format!(
                "SSE threshold must be nonnegative, got {}",
                self.sse_threshold
            )));
        }
        if self.mode != StopMode::TargetSse && self.atom_cap > dim {
            return Err(Error::Config(format!(
                "atom cap {} exceeds signal dimension {dim}",
                self.atom_cap
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Selection {
    pub index: usize,
    pub correlation: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Update {
    Accepted,
    /// The atom lies in the current span; it was masked and nothing else
    /// changed.
    Dependent,
}

/// Everything OMP carries between iterations for one signal.
#[derive(Debug, Clone)]
pub struct PursuitState {
    signal: Vec<f64>,
    residual: Vec<f64>,
    selected: Vec<usize>,
    /// Selected atoms `v_l1 .. v_lk`.
    atoms: Vec<Vec<f64>>,
    /// Orthonormal basis of the selected span.
    basis: Vec<Vec<f64>>,
    /// Dual vectors, biorthogonal to `atoms`.
    duals: Vec<Vec<f64>>,
    coeffs: Vec<f64>,
    masked: BTreeSet<usize>,
    excluded: Vec<bool>,
    dependence_tol: f64,
    scratch: Vec<f64>,
}

impl PursuitState {
    pub fn new(signal: &[f64], atom_count: usize) -> Self {
        PursuitState {
            signal: signal.to_vec(),
            residual: signal.to_vec(),
            selected: Vec::new(),
            atoms: Vec::new(),
            basis: Vec::new(),
            duals: Vec::new(),
            coeffs: Vec::new(),
            masked: BTreeSet::new(),
            excluded: vec![false; atom_count],
            dependence_tol: DEFAULT_DEPENDENCE_TOL,
            scratch: vec![0.0; atom_count],
        }
    }

    pub fn with_dependence_tol(mut self, tol: f64) -> Self {
        self.dependence_tol = tol;
        self
    }

    pub fn signal(&self) -> &[f64] {
        &self.signal
    }

    pub fn residual(&self) -> &[f64] {
        &self.residual
    }

    pub fn residual_sse(&self) -> f64 {
        dot(&self.residual, &self.residual)
    }

    pub fn selected(&self) -> &[usize] {
        &self.selected
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn orthonormal_basis(&self) -> &[Vec<f64>] {
        &self.basis
    }

    pub fn duals(&self) -> &[Vec<f64>] {
        &self.duals
    }

    pub fn masked(&self) -> &BTreeSet<usize> {
        &self.masked
    }

    /// `sum_i c_i v_li`.
    pub fn approximation(&self) -> Vec<f64> {
        let mut approx = vec![0.0; self.signal.len()];
        for (c, atom) in self.coeffs.iter().zip(&self.atoms) {
            axpy(*c, atom, &mut approx);
        }
        approx
    }

    /// `Q_k Q_k^T x`, the orthogonal projection onto the selected span.
    fn project_out(&self, x: &mut [f64]) {
        let weights: Vec<f64> = self.basis.iter().map(|q| dot(q, x)).collect();
        for (w, q) in weights.iter().zip(&self.basis) {
            axpy(-w, q, x);
        }
    }
}

/// Picks the unselected, unmasked atom maximizing `|<atom, R>|`. Ties go to
/// the smallest index.
pub fn select_atom<D: AtomSet + ?Sized>(state: &mut PursuitState, dict: &D) -> Result<Selection> {
    let mut corr = std::mem::take(&mut state.scratch);
    dict.correlate(&state.residual, &mut corr);
    let mut best: Option<Selection> = None;
    for (index, &c) in corr.iter().enumerate() {
        if state.excluded[index] {
            continue;
        }
        let c = c.abs();
        if best.is_none_or(|b| c > b.correlation) {
            best = Some(Selection { index, correlation: c });
        }
    }
    state.scratch = corr;
    best.ok_or(Error::PursuitExhausted)
}

/// Adds atom `index` to the selected set, updating the orthonormal basis,
/// the dual vectors, the coefficients and the residual.
pub fn orthogonalize_and_update<D: AtomSet + ?Sized>(state: &mut PursuitState, dict: &D, index: usize) -> Update {
    debug_assert!(!state.selected.contains(&index), "atom {index} already selected");
    let mut atom = vec![0.0; dict.signal_len()];
    dict.write_atom(index, &mut atom);
    let atom_norm = dot(&atom, &atom).sqrt();

    let mut q = atom.clone();
    state.project_out(&mut q);
    state.project_out(&mut q);
    let q_sq = dot(&q, &q);
    let q_norm = q_sq.sqrt();
    if q_norm.is_nan() || q_norm < state.dependence_tol * atom_norm || q_norm == 0.0 {
        state.masked.insert(index);
        state.excluded[index] = true;
        return Update::Dependent;
    }

    let new_dual: Vec<f64> = q.iter().map(|x| x / q_sq).collect();
    for dual in &mut state.duals {
        let w = dot(&atom, dual);
        axpy(-w, &new_dual, dual);
    }
    state.duals.push(new_dual);
    state.basis.push(q.iter().map(|x| x / q_norm).collect());
    state.atoms.push(atom);
    state.selected.push(index);
    state.excluded[index] = true;

    state.coeffs = state.duals.iter().map(|w| dot(w, &state.signal)).collect();
    let approx = state.approximation();
    for ((r, f), a) in state.residual.iter_mut().zip(&state.signal).zip(&approx) {
        *r = f - a;
    }
    Update::Accepted
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// Residual SSE reached the threshold.
    Threshold,
    AtomCap,
    /// The best remaining correlation is exactly zero while the threshold is
    /// still unmet.
    ZeroCorrelation,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub iteration: usize,
    pub index: usize,
    pub correlation: f64,
    pub residual_sse: f64,
}

#[derive(Debug, Clone)]
pub struct PursuitOutcome {
    /// Selected atom indices with their final coefficients, in selection
    /// order.
    pub entries: Vec<(usize, f64)>,
    pub residual_sse: f64,
    pub stop: StopReason,
    pub trace: Vec<TraceRow>,
    pub state: PursuitState,
}

impl PursuitOutcome {
    pub fn residual_norm(&self) -> f64 {
        self.residual_sse.sqrt()
    }
}

/// Runs OMP on `signal` until `rule` is met. When `trace` is set, one row
/// is recorded per accepted atom.
pub fn run_omp<D: AtomSet + ?Sized>(
    signal: &[f64],
    dict: &D,
    rule: &StoppingRule,
    trace: bool,
) -> Result<PursuitOutcome> {
    let dim = dict.signal_len();
    if signal.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: format!("signal of length {dim}"),
            found: format!("length {}", signal.len()),
        });
    }
    rule.validate(dim)?;
    let cap = rule.cap_for(dim);
    let uses_sse = rule.mode != StopMode::MaxAtoms;

    let mut state = PursuitState::new(signal, dict.atom_count());
    let mut rows = Vec::new();
    let stop = loop {
        let sse = state.residual_sse();
        if uses_sse && sse <= rule.sse_threshold {
            break StopReason::Threshold;
        }
        if state.selected.len() >= cap {
            break StopReason::AtomCap;
        }
        let pick = select_atom(&mut state, dict)?;
        if pick.correlation == 0.0 {
            break StopReason::ZeroCorrelation;
        }
        if orthogonalize_and_update(&mut state, dict, pick.index) == Update::Accepted && trace {
            rows.push(TraceRow {
                iteration: state.selected.len(),
                index: pick.index,
                correlation: pick.correlation,
                residual_sse: state.residual_sse(),
            });
        }
    };

    Ok(PursuitOutcome {
        entries: state
            .selected
            .iter()
            .copied()
            .zip(state.coeffs.iter().copied())
            .collect(),
        residual_sse: state.residual_sse(),
        stop,
        trace: rows,
        state,
    })
}
