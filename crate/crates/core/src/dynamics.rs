//! Closed-system time evolution by exact per-step matrix exponentials, plus
//! the analytic Rabi/inversion/coupled-cavity oracles.
//!
//! A single propagator U = exp(−iH·δt/ħ) is diagonalized once per run and
//! applied repeatedly; for a time-independent Hamiltonian that is the exact
//! evolution sampled on the grid, at O(d³ + samples·d²) cost. The state is
//! renormalized after each step by default (pure drift correction — the
//! per-step exponential is unitary to roundoff anyway).

use ndarray::{Array2, ArrayView1};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::hilbert::{FockSpace, StateVector};
use crate::numerics::unitary_exp;
use crate::operators::Operator;

/// Hermiticity tolerance required of propagator inputs.
pub const PROPAGATOR_HERMITICITY_TOL: f64 = 1e-10;

/// Uniform sampling grid t = 0, δt, …, with samples = ⌊t_max/δt⌋ + 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    dt: f64,
    t_max: f64,
}

impl TimeGrid {
    #[allow(clippy::neg_cmp_op_on_partial_ord)] // `!(dt > 0)` also rejects NaN
    pub fn new(dt: f64, t_max: f64) -> Result<Self> {
        if !(dt > 0.0) {
            return Err(Error::Domain(format!("time step must be positive, got {dt}")));
        }
        if t_max < dt {
            return Err(Error::Domain(format!(
                "t_max ({t_max}) must be at least one step ({dt})"
            )));
        }
        Ok(TimeGrid { dt, t_max })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    /// Number of samples including t = 0. The ratio gets a small fuzz so
    /// grids like (0.1, 0.3) include their intended endpoint.
    pub fn samples(&self) -> usize {
        (self.t_max / self.dt + 1e-9).floor() as usize + 1
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.samples()).map(|k| k as f64 * self.dt).collect()
    }
}

/// Sampled real observables on a uniform grid; one column per label.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    grid: TimeGrid,
    labels: Vec<String>,
    values: Array2<f64>,
}

impl TimeSeries {
    pub fn new(grid: TimeGrid, labels: Vec<String>, values: Array2<f64>) -> Result<Self> {
        if values.nrows() != grid.samples() {
            return Err(Error::InvalidDimension(format!(
                "time series has {} rows but the grid has {} samples",
                values.nrows(),
                grid.samples()
            )));
        }
        if values.ncols() != labels.len() {
            return Err(Error::InvalidDimension(format!(
                "time series has {} columns but {} labels",
                values.ncols(),
                labels.len()
            )));
        }
        Ok(TimeSeries {
            grid,
            labels,
            values,
        })
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn values(&self) -> &Array2<f64> {
        &self.values
    }

    pub fn column(&self, label: &str) -> Option<ArrayView1<'_, f64>> {
        let idx = self.labels.iter().position(|l| l == label)?;
        Some(self.values.column(idx))
    }

    /// Replaces the column labels (count must match).
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.labels.len() {
            return Err(Error::InvalidDimension(format!(
                "expected {} labels, got {}",
                self.labels.len(),
                labels.len()
            )));
        }
        self.labels = labels;
        Ok(self)
    }
}

/// Unitary propagator U = exp(−iH·dt/ħ) through the Hermitian
/// eigendecomposition.
pub fn propagator(h: &Operator, dt: f64, hbar: f64) -> Result<Operator> {
    let asym = h.hermiticity_error();
    if asym > PROPAGATOR_HERMITICITY_TOL {
        return Err(Error::NotHermitian(asym));
    }
    unitary_exp(h, C64::new(0.0, -dt / hbar))
}

/// Knobs for the closed-system steppers.
#[derive(Debug, Clone, Copy)]
pub struct EvolveOptions {
    /// Renormalize the state after every step (drift correction). Default on.
    pub renormalize: bool,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        EvolveOptions { renormalize: true }
    }
}

fn check_evolution_inputs(
    psi0: &StateVector,
    h: &Operator,
    others: &[&StateVector],
) -> Result<()> {
    if !psi0.is_normalized() {
        return Err(Error::Precondition(format!(
            "initial state must be normalized (norm = {})",
            psi0.norm()
        )));
    }
    if h.space() != psi0.space() {
        return Err(Error::SpaceMismatch(
            "Hamiltonian and initial state live on different spaces".into(),
        ));
    }
    for p in others {
        if p.space() != psi0.space() {
            return Err(Error::SpaceMismatch(
                "projector state lives on a different space".into(),
            ));
        }
    }
    Ok(())
}

/// Evolves |ψ₀⟩ under H, recording |⟨projⱼ|ψ(t)⟩|² at each sample. Columns
/// are labelled `p0`, `p1`, … in projector order (rename with
/// [`TimeSeries::with_labels`]).
pub fn evolve(
    psi0: &StateVector,
    h: &Operator,
    grid: &TimeGrid,
    projectors: &[StateVector],
    hbar: f64,
) -> Result<TimeSeries> {
    evolve_with_options(psi0, h, grid, projectors, hbar, EvolveOptions::default())
}

pub fn evolve_with_options(
    psi0: &StateVector,
    h: &Operator,
    grid: &TimeGrid,
    projectors: &[StateVector],
    hbar: f64,
    opts: EvolveOptions,
) -> Result<TimeSeries> {
    let refs: Vec<&StateVector> = projectors.iter().collect();
    check_evolution_inputs(psi0, h, &refs)?;
    let u = propagator(h, grid.dt(), hbar)?;

    let samples = grid.samples();
    let mut values = Array2::zeros((samples, projectors.len()));
    let mut psi = psi0.clone();
    for k in 0..samples {
        for (j, proj) in projectors.iter().enumerate() {
            values[[k, j]] = proj.inner(&psi)?.norm_sqr();
        }
        if k + 1 < samples {
            psi = u.apply(&psi)?;
            if opts.renormalize {
                psi = psi.normalized()?;
            }
        }
    }
    let labels = (0..projectors.len()).map(|j| format!("p{j}")).collect();
    TimeSeries::new(*grid, labels, values)
}

/// Evolves |ψ₀⟩ under H, recording Re⟨ψ(t)|O|ψ(t)⟩ at each sample. The
/// single column is labelled `obs`.
pub fn evolve_expectation(
    psi0: &StateVector,
    h: &Operator,
    grid: &TimeGrid,
    obs: &Operator,
    hbar: f64,
) -> Result<TimeSeries> {
    check_evolution_inputs(psi0, h, &[])?;
    if obs.space() != psi0.space() {
        return Err(Error::SpaceMismatch(
            "observable lives on a different space".into(),
        ));
    }
    let u = propagator(h, grid.dt(), hbar)?;

    let samples = grid.samples();
    let mut values = Array2::zeros((samples, 1));
    let mut psi = psi0.clone();
    for k in 0..samples {
        values[[k, 0]] = crate::observables::expectation(obs, &psi)?.re;
        if k + 1 < samples {
            psi = u.apply(&psi)?;
            psi = psi.normalized()?;
        }
    }
    TimeSeries::new(*grid, vec!["obs".into()], values)
}

/// Atomic inversion W(t) = e^{−|α|²} Σₙ |α|^{2n}/n! · cos(2gt√(n+1)),
/// truncated at `n_max`, with Poisson weights by recurrence.
pub fn atomic_inversion_analytic(alpha: C64, g: f64, t: f64, n_max: usize) -> f64 {
    let lam = alpha.norm_sqr();
    let mut w = (-lam).exp();
    let mut total = 0.0;
    for n in 0..=n_max {
        total += w * (2.0 * g * t * ((n + 1) as f64).sqrt()).cos();
        w *= lam / (n + 1) as f64;
    }
    total
}

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Closed-form coupled-cavity state e^{−iHt/ħ}|N−n, n⟩ over
/// FockSpace ⊗ FockSpace (both factors of dimension `field.dim()`):
///
///   e^{−iNωt} Σ_{k,k'} C(N−n,k)·C(n,k')·(cos Jt)^{N−(k+k')}·(−i sin Jt)^{k+k'}
///             · √(C(N,n)/C(N,n+k−k')) |N−(n+k−k'), n+k−k'⟩.
pub fn coupled_cavity_analytic(
    field: FockSpace,
    n_total: usize,
    n: usize,
    j: f64,
    omega: f64,
    t: f64,
) -> Result<StateVector> {
    if n > n_total {
        return Err(Error::Domain(format!(
            "initial occupation n = {n} exceeds total photon number N = {n_total}"
        )));
    }
    if n_total > field.dim() - 1 {
        return Err(Error::Domain(format!(
            "total photon number {} exceeds the per-mode truncation {}",
            n_total,
            field.dim() - 1
        )));
    }
    let space = crate::hilbert::CompositeSpace::pair(field, field);
    let mut amps = ndarray::Array1::<C64>::zeros(space.dim());

    let cos = (j * t).cos();
    let sin = (j * t).sin();
    let minus_i_sin = C64::new(0.0, -sin);
    let c_n = binomial(n_total, n);
    for k in 0..=(n_total - n) {
        for kp in 0..=n {
            let m = n + k - kp; // occupation of the second cavity
            let coeff = binomial(n_total - n, k)
                * binomial(n, kp)
                * cos.powi((n_total - (k + kp)) as i32)
                * (c_n / binomial(n_total, m)).sqrt();
            let amp = minus_i_sin.powu((k + kp) as u32) * coeff;
            let flat = space.flat_index(&[n_total - m, m])?;
            amps[flat] += amp;
        }
    }
    let phase = C64::new(0.0, -(n_total as f64) * omega * t).exp();
    amps.mapv_inplace(|z| z * phase);
    StateVector::new(space, amps)
}
