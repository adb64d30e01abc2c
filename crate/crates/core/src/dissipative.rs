//! Open-system solvers: the Lindblad master equation under classic RK4, and
//! the Monte-Carlo wavefunction (quantum-jump) unraveling.
//!
//! # Master equation
//!
//! dρ/dt = (1/iħ)[H, ρ] + Σ_c (rate_c/2)(2 L_c ρ L_c† − ρ L_c†L_c − L_c†L_c ρ)
//!
//! integrated with the classic four-stage Runge–Kutta scheme. The right-hand
//! side is exactly traceless and Hermiticity-preserving, so RK4 preserves
//! the trace to roundoff by linearity.
//!
//! # Quantum jumps
//!
//! Each step of a trajectory drifts the state under the non-Hermitian
//! Hamiltonian H_NH = H − i(ħ/2)·Σ_c rate_c L_c†L_c, by default through the
//! first-order map ψ_NH = (I − i·δt·H_NH/ħ)ψ. The missing norm
//! δp = 1 − ⟨ψ_NH|ψ_NH⟩ is compared against a uniform draw r: if r > δp no
//! jump occurs and ψ_NH is renormalized; otherwise a jump fires — channel c
//! is selected with probability ∝ rate_c·⟨ψ|L_c†L_c|ψ⟩ and the state is
//! replaced by L_c ψ/‖L_c ψ‖. The jump is applied to the pre-step state by
//! default ([`JumpTarget::PreStep`]); [`JumpTarget::PostDrift`] applies it
//! to ψ_NH instead — the two differ at O(δt). The first-order drift is only
//! valid while δp stays small, which is enforced: any step with
//! δp > `max_dp` aborts with an error naming the offending time. An exact
//! exponential drift stepper is available as an opt-in for convergence
//! studies.
//!
//! Trajectories are embarrassingly parallel. Trajectory `i` draws from the
//! stream keyed by `stream_derive(master_seed, i)` and the ensemble
//! reduction runs in ascending trajectory order, so results are bitwise
//! independent of the thread schedule.

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hilbert::{DensityMatrix, StateVector};
use crate::numerics::{general_exp, stream_derive, RngStream};
use crate::operators::Operator;
use crate::dynamics::{TimeGrid, TimeSeries};

/// A jump operator together with its decay rate (κ or γ).
#[derive(Debug, Clone)]
pub struct DecayChannel {
    op: Operator,
    rate: f64,
}

impl DecayChannel {
    pub fn new(op: Operator, rate: f64) -> Result<Self> {
        if rate < 0.0 {
            return Err(Error::Domain(format!(
                "decay rate must be non-negative, got {rate}"
            )));
        }
        Ok(DecayChannel { op, rate })
    }

    pub fn op(&self) -> &Operator {
        &self.op
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }
}

/// One stochastic realization: its sampled series, jump times, and seed.
#[derive(Debug, Clone)]
pub struct TrajectoryRecord {
    pub series: TimeSeries,
    pub jump_times: Vec<f64>,
    pub seed: u64,
}

/// Ensemble mean and standard error over `n_traj` trajectories.
#[derive(Debug, Clone)]
pub struct EnsembleResult {
    pub mean: TimeSeries,
    pub stderr: TimeSeries,
    pub n_traj: usize,
    pub master_seed: u64,
}

struct ChannelPre {
    l: Array2<C64>,
    l_dag: Array2<C64>,
    ldl: Array2<C64>,
    rate: f64,
}

fn precompute_channels(channels: &[DecayChannel]) -> Vec<ChannelPre> {
    channels
        .iter()
        .map(|c| {
            let l = c.op.entries().clone();
            let l_dag = c.op.adjoint().entries().clone();
            let ldl = l_dag.dot(&l);
            ChannelPre {
                l,
                l_dag,
                ldl,
                rate: c.rate,
            }
        })
        .collect()
}

fn rhs_raw(h: &Array2<C64>, channels: &[ChannelPre], rho: &Array2<C64>, hbar: f64) -> Array2<C64> {
    let comm = h.dot(rho) - rho.dot(h);
    let mut out = comm.mapv(|z| z * C64::new(0.0, -1.0 / hbar));
    for c in channels {
        if c.rate == 0.0 {
            continue;
        }
        let sandwich = c.l.dot(rho).dot(&c.l_dag);
        let left = c.ldl.dot(rho);
        let right = rho.dot(&c.ldl);
        let half_rate = 0.5 * c.rate;
        out = out + (sandwich.mapv(|z| z * 2.0) - left - right).mapv(|z| z * half_rate);
    }
    out
}

fn check_channel_spaces(h: &Operator, channels: &[DecayChannel]) -> Result<()> {
    for c in channels {
        if c.op.space() != h.space() {
            return Err(Error::SpaceMismatch(
                "decay channel operator lives on a different space than H".into(),
            ));
        }
    }
    Ok(())
}

/// Lindblad right-hand side evaluated at ρ. The result is traceless and
/// Hermitian for Hermitian input.
pub fn lindblad_rhs(
    h: &Operator,
    channels: &[DecayChannel],
    rho: &DensityMatrix,
    hbar: f64,
) -> Result<Array2<C64>> {
    if rho.space() != h.space() {
        return Err(Error::SpaceMismatch(
            "density matrix lives on a different space than H".into(),
        ));
    }
    check_channel_spaces(h, channels)?;
    let pre = precompute_channels(channels);
    Ok(rhs_raw(h.entries(), &pre, rho.entries(), hbar))
}

/// One classic RK4 step of ρ under the supplied derivative evaluator.
pub fn rk4_step(
    rho: &DensityMatrix,
    dt: f64,
    rhs: impl Fn(&Array2<C64>) -> Array2<C64>,
) -> DensityMatrix {
    let next = rk4_step_raw(rho.entries(), dt, &rhs);
    DensityMatrix::new(rho.space().clone(), next).expect("shape preserved by RK4")
}

fn rk4_step_raw(
    rho: &Array2<C64>,
    dt: f64,
    rhs: &impl Fn(&Array2<C64>) -> Array2<C64>,
) -> Array2<C64> {
    let k1 = rhs(rho);
    let k2 = rhs(&(rho + &k1.mapv(|z| z * (0.5 * dt))));
    let k3 = rhs(&(rho + &k2.mapv(|z| z * (0.5 * dt))));
    let k4 = rhs(&(rho + &k3.mapv(|z| z * dt)));
    rho + &(k1 + k2.mapv(|z| z * 2.0) + k3.mapv(|z| z * 2.0) + k4).mapv(|z| z * (dt / 6.0))
}

/// Integrates the master equation, recording ⟨proj|ρ(t)|proj⟩ per sample.
/// Columns are labelled `p0`, `p1`, … in projector order.
pub fn integrate_master(
    rho0: &DensityMatrix,
    h: &Operator,
    channels: &[DecayChannel],
    grid: &TimeGrid,
    projectors: &[StateVector],
    hbar: f64,
) -> Result<TimeSeries> {
    integrate_master_observed(rho0, h, channels, grid, projectors, hbar, |_, _, _| {})
}

/// [`integrate_master`] with a per-sample observer for extra diagnostics
/// (trace, Hermiticity, reduced states) without re-running the solve.
pub fn integrate_master_observed(
    rho0: &DensityMatrix,
    h: &Operator,
    channels: &[DecayChannel],
    grid: &TimeGrid,
    projectors: &[StateVector],
    hbar: f64,
    mut observe: impl FnMut(usize, f64, &DensityMatrix),
) -> Result<TimeSeries> {
    if rho0.space() != h.space() {
        return Err(Error::SpaceMismatch(
            "initial density matrix lives on a different space than H".into(),
        ));
    }
    check_channel_spaces(h, channels)?;
    for p in projectors {
        if p.space() != h.space() {
            return Err(Error::SpaceMismatch(
                "projector lives on a different space than H".into(),
            ));
        }
    }
    let trace = rho0.trace();
    if (trace.re - 1.0).abs() > 1e-8 || trace.im.abs() > 1e-8 {
        return Err(Error::Precondition(format!(
            "initial density matrix must have unit trace, got {trace}"
        )));
    }
    if rho0.hermiticity_error() > 1e-8 {
        return Err(Error::Precondition(
            "initial density matrix must be Hermitian".into(),
        ));
    }

    let pre = precompute_channels(channels);
    let h_entries = h.entries().clone();
    let rhs = move |r: &Array2<C64>| rhs_raw(&h_entries, &pre, r, hbar);

    let samples = grid.samples();
    let dt = grid.dt();
    let mut values = Array2::zeros((samples, projectors.len()));
    let mut rho = rho0.clone();
    for k in 0..samples {
        for (j, proj) in projectors.iter().enumerate() {
            let sandwiched = rho.entries().dot(proj.amplitudes());
            let val: C64 = proj
                .amplitudes()
                .iter()
                .zip(sandwiched.iter())
                .map(|(a, b)| a.conj() * b)
                .sum();
            values[[k, j]] = val.re;
        }
        let tr = rho.trace();
        if (tr.re - 1.0).abs() > 1e-8 {
            return Err(Error::NumericalDrift(format!(
                "trace drifted to {} at t = {}",
                tr.re,
                k as f64 * dt
            )));
        }
        observe(k, k as f64 * dt, &rho);
        if k + 1 < samples {
            rho = rk4_step(&rho, dt, &rhs);
        }
    }
    let labels = (0..projectors.len()).map(|j| format!("p{j}")).collect();
    TimeSeries::new(*grid, labels, values)
}

/// Which state a quantum jump is applied to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum JumpTarget {
    /// The pre-step state ψ(0) — the textbook rule; default.
    #[default]
    PreStep,
    /// The drifted state ψ_NH, differing at O(δt).
    PostDrift,
}

/// Drift stepper for the non-Hermitian evolution between jumps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum McwfStepper {
    /// ψ_NH = (I − i·δt·H_NH/ħ)ψ; requires δp ≪ 1. Default.
    #[default]
    FirstOrder,
    /// ψ_NH = exp(−i·δt·H_NH/ħ)ψ; opt-in for convergence studies.
    Exact,
}

/// Knobs for the quantum-jump steppers.
#[derive(Debug, Clone, Copy)]
pub struct McwfOptions {
    pub jump_target: JumpTarget,
    pub stepper: McwfStepper,
    /// Largest tolerated per-step jump probability before aborting.
    pub max_dp: f64,
}

impl Default for McwfOptions {
    fn default() -> Self {
        McwfOptions {
            jump_target: JumpTarget::default(),
            stepper: McwfStepper::default(),
            max_dp: 0.1,
        }
    }
}

struct McwfEngine {
    step_op: Array2<C64>,
    channels: Vec<ChannelPre>,
    projectors: Vec<Array1<C64>>,
    dt: f64,
    samples: usize,
    max_dp: f64,
    jump_target: JumpTarget,
}

fn build_engine(
    psi0: &StateVector,
    h: &Operator,
    channels: &[DecayChannel],
    grid: &TimeGrid,
    projectors: &[StateVector],
    hbar: f64,
    opts: &McwfOptions,
) -> Result<McwfEngine> {
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
    check_channel_spaces(h, channels)?;
    for p in projectors {
        if p.space() != psi0.space() {
            return Err(Error::SpaceMismatch(
                "projector lives on a different space than the state".into(),
            ));
        }
    }

    let pre = precompute_channels(channels);
    let d = h.dim();
    // H_NH = H − i(ħ/2)·Σ rate·L†L
    let mut h_nh = h.entries().mapv(|z| z * C64::new(0.0, -1.0 / hbar));
    for c in &pre {
        h_nh = h_nh + c.ldl.mapv(|z| z * (-0.5 * c.rate));
    }
    // h_nh now holds −i·H_NH/ħ.
    let step_op = match opts.stepper {
        McwfStepper::FirstOrder => Array2::eye(d) + h_nh.mapv(|z| z * grid.dt()),
        McwfStepper::Exact => {
            let exponent = Operator::new(h.space().clone(), h_nh.mapv(|z| z * grid.dt()))?;
            general_exp(&exponent).entries().clone()
        }
    };

    Ok(McwfEngine {
        step_op,
        channels: pre,
        projectors: projectors.iter().map(|p| p.amplitudes().clone()).collect(),
        dt: grid.dt(),
        samples: grid.samples(),
        max_dp: opts.max_dp,
        jump_target: opts.jump_target,
    })
}

fn quadrance(v: &Array1<C64>) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

fn run_trajectory(
    engine: &McwfEngine,
    psi0: &Array1<C64>,
    seed: u64,
) -> Result<(Array2<f64>, Vec<f64>)> {
    let mut rng = RngStream::new(seed);
    let mut psi = psi0.clone();
    let mut values = Array2::zeros((engine.samples, engine.projectors.len()));
    let mut jump_times = Vec::new();

    for k in 0..engine.samples {
        for (j, proj) in engine.projectors.iter().enumerate() {
            let overlap: C64 = proj
                .iter()
                .zip(psi.iter())
                .map(|(p, a)| p.conj() * a)
                .sum();
            values[[k, j]] = overlap.norm_sqr();
        }
        if k + 1 == engine.samples {
            break;
        }

        let psi_nh = engine.step_op.dot(&psi);
        let nsq = quadrance(&psi_nh);
        let dp = 1.0 - nsq;
        if dp > engine.max_dp {
            return Err(Error::StepTooLarge {
                t: k as f64 * engine.dt,
                dp,
                max: engine.max_dp,
            });
        }

        let r = rng.uniform();
        if r > dp {
            let inv = 1.0 / nsq.sqrt();
            psi = psi_nh.mapv(|z| z * inv);
        } else {
            let target = match engine.jump_target {
                JumpTarget::PreStep => &psi,
                JumpTarget::PostDrift => &psi_nh,
            };
            let weights: Vec<f64> = engine
                .channels
                .iter()
                .map(|c| {
                    let ldl_t = c.ldl.dot(target);
                    let ex: C64 = target
                        .iter()
                        .zip(ldl_t.iter())
                        .map(|(a, b)| a.conj() * b)
                        .sum();
                    c.rate * ex.re
                })
                .collect();
            let total: f64 = weights.iter().sum();
            if total <= 0.0 {
                // No channel can fire (δp was pure roundoff): treat as no-jump.
                let inv = 1.0 / nsq.sqrt();
                psi = psi_nh.mapv(|z| z * inv);
            } else {
                let mut pick = engine.channels.len() - 1;
                if engine.channels.len() > 1 {
                    let draw = rng.uniform() * total;
                    let mut cum = 0.0;
                    for (c, w) in weights.iter().enumerate() {
                        cum += w;
                        if draw < cum {
                            pick = c;
                            break;
                        }
                    }
                }
                let jumped = engine.channels[pick].l.dot(target);
                let jn = quadrance(&jumped).sqrt();
                if jn == 0.0 {
                    return Err(Error::NumericalDrift(format!(
                        "jump operator annihilated the state at t = {}",
                        k as f64 * engine.dt
                    )));
                }
                psi = jumped.mapv(|z| z / jn);
                jump_times.push((k + 1) as f64 * engine.dt);
            }
        }
    }
    Ok((values, jump_times))
}

/// One quantum trajectory with the default options (first-order drift,
/// pre-step jump target, δp guard at 0.1).
pub fn mcwf_trajectory(
    psi0: &StateVector,
    h: &Operator,
    channels: &[DecayChannel],
    grid: &TimeGrid,
    projectors: &[StateVector],
    seed: u64,
    hbar: f64,
) -> Result<TrajectoryRecord> {
    mcwf_trajectory_with(
        psi0,
        h,
        channels,
        grid,
        projectors,
        seed,
        hbar,
        &McwfOptions::default(),
    )
}

#[allow(clippy::too_many_arguments)]
pub fn mcwf_trajectory_with(
    psi0: &StateVector,
    h: &Operator,
    channels: &[DecayChannel],
    grid: &TimeGrid,
    projectors: &[StateVector],
    seed: u64,
    hbar: f64,
    opts: &McwfOptions,
) -> Result<TrajectoryRecord> {
    let engine = build_engine(psi0, h, channels, grid, projectors, hbar, opts)?;
    let (values, jump_times) = run_trajectory(&engine, psi0.amplitudes(), seed)?;
    let labels = (0..projectors.len()).map(|j| format!("p{j}")).collect();
    Ok(TrajectoryRecord {
        series: TimeSeries::new(*grid, labels, values)?,
        jump_times,
        seed,
    })
}

/// Trajectories processed in parallel batches of this size; the reduction
/// itself walks batches in ascending trajectory order.
const ENSEMBLE_CHUNK: usize = 32;

/// Ensemble mean and standard error over `n_traj` trajectories. Trajectory
/// `i` is seeded with `stream_derive(master_seed, i)`; the reduction order
/// is fixed, so the result is bitwise independent of the thread count.
#[allow(clippy::too_many_arguments)]
pub fn mcwf_ensemble(
    psi0: &StateVector,
    h: &Operator,
    channels: &[DecayChannel],
    grid: &TimeGrid,
    projectors: &[StateVector],
    n_traj: usize,
    master_seed: u64,
    hbar: f64,
) -> Result<EnsembleResult> {
    mcwf_ensemble_with(
        psi0,
        h,
        channels,
        grid,
        projectors,
        n_traj,
        master_seed,
        hbar,
        &McwfOptions::default(),
    )
}

#[allow(clippy::too_many_arguments)]
pub fn mcwf_ensemble_with(
    psi0: &StateVector,
    h: &Operator,
    channels: &[DecayChannel],
    grid: &TimeGrid,
    projectors: &[StateVector],
    n_traj: usize,
    master_seed: u64,
    hbar: f64,
    opts: &McwfOptions,
) -> Result<EnsembleResult> {
    if n_traj == 0 {
        return Err(Error::Domain("ensemble needs at least one trajectory".into()));
    }
    let engine = build_engine(psi0, h, channels, grid, projectors, hbar, opts)?;
    let samples = grid.samples();
    let cols = projectors.len();

    // Welford accumulation in ascending trajectory order.
    let mut count = 0usize;
    let mut mean = Array2::<f64>::zeros((samples, cols));
    let mut m2 = Array2::<f64>::zeros((samples, cols));

    let mut start = 0usize;
    while start < n_traj {
        let end = (start + ENSEMBLE_CHUNK).min(n_traj);
        let batch: Vec<Array2<f64>> = (start..end)
            .into_par_iter()
            .map(|i| {
                run_trajectory(&engine, psi0.amplitudes(), stream_derive(master_seed, i as u64))
                    .map(|(values, _)| values)
            })
            .collect::<Result<Vec<_>>>()?;
        for values in batch {
            count += 1;
            let inv = 1.0 / count as f64;
            for s in 0..samples {
                for c in 0..cols {
                    let x = values[[s, c]];
                    let delta = x - mean[[s, c]];
                    mean[[s, c]] += delta * inv;
                    m2[[s, c]] += delta * (x - mean[[s, c]]);
                }
            }
        }
        start = end;
    }

    let stderr = if n_traj > 1 {
        let denom = (n_traj * (n_traj - 1)) as f64;
        m2.mapv(|v| (v / denom).sqrt())
    } else {
        Array2::zeros((samples, cols))
    };

    let labels: Vec<String> = (0..cols).map(|j| format!("p{j}")).collect();
    Ok(EnsembleResult {
        mean: TimeSeries::new(*grid, labels.clone(), mean)?,
        stderr: TimeSeries::new(*grid, labels, stderr)?,
        n_traj,
        master_seed,
    })
}
