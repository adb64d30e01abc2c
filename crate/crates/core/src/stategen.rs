//! Constructors for the named field states, plus the truncation diagnostic.
//!
//! All amplitude series are evaluated by multiplicative recurrence rather
//! than explicit factorials, which stays exact to roundoff at any truncation
//! (naive n! leaves double range near n = 171). Constructors return the raw
//! truncated series without renormalizing — the norm deficit is the
//! truncation diagnostic — except the number-state-filtered coherent state,
//! whose definition includes its own normalization constant.

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::hilbert::{DensityMatrix, FockSpace, QubitSpace, StateVector};
use crate::observables::StateRef;

/// Outcome of the norm/trace truncation check.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncationReport {
    /// Dimension of the state that was checked.
    pub requested_dim: usize,
    /// 1 − norm for pure states, 1 − trace for mixed states.
    pub norm_or_trace_deficit: f64,
    /// Whether the deficit is at or below the supplied tolerance.
    pub adequate: bool,
}

/// Coherent state |α⟩ truncated to the space dimension:
/// cₙ = e^{−|α|²/2} αⁿ/√n!, via the recurrence c_{n+1} = cₙ·α/√(n+1).
/// Not renormalized.
pub fn coherent_state(space: FockSpace, alpha: C64) -> StateVector {
    let d = space.dim();
    let mut amps = Array1::zeros(d);
    let mut c = C64::new((-alpha.norm_sqr() / 2.0).exp(), 0.0);
    for n in 0..d {
        amps[n] = c;
        c *= alpha / ((n + 1) as f64).sqrt();
    }
    StateVector::new(space, amps).expect("length matches by construction")
}

/// Thermal state: diagonal pₙ = n_thⁿ/(1+n_th)^{n+1}. Not renormalized.
pub fn thermal_state(space: FockSpace, n_th: f64) -> Result<DensityMatrix> {
    if n_th < 0.0 {
        return Err(Error::Domain(format!(
            "thermal mean photon number must be non-negative, got {n_th}"
        )));
    }
    let d = space.dim();
    let mut m = Array2::zeros((d, d));
    let ratio = n_th / (1.0 + n_th);
    let mut p = 1.0 / (1.0 + n_th);
    for n in 0..d {
        m[[n, n]] = C64::new(p, 0.0);
        p *= ratio;
    }
    DensityMatrix::new(space, m)
}

/// Squeezed vacuum |ξ⟩: even-index amplitudes
/// (1/√cosh r)(−1)ⁿ(√(2n)!/(2ⁿn!)) e^{inθ} tanhⁿ r at index 2n, odd indices
/// exactly zero. The factorial ratio follows the recurrence
/// fₙ₊₁/fₙ = √((2n+1)/(2n+2)). Not renormalized.
pub fn squeezed_vacuum(space: FockSpace, r: f64, theta: f64) -> Result<StateVector> {
    if r < 0.0 {
        return Err(Error::Domain(format!(
            "squeeze magnitude must be non-negative, got {r}"
        )));
    }
    let d = space.dim();
    let mut amps = Array1::zeros(d);
    let step = -C64::from_polar(1.0, theta) * r.tanh();
    let mut c = C64::new(1.0 / r.cosh().sqrt(), 0.0);
    let mut n = 0usize;
    while 2 * n < d {
        amps[2 * n] = c;
        let tn = (2 * n) as f64;
        c *= step * ((tn + 1.0) / (tn + 2.0)).sqrt();
        n += 1;
    }
    StateVector::new(space, amps)
}

/// Number-state-filtered coherent state: the coherent series with the
/// index-`m` term removed, then normalized. `amplitudes[m]` is exactly zero.
pub fn nsfcs(space: FockSpace, alpha: C64, m: usize) -> Result<StateVector> {
    if m >= space.dim() {
        return Err(Error::IndexOutOfRange {
            index: m,
            dim: space.dim(),
        });
    }
    let mut raw = coherent_state(space, alpha);
    raw.amplitudes_mut()[m] = C64::new(0.0, 0.0);
    raw.normalized()
}

/// Atomic superposition α|e⟩ + β|g⟩; requires |α|² + |β|² = 1 within 1e-10.
pub fn atom_state(alpha_e: C64, beta_g: C64) -> Result<StateVector> {
    let norm_sq = alpha_e.norm_sqr() + beta_g.norm_sqr();
    if (norm_sq - 1.0).abs() > 1e-10 {
        return Err(Error::Precondition(format!(
            "atom state must satisfy |alpha|^2 + |beta|^2 = 1, got {norm_sq}"
        )));
    }
    StateVector::new(QubitSpace, Array1::from(vec![alpha_e, beta_g]))
}

/// Norm/trace deficit of a truncated state against a tolerance. A deficit
/// above the tolerance means the dimension should be increased before any
/// further calculation.
pub fn truncation_check<'a>(state: impl Into<StateRef<'a>>, tolerance: f64) -> TruncationReport {
    let state = state.into();
    let (dim, deficit) = match state {
        StateRef::Pure(psi) => (psi.dim(), 1.0 - psi.norm()),
        StateRef::Mixed(rho) => (rho.dim(), 1.0 - rho.trace().re),
    };
    TruncationReport {
        requested_dim: dim,
        norm_or_trace_deficit: deficit,
        adequate: deficit <= tolerance,
    }
}
