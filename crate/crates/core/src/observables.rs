//! Measurement-side quantities: expectation values, photon-number
//! distributions, and the zero-delay second-order coherence g²(0).

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::hilbert::{DensityMatrix, Space, StateVector};
use crate::operators::{annihilation, creation, Operator};

/// Borrowed view over either a pure or a mixed state, so the quantities in
/// this module accept both.
#[derive(Debug, Clone, Copy)]
pub enum StateRef<'a> {
    Pure(&'a StateVector),
    Mixed(&'a DensityMatrix),
}

impl<'a> StateRef<'a> {
    pub fn space(&self) -> &'a Space {
        match self {
            StateRef::Pure(psi) => psi.space(),
            StateRef::Mixed(rho) => rho.space(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            StateRef::Pure(psi) => psi.dim(),
            StateRef::Mixed(rho) => rho.dim(),
        }
    }
}

impl<'a> From<&'a StateVector> for StateRef<'a> {
    fn from(psi: &'a StateVector) -> Self {
        StateRef::Pure(psi)
    }
}

impl<'a> From<&'a DensityMatrix> for StateRef<'a> {
    fn from(rho: &'a DensityMatrix) -> Self {
        StateRef::Mixed(rho)
    }
}

/// Photon-number (basis-index) probabilities of a state. Entries may sum to
/// less than one under truncation; they are not renormalized.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    probabilities: Vec<f64>,
}

impl Distribution {
    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn total(&self) -> f64 {
        self.probabilities.iter().sum()
    }
}

/// ⟨ψ|O|ψ⟩ for pure states, Tr(Oρ) for mixed states. Returns the raw
/// complex value; callers take the real part for Hermitian observables.
pub fn expectation<'a>(op: &Operator, state: impl Into<StateRef<'a>>) -> Result<C64> {
    let state = state.into();
    if op.space() != state.space() {
        return Err(Error::SpaceMismatch(
            "expectation value between operator and state on different spaces".into(),
        ));
    }
    match state {
        StateRef::Pure(psi) => {
            let opsi = op.entries().dot(psi.amplitudes());
            Ok(psi
                .amplitudes()
                .iter()
                .zip(opsi.iter())
                .map(|(a, b)| a.conj() * b)
                .sum())
        }
        StateRef::Mixed(rho) => {
            // Tr(Oρ) = Σ_i (Oρ)_{ii}; only the diagonal is needed.
            let d = rho.dim();
            let mut acc = C64::new(0.0, 0.0);
            for i in 0..d {
                for k in 0..d {
                    acc += op.entries()[[i, k]] * rho.entries()[[k, i]];
                }
            }
            Ok(acc)
        }
    }
}

/// Pₙ = |⟨n|ψ⟩|² for pure states, ρₙₙ for mixed states.
pub fn photon_distribution<'a>(state: impl Into<StateRef<'a>>) -> Distribution {
    let probabilities = match state.into() {
        StateRef::Pure(psi) => psi.amplitudes().iter().map(|a| a.norm_sqr()).collect(),
        StateRef::Mixed(rho) => rho.entries().diag().iter().map(|z| z.re).collect(),
    };
    Distribution { probabilities }
}

/// g²(0) = ⟨a†²a²⟩ / ⟨a†a⟩², with the ladder operators built on the state's
/// own Fock space. The vacuum (zero mean photon number) has no defined value.
pub fn g2_zero<'a>(state: impl Into<StateRef<'a>>) -> Result<f64> {
    let state = state.into();
    let fock = match state.space() {
        Space::Fock(f) => *f,
        other => {
            return Err(Error::SpaceMismatch(format!(
                "g2 requires a single-mode Fock state, got a space of dimension {}",
                other.dim()
            )))
        }
    };
    let a = annihilation(fock);
    let ad = creation(fock);
    let ada = &ad * &a;
    let ad2a2 = &(&ad * &ada) * &a; // a†(a†a)a = a†²a²

    let mean = expectation(&ada, state)?.re;
    if mean <= 0.0 {
        return Err(Error::UndefinedStatistic(
            "g2(0) is 0/0 for a state with zero mean photon number".into(),
        ));
    }
    let second = expectation(&ad2a2, state)?.re;
    Ok(second / (mean * mean))
}

/// Convenience: ⟨a†a⟩ on the state's own Fock space.
pub fn mean_photon_number<'a>(state: impl Into<StateRef<'a>>) -> Result<f64> {
    let state = state.into();
    let fock = match state.space() {
        Space::Fock(f) => *f,
        other => {
            return Err(Error::SpaceMismatch(format!(
                "mean photon number requires a single-mode Fock state, got dimension {}",
                other.dim()
            )))
        }
    };
    let n = crate::operators::number_operator(fock);
    Ok(expectation(&n, state)?.re)
}
