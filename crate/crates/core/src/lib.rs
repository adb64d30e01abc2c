//! Truncated-Fock-space quantum optics simulation.
//!
//! Everything here works on dense complex matrices over explicitly truncated
//! spaces: number/coherent/thermal/squeezed field states, ladder and Pauli
//! operators, Jaynes–Cummings and coupled-cavity Hamiltonians, photon
//! statistics (Pₙ, ⟨a†a⟩, g²(0)), exact closed-system propagation, two-mode
//! linear optics (beam splitter, phase shifter, Mach–Zehnder), and open
//! dynamics by both Lindblad/RK4 integration and the Monte-Carlo
//! wavefunction method with reproducible seeded streams.
//!
//! Truncation is a first-class concern: constructors return the raw
//! truncated series, and the norm/trace deficit they expose is the
//! diagnostic for whether a dimension is large enough
//! ([`stategen::truncation_check`]).

pub mod dissipative;
pub mod dynamics;
pub mod error;
pub mod hilbert;
pub mod interferometry;
pub mod numerics;
pub mod observables;
pub mod operators;
pub mod stategen;

pub use error::{Error, Result};
