//! Dense linear-algebra kernels and the seedable random-number stream.
//!
//! Matrix exponentials route through a Hermitian eigendecomposition wherever
//! the exponent is (anti-)Hermitian — which covers every propagator and
//! beam-splitter unitary in this crate — so the result is unitary up to the
//! orthonormality error of the eigenbasis. A scaling-and-squaring fallback
//! handles the one genuinely non-Hermitian exponent (the exact
//! non-Hermitian drift stepper in [`crate::dissipative`]).
//!
//! # Random-number stream
//!
//! [`RngStream`] is a counter-based generator: output k is
//!
//! ```text
//! out_k = mix64(key + (k+1)·0x9E3779B97F4A7C15)        (wrapping u64)
//! ```
//!
//! where `mix64` is the SplitMix64 finalizer
//!
//! ```text
//! z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
//! z ^= z >> 27; z *= 0x94D049BB133111EB;
//! z ^= z >> 31;
//! ```
//!
//! Independent streams come from one master seed through
//! [`stream_derive`]`(master, i) = mix64(master ^ mix64((i+1)·0x9E3779B97F4A7C15))`.
//! Uniform variates keep the top 53 bits: `(out_k >> 11) · 2⁻⁵³ ∈ [0, 1)`.
//! The same (master seed, stream index) always reproduces the same sequence
//! on every platform; streams are single-owner and not `Clone` —
//! derivation is the only fan-out mechanism.

use nalgebra::DMatrix;
use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::operators::Operator;

/// Hermiticity tolerance accepted by [`hermitian_eig`].
pub const EIG_HERMITICITY_TOL: f64 = 1e-8;

/// Full spectrum and orthonormal eigenbasis of a Hermitian operator.
///
/// `values` are ascending; column k of `vectors` is the eigenvector of
/// `values[k]`.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Array1<f64>,
    pub vectors: Array2<C64>,
}

/// Eigendecomposition of a Hermitian operator, ascending eigenvalue order.
///
/// The input is symmetrized as (A + A†)/2 before factorization; inputs
/// farther than [`EIG_HERMITICITY_TOL`] from Hermitian are rejected.
pub fn hermitian_eig(a: &Operator) -> Result<EigenDecomposition> {
    let asym = a.hermiticity_error();
    if asym > EIG_HERMITICITY_TOL {
        return Err(Error::NotHermitian(asym));
    }
    let d = a.dim();
    let m = a.entries();
    let sym = DMatrix::from_fn(d, d, |i, j| 0.5 * (m[[i, j]] + m[[j, i]].conj()));
    let eig = sym.symmetric_eigen();

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));

    let values = Array1::from_iter(order.iter().map(|&k| eig.eigenvalues[k]));
    let mut vectors = Array2::zeros((d, d));
    for (col, &k) in order.iter().enumerate() {
        for row in 0..d {
            vectors[[row, col]] = eig.eigenvectors[(row, k)];
        }
    }
    Ok(EigenDecomposition { values, vectors })
}

/// exp(s·H) for Hermitian H: V·diag(e^{s·λ})·V†. With purely imaginary `s`
/// this is the unitary propagator construction.
pub fn unitary_exp(h: &Operator, s: C64) -> Result<Operator> {
    let eig = hermitian_eig(h)?;
    let d = h.dim();
    // W = V·diag(e^{sλ}), then W·V†.
    let mut w = eig.vectors.clone();
    for (k, &lam) in eig.values.iter().enumerate() {
        let phase = (s * lam).exp();
        for row in 0..d {
            w[[row, k]] *= phase;
        }
    }
    let mut out = Array2::zeros((d, d));
    for i in 0..d {
        for j in 0..d {
            let mut acc = C64::new(0.0, 0.0);
            for k in 0..d {
                acc += w[[i, k]] * eig.vectors[[j, k]].conj();
            }
            out[[i, j]] = acc;
        }
    }
    Operator::new(h.space().clone(), out)
}

/// exp(A) for an arbitrary square matrix via scaling and squaring with a
/// Taylor series on the scaled matrix. General fallback for non-Hermitian
/// exponents; prefer [`unitary_exp`] when the exponent is Hermitian.
pub fn general_exp(a: &Operator) -> Operator {
    let d = a.dim();
    let norm = a.max_abs() * d as f64; // crude upper bound on the 1-norm
    let mut squarings = 0u32;
    let mut scale = 1.0;
    while norm * scale > 0.25 && squarings < 40 {
        squarings += 1;
        scale *= 0.5;
    }
    let b = a.scale(C64::new(scale, 0.0));

    // Taylor: Σ B^k / k!. Terms shrink at least geometrically (ratio ≤ 1/4),
    // so 24 terms reach well below double precision.
    let mut result = Array2::<C64>::eye(d);
    let mut term = Array2::<C64>::eye(d);
    for k in 1..=24 {
        term = term.dot(b.entries());
        term.mapv_inplace(|z| z / k as f64);
        result = &result + &term;
    }
    for _ in 0..squarings {
        result = result.dot(&result);
    }
    Operator::new(a.space().clone(), result).expect("shape preserved")
}

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Key of stream `index` under `master_seed`. Fixed integer mixing; the only
/// sanctioned way to fan a master seed out to independent streams.
pub fn stream_derive(master_seed: u64, index: u64) -> u64 {
    mix64(master_seed ^ mix64(index.wrapping_add(1).wrapping_mul(GOLDEN)))
}

/// Counter-based uniform generator; see the module docs for the exact
/// mixing function. Not `Clone`; [`stream_derive`] is the fan-out mechanism.
#[derive(Debug)]
pub struct RngStream {
    key: u64,
    counter: u64,
}

impl RngStream {
    /// Stream with an explicit key.
    pub fn new(key: u64) -> Self {
        RngStream { key, counter: 0 }
    }

    /// Stream `index` of `master_seed`.
    pub fn derived(master_seed: u64, index: u64) -> Self {
        RngStream::new(stream_derive(master_seed, index))
    }

    /// Next raw 64-bit output.
    pub fn next_u64(&mut self) -> u64 {
        self.counter = self.counter.wrapping_add(1);
        mix64(self.key.wrapping_add(self.counter.wrapping_mul(GOLDEN)))
    }

    /// Next uniform variate in [0, 1) with 53-bit resolution.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0)
    }
}
