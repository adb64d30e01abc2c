//! Space descriptors, state containers, tensor composition, and partial trace.
//!
//! Every state and operator in this crate is tagged with the space it lives
//! on. A [`FockSpace`] of dimension `d` spans the number states |0⟩…|d−1⟩; a
//! [`QubitSpace`] is the fixed two-level atom basis with |e⟩ at index 0 and
//! |g⟩ at index 1. Composite systems are ordered tensor products: the flat
//! index of |n₁,…,n_k⟩ is the mixed-radix value with the first factor most
//! significant, i.e. `index(|n₁,n₂⟩) = n₁·d₂ + n₂`.

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Normalization tolerance: a state flagged normalized has |norm − 1| ≤ this.
pub const NORM_TOL: f64 = 1e-10;
/// Elementwise Hermiticity tolerance for density matrices.
pub const HERMITICITY_TOL: f64 = 1e-10;
/// Eigenvalue floor for positive-semidefiniteness checks.
pub const PSD_FLOOR: f64 = -1e-8;

/// Truncated bosonic mode with basis |0⟩…|dim−1⟩.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockSpace {
    dim: usize,
}

impl FockSpace {
    /// Builds a Fock-space descriptor of truncation dimension `d ≥ 1`.
    pub fn new(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidDimension(
                "Fock space needs dimension >= 1".into(),
            ));
        }
        Ok(FockSpace { dim: d })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// Two-level atom; |e⟩ ↦ index 0, |g⟩ ↦ index 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct QubitSpace;

impl QubitSpace {
    pub const DIM: usize = 2;
    /// Basis index of the excited state |e⟩.
    pub const EXCITED: usize = 0;
    /// Basis index of the ground state |g⟩.
    pub const GROUND: usize = 1;
}

/// One tensor factor of a composite space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    Fock(FockSpace),
    Qubit(QubitSpace),
}

impl Factor {
    pub fn dim(&self) -> usize {
        match self {
            Factor::Fock(f) => f.dim(),
            Factor::Qubit(_) => QubitSpace::DIM,
        }
    }
}

impl From<FockSpace> for Factor {
    fn from(f: FockSpace) -> Self {
        Factor::Fock(f)
    }
}

impl From<QubitSpace> for Factor {
    fn from(q: QubitSpace) -> Self {
        Factor::Qubit(q)
    }
}

/// Ordered tensor product of factors; the first factor is the leftmost
/// (most significant) Kronecker slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositeSpace {
    factors: Vec<Factor>,
}

impl CompositeSpace {
    pub fn new(factors: Vec<Factor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidDimension(
                "composite space needs at least one factor".into(),
            ));
        }
        Ok(CompositeSpace { factors })
    }

    /// Two-factor convenience constructor.
    pub fn pair(a: impl Into<Factor>, b: impl Into<Factor>) -> Self {
        CompositeSpace {
            factors: vec![a.into(), b.into()],
        }
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(|f| f.dim()).product()
    }

    /// Mixed-radix flat index of a basis assignment, first factor most
    /// significant.
    pub fn flat_index(&self, indices: &[usize]) -> Result<usize> {
        if indices.len() != self.factors.len() {
            return Err(Error::SpaceMismatch(format!(
                "expected {} factor indices, got {}",
                self.factors.len(),
                indices.len()
            )));
        }
        let mut flat = 0usize;
        for (&n, f) in indices.iter().zip(&self.factors) {
            if n >= f.dim() {
                return Err(Error::IndexOutOfRange {
                    index: n,
                    dim: f.dim(),
                });
            }
            flat = flat * f.dim() + n;
        }
        Ok(flat)
    }

    /// Inverse of [`flat_index`](Self::flat_index).
    pub fn unravel(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0usize; self.factors.len()];
        for (slot, f) in self.factors.iter().enumerate().rev() {
            out[slot] = flat % f.dim();
            flat /= f.dim();
        }
        out
    }
}

/// Any space a state or operator can be defined on.
#[derive(Debug, Clone, PartialEq)]
pub enum Space {
    Fock(FockSpace),
    Qubit(QubitSpace),
    Composite(CompositeSpace),
}

impl Space {
    pub fn dim(&self) -> usize {
        match self {
            Space::Fock(f) => f.dim(),
            Space::Qubit(_) => QubitSpace::DIM,
            Space::Composite(c) => c.dim(),
        }
    }

    /// Factor list used when this space enters a tensor product. Composite
    /// spaces flatten, so tensoring stays associative.
    pub fn into_factors(&self) -> Vec<Factor> {
        match self {
            Space::Fock(f) => vec![Factor::Fock(*f)],
            Space::Qubit(q) => vec![Factor::Qubit(*q)],
            Space::Composite(c) => c.factors.clone(),
        }
    }

    /// Tensor product of two spaces, left factor leftmost.
    pub fn tensor(&self, other: &Space) -> Space {
        let mut factors = self.into_factors();
        factors.extend(other.into_factors());
        Space::Composite(CompositeSpace { factors })
    }
}

impl From<FockSpace> for Space {
    fn from(f: FockSpace) -> Self {
        Space::Fock(f)
    }
}

impl From<QubitSpace> for Space {
    fn from(q: QubitSpace) -> Self {
        Space::Qubit(q)
    }
}

impl From<CompositeSpace> for Space {
    fn from(c: CompositeSpace) -> Self {
        Space::Composite(c)
    }
}

/// Pure state: a complex amplitude column over its space.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    space: Space,
    amplitudes: Array1<C64>,
}

impl StateVector {
    pub fn new(space: impl Into<Space>, amplitudes: Array1<C64>) -> Result<Self> {
        let space = space.into();
        if amplitudes.len() != space.dim() {
            return Err(Error::InvalidDimension(format!(
                "state length {} does not match space dimension {}",
                amplitudes.len(),
                space.dim()
            )));
        }
        Ok(StateVector { space, amplitudes })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &Array1<C64> {
        &self.amplitudes
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut Array1<C64> {
        &mut self.amplitudes
    }

    /// Euclidean norm of the amplitude column.
    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Whether |norm − 1| ≤ [`NORM_TOL`].
    pub fn is_normalized(&self) -> bool {
        (self.norm() - 1.0).abs() <= NORM_TOL
    }

    /// Amplitudes divided by the norm. Errors on the zero vector.
    pub fn normalized(&self) -> Result<StateVector> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::ZeroNorm);
        }
        Ok(StateVector {
            space: self.space.clone(),
            amplitudes: self.amplitudes.mapv(|a| a / n),
        })
    }

    /// ⟨self|other⟩ with self conjugated.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch(
                "inner product between different spaces".into(),
            ));
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }
}

/// Mixed state: complex square matrix over its space.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    space: Space,
    entries: Array2<C64>,
}

impl DensityMatrix {
    pub fn new(space: impl Into<Space>, entries: Array2<C64>) -> Result<Self> {
        let space = space.into();
        let d = space.dim();
        if entries.nrows() != d || entries.ncols() != d {
            return Err(Error::InvalidDimension(format!(
                "density matrix shape {:?} does not match space dimension {}",
                entries.dim(),
                d
            )));
        }
        Ok(DensityMatrix { space, entries })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &Array2<C64> {
        &self.entries
    }

    pub fn trace(&self) -> C64 {
        self.entries.diag().iter().sum()
    }

    /// Largest elementwise deviation from ρ = ρ†.
    pub fn hermiticity_error(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in i..d {
                let e = (self.entries[[i, j]] - self.entries[[j, i]].conj()).norm();
                worst = worst.max(e);
            }
        }
        worst
    }
}

/// Fock-space basis state |n⟩: amplitude 1 at index `n`, 0 elsewhere.
pub fn number_state(space: FockSpace, n: usize) -> Result<StateVector> {
    if n >= space.dim() {
        return Err(Error::IndexOutOfRange {
            index: n,
            dim: space.dim(),
        });
    }
    let mut amps = Array1::zeros(space.dim());
    amps[n] = C64::new(1.0, 0.0);
    Ok(StateVector {
        space: space.into(),
        amplitudes: amps,
    })
}

/// Atomic excited state |e⟩ = (1, 0).
pub fn excited_state() -> StateVector {
    StateVector {
        space: QubitSpace.into(),
        amplitudes: Array1::from(vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)]),
    }
}

/// Atomic ground state |g⟩ = (0, 1).
pub fn ground_state() -> StateVector {
    StateVector {
        space: QubitSpace.into(),
        amplitudes: Array1::from(vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)]),
    }
}

/// Raw linear combination Σ cᵢ|nᵢ⟩. Not normalized; indices must be distinct
/// and within the truncation.
pub fn superpose(space: FockSpace, terms: &[(C64, usize)]) -> Result<StateVector> {
    let mut amps = Array1::zeros(space.dim());
    let mut seen = vec![false; space.dim()];
    for &(coeff, n) in terms {
        if n >= space.dim() {
            return Err(Error::IndexOutOfRange {
                index: n,
                dim: space.dim(),
            });
        }
        if seen[n] {
            return Err(Error::DuplicateTerm(n));
        }
        seen[n] = true;
        amps[n] = coeff;
    }
    Ok(StateVector {
        space: space.into(),
        amplitudes: amps,
    })
}

/// Kronecker product of two states; `a` is the leftmost factor.
pub fn tensor_state(a: &StateVector, b: &StateVector) -> StateVector {
    let db = b.dim();
    let mut amps = Array1::zeros(a.dim() * db);
    for (i, &ai) in a.amplitudes.iter().enumerate() {
        for (j, &bj) in b.amplitudes.iter().enumerate() {
            amps[i * db + j] = ai * bj;
        }
    }
    StateVector {
        space: a.space.tensor(&b.space),
        amplitudes: amps,
    }
}

/// Outer product |ψ⟩⟨ψ| of a normalized pure state.
pub fn density_from_pure(state: &StateVector) -> Result<DensityMatrix> {
    if !state.is_normalized() {
        return Err(Error::Precondition(format!(
            "density_from_pure expects a normalized state (norm = {})",
            state.norm()
        )));
    }
    let d = state.dim();
    let mut m = Array2::zeros((d, d));
    for i in 0..d {
        for j in 0..d {
            m[[i, j]] = state.amplitudes[i] * state.amplitudes[j].conj();
        }
    }
    Ok(DensityMatrix {
        space: state.space.clone(),
        entries: m,
    })
}

/// Reduced density matrix over factor `keep` of a composite space; all other
/// factors are traced out. Trace is preserved.
pub fn partial_trace(
    rho: &DensityMatrix,
    space: &CompositeSpace,
    keep: usize,
) -> Result<DensityMatrix> {
    match &rho.space {
        Space::Composite(c) if c == space => {}
        _ => {
            return Err(Error::SpaceMismatch(
                "partial_trace: density matrix is not over the given composite space".into(),
            ))
        }
    }
    if keep >= space.factors.len() {
        return Err(Error::IndexOutOfRange {
            index: keep,
            dim: space.factors.len(),
        });
    }
    let kept = space.factors[keep];
    let dk = kept.dim();
    let rest_dim = space.dim() / dk;
    let mut reduced = Array2::<C64>::zeros((dk, dk));

    // Rebuild the flat index with `keep` replaced by p (row) or q (column),
    // summing over all assignments of the remaining factors.
    let mut env = vec![0usize; space.factors.len()];
    for rest in 0..rest_dim {
        let mut r = rest;
        for (slot, f) in space.factors.iter().enumerate().rev() {
            if slot == keep {
                continue;
            }
            env[slot] = r % f.dim();
            r /= f.dim();
        }
        for p in 0..dk {
            env[keep] = p;
            let row = space.flat_index(&env)?;
            for q in 0..dk {
                env[keep] = q;
                let col = space.flat_index(&env)?;
                reduced[[p, q]] += rho.entries[[row, col]];
            }
        }
    }

    let kept_space: Space = match kept {
        Factor::Fock(f) => f.into(),
        Factor::Qubit(q) => q.into(),
    };
    Ok(DensityMatrix {
        space: kept_space,
        entries: reduced,
    })
}
