//! Ladder and Pauli operators, Hamiltonian builders, and tensor embedding.
//!
//! Conventions follow the number-basis matrix forms: the annihilation
//! operator has √1…√(d−1) on the first superdiagonal so that a|n⟩ = √n|n−1⟩,
//! creation is its adjoint, and σ_z = diag(1, −1) in the (|e⟩, |g⟩) basis.
//! The Jaynes–Cummings Hamiltonian is assembled in the atom-first tensor
//! order:
//!
//!   H = (ħω₀/2)(σ_z ⊗ I_f) + ħω (I_a ⊗ a†a) + ħg (σ₋ ⊗ a† + σ₊ ⊗ a).
//!
//! All binary operator arithmetic asserts that both operands live on the
//! same space; a mismatch is a programming error, not a recoverable state.

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};
use crate::hilbert::{CompositeSpace, FockSpace, QubitSpace, Space, StateVector};

/// Complex square matrix tagged with the space it acts on.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    space: Space,
    entries: Array2<C64>,
}

impl Operator {
    pub fn new(space: impl Into<Space>, entries: Array2<C64>) -> Result<Self> {
        let space = space.into();
        let d = space.dim();
        if entries.nrows() != d || entries.ncols() != d {
            return Err(Error::InvalidDimension(format!(
                "operator shape {:?} does not match space dimension {}",
                entries.dim(),
                d
            )));
        }
        Ok(Operator { space, entries })
    }

    pub fn identity(space: impl Into<Space>) -> Self {
        let space = space.into();
        let d = space.dim();
        Operator {
            space,
            entries: Array2::eye(d),
        }
    }

    pub fn zeros(space: impl Into<Space>) -> Self {
        let space = space.into();
        let d = space.dim();
        Operator {
            space,
            entries: Array2::zeros((d, d)),
        }
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

    pub(crate) fn entries_mut(&mut self) -> &mut Array2<C64> {
        &mut self.entries
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Operator {
        let d = self.dim();
        let mut m = Array2::zeros((d, d));
        for i in 0..d {
            for j in 0..d {
                m[[i, j]] = self.entries[[j, i]].conj();
            }
        }
        Operator {
            space: self.space.clone(),
            entries: m,
        }
    }

    /// Largest elementwise |A − A†| entry.
    pub fn hermiticity_error(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in i..d {
                worst = worst.max((self.entries[[i, j]] - self.entries[[j, i]].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_error() <= tol
    }

    /// Apply to a state: O|ψ⟩. Errors on space mismatch.
    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        if self.space != *psi.space() {
            return Err(Error::SpaceMismatch(
                "operator applied to a state on a different space".into(),
            ));
        }
        StateVector::new(self.space.clone(), self.entries.dot(psi.amplitudes()))
    }

    /// Largest |entry|.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: C64) -> Operator {
        Operator {
            space: self.space.clone(),
            entries: self.entries.mapv(|z| z * s),
        }
    }
}

macro_rules! assert_same_space {
    ($a:expr, $b:expr, $what:expr) => {
        assert!(
            $a.space == $b.space,
            concat!($what, " on mismatched spaces")
        );
    };
}

impl Add for &Operator {
    type Output = Operator;
    fn add(self, rhs: &Operator) -> Operator {
        assert_same_space!(self, rhs, "operator addition");
        Operator {
            space: self.space.clone(),
            entries: &self.entries + &rhs.entries,
        }
    }
}

impl Sub for &Operator {
    type Output = Operator;
    fn sub(self, rhs: &Operator) -> Operator {
        assert_same_space!(self, rhs, "operator subtraction");
        Operator {
            space: self.space.clone(),
            entries: &self.entries - &rhs.entries,
        }
    }
}

impl Mul for &Operator {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        assert_same_space!(self, rhs, "operator product");
        Operator {
            space: self.space.clone(),
            entries: self.entries.dot(&rhs.entries),
        }
    }
}

impl Mul<&Operator> for f64 {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        rhs.scale(C64::new(self, 0.0))
    }
}

impl Mul<&Operator> for C64 {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        rhs.scale(self)
    }
}

/// Model constants for the Hamiltonians in this crate. Defaults follow the
/// ħ = ω = ω₀ = 1 normalization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Reduced Planck constant (energy scale), > 0.
    pub hbar: f64,
    /// Field frequency ω.
    pub omega_f: f64,
    /// Atomic transition frequency ω₀.
    pub omega_0: f64,
    /// Atom-field coupling g.
    pub g: f64,
    /// Cavity-cavity coupling J.
    pub j: f64,
    /// Cavity decay rate κ ≥ 0.
    pub kappa: f64,
    /// Atomic decay rate γ ≥ 0.
    pub gamma: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        ModelParams {
            hbar: 1.0,
            omega_f: 1.0,
            omega_0: 1.0,
            g: 0.0,
            j: 0.0,
            kappa: 0.0,
            gamma: 0.0,
        }
    }
}

impl ModelParams {
    /// Checks the sign constraints (ħ > 0, κ ≥ 0, γ ≥ 0).
    #[allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0)` also rejects NaN
    pub fn validated(self) -> Result<Self> {
        if !(self.hbar > 0.0) {
            return Err(Error::Domain("hbar must be positive".into()));
        }
        if self.kappa < 0.0 {
            return Err(Error::Domain("kappa must be non-negative".into()));
        }
        if self.gamma < 0.0 {
            return Err(Error::Domain("gamma must be non-negative".into()));
        }
        Ok(self)
    }
}

/// Annihilation operator: a|n⟩ = √n|n−1⟩.
pub fn annihilation(space: FockSpace) -> Operator {
    let d = space.dim();
    let mut m = Array2::zeros((d, d));
    for n in 1..d {
        m[[n - 1, n]] = C64::new((n as f64).sqrt(), 0.0);
    }
    Operator {
        space: space.into(),
        entries: m,
    }
}

/// Creation operator: adjoint of [`annihilation`].
pub fn creation(space: FockSpace) -> Operator {
    annihilation(space).adjoint()
}

/// Number operator N = a†a = diag(0, 1, …, d−1).
pub fn number_operator(space: FockSpace) -> Operator {
    let d = space.dim();
    let mut m = Array2::zeros((d, d));
    for n in 0..d {
        m[[n, n]] = C64::new(n as f64, 0.0);
    }
    Operator {
        space: space.into(),
        entries: m,
    }
}

/// Free-field Hamiltonian ħω(a†a + ½I), or ħω a†a without the zero-point
/// term.
pub fn field_hamiltonian(
    space: FockSpace,
    params: &ModelParams,
    include_zero_point: bool,
) -> Operator {
    let d = space.dim();
    let scale = params.hbar * params.omega_f;
    let offset = if include_zero_point { 0.5 } else { 0.0 };
    let mut m = Array2::zeros((d, d));
    for n in 0..d {
        m[[n, n]] = C64::new(scale * (n as f64 + offset), 0.0);
    }
    Operator {
        space: space.into(),
        entries: m,
    }
}

/// Pauli operators (σ_z, σ₊, σ₋) over the qubit space, with σ₊|g⟩ = |e⟩ and
/// σ₋|e⟩ = |g⟩.
pub fn atomic_operators() -> (Operator, Operator, Operator) {
    let zero = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let sz = Operator {
        space: QubitSpace.into(),
        entries: ndarray::array![[one, zero], [zero, -one]],
    };
    let splus = Operator {
        space: QubitSpace.into(),
        entries: ndarray::array![[zero, one], [zero, zero]],
    };
    let sminus = Operator {
        space: QubitSpace.into(),
        entries: ndarray::array![[zero, zero], [one, zero]],
    };
    (sz, splus, sminus)
}

/// Kronecker product A ⊗ B with A in the leftmost (most significant) slot.
pub fn tensor_op(a: &Operator, b: &Operator) -> Operator {
    let da = a.dim();
    let db = b.dim();
    let d = da * db;
    let mut m = Array2::zeros((d, d));
    for i in 0..da {
        for j in 0..da {
            let aij = a.entries[[i, j]];
            if aij == C64::new(0.0, 0.0) {
                continue;
            }
            for k in 0..db {
                for l in 0..db {
                    m[[i * db + k, j * db + l]] = aij * b.entries[[k, l]];
                }
            }
        }
    }
    Operator {
        space: a.space.tensor(&b.space),
        entries: m,
    }
}

/// Jaynes–Cummings Hamiltonian on QubitSpace ⊗ FockSpace:
/// (ħω₀/2)(σ_z⊗I_f) + ħω(I_a⊗a†a) + ħg(σ₋⊗a† + σ₊⊗a).
pub fn jc_hamiltonian(field: FockSpace, params: &ModelParams) -> Operator {
    let (sz, splus, sminus) = atomic_operators();
    let a = annihilation(field);
    let ad = creation(field);
    let n = number_operator(field);
    let i_a = Operator::identity(QubitSpace);
    let i_f = Operator::identity(field);

    let h_atom = (0.5 * params.hbar * params.omega_0) * &tensor_op(&sz, &i_f);
    let h_field = (params.hbar * params.omega_f) * &tensor_op(&i_a, &n);
    let h_int =
        (params.hbar * params.g) * &(&tensor_op(&sminus, &ad) + &tensor_op(&splus, &a));
    &(&h_atom + &h_field) + &h_int
}

/// Two coupled cavities on FockSpace ⊗ FockSpace:
/// ħω(a†a⊗I) + ħω(I⊗a†a) + ħJ(a†⊗a + a⊗a†).
pub fn coupled_cavity_hamiltonian(field: FockSpace, params: &ModelParams) -> Operator {
    let a = annihilation(field);
    let ad = creation(field);
    let n = number_operator(field);
    let i_f = Operator::identity(field);

    let h1 = (params.hbar * params.omega_f) * &tensor_op(&n, &i_f);
    let h2 = (params.hbar * params.omega_f) * &tensor_op(&i_f, &n);
    let hop = (params.hbar * params.j) * &(&tensor_op(&ad, &a) + &tensor_op(&a, &ad));
    &(&h1 + &h2) + &hop
}

/// Flat-index helper for two-factor composite projectors like |e, n⟩.
pub fn composite_basis_state(space: &CompositeSpace, indices: &[usize]) -> Result<StateVector> {
    let flat = space.flat_index(indices)?;
    let mut amps = Array1::zeros(space.dim());
    amps[flat] = C64::new(1.0, 0.0);
    StateVector::new(space.clone(), amps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{ground_state, number_state};
    use approx::assert_abs_diff_eq;

    #[test]
    #[allow(clippy::approx_constant)] // literals are the reference printout
    fn annihilation_superdiagonal_values() {
        let s = FockSpace::new(6).unwrap();
        let a = annihilation(s);
        let expect = [1.0, 1.4142, 1.7321, 2.0000, 2.2361];
        for (n, &e) in expect.iter().enumerate() {
            assert_abs_diff_eq!(a.entries()[[n, n + 1]].re, e, epsilon = 5e-5);
        }
        // a on vacuum annihilates it; a|3⟩ = √3|2⟩.
        let vac = number_state(s, 0).unwrap();
        assert_eq!(a.apply(&vac).unwrap().norm(), 0.0);
        let three = number_state(s, 3).unwrap();
        let lowered = a.apply(&three).unwrap();
        assert_abs_diff_eq!(lowered.amplitudes()[2].re, 3f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn creation_is_adjoint_and_truncates_at_top() {
        let s = FockSpace::new(6).unwrap();
        let a = annihilation(s);
        let ad = creation(s);
        assert_eq!(ad.adjoint(), a);
        assert_abs_diff_eq!(ad.entries()[[5, 4]].re, 5f64.sqrt(), epsilon = 1e-15);
        let top = number_state(s, 5).unwrap();
        assert_eq!(ad.apply(&top).unwrap().norm(), 0.0);
    }

    #[test]
    fn number_operator_counts_photons() {
        let s = FockSpace::new(6).unwrap();
        let n = number_operator(s);
        let built = &creation(s) * &annihilation(s);
        assert!((&n - &built).max_abs() <= 1e-14);
        for k in 0..6 {
            assert_eq!(n.entries()[[k, k]].re, k as f64);
        }
        // [a, a†] = I except the truncation corner, which reads 1 − d.
        let a = annihilation(s);
        let ad = creation(s);
        let comm = &(&a * &ad) - &(&ad * &a);
        for k in 0..5 {
            assert_abs_diff_eq!(comm.entries()[[k, k]].re, 1.0, epsilon = 1e-14);
        }
        assert_abs_diff_eq!(comm.entries()[[5, 5]].re, 1.0 - 6.0, epsilon = 1e-14);
    }

    #[test]
    fn field_hamiltonian_diagonal() {
        let s = FockSpace::new(6).unwrap();
        let p = ModelParams::default();
        let h = field_hamiltonian(s, &p, true);
        for n in 0..6 {
            assert_abs_diff_eq!(h.entries()[[n, n]].re, n as f64 + 0.5, epsilon = 1e-15);
        }
        let h0 = field_hamiltonian(s, &p, false);
        assert_abs_diff_eq!(h0.entries()[[5, 5]].re, 5.0, epsilon = 1e-15);
        let h2 = field_hamiltonian(
            s,
            &ModelParams {
                omega_f: 2.0,
                ..Default::default()
            },
            false,
        );
        assert_abs_diff_eq!(h2.entries()[[3, 3]].re, 6.0, epsilon = 1e-15);
    }

    #[test]
    fn pauli_actions() {
        let (sz, splus, sminus) = atomic_operators();
        let e = crate::hilbert::excited_state();
        let g = ground_state();
        assert_eq!(splus.apply(&g).unwrap(), e);
        assert_eq!(sminus.apply(&e).unwrap(), g);
        assert_eq!(sz.entries()[[0, 0]].re, 1.0);
        assert_eq!(sz.entries()[[1, 1]].re, -1.0);
        // σ₊σ₋ = |e⟩⟨e|
        let proj = &splus * &sminus;
        assert_eq!(proj.entries()[[0, 0]].re, 1.0);
        assert_eq!(proj.entries()[[1, 1]].re, 0.0);
    }

    #[test]
    fn tensor_op_block_structure() {
        let f = FockSpace::new(3).unwrap();
        let (sz, _, _) = atomic_operators();
        let block = tensor_op(&sz, &Operator::identity(f));
        for k in 0..3 {
            assert_eq!(block.entries()[[k, k]].re, 1.0);
            assert_eq!(block.entries()[[3 + k, 3 + k]].re, -1.0);
        }
        let i2 = Operator::identity(QubitSpace);
        let i3 = Operator::identity(f);
        let ii = tensor_op(&i2, &i3);
        assert!((&ii - &Operator::identity(ii.space().clone())).max_abs() <= 1e-15);
    }

    #[test]
    fn tensor_op_mixed_product_identity() {
        // (σ₊⊗a)(σ₋⊗a†) = σ₊σ₋ ⊗ aa†
        let f = FockSpace::new(4).unwrap();
        let (_, splus, sminus) = atomic_operators();
        let a = annihilation(f);
        let ad = creation(f);
        let lhs = &tensor_op(&splus, &a) * &tensor_op(&sminus, &ad);
        let rhs = tensor_op(&(&splus * &sminus), &(&a * &ad));
        assert!((&lhs - &rhs).max_abs() <= 1e-12);
    }

    #[test]
    fn jc_hamiltonian_structure() {
        let f = FockSpace::new(10).unwrap();
        let params = ModelParams {
            g: 0.1,
            ..Default::default()
        };
        let h = jc_hamiltonian(f, &params);
        assert!(h.is_hermitian(1e-14));

        // ⟨e,n|H|g,n+1⟩ = ħg√(n+1) at n = 0.
        let space = CompositeSpace::pair(QubitSpace, f);
        let en = composite_basis_state(&space, &[0, 0]).unwrap();
        let gn1 = composite_basis_state(&space, &[1, 1]).unwrap();
        let elem = en.inner(&h.apply(&gn1).unwrap()).unwrap();
        assert_abs_diff_eq!(elem.re, 0.1, epsilon = 1e-14);

        // g = 0 leaves the free block-diagonal part only.
        let h0 = jc_hamiltonian(f, &ModelParams::default());
        for i in 0..20 {
            for j in 0..20 {
                if i != j {
                    assert_eq!(h0.entries()[[i, j]], C64::new(0.0, 0.0));
                }
            }
        }
    }

    #[test]
    fn coupled_cavity_hamiltonian_structure() {
        let f = FockSpace::new(4).unwrap();
        let params = ModelParams {
            j: 0.1,
            ..Default::default()
        };
        let h = coupled_cavity_hamiltonian(f, &params);
        assert!(h.is_hermitian(1e-14));

        let space = CompositeSpace::pair(f, f);
        let s01 = composite_basis_state(&space, &[0, 1]).unwrap();
        let s10 = composite_basis_state(&space, &[1, 0]).unwrap();
        let elem = s01.inner(&h.apply(&s10).unwrap()).unwrap();
        assert_abs_diff_eq!(elem.re, 0.1, epsilon = 1e-14);

        // J = 0 is diagonal in the product number basis.
        let h0 = coupled_cavity_hamiltonian(f, &ModelParams::default());
        for i in 0..16 {
            for j in 0..16 {
                if i != j {
                    assert_eq!(h0.entries()[[i, j]], C64::new(0.0, 0.0));
                }
            }
        }

        // Total photon number commutes with H.
        let n = number_operator(f);
        let i_f = Operator::identity(f);
        let n_tot = &tensor_op(&n, &i_f) + &tensor_op(&i_f, &n);
        let comm = &(&h * &n_tot) - &(&n_tot * &h);
        assert!(comm.max_abs() <= 1e-12);
    }

    #[test]
    fn jc_conserves_excitation_number() {
        let f = FockSpace::new(8).unwrap();
        let params = ModelParams {
            g: 0.3,
            ..Default::default()
        };
        let h = jc_hamiltonian(f, &params);
        let (_, splus, sminus) = atomic_operators();
        let i_f = Operator::identity(f);
        let i_a = Operator::identity(QubitSpace);
        let n_exc = &tensor_op(&(&splus * &sminus), &i_f)
            + &tensor_op(&i_a, &number_operator(f));
        let comm = &(&h * &n_exc) - &(&n_exc * &h);
        assert!(comm.max_abs() <= 1e-12);
    }

    #[test]
    fn model_params_validation() {
        assert!(ModelParams::default().validated().is_ok());
        assert!(ModelParams {
            hbar: 0.0,
            ..Default::default()
        }
        .validated()
        .is_err());
        assert!(ModelParams {
            kappa: -0.1,
            ..Default::default()
        }
        .validated()
        .is_err());
    }
}
